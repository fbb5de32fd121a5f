use std::collections::BTreeMap;

use super::{canonical_form, AnyGraph, CanonicalForm, EdgeLabelled};
use crate::error::{Error, Result};

/// The multiset of isomorphism types of the vertex-deleted subgraphs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Deck {
    n: usize,
    palette: Option<u8>,
    cards: BTreeMap<CanonicalForm, usize>,
}

impl Deck {
    /// Assemble a deck from cards. Every card must have `n - 1` vertices,
    /// there must be exactly `n` of them, and they must agree on coloring.
    pub fn new(n: usize, palette: Option<u8>, cards: impl IntoIterator<Item = CanonicalForm>) -> Result<Self> {
        if n < 2 {
            return Err(Error::GraphTooSmall(format!("a deck needs order at least 2, got {n}")));
        }
        let mut map = BTreeMap::new();
        let mut total = 0;
        for card in cards {
            if card.order() + 1 != n {
                return Err(Error::inconsistent(format!(
                    "card with {} vertices in a deck of order {n}",
                    card.order()
                )));
            }
            if card.is_colored() != palette.is_some() || card.is_pointed() {
                return Err(Error::MixedColoring);
            }
            *map.entry(card).or_insert(0) += 1;
            total += 1;
        }
        if total != n {
            return Err(Error::inconsistent(format!("{total} cards for order {n}")));
        }
        Ok(Deck { n, palette, cards: map })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn palette(&self) -> Option<u8> {
        self.palette
    }

    pub fn is_colored(&self) -> bool {
        self.palette.is_some()
    }

    /// Distinct card types with their multiplicities, in canonical order.
    pub fn cards(&self) -> impl Iterator<Item = (&CanonicalForm, usize)> {
        self.cards.iter().map(|(f, &m)| (f, m))
    }

    /// All `n` cards, repeated by multiplicity.
    pub fn card_list(&self) -> Vec<CanonicalForm> {
        self.cards
            .iter()
            .flat_map(|(f, &m)| std::iter::repeat_n(f.clone(), m))
            .collect()
    }

    pub fn distinct_cards(&self) -> usize {
        self.cards.len()
    }

    /// Replace one copy of `old` by `new`, keeping the order fixed.
    pub fn with_card_replaced(&self, old: &CanonicalForm, new: CanonicalForm) -> Result<Deck> {
        let mut cards = self.card_list();
        let pos = cards
            .iter()
            .position(|c| c == old)
            .ok_or_else(|| Error::InvalidArgument("card not in deck".into()))?;
        cards[pos] = new;
        Deck::new(self.n, self.palette, cards)
    }
}

/// `D(G)`: one card `G - v` per vertex.
pub fn deck<G: EdgeLabelled>(g: &G) -> Result<Deck> {
    let n = g.order();
    if n < 2 {
        return Err(Error::GraphTooSmall(format!("deck needs at least 2 vertices, got {n}")));
    }
    let all = super::full_mask(n);
    let cards = (0..n).map(|v| canonical_form(&g.induced_on(all & !(1 << v))));
    Deck::new(n, g.palette(), cards)
}

pub fn deck_any(g: &AnyGraph) -> Result<Deck> {
    match g {
        AnyGraph::Plain(g) => deck(g),
        AnyGraph::Colored(g) => deck(g),
    }
}
