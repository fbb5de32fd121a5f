//! Pointed d-balls, neighborhood decks, and recovery of the neighborhood
//! deck of a graph from the balls of its cards.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{bits, full_mask, pointed_canonical_form, CanonicalForm, Deck, Graph};

/// A graph with a distinguished root vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedGraph {
    pub graph: Graph,
    pub root: usize,
}

impl PointedGraph {
    pub fn form(&self) -> CanonicalForm {
        pointed_canonical_form(&self.graph, self.root)
    }
}

/// The subgraph induced by the vertices within distance `d` of `v`,
/// rooted at `v`.
pub fn ball(g: &Graph, v: usize, d: usize) -> PointedGraph {
    let mask = g.ball_mask(v, d);
    PointedGraph {
        graph: g.induced(mask),
        root: (mask & ((1u64 << v) - 1)).count_ones() as usize,
    }
}

/// A multiset of pointed types.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NeighborhoodDeck {
    pub radius: usize,
    items: BTreeMap<CanonicalForm, usize>,
}

impl NeighborhoodDeck {
    pub fn new(radius: usize) -> Self {
        NeighborhoodDeck { radius, items: BTreeMap::new() }
    }

    pub fn insert(&mut self, form: CanonicalForm) {
        *self.items.entry(form).or_insert(0) += 1;
    }

    /// Remove one copy; false if there is none.
    pub fn remove(&mut self, form: &CanonicalForm) -> bool {
        match self.items.get_mut(form) {
            Some(c) if *c > 1 => {
                *c -= 1;
                true
            }
            Some(_) => {
                self.items.remove(form);
                true
            }
            None => false,
        }
    }

    pub fn count(&self, form: &CanonicalForm) -> usize {
        self.items.get(form).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.items.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Distinct types with multiplicities, in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&CanonicalForm, usize)> {
        self.items.iter().map(|(f, &c)| (f, c))
    }

    pub fn union(&self, other: &NeighborhoodDeck) -> NeighborhoodDeck {
        let mut out = self.clone();
        for (f, c) in other.iter() {
            *out.items.entry(f.clone()).or_insert(0) += c;
        }
        out
    }
}

/// `N(G)`: the d-ball of every vertex.
pub fn neighborhood_deck(g: &Graph, d: usize) -> NeighborhoodDeck {
    let mut out = NeighborhoodDeck::new(d);
    for v in 0..g.order() {
        out.insert(ball(g, v, d).form());
    }
    out
}

/// `ND(G)`: the union of the neighborhood decks of the cards.
pub fn nd_from_deck(deck: &Deck, d: usize) -> Result<NeighborhoodDeck> {
    if deck.is_colored() {
        return Err(Error::MixedColoring);
    }
    let mut out = NeighborhoodDeck::new(d);
    for (card, mult) in deck.cards() {
        let nd = neighborhood_deck(&card.to_graph(), d);
        for _ in 0..mult {
            out = out.union(&nd);
        }
    }
    Ok(out)
}

/// Recover `N(G)` from `ND(G)` for an `n`-vertex graph all of whose
/// d-balls are proper subgraphs.
pub fn create_neighborhoods(nd: &NeighborhoodDeck, n: usize) -> Result<NeighborhoodDeck> {
    let d = nd.radius;
    let mut y = nd.clone();
    let mut x = NeighborhoodDeck::new(d);
    let missing = |what: &str| Error::OutsideDomain(format!("{what} missing from the card neighborhoods"));
    for m in (1..n).rev() {
        loop {
            let copies = n - m;
            let pick = y.iter().find(|(f, c)| f.order() == m && *c >= copies).map(|(f, _)| f.clone());
            let Some(form) = pick else { break };
            for _ in 0..copies {
                y.remove(&form);
            }
            let rep = form.to_graph();
            let all = full_mask(m);
            for u in 1..m {
                let damaged = rep.induced(all & !(1 << u));
                // Root stays at index 0 after deleting a later vertex.
                let reach = damaged.ball_mask(0, d);
                let damaged_ball = pointed_canonical_form(&damaged.induced(reach), 0);
                if !y.remove(&damaged_ball) {
                    return Err(missing("a damaged ball"));
                }
            }
            x.insert(form);
        }
    }
    if x.len() != n || !y.is_empty() {
        return Err(Error::OutsideDomain(format!(
            "extracted {} balls for {n} vertices, {} card balls left over",
            x.len(),
            y.len()
        )));
    }
    Ok(x)
}

/// True when every d-ball of `g` misses at least one vertex.
pub fn balls_are_proper(g: &Graph, d: usize) -> bool {
    let all = full_mask(g.order());
    (0..g.order()).all(|v| g.ball_mask(v, d) != all)
}

/// Pointed types of the damaged balls `Nbd_{G-u}(v, d)` for `u` in the
/// ball of `v`, `u != v`.
pub fn damaged_balls(g: &Graph, v: usize, d: usize) -> Vec<CanonicalForm> {
    let mask = g.ball_mask(v, d);
    bits(mask & !(1 << v))
        .map(|u| {
            let keep = full_mask(g.order()) & !(1 << u);
            let h = g.induced(keep);
            let v2 = if v > u { v - 1 } else { v };
            ball(&h, v2, d).form()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{deck, enumerate_graphs_with_limit};

    fn pointed_path(k: usize) -> CanonicalForm {
        pointed_canonical_form(&Graph::path(k), k / 2)
    }

    #[test]
    fn ball_examples() {
        for v in 0..7 {
            assert_eq!(ball(&Graph::cycle(7), v, 1).form(), pointed_path(3));
        }
        assert_eq!(ball(&Graph::complete(4), 2, 0).form(), pointed_canonical_form(&Graph::empty(1), 0));
        assert_eq!(ball(&Graph::cycle(12), 5, 2).form(), pointed_path(5));
    }

    #[test]
    fn neighborhood_deck_examples() {
        let nd = neighborhood_deck(&Graph::cycle(7), 1);
        assert_eq!(nd.count(&pointed_path(3)), 7);
        assert_eq!(nd.len(), 7);
        let k1 = pointed_canonical_form(&Graph::empty(1), 0);
        assert_eq!(neighborhood_deck(&Graph::empty(3), 1).count(&k1), 3);
        let k4 = pointed_canonical_form(&Graph::complete(4), 0);
        assert_eq!(neighborhood_deck(&Graph::complete(4), 1).count(&k4), 4);
    }

    #[test]
    fn card_neighborhoods() {
        let nd = nd_from_deck(&deck(&Graph::cycle(7)).unwrap(), 1).unwrap();
        assert_eq!(nd.len(), 42);
        assert_eq!(nd.count(&pointed_path(3)), 28);
        assert_eq!(nd.count(&pointed_canonical_form(&Graph::path(2), 0)), 14);
        let k1 = pointed_canonical_form(&Graph::empty(1), 0);
        assert_eq!(nd_from_deck(&deck(&Graph::empty(3)).unwrap(), 1).unwrap().count(&k1), 6);
    }

    #[test]
    fn create_neighborhood_examples() {
        for (g, d) in [(Graph::cycle(7), 1), (Graph::cycle(12), 2), (Graph::empty(4), 1)] {
            let nd = nd_from_deck(&deck(&g).unwrap(), d).unwrap();
            assert_eq!(create_neighborhoods(&nd, g.order()).unwrap(), neighborhood_deck(&g, d));
        }
        let nd = nd_from_deck(&deck(&Graph::complete(4)).unwrap(), 1).unwrap();
        assert!(matches!(create_neighborhoods(&nd, 4), Err(Error::OutsideDomain(_))));
    }

    #[test]
    fn card_balls_split_into_intact_and_damaged() {
        for n in 2..=6 {
            for g in enumerate_graphs_with_limit(n, false, 9).unwrap() {
                if !balls_are_proper(&g, 1) {
                    continue;
                }
                let nd = nd_from_deck(&deck(&g).unwrap(), 1).unwrap();
                let mut expected = NeighborhoodDeck::new(1);
                for v in 0..n {
                    let b = ball(&g, v, 1);
                    for _ in 0..n - b.graph.order() {
                        expected.insert(b.form());
                    }
                    for f in damaged_balls(&g, v, 1) {
                        expected.insert(f);
                    }
                }
                assert_eq!(nd, expected);
                for (f, _) in neighborhood_deck(&g, 1).iter() {
                    assert!(nd.count(f) > 0);
                }
            }
        }
    }

    #[test]
    fn recovers_small_connected_graphs() {
        let mut checked = 0;
        for n in 3..=7 {
            for g in enumerate_graphs_with_limit(n, true, 9).unwrap() {
                if !balls_are_proper(&g, 1) {
                    continue;
                }
                let nd = nd_from_deck(&deck(&g).unwrap(), 1).unwrap();
                assert_eq!(create_neighborhoods(&nd, n).unwrap(), neighborhood_deck(&g, 1));
                checked += 1;
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn colored_decks_are_rejected() {
        let g = crate::graph::ColoredGraph::monochrome(&Graph::cycle(4));
        assert_eq!(nd_from_deck(&deck(&g).unwrap(), 1), Err(Error::MixedColoring));
    }
}
