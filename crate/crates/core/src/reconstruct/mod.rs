//! Reconstruction of graph invariants from the deck alone. Nothing in this
//! module takes the original graph.

mod assemble;
mod catalog;
mod spanning;
mod verify;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graph::{count_subgraphs_any, AnyGraph, CanonicalForm, ColoredGraph, CountMode, Deck};
use crate::poly::MultiPoly;

pub use assemble::{u_from_u_lab, u_to_xi_transform};
pub use catalog::Reconstructor;
pub use verify::{check_deck, verify_reconstruction, Invariant, Mismatch, VerifyConfig, VerifyReport};

/// `s(H, G)` from the deck: card counts summed and divided by `n - |V(H)|`.
pub fn kelly_count(pattern: &AnyGraph, d: &Deck, mode: CountMode) -> Result<u64> {
    let n = d.order();
    let k = pattern.order();
    if k >= n {
        return Err(Error::KellyInapplicable { pattern: k, order: n });
    }
    if pattern.is_colored() != d.is_colored() {
        return Err(Error::MixedColoring);
    }
    let mut sum: u128 = 0;
    for (form, mult) in d.cards() {
        let card: AnyGraph = match d.palette() {
            Some(p) => AnyGraph::Colored(form.decode::<ColoredGraph>(Some(p))),
            None => AnyGraph::Plain(form.to_graph()),
        };
        sum += count_subgraphs_any(pattern, &card, mode)? as u128 * mult as u128;
    }
    let div = (n - k) as u128;
    if sum % div != 0 {
        return Err(Error::inconsistent(format!(
            "card counts sum to {sum}, not a multiple of {div}"
        )));
    }
    Ok((sum / div) as u64)
}

/// `|f^{-1}(c)|` for every color `c` of the deck's palette (one entry for
/// plain decks).
pub fn edge_color_counts(d: &Deck) -> Result<Vec<u64>> {
    let palette = d.palette().unwrap_or(1);
    (1..=palette)
        .map(|c| {
            let edge = match d.palette() {
                Some(p) => AnyGraph::Colored(ColoredGraph::from_edges(2, p, &[(0, 1, c)])?),
                None => AnyGraph::Plain(crate::graph::Graph::complete(2)),
            };
            kelly_count(&edge, d, CountMode::Subgraph)
        })
        .collect()
}

/// A multiset of connected component types, each on at least two vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentMultiset {
    parts: Vec<CanonicalForm>,
}

impl ComponentMultiset {
    pub fn new(parts: impl IntoIterator<Item = CanonicalForm>) -> Result<Self> {
        let mut parts: Vec<_> = parts.into_iter().collect();
        for p in &parts {
            let g = p.to_graph();
            if g.order() < 2 || !g.is_connected() {
                return Err(Error::InvalidArgument("component types must be connected with at least two vertices".into()));
            }
        }
        parts.sort();
        Ok(ComponentMultiset { parts })
    }

    pub fn parts(&self) -> &[CanonicalForm] {
        &self.parts
    }

    pub fn order(&self) -> usize {
        self.parts.iter().map(|p| p.order()).sum()
    }
}

/// Number of spanning subgraphs of the graph behind `d` whose component
/// types are exactly `m`.
pub fn spanning_disconnected_count(m: &ComponentMultiset, d: &Deck) -> Result<BigInt> {
    if m.parts.len() < 2 || m.order() != d.order() {
        return Err(Error::InvalidArgument(format!(
            "need at least two parts covering {} vertices",
            d.order()
        )));
    }
    if m.parts.iter().any(|p| p.is_colored() != d.is_colored()) {
        return Err(Error::MixedColoring);
    }
    let mut r = Reconstructor::new();
    let mut ids: Vec<_> = m.parts.iter().map(|p| r.intern_form(p)).collect();
    ids.sort_unstable();
    let limit = m.parts.iter().map(|p| p.edge_count()).sum();
    let census = r.subgraph_census(d, limit)?;
    r.spanning_disconnected(&ids, &census)
}

/// Number of non-spanning edge subsets (no isolated vertices after removal
/// of untouched vertices, fewer than `n` vertices) with color profile `a`.
pub fn nonspanning_profile_count(a: &[usize], d: &Deck) -> Result<BigInt> {
    let mut r = Reconstructor::new();
    let (census, profile) = profile_census(&mut r, a, d)?;
    if profile.iter().all(|&x| x == 0) {
        return Ok(BigInt::from(0));
    }
    let tables = r.spanning_tables(&census, a.iter().sum())?;
    Ok(tables.nonspanning.get(&profile).cloned().unwrap_or_default())
}

/// Number of connected spanning subgraphs with color profile `a`.
pub fn connected_spanning_count(a: &[usize], d: &Deck) -> Result<BigInt> {
    let mut r = Reconstructor::new();
    let (census, profile) = profile_census(&mut r, a, d)?;
    let tables = r.spanning_tables(&census, a.iter().sum())?;
    Ok(tables.connected.get(&profile).cloned().unwrap_or_default())
}

fn profile_census(r: &mut Reconstructor, a: &[usize], d: &Deck) -> Result<(catalog::Census, Vec<u8>)> {
    let palette = d.palette().unwrap_or(1) as usize;
    if a.len() != palette {
        return Err(Error::InvalidArgument(format!("profile has {} entries, palette has {palette}", a.len())));
    }
    let profile: Vec<u8> = a
        .iter()
        .map(|&x| u8::try_from(x).map_err(|_| Error::InvalidArgument("profile entry too large".into())))
        .collect::<Result<_>>()?;
    let census = r.subgraph_census(d, a.iter().sum())?;
    Ok((census, profile))
}

pub fn reconstruct_u_lab(d: &Deck) -> Result<MultiPoly> {
    Reconstructor::new().u_lab(d)
}

pub fn reconstruct_u(d: &Deck) -> Result<MultiPoly> {
    Reconstructor::new().u(d)
}

pub fn reconstruct_xi_lab(d: &Deck) -> Result<MultiPoly> {
    Reconstructor::new().xi_lab(d)
}

pub fn reconstruct_xi(d: &Deck) -> Result<MultiPoly> {
    Reconstructor::new().xi(d)
}

pub fn perfect_matching_parity(d: &Deck) -> Result<u8> {
    Reconstructor::new().perfect_matching_parity(d)
}

pub fn reconstruct_gf2_rank(d: &Deck) -> Result<usize> {
    Reconstructor::new().gf2_rank(d)
}

pub fn reconstruct_interlace(d: &Deck) -> Result<MultiPoly> {
    Reconstructor::new().interlace(d)
}
