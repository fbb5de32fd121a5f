//! Hanf equivalence of graphs and the radius and rank bounds built on it.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Pow};
use serde::Serialize;

use super::battery::Battery;
use super::formula::quantifier_rank;
use crate::error::{Error, Result};
use crate::graph::io::emit_graph6;
use crate::graph::{enumerate_graphs_with_limit, CanonicalForm, Graph};
use crate::neighborhoods::{neighborhood_deck, NeighborhoodDeck};

/// Multiset of pointed d-ball types, one per vertex.
pub type HanfType = NeighborhoodDeck;

pub fn hanf_type(g: &Graph, d: usize) -> HanfType {
    neighborhood_deck(g, d)
}

/// Whether some bijection matches every d-ball of `g1` with an isomorphic
/// d-ball of `g2`.
pub fn hanf_equiv(g1: &Graph, g2: &Graph, d: usize) -> bool {
    g1.order() == g2.order() && hanf_type(g1, d) == hanf_type(g2, d)
}

/// `(3^k - 1) / 2`.
pub fn fsv_radius(k: u32) -> Result<u64> {
    3u64.checked_pow(k)
        .map(|p| (p - 1) / 2)
        .ok_or_else(|| Error::InvalidArgument(format!("radius for rank {k} does not fit in 64 bits")))
}

/// `log_3 log_f (n - 1)`.
pub fn bounded_degree_qr_bound(f: u64, n: u64) -> Result<f64> {
    if f < 2 {
        return Err(Error::InvalidArgument(format!("degree bound {f} gives a degenerate logarithm base")));
    }
    if n < 3 {
        return Err(Error::InvalidArgument(format!("order {n} is below 3")));
    }
    let inner = ((n - 1) as f64).ln() / (f as f64).ln();
    Ok(inner.ln() / 3f64.ln())
}

/// `3^(f^k) + 1`.
pub fn n_phi(f: u64, k: u32) -> Result<BigUint> {
    let exponent: u32 = BigUint::from(f)
        .pow(k)
        .try_into()
        .map_err(|_| Error::InvalidArgument(format!("3^({f}^{k}) is too large to write out")))?;
    Ok(BigUint::from(3u32).pow(exponent) + BigUint::one())
}

#[derive(Clone, Debug, Serialize)]
pub struct TransferDisagreement {
    pub sentence: String,
    pub graph6_a: String,
    pub graph6_b: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransferReport {
    pub rank: usize,
    pub radius: u64,
    pub max_n: usize,
    pub sentences: usize,
    pub graphs: usize,
    /// Unordered pairs of distinct graphs that are Hanf equivalent.
    pub equivalent_pairs: u64,
    pub disagreements: Vec<TransferDisagreement>,
}

/// Check that sentences of rank at most `k` never separate two graphs of
/// order `1..=max_n` that are Hanf equivalent at radius `fsv_radius(k)`.
pub fn hanf_transfer(battery: &Battery, k: usize, max_n: usize) -> Result<TransferReport> {
    let radius = fsv_radius(k as u32)?;
    let sentences: Vec<_> = battery.sentences().iter().filter(|s| quantifier_rank(s.formula()) <= k).collect();
    let mut report = TransferReport {
        rank: k,
        radius,
        max_n,
        sentences: sentences.len(),
        graphs: 0,
        equivalent_pairs: 0,
        disagreements: Vec::new(),
    };
    for n in 1..=max_n {
        let mut classes: BTreeMap<Vec<(CanonicalForm, usize)>, Vec<(Graph, Vec<bool>)>> = BTreeMap::new();
        for g in enumerate_graphs_with_limit(n, false, max_n)? {
            report.graphs += 1;
            let key = hanf_type(&g, radius as usize).iter().map(|(f, c)| (f.clone(), c)).collect();
            let truth = sentences.iter().map(|s| s.evaluate(&g)).collect();
            classes.entry(key).or_default().push((g, truth));
        }
        for members in classes.values() {
            let m = members.len() as u64;
            report.equivalent_pairs += m * (m - 1) / 2;
            let (first, first_truth) = &members[0];
            for (g, truth) in &members[1..] {
                for (i, s) in sentences.iter().enumerate() {
                    if truth[i] != first_truth[i] {
                        report.disagreements.push(TransferDisagreement {
                            sentence: s.formula().to_string(),
                            graph6_a: emit_graph6(first),
                            graph6_b: emit_graph6(g),
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_at_radius_two_and_three() {
        let c12 = Graph::cycle(12);
        let two_c6 = Graph::cycle(6).disjoint_union(&Graph::cycle(6));
        assert!(hanf_equiv(&c12, &two_c6, 2));
        assert!(!hanf_equiv(&c12, &two_c6, 3));
        assert!(hanf_equiv(&c12, &c12, 5));
        assert!(!hanf_equiv(&Graph::cycle(5), &Graph::cycle(6), 0));
        assert!(hanf_equiv(&Graph::path(4), &Graph::empty(4), 0));
    }

    #[test]
    fn radius_values() {
        assert_eq!(fsv_radius(0).unwrap(), 0);
        assert_eq!(fsv_radius(1).unwrap(), 1);
        assert_eq!(fsv_radius(2).unwrap(), 4);
        assert_eq!(fsv_radius(3).unwrap(), 13);
        assert!(fsv_radius(41).is_err());
    }

    #[test]
    fn rank_bounds() {
        assert!((bounded_degree_qr_bound(3, 28).unwrap() - 1.0).abs() < 1e-12);
        assert!((bounded_degree_qr_bound(2, 5).unwrap() - 2f64.ln() / 3f64.ln()).abs() < 1e-12);
        assert!(bounded_degree_qr_bound(1, 10).is_err());
        assert!(bounded_degree_qr_bound(3, 2).is_err());
        assert_eq!(n_phi(2, 1).unwrap(), BigUint::from(10u32));
        assert_eq!(n_phi(3, 2).unwrap(), BigUint::from(3u32).pow(9u32) + 1u32);
    }

    #[test]
    fn small_transfer_sweep() {
        let battery = Battery::generate(0);
        for k in 0..=2 {
            let report = hanf_transfer(&battery, k, 6).unwrap();
            assert!(report.disagreements.is_empty(), "{:?}", report.disagreements);
            assert!(report.sentences > 0);
        }
    }
}
