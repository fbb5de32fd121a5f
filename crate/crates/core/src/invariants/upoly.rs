use std::collections::BTreeMap;

use num_bigint::BigInt;
use rustc_hash::FxHashMap;

use super::subsets::{for_each_submask, EdgeSet};
use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Graph};
use crate::poly::{Family, Monomial, MultiPoly, VarKey};

/// `U(G; x, y)`: over edge subsets `A`, the product of `x_|D|` over the
/// components `D` of `(V, A)` times `y` to the nullity of `A`.
pub fn u_poly(g: &Graph) -> MultiPoly {
    let es = EdgeSet::plain(g);
    let n = g.order();
    let mut counts: FxHashMap<Vec<u8>, u64> = FxHashMap::default();
    let mut key = vec![0u8; n + 2];
    for_each_submask(es.all(), |a| {
        key.fill(0);
        let k = es.component_histogram(a, &mut key[..=n]);
        key[n + 1] = (a.count_ones() as usize + k - n) as u8;
        bump(&mut counts, &key);
    });
    let mut out = MultiPoly::zero();
    for (key, c) in counts {
        let powers = size_powers(&key[..=n]).chain(std::iter::once((VarKey::Y, key[n + 1] as u32)));
        out.add_term(c, Monomial::from_powers(powers));
    }
    out
}

/// `U_lab(G; x, y)`: as [`u_poly`] but each chosen edge contributes the
/// variable `y_c` of its color.
pub fn u_lab(g: &ColoredGraph) -> MultiPoly {
    let es = EdgeSet::colored(g);
    let n = g.order();
    let palette = es.color_masks.len();
    let mut counts: FxHashMap<Vec<u8>, u64> = FxHashMap::default();
    let mut key = vec![0u8; n + 1 + palette];
    for_each_submask(es.all(), |a| {
        key.fill(0);
        es.component_histogram(a, &mut key[..=n]);
        for (slot, c) in key[n + 1..].iter_mut().zip(es.color_counts(a)) {
            *slot = c;
        }
        bump(&mut counts, &key);
    });
    let mut out = MultiPoly::zero();
    for (key, c) in counts {
        let colors = key[n + 1..].iter().enumerate().map(|(i, &e)| (VarKey::y_c(i + 1), e as u32));
        out.add_term(c, Monomial::from_powers(size_powers(&key[..=n]).chain(colors)));
    }
    out
}

/// `xi_lab(G; x, z, t)`: over pairs of edge sets `A`, `B` covering disjoint
/// vertex sets, `x^k(A u B) * prod t_c(e) * z^k_cov(B)`.
pub fn xi_lab(g: &ColoredGraph) -> MultiPoly {
    let es = EdgeSet::colored(g);
    let n = g.order();
    let palette = es.color_masks.len();
    let mut counts: FxHashMap<Vec<u8>, u64> = FxHashMap::default();
    let mut key = vec![0u8; 2 + palette];
    let all = es.all();
    for_each_submask(all, |a| {
        let va = es.covered(a);
        let free: u64 = (0..es.len())
            .filter(|&i| {
                let (u, v) = es.ends[i];
                (all >> i & 1 == 1) && (va >> u & 1 == 0) && (va >> v & 1 == 0)
            })
            .fold(0, |m, i| m | 1 << i);
        for_each_submask(free, |b| {
            let k = es.component_count(a | b);
            let covered_b = es.covered(b).count_ones() as usize;
            let k_cov = es.component_count(b) - (n - covered_b);
            key[0] = k as u8;
            key[1] = k_cov as u8;
            for (slot, c) in key[2..].iter_mut().zip(es.color_counts(a | b)) {
                *slot = c;
            }
            bump(&mut counts, &key);
        });
    });
    let mut out = MultiPoly::zero();
    for (key, c) in counts {
        let colors = key[2..].iter().enumerate().map(|(i, &e)| (VarKey::t_c(i + 1), e as u32));
        let powers = [(VarKey::X, key[0] as u32), (VarKey::Z, key[1] as u32)].into_iter().chain(colors);
        out.add_term(c, Monomial::from_powers(powers));
    }
    out
}

/// `xi(G; x, y, z)`: `xi_lab` of the monochrome graph with `t_1` read as `y`.
pub fn xi(g: &Graph) -> MultiPoly {
    xi_lab(&ColoredGraph::monochrome(g)).rename(VarKey::t_c(1), VarKey::Y)
}

/// Tutte polynomial from a U-polynomial: substitute `x_i -> x-1`,
/// `y -> y-1` and divide by `(x-1)^k`.
pub fn specialize_u_to_tutte(u: &MultiPoly, components: usize) -> Result<MultiPoly> {
    let mut sigma = BTreeMap::new();
    let xm1 = &MultiPoly::var(VarKey::X) - &MultiPoly::one();
    for v in u.variables() {
        match v.family {
            Family::XIndexed => {
                sigma.insert(v, xm1.clone());
            }
            Family::Y => {
                sigma.insert(v, &MultiPoly::var(VarKey::Y) - &MultiPoly::one());
            }
            _ => return Err(Error::NotUPolynomial),
        }
    }
    let mut p = u.substitute(&sigma);
    for _ in 0..components {
        p = p.div_linear(VarKey::X, &BigInt::from(1)).ok_or(Error::NotUPolynomial)?;
    }
    Ok(p)
}

fn bump(counts: &mut FxHashMap<Vec<u8>, u64>, key: &[u8]) {
    match counts.get_mut(key) {
        Some(c) => *c += 1,
        None => {
            counts.insert(key.to_vec(), 1);
        }
    }
}

fn size_powers(hist: &[u8]) -> impl Iterator<Item = (VarKey, u32)> + '_ {
    hist.iter()
        .enumerate()
        .filter(|&(_, &m)| m > 0)
        .map(|(s, &m)| (VarKey::x_i(s), m as u32))
}
