//! Polynomials assembled from deck-derived counts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::catalog::Reconstructor;
use crate::error::{Error, Result};
use crate::graph::Deck;
use crate::invariants::rank_nullity_poly;
use crate::poly::{Family, Monomial, MultiPoly, VarKey};

impl Reconstructor {
    /// `U_lab` of the graph behind the deck. Plain decks use color 1.
    pub fn u_lab(&mut self, d: &Deck) -> Result<MultiPoly> {
        require_order(d)?;
        let n = d.order();
        let census = self.subgraph_census(d, usize::MAX)?;
        let tables = self.spanning_tables(&census, usize::MAX)?;
        let mut out = MultiPoly::term(1, Monomial::from_powers([(VarKey::x_i(1), n as u32)]));
        for (&h, s) in &census.counts {
            let info = self.info(h);
            if info.edges == 0 {
                continue;
            }
            let sizes = info.component_orders.iter().copied().chain(std::iter::repeat_n(1, n - info.order));
            out.add_term(*s, monomial(sizes, &info.profile_in(census.palette)));
        }
        for (parts, count) in &tables.disconnected {
            let sizes: Vec<usize> = parts.iter().map(|&f| self.info(f).order).collect();
            let mut profile = vec![0u8; census.palette];
            for &f in parts {
                for (p, q) in profile.iter_mut().zip(self.info(f).profile_in(census.palette)) {
                    *p += q;
                }
            }
            out.add_term(count.clone(), monomial(sizes, &profile));
        }
        for (profile, count) in &tables.connected {
            out.add_term(count.clone(), monomial([n], profile));
        }
        Ok(out)
    }

    pub fn u(&mut self, d: &Deck) -> Result<MultiPoly> {
        let lab = self.u_lab(d)?;
        u_from_u_lab(&merge_colors(&lab), d.order())
    }

    pub fn xi_lab(&mut self, d: &Deck) -> Result<MultiPoly> {
        let lab = self.u_lab(d)?;
        u_to_xi_transform(&lab, d.order())
    }

    pub fn xi(&mut self, d: &Deck) -> Result<MultiPoly> {
        let lab = merge_colors(&self.u_lab(d)?);
        Ok(u_to_xi_transform(&lab, d.order())?.rename(VarKey::t_c(1), VarKey::Y))
    }

    /// Parity of the number of perfect matchings.
    pub fn perfect_matching_parity(&mut self, d: &Deck) -> Result<u8> {
        require_order(d)?;
        let n = d.order();
        if n % 2 == 1 {
            return Ok(0);
        }
        let census = self.subgraph_census(d, n / 2)?;
        let palette = census.palette as u8;
        let edge_types: Vec<_> = (1..=palette).map(|c| self.edge_type(c)).collect();
        let mut parity = BigInt::zero();
        for parts in self.component_multisets(&edge_types, n) {
            parity += self.spanning_disconnected(&parts, &census)?;
        }
        Ok(if (parity % 2u32).is_zero() { 0 } else { 1 })
    }

    /// Rank over GF(2) of the adjacency matrix of the graph behind the deck.
    pub fn gf2_rank(&mut self, d: &Deck) -> Result<usize> {
        if self.perfect_matching_parity(d)? == 1 {
            return Ok(d.order());
        }
        let cards = self.card_types(d);
        Ok(cards.iter().map(|&(c, _)| self.info(c).gf2_rank).max().unwrap_or(0))
    }

    pub fn interlace(&mut self, d: &Deck) -> Result<MultiPoly> {
        require_order(d)?;
        let n = d.order();
        let census = self.induced_census(d)?;
        let mut by_rank: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (&h, &s) in &census.counts {
            let info = self.info(h);
            *by_rank.entry((info.gf2_rank, info.order - info.gf2_rank)).or_default() += BigInt::from(s);
        }
        let r = self.gf2_rank(d)?;
        *by_rank.entry((r, n - r)).or_default() += 1;
        Ok(rank_nullity_poly(by_rank.into_iter().map(|((r, k), c)| (r, k, c))))
    }
}

fn require_order(d: &Deck) -> Result<()> {
    if d.order() < 3 {
        return Err(Error::GraphTooSmall(format!(
            "reconstruction needs decks of order at least 3, got {}",
            d.order()
        )));
    }
    Ok(())
}

fn monomial(sizes: impl IntoIterator<Item = usize>, profile: &[u8]) -> Monomial {
    let xs = sizes.into_iter().map(|s| (VarKey::x_i(s), 1));
    let ys = profile.iter().enumerate().map(|(c, &a)| (VarKey::y_c(c + 1), a as u32));
    Monomial::from_powers(xs.chain(ys))
}

/// Replace every `y_c` by `y_1`.
fn merge_colors(p: &MultiPoly) -> MultiPoly {
    let sigma: BTreeMap<_, _> = p
        .variables()
        .into_iter()
        .filter(|v| v.family == Family::YColor && v.index != 1)
        .map(|v| (v, MultiPoly::var(VarKey::y_c(1))))
        .collect();
    p.substitute(&sigma)
}

/// Split a `U_lab` monomial into (component orders with multiplicity,
/// color exponents), checking that the orders add up to `n`.
fn parse_u_lab_monomial(m: &Monomial, n: usize) -> Result<(Vec<(usize, u32)>, Vec<(usize, u32)>)> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for &(v, e) in m.powers() {
        match v.family {
            Family::XIndexed => xs.push((v.index as usize, e)),
            Family::YColor => ys.push((v.index as usize, e)),
            _ => return Err(Error::NotULabPolynomial(format!("unexpected variable {v}"))),
        }
    }
    let total: usize = xs.iter().map(|&(i, e)| i * e as usize).sum();
    if total != n {
        return Err(Error::NotULabPolynomial(format!("monomial {m} covers {total} vertices, not {n}")));
    }
    Ok((xs, ys))
}

/// `U` from a single-color `U_lab`: `y_1^a` becomes `y` to the nullity
/// `a - n + k`, `k` the number of components.
pub fn u_from_u_lab(u_lab: &MultiPoly, n: usize) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero();
    for (m, c) in u_lab.terms() {
        let (xs, ys) = parse_u_lab_monomial(m, n)?;
        let mut a = 0i64;
        for (color, e) in ys {
            if color != 1 {
                return Err(Error::NotULabPolynomial(format!("color {color} in a single-color polynomial")));
            }
            a += e as i64;
        }
        let k: i64 = xs.iter().map(|&(_, e)| e as i64).sum();
        let nullity = a - n as i64 + k;
        if nullity < 0 {
            return Err(Error::NotULabPolynomial(format!("monomial {m} has negative nullity")));
        }
        let powers = xs.into_iter().map(|(i, e)| (VarKey::x_i(i), e)).chain([(VarKey::Y, nullity as u32)]);
        out.add_term(c.clone(), Monomial::from_powers(powers));
    }
    Ok(out)
}

/// `xi_lab` from `U_lab`: each monomial becomes
/// `x^k (1 + z)^k_e prod t_c^a_c`, where `k` counts all components and
/// `k_e` those with at least two vertices.
pub fn u_to_xi_transform(u_lab: &MultiPoly, n: usize) -> Result<MultiPoly> {
    let one_plus_z = &MultiPoly::one() + &MultiPoly::var(VarKey::Z);
    let mut out = MultiPoly::zero();
    for (m, c) in u_lab.terms() {
        let (xs, ys) = parse_u_lab_monomial(m, n)?;
        let k: u32 = xs.iter().map(|&(_, e)| e).sum();
        let k_e: u32 = xs.iter().filter(|&&(i, _)| i >= 2).map(|&(_, e)| e).sum();
        let head = Monomial::from_powers(
            std::iter::once((VarKey::X, k)).chain(ys.into_iter().map(|(col, e)| (VarKey::t_c(col), e))),
        );
        out += &MultiPoly::term(c.clone(), head) * &one_plus_z.pow(k_e);
    }
    Ok(out)
}
