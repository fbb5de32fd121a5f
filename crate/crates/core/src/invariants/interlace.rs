use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::graph::{bits, gf2_rank_rows, Graph};
use crate::poly::{MultiPoly, VarKey};

/// `q(G; x, y)`: the sum over vertex subsets `S` of
/// `(x-1)^rk(G[S]) (y-1)^(|S| - rk(G[S]))`, rank over GF(2).
pub fn interlace(g: &Graph) -> MultiPoly {
    let n = g.order();
    assert!(n < 64, "interlace expansion over {n} vertices is out of reach");
    let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    let mut rows = Vec::with_capacity(n);
    for s in 0u64..1 << n {
        rows.clear();
        rows.extend(bits(s).map(|v| g.neighbors(v) & s));
        let rk = gf2_rank_rows(&rows);
        *counts.entry((rk, rows.len() - rk)).or_insert(0) += 1;
    }
    rank_nullity_poly(counts.into_iter().map(|((r, k), c)| (r, k, BigInt::from(c))))
}

/// `sum c (x-1)^r (y-1)^k` over the given triples.
pub(crate) fn rank_nullity_poly(terms: impl IntoIterator<Item = (usize, usize, BigInt)>) -> MultiPoly {
    let xm1 = &MultiPoly::var(VarKey::X) - &MultiPoly::one();
    let ym1 = &MultiPoly::var(VarKey::Y) - &MultiPoly::one();
    let mut out = MultiPoly::zero();
    for (r, k, c) in terms {
        out += (&xm1.pow(r as u32) * &ym1.pow(k as u32)).scale(&c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate_graphs_with_limit;
    use num_rational::BigRational;

    fn q(terms: &[(i64, usize, usize)]) -> MultiPoly {
        rank_nullity_poly(terms.iter().map(|&(c, r, k)| (r, k, BigInt::from(c))))
    }

    #[test]
    fn small_examples() {
        assert_eq!(interlace(&Graph::empty(1)), MultiPoly::var(VarKey::Y));
        assert_eq!(interlace(&Graph::complete(2)), q(&[(1, 0, 0), (2, 0, 1), (1, 2, 0)]));
        assert_eq!(interlace(&Graph::empty(0)), MultiPoly::one());
        assert_eq!(interlace(&Graph::complete(3)), q(&[(1, 0, 0), (3, 0, 1), (3, 2, 0), (1, 2, 1)]));
        assert_eq!(interlace(&Graph::path(3)), q(&[(1, 0, 0), (3, 0, 1), (2, 2, 0), (1, 0, 2), (1, 2, 1)]));
        assert_eq!(interlace(&Graph::empty(3)), MultiPoly::var(VarKey::Y).pow(3));
    }

    #[test]
    fn evaluation_at_two_two() {
        let two = BigRational::from_integer(2.into());
        let pt: std::collections::BTreeMap<_, _> = [(VarKey::X, two.clone()), (VarKey::Y, two)].into();
        for n in 0..=7 {
            for g in enumerate_graphs_with_limit(n, false, 9).unwrap() {
                let v = interlace(&g).evaluate(&pt).unwrap();
                assert_eq!(v, BigRational::from_integer(BigInt::from(1u64 << n)));
            }
        }
    }
}
