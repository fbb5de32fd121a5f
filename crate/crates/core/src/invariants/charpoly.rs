use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::graph::Graph;
use crate::poly::{Monomial, MultiPoly, VarKey};

/// `det(x I - A)` by Faddeev-LeVerrier over the integers.
pub fn characteristic_poly(g: &Graph) -> MultiPoly {
    let coeffs = charpoly_coefficients(g);
    let mut out = MultiPoly::zero();
    for (k, c) in coeffs.into_iter().enumerate() {
        out.add_term(c, Monomial::from_powers([(VarKey::X, k as u32)]));
    }
    out
}

/// Coefficients of `det(x I - A)`, constant term first.
pub fn charpoly_coefficients(g: &Graph) -> Vec<BigInt> {
    let n = g.order();
    let a: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| g.has_edge(i, j) as i64).collect())
        .collect();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for l in 0..n {
                if a[i][l] == 1 {
                    for j in 0..n {
                        if !m[l][j].is_zero() {
                            next[i][j] += &m[l][j];
                        }
                    }
                }
            }
            next[i][i] += &c[n - k + 1];
        }
        m = next;
        // c_{n-k} = -tr(A M_k) / k
        let mut tr = BigInt::zero();
        for i in 0..n {
            for l in 0..n {
                if a[i][l] == 1 {
                    tr += &m[l][i];
                }
            }
        }
        c[n - k] = -(tr / BigInt::from(k));
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bits, enumerate_graphs_with_limit};

    fn coeffs(g: &Graph) -> Vec<i64> {
        charpoly_coefficients(g).iter().map(|c| c.try_into().unwrap()).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(coeffs(&Graph::empty(1)), vec![0, 1]);
        assert_eq!(coeffs(&Graph::complete(2)), vec![-1, 0, 1]);
        assert_eq!(coeffs(&Graph::complete(3)), vec![-2, -3, 0, 1]);
        assert_eq!(coeffs(&Graph::empty(0)), vec![1]);
    }

    /// Fraction-free determinant.
    fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    #[test]
    fn matches_principal_minor_expansion() {
        for n in 0..=6 {
            for g in enumerate_graphs_with_limit(n, false, 9).unwrap() {
                let mut expected = vec![BigInt::zero(); n + 1];
                for s in 0u64..1 << n {
                    let vs: Vec<usize> = bits(s).collect();
                    let minor = vs
                        .iter()
                        .map(|&i| vs.iter().map(|&j| BigInt::from(g.has_edge(i, j) as i64)).collect())
                        .collect();
                    let sign = if vs.len() % 2 == 0 { 1 } else { -1 };
                    expected[n - vs.len()] += bareiss(minor) * sign;
                }
                assert_eq!(charpoly_coefficients(&g), expected);
            }
        }
    }

    #[test]
    fn second_coefficient_counts_edges() {
        for n in 2..=7 {
            for g in enumerate_graphs_with_limit(n, false, 9).unwrap() {
                let c = charpoly_coefficients(&g);
                assert_eq!(c[n - 2], BigInt::from(-(g.edge_count() as i64)));
                assert!(c[n - 1].is_zero());
            }
        }
    }
}
