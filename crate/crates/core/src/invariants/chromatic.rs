use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{tutte, u_poly, xi};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::{Family, Monomial, MultiPoly, VarKey};

/// Chromatic polynomial in `lambda`, as `(-1)^r(E) lambda^k T(1-lambda, 0)`.
pub fn chromatic(g: &Graph) -> MultiPoly {
    let k = g.components().len();
    let rank = g.order() - k;
    let lambda = MultiPoly::var(VarKey::LAMBDA);
    let sigma: BTreeMap<_, _> = [
        (VarKey::X, &MultiPoly::one() - &lambda),
        (VarKey::Y, MultiPoly::zero()),
    ]
    .into();
    let sign = BigInt::from(if rank % 2 == 0 { 1 } else { -1 });
    (&tutte(g).substitute(&sigma) * &lambda.pow(k as u32)).scale(&sign)
}

/// Chromatic symmetric function in the power-sum basis:
/// `U(G; x_i -> (-1)^(i-1) p_i, y -> -1)`.
pub fn chromatic_symmetric(g: &Graph) -> MultiPoly {
    let u = u_poly(g);
    let mut sigma = BTreeMap::new();
    for v in u.variables() {
        match v.family {
            Family::XIndexed => {
                let p = MultiPoly::var(VarKey::p_i(v.index as usize));
                sigma.insert(v, if v.index % 2 == 1 { p } else { -p });
            }
            Family::Y => {
                sigma.insert(v, MultiPoly::constant(-1));
            }
            _ => unreachable!(),
        }
    }
    u.substitute(&sigma)
}

/// Truncate a power-sum polynomial to `vars` commuting variables:
/// `p_j -> v_1^j + ... + v_N^j`, the `v_i` written as `x_i`.
pub fn truncate_power_sums(p: &MultiPoly, vars: usize) -> MultiPoly {
    let mut sigma = BTreeMap::new();
    for v in p.variables() {
        if v.family == Family::PowerSum {
            let j = v.index;
            let sum = (1..=vars).fold(MultiPoly::zero(), |acc, i| {
                acc + MultiPoly::term(1, Monomial::from_powers([(VarKey::x_i(i), j)]))
            });
            sigma.insert(v, sum);
        }
    }
    p.substitute(&sigma)
}

/// Bivariate chromatic value by direct count: maps `V -> [x0]` with no edge
/// monochromatic in a color `<= y0`.
pub fn bivariate_chromatic_count(g: &Graph, x0: u32, y0: u32) -> BigInt {
    fn rec(g: &Graph, v: usize, colors: &mut Vec<u32>, x0: u32, y0: u32) -> BigInt {
        if v == g.order() {
            return BigInt::one();
        }
        let mut total = BigInt::zero();
        for c in 1..=x0 {
            let clash = c <= y0 && (0..v).any(|u| colors[u] == c && g.has_edge(u, v));
            if !clash {
                colors.push(c);
                total += rec(g, v + 1, colors, x0, y0);
                colors.pop();
            }
        }
        total
    }
    rec(g, 0, &mut Vec::with_capacity(g.order()), x0, y0)
}

/// Bivariate chromatic value through `xi(G; x0, -1, (y0 - x0) / x0)`.
pub fn bivariate_chromatic(g: &Graph, x0: &BigRational, y0: &BigRational) -> Result<BigRational> {
    if x0.is_zero() {
        return Err(Error::SingularSubstitution("x = 0 in (y - x) / x".into()));
    }
    let point: BTreeMap<_, _> = [
        (VarKey::X, x0.clone()),
        (VarKey::Y, -BigRational::one()),
        (VarKey::Z, (y0 - x0) / x0),
    ]
    .into();
    xi(g).evaluate(&point)
}
