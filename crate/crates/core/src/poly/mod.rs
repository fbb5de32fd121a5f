//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients over indexed variable families.

mod json;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use json::{poly_from_json, poly_to_json};

/// Variable families. Unindexed families use index 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    X,
    Y,
    Z,
    Lambda,
    /// `x_i`, indexed by component order.
    XIndexed,
    /// `y_c`, indexed by edge color.
    YColor,
    /// `t_c`, indexed by edge color.
    TColor,
    /// Power sums `p_i`.
    PowerSum,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::X => "x",
            Family::Y => "y",
            Family::Z => "z",
            Family::Lambda => "lambda",
            Family::XIndexed => "xi",
            Family::YColor => "yc",
            Family::TColor => "t",
            Family::PowerSum => "p",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Some(match s {
            "x" => Family::X,
            "y" => Family::Y,
            "z" => Family::Z,
            "lambda" => Family::Lambda,
            "xi" => Family::XIndexed,
            "yc" => Family::YColor,
            "t" => Family::TColor,
            "p" => Family::PowerSum,
            _ => return None,
        })
    }

    pub fn is_indexed(self) -> bool {
        matches!(self, Family::XIndexed | Family::YColor | Family::TColor | Family::PowerSum)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarKey {
    pub family: Family,
    pub index: u32,
}

impl VarKey {
    pub const X: VarKey = VarKey { family: Family::X, index: 0 };
    pub const Y: VarKey = VarKey { family: Family::Y, index: 0 };
    pub const Z: VarKey = VarKey { family: Family::Z, index: 0 };
    pub const LAMBDA: VarKey = VarKey { family: Family::Lambda, index: 0 };

    pub fn new(family: Family, index: u32) -> Result<Self> {
        if family.is_indexed() != (index >= 1) {
            return Err(Error::InvalidArgument(format!(
                "family {} cannot take index {index}",
                family.name()
            )));
        }
        Ok(VarKey { family, index })
    }

    pub fn x_i(i: usize) -> Self {
        assert!(i >= 1);
        VarKey { family: Family::XIndexed, index: i as u32 }
    }

    pub fn y_c(c: usize) -> Self {
        assert!(c >= 1);
        VarKey { family: Family::YColor, index: c as u32 }
    }

    pub fn t_c(c: usize) -> Self {
        assert!(c >= 1);
        VarKey { family: Family::TColor, index: c as u32 }
    }

    pub fn p_i(i: usize) -> Self {
        assert!(i >= 1);
        VarKey { family: Family::PowerSum, index: i as u32 }
    }

    /// JSON key, `family_index`.
    pub fn key(&self) -> String {
        format!("{}_{}", self.family.name(), self.index)
    }

    pub fn from_key(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("bad variable key `{s}`"));
        let (fam, idx) = s.rsplit_once('_').ok_or_else(bad)?;
        let family = Family::from_name(fam).ok_or_else(bad)?;
        let index = idx.parse().map_err(|_| bad())?;
        VarKey::new(family, index)
    }
}

impl fmt::Display for VarKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::X | Family::Y | Family::Z | Family::Lambda => write!(f, "{}", self.family.name()),
            Family::XIndexed => write!(f, "x_{}", self.index),
            Family::YColor => write!(f, "y_{}", self.index),
            Family::TColor => write!(f, "t_{}", self.index),
            Family::PowerSum => write!(f, "p_{}", self.index),
        }
    }
}

/// Product of variable powers, sorted by variable, exponents positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(VarKey, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarKey) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (VarKey, u32)>) -> Self {
        let mut map: BTreeMap<VarKey, u32> = BTreeMap::new();
        for (v, e) in powers {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn powers(&self) -> &[(VarKey, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: VarKey) -> u32 {
        self.0.iter().find(|p| p.0 == v).map_or(0, |p| p.1)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Remove `v` entirely, returning its exponent.
    pub fn without(&self, v: VarKey) -> (Monomial, u32) {
        let e = self.exponent(v);
        (Monomial(self.0.iter().copied().filter(|p| p.0 != v).collect()), e)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        MultiPoly::term(c, Monomial::one())
    }

    pub fn var(v: VarKey) -> Self {
        MultiPoly::term(1, Monomial::var(v))
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, c: impl Into<BigInt>, m: Monomial) {
        let c = c.into();
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn variables(&self) -> Vec<VarKey> {
        let mut vs: Vec<VarKey> = self.terms.keys().flat_map(|m| m.0.iter().map(|p| p.0)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn degree_in(&self, v: VarKey) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut result = MultiPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Replace variables by polynomials; unmapped variables stay as they are.
    pub fn substitute(&self, sigma: &BTreeMap<VarKey, MultiPoly>) -> MultiPoly {
        let mut cache: BTreeMap<(VarKey, u32), MultiPoly> = BTreeMap::new();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut prod = MultiPoly::constant(c.clone());
            let mut kept = Vec::new();
            for &(v, e) in &m.0 {
                match sigma.get(&v) {
                    Some(image) => {
                        let p = cache.entry((v, e)).or_insert_with(|| image.pow(e));
                        prod = &prod * &*p;
                    }
                    None => kept.push((v, e)),
                }
            }
            if !kept.is_empty() {
                prod = &prod * &MultiPoly::term(1, Monomial(kept));
            }
            out += prod;
        }
        out
    }

    /// Exact rational evaluation; every variable must be assigned.
    pub fn evaluate(&self, point: &BTreeMap<VarKey, BigRational>) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut val = BigRational::from_integer(c.clone());
            for &(v, e) in &m.0 {
                let x = point
                    .get(&v)
                    .ok_or_else(|| Error::InvalidArgument(format!("no value for variable {v}")))?;
                val *= num_traits::pow(x.clone(), e as usize);
            }
            total += val;
        }
        Ok(total)
    }

    /// Divide exactly by `(v - root)`; `None` if there is a remainder.
    pub fn div_linear(&self, v: VarKey, root: &BigInt) -> Option<MultiPoly> {
        // Group by the cofactor of v: self = sum_m q_m(v) * m.
        let mut groups: BTreeMap<Monomial, BTreeMap<u32, BigInt>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (rest, e) = m.without(v);
            groups.entry(rest).or_default().insert(e, c.clone());
        }
        let mut out = MultiPoly::zero();
        for (rest, coeffs) in groups {
            // Synthetic division of sum_e coeffs[e] v^e by (v - root).
            let top = *coeffs.keys().next_back().unwrap();
            let mut carry = BigInt::zero();
            for e in (0..=top).rev() {
                let a = coeffs.get(&e).cloned().unwrap_or_default() + &carry;
                if e == 0 {
                    if !a.is_zero() {
                        return None;
                    }
                } else {
                    out.add_term(a.clone(), rest.mul(&Monomial::from_powers([(v, e - 1)])));
                    carry = a * root;
                }
            }
        }
        Some(out)
    }

    pub fn rename(&self, from: VarKey, to: VarKey) -> MultiPoly {
        let mut sigma = BTreeMap::new();
        sigma.insert(from, MultiPoly::var(to));
        self.substitute(&sigma)
    }

    /// Univariate coefficient list in `v`, lowest degree first. Other
    /// variables must be absent.
    pub fn univariate_coefficients(&self, v: VarKey) -> Option<Vec<BigInt>> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![BigInt::zero(); deg + 1];
        for (m, c) in &self.terms {
            let (rest, e) = m.without(v);
            if !rest.0.is_empty() {
                return None;
            }
            out[e as usize] = c.clone();
        }
        Some(out)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest total degree first.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.total_degree().cmp(&a.0.total_degree()).then_with(|| b.0.cmp(a.0)));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.0.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl AddAssign<MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: MultiPoly) {
        for (m, c) in rhs.terms {
            self.add_term(c, m);
        }
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(c.clone(), m.clone());
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self += rhs;
        self
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(c1 * c2, m1.mul(m2));
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl From<VarKey> for MultiPoly {
    fn from(v: VarKey) -> Self {
        MultiPoly::var(v)
    }
}

impl From<i64> for MultiPoly {
    fn from(c: i64) -> Self {
        MultiPoly::constant(c)
    }
}
