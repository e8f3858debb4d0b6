//! Exact arithmetic in the Laurent ring `Z[q^{±1/2}]`.
//!
//! Every exponent of `q` that shows up in the engine lives in `½Z`, so
//! exponents are stored doubled ([`HalfInt`]) and a [`QLaurent`] is a sparse
//! sorted list of `(twice_exponent, coefficient)` pairs. Coefficients are
//! arbitrary precision.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

/// A half-integer `k/2`, stored as `k`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub const fn from_int(value: i64) -> Self {
        HalfInt(2 * value)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl AddAssign for HalfInt {
    fn add_assign(&mut self, rhs: HalfInt) {
        self.0 += rhs.0;
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl Mul<i64> for HalfInt {
    type Output = HalfInt;
    fn mul(self, rhs: i64) -> HalfInt {
        HalfInt(self.0 * rhs)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// An element of `Z[q^{±1/2}]`.
///
/// Terms are kept sorted by exponent with no zero coefficients, so the empty
/// list is the ring zero and structural equality is ring equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QLaurent {
    terms: Vec<(HalfInt, BigInt)>,
}

impl QLaurent {
    pub fn zero() -> Self {
        QLaurent { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::monomial(HalfInt::ZERO, c)
    }

    /// `c · q^{exp}`.
    pub fn monomial(exp: HalfInt, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            QLaurent {
                terms: vec![(exp, c)],
            }
        }
    }

    /// `q^{exp}`.
    pub fn q_power(exp: HalfInt) -> Self {
        Self::monomial(exp, 1)
    }

    /// Builds from arbitrary `(exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (HalfInt, C)>,
        C: Into<BigInt>,
    {
        let mut v: Vec<(HalfInt, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        v.sort_by_key(|(e, _)| *e);
        Self::from_sorted(v)
    }

    fn from_sorted(v: Vec<(HalfInt, BigInt)>) -> Self {
        let mut out: Vec<(HalfInt, BigInt)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        QLaurent { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_zero() && self.terms[0].1.is_one()
    }

    pub fn terms(&self) -> &[(HalfInt, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: HalfInt) -> BigInt {
        match self.terms.binary_search_by_key(&exp, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn min_exponent(&self) -> Option<HalfInt> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn max_exponent(&self) -> Option<HalfInt> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// If `self = q^h` exactly, returns `h`.
    pub fn as_q_power(&self) -> Option<HalfInt> {
        match self.terms.as_slice() {
            [(e, c)] if c.is_one() => Some(*e),
            _ => None,
        }
    }

    /// Multiplies by `q^{shift}`.
    pub fn shift(&self, shift: HalfInt) -> Self {
        QLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e + shift, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QLaurent {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// The bar-involution `q^{r/2} ↦ q^{-r/2}`.
    pub fn bar(&self) -> Self {
        QLaurent {
            terms: self.terms.iter().rev().map(|(e, c)| (-*e, c.clone())).collect(),
        }
    }

    /// Specialization `q = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c).sum()
    }

    /// Exact quotient `self / divisor` in `Z[q^{±1/2}]`, or `None` when the
    /// quotient is not a Laurent polynomial with integer coefficients.
    pub fn div_exact(&self, divisor: &QLaurent) -> Option<QLaurent> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let [(e, c)] = divisor.terms.as_slice() {
            let mut out = Vec::with_capacity(self.terms.len());
            for (x, a) in &self.terms {
                let (quo, rem) = a.div_rem(c);
                if !rem.is_zero() {
                    return None;
                }
                out.push((*x - *e, quo));
            }
            return Some(QLaurent { terms: out });
        }
        // Long division from the top degree. A quotient exists only with
        // exponents in [min(self) - min(div), max(self) - max(div)].
        let (dlo, dhi) = (divisor.min_exponent()?, divisor.max_exponent()?);
        let lead = &divisor.terms.last()?.1;
        let floor = self.min_exponent()? - dlo;
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((top, c)) = rem.terms.last().cloned() {
            let qe = top - dhi;
            if qe < floor {
                return None;
            }
            let (qc, r) = c.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            let step = divisor.shift(qe).scale(&qc);
            rem = &rem - &step;
            quotient.push((qe, qc));
        }
        quotient.reverse();
        Some(QLaurent { terms: quotient })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if e.is_zero() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}")?;
                }
                write!(f, "{}", QPowerDisplay(*e))?;
            }
        }
        Ok(())
    }
}

/// Renders `q^{e}` as `q`, `q^{2}`, `q^{1/2}`, `q^{-3/2}`.
pub(crate) struct QPowerDisplay(pub HalfInt);

impl fmt::Display for QPowerDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.0;
        if e == HalfInt::from_int(1) {
            write!(f, "q")
        } else {
            write!(f, "q^{{{e}}}")
        }
    }
}

fn merge_with(a: &QLaurent, b: &QLaurent, negate_b: bool) -> QLaurent {
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() || j < b.terms.len() {
        let ord = match (a.terms.get(i), b.terms.get(j)) {
            (Some((x, _)), Some((y, _))) => x.cmp(y),
            (Some(_), None) => Ordering::Less,
            (None, _) => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                out.push(a.terms[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                let (e, c) = &b.terms[j];
                out.push((*e, if negate_b { -c } else { c.clone() }));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b {
                    &a.terms[i].1 - &b.terms[j].1
                } else {
                    &a.terms[i].1 + &b.terms[j].1
                };
                if !c.is_zero() {
                    out.push((a.terms[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    QLaurent { terms: out }
}

impl Add for &QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        merge_with(self, rhs, false)
    }
}

impl Add for QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: QLaurent) -> QLaurent {
        merge_with(&self, &rhs, false)
    }
}

impl AddAssign<&QLaurent> for QLaurent {
    fn add_assign(&mut self, rhs: &QLaurent) {
        *self = merge_with(self, rhs, false);
    }
}

impl Sub for &QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &QLaurent) -> QLaurent {
        merge_with(self, rhs, true)
    }
}

impl Sub for QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: QLaurent) -> QLaurent {
        merge_with(&self, &rhs, true)
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        QLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        -&self
    }
}

impl Mul for &QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        if self.is_zero() || rhs.is_zero() {
            return QLaurent::zero();
        }
        if let [(e, c)] = rhs.terms.as_slice() {
            return QLaurent {
                terms: self.terms.iter().map(|(x, a)| (*x + *e, a * c)).collect(),
            };
        }
        let mut prod = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (x, a) in &self.terms {
            for (y, b) in &rhs.terms {
                prod.push((*x + *y, a * b));
            }
        }
        prod.sort_by_key(|(e, _)| *e);
        QLaurent::from_sorted(prod)
    }
}

impl Mul for QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: QLaurent) -> QLaurent {
        &self * &rhs
    }
}

/// Gaussian binomial `(r choose p)_t` at `t = q^{d/2}`.
///
/// Read off as the coefficient of `x^p` in `∏_{i=0}^{r-1} (1 + t^{r-1-2i} x)`,
/// which keeps the computation division-free. Zero when `p < 0` or `p > r`.
pub fn t_binomial(r: u32, p: i64, d: i64) -> QLaurent {
    if p < 0 || p > r as i64 {
        return QLaurent::zero();
    }
    t_binomial_row(r, d).swap_remove(p as usize)
}

/// All coefficients `(r choose p)_t` for `p = 0..=r`.
pub fn t_binomial_row(r: u32, d: i64) -> Vec<QLaurent> {
    let mut row = vec![QLaurent::one()];
    for i in 0..r as i64 {
        // t^{r-1-2i} = q^{d (r-1-2i) / 2}
        let factor = QLaurent::q_power(HalfInt::from_twice(d * (r as i64 - 1 - 2 * i)));
        let mut next = vec![QLaurent::zero(); row.len() + 1];
        for (p, c) in row.iter().enumerate() {
            next[p] += c;
            next[p + 1] += &(c * &factor);
        }
        row = next;
    }
    row
}

impl Serialize for QLaurent {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&(e.twice(), JsonInt(c)))?;
        }
        seq.end()
    }
}

/// Integers are written as JSON numbers when they fit in `i64` and as decimal
/// strings otherwise.
pub(crate) struct JsonInt<'a>(pub &'a BigInt);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => serializer.serialize_i64(v),
            None => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
pub(crate) enum JsonIntIn {
    Small(i64),
    Big(String),
}

impl JsonIntIn {
    pub(crate) fn into_bigint<E: de::Error>(self) -> Result<BigInt, E> {
        match self {
            JsonIntIn::Small(v) => Ok(BigInt::from(v)),
            JsonIntIn::Big(s) => s.parse().map_err(|_| E::custom(format!("bad integer {s:?}"))),
        }
    }
}

impl<'de> Deserialize<'de> for QLaurent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw: Vec<(i64, JsonIntIn)> = Vec::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            terms.push((HalfInt::from_twice(e), c.into_bigint::<D::Error>()?));
        }
        Ok(QLaurent::from_terms(terms))
    }
}
