//! Based quantum tori: the `Z[q^{±1/2}]`-algebra with basis `X^e`, `e ∈ Z^m`,
//! and product `X^e X^f = q^{Λ(e,f)/2} X^{e+f}` for a skew form `Λ`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qscalar::{HalfInt, QLaurent};

/// A lattice vector in `Z^m`.
pub type ExpVec = Vec<i64>;

/// A skew-symmetric integer matrix, read as the bilinear form `Λ(e,f) = eᵀΛf`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewForm {
    m: usize,
    entries: Vec<i64>,
}

impl SkewForm {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let m = rows.len();
        let mut entries = Vec::with_capacity(m * m);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::InvalidInput(format!(
                    "skew form row {} has length {}, expected {m}",
                    i + 1,
                    row.len()
                )));
            }
            entries.extend_from_slice(row);
        }
        for i in 0..m {
            for j in i..m {
                if entries[i * m + j] != -entries[j * m + i] {
                    return Err(Error::NotSkewSymmetric { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(SkewForm { m, entries })
    }

    pub fn zero(m: usize) -> Self {
        SkewForm {
            m,
            entries: vec![0; m * m],
        }
    }

    pub fn rank(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.m + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.m..(i + 1) * self.m]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.m).map(|i| self.row(i).to_vec()).collect()
    }

    /// The row vector `eᵀΛ`.
    pub fn apply_left(&self, e: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.m];
        for (i, &ei) in e.iter().enumerate() {
            if ei != 0 {
                for (o, &l) in out.iter_mut().zip(self.row(i)) {
                    *o += ei * l;
                }
            }
        }
        out
    }

    /// `Λ(e, f)`.
    pub fn eval(&self, e: &[i64], f: &[i64]) -> i64 {
        dot(&self.apply_left(e), f)
    }
}

impl Serialize for SkewForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SkewForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<i64>>::deserialize(d)?;
        SkewForm::new(rows).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn add_vec(a: &[i64], b: &[i64]) -> ExpVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub_vec(a: &[i64], b: &[i64]) -> ExpVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn scale_vec(a: &[i64], c: i64) -> ExpVec {
    a.iter().map(|x| x * c).collect()
}

pub(crate) fn unit_vec(m: usize, i: usize) -> ExpVec {
    let mut e = vec![0; m];
    e[i] = 1;
    e
}

/// An element of the quantum torus attached to `form`.
#[derive(Clone, Debug)]
pub struct TorusElement {
    form: Arc<SkewForm>,
    terms: BTreeMap<ExpVec, QLaurent>,
}

impl PartialEq for TorusElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.form, &other.form) || self.form == other.form) && self.terms == other.terms
    }
}

impl Eq for TorusElement {}

impl TorusElement {
    pub fn zero(form: &Arc<SkewForm>) -> Self {
        TorusElement {
            form: form.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(form: &Arc<SkewForm>) -> Self {
        Self::basis(form, vec![0; form.rank()])
    }

    /// The basis element `X^e`.
    pub fn basis(form: &Arc<SkewForm>, e: ExpVec) -> Self {
        Self::monomial(form, e, QLaurent::one())
    }

    pub fn monomial(form: &Arc<SkewForm>, e: ExpVec, coeff: QLaurent) -> Self {
        assert_eq!(e.len(), form.rank(), "exponent length must equal the torus rank");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(e, coeff);
        }
        TorusElement {
            form: form.clone(),
            terms,
        }
    }

    pub fn scalar(form: &Arc<SkewForm>, c: QLaurent) -> Self {
        Self::monomial(form, vec![0; form.rank()], c)
    }

    /// Sums the given terms, merging equal exponents.
    pub fn from_terms(form: &Arc<SkewForm>, terms: impl IntoIterator<Item = (ExpVec, QLaurent)>) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != form.rank() {
                return Err(Error::RankMismatch(format!(
                    "exponent of length {} in a rank {} torus",
                    e.len(),
                    form.rank()
                )));
            }
            accumulate(&mut out, e, c);
        }
        Ok(TorusElement {
            form: form.clone(),
            terms: out,
        })
    }

    pub fn form(&self) -> &Arc<SkewForm> {
        &self.form
    }

    pub fn terms(&self) -> &BTreeMap<ExpVec, QLaurent> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<ExpVec, QLaurent> {
        self.terms
    }

    pub fn coefficient(&self, e: &[i64]) -> QLaurent {
        self.terms.get(e).cloned().unwrap_or_default()
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

    /// If this element is `c X^e`, returns `(e, c)`.
    pub fn as_monomial(&self) -> Option<(&ExpVec, &QLaurent)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Inverse of `±q^h X^e`, the only invertible elements.
    pub fn monomial_inverse(&self) -> Option<Self> {
        let (e, c) = self.as_monomial()?;
        let [(h, k)] = c.terms() else { return None };
        if !k.abs().is_one() {
            return None;
        }
        let inv = QLaurent::monomial(-*h, k.clone());
        Some(Self::monomial(&self.form, e.iter().map(|x| -x).collect(), inv))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.form, &other.form) || self.form == other.form {
            Ok(())
        } else {
            Err(Error::RankMismatch("operands belong to different quantum tori".into()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.terms.clone();
        for (e, c) in &other.terms {
            accumulate(&mut out, e.clone(), c.clone());
        }
        Ok(TorusElement {
            form: self.form.clone(),
            terms: out,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.terms.clone();
        for (e, c) in &other.terms {
            accumulate(&mut out, e.clone(), -c);
        }
        Ok(TorusElement {
            form: self.form.clone(),
            terms: out,
        })
    }

    /// Multiplication by a central scalar.
    pub fn scale(&self, c: &QLaurent) -> Self {
        if c.is_zero() {
            return Self::zero(&self.form);
        }
        TorusElement {
            form: self.form.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplication by `q^{h}`.
    pub fn shift(&self, h: HalfInt) -> Self {
        TorusElement {
            form: self.form.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x.shift(h))).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero(&self.form));
        }
        let mut acc: HashMap<ExpVec, QLaurent> = HashMap::with_capacity(self.len() * rhs.len());
        for (e, a) in &self.terms {
            let row = self.form.apply_left(e);
            for (f, b) in &rhs.terms {
                let twist = HalfInt::from_twice(dot(&row, f));
                let c = (a * b).shift(twist);
                let key = add_vec(e, f);
                match acc.get_mut(&key) {
                    Some(x) => *x += &c,
                    None => {
                        acc.insert(key, c);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(TorusElement {
            form: self.form.clone(),
            terms,
        })
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::one(&self.form);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Termwise bar-involution of the coefficients. On basis elements this is
    /// an anti-automorphism of the torus.
    pub fn bar(&self) -> Self {
        TorusElement {
            form: self.form.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.bar())).collect(),
        }
    }

    /// Specializes `q = 1` and returns the commutative Laurent coefficients.
    pub fn eval_one(&self) -> BTreeMap<ExpVec, num_bigint::BigInt> {
        self.terms
            .iter()
            .map(|(e, c)| (e.clone(), c.eval_one()))
            .filter(|(_, c)| !num_traits::Zero::is_zero(c))
            .collect()
    }

    /// Returns `Q` with `divisor · Q = numerator`.
    pub fn exact_left_divide(divisor: &Self, numerator: &Self) -> Result<Self> {
        divide(divisor, numerator, Side::Left)
    }

    /// Returns `Q` with `Q · divisor = numerator`.
    pub fn exact_right_divide(numerator: &Self, divisor: &Self) -> Result<Self> {
        divide(divisor, numerator, Side::Right)
    }
}

fn accumulate(map: &mut BTreeMap<ExpVec, QLaurent>, e: ExpVec, c: QLaurent) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&e) {
        Some(x) => {
            *x += &c;
            if x.is_zero() {
                map.remove(&e);
            }
        }
        None => {
            map.insert(e, c);
        }
    }
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

fn divide(divisor: &TorusElement, numerator: &TorusElement, side: Side) -> Result<TorusElement> {
    divisor.check_same(numerator)?;
    let form = numerator.form.clone();
    if divisor.is_zero() {
        return Err(Error::NotDivisible);
    }
    if numerator.is_zero() {
        return Ok(TorusElement::zero(&form));
    }
    let (d_lead, d_lead_coeff) = divisor.terms.iter().next_back().expect("nonempty");
    let d_trail = divisor.terms.keys().next().expect("nonempty");
    let floor = sub_vec(numerator.terms.keys().next().expect("nonempty"), d_trail);
    let d_rows: Vec<(Vec<i64>, &ExpVec, &QLaurent)> = divisor
        .terms
        .iter()
        .map(|(e, c)| (form.apply_left(e), e, c))
        .collect();

    let mut rem = numerator.terms.clone();
    let mut quotient = BTreeMap::new();
    while let Some((lead, lead_coeff)) = rem.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
        let qe = sub_vec(&lead, d_lead);
        if qe < floor {
            return Err(Error::NotDivisible);
        }
        let ratio = lead_coeff.div_exact(d_lead_coeff).ok_or(Error::NotDivisible)?;
        let twist = match side {
            Side::Left => form.eval(d_lead, &qe),
            Side::Right => form.eval(&qe, d_lead),
        };
        let qc = ratio.shift(HalfInt::from_twice(-twist));
        let qe_row = form.apply_left(&qe);
        for (row, f, c) in &d_rows {
            let tw = match side {
                Side::Left => dot(row, &qe),
                Side::Right => dot(&qe_row, f),
            };
            let term = (&qc * *c).shift(HalfInt::from_twice(tw));
            accumulate(&mut rem, add_vec(f, &qe), -term);
        }
        if rem.contains_key(&lead) {
            return Err(Error::NotDivisible);
        }
        quotient.insert(qe, qc);
    }
    Ok(TorusElement { form, terms: quotient })
}

/// The ordered product `q^{shift} ∏ (X^{c_i})^{p_i}` of basis monomials, in the
/// order given.
pub fn frame_product(form: &Arc<SkewForm>, factors: &[(ExpVec, u32)], q_shift: HalfInt) -> TorusElement {
    let m = form.rank();
    let mut exp = vec![0; m];
    let mut twice = q_shift.twice();
    for (c, p) in factors {
        let scaled = scale_vec(c, *p as i64);
        twice += form.eval(&exp, &scaled);
        exp = add_vec(&exp, &scaled);
    }
    TorusElement::monomial(form, exp, QLaurent::q_power(HalfInt::from_twice(twice)))
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exponent: ExpVec,
    coefficient: QLaurent,
}

impl Serialize for TorusElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&TermJson {
                exponent: e.clone(),
                coefficient: c.clone(),
            })?;
        }
        seq.end()
    }
}

impl TorusElement {
    /// Parses the JSON term list into the torus attached to `form`.
    pub fn from_json(form: &Arc<SkewForm>, value: &serde_json::Value) -> Result<Self> {
        let raw: Vec<TermJson> =
            serde_json::from_value(value.clone()).map_err(|e| Error::InvalidInput(format!("torus element: {e}")))?;
        Self::from_terms(form, raw.into_iter().map(|t| (t.exponent, t.coefficient)))
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let zero = e.iter().all(|&x| x == 0);
            if zero {
                write!(f, "({c})")?;
            } else {
                if !c.is_one() {
                    write!(f, "({c})")?;
                }
                let parts: Vec<String> = e.iter().map(|x| x.to_string()).collect();
                write!(f, "X^({})", parts.join(","))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn form2() -> Arc<SkewForm> {
        Arc::new(SkewForm::new(vec![vec![0, 1], vec![-1, 0]]).unwrap())
    }

    fn q(twice: i64) -> QLaurent {
        QLaurent::q_power(HalfInt::from_twice(twice))
    }

    #[test]
    fn rejects_non_skew_forms() {
        assert_eq!(
            SkewForm::new(vec![vec![0, 1], vec![1, 0]]),
            Err(Error::NotSkewSymmetric { i: 1, j: 2 })
        );
        assert!(SkewForm::new(vec![vec![0, 1]]).is_err());
    }

    #[test]
    fn twisted_product_and_commutation() {
        let f = form2();
        let x1 = TorusElement::basis(&f, vec![1, 0]);
        let x2 = TorusElement::basis(&f, vec![0, 1]);
        let p = x1.mul(&x2).unwrap();
        assert_eq!(p, TorusElement::monomial(&f, vec![1, 1], q(1)));
        let swapped = x2.mul(&x1).unwrap().scale(&q(2));
        assert!(p.sub(&swapped).unwrap().is_zero());
        let inv = TorusElement::basis(&f, vec![-3, 2]);
        let e = TorusElement::basis(&f, vec![3, -2]);
        assert_eq!(e.mul(&inv).unwrap(), TorusElement::one(&f));
    }

    #[test]
    fn different_forms_are_rejected() {
        let a = TorusElement::one(&form2());
        let b = TorusElement::one(&Arc::new(SkewForm::zero(2)));
        assert!(matches!(a.mul(&b), Err(Error::RankMismatch(_))));
    }

    #[test]
    fn frame_product_examples() {
        let f = form2();
        assert_eq!(frame_product(&f, &[], HalfInt::ZERO), TorusElement::one(&f));
        assert_eq!(
            frame_product(&f, &[(vec![2, -1], 1)], HalfInt::ZERO),
            TorusElement::basis(&f, vec![2, -1])
        );
        assert_eq!(
            frame_product(&f, &[(vec![1, 0], 1), (vec![0, 1], 1)], HalfInt::from_twice(-1)),
            TorusElement::basis(&f, vec![1, 1])
        );
    }

    #[test]
    fn bar_examples() {
        let f = form2();
        let a = TorusElement::monomial(&f, vec![1, 0], q(1));
        assert_eq!(a.bar(), TorusElement::monomial(&f, vec![1, 0], q(-1)));
        assert_eq!(a.bar().bar(), a);
    }

    #[test]
    fn rank_zero_torus() {
        let f = Arc::new(SkewForm::zero(0));
        let a = TorusElement::scalar(&f, &q(1) + &QLaurent::one());
        let b = TorusElement::scalar(&f, q(-1));
        let p = a.mul(&b).unwrap();
        assert_eq!(TorusElement::exact_left_divide(&a, &p).unwrap(), b);
    }

    #[test]
    fn division_detects_non_laurent_quotients() {
        let f = form2();
        let one = TorusElement::one(&f);
        let x1 = TorusElement::basis(&f, vec![1, 0]);
        let d = x1.add(&one).unwrap();
        assert_eq!(TorusElement::exact_left_divide(&d, &one), Err(Error::NotDivisible));
        let two = TorusElement::scalar(&f, QLaurent::from_int(2));
        assert_eq!(TorusElement::exact_left_divide(&two, &x1), Err(Error::NotDivisible));
    }

    #[test]
    fn json_shape() {
        let f = form2();
        let a = TorusElement::from_terms(&f, [(vec![0, 1], q(2)), (vec![0, 0], QLaurent::one())]).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(
            s,
            r#"[{"exponent":[0,0],"coefficient":[[0,1]]},{"exponent":[0,1],"coefficient":[[2,1]]}]"#
        );
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(TorusElement::from_json(&f, &v).unwrap(), a);
    }

    fn arb_form(m: usize) -> impl Strategy<Value = Arc<SkewForm>> {
        prop::collection::vec(-3i64..=3, m * (m - 1) / 2).prop_map(move |upper| {
            let mut rows = vec![vec![0; m]; m];
            let mut it = upper.into_iter();
            for i in 0..m {
                for j in i + 1..m {
                    let v = it.next().unwrap();
                    rows[i][j] = v;
                    rows[j][i] = -v;
                }
            }
            Arc::new(SkewForm::new(rows).unwrap())
        })
    }

    fn arb_terms(m: usize) -> impl Strategy<Value = Vec<(ExpVec, i64, i64)>> {
        prop::collection::vec((prop::collection::vec(-2i64..=2, m), -3i64..=3, -3i64..=3), 1..=6)
    }

    fn build(form: &Arc<SkewForm>, raw: &[(ExpVec, i64, i64)]) -> TorusElement {
        TorusElement::from_terms(
            form,
            raw.iter()
                .map(|(e, t, c)| (e.clone(), QLaurent::monomial(HalfInt::from_twice(*t), *c))),
        )
        .unwrap()
    }

    proptest! {
        #[test]
        fn associativity_and_quasi_commutation(
            form in arb_form(3),
            e in prop::collection::vec(-3i64..=3, 3),
            f in prop::collection::vec(-3i64..=3, 3),
            g in prop::collection::vec(-3i64..=3, 3),
        ) {
            let (xe, xf, xg) = (
                TorusElement::basis(&form, e.clone()),
                TorusElement::basis(&form, f.clone()),
                TorusElement::basis(&form, g),
            );
            prop_assert_eq!(xe.mul(&xf).unwrap().mul(&xg).unwrap(), xe.mul(&xf.mul(&xg).unwrap()).unwrap());
            let lhs = xe.mul(&xf).unwrap();
            let rhs = xf.mul(&xe).unwrap().scale(&q(2 * form.eval(&e, &f)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn division_round_trip(form in arb_form(3), a in arb_terms(3), b in arb_terms(3)) {
            let d = build(&form, &a);
            let qt = build(&form, &b);
            prop_assume!(!d.is_zero() && !qt.is_zero());
            let n = d.mul(&qt).unwrap();
            prop_assert_eq!(TorusElement::exact_left_divide(&d, &n).unwrap(), qt.clone());
            let n = qt.mul(&d).unwrap();
            prop_assert_eq!(TorusElement::exact_right_divide(&n, &d).unwrap(), qt);
        }

        #[test]
        fn bar_is_an_involutive_anti_automorphism(form in arb_form(3), a in arb_terms(3), b in arb_terms(3)) {
            let x = build(&form, &a);
            let y = build(&form, &b);
            prop_assert_eq!(x.bar().bar(), x.clone());
            let lhs = x.mul(&y).unwrap().bar();
            let rhs = y.bar().mul(&x.bar()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
