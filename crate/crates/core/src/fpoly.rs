//! Quantum F-polynomials.
//!
//! A [`QFPoly`] lives in the quantum torus on `Z_1..Z_n` with
//! `Z_i Z_j = q^{d_i b_ij} Z_j Z_i`; its basis element at `a` is the
//! normalized monomial `Z^a`. Two independent routes produce them: reading
//! them off cluster variables of the principal quantization
//! ([`extract_qfpoly`]), and the mutation recurrence ([`RecurrenceState`]).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cluster::{extended_g_vectors, g_vector_step, pos, ClassicalSeed, CommPoly, ExchangeData, MutationWord};
use crate::error::{Error, Result};
use crate::qscalar::{HalfInt, QLaurent, QPowerDisplay};
use crate::seed::{CompatiblePair, QuantumSeed};
use crate::torus::{dot, ExpVec, SkewForm, TorusElement};

/// The form `ω_ij = d_i b_ij` of the Z-torus.
pub fn z_form(b0: &ExchangeData) -> SkewForm {
    let n = b0.n();
    let rows = (0..n)
        .map(|i| (0..n).map(|j| b0.d()[i] * b0.get(i, j)).collect())
        .collect();
    SkewForm::new(rows).expect("skew-symmetrizable data gives a skew form")
}

/// A quantum F-polynomial together with the exchange data fixing its
/// multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QFPoly {
    b0: Arc<ExchangeData>,
    inner: TorusElement,
}

impl QFPoly {
    /// Wraps a Z-torus element, rejecting negative exponents.
    pub fn from_element(b0: &Arc<ExchangeData>, inner: TorusElement) -> Result<Self> {
        if let Some(a) = inner.terms().keys().find(|a| a.iter().any(|&x| x < 0)) {
            return Err(Error::NegativeExponent(a.clone()));
        }
        Ok(QFPoly { b0: b0.clone(), inner })
    }

    pub fn from_terms(b0: &Arc<ExchangeData>, terms: impl IntoIterator<Item = (ExpVec, QLaurent)>) -> Result<Self> {
        let form = Arc::new(z_form(b0));
        Self::from_element(b0, TorusElement::from_terms(&form, terms)?)
    }

    pub fn one(b0: &Arc<ExchangeData>) -> Self {
        let form = Arc::new(z_form(b0));
        QFPoly {
            b0: b0.clone(),
            inner: TorusElement::one(&form),
        }
    }

    pub fn exchange(&self) -> &Arc<ExchangeData> {
        &self.b0
    }

    pub fn n(&self) -> usize {
        self.b0.n()
    }

    pub fn terms(&self) -> &BTreeMap<ExpVec, QLaurent> {
        self.inner.terms()
    }

    pub fn coefficient(&self, a: &[i64]) -> QLaurent {
        self.inner.coefficient(a)
    }

    /// The underlying element of the Z-torus.
    pub fn element(&self) -> &TorusElement {
        &self.inner
    }

    pub fn is_one(&self) -> bool {
        self.inner == TorusElement::one(self.inner.form())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(QFPoly {
            b0: self.b0.clone(),
            inner: self.inner.mul(&other.inner)?,
        })
    }

    /// `L[a]`: multiplies the coefficient of `Z^b` by `q^{-½ Σ a_i b_i d_i}`.
    pub fn l_apply(&self, a: &[i64]) -> Self {
        let d = self.b0.d();
        let terms = self.inner.terms().iter().map(|(b, c)| {
            let twice: i64 = -(0..b.len()).map(|i| a[i] * b[i] * d[i]).sum::<i64>();
            (b.clone(), c.shift(HalfInt::from_twice(twice)))
        });
        QFPoly {
            b0: self.b0.clone(),
            inner: TorusElement::from_terms(self.inner.form(), terms).expect("same rank"),
        }
    }

    /// The twist `F'` with `M₀(a) F(Ŷ) = F'(Ŷ) M₀(a)`, which is `L[2a]`.
    pub fn push_past(&self, a: &[i64]) -> Self {
        let doubled: Vec<i64> = a.iter().map(|x| 2 * x).collect();
        self.l_apply(&doubled)
    }

    /// The right F-polynomial: bar applied to every coefficient.
    pub fn right(&self) -> Self {
        QFPoly {
            b0: self.b0.clone(),
            inner: self.inner.bar(),
        }
    }

    /// Specialization `q = 1`, `Z_i = u_i`.
    pub fn eval_one(&self) -> CommPoly {
        CommPoly::from_terms(self.n(), self.inner.eval_one())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: QFPolyJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::InvalidInput(format!("qfpoly: {e}")))?;
        let b0 = Arc::new(ExchangeData::new(raw.b0, raw.d)?);
        Self::from_terms(&b0, raw.terms.into_iter().map(|t| (t.a, t.coeff)))
    }
}

/// `L[a]` as a free function.
pub fn l_apply(a: &[i64], f: &QFPoly) -> QFPoly {
    f.l_apply(a)
}

/// The right F-polynomial `F̄`, satisfying `X = M₀(g) F̄(Ŷ)`.
pub fn right_fpoly(f: &QFPoly) -> QFPoly {
    f.right()
}

#[derive(Serialize, Deserialize)]
struct QFPolyTerm {
    a: ExpVec,
    coeff: QLaurent,
}

#[derive(Serialize, Deserialize)]
struct QFPolyJson {
    b0: Vec<Vec<i64>>,
    d: Vec<i64>,
    terms: Vec<QFPolyTerm>,
}

impl Serialize for QFPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QFPolyJson {
            b0: self.b0.principal_part(),
            d: self.b0.d().to_vec(),
            terms: self
                .terms()
                .iter()
                .map(|(a, c)| QFPolyTerm {
                    a: a.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl fmt::Display for QFPoly {
    /// Terms in decreasing lexicographic order, e.g. `qZ^{(1,1)} + qZ^{(1,0)} + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms().is_empty() {
            return write!(f, "0");
        }
        for (i, (a, c)) in self.terms().iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let constant = a.iter().all(|&x| x == 0);
            let coeff = match c.as_q_power() {
                Some(h) if h.is_zero() => String::new(),
                Some(h) => QPowerDisplay(h).to_string(),
                None => format!("({c})"),
            };
            if constant {
                if coeff.is_empty() {
                    write!(f, "1")?;
                } else {
                    write!(f, "{coeff}")?;
                }
            } else {
                let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
                write!(f, "{coeff}Z^{{({})}}", parts.join(","))?;
            }
        }
        Ok(())
    }
}

/// `F(Ŷ)`: each `Z^a` becomes the basis monomial `X^{B̃⁰a}` of the torus of
/// `Λ₀`.
pub fn substitute_yhat(f: &QFPoly, btilde0: &ExchangeData, torus: &Arc<SkewForm>) -> Result<TorusElement> {
    let (m, n) = (btilde0.m(), btilde0.n());
    if n != f.n() || torus.rank() != m {
        return Err(Error::RankMismatch("F-polynomial, exchange matrix and torus disagree".into()));
    }
    let terms = f.terms().iter().map(|(a, c)| {
        let e: ExpVec = (0..m).map(|i| dot(&btilde0.rows()[i], a)).collect();
        (e, c.clone())
    });
    TorusElement::from_terms(torus, terms)
}

/// Reads `F_{j;t}` off `X_{j;t}` in a principal quantization: `F(Ŷ) = X·M₀(-g)`.
pub fn extract_from_seed(seed: &QuantumSeed, b0: &Arc<ExchangeData>, g: &[i64], j: usize) -> Result<QFPoly> {
    let n = b0.n();
    if !seed.initial_pair().exchange().is_principal() {
        return Err(Error::InvalidInput("extraction requires a principal quantization".into()));
    }
    let mut neg_g: ExpVec = g.iter().map(|x| -x).collect();
    neg_g.resize(2 * n, 0);
    let fy = seed.cluster()[j].mul(&TorusElement::basis(seed.torus(), neg_g))?;
    let mut terms = Vec::with_capacity(fy.len());
    for (e, c) in fy.terms() {
        let a = e[n..].to_vec();
        let top: Vec<i64> = (0..n).map(|i| dot(&b0.rows()[i], &a)).collect();
        if top != e[..n] {
            return Err(Error::NotInColumnSpan(e.clone()));
        }
        if a.iter().any(|&x| x < 0) {
            return Err(Error::NegativeExponent(a));
        }
        terms.push((a, c.clone()));
    }
    QFPoly::from_terms(b0, terms)
}

/// A second form used to witness independence of the choice of `Λ`.
pub fn alternate_lambda(lam: &SkewForm) -> SkewForm {
    let n = lam.rank();
    let alt = SkewForm::new(
        (0..n)
            .map(|i| (0..n).map(|j| (j as i64 - i as i64).signum()).collect())
            .collect(),
    )
    .expect("skew by construction");
    if *lam == alt {
        SkewForm::zero(n)
    } else {
        alt
    }
}

/// `F_{j;t}` and `g_{j;t}` for the path `word` from the initial matrix `b0`
/// (its principal part is used), computed through the principal quantization
/// built from `lam`.
///
/// The result is checked against the classical recurrence at `q = 1` and
/// against the extraction for a second choice of `Λ`.
pub fn extract_qfpoly(b0: &ExchangeData, lam: &SkewForm, word: &MutationWord, j: usize) -> Result<(QFPoly, Vec<i64>)> {
    let b0 = Arc::new(b0.square());
    b0.check_direction(j)?;
    let classical = ClassicalSeed::along(&b0, word)?;
    let g = classical.g[j].clone();
    let run = |lam: &SkewForm| -> Result<QFPoly> {
        let seed = QuantumSeed::initial(CompatiblePair::principal(&b0, lam)?).along(word)?;
        extract_from_seed(&seed, &b0, &g, j)
    };
    let f = run(lam)?;
    if f.eval_one() != classical.f[j] {
        return Err(Error::RouteMismatch(format!(
            "q=1 specialization {} differs from classical F-polynomial {}",
            f.eval_one(),
            classical.f[j]
        )));
    }
    let other = run(&alternate_lambda(lam))?;
    if other != f {
        return Err(Error::RouteMismatch("F-polynomial depends on the choice of lambda".into()));
    }
    Ok((f, g))
}

/// Checks `P_a(q^{1/2}) = q^{-g·a·d} P_a(q^{-1/2})` for every coefficient, and
/// that pure powers of `q` sit at exponent `-(g·a·d)/2`.
pub fn coefficient_symmetry_check(f: &QFPoly, g: &[i64], d: &[i64]) -> bool {
    f.terms().iter().all(|(a, p)| {
        let gad: i64 = (0..a.len()).map(|i| g[i] * a[i] * d[i]).sum();
        if *p != p.bar().shift(HalfInt::from_int(-gad)) {
            return false;
        }
        match p.as_q_power() {
            Some(h) => h.twice() == -gad,
            None => true,
        }
    })
}

/// `ρ^t_ij = Λ_t(e_i, e_j) - Λ₀(g̃_i, g̃_j)` for the principal quantization.
/// Integral by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoTable {
    pub values: Vec<Vec<i64>>,
}

impl RhoTable {
    pub fn zero(m: usize) -> Self {
        RhoTable {
            values: vec![vec![0; m]; m],
        }
    }

    fn definitional(lambda_t: &SkewForm, lambda0: &SkewForm, g: &[Vec<i64>]) -> Self {
        let m = lambda_t.rank();
        let n = g.len();
        let lift = |i: usize| -> ExpVec {
            if i < n {
                let mut v = g[i].clone();
                v.resize(m, 0);
                v
            } else {
                crate::torus::unit_vec(m, i)
            }
        };
        let lifted: Vec<ExpVec> = (0..m).map(lift).collect();
        let values = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| lambda_t.get(i, j) - lambda0.eval(&lifted[i], &lifted[j]))
                    .collect()
            })
            .collect();
        RhoTable { values }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|r| r.iter().all(|&x| x == 0))
    }
}

/// Everything the recurrence needs at one vertex: the F-polynomials, the
/// g-vectors, the principal pair `(Λ_t, B^{•,t})` and the ρ table.
#[derive(Clone, Debug)]
pub struct RecurrenceState {
    b0: Arc<ExchangeData>,
    lambda0: SkewForm,
    initial_columns: Vec<Vec<i64>>,
    pub pair: CompatiblePair,
    pub f: Vec<QFPoly>,
    pub g: Vec<Vec<i64>>,
    pub rho: RhoTable,
    pub word: MutationWord,
}

impl RecurrenceState {
    pub fn initial(b0: &ExchangeData, lam: &SkewForm) -> Result<Self> {
        let b0 = Arc::new(b0.square());
        let pair = CompatiblePair::principal(&b0, lam)?;
        let n = b0.n();
        let initial_columns = (0..n).map(|j| pair.exchange().column(j)).collect();
        Ok(RecurrenceState {
            lambda0: pair.lambda().clone(),
            initial_columns,
            f: vec![QFPoly::one(&b0); n],
            g: (0..n).map(|i| crate::torus::unit_vec(n, i)).collect(),
            rho: RhoTable::zero(2 * n),
            word: MutationWord::empty(),
            pair,
            b0,
        })
    }

    pub fn exchange(&self) -> &Arc<ExchangeData> {
        &self.b0
    }

    fn n(&self) -> usize {
        self.b0.n()
    }

    /// `ρ^ε` for direction `k`, doubled.
    fn rho_eps_twice(&self, k: usize, eps: i64) -> i64 {
        let n = self.n();
        let b = self.pair.exchange();
        let r = &self.rho.values;
        let c = |i: usize| pos(eps * b.get(i, k));
        let mut s = 0;
        for i in 0..2 * n {
            s -= c(i) * r[i][k];
        }
        for i in 0..n {
            for j in i + 1..n {
                s += c(i) * c(j) * r[j][i];
            }
        }
        for i in 0..n {
            for j in 0..n {
                s += c(i) * c(n + j) * r[n + j][i];
            }
        }
        s
    }

    /// `F_{k;t'}` from the data at `t`.
    pub fn next_fpoly(&self, k: usize, g_next: &[i64]) -> Result<QFPoly> {
        let n = self.n();
        let b = self.pair.exchange();
        let d = self.b0.d();
        let zform = self.f[0].element().form().clone();
        let mut numerator = TorusElement::zero(&zform);
        for eps in [1i64, -1] {
            let mut product = QFPoly::one(&self.b0);
            for j in 0..n {
                let r = pos(eps * b.get(j, k));
                if j == k || r == 0 {
                    continue;
                }
                let mut gj = QFPoly::one(&self.b0);
                for i in 0..r {
                    let shift: Vec<i64> = self.g[j].iter().map(|x| x * i).collect();
                    gj = gj.mul(&self.f[j].push_past(&shift))?;
                }
                let mut outer: Vec<i64> = self.g[k].iter().map(|x| -x).collect();
                for i in 0..j {
                    let c = pos(eps * b.get(i, k));
                    for (o, x) in outer.iter_mut().zip(&self.g[i]) {
                        *o += c * x;
                    }
                }
                product = product.mul(&gj.push_past(&outer))?;
            }
            let mono: ExpVec = (0..n).map(|l| pos(eps * b.get(n + l, k))).collect();
            let lambda_twice: i64 = (0..n).map(|i| pos(eps * b.get(n + i, k)) * g_next[i] * d[i]).sum();
            let shift = HalfInt::from_twice(self.rho_eps_twice(k, eps) - lambda_twice);
            let term = product
                .element()
                .mul(&TorusElement::basis(&zform, mono))?
                .shift(shift);
            numerator = numerator.add(&term)?;
        }
        let neg_gk: Vec<i64> = self.g[k].iter().map(|x| -x).collect();
        let divisor = self.f[k].push_past(&neg_gk);
        let quotient = TorusElement::exact_left_divide(divisor.element(), &numerator)?;
        QFPoly::from_element(&self.b0, quotient)
    }

    /// The ρ-table recurrence, used as a cross-check on the definitional table.
    fn rho_recurrence(&self, k: usize) -> Vec<i64> {
        let n = self.n();
        let m = 2 * n;
        let b = self.pair.exchange();
        let d = self.b0.d();
        let r = &self.rho.values;
        (0..m)
            .map(|i| {
                if i == k {
                    return 0;
                }
                let mut v = -r[i][k];
                for l in 0..m {
                    v += pos(-b.get(l, k)) * r[i][l];
                }
                if i < n {
                    for l in 0..n {
                        v -= pos(-b.get(l + n, k)) * self.g[i][l] * d[l];
                    }
                }
                v
            })
            .collect()
    }

    pub fn mutate(&self, k: usize) -> Result<Self> {
        self.b0.check_direction(k)?;
        let g_next = g_vector_step(self.pair.exchange(), &self.g, &self.initial_columns, k)?;
        let fk = self.next_fpoly(k, &g_next)?;
        let pair = self.pair.mutate(k)?;
        let mut g = self.g.clone();
        g[k] = g_next;
        let rho = RhoTable::definitional(pair.lambda(), &self.lambda0, &g);
        let column = self.rho_recurrence(k);
        for (i, expected) in column.iter().enumerate() {
            if rho.values[i][k] != *expected {
                return Err(Error::RouteMismatch(format!(
                    "rho recurrence disagrees with its definition at ({}, {})",
                    i + 1,
                    k + 1
                )));
            }
        }
        let mut f = self.f.clone();
        f[k] = fk;
        Ok(RecurrenceState {
            b0: self.b0.clone(),
            lambda0: self.lambda0.clone(),
            initial_columns: self.initial_columns.clone(),
            pair,
            f,
            g,
            rho,
            word: self.word.pushed(k),
        })
    }

    pub fn along(&self, word: &MutationWord) -> Result<Self> {
        let mut s = self.clone();
        for &k in word.directions() {
            s = s.mutate(k)?;
        }
        Ok(s)
    }
}

/// One recurrence step: `F_{k;t'}` from the state at `t`.
pub fn qfpoly_mutate(state: &RecurrenceState, k: usize) -> Result<QFPoly> {
    Ok(state.mutate(k)?.f[k].clone())
}

/// Compares `X_{j;t}` in the quantization `(Λ₀, B̃⁰)` with
/// `F_{j;t}(Ŷ) M₀(g̃_{j;t})` and returns `λ` with `X = q^λ F(Ŷ) M₀(g̃)`.
pub fn verify_general_coefficients(
    btilde0: &ExchangeData,
    lambda0: &SkewForm,
    word: &MutationWord,
    j: usize,
) -> Result<HalfInt> {
    btilde0.check_direction(j)?;
    Ok(general_coefficient_shifts(btilde0, lambda0, word)?[j])
}

/// [`verify_general_coefficients`] for every index at once.
pub fn general_coefficient_shifts(
    btilde0: &ExchangeData,
    lambda0: &SkewForm,
    word: &MutationWord,
) -> Result<Vec<HalfInt>> {
    let pair = CompatiblePair::new(lambda0.clone(), btilde0.clone())?;
    let seed = QuantumSeed::initial(pair).along(word)?;
    let b0 = Arc::new(btilde0.square());
    let classical = ClassicalSeed::along(&b0, word)?;
    let principal_seed = QuantumSeed::initial(CompatiblePair::principal(&b0, &SkewForm::zero(b0.n()))?).along(word)?;
    let extended = extended_g_vectors(btilde0, word)?;
    let constant_terms_nonzero = constant_terms_along(&b0, word)?;
    (0..b0.n())
        .map(|j| {
            let f = extract_from_seed(&principal_seed, &b0, &classical.g[j], j)?;
            let y = substitute_yhat(&f, btilde0, seed.torus())?
                .mul(&TorusElement::basis(seed.torus(), extended[j].clone()))?;
            let lambda = proportionality(&seed.cluster()[j], &y)?;
            if constant_terms_nonzero && !lambda.is_zero() {
                return Err(Error::RouteMismatch(format!(
                    "lambda = {lambda} for index {} although every classical F-polynomial has a nonzero constant term",
                    j + 1
                )));
            }
            Ok(lambda)
        })
        .collect()
}

/// Whether every classical F-polynomial met along `word` has nonzero
/// constant term.
fn constant_terms_along(b0: &ExchangeData, word: &MutationWord) -> Result<bool> {
    let mut s = ClassicalSeed::initial(b0);
    for &k in word.directions() {
        s = s.mutate(k)?;
        if s.f.iter().any(|p| p.constant_term() == BigInt::from(0)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Finds `h` with `x = q^h y`.
fn proportionality(x: &TorusElement, y: &TorusElement) -> Result<HalfInt> {
    if x.terms().len() != y.terms().len() || x.is_zero() {
        return Err(Error::NotProportional("supports differ".into()));
    }
    let mut found: Option<HalfInt> = None;
    for ((ex, cx), (ey, cy)) in x.terms().iter().zip(y.terms()) {
        if ex != ey {
            return Err(Error::NotProportional(format!("exponent {ex:?} vs {ey:?}")));
        }
        let h = cx
            .div_exact(cy)
            .and_then(|r| r.as_q_power())
            .ok_or_else(|| Error::NotProportional(format!("coefficient ratio at {ex:?}")))?;
        match found {
            Some(prev) if prev != h => return Err(Error::NotProportional("ratio is not constant".into())),
            _ => found = Some(h),
        }
    }
    Ok(found.expect("nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Arc<ExchangeData> {
        Arc::new(ExchangeData::new(vec![vec![0, 1], vec![-1, 0]], vec![2, 2]).unwrap())
    }

    fn q(twice: i64) -> QLaurent {
        QLaurent::q_power(HalfInt::from_twice(twice))
    }

    fn poly(b0: &Arc<ExchangeData>, terms: &[(&[i64], i64)]) -> QFPoly {
        QFPoly::from_terms(b0, terms.iter().map(|(a, t)| (a.to_vec(), q(*t)))).unwrap()
    }

    fn word(v: &[usize]) -> MutationWord {
        MutationWord::from_one_based(v, 2).unwrap()
    }

    #[test]
    fn extraction_on_a2() {
        let b = a2();
        let zero = SkewForm::zero(2);
        let (f, g) = extract_qfpoly(&b, &zero, &word(&[2, 1]), 0).unwrap();
        assert_eq!(f, poly(&b, &[(&[1, 1], 2), (&[1, 0], 2), (&[0, 0], 0)]));
        assert_eq!(g, vec![-1, 0]);
        assert_eq!(f.to_string(), "qZ^{(1,1)} + qZ^{(1,0)} + 1");
        let (f, g) = extract_qfpoly(&b, &zero, &word(&[1, 2, 2, 1]), 1).unwrap();
        assert!(f.is_one());
        assert_eq!(g, vec![0, 1]);
        for k in 1..=2 {
            let (f, _) = extract_qfpoly(&b, &zero, &word(&[k]), k - 1).unwrap();
            let mut e = vec![0, 0];
            e[k - 1] = 1;
            assert_eq!(f, poly(&b, &[(&e, 2), (&[0, 0], 0)]));
        }
    }

    #[test]
    fn recurrence_reproduces_a2_steps() {
        let b = a2();
        let mut s = RecurrenceState::initial(&b, &SkewForm::zero(2)).unwrap();
        let expected = [
            (1usize, poly(&b, &[(&[0, 1], 2), (&[0, 0], 0)])),
            (0, poly(&b, &[(&[1, 1], 2), (&[1, 0], 2), (&[0, 0], 0)])),
            (1, poly(&b, &[(&[1, 0], 2), (&[0, 0], 0)])),
            (0, QFPoly::one(&b)),
            (1, QFPoly::one(&b)),
        ];
        for (k, f) in expected {
            s = s.mutate(k).unwrap();
            assert_eq!(s.f[k], f, "step {k}");
            assert!(s.rho.is_zero());
        }
    }

    #[test]
    fn l_operator_properties() {
        let b = a2();
        let f = poly(&b, &[(&[1, 1], 2), (&[1, 0], 2), (&[0, 0], 0)]);
        assert_eq!(f.l_apply(&[0, 0]), f);
        let z1 = poly(&b, &[(&[1, 0], 0)]);
        assert_eq!(z1.l_apply(&[1, 0]), poly(&b, &[(&[1, 0], -2)]));
        let (a, c) = ([1, -2], [0, 3]);
        assert_eq!(f.l_apply(&[1, 1]), f.l_apply(&a).l_apply(&c));
        let g = poly(&b, &[(&[0, 1], 2), (&[0, 0], 0)]);
        assert_eq!(f.mul(&g).unwrap().l_apply(&a), f.l_apply(&a).mul(&g.l_apply(&a)).unwrap());
    }

    #[test]
    fn l_operator_moves_monomials_past_substitutions() {
        let b = a2();
        let pair = CompatiblePair::principal(&b, &SkewForm::zero(2)).unwrap();
        let torus = Arc::new(pair.lambda().clone());
        let f = poly(&b, &[(&[1, 1], 2), (&[1, 0], 2), (&[0, 0], 0), (&[0, 2], -1)]);
        for a in [[1i64, 0], [0, 1], [-2, 3], [1, 1]] {
            let m0 = TorusElement::basis(&torus, vec![a[0], a[1], 0, 0]);
            let lhs = m0.mul(&substitute_yhat(&f, pair.exchange(), &torus).unwrap()).unwrap();
            let rhs = substitute_yhat(&f.push_past(&a), pair.exchange(), &torus)
                .unwrap()
                .mul(&m0)
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn substitution_examples() {
        let b = a2();
        let pair = CompatiblePair::principal(&b, &SkewForm::zero(2)).unwrap();
        let torus = Arc::new(pair.lambda().clone());
        let one = substitute_yhat(&QFPoly::one(&b), pair.exchange(), &torus).unwrap();
        assert_eq!(one, TorusElement::one(&torus));
        let z2 = poly(&b, &[(&[0, 1], 0)]);
        assert_eq!(
            substitute_yhat(&z2, pair.exchange(), &torus).unwrap(),
            TorusElement::basis(&torus, pair.exchange().column(1))
        );
        let f = poly(&b, &[(&[0, 1], 2), (&[0, 0], 0)]);
        let seed = QuantumSeed::initial(pair.clone()).mutate(1).unwrap();
        let x = substitute_yhat(&f, pair.exchange(), &torus)
            .unwrap()
            .mul(&TorusElement::basis(&torus, vec![0, -1, 0, 0]))
            .unwrap();
        assert_eq!(x, seed.cluster()[1]);
    }

    #[test]
    fn right_polynomial() {
        let b = a2();
        assert!(right_fpoly(&QFPoly::one(&b)).is_one());
        assert_eq!(
            right_fpoly(&poly(&b, &[(&[0, 1], 2), (&[0, 0], 0)])),
            poly(&b, &[(&[0, 1], -2), (&[0, 0], 0)])
        );
        let pair = CompatiblePair::principal(&b, &SkewForm::zero(2)).unwrap();
        let torus = Arc::new(pair.lambda().clone());
        let f = poly(&b, &[(&[1, 1], 2), (&[1, 0], 2), (&[0, 0], 0)]);
        let mg = TorusElement::basis(&torus, vec![-1, 0, 0, 0]);
        let left = substitute_yhat(&f, pair.exchange(), &torus).unwrap().mul(&mg).unwrap();
        let right = mg.mul(&substitute_yhat(&f.right(), pair.exchange(), &torus).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn symmetry_examples() {
        let b = a2();
        assert!(coefficient_symmetry_check(&QFPoly::one(&b), &[1, 0], b.d()));
        let f = poly(&b, &[(&[1, 0], 2), (&[0, 0], 0)]);
        assert!(coefficient_symmetry_check(&f, &[-1, 1], b.d()));
        assert!(!coefficient_symmetry_check(&f, &[1, 0], b.d()));
    }

    #[test]
    fn json_round_trip() {
        let b = a2();
        let f = poly(&b, &[(&[1, 1], 2), (&[1, 0], 2), (&[0, 0], 0)]);
        let v = f.to_json();
        assert_eq!(v["d"], serde_json::json!([2, 2]));
        assert_eq!(v["terms"][0]["a"], serde_json::json!([0, 0]));
        assert_eq!(QFPoly::from_json(&v).unwrap(), f);
    }

    #[test]
    fn general_coefficients_principal_and_empty() {
        let b = a2();
        let pair = CompatiblePair::principal(&b, &SkewForm::zero(2)).unwrap();
        for w in [&[][..], &[1], &[2, 1], &[1, 2, 1, 2]] {
            for j in 0..2 {
                let l = verify_general_coefficients(pair.exchange(), pair.lambda(), &word(w), j).unwrap();
                assert!(l.is_zero());
            }
        }
    }
}
