//! Classical cluster combinatorics: exchange matrices and their mutation,
//! F-polynomials on commutative polynomials, g-vectors (ordinary and
//! extended) and denominator vectors.
//!
//! Nothing here touches the quantum torus, so these routines serve as an
//! independent oracle for the `q = 1` specialization of the quantum engine.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) fn pos(x: i64) -> i64 {
    x.max(0)
}

/// A path in the exchange tree, stored with 0-based directions.
///
/// The JSON and text forms use 1-based directions, e.g. `[2,1,2]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MutationWord(Vec<usize>);

impl MutationWord {
    pub fn new(directions: Vec<usize>) -> Self {
        MutationWord(directions)
    }

    pub fn empty() -> Self {
        MutationWord(Vec::new())
    }

    pub fn from_one_based(directions: &[usize], n: usize) -> Result<Self> {
        let mut out = Vec::with_capacity(directions.len());
        for &k in directions {
            if k == 0 || k > n {
                return Err(Error::BadDirection { k, n });
            }
            out.push(k - 1);
        }
        Ok(MutationWord(out))
    }

    /// Parses a comma separated list of 1-based directions such as `2,1,2`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let text = text.trim().trim_start_matches('[').trim_end_matches(']');
        if text.trim().is_empty() {
            return Ok(Self::empty());
        }
        let mut dirs = Vec::new();
        for part in text.split(',') {
            let k: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("word entry {part:?} is not a positive integer")))?;
            dirs.push(k);
        }
        Self::from_one_based(&dirs, n)
    }

    pub fn directions(&self) -> &[usize] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|k| k + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, k: usize) {
        self.0.push(k);
    }

    pub fn pushed(&self, k: usize) -> Self {
        let mut w = self.clone();
        w.push(k);
        w
    }

    /// Cancels adjacent repeated directions until none remain.
    pub fn reduced(&self) -> Self {
        let mut out: Vec<usize> = Vec::with_capacity(self.0.len());
        for &k in &self.0 {
            if out.last() == Some(&k) {
                out.pop();
            } else {
                out.push(k);
            }
        }
        MutationWord(out)
    }

    pub fn check(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|&&k| k >= n) {
            Some(&k) => Err(Error::BadDirection { k: k + 1, n }),
            None => Ok(()),
        }
    }
}

impl Serialize for MutationWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MutationWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<usize>::deserialize(d)?;
        if raw.contains(&0) {
            return Err(serde::de::Error::custom("word directions are 1-based"));
        }
        Ok(MutationWord(raw.into_iter().map(|k| k - 1).collect()))
    }
}

impl fmt::Display for MutationWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An `m × n` exchange matrix together with the diagonal of its
/// skew-symmetrizer `D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeData {
    btilde: Vec<Vec<i64>>,
    d: Vec<i64>,
}

impl ExchangeData {
    pub fn new(btilde: Vec<Vec<i64>>, d: Vec<i64>) -> Result<Self> {
        let n = d.len();
        if btilde.len() < n {
            return Err(Error::InvalidInput(format!(
                "btilde has {} rows but d has length {n}; need at least n rows",
                btilde.len()
            )));
        }
        for (i, row) in btilde.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInput(format!(
                    "btilde row {} has length {}, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
        }
        if let Some(j) = d.iter().position(|&x| x <= 0) {
            return Err(Error::InvalidInput(format!("d[{}] must be positive", j + 1)));
        }
        for i in 0..n {
            for j in i..n {
                if d[i] * btilde[i][j] != -d[j] * btilde[j][i] {
                    return Err(Error::NotSkewSymmetrizable { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(ExchangeData { btilde, d })
    }

    /// Builds from a matrix whose principal part is skew-symmetrizable,
    /// inferring the smallest symmetrizer.
    pub fn with_inferred_symmetrizer(btilde: Vec<Vec<i64>>) -> Result<Self> {
        let n = btilde.first().map_or(0, |r| r.len());
        if btilde.len() < n {
            return Err(Error::InvalidInput("btilde must have at least as many rows as columns".into()));
        }
        let principal: Vec<Vec<i64>> = btilde[..n].to_vec();
        let d = infer_symmetrizer(&principal)?;
        Self::new(btilde, d)
    }

    /// The `2n × n` matrix with principal part `b0` and identity bottom block.
    pub fn principal(b0: Vec<Vec<i64>>, d: Vec<i64>) -> Result<Self> {
        let n = d.len();
        if b0.len() != n {
            return Err(Error::InvalidInput(format!("b0 must be {n} x {n}")));
        }
        let mut rows = b0;
        for j in 0..n {
            let mut r = vec![0; n];
            r[j] = 1;
            rows.push(r);
        }
        Self::new(rows, d)
    }

    pub fn m(&self) -> usize {
        self.btilde.len()
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.btilde[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.btilde
    }

    pub fn d(&self) -> &[i64] {
        &self.d
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.btilde.iter().map(|r| r[j]).collect()
    }

    pub fn principal_part(&self) -> Vec<Vec<i64>> {
        self.btilde[..self.n()].to_vec()
    }

    /// The square exchange data `(B, D)` of the principal part.
    pub fn square(&self) -> ExchangeData {
        ExchangeData {
            btilde: self.principal_part(),
            d: self.d.clone(),
        }
    }

    /// The principal extension of this matrix's principal part.
    pub fn principal_extension(&self) -> ExchangeData {
        Self::principal(self.principal_part(), self.d.clone()).expect("principal part already validated")
    }

    pub fn is_principal(&self) -> bool {
        let n = self.n();
        self.m() == 2 * n && (0..n).all(|i| (0..n).all(|j| self.btilde[n + i][j] == i64::from(i == j)))
    }

    pub fn is_skew_symmetric(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| self.btilde[i][j] == -self.btilde[j][i]))
    }

    pub fn check_direction(&self, k: usize) -> Result<()> {
        if k < self.n() {
            Ok(())
        } else {
            Err(Error::BadDirection { k: k + 1, n: self.n() })
        }
    }

    /// Matrix mutation in the 0-based direction `k`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        self.check_direction(k)?;
        let (m, n) = (self.m(), self.n());
        let b = &self.btilde;
        let mut out = vec![vec![0; n]; m];
        for i in 0..m {
            for j in 0..n {
                out[i][j] = if i == k || j == k {
                    -b[i][j]
                } else {
                    b[i][j] + b[i][k].signum() * pos(b[i][k] * b[k][j])
                };
            }
        }
        Ok(ExchangeData {
            btilde: out,
            d: self.d.clone(),
        })
    }

    pub fn mutate_word(&self, word: &MutationWord) -> Result<Self> {
        let mut b = self.clone();
        for &k in word.directions() {
            b = b.mutate(k)?;
        }
        Ok(b)
    }
}

#[derive(Serialize, Deserialize)]
struct ExchangeJson {
    btilde: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<Vec<i64>>,
}

impl Serialize for ExchangeData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExchangeJson {
            btilde: self.btilde.clone(),
            d: Some(self.d.clone()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExchangeData {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = ExchangeJson::deserialize(de)?;
        let out = match raw.d {
            Some(d) => ExchangeData::new(raw.btilde, d),
            None => ExchangeData::with_inferred_symmetrizer(raw.btilde),
        };
        out.map_err(serde::de::Error::custom)
    }
}

/// The smallest positive integer vector `d` with `d_i b_ij = -d_j b_ji`.
pub fn infer_symmetrizer(b: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = b.len();
    for (i, row) in b.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidInput(format!("row {} of the principal part is not length {n}", i + 1)));
        }
    }
    // Ratios d_i = num_i / den_i relative to the first vertex of each component.
    let mut ratio: Vec<Option<(i64, i64)>> = vec![None; n];
    for root in 0..n {
        if ratio[root].is_some() {
            continue;
        }
        ratio[root] = Some((1, 1));
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            let (ni, di) = ratio[i].expect("visited");
            for j in 0..n {
                let (bij, bji) = (b[i][j], b[j][i]);
                if bij == 0 && bji == 0 {
                    continue;
                }
                if bij == 0 || bji == 0 || bij.signum() == bji.signum() {
                    return Err(Error::NotSkewSymmetrizable { i: i + 1, j: j + 1 });
                }
                // d_j = -d_i b_ij / b_ji
                let (mut nj, mut dj) = (-ni * bij, di * bji);
                if dj < 0 {
                    nj = -nj;
                    dj = -dj;
                }
                let g = nj.gcd(&dj);
                let (nj, dj) = (nj / g, dj / g);
                match ratio[j] {
                    None => {
                        ratio[j] = Some((nj, dj));
                        stack.push(j);
                    }
                    Some((a, c)) if a * dj != nj * c => {
                        return Err(Error::NotSkewSymmetrizable { i: i + 1, j: j + 1 });
                    }
                    Some(_) => {}
                }
            }
        }
    }
    // Scale each component to the smallest integer solution.
    let mut d = vec![0; n];
    let mut done = vec![false; n];
    for root in 0..n {
        if done[root] {
            continue;
        }
        let mut comp = vec![root];
        let mut k = 0;
        done[root] = true;
        while k < comp.len() {
            let i = comp[k];
            k += 1;
            for j in 0..n {
                if !done[j] && (b[i][j] != 0 || b[j][i] != 0) {
                    done[j] = true;
                    comp.push(j);
                }
            }
        }
        let l = comp.iter().fold(1i64, |acc, &i| acc.lcm(&ratio[i].expect("set").1));
        let vals: Vec<i64> = comp
            .iter()
            .map(|&i| {
                let (a, c) = ratio[i].expect("set");
                a * (l / c)
            })
            .collect();
        let g = vals.iter().fold(0i64, |acc, v| acc.gcd(v));
        for (&i, v) in comp.iter().zip(vals) {
            d[i] = v / g;
        }
    }
    Ok(d)
}

/// A polynomial in `u_1..u_n` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CommPoly {
    n: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl CommPoly {
    pub fn zero(n: usize) -> Self {
        CommPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(vec![0; n], BigInt::one())
    }

    pub fn monomial(exp: Vec<i64>, c: BigInt) -> Self {
        let n = exp.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        CommPoly { n, terms }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Vec<i64>, BigInt)>) -> Self {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            debug_assert_eq!(e.len(), n);
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&vec![0; self.n]).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, e: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (e, a) in &self.terms {
            for (f, b) in &other.terms {
                let key: Vec<i64> = e.iter().zip(f).map(|(x, y)| x + y).collect();
                out.add_term(key, a * b);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient in `Z[u_1..u_n]`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (dl, dc) = divisor.terms.iter().next_back().ok_or(Error::InexactDivision)?;
        let mut rem = self.clone();
        let mut quotient = Self::zero(self.n);
        while let Some((lead, c)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let qe: Vec<i64> = lead.iter().zip(dl).map(|(x, y)| x - y).collect();
            if qe.iter().any(|&x| x < 0) {
                return Err(Error::InexactDivision);
            }
            let (qc, r) = c.div_rem(dc);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            for (f, b) in &divisor.terms {
                let key: Vec<i64> = f.iter().zip(&qe).map(|(x, y)| x + y).collect();
                rem.add_term(key, -(b * &qc));
            }
            if rem.terms.contains_key(&lead) {
                return Err(Error::InexactDivision);
            }
            quotient.add_term(qe, qc);
        }
        Ok(quotient)
    }
}

impl fmt::Display for CommPoly {
    /// Terms in decreasing lexicographic exponent order, e.g. `u1*u2 + u1 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let abs = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p != 0)
                .map(|(i, &p)| if p == 1 { format!("u{}", i + 1) } else { format!("u{}^{p}", i + 1) })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// All classical data at one vertex of the exchange tree, for principal
/// coefficients over the initial matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalSeed {
    /// The mutated `2n × n` principal matrix.
    pub principal: ExchangeData,
    pub f: Vec<CommPoly>,
    pub g: Vec<Vec<i64>>,
    pub denominators: Vec<Vec<i64>>,
    initial_columns: Vec<Vec<i64>>,
}

impl ClassicalSeed {
    pub fn initial(b0: &ExchangeData) -> Self {
        let principal = b0.principal_extension();
        let n = b0.n();
        let initial_columns = (0..n).map(|j| principal.column(j)).collect();
        ClassicalSeed {
            principal,
            f: vec![CommPoly::one(n); n],
            g: (0..n).map(|i| crate::torus::unit_vec(n, i)).collect(),
            denominators: (0..n).map(|i| crate::torus::scale_vec(&crate::torus::unit_vec(n, i), -1)).collect(),
            initial_columns,
        }
    }

    pub fn n(&self) -> usize {
        self.principal.n()
    }

    pub fn mutate(&self, k: usize) -> Result<Self> {
        self.principal.check_direction(k)?;
        let n = self.n();
        let b = &self.principal;

        let branch = |sign: i64| {
            let mut p = CommPoly::one(n);
            for i in 0..n {
                let e = pos(sign * b.get(i, k));
                if e > 0 {
                    p = p.mul(&self.f[i].pow(e as u32));
                }
            }
            let mono: Vec<i64> = (0..n).map(|j| pos(sign * b.get(n + j, k))).collect();
            p.mul(&CommPoly::monomial(mono, BigInt::one()))
        };
        let numerator = branch(1).add(&branch(-1));
        let fk = numerator.div_exact(&self.f[k])?;

        let gk = self.next_g(k)?;

        let mut dk = vec![0; n];
        let mut plus = vec![0; n];
        let mut minus = vec![0; n];
        for i in 0..n {
            for c in 0..n {
                plus[c] += pos(b.get(i, k)) * self.denominators[i][c];
                minus[c] += pos(-b.get(i, k)) * self.denominators[i][c];
            }
        }
        for c in 0..n {
            dk[c] = -self.denominators[k][c] + plus[c].max(minus[c]);
        }

        let mut next = self.clone();
        next.principal = b.mutate(k)?;
        next.f[k] = fk;
        next.g[k] = gk;
        next.denominators[k] = dk;
        Ok(next)
    }

    fn next_g(&self, k: usize) -> Result<Vec<i64>> {
        g_vector_step(&self.principal, &self.g, &self.initial_columns, k)
    }

    pub fn along(b0: &ExchangeData, word: &MutationWord) -> Result<Self> {
        let mut s = Self::initial(b0);
        for &k in word.directions() {
            s = s.mutate(k)?;
        }
        Ok(s)
    }
}

/// One step of the g-vector recurrence, carried out in `Z^{2n}` for both
/// signs. `principal` is the mutated `2n × n` matrix at `t`, `g` the n-vectors
/// at `t` and `initial_columns` the columns of the initial principal matrix.
pub fn g_vector_step(
    principal: &ExchangeData,
    g: &[Vec<i64>],
    initial_columns: &[Vec<i64>],
    k: usize,
) -> Result<Vec<i64>> {
    let n = principal.n();
    let lift = |i: usize| -> Vec<i64> {
        if i < n {
            let mut v = g[i].clone();
            v.resize(2 * n, 0);
            v
        } else {
            crate::torus::unit_vec(2 * n, i)
        }
    };
    let mut results = Vec::with_capacity(2);
    for eps in [1i64, -1] {
        let mut v: Vec<i64> = lift(k).iter().map(|x| -x).collect();
        for i in 0..2 * n {
            let c = pos(eps * principal.get(i, k));
            if c != 0 {
                for (x, y) in v.iter_mut().zip(lift(i)) {
                    *x += c * y;
                }
            }
        }
        for j in 0..n {
            let c = pos(eps * principal.get(n + j, k));
            if c != 0 {
                for (x, y) in v.iter_mut().zip(&initial_columns[j]) {
                    *x -= c * y;
                }
            }
        }
        results.push(v);
    }
    if results[0] != results[1] {
        return Err(Error::EpsilonMismatch(format!(
            "g-vector step {}: {:?} vs {:?}",
            k + 1,
            results[0],
            results[1]
        )));
    }
    let v = results.swap_remove(0);
    if v[n..].iter().any(|&x| x != 0) {
        return Err(Error::EpsilonMismatch(format!(
            "g-vector step {} left coefficient coordinates {:?}",
            k + 1,
            &v[n..]
        )));
    }
    Ok(v[..n].to_vec())
}

/// F-polynomials `F_{1;t} .. F_{n;t}` at the end of `word`.
pub fn classical_f_polys(b0: &ExchangeData, word: &MutationWord) -> Result<Vec<CommPoly>> {
    Ok(ClassicalSeed::along(&b0.square(), word)?.f)
}

pub fn g_vectors(b0: &ExchangeData, word: &MutationWord) -> Result<Vec<Vec<i64>>> {
    Ok(ClassicalSeed::along(&b0.square(), word)?.g)
}

pub fn denominator_vectors(b0: &ExchangeData, word: &MutationWord) -> Result<Vec<Vec<i64>>> {
    Ok(ClassicalSeed::along(&b0.square(), word)?.denominators)
}

/// Extended g-vectors `g̃_{1;t} .. g̃_{m;t}` (length `m` each) for an arbitrary
/// `m × n` initial matrix.
pub fn extended_g_vectors(btilde: &ExchangeData, word: &MutationWord) -> Result<Vec<Vec<i64>>> {
    let (m, n) = (btilde.m(), btilde.n());
    word.check(n)?;
    let columns: Vec<Vec<i64>> = (0..n).map(|j| btilde.column(j)).collect();
    let mut g: Vec<Vec<i64>> = (0..m).map(|i| crate::torus::unit_vec(m, i)).collect();
    let mut bt = btilde.clone();
    let mut bp = btilde.principal_extension();
    for &k in word.directions() {
        let mut v: Vec<i64> = g[k].iter().map(|x| -x).collect();
        for i in 0..m {
            let c = pos(-bt.get(i, k));
            if c != 0 {
                for (x, y) in v.iter_mut().zip(&g[i]) {
                    *x += c * y;
                }
            }
        }
        for j in 0..n {
            let c = pos(-bp.get(n + j, k));
            if c != 0 {
                for (x, y) in v.iter_mut().zip(&columns[j]) {
                    *x -= c * y;
                }
            }
        }
        g[k] = v;
        bt = bt.mutate(k)?;
        bp = bp.mutate(k)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> ExchangeData {
        ExchangeData::new(vec![vec![0, 1], vec![-1, 0]], vec![2, 2]).unwrap()
    }

    fn word(v: &[usize]) -> MutationWord {
        MutationWord::from_one_based(v, 4).unwrap()
    }

    fn poly(n: usize, terms: &[(&[i64], i64)]) -> CommPoly {
        CommPoly::from_terms(n, terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c))))
    }

    #[test]
    fn matrix_mutation_matches_table_rows() {
        let b = a2().principal_extension();
        let t1 = b.mutate(1).unwrap();
        assert_eq!(t1.rows(), &[vec![0, -1], vec![1, 0], vec![1, 0], vec![0, -1]]);
        let t2 = t1.mutate(0).unwrap();
        assert_eq!(t2.rows(), &[vec![0, 1], vec![-1, 0], vec![-1, 0], vec![0, -1]]);
        assert_eq!(t2.mutate(0).unwrap(), t1);
        assert_eq!(b.mutate(5), Err(Error::BadDirection { k: 6, n: 2 }));
    }

    #[test]
    fn rejects_non_skew_symmetrizable() {
        assert_eq!(
            ExchangeData::new(vec![vec![0, 1], vec![1, 0]], vec![1, 1]),
            Err(Error::NotSkewSymmetrizable { i: 1, j: 2 })
        );
    }

    #[test]
    fn symmetrizer_inference() {
        assert_eq!(infer_symmetrizer(&[vec![0, 1], vec![-2, 0]]).unwrap(), vec![2, 1]);
        assert_eq!(infer_symmetrizer(&[vec![0, 2], vec![-1, 0]]).unwrap(), vec![1, 2]);
        assert_eq!(infer_symmetrizer(&[vec![0, 0], vec![0, 0]]).unwrap(), vec![1, 1]);
        assert_eq!(
            infer_symmetrizer(&[vec![0, 1, 0], vec![-3, 0, 3], vec![0, -1, 0]]).unwrap(),
            vec![3, 1, 3]
        );
        assert!(infer_symmetrizer(&[vec![0, 1], vec![0, 0]]).is_err());
        let parsed: ExchangeData = serde_json::from_str(r#"{"btilde":[[0,1],[-2,0],[1,0]]}"#).unwrap();
        assert_eq!(parsed.d(), &[2, 1]);
    }

    #[test]
    fn f_polynomials_a2() {
        let f = classical_f_polys(&a2(), &word(&[])).unwrap();
        assert!(f.iter().all(|p| *p == CommPoly::one(2)));
        let f = classical_f_polys(&a2(), &word(&[2, 1])).unwrap();
        assert_eq!(f[0], poly(2, &[(&[1, 1], 1), (&[1, 0], 1), (&[0, 0], 1)]));
        assert_eq!(f[0].to_string(), "u1*u2 + u1 + 1");
        for k in 1..=2 {
            let f = classical_f_polys(&a2(), &word(&[k])).unwrap();
            let mut e = vec![0, 0];
            e[k - 1] = 1;
            assert_eq!(f[k - 1], poly(2, &[(&e, 1), (&[0, 0], 1)]));
        }
    }

    #[test]
    fn g_vectors_a2() {
        assert_eq!(g_vectors(&a2(), &word(&[])).unwrap(), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(g_vectors(&a2(), &word(&[2, 1])).unwrap()[0], vec![-1, 0]);
        assert_eq!(g_vectors(&a2(), &word(&[2, 1, 2])).unwrap()[1], vec![-1, 1]);
    }

    #[test]
    fn extended_g_vectors_principal_and_square() {
        let p = a2().principal_extension();
        let g = extended_g_vectors(&p, &word(&[2, 1])).unwrap();
        assert_eq!(g[0], vec![-1, 0, 0, 0]);
        assert_eq!(g[2], vec![0, 0, 1, 0]);
        let b = a2();
        let w = word(&[1, 2, 1, 2, 2, 1]);
        assert_eq!(extended_g_vectors(&b, &w).unwrap(), g_vectors(&b, &w).unwrap());
    }

    #[test]
    fn denominators() {
        let a4 = ExchangeData::new(
            vec![vec![0, 1, -1, 0], vec![-1, 0, 1, 0], vec![1, -1, 0, -1], vec![0, 0, 1, 0]],
            vec![2; 4],
        )
        .unwrap();
        assert_eq!(denominator_vectors(&a4, &word(&[2, 3, 4])).unwrap()[3], vec![0, 1, 1, 1]);
        let d = denominator_vectors(&a4, &word(&[3])).unwrap();
        assert_eq!(d[2], vec![0, 0, 1, 0]);
        assert_eq!(d[0], vec![-1, 0, 0, 0]);
    }

    #[test]
    fn word_parsing_and_reduction() {
        let w = MutationWord::parse("2,1,1,2,3", 3).unwrap();
        assert_eq!(w.one_based(), vec![2, 1, 1, 2, 3]);
        assert_eq!(w.reduced().one_based(), vec![3]);
        assert_eq!(MutationWord::parse("", 3).unwrap(), MutationWord::empty());
        assert_eq!(MutationWord::parse("4", 3), Err(Error::BadDirection { k: 4, n: 3 }));
        assert_eq!(serde_json::to_string(&w).unwrap(), "[2,1,1,2,3]");
    }

    #[test]
    fn polynomial_division() {
        let a = poly(2, &[(&[1, 0], 1), (&[0, 0], 1)]);
        let b = poly(2, &[(&[1, 1], 2), (&[0, 1], -1), (&[0, 0], 3)]);
        assert_eq!(a.mul(&b).div_exact(&a).unwrap(), b);
        assert_eq!(b.div_exact(&a), Err(Error::InexactDivision));
    }
}
