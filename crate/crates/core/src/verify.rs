//! Seeded random inputs and the property suites run by the CLI and the
//! acceptance tests.
//!
//! Every suite draws its inputs sequentially from one ChaCha stream, checks
//! them in parallel and reports counterexamples in trial order, so reports
//! are deterministic for a given seed.

use std::sync::Arc;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cluster::{extended_g_vectors, ClassicalSeed, ExchangeData, MutationWord};
use crate::error::{Error, Result};
use crate::fpoly::{
    coefficient_symmetry_check, extract_from_seed, extract_qfpoly, general_coefficient_shifts, QFPoly,
    RecurrenceState,
};
use crate::qscalar::{HalfInt, QLaurent};
use crate::seed::{check_compatible, principal_lambda, verify_yhat_step, CompatiblePair, QuantumSeed};
use crate::torus::SkewForm;
use crate::trees::{check_tree_against_engine, check_type_a, closed_subsets, type_a_chains, Quiver};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random skew-symmetrizable matrix with `d_i ∈ {1,2,3}`. Each pair gets a
/// multiplier `c ∈ [-range, range]` and `b_ij = c d_j / g`, `b_ji = -c d_i / g`
/// with `g = gcd(d_i, d_j)`.
pub fn random_skew_symmetrizable<R: Rng>(rng: &mut R, n: usize, range: i64) -> ExchangeData {
    let d: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    let mut b = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let c = rng.gen_range(-range..=range);
            let g = d[i].gcd(&d[j]);
            b[i][j] = c * d[j] / g;
            b[j][i] = -c * d[i] / g;
        }
    }
    ExchangeData::new(b, d).expect("symmetrizable by construction")
}

/// Random skew-symmetric matrix with entries in `[-range, range]`, `D = I`.
pub fn random_skew_symmetric<R: Rng>(rng: &mut R, n: usize, range: i64) -> ExchangeData {
    let form = random_skew_form(rng, n, range);
    ExchangeData::new(form.rows(), vec![1; n]).expect("skew-symmetric")
}

pub fn random_skew_form<R: Rng>(rng: &mut R, n: usize, range: i64) -> SkewForm {
    let mut rows = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let c = rng.gen_range(-range..=range);
            rows[i][j] = c;
            rows[j][i] = -c;
        }
    }
    SkewForm::new(rows).expect("skew by construction")
}

/// Word of uniformly random length in `[1, max_len]` with uniform letters.
pub fn random_word<R: Rng>(rng: &mut R, n: usize, max_len: usize) -> MutationWord {
    let len = rng.gen_range(1..=max_len.max(1));
    MutationWord::new((0..len).map(|_| rng.gen_range(0..n)).collect())
}

/// The linear type-A matrix mutated in `steps` random directions.
pub fn random_type_a_quiver<R: Rng>(rng: &mut R, n: usize, steps: usize) -> Quiver {
    let mut b = vec![vec![0; n]; n];
    for i in 0..n.saturating_sub(1) {
        b[i][i + 1] = 1;
        b[i + 1][i] = -1;
    }
    let mut ex = ExchangeData::new(b, vec![1; n]).expect("linear type A");
    for _ in 0..steps {
        ex = ex.mutate(rng.gen_range(0..n)).expect("direction in range");
    }
    Quiver::from_matrix(ex.rows()).expect("mutation keeps skew-symmetry")
}

/// A compatible pair for `B̃ = [B⁰; I; R]`.
///
/// `B̃ = P [B̃_p; 0]` with `P = [[I,0,0],[0,I,0],[0,R,I]]` and `B̃_p` principal,
/// so `Λ = P^{-T} diag(Λ_p, Y) P^{-1}` satisfies `B̃ᵀΛ = (D | 0)` whenever
/// `Λ_p` is compatible with `B̃_p`.
pub fn frozen_extension(b0: &ExchangeData, lam: &SkewForm, frozen: &[Vec<i64>], y: &SkewForm) -> Result<CompatiblePair> {
    let b0 = b0.square();
    let n = b0.n();
    let r = frozen.len();
    if y.rank() != r || frozen.iter().any(|row| row.len() != n) {
        return Err(Error::RankMismatch("frozen rows and their form disagree".into()));
    }
    let lp = principal_lambda(&b0, lam)?;
    let m = 2 * n + r;
    let mut block = vec![vec![0i64; m]; m];
    for i in 0..2 * n {
        for j in 0..2 * n {
            block[i][j] = lp.get(i, j);
        }
    }
    for i in 0..r {
        for j in 0..r {
            block[2 * n + i][2 * n + j] = y.get(i, j);
        }
    }
    let mut pinv = vec![vec![0i64; m]; m];
    for (i, row) in pinv.iter_mut().enumerate() {
        row[i] = 1;
    }
    for i in 0..r {
        for j in 0..n {
            pinv[2 * n + i][n + j] = -frozen[i][j];
        }
    }
    let lambda: Vec<Vec<i64>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut s = 0;
                    for a in 0..m {
                        if pinv[a][i] == 0 {
                            continue;
                        }
                        for b in 0..m {
                            s += pinv[a][i] * block[a][b] * pinv[b][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect();
    let mut rows = b0.principal_extension().rows().to_vec();
    rows.extend(frozen.iter().cloned());
    let exchange = ExchangeData::new(rows, b0.d().to_vec())?;
    CompatiblePair::new(SkewForm::new(lambda)?, exchange)
}

/// A random compatible pair of rank `2n + r`.
pub fn random_compatible_pair<R: Rng>(rng: &mut R, n: usize, r: usize) -> CompatiblePair {
    let b0 = random_skew_symmetrizable(rng, n, 1);
    let lam = random_skew_form(rng, n, 2);
    let frozen: Vec<Vec<i64>> = (0..r).map(|_| (0..n).map(|_| rng.gen_range(-1..=1)).collect()).collect();
    let y = random_skew_form(rng, r, 2);
    frozen_extension(&b0, &lam, &frozen, &y).expect("compatible by construction")
}

/// One failing trial, with enough input to reproduce it.
#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub input: serde_json::Value,
    pub detail: String,
}

/// Outcome of one property suite.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub trials: usize,
    pub checks: usize,
    pub counterexamples: Vec<Counterexample>,
    /// Coefficient-symmetry checks performed on polynomials met by the suite.
    pub symmetry_checks: usize,
    pub symmetry_failures: Vec<Counterexample>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty() && self.symmetry_failures.is_empty()
    }

    fn collect(name: &str, outcomes: Vec<TrialOutcome>) -> Self {
        let mut report = SuiteReport {
            name: name.into(),
            trials: outcomes.len(),
            ..Default::default()
        };
        for (trial, o) in outcomes.into_iter().enumerate() {
            report.checks += o.checks;
            report.symmetry_checks += o.symmetry_checks;
            if let Some(detail) = o.failure {
                report.counterexamples.push(Counterexample {
                    trial,
                    input: o.input.clone(),
                    detail,
                });
            }
            if let Some(detail) = o.symmetry_failure {
                report.symmetry_failures.push(Counterexample {
                    trial,
                    input: o.input,
                    detail,
                });
            }
        }
        report
    }

    pub fn summary(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!(
            "{}: {status} ({} trials, {} checks, {} symmetry checks)",
            self.name, self.trials, self.checks, self.symmetry_checks
        );
        if let Some(c) = self.counterexamples.first().or(self.symmetry_failures.first()) {
            s.push_str(&format!("\n  first counterexample (trial {}): {}\n  input: {}", c.trial, c.detail, c.input));
        }
        s
    }
}

#[derive(Default)]
struct TrialOutcome {
    input: serde_json::Value,
    checks: usize,
    failure: Option<String>,
    symmetry_checks: usize,
    symmetry_failure: Option<String>,
}

impl TrialOutcome {
    fn new(input: serde_json::Value) -> Self {
        TrialOutcome {
            input,
            ..Default::default()
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(detail());
        }
    }

    fn symmetry(&mut self, f: &QFPoly, g: &[i64], d: &[i64]) {
        self.symmetry_checks += 1;
        if !coefficient_symmetry_check(f, g, d) && self.symmetry_failure.is_none() {
            self.symmetry_failure = Some(format!("symmetry fails for F = {f} with g = {g:?}"));
        }
    }

    fn fail(&mut self, e: Error) {
        if self.failure.is_none() {
            self.failure = Some(e.to_string());
        }
    }
}

fn exchange_json(b: &ExchangeData) -> serde_json::Value {
    serde_json::to_value(b).expect("serializable")
}

/// Budgets for the randomized suites.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub pair_trials: usize,
    pub corpus_size: usize,
    pub depth: usize,
    pub max_n: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 2024,
            pair_trials: 500,
            corpus_size: 100,
            depth: 6,
            max_n: 4,
        }
    }
}

/// A random skew-symmetric matrix and word.
#[derive(Clone, Debug)]
pub struct CorpusInstance {
    pub b0: ExchangeData,
    pub word: MutationWord,
}

impl CorpusInstance {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "b0": self.b0.rows(), "word": self.word })
    }
}

/// Random skew-symmetric `B⁰` with `2 ≤ n ≤ max_n`, entries in `[-2, 2]`,
/// and uniformly random words of length at most `depth`.
pub fn route_corpus(seed: u64, size: usize, max_n: usize, depth: usize) -> Vec<CorpusInstance> {
    let mut rng = rng(seed);
    (0..size)
        .map(|_| {
            let n = rng.gen_range(2..=max_n.max(2));
            let b0 = random_skew_symmetric(&mut rng, n, 2);
            let word = random_word(&mut rng, n, depth);
            CorpusInstance { b0, word }
        })
        .collect()
}

/// Per-instance results of walking a corpus word.
struct RouteOutcome {
    q1: TrialOutcome,
    route: TrialOutcome,
}

fn route_instance(inst: &CorpusInstance) -> RouteOutcome {
    let mut q1 = TrialOutcome::new(inst.to_json());
    let mut route = TrialOutcome::new(inst.to_json());
    let run = |q1: &mut TrialOutcome, route: &mut TrialOutcome| -> Result<()> {
        let b0 = Arc::new(inst.b0.clone());
        let n = b0.n();
        let mut seed = QuantumSeed::initial(CompatiblePair::principal(&b0, &SkewForm::zero(n))?);
        let mut classical = ClassicalSeed::initial(&b0);
        let mut state = RecurrenceState::initial(&b0, &SkewForm::zero(n))?;
        for (step, &k) in inst.word.directions().iter().enumerate() {
            seed = seed.mutate(k)?;
            classical = classical.mutate(k)?;
            let f = extract_from_seed(&seed, &b0, &classical.g[k], k)?;
            q1.check(f.eval_one() == classical.f[k], || {
                format!(
                    "step {}: quantum F at q=1 is {}, classical F is {}",
                    step + 1,
                    f.eval_one(),
                    classical.f[k]
                )
            });
            q1.symmetry(&f, &classical.g[k], b0.d());
            if b0.is_skew_symmetric() {
                q1.check(classical.f[k].constant_term() == 1.into(), || {
                    format!("step {}: classical F {} has constant term other than 1", step + 1, classical.f[k])
                });
            }
            match state.mutate(k) {
                Ok(next) => state = next,
                Err(e) => {
                    route.fail(e);
                    return Ok(());
                }
            }
            route.check(state.f[k] == f && state.g[k] == classical.g[k], || {
                format!("step {}: recurrence gives {}, extraction gives {}", step + 1, state.f[k], f)
            });
            route.symmetry(&state.f[k], &state.g[k], b0.d());
        }
        Ok(())
    };
    if let Err(e) = run(&mut q1, &mut route) {
        q1.fail(e.clone());
        route.fail(e);
    }
    RouteOutcome { q1, route }
}

/// Specialization at `q = 1` against the classical recurrence, and recurrence
/// against extraction, over one corpus.
pub fn route_suites(corpus: &[CorpusInstance]) -> (SuiteReport, SuiteReport) {
    let outcomes: Vec<RouteOutcome> = corpus.par_iter().map(route_instance).collect();
    let (q1, route): (Vec<_>, Vec<_>) = outcomes.into_iter().map(|o| (o.q1, o.route)).unzip();
    (
        SuiteReport::collect("q=1 specialization", q1),
        SuiteReport::collect("route equivalence", route),
    )
}

/// `F_k = q^{d_k/2} Z_k + 1` after one step, for every direction.
pub fn one_step_suite(seed: u64, trials: usize, max_n: usize) -> SuiteReport {
    let mut rng = rng(seed);
    let inputs: Vec<ExchangeData> = (0..trials)
        .map(|_| {
            let n = rng.gen_range(1..=max_n.max(1));
            random_skew_symmetrizable(&mut rng, n, 2)
        })
        .collect();
    let outcomes = inputs
        .par_iter()
        .map(|b0| {
            let mut o = TrialOutcome::new(exchange_json(b0));
            let b = Arc::new(b0.clone());
            let run = |o: &mut TrialOutcome| -> Result<()> {
                let root = RecurrenceState::initial(&b, &SkewForm::zero(b.n()))?;
                for k in 0..b.n() {
                    let mut e = vec![0; b.n()];
                    e[k] = 1;
                    let want = QFPoly::from_terms(
                        &b,
                        [
                            (e, QLaurent::q_power(HalfInt::from_twice(b.d()[k]))),
                            (vec![0; b.n()], QLaurent::one()),
                        ],
                    )?;
                    let (f, g) = extract_qfpoly(&b, &SkewForm::zero(b.n()), &MutationWord::new(vec![k]), k)?;
                    o.check(f == want, || format!("direction {}: extraction gives {f}", k + 1));
                    let rec = root.mutate(k)?;
                    o.check(rec.f[k] == want, || format!("direction {}: recurrence gives {}", k + 1, rec.f[k]));
                    o.symmetry(&f, &g, b.d());
                }
                Ok(())
            };
            if let Err(e) = run(&mut o) {
                o.fail(e);
            }
            o
        })
        .collect();
    SuiteReport::collect("one-step law", outcomes)
}

/// Extraction with `Λ = 0` and with a random `Λ` serialize identically.
pub fn lambda_independence_suite(corpus: &[CorpusInstance], seed: u64) -> SuiteReport {
    let mut rng = rng(seed);
    let forms: Vec<SkewForm> = corpus.iter().map(|c| random_skew_form(&mut rng, c.b0.n(), 3)).collect();
    let outcomes = corpus
        .par_iter()
        .zip(forms.par_iter())
        .map(|(inst, lam)| {
            let mut input = inst.to_json();
            input["lambda"] = serde_json::to_value(lam).expect("serializable");
            let mut o = TrialOutcome::new(input);
            let run = |o: &mut TrialOutcome| -> Result<()> {
                let b0 = Arc::new(inst.b0.clone());
                let n = b0.n();
                let mut zero = QuantumSeed::initial(CompatiblePair::principal(&b0, &SkewForm::zero(n))?);
                let mut other = QuantumSeed::initial(CompatiblePair::principal(&b0, lam)?);
                let mut classical = ClassicalSeed::initial(&b0);
                for (step, &k) in inst.word.directions().iter().enumerate() {
                    zero = zero.mutate(k)?;
                    other = other.mutate(k)?;
                    classical = classical.mutate(k)?;
                    let a = extract_from_seed(&zero, &b0, &classical.g[k], k)?;
                    let b = extract_from_seed(&other, &b0, &classical.g[k], k)?;
                    let (sa, sb) = (a.to_json().to_string(), b.to_json().to_string());
                    o.check(sa == sb, || format!("step {}: {sa} vs {sb}", step + 1));
                    o.symmetry(&b, &classical.g[k], b0.d());
                }
                Ok(())
            };
            if let Err(e) = run(&mut o) {
                o.fail(e);
            }
            o
        })
        .collect();
    SuiteReport::collect("lambda independence", outcomes)
}

/// Involutivity, sign independence, compatibility, bar-invariance,
/// quasi-commutation and divisibility on random compatible pairs.
pub fn structural_suite(seed: u64, trials: usize, max_n: usize) -> SuiteReport {
    let mut rng = rng(seed);
    let inputs: Vec<(CompatiblePair, MutationWord, usize)> = (0..trials)
        .map(|_| {
            let n = rng.gen_range(1..=max_n.clamp(1, 3));
            let r = rng.gen_range(0..=2);
            let pair = random_compatible_pair(&mut rng, n, r);
            let len = rng.gen_range(0..=3);
            let word = MutationWord::new((0..len).map(|_| rng.gen_range(0..n)).collect());
            let k = rng.gen_range(0..n);
            (pair, word, k)
        })
        .collect();
    let outcomes = inputs
        .par_iter()
        .map(|(pair, word, k)| {
            let input = serde_json::json!({
                "lambda": pair.lambda(),
                "btilde": pair.exchange(),
                "word": word,
                "k": k + 1,
            });
            let mut o = TrialOutcome::new(input);
            if let Err(e) = structural_trial(&mut o, pair, word, *k) {
                o.fail(e);
            }
            o
        })
        .collect();
    SuiteReport::collect("structural properties", outcomes)
}

fn structural_trial(o: &mut TrialOutcome, pair: &CompatiblePair, word: &MutationWord, k: usize) -> Result<()> {
    let mut seed = QuantumSeed::initial(pair.clone());
    let visit = |o: &mut TrialOutcome, s: &QuantumSeed| -> Result<()> {
        o.check(s.is_bar_invariant(), || format!("cluster at {} is not bar-invariant", s.word()));
        let qc = s.check_quasi_commutation()?;
        o.check(qc, || format!("quasi-commutation fails at {}", s.word()));
        let d = check_compatible(s.lambda(), s.exchange())?;
        o.check(d == pair.exchange().d(), || format!("symmetrizer changed at {}", s.word()));
        Ok(())
    };
    visit(o, &seed)?;
    for &j in word.directions() {
        seed = seed.mutate(j)?;
        visit(o, &seed)?;
    }
    let pt = seed.pair().clone();
    let ex = pt.exchange();
    o.check(ex.mutate(k)?.mutate(k)? == *ex, || "matrix mutation is not involutive".into());
    let mutated = pt.mutate(k)?;
    o.check(mutated.mutate(k)? == pt, || "pair mutation is not involutive".into());
    verify_yhat_step(&pt, k)?;
    o.checks += 1;
    let there = seed.mutate(k)?;
    visit(o, &there)?;
    o.check(there.mutate(k)?.same_state(&seed), || "seed mutation is not involutive".into());
    let square = ex.square();
    let b0 = pair.exchange().square();
    let classical = ClassicalSeed::along(&b0, word)?;
    o.check(classical.mutate(k)?.mutate(k)? == classical, || {
        "F, g or denominator recurrence is not involutive".into()
    });
    o.check(square == classical.principal.square(), || "classical matrix drifted".into());
    let back = word.pushed(k).pushed(k);
    o.check(
        extended_g_vectors(pair.exchange(), &back)? == extended_g_vectors(pair.exchange(), word)?,
        || "extended g-vector recurrence is not involutive".into(),
    );
    Ok(())
}

/// Closed forms on random type-A quivers against the engine.
pub fn type_a_suite(seed: u64, trials: usize, max_n: usize, d: i64) -> SuiteReport {
    let mut rng = rng(seed);
    let quivers: Vec<Quiver> = (0..trials)
        .map(|_| {
            let n = rng.gen_range(2..=max_n.max(2));
            random_type_a_quiver(&mut rng, n, 3 * n)
        })
        .collect();
    let outcomes = quivers
        .par_iter()
        .map(|q| {
            let mut o = TrialOutcome::new(q.to_json());
            let run = |o: &mut TrialOutcome| -> Result<()> {
                check_type_a(q)?;
                let chains = type_a_chains(q)?;
                let n = q.n();
                o.check(chains.len() == n * (n + 1) / 2, || format!("{} chains", chains.len()));
                for c in &chains {
                    match check_tree_against_engine(c, q, d, true) {
                        Ok(()) => o.checks += 1,
                        Err(e) => o.fail(e),
                    }
                    let f = crate::trees::tree_qfpoly(c, q, d)?;
                    let g = crate::trees::tree_gvector(c, q)?;
                    o.symmetry(&f, &g, &vec![d; n]);
                    for s in closed_subsets(c, q) {
                        o.check(s.vertices.len() - q.induced_edges(&s.vertices) as usize == s.components, || {
                            format!("component count of {:?}", s.vertices)
                        });
                    }
                }
                Ok(())
            };
            if let Err(e) = run(&mut o) {
                o.fail(e);
            }
            o
        })
        .collect();
    SuiteReport::collect("type A closed forms", outcomes)
}

/// All words of length at most `depth` without immediate repeats; a repeated
/// letter cancels, so these reach every seed the unrestricted words reach.
pub fn reduced_words(n: usize, depth: usize) -> Vec<MutationWord> {
    let mut out = vec![MutationWord::empty()];
    let mut frontier = vec![MutationWord::empty()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for w in &frontier {
            for k in 0..n {
                if w.directions().last() != Some(&k) {
                    next.push(w.pushed(k));
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// `λ = 0` for principal parts extended by random frozen rows with a
/// compatible `Λ₀`, over all words up to `depth`.
pub fn general_coefficients_suite(seed: u64, matrices: &[ExchangeData], depth: usize) -> SuiteReport {
    let mut rng = rng(seed);
    let mut inputs = Vec::new();
    for b0 in matrices {
        let n = b0.n();
        for r in 1..=2 {
            let frozen: Vec<Vec<i64>> = (0..r).map(|_| (0..n).map(|_| rng.gen_range(-1..=1)).collect()).collect();
            let lam = random_skew_form(&mut rng, n, 2);
            let y = random_skew_form(&mut rng, r, 2);
            let pair = frozen_extension(b0, &lam, &frozen, &y).expect("compatible by construction");
            let mut words = reduced_words(n, depth);
            words.shuffle(&mut rng);
            for w in words {
                inputs.push((pair.clone(), w));
            }
        }
    }
    let outcomes = inputs
        .par_iter()
        .map(|(pair, w)| {
            let input = serde_json::json!({ "lambda0": pair.lambda(), "btilde0": pair.exchange(), "word": w });
            let mut o = TrialOutcome::new(input);
            match general_coefficient_shifts(pair.exchange(), pair.lambda(), w) {
                Ok(shifts) => {
                    for (j, s) in shifts.iter().enumerate() {
                        o.check(s.is_zero(), || format!("lambda_{} = {s}", j + 1));
                    }
                }
                Err(e) => o.fail(e),
            }
            o
        })
        .collect();
    SuiteReport::collect("general coefficients", outcomes)
}

/// Every suite with the given budgets.
pub fn run_all(cfg: &VerifyConfig) -> Vec<SuiteReport> {
    let corpus = route_corpus(cfg.seed, cfg.corpus_size, cfg.max_n, cfg.depth);
    let (q1, route) = route_suites(&corpus);
    let lam_corpus: Vec<CorpusInstance> = corpus.iter().take(20.min(corpus.len())).cloned().collect();
    let a2 = ExchangeData::new(vec![vec![0, 1], vec![-1, 0]], vec![2, 2]).expect("valid");
    let a4 = ExchangeData::new(
        vec![vec![0, 1, -1, 0], vec![-1, 0, 1, 0], vec![1, -1, 0, -1], vec![0, 0, 1, 0]],
        vec![2, 2, 2, 2],
    )
    .expect("valid");
    vec![
        one_step_suite(cfg.seed.wrapping_add(1), 50, cfg.max_n + 1),
        q1,
        route,
        lambda_independence_suite(&lam_corpus, cfg.seed.wrapping_add(2)),
        structural_suite(cfg.seed.wrapping_add(3), cfg.pair_trials, cfg.max_n),
        type_a_suite(cfg.seed.wrapping_add(4), 20, 7, 2),
        general_coefficients_suite(cfg.seed.wrapping_add(5), &[a2, a4], 4.min(cfg.depth)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::check_compatible;

    #[test]
    fn generators_produce_valid_data() {
        let mut r = rng(7);
        for _ in 0..50 {
            let n = r.gen_range(1..=5);
            let b = random_skew_symmetrizable(&mut r, n, 2);
            assert_eq!(b.n(), n);
            let q = random_type_a_quiver(&mut r, n, 10);
            check_type_a(&q).unwrap();
            let pair = random_compatible_pair(&mut r, n.min(3), 2);
            check_compatible(pair.lambda(), pair.exchange()).unwrap();
        }
    }

    #[test]
    fn corpus_is_deterministic() {
        let a = route_corpus(5, 10, 4, 6);
        let b = route_corpus(5, 10, 4, 6);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.to_json(), y.to_json());
        }
    }

    #[test]
    fn reduced_word_counts() {
        assert_eq!(reduced_words(2, 4).len(), 1 + 2 + 2 + 2 + 2);
        assert_eq!(reduced_words(4, 4).len(), 1 + 4 + 12 + 36 + 108);
    }

    #[test]
    fn small_suites_pass() {
        assert!(one_step_suite(1, 5, 3).passed());
        let corpus = route_corpus(1, 5, 3, 4);
        let (a, b) = route_suites(&corpus);
        assert!(a.passed(), "{}", a.summary());
        assert!(b.passed(), "{}", b.summary());
        assert!(lambda_independence_suite(&corpus, 2).passed());
        let s = structural_suite(3, 10, 3);
        assert!(s.passed(), "{}", s.summary());
        assert!(type_a_suite(4, 2, 4, 2).passed());
    }

    #[test]
    fn counterexamples_are_reported_in_trial_order() {
        let outcomes = (0..3)
            .map(|i| {
                let mut o = TrialOutcome::new(serde_json::json!(i));
                o.check(i == 1, || format!("trial {i}"));
                o
            })
            .collect();
        let r = SuiteReport::collect("x", outcomes);
        assert_eq!(r.counterexamples.iter().map(|c| c.trial).collect::<Vec<_>>(), vec![0, 2]);
        assert!(r.summary().contains("first counterexample (trial 0)"));
    }
}
