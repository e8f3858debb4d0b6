//! Acceptance gate: one PASS/FAIL line per criterion, exact equality
//! throughout, wall-clock bounds where they apply.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use qfpoly::fpoly::{coefficient_symmetry_check, RecurrenceState, QFPoly};
use qfpoly::verify::{
    general_coefficients_suite, lambda_independence_suite, one_step_suite, route_corpus, route_suites,
    structural_suite, type_a_suite, SuiteReport,
};
use qfpoly::{table_a2, table_a4, ExchangeData, HalfInt, MutationWord, QLaurent, SkewForm};

const SEED: u64 = 2024;

struct Gate {
    results: Vec<bool>,
}

impl Gate {
    fn report(&mut self, id: usize, title: &str, ok: bool, elapsed: Duration, bound: Option<Duration>, detail: &str) {
        let in_time = bound.is_none_or(|b| elapsed < b);
        let pass = ok && in_time;
        let bound_text = bound.map(|b| format!(", bound {}s", b.as_secs())).unwrap_or_default();
        println!(
            "{} criterion {id}: {title} ({:.2}s{bound_text}){}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            if detail.is_empty() { String::new() } else { format!(" - {detail}") }
        );
        if ok && !in_time {
            println!("  exceeded the runtime bound");
        }
        self.results.push(pass);
    }
}

fn suite_detail(r: &SuiteReport) -> String {
    if r.passed() {
        format!("{} trials, {} checks", r.trials, r.checks)
    } else {
        r.summary()
    }
}

fn a2() -> ExchangeData {
    ExchangeData::new(vec![vec![0, 1], vec![-1, 0]], vec![2, 2]).unwrap()
}

fn a4() -> ExchangeData {
    ExchangeData::new(
        vec![vec![0, 1, -1, 0], vec![-1, 0, 1, 0], vec![1, -1, 0, -1], vec![0, 0, 1, 0]],
        vec![2, 2, 2, 2],
    )
    .unwrap()
}

fn worked_a2_steps() -> (bool, String) {
    let b = std::sync::Arc::new(a2());
    let poly = |terms: &[(&[i64], i64)]| {
        QFPoly::from_terms(&b, terms.iter().map(|(a, t)| (a.to_vec(), QLaurent::q_power(HalfInt::from_twice(*t)))))
            .unwrap()
    };
    let mut state = RecurrenceState::initial(&b, &SkewForm::zero(2)).unwrap();
    state = state.mutate(1).unwrap();
    let expected = [
        (0usize, poly(&[(&[1, 1], 2), (&[1, 0], 2), (&[0, 0], 0)])),
        (1, poly(&[(&[1, 0], 2), (&[0, 0], 0)])),
        (0, poly(&[(&[0, 0], 0)])),
        (1, poly(&[(&[0, 0], 0)])),
    ];
    for (step, (k, want)) in expected.into_iter().enumerate() {
        match state.mutate(k) {
            Ok(next) => state = next,
            Err(e) => return (false, format!("step {}: {e}", step + 1)),
        }
        if state.f[k] != want {
            return (false, format!("step {}: got {}, expected {want}", step + 1, state.f[k]));
        }
    }
    (true, "F_{1;t2}, F_{2;t3}, F_{1;t4}, F_{2;t5} reproduced".into())
}

fn main() -> ExitCode {
    let mut gate = Gate { results: Vec::new() };
    let mut symmetry_checks = 0usize;
    let mut symmetry_failures: Vec<String> = Vec::new();
    let absorb = |r: &SuiteReport, checks: &mut usize, fails: &mut Vec<String>| {
        *checks += r.symmetry_checks;
        fails.extend(r.symmetry_failures.iter().map(|c| format!("{}: {}", r.name, c.detail)));
    };

    let t = Instant::now();
    let a2_table = table_a2();
    let (ok, detail) = match &a2_table {
        Ok(r) => (r.passed(), format!("{}/{} rows matched", r.matched(), r.rows.len())),
        Err(e) => (false, e.to_string()),
    };
    gate.report(1, "A2 table reproduction", ok, t.elapsed(), Some(Duration::from_secs(1)), &detail);

    let t = Instant::now();
    let a4_table = table_a4();
    let (ok, detail) = match &a4_table {
        Ok(r) => (r.passed(), format!("{}/{} rows matched by all three routes", r.matched(), r.rows.len())),
        Err(e) => (false, e.to_string()),
    };
    gate.report(2, "A4 table reproduction", ok, t.elapsed(), Some(Duration::from_secs(10)), &detail);

    // Table polynomials enter the symmetry census.
    for b0 in [a2(), a4()] {
        let b = std::sync::Arc::new(b0.clone());
        let n = b.n();
        let words: Vec<MutationWord> = if n == 2 {
            (0..=5).map(|t| MutationWord::new([1, 0, 1, 0, 1][..t].to_vec())).collect()
        } else {
            qfpoly::type_a_chains(&qfpoly::Quiver::from_matrix(b0.rows()).unwrap())
                .unwrap()
                .iter()
                .map(|c| c.word())
                .collect()
        };
        let root = RecurrenceState::initial(&b, &SkewForm::zero(n)).unwrap();
        for w in words {
            let s = root.along(&w).unwrap();
            for j in 0..n {
                symmetry_checks += 1;
                if !coefficient_symmetry_check(&s.f[j], &s.g[j], b.d()) {
                    symmetry_failures.push(format!("table polynomial {} at {w}", s.f[j]));
                }
            }
        }
    }

    let t = Instant::now();
    let (ok, detail) = worked_a2_steps();
    gate.report(3, "worked A2 recurrence steps", ok, t.elapsed(), None, &detail);

    let t = Instant::now();
    let one = one_step_suite(SEED + 1, 50, 5);
    absorb(&one, &mut symmetry_checks, &mut symmetry_failures);
    gate.report(4, "one-step law", one.passed(), t.elapsed(), None, &suite_detail(&one));

    let t = Instant::now();
    let corpus = route_corpus(SEED, 100, 4, 6);
    let (q1, route) = route_suites(&corpus);
    let corpus_time = t.elapsed();
    absorb(&q1, &mut symmetry_checks, &mut symmetry_failures);
    absorb(&route, &mut symmetry_checks, &mut symmetry_failures);
    gate.report(
        5,
        "q=1 specialization equals classical F-polynomials",
        q1.counterexamples.is_empty(),
        corpus_time,
        Some(Duration::from_secs(300)),
        &format!("{}; time covers criteria 5 and 6 together", suite_detail(&q1)),
    );
    gate.report(
        6,
        "recurrence equals extraction",
        route.counterexamples.is_empty(),
        corpus_time,
        Some(Duration::from_secs(300)),
        &suite_detail(&route),
    );

    let t = Instant::now();
    let structural = structural_suite(SEED + 3, 500, 4);
    gate.report(
        7,
        "structural property suites",
        structural.passed(),
        t.elapsed(),
        None,
        &suite_detail(&structural),
    );

    let t = Instant::now();
    let lam = lambda_independence_suite(&corpus[..20], SEED + 2);
    absorb(&lam, &mut symmetry_checks, &mut symmetry_failures);
    gate.report(8, "lambda independence", lam.counterexamples.is_empty(), t.elapsed(), None, &suite_detail(&lam));

    let t_a = Instant::now();
    let type_a = type_a_suite(SEED + 4, 20, 7, 2);
    let type_a_time = t_a.elapsed();
    absorb(&type_a, &mut symmetry_checks, &mut symmetry_failures);

    let t = Instant::now();
    let sym_ok = symmetry_failures.is_empty() && symmetry_checks > 0;
    let sym_detail = match symmetry_failures.first() {
        None => format!("{symmetry_checks} polynomials checked"),
        Some(f) => format!("{} failures, first: {f}", symmetry_failures.len()),
    };
    gate.report(9, "coefficient symmetry", sym_ok, t.elapsed(), None, &sym_detail);

    gate.report(
        10,
        "type A closed forms equal the engine",
        type_a.counterexamples.is_empty(),
        type_a_time,
        Some(Duration::from_secs(300)),
        &suite_detail(&type_a),
    );

    let t = Instant::now();
    let general = general_coefficients_suite(SEED + 5, &[a2(), a4()], 4);
    gate.report(
        11,
        "no q-shift with frozen rows",
        general.passed(),
        t.elapsed(),
        None,
        &suite_detail(&general),
    );

    let passed = gate.results.iter().filter(|&&p| p).count();
    println!("{passed}/{} criteria passed", gate.results.len());
    if passed == gate.results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
