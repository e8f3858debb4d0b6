use std::fs;
use std::io::{Read, Write};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qfpoly::cluster::{denominator_vectors, extended_g_vectors, ClassicalSeed, CommPoly};
use qfpoly::fpoly::{coefficient_symmetry_check, extract_qfpoly, RecurrenceState};
use qfpoly::trees::{type_a_chains, ChainReport, Quiver};
use qfpoly::verify::{random_skew_form, rng, run_all, VerifyConfig};
use qfpoly::{CompatiblePair, Error, ExchangeData, MutationWord, QuantumSeed, SkewForm};

#[derive(Parser)]
#[command(name = "qfpoly", version, about = "Exact quantum F-polynomials, g-vectors and denominator vectors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Table {
    A2,
    A4,
}

#[derive(Args)]
struct Common {
    /// Exchange matrix as JSON: a list of rows, or {"btilde": rows, "d": [...]}. Use - for stdin.
    #[arg(long)]
    matrix: String,
    /// Uniform symmetrizer D = dI, overriding any d in the input.
    #[arg(long)]
    d: Option<i64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct WordArgs {
    /// Mutation word, 1-based, e.g. 2,1,2.
    #[arg(long, default_value = "")]
    word: String,
    /// Cluster index, 1-based; all indices when omitted.
    #[arg(long)]
    j: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Mutate an exchange matrix, or a quantum seed when --lambda is given.
    Mutate {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        word: WordArgs,
        /// zero, random, or a JSON file holding a skew-symmetric matrix.
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Classical F-polynomials.
    Fpoly {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        word: WordArgs,
    },
    /// Quantum F-polynomials, by extraction and by the recurrence.
    Qfpoly {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, default_value = "zero")]
        lambda: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// g-vectors; extended g-vectors when the matrix has frozen rows.
    Gvec {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        word: WordArgs,
    },
    /// Denominator vectors.
    Dvec {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        word: WordArgs,
    },
    /// Chains of a type-A quiver with their closed-form data.
    Chains {
        #[command(flatten)]
        common: Common,
    },
    /// Reproduce a reference table and diff it against the golden data.
    Table {
        #[arg(value_enum)]
        which: Table,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the randomized property suites.
    Verify {
        /// Trials for the compatible-pair properties.
        #[arg(long, default_value_t = 500)]
        trials: usize,
        /// Matrix and word samples for the route comparisons.
        #[arg(long, default_value_t = 100)]
        corpus: usize,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// A failure with its exit status: 1 for a mismatch, 2 for bad input.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::RouteMismatch(_)
            | Error::NotDivisible
            | Error::InexactDivision
            | Error::EpsilonMismatch(_)
            | Error::NotInColumnSpan(_)
            | Error::NegativeExponent(_)
            | Error::NotProportional(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn bad_input(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type Outcome = Result<(Value, String, bool), Failure>;

fn read_source(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| bad_input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| bad_input(format!("{path}: {e}")))
    }
}

fn load_matrix(common: &Common) -> Result<ExchangeData, Failure> {
    let text = read_source(&common.matrix)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| bad_input(format!("matrix: {e}")))?;
    let (rows, d) = match value {
        Value::Array(_) => (value, None),
        Value::Object(mut map) => {
            let rows = map
                .remove("btilde")
                .or_else(|| map.remove("b0"))
                .ok_or_else(|| bad_input("matrix: missing field `btilde`"))?;
            (rows, map.remove("d"))
        }
        _ => return Err(bad_input("matrix: expected a list of rows or an object")),
    };
    let rows: Vec<Vec<i64>> =
        serde_json::from_value(rows).map_err(|e| bad_input(format!("matrix.btilde: {e}")))?;
    let n = rows.first().map(|r| r.len()).unwrap_or(0);
    let d: Option<Vec<i64>> = match (common.d, d) {
        (Some(k), _) => Some(vec![k; n]),
        (None, Some(v)) => Some(serde_json::from_value(v).map_err(|e| bad_input(format!("matrix.d: {e}")))?),
        (None, None) => None,
    };
    Ok(match d {
        Some(d) => ExchangeData::new(rows, d)?,
        None => ExchangeData::with_inferred_symmetrizer(rows)?,
    })
}

fn parse_word(w: &WordArgs, n: usize) -> Result<MutationWord, Failure> {
    if w.word.trim().is_empty() {
        return Ok(MutationWord::empty());
    }
    MutationWord::parse(&w.word, n).map_err(|e| bad_input(format!("--word: {e}")))
}

fn indices(w: &WordArgs, n: usize) -> Result<Vec<usize>, Failure> {
    match w.j {
        None => Ok((0..n).collect()),
        Some(j) if (1..=n).contains(&j) => Ok(vec![j - 1]),
        Some(j) => Err(bad_input(format!("--j: {j} is outside [1, {n}]"))),
    }
}

fn load_lambda(choice: &str, size: usize, seed: u64) -> Result<SkewForm, Failure> {
    match choice {
        "zero" => Ok(SkewForm::zero(size)),
        "random" => Ok(random_skew_form(&mut rng(seed), size, 3)),
        path => {
            let text = read_source(path)?;
            let form: SkewForm = serde_json::from_str(&text).map_err(|e| bad_input(format!("lambda: {e}")))?;
            Ok(form)
        }
    }
}

fn comm_poly_json(p: &CommPoly) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|(a, c)| {
                let coeff: Value = serde_json::from_str(&c.to_string()).unwrap_or(Value::String(c.to_string()));
                json!({ "a": a, "coeff": coeff })
            })
            .collect(),
    )
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn cmd_mutate(common: &Common, w: &WordArgs, lambda: &Option<String>, seed: u64) -> Outcome {
    let ex = load_matrix(common)?;
    let word = parse_word(w, ex.n())?;
    let Some(choice) = lambda else {
        let out = ex.mutate_word(&word)?;
        let text = out
            .rows()
            .iter()
            .map(|r| r.iter().map(|x| format!("{x:>3}")).collect::<String>())
            .collect::<Vec<_>>()
            .join("\n");
        return Ok((json!({ "word": word, "btilde": out.rows(), "d": out.d() }), text, true));
    };
    let lam = load_lambda(choice, ex.n(), seed)?;
    let pair = if ex.m() > ex.n() && lam.rank() == ex.m() {
        CompatiblePair::new(lam, ex)?
    } else {
        CompatiblePair::principal(&ex.square(), &lam)?
    };
    let s = QuantumSeed::initial(pair).along(&word)?;
    let mut text = format!("word {}\n", s.word());
    for (j, x) in s.cluster().iter().enumerate() {
        text.push_str(&format!("X_{} = {x}\n", j + 1));
    }
    Ok((s.to_json(), text.trim_end().to_string(), true))
}

fn cmd_fpoly(common: &Common, w: &WordArgs) -> Outcome {
    let ex = load_matrix(common)?;
    let b0 = ex.square();
    let word = parse_word(w, b0.n())?;
    let seed = ClassicalSeed::along(&b0, &word)?;
    let mut rows = Vec::new();
    let mut text = Vec::new();
    for j in indices(w, b0.n())? {
        rows.push(json!({ "j": j + 1, "f": comm_poly_json(&seed.f[j]), "g": seed.g[j] }));
        text.push(format!("F_{} = {}", j + 1, seed.f[j]));
    }
    Ok((json!({ "word": word, "polynomials": rows }), text.join("\n"), true))
}

fn cmd_qfpoly(common: &Common, w: &WordArgs, lambda: &str, seed: u64) -> Outcome {
    let ex = load_matrix(common)?;
    let b0 = Arc::new(ex.square());
    let word = parse_word(w, b0.n())?;
    let lam = load_lambda(lambda, b0.n(), seed)?;
    let state = RecurrenceState::initial(&b0, &lam)?.along(&word)?;
    let mut rows = Vec::new();
    let mut text = Vec::new();
    let mut ok = true;
    for j in indices(w, b0.n())? {
        let (f, g) = extract_qfpoly(&b0, &lam, &word, j)?;
        let agree = state.f[j] == f && state.g[j] == g;
        let symmetric = coefficient_symmetry_check(&f, &g, b0.d());
        ok &= agree && symmetric;
        rows.push(json!({
            "j": j + 1,
            "g": g,
            "qfpoly": f.to_json(),
            "text": f.to_string(),
            "recurrence_agrees": agree,
            "symmetric": symmetric,
        }));
        text.push(format!("F_{} = {}    g = {:?}", j + 1, f, g));
        if !agree {
            text.push(format!("  recurrence gives {}", state.f[j]));
        }
        if !symmetric {
            text.push("  coefficient symmetry fails".into());
        }
    }
    Ok((json!({ "word": word, "polynomials": rows }), text.join("\n"), ok))
}

fn cmd_gvec(common: &Common, w: &WordArgs) -> Outcome {
    let ex = load_matrix(common)?;
    let word = parse_word(w, ex.n())?;
    let gs = if ex.m() > ex.n() {
        extended_g_vectors(&ex, &word)?
    } else {
        qfpoly::cluster::g_vectors(&ex, &word)?
    };
    let pick: Vec<(usize, Vec<i64>)> = indices(w, ex.n())?.into_iter().map(|j| (j + 1, gs[j].clone())).collect();
    let text = pick.iter().map(|(j, g)| format!("g_{j} = {g:?}")).collect::<Vec<_>>().join("\n");
    let rows: Vec<Value> = pick.iter().map(|(j, g)| json!({ "j": j, "g": g })).collect();
    Ok((json!({ "word": word, "gvectors": rows }), text, true))
}

fn cmd_dvec(common: &Common, w: &WordArgs) -> Outcome {
    let ex = load_matrix(common)?;
    let word = parse_word(w, ex.n())?;
    let ds = denominator_vectors(&ex, &word)?;
    let pick: Vec<(usize, Vec<i64>)> = indices(w, ex.n())?.into_iter().map(|j| (j + 1, ds[j].clone())).collect();
    let text = pick.iter().map(|(j, d)| format!("d_{j} = {d:?}")).collect::<Vec<_>>().join("\n");
    let rows: Vec<Value> = pick.iter().map(|(j, d)| json!({ "j": j, "denominator": d })).collect();
    Ok((json!({ "word": word, "denominators": rows }), text, true))
}

fn cmd_chains(common: &Common) -> Outcome {
    let ex = load_matrix(common)?;
    if !ex.is_skew_symmetric() || ex.m() != ex.n() {
        return Err(bad_input("matrix: chains need a square skew-symmetric matrix"));
    }
    let d = common.d.unwrap_or(ex.d()[0]);
    let q = Quiver::from_matrix(ex.rows())?;
    let mut reports = Vec::new();
    let mut text = Vec::new();
    for c in type_a_chains(&q)? {
        let r = ChainReport::new(&c, &q, d)?;
        text.push(format!(
            "chain {:?}  g = {:?}  F = {}",
            one_based(c.vertices()),
            r.gvector,
            qfpoly::trees::tree_qfpoly(&c, &q, d)?
        ));
        reports.push(r);
    }
    Ok((json!({ "quiver": q.to_json(), "d": d, "chains": reports }), text.join("\n"), true))
}

fn cmd_table(which: Table) -> Outcome {
    let report = match which {
        Table::A2 => qfpoly::table_a2()?,
        Table::A4 => qfpoly::table_a4()?,
    };
    Ok((report.to_json(), report.to_string(), report.passed()))
}

fn cmd_verify(trials: usize, corpus: usize, depth: usize, seed: u64) -> Outcome {
    let cfg = VerifyConfig {
        seed,
        pair_trials: trials,
        corpus_size: corpus,
        depth,
        ..VerifyConfig::default()
    };
    let reports = run_all(&cfg);
    let ok = reports.iter().all(|r| r.passed());
    let text = reports.iter().map(|r| r.summary()).collect::<Vec<_>>().join("\n");
    let value = json!({ "status": if ok { "PASS" } else { "FAIL" }, "suites": reports });
    Ok((value, text, ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (format, outcome) = match &cli.command {
        Command::Mutate {
            common,
            word,
            lambda,
            seed,
        } => (common.format, cmd_mutate(common, word, lambda, *seed)),
        Command::Fpoly { common, word } => (common.format, cmd_fpoly(common, word)),
        Command::Qfpoly {
            common,
            word,
            lambda,
            seed,
        } => (common.format, cmd_qfpoly(common, word, lambda, *seed)),
        Command::Gvec { common, word } => (common.format, cmd_gvec(common, word)),
        Command::Dvec { common, word } => (common.format, cmd_dvec(common, word)),
        Command::Chains { common } => (common.format, cmd_chains(common)),
        Command::Table { which, format } => (*format, cmd_table(*which)),
        Command::Verify {
            trials,
            corpus,
            depth,
            seed,
            format,
        } => (*format, cmd_verify(*trials, *corpus, *depth, *seed)),
    };
    match outcome {
        Ok((value, text, ok)) => {
            let body = match format {
                Format::Json => serde_json::to_string_pretty(&value).expect("serializable"),
                Format::Text => text,
            };
            // A closed pipe downstream is not an error of ours.
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
