use std::collections::BTreeMap;
use std::io::{self, BufRead};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sl2jsr::characters::{char_of, CharacterContext};
use sl2jsr::classifier::{classify_pair, Classification, ClassifyError};
use sl2jsr::fixtures;
use sl2jsr::lab;
use sl2jsr::matrix::{Mat2, MatrixError, MatrixPair};
use sl2jsr::oracle::{self, OracleError, OracleReport};
use sl2jsr::scalars::{parse_quad, Poly, QuadExt};
use sl2jsr::words::GroupWord;
use sl2jsr_cli::{ClassifyJson, JsrJson, LemmaJson, LemmasJson, OptimalJson, OracleJson, VerifyJson};

#[derive(Parser, Debug)]
#[command(name = "sl2jsr", version, about = "Joint spectral radius of pairs in SL(2) with exact arithmetic")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Decimal places in float approximations.
    #[arg(long, default_value_t = 15, global = true)]
    precision: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a pair and report its optimal words.
    Classify {
        /// `[[a,b],[c,d]]`, a fixture name, or a word in L and N.
        a: Option<String>,
        b: Option<String>,
        /// Read one pair per line from stdin.
        #[arg(long)]
        batch: bool,
    },
    /// Exhaustive search over Lyndon words.
    Oracle {
        a: String,
        b: String,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
        #[arg(long, env = "SL2JSR_WORKERS", default_value_t = 1)]
        workers: usize,
    },
    /// Classify, then check the answer by exhaustive search.
    Verify {
        a: String,
        b: String,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
        #[arg(long, env = "SL2JSR_WORKERS", default_value_t = 1)]
        workers: usize,
    },
    /// Trace of a group word, e.g. `abAB`, from a pair or from `--traces x,y,z`.
    Char {
        word: String,
        a: Option<String>,
        b: Option<String>,
        /// tr A, tr B, tr AB.
        #[arg(long, value_delimiter = ',')]
        traces: Option<Vec<String>>,
    },
    /// Randomized checks of the trace inequalities.
    Lemmas {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Counterexamples with real entries.
    Lab {
        #[arg(long, value_enum)]
        case: LabCase,
    },
    /// Random pairs of products of L and N, one per line.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: u64,
        #[arg(long, default_value_t = 5)]
        max_factors: usize,
    },
    /// Print a named fixture matrix.
    Fixtures { name: Option<String> },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum LabCase {
    Iv1,
    Iv2,
    Iv3,
    Nonfree,
}

#[derive(Debug)]
enum Failure {
    Parse(String),
    Invalid(String),
    Discrepancy(String),
    Other(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Invalid(_) => 3,
            Failure::Discrepancy(_) => 4,
            Failure::Other(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Invalid(m) | Failure::Discrepancy(m) | Failure::Other(m) => m,
        }
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Matrix(MatrixError::Parse(..)) => Failure::Parse(e.to_string()),
            ClassifyError::Matrix(_) | ClassifyError::Elliptic(_) => Failure::Invalid(e.to_string()),
            other => Failure::Other(other.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Classify(c) => c.into(),
            OracleError::TraceBelowTwo { .. } => Failure::Invalid(e.to_string()),
            OracleError::EmptySearch => Failure::Parse(e.to_string()),
            other => Failure::Other(other.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn parse_matrix(spec: &str) -> Result<Mat2<QuadExt>, Failure> {
    let spec = spec.trim();
    if spec.starts_with('[') {
        return spec.parse().map_err(|e: MatrixError| Failure::Parse(e.to_string()));
    }
    fixtures::by_name(spec)
        .or_else(|| fixtures::ln_word(spec).filter(|_| !spec.is_empty()))
        .ok_or_else(|| Failure::Parse(format!("unrecognized matrix {spec:?}")))
}

fn required(arg: &Option<String>, what: &str) -> Result<Mat2<QuadExt>, Failure> {
    parse_matrix(arg.as_deref().ok_or_else(|| Failure::Parse(format!("missing matrix {what}")))?)
}

/// Splits a batch line into two matrix specs at the first top-level space.
fn split_pair(line: &str) -> Option<(&str, &str)> {
    let line = line.split('#').next().unwrap_or("").trim();
    let mut depth = 0i32;
    for (i, c) in line.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            c if c.is_whitespace() && depth == 0 => return Some((&line[..i], line[i..].trim())),
            _ => {}
        }
    }
    None
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("serializable"));
}

fn classify_json(c: &Classification, precision: u32) -> ClassifyJson {
    let reason = match c.case() {
        sl2jsr::classifier::Case::OutOfScope(why) => Some(why.clone()),
        _ => None,
    };
    let (optimal, jsr) = match &c.report {
        Some(r) => {
            let words = match &r.optimal {
                sl2jsr::classifier::OptimalitySet::Finite(ws) => ws.iter().map(|w| w.to_string()).collect(),
                sl2jsr::classifier::OptimalitySet::AllNonPowers => Vec::new(),
            };
            (
                Some(OptimalJson { kind: r.optimal.kind().to_string(), words }),
                Some(JsrJson { trace: r.radius.trace.to_string(), root: r.radius.root, approx: r.float_approx(precision) }),
            )
        }
        None => (None, None),
    };
    ClassifyJson { case: c.case().label().to_string(), reason, swapped: c.classification.swapped, optimal, jsr }
}

fn print_classification(j: &ClassifyJson, format: Format) {
    if format == Format::Json {
        return print_json(j);
    }
    println!("case: {}", j.case);
    if let Some(r) = &j.reason {
        println!("reason: {r}");
    }
    println!("swapped: {}", j.swapped);
    if let (Some(o), Some(jsr)) = (&j.optimal, &j.jsr) {
        if o.words.is_empty() {
            println!("optimal: every word that is not a proper power");
        } else {
            println!("optimal: {}", o.words.join(", "));
        }
        println!("jsr: rho(t = {})^(1/{})", jsr.trace, jsr.root);
        println!("approx: {}", jsr.approx);
    }
}

fn cmd_classify(a: &Option<String>, b: &Option<String>, batch: bool, cli: &Cli) -> Outcome {
    if !batch {
        let c = classify_pair(&required(a, "A")?, &required(b, "B")?)?;
        print_classification(&classify_json(&c, cli.precision), cli.format);
        return Ok(());
    }
    // Batch mode keeps going past bad lines and exits with the worst code.
    let mut worst: Option<Failure> = None;
    for (n, line) in io::stdin().lock().lines().enumerate() {
        let line = line.map_err(|e| Failure::Other(e.to_string()))?;
        if line.split('#').next().unwrap_or("").trim().is_empty() {
            continue;
        }
        let result = split_pair(&line)
            .ok_or_else(|| Failure::Parse(format!("line {}: expected two matrices", n + 1)))
            .and_then(|(x, y)| Ok(classify_pair(&parse_matrix(x)?, &parse_matrix(y)?)?));
        match result {
            Ok(c) => print_classification(&classify_json(&c, cli.precision), cli.format),
            Err(e) => {
                eprintln!("line {}: {}", n + 1, e.message());
                if worst.as_ref().is_none_or(|w| e.code() > w.code()) {
                    worst = Some(e);
                }
            }
        }
    }
    worst.map_or(Ok(()), Err)
}

fn oracle_json(r: &OracleReport, precision: u32) -> OracleJson {
    OracleJson {
        max_words: r.max_words.iter().map(|w| w.to_string()).collect(),
        trace: r.radius.trace.to_string(),
        root: r.radius.root,
        approx: r.radius.approx(precision),
        max_len: r.max_len,
    }
}

fn cmd_oracle(a: &str, b: &str, max_len: usize, workers: usize, cli: &Cli) -> Outcome {
    let pair = MatrixPair::new(parse_matrix(a)?.normalize_sign(), parse_matrix(b)?.normalize_sign())
        .map_err(|e| Failure::Invalid(e.to_string()))?;
    let report = match pair.to_integer() {
        Some(p) => oracle::brute_force_max(&p, max_len, workers, false)?,
        None => oracle::brute_force_max(&pair, max_len, workers, false)?,
    };
    let j = oracle_json(&report, cli.precision);
    if cli.format == Format::Json {
        print_json(&j);
    } else {
        println!("max_len: {}", j.max_len);
        println!("max_words: {}", j.max_words.join(", "));
        println!("radius: rho(t = {})^(1/{})", j.trace, j.root);
        println!("approx: {}", j.approx);
    }
    Ok(())
}

fn cmd_verify(a: &str, b: &str, max_len: usize, workers: usize, cli: &Cli) -> Outcome {
    let (a, b) = (parse_matrix(a)?, parse_matrix(b)?);
    let case = classify_pair(&a, &b)?.case().label().to_string();
    let j = match oracle::verify_classification(&a, &b, max_len, workers) {
        Ok(v) => VerifyJson { case, agree: Some(v.agree), detail: v.detail.clone(), oracle: Some(oracle_json(&v.report, cli.precision)) },
        Err(OracleError::OutOfScope(why)) => VerifyJson { case, agree: None, detail: format!("nothing to verify: {why}"), oracle: None },
        Err(e) => return Err(e.into()),
    };
    if cli.format == Format::Json {
        print_json(&j);
    } else {
        println!("case: {}", j.case);
        let verdict = match j.agree {
            Some(true) => "agree",
            Some(false) => "DISCREPANCY",
            None => "skipped",
        };
        println!("{verdict}: {}", j.detail);
    }
    match j.agree {
        Some(false) => Err(Failure::Discrepancy(j.detail)),
        _ => Ok(()),
    }
}

fn cmd_char(word: &str, a: &Option<String>, b: &Option<String>, traces: &Option<Vec<String>>, cli: &Cli) -> Outcome {
    let w: GroupWord = word.parse().map_err(|e: sl2jsr::words::WordError| Failure::Parse(e.to_string()))?;
    let value = match traces {
        Some(t) => {
            if t.len() != 3 {
                return Err(Failure::Parse(format!("--traces needs three values, got {}", t.len())));
            }
            let parse = |s: &String| parse_quad(s).map_err(|e| Failure::Parse(e.to_string()));
            let ctx = CharacterContext::triple(parse(&t[0])?, parse(&t[1])?, parse(&t[2])?);
            char_of(&w, &ctx)
        }
        None => {
            let pair = MatrixPair::new(required(a, "A")?, required(b, "B")?).map_err(|e| Failure::Invalid(e.to_string()))?;
            char_of(&w, &CharacterContext::Matrices(pair))
        }
    };
    if cli.format == Format::Json {
        print_json(&BTreeMap::from([("word", w.to_string()), ("value", value.to_string())]));
    } else {
        println!("{value}");
    }
    Ok(())
}

fn cmd_lemmas(seed: u64, trials: usize, cli: &Cli) -> Outcome {
    let r = oracle::lemma_suite(seed, trials);
    if cli.format == Format::Json {
        let lemmas = r
            .lemmas
            .iter()
            .map(|(k, s)| (k.clone(), LemmaJson { checked: s.checked, failed: s.failed, counterexample: s.counterexample.clone() }))
            .collect();
        print_json(&LemmasJson { seed, trials, violations: r.violations(), lemmas });
    } else {
        print!("{r}");
        println!("violations: {}", r.violations());
    }
    if r.all_passed() {
        Ok(())
    } else {
        Err(Failure::Discrepancy(format!("{} lemma violations", r.violations())))
    }
}

/// Highest degree first, as exact rational strings.
fn coefficients(p: &Poly) -> Vec<String> {
    p.coeff_strings().into_iter().rev().collect()
}

fn cmd_lab(case: LabCase, cli: &Cli) -> Outcome {
    let json = cli.format == Format::Json;
    match case {
        LabCase::Iv2 => {
            let r = lab::iv2_counterexample();
            if json {
                print_json(&serde_json::json!({
                    "case": "iv2",
                    "coefficients": coefficients(&r.poly),
                    "matches_closed_form": r.matches_closed_form,
                    "witness": r.witness.to_string(),
                    "value": r.value.to_string(),
                }));
            } else {
                println!("[(abb)^4] - [(abbb)^3] = {}", r.poly);
                println!("coefficients: {}", coefficients(&r.poly).join(" "));
                println!("matches closed form: {}", r.matches_closed_form);
                println!("negative at x = {}: {}", r.witness, r.value);
            }
            if !r.matches_closed_form {
                return Err(Failure::Discrepancy("coefficient mismatch".into()));
            }
        }
        LabCase::Iv1 => {
            let r = lab::iv1_counterexample();
            if json {
                print_json(&serde_json::json!({
                    "case": "iv1",
                    "coefficients": coefficients(&r.poly),
                    "witness": r.witness.to_string(),
                    "value": r.value.to_string(),
                    "abb_vs_b": format!("{:?}", r.verdict),
                }));
            } else {
                println!("[abb] - [bbb] = {}", r.poly);
                println!("at x = {}: {}", r.witness, r.value);
                println!("abb vs b: {:?}", r.verdict);
            }
        }
        LabCase::Iv3 => {
            let r = lab::iv3_counterexample(&lab::default_width()).map_err(|e| Failure::Other(e.to_string()))?;
            let (lo, hi) = r.root.bounds();
            let sign = |s: Option<std::cmp::Ordering>| s.map_or("uncertified".to_string(), |s| format!("{s:?}"));
            if json {
                print_json(&serde_json::json!({
                    "case": "iv3",
                    "root": [lo.to_string(), hi.to_string()],
                    "width": r.root.width().to_string(),
                    "ab_gap_degree": r.ab_gap.degree(),
                    "abb_gap_degree": r.abb_gap.degree(),
                    "ab_gap_sign": sign(r.ab_sign),
                    "abb_gap_sign": sign(r.abb_sign),
                }));
            } else {
                println!("root of [(ab)^3] - [(abb)^2] in [{lo}, {hi}]");
                println!("  ~ [{:.17}, {:.17}]", to_f64(&lo), to_f64(&hi));
                let degree = |p: &Poly| p.degree().map_or("-".to_string(), |d| d.to_string());
                println!("[(ab)^5] - [(ababb)^2]: degree {}, sign {}", degree(&r.ab_gap), sign(r.ab_sign));
                println!("[(abb)^5] - [(ababb)^3]: degree {}, sign {}", degree(&r.abb_gap), sign(r.abb_sign));
            }
            if r.ab_sign.is_none() || r.abb_sign.is_none() {
                return Err(Failure::Discrepancy("sign not certified".into()));
            }
        }
        LabCase::Nonfree => {
            let d = lab::nonfree_demo();
            if json {
                print_json(&serde_json::json!({
                    "case": "nonfree",
                    "a": d.pair.a.to_string(),
                    "b": d.pair.b.to_string(),
                    "aabbbaa": d.left.to_string(),
                    "baaaaaab": d.right.to_string(),
                    "holds": d.holds(),
                    "holds_with_sqrt6": d.holds_with_sqrt6,
                }));
            } else {
                println!("A = {}", d.pair.a);
                println!("B = {}", d.pair.b);
                println!("A^2 B^3 A^2 = {}", d.left);
                println!("B A^6 B     = {}", d.right);
                println!("holds: {}", d.holds());
                println!("holds with off-diagonal sqrt(6): {}", d.holds_with_sqrt6);
            }
            if !d.holds() {
                return Err(Failure::Discrepancy("relation fails".into()));
            }
        }
    }
    Ok(())
}

fn to_f64(x: &sl2jsr::scalars::Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

fn cmd_gen(seed: u64, count: u64, max_factors: usize, cli: &Cli) -> Outcome {
    if max_factors < 2 {
        return Err(Failure::Parse("--max-factors must be at least 2".into()));
    }
    for s in seed..seed + count {
        let (u, v) = oracle::random_factors(s, max_factors);
        let pair = oracle::random_pair(s, max_factors);
        if cli.format == Format::Json {
            print_json(&serde_json::json!({"seed": s, "u": u, "v": v, "a": pair.a.to_string(), "b": pair.b.to_string()}));
        } else {
            println!("{} {}  # {u} {v}", pair.a, pair.b);
        }
    }
    Ok(())
}

fn cmd_fixtures(name: &Option<String>, cli: &Cli) -> Outcome {
    let names: Vec<&str> = match name {
        Some(n) => vec![n.as_str()],
        None => fixtures::NAMES.to_vec(),
    };
    for n in names {
        let m = fixtures::by_name(n).ok_or_else(|| Failure::Parse(format!("unknown fixture {n:?}; known: {}", fixtures::NAMES.join(" "))))?;
        if cli.format == Format::Json {
            print_json(&BTreeMap::from([("name", n.to_string()), ("matrix", m.to_string())]));
        } else if name.is_some() {
            println!("{m}");
        } else {
            println!("{n} {m}");
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Classify { a, b, batch } => cmd_classify(a, b, *batch, cli),
        Command::Oracle { a, b, max_len, workers } => cmd_oracle(a, b, *max_len, *workers, cli),
        Command::Verify { a, b, max_len, workers } => cmd_verify(a, b, *max_len, *workers, cli),
        Command::Char { word, a, b, traces } => cmd_char(word, a, b, traces, cli),
        Command::Lemmas { seed, trials } => cmd_lemmas(*seed, *trials, cli),
        Command::Lab { case } => cmd_lab(*case, cli),
        Command::Gen { seed, count, max_factors } => cmd_gen(*seed, *count, *max_factors, cli),
        Command::Fixtures { name } => cmd_fixtures(name, cli),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
