//! Command-line front end. [`run`] does all the work and returns what the
//! binary should print, so the whole interface is testable in-process.
//!
//! Exit codes: 0 when the computation ran (whatever the verdict), 1 when
//! `regress` has a failing criterion, 2 for usage errors, 3 for invalid
//! input.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::acceptance;
use crate::adic::{self, EpWord, SignedWord};
use crate::constructions::{
    self, enumerate_lambda, gamma_c1, gamma_witness, lambda_i_members, parse_label,
    parse_label_file, validate_digit_set, DigitSet, FreeChoice, LevelLabel, Selector,
};
use crate::decision::{
    self, exists_infinite_expansion, expansion_type, is_spectrum_ep_label, thm47_check,
    universal_game, GameVerdict, ResidueAutomaton,
};
use crate::error::{Error, Result};
use crate::fourier::{self, TruncationParams};

/// Cycle-length bound used for the growing-run label unless given.
const DEFAULT_CYCLE_BOUND: usize = 8;

#[derive(Debug, Parser)]
#[command(
    name = "cantor-spectra",
    version,
    about = "Exact spectrality decisions for the quarter Cantor measure"
)]
struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Arithmetic on eventually periodic digit words.
    #[command(subcommand)]
    Adic(AdicOp),
    /// Discrete sets and labels.
    #[command(subcommand)]
    Construct(ConstructOp),
    /// Exact spectrality decisions.
    #[command(subcommand)]
    Decide(DecideOp),
    /// Fourier transform, orthogonality and frame diagnostics.
    #[command(subcommand)]
    Verify(VerifyOp),
    /// Label-measure decay, exact and sampled.
    #[command(subcommand)]
    Measure(MeasureOp),
    /// Run the acceptance suite.
    Regress,
}

#[derive(Debug, Args)]
struct WordArgs {
    #[arg(long, allow_hyphen_values = true)]
    word: String,
    #[arg(long, default_value_t = 4)]
    base: u64,
}

#[derive(Debug, Args)]
struct PairArgs {
    #[command(flatten)]
    lhs: WordArgs,
    #[arg(long, allow_hyphen_values = true)]
    rhs: String,
}

#[derive(Debug, Subcommand)]
enum AdicOp {
    /// Expansion of an integer.
    FromInt {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = 4)]
        base: u64,
    },
    /// Integer value of a word ending in 0^∞ or (m-1)^∞.
    ToInt(WordArgs),
    /// Base-4 digit `n` of an integer.
    Digit {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        n: usize,
    },
    Add(PairArgs),
    Sub(PairArgs),
    Neg(WordArgs),
    Mul {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, allow_hyphen_values = true)]
        scalar: i64,
    },
    Div {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, allow_hyphen_values = true)]
        scalar: i64,
    },
    Rho(PairArgs),
    /// Regroup blocks of `s` base-4 digits into one base-4^s digit.
    Recode {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        s: usize,
    },
    /// First digits of Σ 4^{k-1} λ_k.
    Series {
        #[arg(long, allow_hyphen_values = true)]
        digits: String,
        #[arg(long)]
        depth: usize,
    },
    /// First digits of h_p(ω) and the exact word.
    Hp {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        /// ω as a word over {-p, 0, p}.
        #[arg(long, allow_hyphen_values = true)]
        label: String,
        #[arg(long, default_value_t = 12)]
        depth: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SetKind {
    Canonical,
    Scaled,
    Label,
    Thm47,
    Gamma,
}

#[derive(Debug, Args)]
struct SelectorArgs {
    #[arg(long = "set", value_enum, default_value_t = SetKind::Canonical)]
    kind: SetKind,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<i64>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long, default_value = "c0")]
    free: String,
    /// Word literal, rule, or path to a label file.
    #[arg(long, allow_hyphen_values = true)]
    label: Option<String>,
}

#[derive(Debug, Subcommand)]
enum ConstructOp {
    /// Depth-n elements of a set.
    Lambda {
        #[command(flatten)]
        sel: SelectorArgs,
        #[arg(long)]
        depth: usize,
    },
    /// Members of Λ_I in [-bound, bound] with their expansions.
    LambdaI {
        #[arg(long, allow_hyphen_values = true)]
        label: String,
        #[arg(long)]
        bound: i64,
    },
    /// Prefix of the growing-run label.
    Thm47 {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long)]
        depth: usize,
    },
    /// Prefix of a Γ label and the expansion of -1.
    Gamma {
        #[arg(long)]
        r: u32,
        #[arg(long, default_value = "c0")]
        free: String,
        #[arg(long)]
        depth: usize,
    },
    /// Oddness, distinctness and residues of a digit set.
    Validate {
        #[arg(long, allow_hyphen_values = true)]
        digits: String,
    },
}

#[derive(Debug, Subcommand)]
enum DecideOp {
    /// Residue automaton on {0} ∪ digits.
    Automaton {
        #[arg(long, allow_hyphen_values = true)]
        digits: String,
    },
    /// Whether some tree label over C fails to give a spectrum.
    Exists {
        #[arg(long, allow_hyphen_values = true)]
        digits: String,
    },
    /// Spectrality of an eventually periodic level label, or the expansion
    /// type of one integer.
    Label {
        #[arg(long, allow_hyphen_values = true)]
        label: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<i64>,
    },
    /// The seeker/adversary game on C.
    Game {
        #[arg(long, allow_hyphen_values = true)]
        digits: String,
    },
    /// All labels / no labels / mixed, combining `exists` and `game`.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        digits: String,
    },
    /// Cycle refutation for the growing-run label.
    Thm47 {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, default_value_t = DEFAULT_CYCLE_BOUND)]
        cycles: usize,
    },
}

#[derive(Debug, Subcommand)]
enum VerifyOp {
    /// μ̂₄(ξ) by a K-term product.
    Mu4 {
        #[arg(long, allow_hyphen_values = true)]
        xi: f64,
        #[arg(long, default_value_t = 25)]
        terms: usize,
    },
    /// Exact zero test for a nonzero integer.
    Zero {
        #[arg(long, allow_hyphen_values = true)]
        lambda: i64,
    },
    /// Orthogonality of a truncated set.
    Orth {
        #[command(flatten)]
        sel: SelectorArgs,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Frame function on a grid over [0, 1).
    Frame {
        #[command(flatten)]
        sel: SelectorArgs,
        #[command(flatten)]
        params: FrameArgs,
    },
    /// Exact decision together with the numeric diagnostics.
    Report {
        #[command(flatten)]
        sel: SelectorArgs,
        #[command(flatten)]
        params: FrameArgs,
    },
}

#[derive(Debug, Args)]
struct FrameArgs {
    #[arg(long, default_value_t = 12)]
    depth: usize,
    #[arg(long, default_value_t = 25)]
    terms: usize,
    #[arg(long, default_value_t = 256)]
    grid: usize,
    #[arg(long, default_value_t = fourier::FRAME_TOLERANCE)]
    tolerance: f64,
}

#[derive(Debug, Subcommand)]
enum MeasureOp {
    /// Exact measure alive at each depth.
    Exact {
        #[arg(long, allow_hyphen_values = true)]
        digits: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: i64,
        #[arg(long)]
        depth: usize,
    },
    /// Monte Carlo survival fraction.
    Mc {
        #[arg(long, allow_hyphen_values = true)]
        digits: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: i64,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (without the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("cantor-spectra"))
        .chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let (code, body) = match dispatch(&cli) {
        Ok(Report::Json(v)) => (0, render_json(&v)),
        Ok(Report::Csv(s)) => (0, s),
        Ok(Report::Regress(v, ok)) => (if ok { 0 } else { 1 }, render_json(&v)),
        Err(Failure::Usage(msg)) => {
            return Outcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
            }
        }
        Err(Failure::Input(e)) => {
            return Outcome {
                code: 3,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    match &cli.out {
        Some(path) => match fs::write(path, &body) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => Outcome {
                code: 3,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            },
        },
        None => Outcome {
            code,
            stdout: body,
            stderr: String::new(),
        },
    }
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

enum Report {
    Json(Value),
    Csv(String),
    Regress(Value, bool),
}

enum Failure {
    Usage(String),
    Input(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type Dispatch = std::result::Result<Report, Failure>;

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn json_only(cli: &Cli, v: Value) -> Dispatch {
    if cli.format == Format::Csv {
        return Err(Failure::Usage(
            "--format csv is only available for `verify frame` and `construct lambda`".into(),
        ));
    }
    Ok(Report::Json(v))
}

fn dispatch(cli: &Cli) -> Dispatch {
    match &cli.verb {
        Verb::Adic(op) => json_only(cli, adic_op(op)?),
        Verb::Construct(op) => construct_op(cli, op),
        Verb::Decide(op) => json_only(cli, decide_op(op)?),
        Verb::Verify(op) => verify_op(cli, op),
        Verb::Measure(op) => json_only(cli, measure_op(op)?),
        Verb::Regress => {
            if cli.format == Format::Csv {
                return Err(Failure::Usage("regress reports JSON only".into()));
            }
            let results = acceptance::run_all();
            let ok = results.iter().all(|r| r.pass);
            let failed = results.iter().filter(|r| !r.pass).count();
            Ok(Report::Regress(
                json!({ "criteria": to_json(&results), "passed": results.len() - failed, "failed": failed }),
                ok,
            ))
        }
    }
}

fn bigint(s: &str) -> Result<BigInt> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|e| Error::Parse(format!("bad integer {s:?}: {e}")))
}

fn word(a: &WordArgs) -> Result<EpWord> {
    EpWord::parse(&a.word, a.base)
}

fn word_json(w: &EpWord) -> Value {
    json!({
        "word": w.to_string(),
        "base": w.base(),
        "preperiod": w.preperiod(),
        "period": w.period(),
        "integer": w.to_integer().map(|i| i.to_string()),
    })
}

fn adic_op(op: &AdicOp) -> Result<Value> {
    Ok(match op {
        AdicOp::FromInt { lambda, base } => {
            word_json(&EpWord::from_integer(&bigint(lambda)?, *base)?)
        }
        AdicOp::ToInt(a) => {
            json!({ "word": word(a)?.to_string(), "integer": word(a)?.to_integer().map(|i| i.to_string()) })
        }
        AdicOp::Digit { lambda, n } => {
            json!({ "lambda": lambda, "n": n, "digit": adic::digit_at(&bigint(lambda)?, *n)? })
        }
        AdicOp::Add(p) => word_json(&word(&p.lhs)?.add(&EpWord::parse(&p.rhs, p.lhs.base)?)?),
        AdicOp::Sub(p) => word_json(&word(&p.lhs)?.sub(&EpWord::parse(&p.rhs, p.lhs.base)?)?),
        AdicOp::Neg(a) => word_json(&word(a)?.neg()),
        AdicOp::Mul { word: a, scalar } => word_json(&word(a)?.scalar_mul(*scalar)),
        AdicOp::Div { word: a, scalar } => word_json(&word(a)?.div_by_coprime(*scalar)?),
        AdicOp::Rho(p) => {
            let lhs = word(&p.lhs)?;
            let rhs = EpWord::parse(&p.rhs, p.lhs.base)?;
            json!({
                "rho": lhs.rho(&rhs)?.to_string(),
                "first_difference": lhs.first_difference(&rhs)?.map(|i| i + 1),
            })
        }
        AdicOp::Recode { word: a, s } => word_json(&word(a)?.block_recode(*s)?),
        AdicOp::Series { digits, depth } => {
            let lambdas = constructions::parse_int_list(digits)?;
            json!({ "depth": depth, "digits": adic::series_prefix(&lambdas, *depth)? })
        }
        AdicOp::Hp { p, label, depth } => {
            let omega = SignedWord::parse(label, &[-p, 0, *p])?;
            json!({
                "p": p,
                "omega": omega.to_literal(),
                "prefix": adic::hp_prefix(*p, &omega, *depth)?,
                "word": adic::hp_word(*p, &omega)?.to_string(),
            })
        }
    })
}

fn label_arg(text: &str) -> Result<LevelLabel> {
    let path = Path::new(text);
    if path.is_file() {
        let content = fs::read_to_string(path)
            .map_err(|e| Error::Label(format!("cannot read {}: {e}", path.display())))?;
        parse_label_file(&content)
    } else {
        parse_label(text)
    }
}

fn periodic_label(text: &str) -> Result<SignedWord> {
    label_arg(text)?
        .as_periodic()
        .ok_or_else(|| Error::Label("this operation needs an eventually periodic label".into()))
}

fn selector(a: &SelectorArgs) -> Result<Selector> {
    let need_p = || {
        a.p.ok_or_else(|| Error::Param("--p is required for this set".into()))
    };
    Ok(match a.kind {
        SetKind::Canonical => Selector::Canonical,
        SetKind::Scaled => Selector::Scaled(need_p()?),
        SetKind::Label => {
            Selector::Label(label_arg(a.label.as_deref().ok_or_else(|| {
                Error::Param("--label is required for --set label".into())
            })?)?)
        }
        SetKind::Thm47 => Selector::Label(LevelLabel::growing_runs(need_p()?)?),
        SetKind::Gamma => Selector::Label(LevelLabel::gamma(
            a.r.ok_or_else(|| Error::Param("--r is required for --set gamma".into()))?,
            a.free.parse()?,
        )?),
    })
}

fn construct_op(cli: &Cli, op: &ConstructOp) -> Dispatch {
    if let ConstructOp::Lambda { sel, depth } = op {
        let sel = selector(sel)?;
        let set = enumerate_lambda(&sel, *depth)?;
        if cli.format == Format::Csv {
            let mut out = String::from("lambda\n");
            for l in &set {
                out.push_str(&format!("{l}\n"));
            }
            return Ok(Report::Csv(out));
        }
        return Ok(Report::Json(json!({
            "selector": sel.to_string(),
            "depth": depth,
            "size": set.len(),
            "elements": set,
        })));
    }
    let v = match op {
        ConstructOp::Lambda { .. } => unreachable!(),
        ConstructOp::LambdaI { label, bound } => {
            let word = periodic_label(label)?;
            let members = lambda_i_members(&word, *bound)?;
            json!({
                "label": word.to_literal(),
                "bound": bound,
                "members": members.iter().map(|m| m.lambda).collect::<Vec<_>>(),
                "expansions": to_json(&members),
            })
        }
        ConstructOp::Thm47 { p, depth } => {
            json!({ "p": p, "digits": constructions::thm47_label(*p, *depth)? })
        }
        ConstructOp::Gamma { r, free, depth } => {
            let free: FreeChoice = free.parse()?;
            let witness = gamma_witness(*r)?;
            json!({
                "r": r,
                "free": to_json(&free),
                "c0": constructions::GAMMA_C0,
                "c1": gamma_c1(*r)?,
                "digits": constructions::gamma_label(*r, free, *depth)?,
                "witness": witness.to_literal(),
                "witness_prefix": witness.prefix(*depth),
            })
        }
        ConstructOp::Validate { digits } => to_json(&validate_digit_set(
            &constructions::parse_int_list(digits)?,
        )?),
    };
    json_only(cli, v)
}

fn digit_set(s: &str) -> Result<DigitSet> {
    s.parse()
}

fn decide_op(op: &DecideOp) -> Result<Value> {
    Ok(match op {
        DecideOp::Automaton { digits } => {
            let alphabet = constructions::parse_int_list(digits)?;
            let a = ResidueAutomaton::new(&alphabet)?;
            json!({
                "alphabet": a.alphabet(),
                "core_bound": a.bound(),
                "edges": to_json(&a.edges()),
                "nonzero_cycle": a.find_nonzero_cycle().map(|(s, d)| json!({ "states": s, "digits": d })),
            })
        }
        DecideOp::Exists { digits } => {
            let w = exists_infinite_expansion(&digit_set(digits)?);
            let verdict = if w.is_some() {
                "some-labels-fail"
            } else {
                "all-labels-spectra"
            };
            json!({ "verdict": verdict, "witness": w })
        }
        DecideOp::Label { label, lambda } => {
            if let (LevelLabel::GrowingRuns { p }, None) = (label_arg(label)?, lambda) {
                let report = thm47_check(p, DEFAULT_CYCLE_BOUND)?;
                return Ok(json!({
                    "label": format!("thm47 p={p}"),
                    "verdict": if report.spectrum() { "spectrum" } else { "unknown" },
                    "decision": to_json(&report),
                }));
            }
            let word = periodic_label(label)?;
            match lambda {
                Some(l) => json!({
                    "label": word.to_literal(),
                    "lambda": l,
                    "expansion": to_json(&expansion_type(&word, *l)?),
                }),
                None => {
                    let d = is_spectrum_ep_label(&word)?;
                    json!({
                        "label": word.to_literal(),
                        "verdict": if d.spectrum { "spectrum" } else { "non-spectrum" },
                        "decision": to_json(&d),
                    })
                }
            }
        }
        DecideOp::Game { digits } => {
            let g = universal_game(&digit_set(digits)?);
            let mut v = to_json(&g);
            if !g.seeker_wins() {
                v["note"] = json!("inconclusive for the claim that every label gives a spectrum");
            }
            v
        }
        DecideOp::Classify { digits } => {
            let c = digit_set(digits)?;
            let witness = exists_infinite_expansion(&c);
            let game = universal_game(&c);
            let verdict = match (&witness, &game.verdict) {
                (None, _) => "all-labels-spectra",
                (Some(_), GameVerdict::SeekerWins { .. }) => "no-label-spectrum",
                (Some(_), GameVerdict::AdversaryWins) => "mixed-or-unknown",
            };
            json!({ "digits": c.digits(), "verdict": verdict, "witness": witness, "game": to_json(&game) })
        }
        DecideOp::Thm47 { p, cycles } => to_json(&thm47_check(*p, *cycles)?),
    })
}

fn verify_op(cli: &Cli, op: &VerifyOp) -> Dispatch {
    if let VerifyOp::Frame { sel, params } = op {
        let sel = selector(sel)?;
        let params =
            TruncationParams::new(params.depth, params.terms, params.grid, params.tolerance)?;
        let mut depths = vec![params.depth];
        if params.depth > 2 {
            depths.insert(0, params.depth - 2);
        }
        let sets = depths
            .iter()
            .map(|&d| Ok(enumerate_lambda(&sel, d)?.into_iter().collect()))
            .collect::<Result<Vec<Vec<i64>>>>()?;
        let report = fourier::frame_nested(&sets, &params)?;
        return Ok(match cli.format {
            Format::Csv => Report::Csv(report.to_csv()),
            Format::Json => Report::Json(to_json(&report)),
        });
    }
    let v = match op {
        VerifyOp::Frame { .. } => unreachable!(),
        VerifyOp::Mu4 { xi, terms } => {
            json!({ "xi": xi, "terms": terms, "value": to_json(&fourier::mu4_hat(*xi, *terms)?) })
        }
        VerifyOp::Zero { lambda } => {
            json!({ "z": lambda, "zero": fourier::is_zero_exact(*lambda)? })
        }
        VerifyOp::Orth { sel, depth, seed } => {
            let sel = selector(sel)?;
            let set: Vec<i64> = enumerate_lambda(&sel, *depth)?.into_iter().collect();
            json!({
                "selector": sel.to_string(),
                "depth": depth,
                "seed": seed,
                "report": to_json(&fourier::check_orthogonality(&set, *seed)?),
            })
        }
        VerifyOp::Report { sel, params } => {
            let sel = selector(sel)?;
            let params =
                TruncationParams::new(params.depth, params.terms, params.grid, params.tolerance)?;
            to_json(&fourier::spectrum_numeric_report(&sel, &params)?)
        }
    };
    json_only(cli, v)
}

fn measure_op(op: &MeasureOp) -> Result<Value> {
    Ok(match op {
        MeasureOp::Exact {
            digits,
            lambda,
            depth,
        } => {
            let c = digit_set(digits)?;
            let profile = decision::decay_profile(&c, *lambda, *depth);
            let m = c.len() as i64;
            // ((m-1)/m)^{k-1}, the bound for one constrained fresh edge per level
            let bound = |k: usize| {
                num_rational::BigRational::new((m - 1).into(), m.into()).pow(k as i32 - 1)
            };
            json!({
                "digits": c.digits(),
                "lambda": lambda,
                "depth": depth,
                "measure": profile.last().expect("nonempty").to_string(),
                "profile": profile.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                "within_bound": profile.iter().enumerate().skip(1).all(|(k, q)| *q <= bound(k)),
            })
        }
        MeasureOp::Mc {
            digits,
            lambda,
            depth,
            samples,
            seed,
        } => {
            let c = digit_set(digits)?;
            let est = decision::monte_carlo_survival(&c, *lambda, *depth, *samples, *seed)?;
            json!({ "digits": c.digits(), "lambda": lambda, "depth": depth, "estimate": to_json(&est) })
        }
    })
}
