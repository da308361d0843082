//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a check failed, 2 parse/load error or bad trace,
//! 3 cap exceeded, 4 evaluator inapplicable. Output is `key: value` lines.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::{
    check_equation, classify_monoid, classify_semigroup, AlgebraError, Equation, FiniteSemigroup,
    Regime, RegimeReport,
};
use crate::eval::{EvalError, EvaluatorKind, Plan, StreamTrace, Subject};
use crate::fooling::{render_partial, standard_instance, verify_fooling_set, Construction, FoolingError};
use crate::harness::{
    differential_campaign, growth_profile, make_permutation, replay, CampaignConfig, FailureRecord, PermKind,
    PermutationSpec, ProfileConfig,
};
use crate::langkit::{language, syntactic_monoid, syntactic_semigroup, LangError};
use crate::oracles::{
    check_fl_preservation, check_pumping_claim, check_sum_of_squares_lemma, one_way_lower_bound,
    OracleCaps, OracleError,
};

#[derive(Debug, Parser)]
#[command(name = "oostream", version, about = "Out-of-order membership and evaluation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report the space regime of a language or algebra.
    Classify {
        #[command(flatten)]
        subject: SubjectArgs,
    },
    /// Run an evaluator on a stream trace.
    Eval {
        #[command(flatten)]
        subject: SubjectArgs,
        #[arg(long)]
        trace: PathBuf,
        #[arg(long, default_value = "auto")]
        evaluator: String,
    },
    /// Write a stream trace for a word delivered in a chosen order.
    Trace {
        #[command(flatten)]
        subject: SubjectArgs,
        /// Letters, or whitespace-separated element names.
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value = "random")]
        order: OrderArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Measure state growth over a length schedule and fit a model.
    Measure {
        #[command(flatten)]
        subject: SubjectArgs,
        #[arg(long, default_value = "auto")]
        evaluator: String,
        /// `start:end:xF` geometric schedule or a comma list.
        #[arg(long, default_value = "16:16384:x2")]
        n: String,
        #[arg(long, default_value_t = 3)]
        words: usize,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare an evaluator with the reference on permuted streams.
    Campaign {
        #[command(flatten)]
        subject: SubjectArgs,
        #[arg(long, default_value = "auto")]
        evaluator: String,
        /// Every word is checked up to this length.
        #[arg(long, default_value_t = 6)]
        exhaustive_up_to: usize,
        /// Sampled lengths, `start:end:xF` or a comma list.
        #[arg(long, default_value = "7,8,9,10,11,12,13,14,15,16,32,64")]
        n: String,
        #[arg(long, default_value_t = 500)]
        words: usize,
        #[arg(long, default_value_t = 5)]
        perms: usize,
        /// Write the first discrepancy here as a replay file.
        #[arg(long)]
        replay_out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rerun a discrepancy from a replay file.
    Replay {
        #[command(flatten)]
        subject: SubjectArgs,
        #[arg(long, default_value = "auto")]
        evaluator: String,
        #[arg(long)]
        file: PathBuf,
    },
    /// Build a fooling set and optionally verify it.
    Fool {
        #[arg(long)]
        construction: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        verify: bool,
        /// Print every word in partial-trace form.
        #[arg(long)]
        dump: bool,
        #[arg(long, default_value_t = crate::fooling::DEFAULT_PAIR_CAP)]
        pair_cap: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Brute-force ground truths.
    Oracle {
        #[command(subcommand)]
        check: OracleCommand,
    },
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Exact one-way bound for a domain-first split.
    LowerBound {
        #[command(flatten)]
        subject: SubjectArgs,
        /// Word length; defaults to the construction's length.
        #[arg(long)]
        n: Option<usize>,
        /// Comma-separated positions or `fooling:<construction>:<n>`.
        #[arg(long)]
        domain: String,
    },
    /// Sum-of-squares interval lemma up to a maximum.
    SumOfSquares {
        #[arg(long, default_value_t = 14)]
        max: usize,
    },
    /// `u = FL^k(u)` for all words up to a length.
    FlPreservation {
        #[command(flatten)]
        subject: SubjectArgs,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// Prefix-collision pumping on words of length |S|+1.
    Pumping {
        #[command(flatten)]
        subject: SubjectArgs,
        #[arg(long, default_value_t = 1 << 20)]
        cap: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    Identity,
    Reverse,
    Random,
    EvensOdds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AsArg {
    Monoid,
    Semigroup,
}

#[derive(Debug, Args)]
struct SubjectArgs {
    #[arg(long, conflicts_with = "semigroup_file")]
    regex: Option<String>,
    #[arg(long, default_value = "ab")]
    alphabet: String,
    #[arg(long)]
    semigroup_file: Option<PathBuf>,
    /// Monoid by default when an identity exists.
    #[arg(long = "as", value_enum)]
    as_: Option<AsArg>,
}

enum Loaded {
    Language { regex: String, alphabet: String, subject: Subject },
    Table(FiniteSemigroup),
}

impl Loaded {
    fn label(&self, args: &SubjectArgs) -> String {
        match self {
            Loaded::Language { regex, alphabet, .. } => format!("{regex} over {alphabet}"),
            Loaded::Table(_) => args
                .semigroup_file
                .as_ref()
                .map(|p| p.display().to_string())
                .unwrap_or_default(),
        }
    }

    fn subject(&self) -> Subject {
        match self {
            Loaded::Language { subject, .. } => subject.clone(),
            Loaded::Table(s) => Subject::algebra(s.clone()),
        }
    }
}

#[derive(Debug)]
enum Failure {
    Check(String),
    Load(String),
    Cap(String),
    Inapplicable(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Check(_) => 1,
            Failure::Load(_) => 2,
            Failure::Cap(_) => 3,
            Failure::Inapplicable(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Check(m) | Failure::Load(m) | Failure::Cap(m) | Failure::Inapplicable(m) => m,
        }
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::CapExceeded { .. } => Failure::Cap(e.to_string()),
            AlgebraError::NotMonoid => Failure::Inapplicable(e.to_string()),
            _ => Failure::Load(e.to_string()),
        }
    }
}

impl From<LangError> for Failure {
    fn from(e: LangError) -> Self {
        match e {
            LangError::TooLarge { .. } => Failure::Cap(e.to_string()),
            LangError::Algebra(a) => a.into(),
            _ => Failure::Load(e.to_string()),
        }
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::Inapplicable(_) => Failure::Inapplicable(e.to_string()),
            EvalError::Algebra(a) => a.into(),
            EvalError::Lang(l) => l.into(),
            _ => Failure::Load(e.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::CapExceeded { .. } => Failure::Cap(e.to_string()),
            OracleError::Eval(e) => e.into(),
            _ => Failure::Load(e.to_string()),
        }
    }
}

impl From<FoolingError> for Failure {
    fn from(e: FoolingError) -> Self {
        match e {
            FoolingError::Eval(e) => e.into(),
            FoolingError::Lang(e) => e.into(),
            FoolingError::Precondition(_) => Failure::Inapplicable(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to stderr. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}", f.message());
            f.code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Classify { subject } => cmd_classify(&subject, out),
        Command::Eval { subject, trace, evaluator } => cmd_eval(&subject, &trace, &evaluator, out),
        Command::Trace { subject, word, order, seed } => cmd_trace(&subject, &word, order, seed, out),
        Command::Measure { subject, evaluator, n, words, csv, seed } => {
            cmd_measure(&subject, &evaluator, &n, words, csv.as_ref(), seed, out)
        }
        Command::Campaign { subject, evaluator, exhaustive_up_to, n, words, perms, replay_out, seed } => {
            let cfg = CampaignConfig {
                exhaustive_up_to,
                sampled_lengths: parse_schedule(&n)?,
                words_per_n: words,
                perms_per_word: perms,
                seed,
                ..CampaignConfig::default()
            };
            cmd_campaign(&subject, &evaluator, &cfg, replay_out.as_ref(), out)
        }
        Command::Replay { subject, evaluator, file } => cmd_replay(&subject, &evaluator, &file, out),
        Command::Fool { construction, n, verify, dump, pair_cap, seed } => {
            cmd_fool(&construction, n, verify, dump, pair_cap, seed, out)
        }
        Command::Oracle { check } => cmd_oracle(check, out),
    }
}

macro_rules! emit {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(|e| Failure::Load(e.to_string()))
    };
}

fn load(args: &SubjectArgs) -> Result<Loaded, Failure> {
    match (&args.regex, &args.semigroup_file) {
        (Some(regex), None) => Ok(Loaded::Language {
            regex: regex.clone(),
            alphabet: args.alphabet.clone(),
            subject: Subject::automaton(language(regex, &args.alphabet)?),
        }),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Load(format!("{}: {e}", path.display())))?;
            Ok(Loaded::Table(text.parse::<FiniteSemigroup>()?))
        }
        _ => Err(Failure::Load("give exactly one of --regex or --semigroup-file".into())),
    }
}

/// The algebra to classify and whether it is treated as a monoid.
fn algebra_of(loaded: &Loaded, as_: Option<AsArg>) -> Result<(FiniteSemigroup, bool), Failure> {
    match loaded {
        Loaded::Language { subject: Subject::Automaton(d), .. } => match as_ {
            Some(AsArg::Semigroup) => Ok((syntactic_semigroup(d)?.algebra, false)),
            _ => Ok((syntactic_monoid(d)?.algebra, true)),
        },
        Loaded::Language { .. } => unreachable!("languages load as automata"),
        Loaded::Table(s) => {
            let identity = s.identity().or_else(|| s.find_identity());
            match as_ {
                Some(AsArg::Semigroup) => Ok((s.clone(), false)),
                Some(AsArg::Monoid) if identity.is_none() => {
                    Err(AlgebraError::NotMonoid.into())
                }
                None if identity.is_none() => Ok((s.clone(), false)),
                _ => Ok((s.with_identity(identity)?, true)),
            }
        }
    }
}

fn classify(algebra: &FiniteSemigroup, monoid: bool) -> Result<RegimeReport, Failure> {
    Ok(if monoid {
        classify_monoid(algebra)?
    } else {
        classify_semigroup(algebra)?
    })
}

fn regime_line(report: &RegimeReport, algebra: &FiniteSemigroup, monoid: bool) -> String {
    let satisfied = match (report.regime, monoid) {
        (Regime::Constant, true) => Some("Com"),
        (Regime::Logarithmic, _) => Some("FlCom"),
        (Regime::Constant, false) => Some("LiCom"),
        _ => None,
    };
    let mut line = report.regime.to_string();
    if let Some(s) = satisfied {
        line.push_str(&format!(" ({s})"));
    }
    if let Some(w) = &report.witness {
        line.push_str(&format!(", {} violated: {}", w.equation, w.describe_assignment(algebra)));
    }
    line
}

fn cmd_classify(args: &SubjectArgs, out: &mut dyn Write) -> Outcome {
    let loaded = load(args)?;
    let (algebra, monoid) = algebra_of(&loaded, args.as_)?;
    let report = classify(&algebra, monoid)?;
    emit!(out, "regime: {}", regime_line(&report, &algebra, monoid))?;
    emit!(out, "structure: {}", if monoid { "monoid" } else { "semigroup" })?;
    if let Some(w) = &report.witness {
        emit!(out, "equation: {}", w.equation)?;
        emit!(out, "assignment: {}", w.describe_assignment(&algebra))?;
        emit!(out, "lhs: {}", algebra.name(w.lhs_value))?;
        emit!(out, "rhs: {}", algebra.name(w.rhs_value))?;
    }
    emit!(out, "size: {}", algebra.size())?;
    emit!(out, "elements: {}", algebra.names().join(" "))
}

/// Registry of languages with a dedicated evaluator.
const REGISTRY: [(&str, EvaluatorKind); 5] = [
    ("(ab)*", EvaluatorKind::Abstar),
    ("a*b*a*", EvaluatorKind::Aba),
    ("a*b*a*b*a*", EvaluatorKind::Ababa),
    ("a*b*a*b*a*b*", EvaluatorKind::Ababab),
    ("a.*b", EvaluatorKind::FirstLast),
];

fn auto_kind(loaded: &Loaded, as_: Option<AsArg>) -> Result<EvaluatorKind, Failure> {
    if let Loaded::Language { regex, alphabet, .. } = loaded {
        let compact: String = regex.chars().filter(|c| !c.is_whitespace()).collect();
        if alphabet == "ab" {
            if let Some(&(_, kind)) = REGISTRY.iter().find(|(r, _)| *r == compact) {
                return Ok(kind);
            }
        }
    }
    let (algebra, monoid) = algebra_of(loaded, as_)?;
    if monoid {
        return Ok(match classify_monoid(&algebra)?.regime {
            Regime::Constant => EvaluatorKind::Commutative,
            Regime::Logarithmic => EvaluatorKind::FlCom,
            _ => EvaluatorKind::Bitpacked,
        });
    }
    for (eq, kind) in [
        (Equation::Com, EvaluatorKind::Commutative),
        (Equation::Li, EvaluatorKind::Li),
        (Equation::LiCom, EvaluatorKind::LiCom),
    ] {
        if check_equation(&algebra, eq)?.passed() {
            return Ok(kind);
        }
    }
    Ok(EvaluatorKind::Bitpacked)
}

fn plan_for(loaded: &Loaded, as_: Option<AsArg>, name: &str) -> Result<Plan, Failure> {
    let kind = if name == "auto" {
        auto_kind(loaded, as_)?
    } else {
        name.parse::<EvaluatorKind>()
            .map_err(|_| Failure::Load(format!("unknown evaluator {name:?}")))?
    };
    Ok(Plan::new(kind, &loaded.subject())?)
}

fn cmd_eval(args: &SubjectArgs, trace: &PathBuf, evaluator: &str, out: &mut dyn Write) -> Outcome {
    let loaded = load(args)?;
    let subject = loaded.subject();
    let plan = plan_for(&loaded, args.as_, evaluator)?;
    let text = fs::read_to_string(trace)
        .map_err(|e| Failure::Load(format!("{}: {e}", trace.display())))?;
    let trace = StreamTrace::parse(&text, &subject).map_err(|e| Failure::Load(e.to_string()))?;
    let mut e = plan.start(trace.n);
    let mut max_bits = e.state_bits();
    for ev in trace.events() {
        e.feed(ev)?;
        max_bits = max_bits.max(e.state_bits());
    }
    let answer = e.finish()?;
    emit!(out, "evaluator: {}", plan.kind())?;
    emit!(out, "answer: {}", subject.describe(answer))?;
    emit!(out, "max_state_bits: {max_bits}")
}

fn parse_word(subject: &Subject, text: &str) -> Result<Vec<usize>, Failure> {
    let tokens: Vec<String> = if text.split_whitespace().count() > 1 {
        text.split_whitespace().map(str::to_string).collect()
    } else {
        text.chars().map(String::from).collect()
    };
    tokens
        .iter()
        .map(|t| {
            subject
                .letter_index(t)
                .ok_or_else(|| Failure::Load(format!("unknown letter {t:?}")))
        })
        .collect()
}

fn cmd_trace(args: &SubjectArgs, word: &str, order: OrderArg, seed: u64, out: &mut dyn Write) -> Outcome {
    let subject = load(args)?.subject();
    let word = parse_word(&subject, word)?;
    let kind = match order {
        OrderArg::Identity => PermKind::Identity,
        OrderArg::Reverse => PermKind::Reverse,
        OrderArg::Random => PermKind::Random { seed },
        OrderArg::EvensOdds => PermKind::EvensThenOdds,
    };
    let order = make_permutation(&PermutationSpec::new(kind, word.len()));
    write!(out, "{}", StreamTrace::from_order(&word, &order).render(&subject))
        .map_err(|e| Failure::Load(e.to_string()))
}

/// `start:end:xF` (geometric) or `a,b,c`.
fn parse_schedule(text: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::Load(format!("bad schedule {text:?}"));
    let parts: Vec<&str> = text.split(':').collect();
    let schedule: Vec<usize> = match parts.as_slice() {
        [start, end, factor] => {
            let start: usize = start.parse().map_err(|_| bad())?;
            let end: usize = end.parse().map_err(|_| bad())?;
            let factor: usize = factor.strip_prefix('x').unwrap_or(factor).parse().map_err(|_| bad())?;
            if start == 0 || factor < 2 {
                return Err(bad());
            }
            std::iter::successors(Some(start), |&n| n.checked_mul(factor))
                .take_while(|&n| n <= end)
                .collect()
        }
        [list] => list
            .split(',')
            .map(|v| v.trim().parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?,
        _ => return Err(bad()),
    };
    if schedule.is_empty() || schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(bad());
    }
    Ok(schedule)
}

fn cmd_measure(
    args: &SubjectArgs,
    evaluator: &str,
    n: &str,
    words: usize,
    csv: Option<&PathBuf>,
    seed: u64,
    out: &mut dyn Write,
) -> Outcome {
    let loaded = load(args)?;
    let subject = loaded.subject();
    let plan = plan_for(&loaded, args.as_, evaluator)?;
    let mut cfg = ProfileConfig::new(subject.alphabet_size());
    cfg.schedule = parse_schedule(n)?;
    cfg.words_per_n = words.max(1);
    cfg.seed = seed;
    let profile = growth_profile(&|n| plan.start(n), &cfg)?;
    let table = profile.to_csv();
    match csv {
        Some(path) => fs::write(path, &table)
            .map_err(|e| Failure::Load(format!("{}: {e}", path.display())))?,
        None => write!(out, "{table}").map_err(|e| Failure::Load(e.to_string()))?,
    }
    emit!(out, "evaluator: {}", plan.kind())?;
    emit!(out, "model: {}", profile.model())?;
    emit!(out, "fit_error: {:.4}", profile.fit_error())?;
    emit!(out, "note: samples are consistent with {} growth; a profile does not prove a bound", profile.model())
}

fn emit_record(out: &mut dyn Write, r: &FailureRecord, subject: &Subject) -> Outcome {
    let letters: Vec<String> = r.word.iter().map(|&a| subject.letter_name(a)).collect();
    emit!(out, "word: {}", letters.join(" "))?;
    emit!(out, "order: {:?}", r.permutation.kind)?;
    emit!(out, "expected: {}", r.expected)?;
    emit!(out, "got: {}", r.got)
}

fn cmd_campaign(
    args: &SubjectArgs,
    evaluator: &str,
    cfg: &CampaignConfig,
    replay_out: Option<&PathBuf>,
    out: &mut dyn Write,
) -> Outcome {
    let loaded = load(args)?;
    let subject = loaded.subject();
    let plan = plan_for(&loaded, args.as_, evaluator)?;
    let report = differential_campaign(&|n| plan.start(n), &subject, &loaded.label(args), cfg);
    emit!(out, "evaluator: {}", plan.kind())?;
    emit!(out, "runs: {}", report.runs)?;
    let Some(record) = report.failure else {
        return emit!(out, "campaign: pass");
    };
    emit!(out, "campaign: fail")?;
    emit_record(out, &record, &subject)?;
    if let Some(path) = replay_out {
        fs::write(path, record.to_json()).map_err(|e| Failure::Load(format!("{}: {e}", path.display())))?;
        emit!(out, "replay: {}", path.display())?;
    }
    Err(Failure::Check("evaluator disagrees with the reference".into()))
}

fn cmd_replay(args: &SubjectArgs, evaluator: &str, file: &PathBuf, out: &mut dyn Write) -> Outcome {
    let loaded = load(args)?;
    let subject = loaded.subject();
    let plan = plan_for(&loaded, args.as_, evaluator)?;
    let text = fs::read_to_string(file).map_err(|e| Failure::Load(format!("{}: {e}", file.display())))?;
    let record = FailureRecord::from_json(&text).map_err(|e| Failure::Load(format!("{}: {e}", file.display())))?;
    let k = subject.alphabet_size();
    if record.permutation.n != record.word.len() || record.word.iter().any(|&a| a >= k) {
        return Err(Failure::Load(format!("{}: record does not fit the subject", file.display())));
    }
    emit!(out, "evaluator: {}", plan.kind())?;
    match replay(&|n| plan.start(n), &subject, &record) {
        None => emit!(out, "reproduced: no"),
        Some(r) => {
            emit!(out, "reproduced: yes")?;
            emit_record(out, &r, &subject)?;
            Err(Failure::Check("discrepancy reproduced".into()))
        }
    }
}

fn parse_construction(name: &str) -> Result<Construction, Failure> {
    name.parse().map_err(|e: FoolingError| Failure::Load(e.to_string()))
}

fn cmd_fool(
    construction: &str,
    n: usize,
    verify: bool,
    dump: bool,
    pair_cap: u64,
    seed: u64,
    out: &mut dyn Write,
) -> Outcome {
    let c = parse_construction(construction)?;
    let f = standard_instance(c, n)?;
    emit!(out, "construction: {c}")?;
    emit!(out, "words: {}", f.size())?;
    emit!(out, "length: {}", f.length)?;
    emit!(out, "bound_bits: {}", f.bound_bits())?;
    if dump {
        for (i, w) in f.words.iter().enumerate() {
            emit!(out, "# word {i}")?;
            emit!(out, "n={}", f.length)?;
            for (p, cell) in render_partial(w, &f.subject).split(' ').enumerate() {
                emit!(out, "{} {cell}", p + 1)?;
            }
        }
    }
    if verify {
        let report = verify_fooling_set(&f, &f.subject, pair_cap, seed)?;
        emit!(out, "pairs_checked: {}", report.pairs_checked)?;
        emit!(out, "exhaustive: {}", report.exhaustive)?;
        match report.counterexample {
            None => emit!(out, "verify: pass")?,
            Some((i, j)) => {
                emit!(out, "verify: fail")?;
                emit!(out, "counterexample: {i} {j}")?;
                return Err(Failure::Check(format!("pair ({i}, {j}) is not separated")));
            }
        }
    }
    Ok(())
}

fn cmd_oracle(check: OracleCommand, out: &mut dyn Write) -> Outcome {
    match check {
        OracleCommand::LowerBound { subject, n, domain } => {
            let (construction_subject, construction_len, positions) = match domain.strip_prefix("fooling:") {
                Some(spec) => {
                    let (name, size) = spec
                        .rsplit_once(':')
                        .ok_or_else(|| Failure::Load(format!("bad domain {domain:?}")))?;
                    let size: usize = size.parse().map_err(|_| Failure::Load(format!("bad domain {domain:?}")))?;
                    let f = standard_instance(parse_construction(name)?, size)?;
                    (Some(f.subject.clone()), Some(f.length), f.domain.clone())
                }
                None => {
                    let positions = domain
                        .split(',')
                        .filter(|t| !t.trim().is_empty())
                        .map(|t| t.trim().parse::<usize>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| Failure::Load(format!("bad domain {domain:?}")))?;
                    (None, None, positions)
                }
            };
            let target = if subject.regex.is_some() || subject.semigroup_file.is_some() {
                load(&subject)?.subject()
            } else {
                construction_subject.ok_or_else(|| Failure::Load("no subject given".into()))?
            };
            let n = n
                .or(construction_len)
                .ok_or_else(|| Failure::Load("--n is required".into()))?;
            let bound = one_way_lower_bound(&target, n, &positions, OracleCaps::default())?;
            emit!(out, "classes: {}", bound.classes)?;
            emit!(out, "bits: {}", bound.bits)?;
            emit!(out, "bound: ≥ {} bits", bound.bits)
        }
        OracleCommand::SumOfSquares { max } => match check_sum_of_squares_lemma(max)? {
            None => emit!(out, "sum-of-squares: pass"),
            Some(c) => {
                emit!(out, "sum-of-squares: fail")?;
                emit!(out, "counterexample: X={:?} I=[{}, {}]", c.x, c.interval.0, c.interval.1)?;
                Err(Failure::Check("lemma violated".into()))
            }
        },
        OracleCommand::FlPreservation { subject, k, max_len } => {
            let loaded = load(&subject)?;
            let (m, _) = algebra_of(&loaded, Some(AsArg::Monoid))?;
            let k = k.unwrap_or(m.size());
            match check_fl_preservation(&m, k, max_len) {
                None => emit!(out, "fl-preservation: pass"),
                Some(w) => {
                    let names: Vec<&str> = w.iter().map(|&e| m.name(e)).collect();
                    emit!(out, "fl-preservation: fail")?;
                    emit!(out, "counterexample: {}", names.join(" "))?;
                    Err(Failure::Check("product changed".into()))
                }
            }
        }
        OracleCommand::Pumping { subject, cap, seed } => {
            let loaded = load(&subject)?;
            let (s, _) = algebra_of(&loaded, Some(subject.as_.unwrap_or(AsArg::Semigroup)))?;
            let report = check_pumping_claim(&s, cap, seed);
            emit!(out, "words_checked: {}", report.words_checked)?;
            emit!(out, "exhaustive: {}", report.exhaustive)?;
            match report.counterexample {
                None => emit!(out, "pumping: pass"),
                Some(w) => {
                    let names: Vec<&str> = w.iter().map(|&e| s.name(e)).collect();
                    emit!(out, "pumping: fail")?;
                    emit!(out, "counterexample: {}", names.join(" "))?;
                    Err(Failure::Check("decomposition mismatch".into()))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedules() {
        assert_eq!(parse_schedule("16:128:x2").unwrap(), vec![16, 32, 64, 128]);
        assert_eq!(parse_schedule("3,5,9").unwrap(), vec![3, 5, 9]);
        assert!(parse_schedule("5,3").is_err());
        assert!(parse_schedule("0:10:x2").is_err());
    }
}
