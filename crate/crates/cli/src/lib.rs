//! Command-line front end: argument definitions, command runners, and output
//! formatting. `main.rs` only parses arguments and prints.

pub mod parse;
pub mod verify;

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclic_descents::{
    capital_phi, capital_psi_d, capital_psi_dbar, check_order_swap_properties, colored_phi,
    colored_psi, descent_set, exact_distribution, normality_diagnostics, phi_classic,
    phi_classic_instrumented, phi_plus, psi_plus, refined_descent_table, sample_many, stats,
    to_canonical_cycles, ColoredPermutation, DomainKind, DomainSpec, Element, Error,
    SignedPermutation, Statistic, TransferTrace,
};
use serde_json::{json, Value};
use thiserror::Error;

pub use parse::{parse_colored, parse_permutation_text, parse_signed, ParseError, PermText};
pub use verify::{parse_shard, run_verify, Claim, Shard, VerifyConfig, VerifyReport};

#[derive(Debug, Parser)]
#[command(name = "cycdes", version, about = "Descent-preserving maps on cyclic signed permutations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads for parallel work. Output does not depend on this.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply a map to a permutation.
    Map(MapArgs),
    /// Preimages under a forward map, confirmed by mapping back.
    Invert(MapArgs),
    /// Print des, maj, neg and fmaj.
    Stats(StatsArgs),
    /// Check a claim exhaustively, on a shard, or on seeded samples.
    Verify(VerifyArgs),
    /// Exact distribution or descent-set table over a domain.
    Tabulate(TabulateArgs),
    /// Uniform random elements of a domain.
    Sample(SampleArgs),
    /// Normality diagnostics of a statistic on a cyclic domain.
    Clt(CltArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MapFn {
    #[value(name = "phi")]
    PhiPlus,
    #[value(name = "Phi")]
    Phi,
    #[value(name = "psi")]
    Psi,
    #[value(name = "PsiD")]
    PsiD,
    #[value(name = "PsiDbar")]
    PsiDbar,
    #[value(name = "phiS")]
    PhiS,
    #[value(name = "PhiColored")]
    PhiColored,
    #[value(name = "PsiColored")]
    PsiColored,
}

impl MapFn {
    fn colored(self) -> bool {
        matches!(self, MapFn::PhiColored | MapFn::PsiColored)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Notation {
    #[default]
    OneLine,
    Cycles,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Domain {
    #[value(name = "B")]
    B,
    #[value(name = "D")]
    D,
    #[value(name = "CB")]
    Cb,
    #[value(name = "CD")]
    Cd,
    #[value(name = "CDbar")]
    CdBar,
    #[value(name = "S")]
    S,
    #[value(name = "CS")]
    Cs,
    #[value(name = "CSnr")]
    CsNr,
}

impl Domain {
    fn kind(self) -> DomainKind {
        match self {
            Domain::B => DomainKind::B,
            Domain::D => DomainKind::D,
            Domain::Cb => DomainKind::CB,
            Domain::Cd => DomainKind::CD,
            Domain::CdBar => DomainKind::CDbar,
            Domain::S => DomainKind::S,
            Domain::Cs => DomainKind::CS,
            Domain::CsNr => DomainKind::CSnr,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Stat {
    Des,
    Maj,
    Neg,
    Fmaj,
}

impl From<Stat> for Statistic {
    fn from(s: Stat) -> Self {
        match s {
            Stat::Des => Statistic::Des,
            Stat::Maj => Statistic::Maj,
            Stat::Neg => Statistic::Neg,
            Stat::Fmaj => Statistic::Fmaj,
        }
    }
}

#[derive(Debug, Args)]
pub struct MapArgs {
    #[arg(long = "fn", value_enum)]
    pub func: MapFn,
    /// Permutation in one-line `[..]` or cycle `(..)(..)` notation.
    pub input: String,
    /// Number of colors for the colored maps.
    #[arg(long, default_value_t = 2)]
    pub r: u32,
    /// Target color for the colored inverse.
    #[arg(long, default_value_t = 0)]
    pub color: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, value_enum, default_value_t = Notation::OneLine)]
    pub notation: Notation,
    /// Omit fixed points when printing cycle notation as text.
    #[arg(long)]
    pub pretty: bool,
    /// Record the run and check its internal invariants.
    #[arg(long)]
    pub instrument: bool,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    pub input: String,
    /// Read the input as a colored permutation with `--r` colors.
    #[arg(long)]
    pub colored: bool,
    #[arg(long, default_value_t = 2)]
    pub r: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub claim: Claim,
    /// Degree of the non-cyclic side; cyclic inputs have degree n + 1.
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub r: u32,
    /// Check only shard i of t, written `i/t`.
    #[arg(long, value_parser = parse_shard)]
    pub shard: Option<Shard>,
    #[arg(long)]
    pub instrument: bool,
    /// Allow exhaustive runs above 2^32 elements.
    #[arg(long)]
    pub allow_big: bool,
    /// Check this many seeded random inputs instead of all of them.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 2025)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct DomainArgs {
    #[arg(long, value_enum)]
    pub domain: Domain,
    #[arg(long)]
    pub n: usize,
    /// Number of colors, CSnr only.
    #[arg(long, default_value_t = 2)]
    pub r: u32,
    /// Required total color, CSnr only.
    #[arg(long)]
    pub color: Option<u32>,
}

impl DomainArgs {
    fn spec(&self) -> Result<DomainSpec, Error> {
        match self.domain {
            Domain::CsNr => DomainSpec::colored(self.n, self.r, self.color),
            other => DomainSpec::new(other.kind(), self.n),
        }
    }
}

#[derive(Debug, Args)]
pub struct TabulateArgs {
    #[command(flatten)]
    pub domain: DomainArgs,
    #[arg(long, value_enum, default_value_t = Stat::Des)]
    pub stat: Stat,
    /// Count by descent set instead of by a statistic.
    #[arg(long)]
    pub refined: bool,
    #[arg(long)]
    pub allow_big: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub domain: DomainArgs,
    #[arg(long, default_value_t = 10)]
    pub samples: usize,
    #[arg(long, default_value_t = 2025)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, value_enum, default_value_t = Notation::OneLine)]
    pub notation: Notation,
    #[arg(long)]
    pub pretty: bool,
}

#[derive(Debug, Args)]
pub struct CltArgs {
    #[arg(long, value_enum, default_value_t = Domain::Cb)]
    pub domain: Domain,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Stat::Des)]
    pub stat: Stat,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 2025)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Standard output and exit status of a successful command run. Status 1
/// means a checked property failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.threads {
        Some(0) => Err(CliError::Usage("--threads must be positive".into())),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            pool.install(|| dispatch(cli.command))
        }
        None => dispatch(cli.command),
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_args<I, T>(args: I) -> Result<Outcome, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Usage(e.to_string()))?;
    run(cli)
}

fn dispatch(cmd: Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Map(a) => run_map(&a),
        Command::Invert(a) => run_invert(&a),
        Command::Stats(a) => run_stats(&a),
        Command::Verify(a) => run_verify_cmd(&a),
        Command::Tabulate(a) => run_tabulate(&a),
        Command::Sample(a) => run_sample(&a),
        Command::Clt(a) => run_clt(&a),
    }
}

fn render_signed(s: &SignedPermutation, notation: Notation, pretty: bool) -> String {
    match notation {
        Notation::OneLine => s.to_string(),
        Notation::Cycles if pretty => to_canonical_cycles(s).pretty(),
        Notation::Cycles => to_canonical_cycles(s).to_string(),
    }
}

fn render_colored(c: &ColoredPermutation, notation: Notation) -> String {
    match notation {
        Notation::OneLine => c.to_string(),
        Notation::Cycles => c.cycle_string(),
    }
}

fn render_element(e: &Element, notation: Notation, pretty: bool) -> String {
    match e {
        Element::Signed(s) => render_signed(s, notation, pretty),
        Element::Colored(c) => render_colored(c, notation),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn emit(format: Format, text: String, json: Value, csv: String) -> String {
    match format {
        Format::Text => text,
        Format::Json => format!("{json}\n"),
        Format::Csv => csv,
    }
}

/// Result of one map application plus any instrumentation notes.
struct Mapped {
    output: Element,
    notes: Vec<String>,
}

fn apply(func: MapFn, input: &Element, color: u32, instrument: bool) -> Result<Mapped, CliError> {
    let signed_input = || input.as_signed().expect("signed input");
    let plain = |s: SignedPermutation| Mapped { output: Element::Signed(s), notes: Vec::new() };
    Ok(match func {
        MapFn::PhiPlus if instrument => {
            let pi = signed_input();
            let mut trace = TransferTrace::enabled();
            let out = phi_plus(pi, Some(&mut trace))?;
            let mut notes: Vec<String> = check_order_swap_properties(pi, &trace)
                .into_iter()
                .map(|v| format!("violation {} at step {}: {}", v.property, v.step, v.detail))
                .collect();
            if out != phi_plus(pi, None)? {
                notes.push("traced output differs from the plain run".into());
            }
            Mapped { output: Element::Signed(out), notes }
        }
        MapFn::PhiPlus => plain(phi_plus(signed_input(), None)?),
        MapFn::Phi => plain(capital_phi(signed_input())?),
        MapFn::Psi => plain(psi_plus(signed_input(), None)),
        MapFn::PsiD => plain(capital_psi_d(signed_input())),
        MapFn::PsiDbar => plain(capital_psi_dbar(signed_input())),
        MapFn::PhiS if instrument => {
            let (out, audit) = phi_classic_instrumented(signed_input())?;
            Mapped { output: Element::Signed(out), notes: audit }
        }
        MapFn::PhiS => plain(phi_classic(signed_input())?),
        MapFn::PhiColored => Mapped {
            output: Element::Colored(colored_phi(input.as_colored().expect("colored input"))?),
            notes: Vec::new(),
        },
        MapFn::PsiColored => Mapped {
            output: Element::Colored(colored_psi(input.as_colored().expect("colored input"), color)?),
            notes: Vec::new(),
        },
    })
}

fn read_input(func: MapFn, text: &str, r: u32) -> Result<Element, CliError> {
    Ok(if func.colored() {
        Element::Colored(parse_colored(text, r)?)
    } else {
        Element::Signed(parse_signed(text)?)
    })
}

fn map_output(a: &MapArgs, input: &Element, outputs: &[Element], notes: &[String], ok: bool) -> Outcome {
    let rendered: Vec<String> = outputs.iter().map(|e| render_element(e, a.notation, a.pretty)).collect();
    let mut text = String::new();
    for r in &rendered {
        let _ = writeln!(text, "{r}");
    }
    for n in notes {
        let _ = writeln!(text, "# {n}");
    }
    if a.instrument && notes.is_empty() {
        text.push_str("# no violations\n");
    }
    let json = json!({
        "fn": a.func.to_possible_value().map(|v| v.get_name().to_string()),
        "input": render_element(input, a.notation, a.pretty),
        "output": if rendered.len() == 1 { json!(rendered[0]) } else { json!(rendered) },
        "notes": notes,
        "ok": ok,
    });
    let mut csv = String::from("input,output\n");
    for r in &rendered {
        let _ = writeln!(csv, "{},{}", csv_field(&render_element(input, a.notation, a.pretty)), csv_field(r));
    }
    Outcome { stdout: emit(a.format, text, json, csv), code: if ok { 0 } else { 1 } }
}

pub fn run_map(a: &MapArgs) -> Result<Outcome, CliError> {
    let input = read_input(a.func, &a.input, a.r)?;
    let m = apply(a.func, &input, a.color, a.instrument)?;
    let ok = m.notes.is_empty();
    Ok(map_output(a, &input, &[m.output], &m.notes, ok))
}

/// Preimages of the input under a forward map, computed with the matching
/// inverse and confirmed by mapping back. `phi` and `psi` name the pair
/// (`psi`, `phi`); `Phi` gives both preimages (`PsiD` and `PsiDbar`); `PsiD`
/// and `PsiDbar` give one each; `phiS` uses `psi` and checks with `phiS`; the
/// colored pair uses the colored inverse with `--color`.
pub fn run_invert(a: &MapArgs) -> Result<Outcome, CliError> {
    let input = read_input(a.func, &a.input, a.r)?;
    let (inverse, forward) = match a.func {
        MapFn::PhiPlus | MapFn::Psi => (vec![MapFn::Psi], MapFn::PhiPlus),
        MapFn::Phi => (vec![MapFn::PsiD, MapFn::PsiDbar], MapFn::Phi),
        MapFn::PsiD | MapFn::PsiDbar => (vec![a.func], MapFn::Phi),
        MapFn::PhiS => (vec![MapFn::Psi], MapFn::PhiS),
        MapFn::PhiColored | MapFn::PsiColored => (vec![MapFn::PsiColored], MapFn::PhiColored),
    };
    let mut outputs = Vec::new();
    let mut notes = Vec::new();
    for g in inverse {
        let pre = apply(g, &input, a.color, false)?.output;
        let back = apply(forward, &pre, a.color, false).map(|m| m.output);
        match back {
            Ok(b) if b == input => {}
            Ok(b) => notes.push(format!("round trip failed: {pre} maps to {b}")),
            Err(e) => notes.push(format!("round trip failed: {pre}: {e}")),
        }
        outputs.push(pre);
    }
    let ok = notes.is_empty();
    Ok(map_output(a, &input, &outputs, &notes, ok))
}

pub fn run_stats(a: &StatsArgs) -> Result<Outcome, CliError> {
    if a.colored {
        let c = parse_colored(&a.input, a.r)?;
        let s = c.stats();
        let descents = c.descent_set();
        let json = json!({"des": s.des, "maj": s.maj, "col": s.col, "fmaj": s.fmaj, "descents": descents});
        let csv = format!("des,maj,col,fmaj\n{},{},{},{}\n", s.des, s.maj, s.col, s.fmaj);
        return Ok(Outcome::ok(emit(a.format, format!("{s}\n"), json, csv)));
    }
    let sigma = parse_signed(&a.input)?;
    let s = stats(&sigma);
    let descents: Option<Vec<usize>> = descent_set(&sigma).ok().map(|d| d.members());
    let json = json!({"des": s.des, "maj": s.maj, "neg": s.neg, "fmaj": s.fmaj, "descents": descents});
    let csv = format!("des,maj,neg,fmaj\n{},{},{},{}\n", s.des, s.maj, s.neg, s.fmaj);
    Ok(Outcome::ok(emit(a.format, format!("{s}\n"), json, csv)))
}

pub fn run_verify_cmd(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let cfg = VerifyConfig {
        claim: a.claim,
        n: a.n,
        r: a.r,
        shard: a.shard.unwrap_or(Shard::WHOLE),
        instrument: a.instrument,
        allow_big: a.allow_big,
        samples: a.samples,
        seed: a.seed,
    };
    let report = run_verify(&cfg)?;
    let text = verify::report_text(&report);
    let json = verify::report_json(&report);
    let mut csv = String::from("claim,n,shard,checked,result,counterexample\n");
    let _ = writeln!(
        csv,
        "{},{},{}/{},{},{},{}",
        report.claim.name(),
        report.n,
        report.shard.index,
        report.shard.total,
        report.checked,
        if report.passed() { "PASS" } else { "FAIL" },
        csv_field(report.counterexample.as_deref().unwrap_or(""))
    );
    Ok(Outcome { stdout: emit(a.format, text, json, csv), code: if report.passed() { 0 } else { 1 } })
}

fn domain_json(d: &DomainSpec, stat: &str, counts: serde_json::Map<String, Value>) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert("domain".into(), json!(d.kind.name()));
    obj.insert("n".into(), json!(d.n));
    if d.kind == DomainKind::CSnr {
        obj.insert("r".into(), json!(d.r));
        obj.insert("color".into(), json!(d.color_filter));
    }
    obj.insert("stat".into(), json!(stat));
    obj.insert("counts".into(), Value::Object(counts));
    Value::Object(obj)
}

pub fn run_tabulate(a: &TabulateArgs) -> Result<Outcome, CliError> {
    let d = a.domain.spec()?;
    let (stat, rows): (String, Vec<(String, String)>) = if a.refined {
        let t = refined_descent_table(&d, a.allow_big)?;
        ("descent-set".into(), t.counts.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect())
    } else {
        let stat = Statistic::from(a.stat);
        let t = exact_distribution(&d, stat, a.allow_big)?;
        (stat.name().into(), t.counts.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect())
    };
    let counts: serde_json::Map<String, Value> =
        rows.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
    let mut text = format!("# {d} {stat}\n");
    let mut csv = String::from("value,count\n");
    for (k, v) in &rows {
        let _ = writeln!(text, "{k}\t{v}");
        let _ = writeln!(csv, "{},{v}", csv_field(k));
    }
    Ok(Outcome::ok(emit(a.format, text, domain_json(&d, &stat, counts), csv)))
}

pub fn run_sample(a: &SampleArgs) -> Result<Outcome, CliError> {
    let d = a.domain.spec()?;
    let elements = sample_many(&d, a.samples, a.seed)?;
    let rendered: Vec<String> = elements.iter().map(|e| render_element(e, a.notation, a.pretty)).collect();
    let mut text = String::new();
    let mut csv = String::from("index,element\n");
    for (i, r) in rendered.iter().enumerate() {
        let _ = writeln!(text, "{r}");
        let _ = writeln!(csv, "{i},{}", csv_field(r));
    }
    let json = json!({"domain": d.kind.name(), "n": d.n, "seed": a.seed, "elements": rendered});
    Ok(Outcome::ok(emit(a.format, text, json, csv)))
}

pub fn run_clt(a: &CltArgs) -> Result<Outcome, CliError> {
    let d = DomainSpec::new(a.domain.kind(), a.n)?;
    let r = normality_diagnostics(&d, a.stat.into(), a.samples, a.seed)?;
    let json = json!({
        "domain": d.kind.name(),
        "n": r.n,
        "stat": r.stat.name(),
        "sample_count": r.sample_count,
        "seed": r.seed,
        "mean": r.mean,
        "variance": r.variance,
        "theoretical_mean": r.theoretical_mean,
        "theoretical_variance": r.theoretical_variance,
        "skewness": r.skewness,
        "excess_kurtosis": r.excess_kurtosis,
        "ks": r.ks,
        "ks_continuity": r.ks_continuity,
    });
    let mut text = String::new();
    if let Value::Object(m) = &json {
        for (k, v) in m {
            let v = v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string());
            let _ = writeln!(text, "{k}={v}");
        }
    }
    let csv = format!(
        "domain,n,stat,samples,seed,mean,variance,skewness,excess_kurtosis,ks,ks_continuity\n{},{},{},{},{},{},{},{},{},{},{}\n",
        d.kind.name(),
        r.n,
        r.stat.name(),
        r.sample_count,
        r.seed,
        r.mean,
        r.variance,
        r.skewness,
        r.excess_kurtosis,
        r.ks,
        r.ks_continuity
    );
    Ok(Outcome::ok(emit(a.format, text, json, csv)))
}
