//! Command-line front end. [`run`] takes the argument vector and returns a
//! [`CommandResult`]; the binary only prints it and exits with its code.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use pcpk::construct::{
    check_claim, parse_certificate, pcp_kernel_bipartite, pcp_kernel_of_cycle, pcp_kernel_of_unicyclic,
    pcp_kernel_semicomplete, reduction_kernel_to_pathkernel, solve_pcp, solve_pcp_exact, ClaimVerdict,
    ConstructError, PcpKernelCertificate, Route,
};
use pcpk::graph::{
    bipartite_partition, classify, family_instance, generate, named_instance, parse, serialize, to_dot,
    ColoredDigraph, ConnectPolicy, Family, GeneratorKind, GraphError, ParseError, NAMED_INSTANCES,
};
use pcpk::kernel::PlainDigraph;
use pcpk::lab::{
    all_cycles_properly_colored, fuzz_conjecture, has_monochromatic_triangle, k_cycles_properly_colored,
    sweep_theorem, CheckReport, FuzzParams, LabError, SweepParams, TheoremId,
};
use pcpk::reach::{closure, PathMode, ReachError};
use serde::Serialize;

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_NOT_APPLICABLE: i32 = 2;
pub const EXIT_COUNTEREXAMPLE: i32 = 10;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_PARSE: i32 = 65;
pub const EXIT_NO_INPUT: i32 = 66;
pub const EXIT_BUDGET: i32 = 70;

/// What a command produced. `payload` is the machine-readable output;
/// `summary` is one human-readable line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub summary: String,
    pub payload: Option<String>,
    /// Set when `--out` was given and the payload was written there.
    pub written_to: Option<PathBuf>,
}

impl CommandResult {
    fn new(code: i32, summary: impl Into<String>, payload: Option<String>) -> Self {
        CommandResult { code, summary: summary.into(), payload, written_to: None }
    }

    fn error(e: CliError) -> Self {
        CommandResult::new(e.code, e.msg, None)
    }
}

#[derive(Debug)]
struct CliError {
    code: i32,
    msg: String,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, msg: format!("usage error: {}", msg.into()) }
    }

    fn parse(msg: impl std::fmt::Display) -> Self {
        CliError { code: EXIT_PARSE, msg: format!("parse error: {msg}") }
    }

    fn not_applicable(msg: impl std::fmt::Display) -> Self {
        CliError { code: EXIT_NOT_APPLICABLE, msg: format!("not applicable: {msg}") }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::parse(e)
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::BadParameter(_) | GraphError::UnknownInstance(_) => CliError::usage(e.to_string()),
            other => CliError::parse(other),
        }
    }
}

impl From<ConstructError> for CliError {
    fn from(e: ConstructError) -> Self {
        use ConstructError::*;
        match e {
            BudgetExceeded(_) => CliError { code: EXIT_BUDGET, msg: e.to_string() },
            NotACycle | NotUnicyclic | CycleNotProperlyColored | NotSemiComplete | NotBipartiteTournament
            | NoApplicableCondition => CliError::not_applicable(e),
            BadParameter(_) | EmptyDigraph | VertexOutOfRange(_) => CliError::usage(e.to_string()),
            Internal(_) => CliError { code: EXIT_BUDGET, msg: e.to_string() },
        }
    }
}

impl From<ReachError> for CliError {
    fn from(e: ReachError) -> Self {
        ConstructError::from(e).into()
    }
}

impl From<LabError> for CliError {
    fn from(e: LabError) -> Self {
        match e {
            LabError::BadParameter(_) | LabError::UnknownProperty(_) => CliError::usage(e.to_string()),
            LabError::Graph(g) => g.into(),
            LabError::Parse(p) => p.into(),
            LabError::Construct(c) => c.into(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "pcpk", version, about = "Kernels by properly colored paths in arc-colored digraphs")]
struct Cli {
    /// Write the payload to this file instead of standard output.
    #[arg(short, long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a digraph and re-emit it as canonical ACD or as DOT.
    Parse {
        input: String,
        #[arg(long, value_enum, default_value_t = GraphFormat::Acd)]
        to: GraphFormat,
    },
    /// Emit the closure digraph (all arcs color 1) with one witness path per arc.
    Closure {
        input: String,
        #[arg(long, value_enum, default_value_t = Mode::Pc)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = GraphFormat::Acd)]
        to: GraphFormat,
        /// Write the witness lines to this file instead of appending them as comments.
        #[arg(long, value_name = "FILE")]
        witness: Option<PathBuf>,
    },
    /// Find a kernel by properly colored (or rainbow) paths, or report that none exists.
    Solve {
        input: String,
        #[arg(long, value_enum, default_value_t = Mode::Pc)]
        mode: Mode,
        /// Skip the class constructors and solve on the closure.
        #[arg(long, conflicts_with = "class")]
        exact: bool,
        /// Run one class constructor; exit 2 if the digraph is not in the class.
        #[arg(long, value_enum)]
        class: Option<Class>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Re-check a certificate file against a digraph.
    Verify { input: String, certificate: PathBuf },
    /// Check a cycle condition or print the structural class flags.
    Check {
        #[arg(value_enum)]
        what: CheckKind,
        input: String,
        /// Cycle lengths for `k-cycles-pc`, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "4,6")]
        k: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Emit a named instance, a family member, or a generated digraph.
    Instance(InstanceArgs),
    /// Build the hardness gadget from a digraph (colors of the input are ignored).
    Reduce {
        input: String,
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long, value_enum, default_value_t = Mode::Pc)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = GraphFormat::Acd)]
        to: GraphFormat,
    },
    /// Search random digraphs whose cycles are all properly colored for one without a kernel.
    Fuzz {
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; 0 lets the pool decide.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Digraphs examined before the generated ones.
        #[arg(long, value_name = "INPUT")]
        inject: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run one theorem sweep.
    Sweep {
        theorem: String,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        m: u32,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args, Debug)]
struct InstanceArgs {
    /// Named instance, family (`remark1-even`, `remark1-odd`, `remark4`) or generator kind.
    name: String,
    #[command(flatten)]
    gen: GenArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Base digraph for `remark4`.
    #[arg(long, value_name = "INPUT")]
    base: Option<String>,
    /// Colors of the `remark4` connecting arcs: `constant:C`, `cyclic:K` or `random:K`.
    #[arg(long, default_value = "constant:1")]
    policy: String,
    #[arg(long, value_enum, default_value_t = GraphFormat::Acd)]
    to: GraphFormat,
}

#[derive(Args, Debug, Clone)]
struct GenArgs {
    /// Generator kind, for `fuzz` and generated instances.
    #[arg(long, value_enum, default_value_t = GenKind::RandomDigraph)]
    kind: GenKind,
    #[arg(long, default_value_t = 6)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    nx: usize,
    #[arg(long, default_value_t = 3)]
    ny: usize,
    #[arg(long, default_value_t = 3)]
    m: u32,
    /// Arc probability.
    #[arg(long, default_value_t = 0.3)]
    p: f64,
    /// Probability of a reverse arc in semi-complete digraphs.
    #[arg(long, default_value_t = 0.25)]
    double: f64,
    /// Force the unique cycle of a unicyclic digraph to be properly colored.
    #[arg(long)]
    pc_cycle: bool,
    /// Arc colors of `colored-cycle`, comma separated.
    #[arg(long, value_delimiter = ',')]
    colors: Vec<u32>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum GenKind {
    RandomDigraph,
    RandomTournament,
    RandomSemiComplete,
    RandomBipartiteTournament,
    RandomUnicyclic,
    ColoredCycle,
}

impl GenArgs {
    fn kind(&self, kind: GenKind) -> GeneratorKind {
        let (n, m) = (self.n, self.m);
        match kind {
            GenKind::RandomDigraph => GeneratorKind::RandomDigraph { n, arc_prob: self.p, m },
            GenKind::RandomTournament => GeneratorKind::RandomTournament { n, m },
            GenKind::RandomSemiComplete => GeneratorKind::RandomSemiComplete { n, m, double_prob: self.double },
            GenKind::RandomBipartiteTournament => {
                GeneratorKind::RandomBipartiteTournament { nx: self.nx, ny: self.ny, m }
            }
            GenKind::RandomUnicyclic => {
                GeneratorKind::RandomUnicyclic { n, m, arc_prob: self.p, pc_cycle: self.pc_cycle }
            }
            GenKind::ColoredCycle => GeneratorKind::ColoredCycle { colors: self.colors.clone() },
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum GraphFormat {
    Acd,
    Dot,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Pc,
    Rainbow,
}

impl From<Mode> for PathMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Pc => PathMode::ProperlyColored,
            Mode::Rainbow => PathMode::Rainbow,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Class {
    Cycle,
    Unicyclic,
    SemiComplete,
    Bipartite,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum CheckKind {
    AllCyclesPc,
    KCyclesPc,
    MonoTriangle,
    Class,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    CommandResult::new(EXIT_HOLDS, "help", Some(text))
                }
                _ => CommandResult::new(EXIT_USAGE, text.trim_end(), None),
            };
        }
    };
    let mut result = match dispatch(cli.cmd) {
        Ok(r) => r,
        Err(e) => return CommandResult::error(e),
    };
    if let (Some(path), Some(payload)) = (cli.out, &result.payload) {
        if let Err(e) = std::fs::write(&path, payload) {
            return CommandResult::new(EXIT_NO_INPUT, format!("cannot write {}: {e}", path.display()), None);
        }
        result.written_to = Some(path);
    }
    result
}

fn dispatch(cmd: Command) -> Result<CommandResult, CliError> {
    match cmd {
        Command::Parse { input, to } => {
            let d = load(&input)?;
            let summary = format!("valid: n={} arcs={} colors={}", d.n(), d.arc_count(), d.m());
            Ok(CommandResult::new(EXIT_HOLDS, summary, Some(emit(&d, to))))
        }
        Command::Closure { input, mode, to, witness } => cmd_closure(&input, mode.into(), to, witness),
        Command::Solve { input, mode, exact, class, format } => {
            cmd_solve(&input, mode.into(), exact, class, format)
        }
        Command::Verify { input, certificate } => cmd_verify(&input, &certificate),
        Command::Check { what, input, k, format } => cmd_check(what, &input, &k, format),
        Command::Instance(a) => cmd_instance(&a),
        Command::Reduce { input, m, mode, to } => {
            let d = load(&input)?;
            let out = reduction_kernel_to_pathkernel(&PlainDigraph::from_colored(&d), m, mode.into())?;
            let summary = format!(
                "gadget: n={} arcs={} colors={} added={}",
                out.d_prime.n(),
                out.d_prime.arc_count(),
                out.d_prime.m(),
                out.new_vertices.len()
            );
            Ok(CommandResult::new(EXIT_HOLDS, summary, Some(emit(&out.d_prime, to))))
        }
        Command::Fuzz { gen, samples, seed, jobs, inject, format } => {
            let inject = inject.iter().map(|s| load(s)).collect::<Result<Vec<_>, _>>()?;
            let p = FuzzParams { kind: gen.kind(gen.kind), samples, seed, jobs, inject };
            let report = fuzz_conjecture(&p)?;
            Ok(report_result(&report, format, EXIT_COUNTEREXAMPLE))
        }
        Command::Sweep { theorem, n, m, samples, seed, jobs, format } => {
            let id: TheoremId = theorem.parse()?;
            let report = sweep_theorem(id, &SweepParams { n, m, samples, seed, jobs })?;
            Ok(report_result(&report, format, EXIT_FAILS))
        }
    }
}

/// Reads a digraph from a path, `-` (standard input) or `instance:<name>`.
/// Families take their order after a second colon: `instance:remark1-even:8`.
fn load(spec: &str) -> Result<ColoredDigraph, CliError> {
    if let Some(name) = spec.strip_prefix("instance:") {
        return instance_by_name(name);
    }
    let text = if spec == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError { code: EXIT_NO_INPUT, msg: format!("cannot read standard input: {e}") })?;
        s
    } else {
        read_file(Path::new(spec))?
    };
    Ok(parse(&text)?)
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError { code: EXIT_NO_INPUT, msg: format!("cannot read {}: {e}", path.display()) })
}

fn instance_by_name(name: &str) -> Result<ColoredDigraph, CliError> {
    let (base, order) = match name.split_once(':') {
        Some((b, n)) => (b, Some(n.parse::<usize>().map_err(|_| CliError::usage(format!("bad order `{n}`")))?)),
        None => (name, None),
    };
    let family = |n: Option<usize>| n.ok_or_else(|| CliError::usage(format!("`{base}` needs an order, e.g. `{base}:8`")));
    Ok(match base {
        "remark1-even" => family_instance(&Family::Remark1Even(family(order)?))?,
        "remark1-odd" => family_instance(&Family::Remark1Odd(family(order)?))?,
        _ if order.is_none() => named_instance(base)?,
        _ => return Err(CliError::usage(format!("`{base}` takes no order"))),
    })
}

fn emit(d: &ColoredDigraph, to: GraphFormat) -> String {
    match to {
        GraphFormat::Acd => serialize(d),
        GraphFormat::Dot => to_dot(d),
    }
}

fn labels(d: &ColoredDigraph, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| d.label(v).to_string()).collect()
}

fn cmd_closure(
    input: &str,
    mode: PathMode,
    to: GraphFormat,
    witness: Option<PathBuf>,
) -> Result<CommandResult, CliError> {
    let d = load(input)?;
    let c = closure(&d, mode)?;
    let mut payload = emit(&c.to_colored(&d), to);
    let lines = c.witness_lines(&d);
    match witness {
        Some(path) => std::fs::write(&path, &lines)
            .map_err(|e| CliError { code: EXIT_NO_INPUT, msg: format!("cannot write {}: {e}", path.display()) })?,
        None => {
            let comment = if to == GraphFormat::Dot { "//" } else { "#" };
            for l in lines.lines() {
                let _ = writeln!(payload, "{comment} {l}");
            }
        }
    }
    let summary = format!("closure ({}): {} arcs", mode.name(), c.arc_count());
    Ok(CommandResult::new(EXIT_HOLDS, summary, Some(payload)))
}

#[derive(Serialize)]
struct SolveJson<'a> {
    mode: &'static str,
    route: &'static str,
    kernel: Option<Vec<String>>,
    certificate: Option<String>,
    log: &'a [String],
}

fn cmd_solve(
    input: &str,
    mode: PathMode,
    exact: bool,
    class: Option<Class>,
    format: Format,
) -> Result<CommandResult, CliError> {
    let d = load(input)?;
    let (cert, route, log) = if exact {
        (solve_pcp_exact(&d, mode)?, Route::Exact, Vec::new())
    } else if let Some(class) = class {
        if mode != PathMode::ProperlyColored {
            return Err(CliError::usage("--class constructors use properly colored paths; drop --mode"));
        }
        let (cert, route) = match class {
            Class::Cycle => (pcp_kernel_of_cycle(&d)?, Route::Cycle),
            Class::Unicyclic => (Some(pcp_kernel_of_unicyclic(&d)?), Route::Unicyclic),
            Class::SemiComplete => (pcp_kernel_semicomplete(&d)?, Route::SemiComplete),
            Class::Bipartite => {
                let p = bipartite_partition(&d).ok_or(ConstructError::NotBipartiteTournament)?;
                (pcp_kernel_bipartite(&d, &p)?, Route::Bipartite)
            }
        };
        let log = cert.as_ref().map(|c: &PcpKernelCertificate| c.log.clone()).unwrap_or_default();
        (cert, route, log)
    } else {
        let out = solve_pcp(&d, mode)?;
        (out.certificate, out.route, out.log)
    };
    let kernel = cert.as_ref().map(|c| c.member_labels(&d));
    let rendered = cert.as_ref().map(|c| c.render(&d));
    let (code, summary) = match &kernel {
        Some(k) => (EXIT_HOLDS, format!("PCP-kernel S={{{}}} (route {})", k.join(","), route.name())),
        None => (EXIT_FAILS, format!("no PCP-kernel (route {})", route.name())),
    };
    let payload = match format {
        Format::Json => {
            let j = SolveJson { mode: mode.name(), route: route.name(), kernel, certificate: rendered, log: &log };
            serde_json::to_string_pretty(&j).expect("serializes") + "\n"
        }
        Format::Text => match rendered {
            Some(r) => r,
            None => {
                let mut s = format!("mode {}\nroute {}\nnone\n", mode.name(), route.name());
                for l in &log {
                    let _ = writeln!(s, "# {l}");
                }
                s
            }
        },
    };
    Ok(CommandResult::new(code, summary, Some(payload)))
}

fn cmd_verify(input: &str, certificate: &Path) -> Result<CommandResult, CliError> {
    let d = load(input)?;
    let text = read_file(certificate)?;
    let claim = parse_certificate(&d, &text).map_err(CliError::parse)?;
    Ok(match check_claim(&d, &claim)? {
        ClaimVerdict::Valid(cert) => {
            let summary = format!("valid: S={{{}}} ({})", cert.member_labels(&d).join(","), claim.mode.name());
            CommandResult::new(EXIT_HOLDS, summary, Some(cert.render(&d)))
        }
        ClaimVerdict::Invalid(why) => CommandResult::new(EXIT_FAILS, format!("invalid: {why}"), None),
    })
}

#[derive(Serialize)]
struct CheckJson {
    check: &'static str,
    holds: bool,
    witness: Option<Vec<String>>,
}

fn cmd_check(what: CheckKind, input: &str, ks: &[usize], format: Format) -> Result<CommandResult, CliError> {
    let d = load(input)?;
    let (name, holds, witness) = match what {
        CheckKind::AllCyclesPc => {
            let c = all_cycles_properly_colored(&d);
            ("all-cycles-pc", c.holds, c.witness)
        }
        CheckKind::KCyclesPc => {
            if ks.iter().any(|&k| k < 2) {
                return Err(CliError::usage("--k lengths must be >= 2"));
            }
            let c = k_cycles_properly_colored(&d, ks).map_err(ConstructError::from)?;
            ("k-cycles-pc", c.holds, c.witness)
        }
        // Holds when there is no monochromatic triangle.
        CheckKind::MonoTriangle => {
            let t = has_monochromatic_triangle(&d);
            ("mono-triangle", t.is_none(), t.map(|t| t.to_vec()))
        }
        CheckKind::Class => return Ok(class_result(&d, format)),
    };
    let witness = witness.map(|w| labels(&d, &w));
    let summary = match &witness {
        None => format!("{name}: holds"),
        Some(w) => format!("{name}: fails, witness {}", w.join(" ")),
    };
    let payload = match format {
        Format::Json => serde_json::to_string_pretty(&CheckJson { check: name, holds, witness }).expect("serializes") + "\n",
        Format::Text => match &witness {
            None => "holds\n".to_string(),
            Some(w) => format!("fails\nwitness {}\n", w.join(" ")),
        },
    };
    Ok(CommandResult::new(if holds { EXIT_HOLDS } else { EXIT_FAILS }, summary, Some(payload)))
}

fn class_result(d: &ColoredDigraph, format: Format) -> CommandResult {
    let tags = classify(d);
    let mut flags: BTreeMap<&str, String> = BTreeMap::new();
    flags.insert("acyclic", tags.acyclic.to_string());
    flags.insert("unicyclic", tags.unicyclic.to_string());
    flags.insert("cycle", tags.is_cycle.to_string());
    flags.insert("tournament", tags.tournament.to_string());
    flags.insert("semi-complete", tags.semi_complete.to_string());
    flags.insert("bipartite-tournament", tags.bipartite_tournament.to_string());
    flags.insert("monochromatic", tags.monochromatic.to_string());
    flags.insert("properly-arc-colored", tags.properly_arc_colored.to_string());
    flags.insert(
        "properly-connected",
        tags.properly_connected.map_or("unknown".to_string(), |b| b.to_string()),
    );
    if let Some(p) = &tags.bipartite {
        flags.insert("partition-x", labels(d, &p.x).join(","));
        flags.insert("partition-y", labels(d, &p.y).join(","));
    }
    let set: Vec<&str> = flags.iter().filter(|(_, v)| *v == "true").map(|(k, _)| *k).collect();
    let summary = if set.is_empty() { "class: none".to_string() } else { format!("class: {}", set.join(" ")) };
    let payload = match format {
        Format::Json => serde_json::to_string_pretty(&flags).expect("serializes") + "\n",
        Format::Text => flags.iter().map(|(k, v)| format!("{k} {v}\n")).collect(),
    };
    CommandResult::new(EXIT_HOLDS, summary, Some(payload))
}

fn parse_policy(s: &str, seed: u64) -> Result<ConnectPolicy, CliError> {
    let bad = || CliError::usage(format!("bad policy `{s}`; expected constant:C, cyclic:K or random:K"));
    let (kind, k) = s.split_once(':').ok_or_else(bad)?;
    let k: u32 = k.parse().map_err(|_| bad())?;
    if k == 0 {
        return Err(bad());
    }
    Ok(match kind {
        "constant" => ConnectPolicy::Constant(k),
        "cyclic" => ConnectPolicy::Cyclic(k),
        "random" => ConnectPolicy::Random { colors: k, seed },
        _ => return Err(bad()),
    })
}

fn cmd_instance(a: &InstanceArgs) -> Result<CommandResult, CliError> {
    let d = if a.name == "remark4" {
        let base = a.base.as_deref().ok_or_else(|| CliError::usage("remark4 needs --base <INPUT>"))?;
        family_instance(&Family::Remark4 { base: load(base)?, policy: parse_policy(&a.policy, a.seed)? })?
    } else if let Ok(kind) = GenKind::from_str(&a.name, false) {
        generate(&a.gen.kind(kind), a.seed)?
    } else if NAMED_INSTANCES.contains(&a.name.as_str()) || a.name.starts_with("remark1-") {
        instance_by_name(&a.name)?
    } else {
        return Err(CliError::usage(format!(
            "unknown instance `{}`; named: {}; families: remark1-even:N, remark1-odd:N, remark4",
            a.name,
            NAMED_INSTANCES.join(", ")
        )));
    };
    let summary = format!("{}: n={} arcs={} colors={}", a.name, d.n(), d.arc_count(), d.m());
    Ok(CommandResult::new(EXIT_HOLDS, summary, Some(emit(&d, a.to))))
}

fn report_result(r: &CheckReport, format: Format, failure_code: i32) -> CommandResult {
    let found = r.counterexamples.len();
    let mut summary = format!(
        "{}: examined {}, passing precondition {}, counterexamples {}",
        r.family, r.instances_examined, r.instances_passing_precondition, found
    );
    let budget = r.tally("budget-exceeded");
    if budget > 0 {
        let _ = write!(summary, ", budget exceeded on {budget}");
    }
    if found > 0 {
        let rechecked = r.recheck().unwrap_or(false);
        let _ = write!(summary, " (recheck from serialization: {})", if rechecked { "confirmed" } else { "NOT confirmed" });
    }
    let payload = match format {
        Format::Json => r.to_json() + "\n",
        Format::Text => r.render_lines(),
    };
    CommandResult::new(if found > 0 { failure_code } else { EXIT_HOLDS }, summary, Some(payload))
}
