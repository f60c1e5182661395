//! One deterministic report per invocation: parse a command (flags or a
//! --config JSON file), run it, emit {tool_version, command, inputs, seed,
//! results, checks} as JSON (or DOT/text), and exit 0 on pass, 1 when a
//! check fails, 2 on bad input.

mod args;
mod run;

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use args::*;

#[derive(Debug, Parser)]
#[command(
    name = "kmkit",
    version,
    about = "Coxeter word combinatorics, coset posets, unipotent tree groups, \
             and graded dimension series"
)]
struct Cli {
    /// JSON run config {"command", "inputs", "output"?, "seed"?}; replaces the subcommand form
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Write the report here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// json (default), dot (graph commands only), or text
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Echoed into the report; every command is deterministic
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", content = "inputs", rename_all = "kebab-case")]
enum Command {
    /// Normal form of a generator word
    Nf(NfArgs),
    /// Inversion roots of a Weyl element
    Theta(ThetaArgs),
    /// Finite-type verdict plus the poset of finite-type generator subsets
    FiniteType(FiniteTypeArgs),
    /// Poset of finite-type cosets met by a weak-order ball
    Davis(DavisArgs),
    /// Contractibility sweep over interval preimages of the longest-element map
    CheckCombin(CheckCombinArgs),
    /// Per-fiber contractibility of the longest-element map
    CheckPullback(CheckPullbackArgs),
    /// Unipotent tree-group arithmetic
    #[command(subcommand)]
    Gp(GpOp),
    /// Orbit poset of a root subgroup acting on coset spaces
    OrbitPoset(OrbitArgs),
    /// Bigraded Koszul Tor of one graded algebra over another
    Tor(TorArgs),
    /// Fixed-point model versus colimit model in the rank-2 comparison
    Rank2Report(Rank2Args),
    /// Fixed rings of the power operation on the Levi and torus blocks
    LeviFixed(LeviArgs),
    /// Classifying-space dimension series over a finite field, split on p^k mod q
    Bkfq(BkfqArgs),
    /// Chain-supported monomial series of a word tree, per truncation depth
    TreeHilbert(TreeHilbertArgs),
    /// Restriction tower of elementary abelian blocks with surjectivity certificates
    Telescope(TelescopeArgs),
    /// Three-summand presentation of the depth-3 rank-3 worked example
    W3(W3Args),
    /// DOT export of the word tree
    HasseDot(HasseDotArgs),
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
enum GpOp {
    /// Normal-form product
    Mul(GpMulArgs),
    /// Normal-form inverse
    Inv(GpInvArgs),
    /// Membership in the subgroup attached to a word
    Member(GpMemberArgs),
}

#[derive(Debug, Serialize, Deserialize)]
struct RunConfig {
    #[serde(flatten)]
    command: Command,
    #[serde(default)]
    output: Option<OutputSpec>,
    #[serde(default)]
    seed: Option<u64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct OutputSpec {
    #[serde(default)]
    path: Option<PathBuf>,
    #[serde(default)]
    format: Option<Format>,
}

#[derive(Debug, Serialize)]
struct Report {
    tool_version: &'static str,
    command: String,
    inputs: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    results: Value,
    checks: Vec<Check>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Check {
    name: String,
    status: String,
    details: String,
}

impl Check {
    fn new(name: &str, pass: bool, details: String) -> Check {
        Check {
            name: name.into(),
            status: if pass { "pass" } else { "fail" }.into(),
            details,
        }
    }
}

struct Outcome {
    results: Value,
    checks: Vec<Check>,
    dot: Option<String>,
}

fn command_name(c: &Command) -> String {
    use Command::*;
    match c {
        Nf(_) => "nf".into(),
        Theta(_) => "theta".into(),
        FiniteType(_) => "finite-type".into(),
        Davis(_) => "davis".into(),
        CheckCombin(_) => "check-combin".into(),
        CheckPullback(_) => "check-pullback".into(),
        Gp(op) => format!(
            "gp {}",
            match op {
                GpOp::Mul(_) => "mul",
                GpOp::Inv(_) => "inv",
                GpOp::Member(_) => "member",
            }
        ),
        OrbitPoset(_) => "orbit-poset".into(),
        Tor(_) => "tor".into(),
        Rank2Report(_) => "rank2-report".into(),
        LeviFixed(_) => "levi-fixed".into(),
        Bkfq(_) => "bkfq".into(),
        TreeHilbert(_) => "tree-hilbert".into(),
        Telescope(_) => "telescope".into(),
        W3(_) => "w3".into(),
        HasseDot(_) => "hasse-dot".into(),
    }
}

fn default_format(c: &Command) -> Format {
    match c {
        Command::HasseDot(_) => Format::Dot,
        _ => Format::Json,
    }
}

/// Input or config problem: diagnostic on stderr, exit 2.
struct Fail(String);

fn real_main(cli: Cli) -> Result<ExitCode, Fail> {
    let (command, out, format, seed) = match (cli.config, cli.command) {
        (Some(_), Some(_)) => {
            return Err(Fail("give either --config or a subcommand, not both".into()))
        }
        (None, None) => {
            return Err(Fail(
                "missing command: give a subcommand or --config (see --help)".into(),
            ))
        }
        (Some(path), None) => {
            let text = fs::read_to_string(&path)
                .map_err(|e| Fail(format!("cannot read {}: {e}", path.display())))?;
            let rc: RunConfig = serde_json::from_str(&text)
                .map_err(|e| Fail(format!("malformed config {}: {e}", path.display())))?;
            let output = rc.output.unwrap_or_default();
            (
                rc.command,
                cli.out.or(output.path),
                cli.format.or(output.format),
                cli.seed.or(rc.seed),
            )
        }
        (None, Some(c)) => (c, cli.out, cli.format, cli.seed),
    };
    let format = format.unwrap_or_else(|| default_format(&command));

    let outcome = run::dispatch(&command).map_err(|e| Fail(e.to_string()))?;
    let failed = outcome.checks.iter().any(|c| c.status == "fail");
    let dot = outcome.dot;

    // the report embeds the effective inputs, defaults included
    let inputs = serde_json::to_value(&command)
        .map_err(|e| Fail(e.to_string()))?
        .get("inputs")
        .cloned()
        .unwrap_or_else(|| Value::Object(Default::default()));
    let report = Report {
        tool_version: env!("CARGO_PKG_VERSION"),
        command: command_name(&command),
        inputs,
        seed,
        results: outcome.results,
        checks: outcome.checks,
    };

    let rendered = match format {
        Format::Json => {
            let mut s =
                serde_json::to_string_pretty(&report).map_err(|e| Fail(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Dot => dot.ok_or_else(|| Fail(format!("{} has no graph export", report.command)))?,
        Format::Text => render_text(&report),
    };

    match out {
        Some(path) => fs::write(&path, rendered)
            .map_err(|e| Fail(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(rendered.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Fail(format!("cannot write report: {e}")))?;
        }
    }
    Ok(ExitCode::from(u8::from(failed)))
}

fn render_text(r: &Report) -> String {
    let mut s = format!("kmkit {} v{}\n", r.command, r.tool_version);
    if let Some(seed) = r.seed {
        s += &format!("seed: {seed}\n");
    }
    for c in &r.checks {
        s += &format!("check {}: {} ({})\n", c.name, c.status.to_uppercase(), c.details);
    }
    s += &serde_json::to_string_pretty(&r.results).unwrap_or_default();
    s.push('\n');
    s
}

fn main() -> ExitCode {
    match real_main(Cli::parse()) {
        Ok(code) => code,
        Err(Fail(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
