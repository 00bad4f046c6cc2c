//! `resdg`: builds and checks DG algebra structures with divided powers on
//! self-dual free resolutions of length four.
//!
//! Every subcommand reads a document from a file or standard input and
//! writes to a file or standard output, so the commands compose in pipes:
//!
//! ```text
//! resdg gen-koszul -v x,y,z,w -d int | resdg build-dg | resdg verify
//! ```
//!
//! Exit status: 0 on success, 1 when the input is well formed but a
//! mathematical check fails, 2 on I/O, parse or usage errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use resdg::arith::{CoefficientDomain, MonomialOrder, PolyRing, RingElement};
use resdg::complexes::{check_self_duality, direct_sum_trivial, direct_sum_witness, validate_resolution};
use resdg::io::{generate_koszul, Document};
use resdg::pipeline::{build_dg, extend_trivial_dg};
use resdg::verify::{self, CheckLevel};

#[derive(Parser)]
#[command(name = "resdg", version, about = "DG algebra structures on self-dual length-four resolutions")]
struct Cli {
    /// Log progress to standard error; repeat for more detail.
    #[arg(long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the Koszul complex on four ring elements with its standard
    /// self-duality witness.
    GenKoszul(GenKoszul),
    /// Add a split exact summand `E → E` in degrees 2,1 and its dual in
    /// degrees 3,2; the witness is carried along.
    GenSumTrivial(Trivial),
    /// Check that the complex is a resolution and that the witness, if
    /// present, is a chain isomorphism onto the dual.
    Validate(Io),
    /// Construct a DG algebra structure with Poincaré duality.
    BuildDg(BuildDg),
    /// Check every axiom of the document's DG block, and replay its trace if
    /// it has one.
    Verify(Verify),
    /// Add a trivial summand and extend the document's DG block to it.
    ExtendTrivial(Trivial),
    /// Print the construction trace of a document.
    DumpTrace(Io),
}

#[derive(Args)]
struct Io {
    /// Input document; standard input when omitted or `-`.
    input: Option<PathBuf>,
    /// Output file; standard output when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenKoszul {
    /// Coefficient domain: `int`, `rat`, or `gfP` for a prime `P`.
    #[arg(short = 'd', long = "ring", alias = "domain", default_value = "int")]
    ring: String,
    /// Comma-separated variable names.
    #[arg(short = 'v', long, value_delimiter = ',', default_value = "x,y,z,w")]
    vars: Vec<String>,
    /// Monomial order: `grevlex` or `lex`.
    #[arg(long, default_value = "grevlex")]
    order: String,
    /// The four ring elements, comma separated; defaults to the variables.
    #[arg(short, long, value_delimiter = ',')]
    seq: Option<Vec<String>>,
    /// Also write the exterior algebra as the DG block.
    #[arg(long)]
    exterior: bool,
    /// Output file; standard output when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Trivial {
    /// Rank of the added summand `E`.
    #[arg(short = 'e', long, default_value_t = 1)]
    rank: usize,
    #[command(flatten)]
    io: Io,
}

#[derive(Args)]
struct BuildDg {
    /// Write the construction trace to this file instead of embedding it.
    #[arg(long)]
    trace_out: Option<PathBuf>,
    #[command(flatten)]
    io: Io,
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    /// Skip the largest associativity sweep.
    Fast,
    /// Check every basis tuple.
    Exhaustive,
}

#[derive(Args)]
struct Verify {
    #[arg(long, value_enum, default_value = "exhaustive")]
    check_level: Level,
    /// Do not replay the construction trace.
    #[arg(long)]
    no_replay: bool,
    #[command(flatten)]
    io: Io,
}

/// Why a command did not succeed.
enum Failure {
    /// Well-formed input on which a mathematical check fails.
    Math(String),
    /// I/O, parse or usage problem.
    Input(anyhow::Error),
}

impl From<resdg::Error> for Failure {
    fn from(e: resdg::Error) -> Self {
        if e.is_mathematical() {
            Failure::Math(e.to_string())
        } else {
            Failure::Input(e.into())
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = Result<(), Failure>;

fn read_input(path: Option<&Path>) -> anyhow::Result<String> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading standard input")?;
            Ok(s)
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).context("writing standard output")
        }
    }
}

fn read_document(io: &Io) -> Result<Document, Failure> {
    let text = read_input(io.input.as_deref())?;
    Document::parse(&text).map_err(|e| Failure::Input(anyhow!(e).context("parsing the input document")))
}

fn gen_koszul(args: &GenKoszul) -> Outcome {
    let domain = CoefficientDomain::parse(&args.ring)?;
    let order = MonomialOrder::parse(&args.order)?;
    let ring = PolyRing::with_names(domain, args.vars.clone(), order)?;
    let seq: Vec<RingElement> = match &args.seq {
        Some(items) => items.iter().map(|s| RingElement::parse(&ring, s.trim())).collect::<Result<_, _>>()?,
        None => (0..ring.nvars()).map(|i| RingElement::variable(&ring, i)).collect(),
    };
    let doc = generate_koszul(&ring, &seq, args.exterior)?;
    write_output(args.output.as_deref(), &doc.print())?;
    Ok(())
}

/// The sum with a trivial summand, carrying the witness along and, when
/// `extend` is set, the DG block as well.
fn add_trivial(args: &Trivial, extend: bool) -> Outcome {
    let doc = read_document(&args.io)?;
    let g = direct_sum_trivial(&doc.complex, args.rank)?;
    let mut out = Document::new(g);
    if let Some(phi) = doc.witness.clone() {
        let w = check_self_duality(&doc.complex, phi)?;
        out.witness = Some(direct_sum_witness(&doc.complex, &w, args.rank)?);
    }
    if extend {
        let d = doc.dg.as_ref().ok_or_else(|| anyhow!("the document has no dg section"))?;
        out.dg = Some(extend_trivial_dg(&doc.complex, d, args.rank)?);
    } else if doc.dg.is_some() {
        log::warn!("dropping the dg section; use extend-trivial to carry it over");
    }
    write_output(args.io.output.as_deref(), &out.print())?;
    Ok(())
}

fn validate(args: &Io) -> Outcome {
    let doc = read_document(args)?;
    let v = validate_resolution(&doc.complex)?;
    let cert = v.certificate();
    let join = |xs: Vec<String>| xs.join(" ");
    let mut report = format!(
        "resolution: ranks of d1..d4 = {}; grades of the minor ideals = {}\n",
        join(cert.ranks.iter().map(ToString::to_string).collect()),
        join(cert.grades.iter().map(ToString::to_string).collect()),
    );
    match doc.witness {
        Some(phi) => {
            let w = check_self_duality(&doc.complex, phi)?;
            report.push_str(&format!("witness: accepted, u = {}\n", w.u));
        }
        None => report.push_str("witness: none\n"),
    }
    write_output(args.output.as_deref(), &report)?;
    Ok(())
}

fn build(args: &BuildDg) -> Outcome {
    let mut doc = read_document(&args.io)?;
    let phi = doc.witness.clone().ok_or_else(|| anyhow!("the document has no witness section"))?;
    let v = validate_resolution(&doc.complex)?;
    let w = check_self_duality(&doc.complex, phi)?;
    let out = build_dg(&v, &w)?;
    log::info!("built and verified; bezout exponent {}", out.bezout.2);
    doc.dg = Some(out.structure);
    match &args.trace_out {
        Some(path) => {
            let mut t = Document::new(doc.complex.clone());
            t.trace = Some(out.trace);
            write_output(Some(path), &t.print())?;
            doc.trace = None;
        }
        None => doc.trace = Some(out.trace),
    }
    write_output(args.io.output.as_deref(), &doc.print())?;
    Ok(())
}

fn run_verify(args: &Verify) -> Outcome {
    let doc = read_document(&args.io)?;
    let d = doc.dg.as_ref().ok_or_else(|| anyhow!("the document has no dg section"))?;
    let level = match args.check_level {
        Level::Fast => CheckLevel::Fast,
        Level::Exhaustive => CheckLevel::Exhaustive,
    };
    let mut report = verify::verify_all(&doc.complex, d, level);
    if let (Some(t), false) = (&doc.trace, args.no_replay) {
        report.extend(verify::replay_trace(&doc.complex, t));
    }
    write_output(args.io.output.as_deref(), &report.to_string())?;
    match report.first_failure() {
        Some(msg) => Err(Failure::Math(format!("verification failed: {msg}"))),
        None => {
            log::info!("{} checks passed", report.checks.len());
            Ok(())
        }
    }
}

fn dump_trace(args: &Io) -> Outcome {
    let doc = read_document(args)?;
    let t = doc.trace.ok_or_else(|| anyhow!("the document has no trace section"))?;
    write_output(args.output.as_deref(), &t.to_string())?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    let outcome = match &cli.command {
        Command::GenKoszul(a) => gen_koszul(a),
        Command::GenSumTrivial(a) => add_trivial(a, false),
        Command::Validate(a) => validate(a),
        Command::BuildDg(a) => build(a),
        Command::Verify(a) => run_verify(a),
        Command::ExtendTrivial(a) => add_trivial(a, true),
        Command::DumpTrace(a) => dump_trace(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math(msg)) => {
            eprintln!("resdg: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("resdg: error: {e:#}");
            ExitCode::from(2)
        }
    }
}
