//! Command-line front end: parse builder specs or lattice documents,
//! dispatch analyses, and emit deterministic JSON (keys sorted, arrays in
//! element order) or plain text tables.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
//! parse errors.

use crate::abelian::{self, FiniteAbelianGroup};
use crate::builders;
use crate::classify;
use crate::lattice::{FiniteLattice, LatticeDocument};
use crate::limits::Limits;
use crate::represent::{self, PartsKind};
use crate::topology;
use crate::transfer::{self, PairDocument};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::sync::Arc;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "finlat",
    version,
    about = "Finite lattice analysis: strongly irreducible and strongly hollow elements"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Maximum lattice size; FINLAT_SIZE_LIMIT overrides the default.
    #[arg(long, global = true)]
    pub limit: Option<usize>,
    /// Emit JSON (the default).
    #[arg(long, global = true)]
    pub json: bool,
    /// Emit plain text instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    pub table: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a lattice and print its interchange document.
    Build { source: String },
    /// Print the interchange document of the order-reversed lattice.
    Dual { source: String },
    /// Per-element classification flags.
    Classify {
        source: String,
        /// Restrict the report to one element label.
        #[arg(long)]
        element: Option<String>,
    },
    /// Spectrum basis of the requested kind with closure-law verification.
    Topology {
        source: String,
        #[arg(long, value_enum, default_value_t = KindArg::Closed)]
        kind: KindArg,
    },
    /// Irredundant meet (default) or join representations of a target.
    Represent {
        source: String,
        #[arg(long)]
        target: String,
        #[arg(long, value_enum, default_value_t = PartsArg::Si)]
        kind: PartsArg,
        #[arg(long, default_value_t = 8)]
        max_size: usize,
        /// Decompose as a join instead of a meet.
        #[arg(long)]
        join: bool,
    },
    /// Verification suites.
    Verify {
        #[command(subcommand)]
        suite: VerifySuite,
    },
    /// Finite abelian group reports.
    Abgroup {
        /// Group spec string, e.g. 4x9.
        #[arg(long)]
        factors: String,
        #[arg(long, value_enum, default_value_t = AbReport::StronglyHollow)]
        report: AbReport,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifySuite {
    /// Transfer of strong irreducibility along map pairs.
    Transfer(TransferArgs),
}

#[derive(Debug, Args)]
pub struct TransferArgs {
    /// Modulus of the localization model.
    #[arg(long, requires = "p")]
    pub n: Option<u64>,
    /// Prime of the localization model.
    #[arg(long, requires = "n")]
    pub p: Option<u64>,
    /// Pair document `{"G": [...], "F": [...]}`.
    #[arg(long, requires = "source", requires = "target")]
    pub pairs: Option<PathBuf>,
    /// Source lattice document for --pairs.
    #[arg(long)]
    pub source: Option<PathBuf>,
    /// Target lattice document for --pairs.
    #[arg(long)]
    pub target: Option<PathBuf>,
    /// Run a randomized battery of this many hypothesis-satisfying pairs.
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Closed,
    Open,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PartsArg {
    Si,
    Irr,
    Any,
}

impl From<PartsArg> for PartsKind {
    fn from(value: PartsArg) -> PartsKind {
        match value {
            PartsArg::Si => PartsKind::StronglyIrreducible,
            PartsArg::Irr => PartsKind::Irreducible,
            PartsArg::Any => PartsKind::Any,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AbReport {
    StronglyHollow,
    Hollow,
    Lattice,
}

enum Output {
    Json,
    Table,
}

pub fn run(cli: Cli) -> i32 {
    let mut limits = Limits::from_env();
    if let Some(limit) = cli.limit {
        limits.max_lattice_size = limit;
    }
    let output = if cli.table { Output::Table } else { Output::Json };
    match dispatch(cli.command, &limits, &output) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_VERIFICATION_FAILED,
        Err(message) => {
            eprintln!("error: {message}");
            EXIT_USAGE
        }
    }
}

/// Ok(true): success; Ok(false): ran but a verification failed.
fn dispatch(command: Command, limits: &Limits, output: &Output) -> Result<bool, String> {
    match command {
        Command::Build { source } => {
            let l = load_lattice(&source, limits)?;
            emit_document(&l, output);
            Ok(true)
        }
        Command::Dual { source } => {
            let l = load_lattice(&source, limits)?;
            emit_document(&l.dual(), output);
            Ok(true)
        }
        Command::Classify { source, element } => {
            let l = load_lattice(&source, limits)?;
            let mut profiles = classify::classify_all(&l);
            if let Some(label) = element {
                let idx = l
                    .label_index(&label)
                    .ok_or_else(|| format!("no element labelled {label:?}"))?;
                profiles.retain(|c| c.element == idx);
            }
            match output {
                Output::Json => print_json(&profiles),
                Output::Table => {
                    say(format!(
                        "{:<12} {:>4} {:>4} {:>6} {:>4} {:>6} {:>6}",
                        "label", "irr", "si", "waist", "ess", "hollow", "sh"
                    ));
                    for c in &profiles {
                        say(format!(
                            "{:<12} {:>4} {:>4} {:>6} {:>4} {:>6} {:>6}",
                            c.label,
                            yn(c.irreducible),
                            yn(c.strongly_irreducible),
                            yn(c.waist),
                            yn(c.essential),
                            yn(c.hollow),
                            yn(c.strongly_hollow),
                        ));
                    }
                }
            }
            Ok(true)
        }
        Command::Topology { source, kind } => {
            let l = Arc::new(load_lattice(&source, limits)?);
            let basis = match kind {
                KindArg::Closed => {
                    let spectrum = topology::si_spectrum(&l);
                    if spectrum.is_empty() {
                        eprintln!("warning: empty spectrum; the topology is indiscrete");
                    }
                    topology::closed_basis(l.clone(), &spectrum).map_err(|e| e.to_string())?
                }
                KindArg::Open => {
                    let spectrum = topology::sh_spectrum(&l);
                    if spectrum.is_empty() {
                        eprintln!("warning: empty spectrum; the topology is indiscrete");
                    }
                    topology::open_basis(l.clone(), &spectrum).map_err(|e| e.to_string())?
                }
            };
            let verified = basis.verification.passed();
            let sets: serde_json::Map<String, serde_json::Value> = l
                .elements()
                .map(|a| (l.label(a).to_string(), json!(basis.member_labels(a))))
                .collect();
            let report = json!({
                "kind": match basis.kind {
                    topology::BasisKind::Closed => "closed",
                    topology::BasisKind::Open => "open",
                },
                "spectrum": basis.spectrum.iter().map(|&p| l.label(p)).collect::<Vec<_>>(),
                "sets": sets,
                "pairs_checked": basis.verification.pairs_checked,
                "verified": verified,
            });
            match output {
                Output::Json => print_json(&report),
                Output::Table => {
                    say(format!("spectrum: {:?}", basis.spectrum));
                    say(format!("verified: {verified}"));
                }
            }
            Ok(verified)
        }
        Command::Represent { source, target, kind, max_size, join } => {
            let l = load_lattice(&source, limits)?;
            let idx = l
                .label_index(&target)
                .ok_or_else(|| format!("no element labelled {target:?}"))?;
            let reps = if join {
                represent::irredundant_join_reps(&l, idx, kind.into(), max_size, limits)
            } else {
                represent::irredundant_meet_reps(&l, idx, kind.into(), max_size, limits)
            }
            .map_err(|e| e.to_string())?;
            let parts: Vec<Vec<&str>> = reps
                .iter()
                .map(|r| r.parts.iter().map(|&p| l.label(p)).collect())
                .collect();
            let report = json!({
                "target": target,
                "mode": if join { "join" } else { "meet" },
                "kind": format!("{:?}", kind).to_lowercase(),
                "representations": parts,
            });
            match output {
                Output::Json => print_json(&report),
                Output::Table => {
                    for rep in &parts {
                        say(rep.join(" "));
                    }
                }
            }
            Ok(true)
        }
        Command::Verify { suite } => match suite {
            VerifySuite::Transfer(args) => run_transfer(args, limits, output),
        },
        Command::Abgroup { factors, report } => {
            let group = FiniteAbelianGroup::parse_spec(&factors, limits)
                .map_err(|e| e.to_string())?;
            run_abgroup(&group, report, limits, output)
        }
    }
}

fn run_transfer(args: TransferArgs, limits: &Limits, output: &Output) -> Result<bool, String> {
    if let (Some(n), Some(p)) = (args.n, args.p) {
        let model = transfer::localization_model(n, p, limits).map_err(|e| e.to_string())?;
        let laws = transfer::verify_galois_laws(&model);
        let pair_report = transfer::verify_pair(&model.pair);
        let correspondence = transfer::localization_correspondence(&model);
        let verified = laws.all_hold()
            && pair_report.hypotheses_hold()
            && correspondence.si_equivalence_holds
            && correspondence.hollow_backward_holds;
        let report = json!({
            "n": n,
            "p": p,
            "galois_laws": laws,
            "pair_hypotheses_hold": pair_report.hypotheses_hold(),
            "correspondence": correspondence,
            "verified": verified,
        });
        emit(&report, output);
        return Ok(verified);
    }
    if let Some(count) = args.random {
        let battery = transfer::transfer_battery(args.seed, count, limits);
        let verified = battery.failures.is_empty();
        emit(&json!({ "battery": battery, "verified": verified }), output);
        return Ok(verified);
    }
    if let Some(pair_path) = args.pairs {
        let source = load_lattice_file(args.source.as_deref().ok_or("--source required")?, limits)?;
        let target = load_lattice_file(args.target.as_deref().ok_or("--target required")?, limits)?;
        let doc: PairDocument = read_json(&pair_path)?;
        let pair = transfer::MonotonePair::new(
            Arc::new(source),
            Arc::new(target),
            doc.g,
            doc.f,
        )
        .map_err(|e| e.to_string())?;
        let report = transfer::verify_pair(&pair);
        let mut transfers = Vec::new();
        let mut verified = report.hypotheses_hold();
        for &p in &report.fixed_points {
            match transfer::transfer_si(&pair, p) {
                Ok(verdict) => {
                    if verdict.conclusion_verified == Some(false) {
                        verified = false;
                    }
                    transfers.push(json!({
                        "element": p,
                        "hypothesis_held": verdict.hypothesis_held,
                        "conclusion_verified": verdict.conclusion_verified,
                    }));
                }
                Err(e) => return Err(e.to_string()),
            }
        }
        emit(
            &json!({ "pair_report": report, "transfers": transfers, "verified": verified }),
            output,
        );
        return Ok(verified);
    }
    Err("verify transfer needs --n/--p, --pairs, or --random".to_string())
}

fn run_abgroup(
    group: &FiniteAbelianGroup,
    report: AbReport,
    limits: &Limits,
    output: &Output,
) -> Result<bool, String> {
    match report {
        AbReport::StronglyHollow => {
            let sh = abelian::strongly_hollow_subgroups(group, limits).map_err(|e| e.to_string())?;
            let listed: Vec<serde_json::Value> = sh
                .lattice_route
                .iter()
                .map(|&i| {
                    let s = &sh.subgroups[i];
                    json!({ "label": s.label(), "order": s.order() })
                })
                .collect();
            let payload = json!({
                "group": group.spec_string(),
                "invariant_factors": group.invariant_factors(),
                "order": group.order(),
                "strongly_hollow": listed,
                "routes_agree": sh.agree,
            });
            match output {
                Output::Json => print_json(&payload),
                Output::Table => {
                    for &i in &sh.lattice_route {
                        let s = &sh.subgroups[i];
                        say(format!("{:<20} order {}", s.label(), s.order()));
                    }
                }
            }
            Ok(sh.agree)
        }
        AbReport::Hollow => {
            let h = abelian::hollow_subgroups(group, limits).map_err(|e| e.to_string())?;
            let listed: Vec<serde_json::Value> = h
                .hollow
                .iter()
                .map(|&i| {
                    let s = &h.subgroups[i];
                    json!({ "label": s.label(), "order": s.order() })
                })
                .collect();
            let payload = json!({
                "group": group.spec_string(),
                "invariant_factors": group.invariant_factors(),
                "order": group.order(),
                "hollow": listed,
                "routes_agree": h.agree,
            });
            emit(&payload, output);
            Ok(h.agree)
        }
        AbReport::Lattice => {
            let sl = abelian::subgroup_lattice(group, limits).map_err(|e| e.to_string())?;
            let payload = json!({
                "group": group.spec_string(),
                "invariant_factors": group.invariant_factors(),
                "order": group.order(),
                "subgroups": sl
                    .subgroups
                    .iter()
                    .map(|s| json!({
                        "label": s.label(),
                        "order": s.order(),
                        "generators": s.generators(),
                    }))
                    .collect::<Vec<_>>(),
                "lattice": sl.lattice.to_document(),
            });
            emit(&payload, output);
            Ok(true)
        }
    }
}

fn yn(b: bool) -> &'static str {
    if b {
        "y"
    } else {
        "-"
    }
}

/// Resolve a lattice source: an existing file is parsed as an interchange
/// document, anything else as a builder spec string.
fn load_lattice(source: &str, limits: &Limits) -> Result<FiniteLattice, String> {
    if Path::new(source).exists() {
        load_lattice_file(Path::new(source), limits)
    } else {
        builders::parse_spec(source, limits).map_err(|e| e.to_string())
    }
}

fn load_lattice_file(path: &Path, limits: &Limits) -> Result<FiniteLattice, String> {
    let doc: LatticeDocument = read_json(path)?;
    let (lattice, warnings) =
        FiniteLattice::from_document(&doc, limits).map_err(|e| e.to_string())?;
    for w in warnings {
        eprintln!("warning: {w}");
    }
    Ok(lattice)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("cannot parse {}: {e}", path.display()))
}

fn emit_document(l: &FiniteLattice, output: &Output) {
    let doc = l.to_document();
    match output {
        Output::Json => print_json(&doc),
        Output::Table => {
            for (i, label) in doc.labels.iter().enumerate() {
                say(format!("{i}: {label}"));
            }
            for (a, b) in &doc.covers {
                say(format!("{} < {}", doc.labels[*a], doc.labels[*b]));
            }
        }
    }
}

fn emit<T: Serialize>(value: &T, output: &Output) {
    match output {
        Output::Json => print_json(value),
        Output::Table => print_json(value),
    }
}

/// Serialize through `serde_json::Value` so object keys come out sorted,
/// making byte-identical output for identical inputs.
fn print_json<T: Serialize>(value: &T) {
    let v = serde_json::to_value(value).expect("serializable report");
    say(serde_json::to_string_pretty(&v).expect("valid json"));
}

/// Write a line to stdout, exiting quietly when the consumer closed the
/// pipe (e.g. `finlat ... | head`).
fn say(line: String) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{line}").is_err() {
        std::process::exit(EXIT_OK);
    }
}
