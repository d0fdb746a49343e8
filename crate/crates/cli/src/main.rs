//! `rackmod`: validate racks and module structures, compute enhanced counting
//! invariants, and reproduce census tables.
//!
//! Exit codes: 0 on success, 1 when an input is well formed but fails
//! validation, 2 when an input cannot be read or parsed.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rackmod::census::{builtin_table, load_dir, run_census, select, CensusEntry};
use rackmod::coloring::counts_by_writhe;
use rackmod::diagram::LinkDiagram;
use rackmod::enhanced::{dim_enhanced_invariant, enhanced_multiset, EnhancedMultiset, InvariantPolynomial};
use rackmod::rack::{Rack, RackFile};
use rackmod::rackmodule::{search_module_structures, ModuleFile, ModuleStructure};

#[derive(Parser)]
#[command(name = "rackmod", version, about = "Rack-module enhanced counting invariants of knots and links")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Finite racks given as 1-based operation tables.
    #[command(subcommand)]
    Rack(RackCommand),
    /// Module structures on Z_n over a rack.
    #[command(subcommand)]
    Module(ModuleCommand),
    /// Counting invariants of a diagram.
    #[command(subcommand)]
    Invariant(InvariantCommand),
    /// Batch invariants over the built-in corpus or a directory of diagrams.
    #[command(subcommand)]
    Census(CensusCommand),
}

#[derive(Subcommand)]
enum RackCommand {
    /// Check the rack axioms.
    Validate { file: PathBuf },
    /// Print the rack rank.
    Rank { file: PathBuf },
}

#[derive(Subcommand)]
enum ModuleCommand {
    /// Check a module structure against a rack.
    Validate {
        #[arg(long)]
        rack: PathBuf,
        file: PathBuf,
    },
    /// List module structures on Z_n.
    Search {
        #[arg(long)]
        rack: PathBuf,
        #[arg(long)]
        modulus: u64,
        /// Stop after this many structures.
        #[arg(long)]
        max: Option<usize>,
    },
}

#[derive(Args)]
struct InvariantInputs {
    #[arg(long)]
    rack: PathBuf,
    #[arg(long)]
    diagram: PathBuf,
}

#[derive(Args)]
struct EnhancedInputs {
    #[command(flatten)]
    inputs: InvariantInputs,
    #[arg(long)]
    module: PathBuf,
    /// Also print each coloring with its bead count.
    #[arg(long)]
    show_colorings: bool,
}

#[derive(Subcommand)]
enum InvariantCommand {
    /// The integral counting invariant, with counts per writhe vector.
    Count {
        #[command(flatten)]
        inputs: InvariantInputs,
    },
    /// The enhanced invariant, exponents are bead counts.
    Enhanced(EnhancedInputs),
    /// The dimension-enhanced invariant, exponents are bead-space dimensions.
    Dim(EnhancedInputs),
}

#[derive(Subcommand)]
enum CensusCommand {
    /// Compute and group the enhanced invariant of every entry.
    Run {
        #[arg(long)]
        rack: PathBuf,
        #[arg(long)]
        module: PathBuf,
        /// Comma-separated entry names (default: the whole table).
        #[arg(long, value_delimiter = ',')]
        entries: Option<Vec<String>>,
        /// Read diagrams from this directory instead of the built-in table.
        #[arg(long)]
        data_dir: Option<PathBuf>,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

fn invalid(e: impl Display) -> Failure {
    Failure { code: 1, message: e.to_string() }
}

fn unreadable(e: impl Display) -> Failure {
    Failure { code: 2, message: e.to_string() }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| unreadable(format!("{}: {e}", path.display())))
}

fn load_rack(path: &Path) -> Result<Rack, Failure> {
    let file: RackFile =
        serde_json::from_str(&read(path)?).map_err(|e| unreadable(format!("{}: {e}", path.display())))?;
    if file.table.len() != file.n {
        return Err(invalid(format!("{}: table has {} rows, n = {}", path.display(), file.table.len(), file.n)));
    }
    Rack::from_file(&file).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn load_module(rack: &Rack, path: &Path) -> Result<ModuleStructure, Failure> {
    let file = ModuleFile::parse(&read(path)?).map_err(|e| unreadable(format!("{}: {e}", path.display())))?;
    ModuleStructure::from_file(rack, &file).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn load_diagram(path: &Path) -> Result<LinkDiagram, Failure> {
    LinkDiagram::parse(&read(path)?).map_err(|e| unreadable(format!("{}: {e}", path.display())))
}

fn vector(values: impl IntoIterator<Item = impl Display>) -> String {
    let parts: Vec<String> = values.into_iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

fn module_json(r: &ModuleStructure) -> Value {
    serde_json::to_value(r.to_file()).expect("module serializes")
}

fn polynomial_json(p: &InvariantPolynomial) -> Value {
    serde_json::to_value(p.to_json()).expect("polynomial serializes")
}

/// Colorings with 1-based labels, listed per framed representative.
fn colorings_text(d: &LinkDiagram, ms: &EnhancedMultiset) -> String {
    let mut out = String::new();
    for e in &ms.entries {
        let labels = e.coloring.labels().iter().map(|l| l + 1);
        out.push_str(&format!("w={} f={} beads={}", vector(&e.writhe), vector(labels), e.bead_count));
        if let Some(basis) = &e.basis {
            let gens: Vec<String> = basis.iter().map(vector).collect();
            out.push_str(&format!(" basis=[{}]", gens.join(", ")));
        }
        out.push('\n');
    }
    if ms.is_empty() {
        out.push_str(&format!("no colorings of {}\n", if d.name().is_empty() { "the diagram" } else { d.name() }));
    }
    out
}

fn colorings_json(ms: &EnhancedMultiset) -> Value {
    Value::Array(
        ms.entries
            .iter()
            .map(|e| {
                let labels: Vec<usize> = e.coloring.labels().iter().map(|l| l + 1).collect();
                json!({ "writhe": e.writhe, "labels": labels, "beadCount": e.bead_count, "basis": e.basis })
            })
            .collect(),
    )
}

fn run(cli: Cli) -> Result<String, Failure> {
    let json_out = cli.format == Format::Json;
    let render = |v: Value| serde_json::to_string_pretty(&v).expect("json renders") + "\n";
    match cli.command {
        Command::Rack(RackCommand::Validate { file }) => {
            let x = load_rack(&file)?;
            Ok(if json_out {
                render(json!({ "valid": true, "n": x.size(), "rank": x.rank(), "quandle": x.is_quandle() }))
            } else {
                format!("valid rack, rank {}\n", x.rank())
            })
        }
        Command::Rack(RackCommand::Rank { file }) => {
            let x = load_rack(&file)?;
            Ok(if json_out { render(json!({ "rank": x.rank() })) } else { format!("{}\n", x.rank()) })
        }
        Command::Module(ModuleCommand::Validate { rack, file }) => {
            let x = load_rack(&rack)?;
            let r = load_module(&x, &file)?;
            Ok(if json_out {
                render(json!({ "valid": true, "module": module_json(&r) }))
            } else {
                format!("valid module structure over Z_{}\n{r}\n", r.modulus())
            })
        }
        Command::Module(ModuleCommand::Search { rack, modulus, max }) => {
            let x = load_rack(&rack)?;
            if modulus < 2 {
                return Err(invalid(format!("modulus must be at least 2, got {modulus}")));
            }
            let found = search_module_structures(&x, modulus, max);
            if json_out {
                return Ok(render(Value::Array(found.iter().map(module_json).collect())));
            }
            let mut out = format!("{} module structure(s) over Z_{modulus}\n", found.len());
            for r in &found {
                out.push_str(&format!("\n{r}\n"));
            }
            Ok(out)
        }
        Command::Invariant(InvariantCommand::Count { inputs }) => {
            let x = load_rack(&inputs.rack)?;
            let d = load_diagram(&inputs.diagram)?;
            let counts = counts_by_writhe(&d, &x);
            let total: usize = counts.iter().map(|(_, c)| c).sum();
            if json_out {
                let by: Vec<Value> = counts.iter().map(|(w, c)| json!({ "writhe": w, "count": c })).collect();
                return Ok(render(json!({ "total": total, "byWrithe": by })));
            }
            let parts: Vec<String> = counts.iter().map(|(_, c)| c.to_string()).collect();
            Ok(format!("{total} = {}\n", parts.join(" + ")))
        }
        Command::Invariant(InvariantCommand::Enhanced(args)) => {
            let x = load_rack(&args.inputs.rack)?;
            let d = load_diagram(&args.inputs.diagram)?;
            let r = load_module(&x, &args.module)?;
            let ms = enhanced_multiset(&d, &r, args.show_colorings);
            let p = ms.invariant();
            if json_out {
                let mut v = polynomial_json(&p);
                if args.show_colorings {
                    v["colorings"] = colorings_json(&ms);
                }
                return Ok(render(v));
            }
            let detail = if args.show_colorings { colorings_text(&d, &ms) } else { String::new() };
            Ok(format!("{detail}{p}\n"))
        }
        Command::Invariant(InvariantCommand::Dim(args)) => {
            let x = load_rack(&args.inputs.rack)?;
            let d = load_diagram(&args.inputs.diagram)?;
            let r = load_module(&x, &args.module)?;
            let p = dim_enhanced_invariant(&d, &r).map_err(invalid)?;
            let ms = if args.show_colorings { Some(enhanced_multiset(&d, &r, true)) } else { None };
            if json_out {
                let mut v = polynomial_json(&p);
                if let Some(ms) = &ms {
                    v["colorings"] = colorings_json(ms);
                }
                return Ok(render(v));
            }
            let detail = ms.map(|ms| colorings_text(&d, &ms)).unwrap_or_default();
            Ok(format!("{detail}{p}\n"))
        }
        Command::Census(CensusCommand::Run { rack, module, entries, data_dir }) => {
            let x = load_rack(&rack)?;
            let r = load_module(&x, &module)?;
            let (table, skipped): (Vec<CensusEntry>, _) = match &data_dir {
                Some(dir) => load_dir(dir).map_err(unreadable)?,
                None => (builtin_table(), Vec::new()),
            };
            let chosen = match entries {
                None => table,
                Some(names) if data_dir.is_none() => select(&names).map_err(invalid)?,
                Some(names) => {
                    let mut out = Vec::new();
                    for n in names {
                        let e = table.iter().find(|e| e.name == n).ok_or_else(|| invalid(format!("no entry {n:?}")))?;
                        out.push(e.clone());
                    }
                    out
                }
            };
            let mut report = run_census(&chosen, &r);
            report.skipped = skipped;
            Ok(if json_out { report.to_json() + "\n" } else { report.to_string() })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
