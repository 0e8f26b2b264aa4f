use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pregeom::census::{run_suite, SUITES};
use pregeom::classify::{decompose_theorem11, full_report, ClassificationReport};
use pregeom::doc::{load_binding, load_partition, BindingDoc, Document, QuotientDoc};
use pregeom::gen::{GeneratorSpec, GENERATORS};
use pregeom::quotient::{normal_quotient, quotient_by, QuotientResult};
use pregeom::{BoundAction, Error, Limits, PermGroup, Permutation, Result};

#[derive(Parser)]
#[command(name = "pregeom", version, about = "Quotients and classification of pregeometries with group actions")]
struct Cli {
    /// Largest group order whose elements may be enumerated.
    #[arg(long, global = true, default_value_t = Limits::default().max_order)]
    max_order: u128,
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Accepted for compatibility; every command is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Family membership, type classes, degeneracy and basicness.
    Analyze { binding: PathBuf },
    /// Quotient by a normal subgroup or an invariant partition.
    Quotient {
        binding: PathBuf,
        /// Generator of the normal subgroup in cycle notation; repeatable.
        #[arg(long = "normal", conflicts_with = "partition", required_unless_present = "partition")]
        normal: Vec<String>,
        /// Partition document.
        #[arg(long)]
        partition: Option<PathBuf>,
        /// Write the quotient document here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decomposition of a primitive-basic pair into its summands.
    Decompose { binding: PathBuf },
    /// Full classification report.
    Classify {
        binding: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a named construction: `gen <name> [--param value]... [--out file]`.
    Gen {
        name: String,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        params: Vec<String>,
    },
    /// Classify a named suite of generated instances.
    Census {
        #[arg(long, default_value = "battery")]
        suite: String,
    },
}

fn emit(doc: &Document, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => doc.write(path),
        None => {
            println!("{}", doc.to_json());
            Ok(())
        }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn type_list(a: &BoundAction, types: &[usize]) -> String {
    let v: Vec<&str> = types.iter().map(|&t| a.geometry().type_label(t)).collect();
    format!("[{}]", v.join(", "))
}

fn print_analysis(a: &BoundAction, r: &ClassificationReport) {
    let fibers: Vec<String> =
        r.types.iter().zip(&r.fiber_sizes).map(|(t, n)| format!("{t}({n})")).collect();
    println!("types: {}", fibers.join(" "));
    println!("group order: {}", r.group_order);
    println!("in family G: {}", yes(r.in_family));
    if let Some(reason) = &r.reason {
        println!("reason: {reason}");
    }
    if let Some(c) = &r.type_classes {
        println!(
            "I_unf: {}  I_qp: {}  I_nonqp: {}",
            type_list(a, &c.unfaithful),
            type_list(a, &c.quasiprimitive),
            type_list(a, &c.non_quasiprimitive)
        );
    }
    println!("primitive-degenerate: {}  normal-degenerate: {}", yes(r.primitive_degenerate), yes(r.normal_degenerate));
    if let Some(b) = r.primitive_basic {
        println!("primitive-basic: {}", yes(b));
    }
    if let Some(b) = r.normal_basic {
        match r.case_tag {
            Some(case) => println!("normal-basic: yes (case {case})"),
            None => println!("normal-basic: {}", yes(b)),
        }
    }
    if let Some(t) = &r.table1 {
        println!("table line: {:?} k={} m={}", t.line, t.k, t.m);
    }
    println!("verdict: {}", serde_json::to_string(&r.verdict).expect("verdict").trim_matches('"'));
}

fn print_quotient(q: &QuotientResult) {
    let g = q.quotient.geometry();
    let fibers: Vec<String> = g.types().iter().zip(g.fiber_sizes()).map(|(t, n)| format!("{t}({n})")).collect();
    println!("quotient types: {}", fibers.join(" "));
    println!("quotient group order: {}", q.quotient.group().order());
    println!("in family G: {}", yes(q.quotient.in_family_g()));
    for e in q.uniformity.iter().flatten() {
        let k = e.k.map_or("varies".to_string(), |k| k.to_string());
        println!(
            "k[{},{}] = {k}  (parts of type {} meet {} parts of type {})",
            g.type_label(e.from_type),
            g.type_label(e.to_type),
            g.type_label(e.from_type),
            e.part_degree,
            g.type_label(e.to_type)
        );
    }
}

fn gen_spec(name: &str, raw: &[String]) -> Result<(GeneratorSpec, Option<PathBuf>)> {
    let mut params = BTreeMap::new();
    let mut out = None;
    let mut it = raw.iter();
    while let Some(flag) = it.next() {
        let key = flag
            .strip_prefix("--")
            .ok_or_else(|| Error::Parse(format!("expected --name value, found {flag:?}")))?;
        let (key, value) = match key.split_once('=') {
            Some((k, v)) => (k.to_string(), v.to_string()),
            None => {
                let v = it.next().ok_or_else(|| Error::Parse(format!("--{key} needs a value")))?;
                (key.to_string(), v.clone())
            }
        };
        if key == "out" {
            out = Some(PathBuf::from(value));
        } else {
            params.insert(key, value);
        }
    }
    Ok((GeneratorSpec { name: name.to_string(), params }, out))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let limits = Limits::default().with_max_order(cli.max_order);
    match cli.command {
        Command::Analyze { binding } => {
            let a = load_binding(&binding)?;
            let r = full_report(&a, &limits)?;
            if cli.json {
                emit(&Document::Report(Box::new(r)), None)?;
            } else {
                print_analysis(&a, &r);
            }
        }
        Command::Quotient { binding, normal, partition, out } => {
            let a = load_binding(&binding)?;
            let q = match partition {
                Some(path) => quotient_by(&a, &load_partition(&path, a.geometry())?)?,
                None => {
                    let n = a.geometry().element_count();
                    let gens = normal
                        .iter()
                        .map(|c| Permutation::from_cycles(n, c))
                        .collect::<Result<Vec<_>>>()?;
                    normal_quotient(&a, &PermGroup::new(n, gens)?)?
                }
            };
            let doc = Document::Quotient(Box::new(QuotientDoc::from_result(&q)));
            if cli.json || out.is_some() {
                emit(&doc, out.as_deref())?;
            }
            if !cli.json {
                print_quotient(&q);
            }
        }
        Command::Decompose { binding } => {
            let a = load_binding(&binding)?;
            let d = decompose_theorem11(&a)?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&d).expect("decomposition serializes"));
            } else {
                for part in &d.parts {
                    let fibers: Vec<String> = part
                        .fibers
                        .iter()
                        .map(|f| format!("{}({}, faithful {}, primitive {})", f.type_label, f.size, yes(f.faithful), yes(f.primitive)))
                        .collect();
                    println!("part {}: induced order {}; {}", type_list(&a, &part.types), part.induced_order, fibers.join("; "));
                }
            }
        }
        Command::Classify { binding, out } => {
            let a = load_binding(&binding)?;
            let r = full_report(&a, &limits)?;
            let doc = Document::Report(Box::new(r.clone()));
            if cli.json || out.is_some() {
                emit(&doc, out.as_deref())?;
            }
            if !cli.json {
                print_analysis(&a, &r);
            }
        }
        Command::Gen { name, params } => {
            if name == "list" {
                for g in GENERATORS {
                    println!("{g}");
                }
                return Ok(ExitCode::SUCCESS);
            }
            let (spec, out) = gen_spec(&name, &params)?;
            let a = spec.build(&limits)?;
            emit(&Document::Binding(BindingDoc::inline(&a)), out.as_deref())?;
            if out.is_some() && !cli.json {
                eprintln!("{}: {} elements, group order {}", spec.id(), a.geometry().element_count(), a.group().order());
            }
        }
        Command::Census { suite } => {
            let summary = run_suite(&suite, &limits).map_err(|e| match e {
                Error::Parse(m) => Error::Parse(format!("{m} (suites: {})", SUITES.join(", "))),
                other => other,
            })?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
            } else {
                for e in &summary.entries {
                    let verdict = e.verdict.map(|v| serde_json::to_string(&v).expect("verdict")).unwrap_or_default();
                    let case = e.case_tag.map(|c| format!(" case {c}")).unwrap_or_default();
                    let line = e.table1.map(|l| format!(" {l:?}")).unwrap_or_default();
                    let status = if e.ok { "ok  " } else { "FAIL" };
                    let msg = e.message.as_deref().map(|m| format!("  ({m})")).unwrap_or_default();
                    println!("{status} {:45} {}{case}{line}{msg}", e.id, verdict.trim_matches('"'));
                }
                println!("{}: {} passed, {} failed", summary.suite, summary.passed, summary.failed);
            }
            if summary.violation {
                return Ok(ExitCode::from(4));
            }
            if summary.failed > 0 {
                return Ok(ExitCode::from(4));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
