mod dot;
mod eval;
mod parser;

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sset_core::anodyne::search_presentation;
use sset_core::constructions::{boundary, standard_simplex};
use sset_core::hom::{check_fibration_with_budget, find_embedding, Budget, DEFAULT_BUDGET};
use sset_core::slices::{slice_under, wide_slice};
use sset_core::verify::{self, SliceKind, VerificationReport};
use sset_core::{CountMode, FibrationClass};

use eval::{eval_str, load_map, load_set, CliError, CliResult};

#[derive(Parser)]
#[command(name = "sset", version, about = "Finite simplicial sets: constructions, fibration checks and certificates")]
struct Cli {
    /// Reserved; every algorithm is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression and print its JSON.
    Build {
        expr: String,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Count the n-simplices of an expression.
    Count {
        expr: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, conflicts_with = "nondeg")]
        all: bool,
        #[arg(long)]
        nondeg: bool,
    },
    /// Check a lifting property for a map stored as JSON.
    Check {
        mapfile: String,
        #[arg(long)]
        class: FibrationClass,
        #[arg(long)]
        max_dim: usize,
        #[arg(long, env = "SSET_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Search for a cell presentation of SUB ⊂ SUP by horn pushouts.
    Certify {
        sub: String,
        sup: String,
        #[arg(long)]
        class: FibrationClass,
        #[arg(long, env = "SSET_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// The slice under a map into a set, truncated at --max-dim.
    Slice(SliceArgs),
    /// The wide slice under a map into a set, truncated at --max-dim.
    WideSlice(SliceArgs),
    /// Run one of the built-in verification claims.
    Verify {
        claim: Claim,
        #[arg(long)]
        n: usize,
        /// Object bound for the poset corpora (thmA, thmB, thmD).
        #[arg(long)]
        objects: Option<usize>,
        /// Print full reports as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Print an expression as JSON or Graphviz DOT.
    Export {
        expr: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(clap::Args)]
struct SliceArgs {
    setfile: String,
    mapfile: String,
    #[arg(long)]
    max_dim: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Claim {
    Prism,
    Afilt,
    Bfilt,
    #[value(name = "thmC")]
    ThmC,
    #[value(name = "thmA")]
    ThmA,
    #[value(name = "thmB")]
    ThmB,
    #[value(name = "thmD")]
    ThmD,
    Wjcounts,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn write_out(text: &str, output: Option<&str>) -> CliResult<()> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(path.to_string(), e)),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> CliResult<u8> {
    match command {
        Command::Build { expr, output } => {
            let x = eval_str(&expr, &Budget::default())?;
            write_out(&x.to_json_string(), output.as_deref())?;
            Ok(0)
        }
        Command::Count { expr, dim, all, .. } => {
            let x = eval_str(&expr, &Budget::default())?;
            let mode = if all { CountMode::All } else { CountMode::Nondegenerate };
            println!("{}", x.simplex_count(dim, mode));
            Ok(0)
        }
        Command::Check { mapfile, class, max_dim, budget } => {
            let p = load_map(&mapfile)?;
            let c = check_fibration_with_budget(&p, class, max_dim, &Budget::new(budget))?;
            println!("{}", c.to_json());
            Ok(if c.holds { 0 } else { 1 })
        }
        Command::Certify { sub, sup, class, budget } => {
            let budget = Budget::new(budget);
            let a = eval_str(&sub, &budget)?;
            let b = eval_str(&sup, &budget)?;
            let Some(embed) = find_embedding(&a, &b, &budget)? else {
                eprintln!("the first set does not embed in the second");
                return Ok(1);
            };
            match search_presentation(&embed.image(), class, &budget)? {
                Some(cert) => {
                    println!(
                        "{}",
                        json!({"certificate": cert.to_json(class), "steps": cert.describe(None), "step_count": cert.steps.len()})
                    );
                    Ok(0)
                }
                None => {
                    eprintln!("no {class} cell presentation exists");
                    Ok(1)
                }
            }
        }
        Command::Slice(args) => slice(args, false),
        Command::WideSlice(args) => slice(args, true),
        Command::Verify { claim, n, objects, json } => {
            let reports = verify_claim(claim, n, objects)?;
            if json {
                let v: Vec<Value> = reports.iter().map(VerificationReport::to_json).collect();
                println!("{}", serde_json::to_string_pretty(&v).expect("plain data"));
            } else {
                for r in &reports {
                    print_report(r);
                }
            }
            Ok(if reports.iter().all(|r| r.pass) { 0 } else { 1 })
        }
        Command::Export { expr, format } => {
            let x = eval_str(&expr, &Budget::default())?;
            match format {
                Format::Json => println!("{}", x.to_json_string()),
                Format::Dot => print!("{}", dot::to_dot(&x)),
            }
            Ok(0)
        }
    }
}

fn slice(args: SliceArgs, wide: bool) -> CliResult<u8> {
    let x = load_set(&args.setfile)?;
    let p = load_map(&args.mapfile)?;
    let s = if wide { wide_slice(&x, &p, args.max_dim)? } else { slice_under(&x, &p, args.max_dim)? };
    println!("{}", s.truncated().to_json_string());
    Ok(0)
}

fn verify_claim(claim: Claim, n: usize, objects: Option<usize>) -> CliResult<Vec<VerificationReport>> {
    let d = |k| Arc::new(standard_simplex(k));
    Ok(match claim {
        Claim::Prism => vec![verify::verify_prism(n)],
        Claim::Afilt => vec![verify::verify_a_filtration(n)],
        Claim::Bfilt => vec![verify::verify_b_filtration(n)],
        Claim::ThmC => vec![verify::verify_thm_c_filtration(n)],
        Claim::ThmA => vec![verify::verify_slice_corpus(SliceKind::Ordinary, objects.unwrap_or(2), n)],
        Claim::ThmB => vec![verify::verify_slice_corpus(SliceKind::Wide, objects.unwrap_or(2), n)],
        Claim::ThmD => vec![verify::verify_collage_corpus(objects.unwrap_or(4), n)?],
        Claim::Wjcounts => [(d(0), d(0)), (d(0), d(1)), (d(1), d(1)), (Arc::new(boundary(1)), d(1))]
            .iter()
            .map(|(a, b)| verify::verify_widejoin_counts(a, b, n))
            .collect(),
        Claim::All => verify::run_suite(n),
    })
}

fn print_report(r: &VerificationReport) {
    println!("{}", r.summary_line());
    for c in r.failures() {
        if c.detail.is_null() {
            println!("  failed: {}", c.name);
        } else {
            println!("  failed: {} {}", c.name, c.detail);
        }
    }
    if let Some(t) = r.details.get("top_simplices") {
        println!("  {t} top simplices");
    }
    for key in ["instances", "with_certificate", "fixtures", "printed_variant_first_failure"] {
        if let Some(v) = r.details.get(key).filter(|v| !v.is_null()) {
            println!("  {key}: {v}");
        }
    }
}
