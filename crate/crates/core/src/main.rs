//! Command-line front end.
//!
//! Exit codes: 0 on success or a verified statement, 1 on violations or a
//! failed verification, 2 on usage errors (including unreadable files).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use chartcalc::diagram::{emit_diagram, DiagramFormat, DiagramOptions};
use chartcalc::embed::Embedding;
use chartcalc::engine::theorem::run_pipeline;
use chartcalc::engine::{eliminate_fig12, replay, EngineOptions, Verdict};
use chartcalc::enumerate::{enumerate, verify_classification, ClassificationLemma, EnumerateFlags};
use chartcalc::format::parse;
use chartcalc::model::{validate, Chart, Label, ValidationMode};
use chartcalc::reference::{class_of_code, FIG12_IDS};
use chartcalc::region::{
    boundary_orientation, detect_all_lenses, find_angled_disks, io_balance, min_white_lower_bound,
    CompletionRules, Region,
};
use chartcalc::subgraph::{
    classify_component, closed_curves, components, edge_roles, extract, gamma_type,
};

#[derive(Parser)]
#[command(
    name = "chartcalc",
    version,
    about = "Combinatorial calculus of surface-braid charts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the chart axioms.
    Validate {
        file: PathBuf,
        /// Also check the standing assumptions on minimal charts.
        #[arg(long)]
        minimal: bool,
    },
    /// Components, edge roles, closed curves and the type of Γ_m.
    Features {
        file: PathBuf,
        #[arg(long)]
        label: Label,
    },
    /// Angled disks of Γ_m.
    Disks {
        file: PathBuf,
        #[arg(long)]
        label: Label,
    },
    /// Lenses of all types.
    Lenses { file: PathBuf },
    /// IO-Calculation over a union of faces.
    Io {
        file: PathBuf,
        /// Comma-separated face ids.
        #[arg(long, value_delimiter = ',', required = true)]
        region: Vec<usize>,
        #[arg(long)]
        label: Label,
    },
    /// Enumerate components of Γ_m with a given number of white vertices.
    Enumerate {
        #[arg(long)]
        whites: usize,
        #[arg(long)]
        no_loop: bool,
        /// Require an orientation satisfying the local rules.
        #[arg(long)]
        orient: bool,
    },
    /// Verify a classification or elimination statement.
    Verify {
        statement: Statement,
        /// Print the full trace.
        #[arg(long)]
        trace: bool,
        /// Disable the lens axiom (theorem-1.1).
        #[arg(long)]
        no_lens_axiom: bool,
        /// Restrict the five-vertex stage to graph (g) (theorem-1.1).
        #[arg(long)]
        only_g: bool,
    },
    /// Emit a diagram.
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value = "dot")]
        format: String,
        /// Collapse terminal edges into dots.
        #[arg(long)]
        collapse_bw: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Statement {
    #[value(name = "lemma-5.1b")]
    Lemma51b,
    #[value(name = "lemma-7.1")]
    Lemma71,
    #[value(name = "lemma-7.2")]
    Lemma72,
    #[value(name = "prop-14.2")]
    Prop142,
    #[value(name = "theorem-1.1")]
    Theorem11,
}

/// Outcome of a command.
enum Outcome {
    Ok,
    Failed,
    Usage(String),
}

fn load(path: &Path) -> Result<Chart, Outcome> {
    let text =
        fs::read_to_string(path).map_err(|e| Outcome::Usage(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| {
        eprintln!("{}: {e}", path.display());
        Outcome::Failed
    })
}

fn embedding(chart: &Chart) -> Result<Embedding, Outcome> {
    Embedding::new(chart).map_err(|e| {
        eprintln!("embedding: {e}");
        Outcome::Failed
    })
}

fn cmd_validate(file: &Path, minimal: bool) -> Result<Outcome, Outcome> {
    let chart = load(file)?;
    let mode = if minimal {
        ValidationMode::MinimalAssumptions
    } else {
        ValidationMode::AxiomsOnly
    };
    let violations = validate(&chart, mode);
    if violations.is_empty() {
        println!("ok");
        return Ok(Outcome::Ok);
    }
    for v in &violations {
        println!("{v}");
    }
    println!("{} violation(s)", violations.len());
    Ok(Outcome::Failed)
}

fn cmd_features(file: &Path, label: Label) -> Result<Outcome, Outcome> {
    let chart = load(file)?;
    let sub = extract(&chart, label).map_err(|e| Outcome::Usage(e.to_string()))?;
    println!("type {}", gamma_type(&chart, label));
    for (i, comp) in components(&chart, &sub).iter().enumerate() {
        let class = classify_component(&chart, &sub, comp);
        println!(
            "component {i}: w={} b={} crossings={} class={}",
            comp.white_count(),
            comp.black_count(),
            comp.crossing_count,
            class.class
        );
    }
    for (curve, role) in edge_roles(&chart, &sub) {
        let name = match curve {
            chartcalc::subgraph::CurveRef::Edge(e) => &chart.edges[e].name,
            chartcalc::subgraph::CurveRef::Hoop(h) => &chart.hoops[h].name,
        };
        println!("edge {name}: {role:?}");
    }
    for c in closed_curves(&chart, &sub) {
        println!("closed {:?}: sides {:?}", c.kind, c.side_whites);
    }
    Ok(Outcome::Ok)
}

fn cmd_disks(file: &Path, label: Label) -> Result<Outcome, Outcome> {
    let chart = load(file)?;
    let disks = find_angled_disks(&chart, label).map_err(|e| {
        eprintln!("{e}");
        Outcome::Failed
    })?;
    for d in &disks {
        let whites: Vec<&str> = d
            .whites
            .iter()
            .map(|&v| chart.vertices[v].name.as_str())
            .collect();
        let faces: Vec<String> = d.region.faces.iter().map(|f| f.to_string()).collect();
        println!(
            "{}-angled disk faces [{}] whites [{}] feelers {} special {} boundary {:?}",
            d.k,
            faces.join(","),
            whites.join(","),
            d.feeler_count(),
            d.is_special(),
            boundary_orientation(d)
        );
    }
    println!("{} disk(s)", disks.len());
    Ok(Outcome::Ok)
}

fn cmd_lenses(file: &Path) -> Result<Outcome, Outcome> {
    let chart = load(file)?;
    let lenses = detect_all_lenses(&chart).map_err(|e| {
        eprintln!("{e}");
        Outcome::Failed
    })?;
    let names = |es: &[usize]| {
        es.iter()
            .map(|&e| chart.edges[e].name.clone())
            .collect::<Vec<_>>()
            .join("+")
    };
    for l in &lenses {
        println!(
            "lens ({}, {}): {} ∪ {} ({:?})",
            l.label,
            l.label + 1,
            names(&l.e1),
            names(&l.e2),
            l.condition
        );
    }
    println!("{} lens(es)", lenses.len());
    Ok(Outcome::Ok)
}

fn cmd_io(file: &Path, faces: &[usize], label: Label) -> Result<Outcome, Outcome> {
    let chart = load(file)?;
    let emb = embedding(&chart)?;
    let region = Region::new(faces.iter().copied());
    let sheet =
        io_balance(&chart, &emb, &region, label, &[]).map_err(|e| Outcome::Usage(e.to_string()))?;
    println!(
        "inward {} outward {} (optional {}/{}) balanced {}",
        sheet.inward,
        sheet.outward,
        sheet.optional_inward,
        sheet.optional_outward,
        sheet.balance_possible()
    );
    match min_white_lower_bound(&chart, &emb, &region, label, CompletionRules::default()) {
        Ok(b) => println!("min white lower bound {b}"),
        Err(e) => println!("min white lower bound: {e}"),
    }
    Ok(Outcome::Ok)
}

fn cmd_enumerate(whites: usize, no_loop: bool, orient: bool) -> Outcome {
    let flags = EnumerateFlags {
        no_loop,
        orient,
        local_rules: orient,
    };
    let found = enumerate(whites, flags);
    for e in &found {
        let class = class_of_code(&e.code).map_or("unnamed".to_string(), |k| k.to_string());
        println!("{} b={} {}", e.code, e.black_count(), class);
    }
    println!("{} code(s)", found.len());
    Outcome::Ok
}

fn report_classification(lemma: ClassificationLemma) -> Outcome {
    let r = verify_classification(lemma);
    println!("matched: {}", r.matched.join(", "));
    if !r.missing.is_empty() {
        println!("missing: {}", r.missing.join(", "));
    }
    for c in &r.extras {
        println!("extra: {c}");
    }
    if r.is_match() {
        println!("verified");
        Outcome::Ok
    } else {
        println!("mismatch");
        Outcome::Failed
    }
}

fn cmd_verify(
    statement: Statement,
    show_trace: bool,
    opts: EngineOptions,
) -> Result<Outcome, Outcome> {
    let engine_err = |e: chartcalc::engine::EngineError| {
        eprintln!("{e}");
        Outcome::Failed
    };
    match statement {
        Statement::Lemma51b => Ok(report_classification(ClassificationLemma::SmallComponents)),
        Statement::Lemma71 => Ok(report_classification(ClassificationLemma::FiveWhites)),
        Statement::Lemma72 => Ok(report_classification(
            ClassificationLemma::FiveWhiteOrientations,
        )),
        Statement::Prop142 => {
            let mut ok = true;
            for g in FIG12_IDS {
                let o = eliminate_fig12(g, &opts).map_err(engine_err)?;
                let r = replay(&o.trace);
                let expected = if g == 'g' {
                    Verdict::Survives
                } else {
                    Verdict::Refuted
                };
                ok &= o.verdict == expected && o.agrees() && r.ok();
                println!(
                    "fig12({g}): {} ({} branches, {} surviving, replay {}/{})",
                    o.verdict.tag(),
                    o.branches,
                    o.survivors.len(),
                    r.checked - r.failures.len(),
                    r.checked
                );
                if show_trace {
                    print!("{}", o.trace.render());
                }
            }
            println!(
                "{}",
                if ok {
                    "verified: only fig12(g) survives"
                } else {
                    "not verified"
                }
            );
            Ok(if ok { Outcome::Ok } else { Outcome::Failed })
        }
        Statement::Theorem11 => {
            let report = run_pipeline(&opts).map_err(engine_err)?;
            if show_trace {
                print!("{}", report.trace.render());
            }
            let types: Vec<String> = report.types.iter().map(|t| format!("{t:?}")).collect();
            println!("types: {}", types.join(", "));
            for s in &report.fig12 {
                println!(
                    "fig12({}): {} ({} branches, {} surviving)",
                    s.graph,
                    s.verdict.tag(),
                    s.branches,
                    s.survivors
                );
            }
            for g in &report.gluing {
                println!(
                    "gluing {}: {} completions, {} split",
                    g.branch, g.completions, g.split
                );
                for c in &g.cases {
                    let v = if c.refuted { "refuted" } else { "survives" };
                    println!("  {}: {v}: {}", c.rule, c.witness);
                }
            }
            let r = replay(&report.trace);
            println!(
                "trace: {} records, replay {}/{}",
                report.trace.len(),
                r.checked - r.failures.len(),
                r.checked
            );
            for f in &r.failures {
                println!("replay failure: {f}");
            }
            println!("{}", report.conclusion);
            Ok(if report.refuted && r.ok() {
                Outcome::Ok
            } else {
                Outcome::Failed
            })
        }
    }
}

fn cmd_render(
    file: &Path,
    output: &Path,
    format: &str,
    collapse_bw: bool,
) -> Result<Outcome, Outcome> {
    let format: DiagramFormat = format
        .parse()
        .map_err(|e: chartcalc::diagram::DiagramError| Outcome::Usage(e.to_string()))?;
    let chart = load(file)?;
    let text = emit_diagram(&chart, format, DiagramOptions { collapse_bw });
    fs::write(output, text).map_err(|e| Outcome::Usage(format!("{}: {e}", output.display())))?;
    Ok(Outcome::Ok)
}

fn run(cli: Cli) -> Outcome {
    let result = match cli.command {
        Command::Validate { file, minimal } => cmd_validate(&file, minimal),
        Command::Features { file, label } => cmd_features(&file, label),
        Command::Disks { file, label } => cmd_disks(&file, label),
        Command::Lenses { file } => cmd_lenses(&file),
        Command::Io {
            file,
            region,
            label,
        } => cmd_io(&file, &region, label),
        Command::Enumerate {
            whites,
            no_loop,
            orient,
        } => Ok(cmd_enumerate(whites, no_loop, orient)),
        Command::Verify {
            statement,
            trace,
            no_lens_axiom,
            only_g,
        } => cmd_verify(
            statement,
            trace,
            EngineOptions {
                lens_axiom: !no_lens_axiom,
                only_g,
            },
        ),
        Command::Render {
            file,
            output,
            format,
            collapse_bw,
        } => cmd_render(&file, &output, &format, collapse_bw),
    };
    result.unwrap_or_else(|o| o)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Outcome::Ok => ExitCode::SUCCESS,
        Outcome::Failed => ExitCode::from(1),
        Outcome::Usage(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
