//! Command-line front end: classify system files, compute hitting sets,
//! run the built-in corpus and explain lattice derivations.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use transit::classify::{
    emit_report, hitting_set_report, run_classify, ClassifyError, HittingSetReport,
    ReportFormat, Scales,
};
use transit::corpus::{corpus_entries, run_corpus};
use transit::descriptor::parse_system_file;
use transit::interval::{parse_rat, GridScale};
use transit::types::{PropertyId, Provenance, WitnessScale};

#[derive(Parser)]
#[command(name = "transit", version, about = "Classify subshifts and piecewise-linear interval maps against the transitivity hierarchy")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a system file against the property hierarchy
    Classify {
        file: PathBuf,
        /// Comma-separated property filter, e.g. TT,ST,TM
        #[arg(long, value_delimiter = ',')]
        props: Vec<String>,
        #[command(flatten)]
        scale: ScaleArgs,
        #[arg(long, value_parser = ["text", "json"], default_value = "text")]
        format: String,
    },
    /// Exact or finite-prefix hitting-time set of two cylinders
    HittingSet {
        file: PathBuf,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        /// Prefix length reported for oracle languages
        #[arg(long, default_value_t = 60)]
        max_n: u64,
        #[arg(long, value_parser = ["text", "json"], default_value = "text")]
        format: String,
    },
    /// Built-in example systems
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Lattice-side views of a classification
    Lattice {
        #[command(subcommand)]
        action: LatticeAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// List the catalog
    List,
    /// Classify every entry and compare with the recorded expectations
    Run {
        #[arg(long, value_parser = ["text", "json"], default_value = "text")]
        format: String,
    },
    /// Print one entry as a system file
    Export { id: String },
}

#[derive(Subcommand)]
enum LatticeAction {
    /// Classify a file and print the derivation chain of every propagated verdict
    Explain {
        file: PathBuf,
        #[command(flatten)]
        scale: ScaleArgs,
    },
}

#[derive(Args)]
struct ScaleArgs {
    /// Witness scale, e.g. ell=2,L=24,H=32,K=8
    #[arg(long)]
    scale: Option<String>,
    /// Grid cell length for interval maps, e.g. eps=1/64
    #[arg(long)]
    grid: Option<String>,
    /// Iteration horizon for interval maps
    #[arg(long)]
    horizon: Option<usize>,
}

fn parse_scales(args: &ScaleArgs) -> Result<Scales, String> {
    let mut scales = Scales::default();
    if let Some(text) = &args.scale {
        let mut ws = WitnessScale::default();
        for part in text.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| format!("bad scale component `{part}`"))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| format!("bad scale value `{value}`"))?;
            match key.trim() {
                "ell" => ws.ell = value,
                "L" => ws.tail_len = value,
                "H" => ws.horizon = value,
                "K" => ws.run_len = value,
                other => return Err(format!("unknown scale key `{other}`")),
            }
        }
        scales.witness = WitnessScale::new(ws.ell, ws.tail_len, ws.horizon, ws.run_len)
            .map_err(|e| e.to_string())?;
    }
    if let Some(text) = &args.grid {
        let value = text.strip_prefix("eps=").unwrap_or(text);
        let eps = parse_rat(value).map_err(|e| e.to_string())?;
        scales.grid = GridScale::new(eps).map_err(|e| e.to_string())?;
    }
    if let Some(h) = args.horizon {
        scales.horizon = h;
    }
    Ok(scales)
}

fn parse_props(props: &[String]) -> Result<Vec<PropertyId>, String> {
    if props.is_empty() {
        return Ok(PropertyId::ALL.to_vec());
    }
    props.iter().map(|s| s.parse::<PropertyId>()).collect()
}

const EXIT_CONTRADICTION: u8 = 1;
const EXIT_PARSE: u8 = 2;

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

fn classify_error_code(e: &ClassifyError) -> u8 {
    match e {
        ClassifyError::Descriptor(_) => EXIT_PARSE,
        ClassifyError::Contradiction(_) => EXIT_CONTRADICTION,
        ClassifyError::Module(_) => EXIT_CONTRADICTION,
    }
}

fn read_descriptor(path: &PathBuf) -> Result<transit::descriptor::SystemDescriptor, ExitCode> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    parse_system_file(&text).map_err(|e| fail(EXIT_PARSE, e))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Classify {
            file,
            props,
            scale,
            format,
        } => {
            let d = match read_descriptor(&file) {
                Ok(d) => d,
                Err(code) => return code,
            };
            let props = match parse_props(&props) {
                Ok(p) => p,
                Err(e) => return fail(EXIT_PARSE, e),
            };
            let scales = match parse_scales(&scale) {
                Ok(s) => s,
                Err(e) => return fail(EXIT_PARSE, e),
            };
            match run_classify(&d, &props, &scales) {
                Ok(report) => {
                    let fmt = if format == "json" {
                        ReportFormat::Json
                    } else {
                        ReportFormat::Text
                    };
                    println!("{}", emit_report(&report, fmt));
                    if report.consistency.contradictions.is_empty() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(EXIT_CONTRADICTION)
                    }
                }
                Err(e) => {
                    let code = classify_error_code(&e);
                    fail(code, e)
                }
            }
        }
        Command::HittingSet {
            file,
            u,
            v,
            max_n,
            format,
        } => {
            let d = match read_descriptor(&file) {
                Ok(d) => d,
                Err(code) => return code,
            };
            match hitting_set_report(&d, &u, &v, max_n) {
                Ok(r) => {
                    if format == "json" {
                        println!("{}", serde_json::to_string_pretty(&r).unwrap());
                    } else {
                        match &r {
                            HittingSetReport::Exact {
                                description,
                                threshold,
                                period,
                                class,
                                members_up_to_60,
                            } => {
                                println!("N([u],[v]) = {description}");
                                println!(
                                    "threshold: {threshold}, period: {period}, class: {class}"
                                );
                                println!(
                                    "members up to 60: {}",
                                    members_up_to_60
                                        .iter()
                                        .map(u64::to_string)
                                        .collect::<Vec<_>>()
                                        .join(" ")
                                );
                            }
                            HittingSetReport::FinitePrefix { max_n, members, note } => {
                                println!(
                                    "members up to {max_n}: {}",
                                    members
                                        .iter()
                                        .map(u64::to_string)
                                        .collect::<Vec<_>>()
                                        .join(" ")
                                );
                                println!("({note})");
                            }
                        }
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    let code = classify_error_code(&e);
                    fail(code, e)
                }
            }
        }
        Command::Corpus { action } => match action {
            CorpusAction::List => {
                for e in corpus_entries() {
                    let expectations = e.expected.len();
                    println!("{:<22} {expectations:>2} recorded expectations", e.id);
                }
                ExitCode::SUCCESS
            }
            CorpusAction::Export { id } => {
                match corpus_entries().into_iter().find(|e| e.id == id) {
                    Some(e) => {
                        println!(
                            "{}",
                            serde_json::to_string_pretty(&e.descriptor).unwrap()
                        );
                        ExitCode::SUCCESS
                    }
                    None => fail(EXIT_PARSE, format!("no corpus entry named `{id}`")),
                }
            }
            CorpusAction::Run { format } => match run_corpus(None) {
                Ok(report) => {
                    if format == "json" {
                        println!("{}", serde_json::to_string_pretty(&report).unwrap());
                    } else {
                        for e in &report.entries {
                            println!("{:<22} {}", e.id, if e.pass { "PASS" } else { "FAIL" });
                            for f in &e.failures {
                                println!("    failure: {f}");
                            }
                            for n in &e.notes {
                                println!("    note: {n}");
                            }
                        }
                        println!("\nnon-implication 6: {}", report.statement_six);
                        println!(
                            "{} of {} entries pass",
                            report.entries.iter().filter(|e| e.pass).count(),
                            report.entries.len()
                        );
                    }
                    if report.all_pass() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(EXIT_CONTRADICTION)
                    }
                }
                Err(e) => fail(classify_error_code(&e), e),
            },
        },
        Command::Lattice { action } => match action {
            LatticeAction::Explain { file, scale } => {
                let d = match read_descriptor(&file) {
                    Ok(d) => d,
                    Err(code) => return code,
                };
                let scales = match parse_scales(&scale) {
                    Ok(s) => s,
                    Err(e) => return fail(EXIT_PARSE, e),
                };
                match run_classify(&d, &PropertyId::ALL, &scales) {
                    Ok(report) => {
                        println!("system: {}", report.system);
                        let mut any = false;
                        for (p, v) in &report.verdicts {
                            if let Provenance::Propagated { source, rule } = &v.provenance {
                                any = true;
                                println!("\n{p} is {} (from {source})", v.status);
                                println!("  rule: {rule}");
                                if let transit::types::Evidence::Derived { chain } = &v.evidence
                                {
                                    for step in chain {
                                        println!("  - {step}");
                                    }
                                }
                            }
                        }
                        if !any {
                            println!("every verdict is direct; nothing was propagated");
                        }
                        ExitCode::SUCCESS
                    }
                    Err(e) => fail(classify_error_code(&e), e),
                }
            }
        },
    }
}
