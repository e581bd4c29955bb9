//! `splitword` — recognize split comparability graphs, build 3-uniform
//! permutation words, and compute permutation-representation numbers with
//! certificates.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use splitword::graph::{parse_edge_list, parse_graph6, Graph};
use splitword::labelling::IClass;
use splitword::pipeline::{run_pipeline, EXIT_INTERNAL, EXIT_NOT_COMPARABILITY, EXIT_NOT_SPLIT,
                          SCHEMA_VERSION};
use splitword::posetdim::{prn, PrnError};
use splitword::split::{find_forbidden, split_partition, Forbidden, SplitError};
use splitword::sweep::{sweep, SweepConfig, SweepMode};
use splitword::wordgen::{build_word, digit_string, verify_word, Word};

#[derive(Parser)]
#[command(name = "splitword", version, about = "split comparability graphs: labellings, words, prn")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Edgelist,
    Graph6,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline: partition, labelling, orientation, word, prn. JSON out.
    Run {
        /// Input file, or `-` for stdin
        input: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Accepted for uniformity; run always emits JSON
        #[arg(long)]
        json: bool,
    },
    /// Print the three permutation blocks and z for a split comparability graph.
    Word {
        input: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        json: bool,
    },
    /// Permutation-representation number with certificate.
    Prn {
        input: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        json: bool,
    },
    /// Clique labelling and independent-vertex classification.
    Label {
        input: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        json: bool,
    },
    /// Scan for induced B1/B2/B3/B4.
    Forbidden {
        input: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate or sample graphs and run every cross-check.
    Sweep {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Sample size (sample mode only)
        #[arg(long, default_value_t = 10000)]
        count: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exhaustive,
    Sample,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INTERNAL as u8 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INTERNAL as u8)
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Run { input, format, json: _ } => {
            let g = load_graph(&input, format)?;
            let (report, code) = run_pipeline(&g);
            println!("{}", serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?);
            Ok(code)
        }
        Command::Word { input, format, json } => cmd_word(&load_graph(&input, format)?, json),
        Command::Prn { input, format, json } => cmd_prn(&load_graph(&input, format)?, json),
        Command::Label { input, format, json } => cmd_label(&load_graph(&input, format)?, json),
        Command::Forbidden { input, format, json } => {
            cmd_forbidden(&load_graph(&input, format)?, json)
        }
        Command::Sweep { n_max, mode, seed, count, json } => {
            match mode {
                Mode::Exhaustive if n_max > 6 => {
                    return Err("exhaustive sweep is limited to --n-max 6".into())
                }
                Mode::Sample if n_max > 10 => {
                    return Err("sampled sweep is limited to --n-max 10".into())
                }
                _ => {}
            }
            let cfg = SweepConfig {
                n_max,
                mode: match mode {
                    Mode::Exhaustive => SweepMode::Exhaustive,
                    Mode::Sample => SweepMode::Sample,
                },
                seed,
                count,
                workers: None,
            };
            let summary = sweep(&cfg);
            if json {
                println!("{}", serde_json::to_string_pretty(&summary).map_err(|e| e.to_string())?);
            } else {
                println!(
                    "graphs={} split={} comparability={} prn1={} prn2={} prn3={} failures={}",
                    summary.graphs,
                    summary.split,
                    summary.comparability,
                    summary.prn_histogram[&1],
                    summary.prn_histogram[&2],
                    summary.prn_histogram[&3],
                    summary.failures
                );
                if let Some(f) = &summary.failure {
                    println!("FAIL {} : {}", f.graph6, f.detail);
                }
            }
            Ok(if summary.failures == 0 { 0 } else { EXIT_INTERNAL })
        }
    }
}

fn read_input(input: &str) -> Result<String, String> {
    if input == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading stdin: {e}"))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(input).map_err(|e| format!("reading {input}: {e}"))
    }
}

fn load_graph(input: &str, format: Option<Format>) -> Result<Graph, String> {
    let text = read_input(input)?;
    let format = format.unwrap_or_else(|| {
        // the edge-list document always opens with an n= declaration
        if text.trim_start().starts_with("n=") {
            Format::Edgelist
        } else {
            Format::Graph6
        }
    });
    match format {
        Format::Edgelist => parse_edge_list(&text).map_err(|e| e.to_string()),
        Format::Graph6 => {
            let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
            parse_graph6(line).map_err(|e| e.to_string())
        }
    }
}

fn split_exit(e: &SplitError) -> i32 {
    match e {
        SplitError::NotSplit { .. } => EXIT_NOT_SPLIT,
        SplitError::InvalidPartition(_) => EXIT_INTERNAL,
    }
}

fn cmd_word(g: &Graph, json: bool) -> Result<i32, String> {
    let sg = match split_partition(g) {
        Ok(sg) => sg,
        Err(e) => {
            eprintln!("{e}");
            return Ok(split_exit(&e));
        }
    };
    let (lab, cls) = match splitword::labelling::find_labelling(&sg) {
        Some(found) => found,
        None => {
            let (name, _) = find_forbidden(g, &Forbidden::COMPARABILITY_OBSTRUCTIONS)
                .expect("non-comparability split graph contains B1/B2/B3");
            eprintln!("not a comparability graph: contains an induced {name}");
            return Ok(EXIT_NOT_COMPARABILITY);
        }
    };
    let (q1, q2, q3) = build_word(&sg, &lab, &cls).map_err(|e| e.to_string())?;
    let z = Word::concat(&[&q1, &q2, &q3]);
    let report = verify_word(&sg, &lab, &q1, &q2, &q3, &z).map_err(|e| e.to_string())?;
    if json {
        let digits = digit_string(&z, &lab, &sg).map(|_| {
            serde_json::json!({
                "q1": digit_string(&q1, &lab, &sg),
                "q2": digit_string(&q2, &lab, &sg),
                "q3": digit_string(&q3, &lab, &sg),
                "z": digit_string(&z, &lab, &sg),
            })
        });
        let out = serde_json::json!({
            "schema": SCHEMA_VERSION,
            "q1": q1, "q2": q2, "q3": q3, "z": z,
            "digits": digits,
            "checks": report,
        });
        println!("{}", serde_json::to_string_pretty(&out).map_err(|e| e.to_string())?);
    } else {
        println!("q1: {q1}");
        println!("q2: {q2}");
        println!("q3: {q3}");
        println!("z : {z}");
        if let Some(d) = digit_string(&z, &lab, &sg) {
            println!(
                "digits: q1={} q2={} q3={} z={}",
                digit_string(&q1, &lab, &sg).unwrap(),
                digit_string(&q2, &lab, &sg).unwrap(),
                digit_string(&q3, &lab, &sg).unwrap(),
                d
            );
        }
        println!("checks: {}", if report.all_pass() { "pass" } else { "FAIL" });
    }
    Ok(if report.all_pass() { 0 } else { EXIT_INTERNAL })
}

fn cmd_prn(g: &Graph, json: bool) -> Result<i32, String> {
    match prn(g) {
        Ok(res) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&res).map_err(|e| e.to_string())?);
            } else {
                let kind = match &res.certificate {
                    splitword::posetdim::PrnCertificate::CompleteGraph => "complete graph".into(),
                    splitword::posetdim::PrnCertificate::TwoPermutationWord { q1, q2 } => {
                        format!("two-permutation word {q1} | {q2}")
                    }
                    splitword::posetdim::PrnCertificate::B4Embedding { embedding, .. } => {
                        format!("B4 embedding {:?} with verified 3-block word", embedding.map())
                    }
                };
                println!("prn = {} ({kind})", res.value);
            }
            Ok(0)
        }
        Err(e @ PrnError::NotSplit { .. }) => {
            eprintln!("{e}");
            Ok(EXIT_NOT_SPLIT)
        }
        Err(e @ PrnError::NotComparability { .. }) => {
            eprintln!("{e}");
            Ok(EXIT_NOT_COMPARABILITY)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn cmd_label(g: &Graph, json: bool) -> Result<i32, String> {
    let sg = match split_partition(g) {
        Ok(sg) => sg,
        Err(e) => {
            eprintln!("{e}");
            return Ok(split_exit(&e));
        }
    };
    match splitword::labelling::find_labelling(&sg) {
        Some((lab, cls)) => {
            if json {
                let entries: Vec<serde_json::Value> = cls
                    .entries()
                    .iter()
                    .map(|&(v, c)| {
                        let mut obj = serde_json::to_value(c).unwrap();
                        obj["vertex"] = serde_json::json!(v);
                        obj
                    })
                    .collect();
                let out = serde_json::json!({
                    "schema": SCHEMA_VERSION,
                    "clique": sg.clique_vertices(),
                    "independent": sg.independent_vertices(),
                    "labelling": lab.order(),
                    "classification": entries,
                    "d": cls.d(),
                });
                println!("{}", serde_json::to_string_pretty(&out).map_err(|e| e.to_string())?);
            } else {
                println!("clique order: {:?}", lab.order());
                for &(v, c) in cls.entries() {
                    match c {
                        IClass::A1 { m, n } => println!("vertex {v}: A1 m={m} n={n}"),
                        IClass::A2 { r } => println!("vertex {v}: A2 r={r}"),
                        IClass::A3 { l } => println!("vertex {v}: A3 l={l}"),
                    }
                }
                println!("d = {}", cls.d());
            }
            Ok(0)
        }
        None => {
            let (name, _) = find_forbidden(g, &Forbidden::COMPARABILITY_OBSTRUCTIONS)
                .expect("non-comparability split graph contains B1/B2/B3");
            eprintln!("no valid labelling: contains an induced {name}");
            Ok(EXIT_NOT_COMPARABILITY)
        }
    }
}

fn cmd_forbidden(g: &Graph, json: bool) -> Result<i32, String> {
    let found = find_forbidden(g, &Forbidden::ALL);
    if json {
        let out = match &found {
            Some((name, emb)) => serde_json::json!({
                "schema": SCHEMA_VERSION,
                "found": true,
                "name": name.name(),
                "embedding": emb.map(),
            }),
            None => serde_json::json!({ "schema": SCHEMA_VERSION, "found": false }),
        };
        println!("{}", serde_json::to_string_pretty(&out).map_err(|e| e.to_string())?);
    } else {
        match &found {
            Some((name, emb)) => println!("induced {name} at {:?}", emb.map()),
            None => println!("no induced B1/B2/B3/B4"),
        }
    }
    Ok(0)
}
