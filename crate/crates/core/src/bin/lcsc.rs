use clap::{Args, Parser, Subcommand};
use lcsc::corpus;
use lcsc::filters::Evaluator;
use lcsc::pipeline::{self, Config, FilterOptions, StageError};
use lcsc::Error;
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "lcsc", version, about = "Tight groupoids of finite left cancellative small categories")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Write a DOT rendering of the tight groupoid to this path.
    #[arg(long, global = true, value_name = "PATH")]
    dot: Option<PathBuf>,
    /// Cap on generated semigroup elements and tight-filter searches.
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    cap: Option<u64>,
    /// Depth bound for cyclic graphs. The result is marked inexact.
    #[arg(long, global = true, value_name = "N")]
    truncate: Option<usize>,
    /// Comma-separated tight-filter evaluators.
    #[arg(long, global = true, value_delimiter = ',', value_name = "LIST")]
    evaluators: Option<Vec<String>>,
}

#[derive(Subcommand)]
enum Command {
    /// Check category axioms, left cancellation and system laws.
    Validate { file: PathBuf },
    /// Run the full pipeline and report the simplicity verdict.
    Analyze { file: PathBuf },
    /// List filters of the idempotent semilattice.
    Filters {
        file: PathBuf,
        /// Only ultrafilters.
        #[arg(long)]
        ultra: bool,
        /// Only tight filters.
        #[arg(long)]
        tight: bool,
        /// Run the filter/path-set round trip and equivariance checks.
        #[arg(long)]
        check_equivalences: bool,
    },
    /// Build the tight groupoid and its verdicts.
    Groupoid { file: PathBuf },
    /// Analyse a group system and its product.
    Zs { file: PathBuf },
    /// Emit random inputs that are valid by construction.
    Corpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Write one file per input here instead of printing them.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: &'a StageError,
    exit_code: i32,
}

fn config(g: &Global) -> Result<Config, StageError> {
    let mut cfg = Config::default();
    if let Some(cap) = g.cap {
        cfg.cap = usize::try_from(cap).unwrap_or(usize::MAX);
    }
    cfg.truncate = g.truncate;
    if let Some(names) = &g.evaluators {
        let mut evs = Vec::new();
        for n in names {
            let e: Evaluator = n.trim().parse().map_err(|error| StageError { stage: "arguments", error })?;
            if !evs.contains(&e) {
                evs.push(e);
            }
        }
        if evs.is_empty() {
            let error = Error::Parse("--evaluators needs at least one name".into());
            return Err(StageError { stage: "arguments", error });
        }
        evs.sort();
        cfg.evaluators = evs;
    }
    Ok(cfg)
}

fn read(path: &Path) -> Result<String, StageError> {
    let read =
        if path == Path::new("-") { std::io::read_to_string(std::io::stdin()) } else { std::fs::read_to_string(path) };
    read.map_err(|e| StageError { stage: "read", error: Error::Io(format!("{}: {e}", path.display())) })
}

fn write(path: &Path, contents: &str) -> Result<(), StageError> {
    std::fs::write(path, contents)
        .map_err(|e| StageError { stage: "write", error: Error::Io(format!("{}: {e}", path.display())) })
}

/// Text rendering: one `path: value` line per leaf of the JSON report.
fn text<T: Serialize>(title: &str, report: &T) -> String {
    fn walk(prefix: &str, v: &serde_json::Value, out: &mut String) {
        match v {
            serde_json::Value::Object(map) => {
                for (k, x) in map {
                    let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&p, x, out);
                }
            }
            serde_json::Value::Array(xs) if xs.iter().any(|x| x.is_object() || x.is_array()) => {
                for (i, x) in xs.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            leaf => out.push_str(&format!("{prefix}: {leaf}\n")),
        }
    }
    let mut out = format!("{title}\n");
    walk("", &serde_json::to_value(report).expect("reports are plain data"), &mut out);
    out
}

fn emit<T: Serialize>(json: bool, title: &str, report: &T) {
    if json {
        print!("{}", pipeline::to_json(report));
    } else {
        print!("{}", text(title, report));
    }
}

fn run(cli: &Cli) -> Result<u8, StageError> {
    let cfg = config(&cli.global)?;
    let json = cli.global.json;
    match &cli.command {
        Command::Validate { file } => {
            let r = pipeline::validate(&read(file)?, &cfg)?;
            emit(json, "validate", &r);
            Ok(if r.ok { 0 } else { 1 })
        }
        Command::Analyze { file } => {
            let text = read(file)?;
            let r = pipeline::analyze(&text, &cfg)?;
            if let Some(path) = &cli.global.dot {
                write(path, &pipeline::groupoid(&text, &cfg)?.1)?;
            }
            emit(json, "analyze", &r);
            Ok(0)
        }
        Command::Filters { file, ultra, tight, check_equivalences } => {
            let opts = FilterOptions { ultra: *ultra, tight: *tight, check_equivalences: *check_equivalences };
            let r = pipeline::filters(&read(file)?, &cfg, opts)?;
            emit(json, "filters", &r);
            Ok(0)
        }
        Command::Groupoid { file } => {
            let (r, dot) = pipeline::groupoid(&read(file)?, &cfg)?;
            if let Some(path) = &cli.global.dot {
                write(path, &dot)?;
            }
            emit(json, "groupoid", &r);
            Ok(0)
        }
        Command::Zs { file } => {
            let r = pipeline::zs(&read(file)?, &cfg)?;
            emit(json, "zs", &r);
            Ok(if r.system.valid { 0 } else { 1 })
        }
        Command::Corpus { seed, n, out } => {
            let files = corpus::generate(*seed, *n).map_err(|error| StageError { stage: "corpus", error })?;
            match out {
                Some(dir) => {
                    std::fs::create_dir_all(dir).map_err(|e| StageError {
                        stage: "write",
                        error: Error::Io(format!("{}: {e}", dir.display())),
                    })?;
                    for f in &files {
                        write(&dir.join(&f.name), &f.contents)?;
                    }
                    println!("wrote {} files to {}", files.len(), dir.display());
                }
                None => {
                    let docs: Vec<serde_json::Value> = files
                        .iter()
                        .map(|f| {
                            serde_json::json!({
                                "name": f.name,
                                "document": serde_json::from_str::<serde_json::Value>(&f.contents)
                                    .expect("generated files are JSON"),
                            })
                        })
                        .collect();
                    print!("{}", pipeline::to_json(&serde_json::json!({"seed": seed, "n": n, "files": docs})));
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let code = e.exit_code();
            if cli.global.json {
                print!("{}", pipeline::to_json(&ErrorReport { error: &e, exit_code: code }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(code as u8)
        }
    }
}
