use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use matroid_hopf::catalog::{default_cache_dir, Catalog, MAX_CATALOG_N};
use matroid_hopf::characters::{alpha, poly_p};
use matroid_hopf::dendriform::split;
use matroid_hopf::expr::parse_expr;
use matroid_hopf::hopf::{antipode_of_matroid, coproduct};
use matroid_hopf::io::{read_matroid_file, to_json};
use matroid_hopf::verify::{group_names, run_groups};
use matroid_hopf::{canonical_key, CoproductMode, Error, Matroid};

#[derive(Parser)]
#[command(name = "matroid-hopf", version, about = "Matroid Hopf algebras, dendriform splittings and the P_M invariant")]
struct Cli {
    /// Emit one JSON object per result line.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Source {
    /// JSON matroid file: {"n": 3, "independent": [[], [0], ...]}.
    #[arg(long, conflicts_with = "expr", required_unless_present = "expr")]
    input: Option<PathBuf>,

    /// Constructor expression such as "uniform(2,4)" or "graphic(3; 0-1, 1-2)".
    #[arg(long)]
    expr: Option<String>,
}

impl Source {
    fn load(&self) -> Result<Matroid, Error> {
        match (&self.input, &self.expr) {
            (Some(path), _) => read_matroid_file(path),
            (None, Some(text)) => parse_expr(text),
            (None, None) => Err(Error::Parse("one of --input or --expr is required".into())),
        }
    }
}

#[derive(Args)]
struct ModeArg {
    #[arg(long, default_value = "rd", value_parser = parse_mode)]
    mode: CoproductMode,
}

fn parse_mode(s: &str) -> Result<CoproductMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Print a matroid, its isomorphism class and rank.
    Show(Source),
    /// Coproduct of the isomorphism class.
    Coproduct {
        #[command(flatten)]
        mode: ModeArg,
        #[command(flatten)]
        source: Source,
    },
    /// Antipode of the restriction-deletion Hopf algebra.
    Antipode(Source),
    /// The two halves of the reduced coproduct.
    Split {
        #[command(flatten)]
        mode: ModeArg,
        #[command(flatten)]
        source: Source,
    },
    /// The polynomial P_M.
    Poly(Source),
    /// The convolution character alpha(M).
    Alpha(Source),
    /// Run the identity suites over every catalog up to --max-n.
    Verify {
        #[arg(long, default_value_t = MAX_CATALOG_N)]
        max_n: usize,
        /// Run every suite group (the default when no --suite is given).
        #[arg(long, conflicts_with = "suite")]
        all: bool,
        /// Restrict to one suite group; may be repeated.
        #[arg(long)]
        suite: Vec<String>,
    },
    /// Enumerate isomorphism classes and write the catalog cache.
    Enumerate {
        #[arg(long, default_value_t = MAX_CATALOG_N)]
        max_n: usize,
        /// Cache directory; defaults to $MATROID_HOPF_CACHE_DIR.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn emit(json: bool, command: &str, label: Option<&str>, value: String) {
    if json {
        let mut obj = json!({ "command": command, "result": value });
        if let Some(label) = label {
            obj["part"] = json!(label);
        }
        println!("{obj}");
    } else if let Some(label) = label {
        println!("{label}: {value}");
    } else {
        println!("{value}");
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let json = cli.json;
    match cli.command {
        Command::Show(source) => {
            let m = source.load()?;
            let key = canonical_key(&m)?;
            if json {
                println!(
                    "{}",
                    json!({
                        "command": "show",
                        "class": key.to_string(),
                        "n": m.n(),
                        "rank": m.matroid_rank(),
                        "matroid": serde_json::from_str::<serde_json::Value>(&to_json(&m)).expect("valid JSON"),
                    })
                );
            } else {
                println!("class: {key}");
                println!("n: {}", m.n());
                println!("rank: {}", m.matroid_rank());
                println!("independent: {m}");
            }
        }
        Command::Coproduct { mode, source } => {
            let m = source.load()?;
            emit(json, "coproduct", None, coproduct(mode.mode, &m)?.to_string());
        }
        Command::Antipode(source) => {
            let m = source.load()?;
            emit(json, "antipode", None, antipode_of_matroid(&m)?.to_string());
        }
        Command::Split { mode, source } => {
            let m = source.load()?;
            let pair = split(mode.mode, &m)?;
            emit(json, "split", Some("prec"), pair.prec.to_string());
            emit(json, "split", Some("succ"), pair.succ.to_string());
        }
        Command::Poly(source) => {
            let m = source.load()?;
            emit(json, "poly", None, poly_p(&m).to_string());
        }
        Command::Alpha(source) => {
            let m = source.load()?;
            emit(json, "alpha", None, alpha(&m)?.to_string());
        }
        Command::Verify { max_n, all: _, suite } => {
            let groups: Vec<&str> = suite.iter().map(String::as_str).collect();
            if let Some(bad) = groups.iter().find(|g| !group_names().any(|n| n == **g)) {
                let known: Vec<&str> = group_names().collect();
                return Err(Failure::Usage(format!(
                    "--suite: unknown group '{bad}' (expected one of {})",
                    known.join(", ")
                )));
            }
            if max_n > MAX_CATALOG_N {
                return Err(Failure::Usage(format!("--max-n: {max_n} exceeds the limit {MAX_CATALOG_N}")));
            }
            let cache = default_cache_dir();
            let results = run_groups(&groups, max_n, Some(&cache))?;
            let width = results.iter().map(|r| r.name.chars().count()).max().unwrap_or(5).max(5);
            if !json {
                println!("{:<width$}  {:>8}  {:>7}  status", "suite", "checked", "failed");
            }
            for r in &results {
                if json {
                    println!(
                        "{}",
                        json!({
                            "suite": r.name,
                            "checked": r.checked,
                            "failed": r.failed,
                            "passed": r.passed(),
                            "examples": r.examples,
                        })
                    );
                } else {
                    let status = if r.passed() { "PASS" } else { "FAIL" };
                    println!("{:<width$}  {:>8}  {:>7}  {status}", r.name, r.checked, r.failed);
                    for example in &r.examples {
                        println!("{:<width$}    e.g. {example}", "");
                    }
                }
            }
            let failed = results.iter().filter(|r| !r.passed()).count();
            if !json {
                println!("{} of {} suites passed", results.len() - failed, results.len());
            }
            if failed > 0 {
                return Err(Failure::Check);
            }
        }
        Command::Enumerate { max_n, cache_dir } => {
            if max_n > MAX_CATALOG_N {
                return Err(Failure::Usage(format!("--max-n: {max_n} exceeds the limit {MAX_CATALOG_N}")));
            }
            let dir = cache_dir.unwrap_or_else(default_cache_dir);
            for n in 0..=max_n {
                let catalog = Catalog::load_or_enumerate(n, Some(&dir))?;
                if json {
                    println!(
                        "{}",
                        json!({ "n": n, "classes": catalog.len(), "labeled": catalog.labeled_count() })
                    );
                } else {
                    println!("n = {n}: {} classes, {} labeled", catalog.len(), catalog.labeled_count());
                }
            }
            if !json {
                println!("cache: {}", dir.display());
            }
        }
    }
    Ok(())
}
