use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use monogen_core::algebra::FreeAlgebra;
use monogen_core::format::{algebra_digest, parse_algebra, parse_algebra_unchecked, serialize_algebra};
use monogen_core::monogen::{index_value, is_k_generating, local_index_form, universal_min_poly, KGenSystem};
use monogen_core::poly::PolyRing;
use monogen_core::ring::{Elem, RingKind};
use monogen_core::search::{
    box_search, function_field_search, minimal_index_scan, modular_obstruction, SearchBox, SearchOptions,
};
use monogen_core::{corpus, Error};

#[derive(Parser)]
#[command(
    name = "monogen",
    version,
    about = "Index forms and monogenicity of finite free algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for searches (0 uses every core).
    #[arg(long, env = "MONOGEN_THREADS", default_value_t = 0, global = true)]
    threads: usize,
    /// Override resource guards.
    #[arg(long, global = true)]
    force: bool,
    /// Flip the overall sign of printed forms so the leading coefficient is positive.
    #[arg(long, global = true)]
    normalize: bool,
    /// Report elapsed time on stderr.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the local index form.
    IndexForm { file: PathBuf },
    /// Print the universal minimal polynomial.
    MinPoly {
        file: PathBuf,
        #[arg(long, default_value = "t")]
        var: String,
    },
    /// Evaluate the index form at one element.
    Check {
        file: PathBuf,
        /// Coordinates v1,…,vn in the file's basis.
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
    },
    /// Print the maximal minors of the k-generator matrix.
    Minors {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Decide whether k elements generate the algebra.
    CheckK {
        file: PathBuf,
        /// Coordinate vectors separated by ';', coordinates by ','.
        #[arg(long, allow_hyphen_values = true)]
        thetas: String,
    },
    /// Search for monogenerators: a box over ℤ, exhaustive over finite or function-field bases.
    Search {
        file: PathBuf,
        /// lo:hi for every coordinate, or one range per scanned coordinate.
        #[arg(long = "box", default_value = "-10:10", allow_hyphen_values = true)]
        sbox: String,
        /// Coordinate degree bound over k[α].
        #[arg(long, default_value_t = 1)]
        degree: u32,
        /// Number of shards for the box (defaults to the thread count).
        #[arg(long)]
        shards: Option<usize>,
    },
    /// Tabulate the index form mod m.
    Obstruct {
        file: PathBuf,
        #[arg(long = "mod")]
        modulus: u64,
    },
    /// Smallest nonzero |index| over a box.
    MinIndex {
        file: PathBuf,
        #[arg(long = "box", default_value = "-10:10", allow_hyphen_values = true)]
        sbox: String,
    },
    /// Check the algebra laws.
    Validate { file: PathBuf },
    /// Print the canonical serialization.
    Dump { file: PathBuf },
    /// Run the built-in worked examples against their stored outputs.
    Corpus,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => 2,
            Error::Validation(_) => 3,
            Error::NotAnOrder(_) => 4,
            Error::ResourceGuard { .. } => 5,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(String, u8), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn load(path: &Path) -> Result<FreeAlgebra, Failure> {
    Ok(parse_algebra(&read(path)?)?)
}

fn wrap(command: &str, alg: &FreeAlgebra, result: Value) -> String {
    let v = json!({
        "command": command,
        "algebra_digest": algebra_digest(alg),
        "base": alg.base().to_string(),
        "rank": alg.rank(),
        "basis_names": alg.basis_names(),
        "variables": alg.variable_names(),
        "result": result,
    });
    pretty(&v)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Parses one coordinate as an expression over the base ring.
fn coordinate(alg: &FreeAlgebra, text: &str) -> Result<Elem, Failure> {
    let consts = PolyRing::new(alg.base(), Vec::new());
    let p = consts.parse(text.trim())?;
    Ok(p.as_constant().unwrap_or_else(|| alg.base().zero()))
}

fn coordinates(alg: &FreeAlgebra, text: &str) -> Result<Vec<Elem>, Failure> {
    let v = text
        .split(',')
        .map(|t| coordinate(alg, t))
        .collect::<Result<Vec<_>, _>>()?;
    if v.len() != alg.rank() {
        return Err(Failure {
            code: 2,
            message: format!("expected {} coordinates, got {}", alg.rank(), v.len()),
        });
    }
    Ok(v)
}

fn scanned_dim(alg: &FreeAlgebra) -> usize {
    alg.rank() - usize::from(alg.unit_is_first())
}

fn options(cli: &Cli, shards: Option<usize>) -> SearchOptions {
    let threads = cli.threads;
    let default_shards = if threads == 0 {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    } else {
        threads
    };
    SearchOptions {
        shards: shards.unwrap_or(default_shards).max(1),
        threads,
        force: cli.force,
    }
}

fn run(cli: &Cli) -> Outcome {
    let text = cli.format == Format::Text;
    match &cli.command {
        Command::IndexForm { file } => {
            let alg = load(file)?;
            let form = local_index_form(&alg)?;
            let rendered = form.render(cli.normalize);
            Ok(if text {
                (format!("{rendered}\n"), 0)
            } else {
                let r = json!({"index_form": rendered, "degree": form.expected_degree, "normalized": cli.normalize});
                (wrap("index-form", &alg, r), 0)
            })
        }
        Command::MinPoly { file, var } => {
            let alg = load(file)?;
            let m = universal_min_poly(&alg)?;
            let rendered = m.render(var);
            Ok(if text {
                (format!("{rendered}\n"), 0)
            } else {
                let coeffs: Vec<String> = m.coefficients.iter().map(|c| c.to_string()).collect();
                (
                    wrap("min-poly", &alg, json!({"min_poly": rendered, "coefficients": coeffs})),
                    0,
                )
            })
        }
        Command::Check { file, theta } => {
            let alg = load(file)?;
            let x = coordinates(&alg, theta)?;
            let v = index_value(&alg, &x)?;
            let unit = alg.base().is_unit(&v)?;
            let shown = alg.base().render(&v);
            let line = if unit {
                format!("unit index value {shown}: monogenerator")
            } else {
                format!("non-unit index value {shown}: not a monogenerator")
            };
            Ok(if text {
                (format!("{line}\n"), 0)
            } else {
                let r = json!({"theta": alg.render_elem(&x), "index_value": shown, "monogenerator": unit});
                (wrap("check", &alg, r), 0)
            })
        }
        Command::Minors { file, k } => {
            let alg = load(file)?;
            let sys = KGenSystem::new(&alg, *k, cli.force)?;
            let mut out = String::new();
            let mut rows = Vec::new();
            for (cols, m) in sys.minors() {
                let labels: Vec<String> = cols.iter().map(|&c| sys.column_label(c)).collect();
                if text {
                    out.push_str(&format!("[{}]: {}\n", labels.join(", "), m));
                } else {
                    rows.push(json!({"columns": labels, "minor": m.to_string()}));
                }
            }
            Ok(if text {
                (out, 0)
            } else {
                let r = json!({"k": k, "variables": sys.ring.names(), "minors": rows});
                (wrap("minors", &alg, r), 0)
            })
        }
        Command::CheckK { file, thetas } => {
            let alg = load(file)?;
            let ts = thetas
                .split(';')
                .map(|t| coordinates(&alg, t))
                .collect::<Result<Vec<_>, _>>()?;
            let ok = is_k_generating(&alg, &ts, cli.force)?;
            let line = if ok {
                format!("generating: the {} elements generate the algebra", ts.len())
            } else {
                format!("not generating: the {} elements generate a proper subalgebra", ts.len())
            };
            Ok(if text {
                (format!("{line}\n"), 0)
            } else {
                let shown: Vec<String> = ts.iter().map(|t| alg.render_elem(t)).collect();
                (wrap("check-k", &alg, json!({"elements": shown, "generating": ok})), 0)
            })
        }
        Command::Search {
            file,
            sbox,
            degree,
            shards,
        } => {
            let alg = load(file)?;
            let report = if matches!(alg.base().kind(), RingKind::Integers) {
                let b = SearchBox::parse(sbox, scanned_dim(&alg))?;
                box_search(&alg, &b, &options(cli, *shards))?
            } else {
                function_field_search(&alg, *degree, cli.force)?
            };
            if cli.timing {
                eprintln!("elapsed: {:.3} s", report.elapsed.as_secs_f64());
            }
            Ok(if text {
                (report.render_text(), 0)
            } else {
                (report.to_json() + "\n", 0)
            })
        }
        Command::Obstruct { file, modulus } => {
            let alg = load(file)?;
            let c = modular_obstruction(&alg, *modulus, cli.force)?;
            Ok(if text {
                (c.render_text(), 0)
            } else {
                (c.to_json() + "\n", 0)
            })
        }
        Command::MinIndex { file, sbox } => {
            let alg = load(file)?;
            let b = SearchBox::parse(sbox, scanned_dim(&alg))?;
            let r = minimal_index_scan(&alg, &b, &options(cli, None))?;
            if cli.timing {
                eprintln!("elapsed: {:.3} s", r.elapsed.as_secs_f64());
            }
            Ok(if text {
                let m = r.minimum.clone().unwrap_or_else(|| "0".into());
                (format!("box minimum: {m}\n"), 0)
            } else {
                (
                    wrap("min-index", &alg, serde_json::to_value(&r).expect("reports serialize")),
                    0,
                )
            })
        }
        Command::Validate { file } => {
            let alg = parse_algebra_unchecked(&read(file)?)?;
            let report = alg.validate();
            if !report.is_valid() {
                return Err(Error::Validation(report).into());
            }
            Ok(if text {
                (format!("valid: rank {} algebra over {}\n", alg.rank(), alg.base()), 0)
            } else {
                (wrap("validate", &alg, json!({"valid": true})), 0)
            })
        }
        Command::Dump { file } => {
            let alg = load(file)?;
            Ok((serialize_algebra(&alg), 0))
        }
        Command::Corpus => {
            let outcomes = corpus::run_all();
            let passed = outcomes.iter().filter(|o| o.passed).count();
            let code = if passed == outcomes.len() { 0 } else { 1 };
            Ok(if text {
                let mut s = String::new();
                for o in &outcomes {
                    let tag = if o.passed { "PASS" } else { "FAIL" };
                    s.push_str(&format!("{tag} {}: {}: {}\n", o.entry, o.check, o.detail));
                }
                s.push_str(&format!("{passed}/{} checks passed\n", outcomes.len()));
                (s, code)
            } else {
                let rows: Vec<Value> = outcomes
                    .iter()
                    .map(|o| json!({"entry": o.entry, "check": o.check, "passed": o.passed, "detail": o.detail}))
                    .collect();
                (
                    pretty(&json!({"command": "corpus", "passed": passed, "total": outcomes.len(), "checks": rows})),
                    code,
                )
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = run(&cli);
    let code = match outcome {
        Ok((out, code)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            code
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    };
    if cli.timing && !matches!(cli.command, Command::Search { .. } | Command::MinIndex { .. }) {
        eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
    }
    ExitCode::from(code)
}
