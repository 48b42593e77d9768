use clap::{Parser, Subcommand, ValueEnum};
use ffpotents::field::{build_field, modulus_to_string, prime_power_decompose};
use ffpotents::potent::n_potents;
use ffpotents::report::RunReport;
use ffpotents::sumset::{check_all, BoundaryRule, SearchConfig};
use ffpotents::verify::{run_verify, Suite};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "ffpotents", version, about = "n-potent sumset search and character-sum verification over finite fields")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoundaryArg {
    Appendix,
    Theorem,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Charsums,
    Bounds,
    Potents,
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sweep prime powers q <= limit for C_m + C_n = GF(q)
    Search {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        limit: u32,
        #[arg(long, value_enum, default_value_t = BoundaryArg::Appendix)]
        boundary: BoundaryArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify the character-sum identities and bounds by exact computation
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long)]
        qmax: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the deterministic model of GF(q)
    Field {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        show_potents: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(text: String, out: Option<PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(&path, text).map_err(|e| format!("writing {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Search { m, limit, boundary, format, jobs, out } => {
            if m < 2 {
                return Err("--m must be at least 2".into());
            }
            if limit < 2 {
                return Err("--limit must be at least 2".into());
            }
            let rule = match boundary {
                BoundaryArg::Appendix => BoundaryRule::AppendixExact,
                BoundaryArg::Theorem => BoundaryRule::TheoremBound,
            };
            let start = Instant::now();
            let cfg = SearchConfig { m, limit, boundary_rule: rule, parallelism: jobs };
            let hits = check_all(&cfg).map_err(|e| e.to_string())?;
            let mut report = RunReport::new("search");
            report.param("m", m);
            report.param("limit", limit);
            report.param(
                "boundary",
                match boundary {
                    BoundaryArg::Appendix => "appendix",
                    BoundaryArg::Theorem => "theorem",
                },
            );
            report.hits = hits;
            report.elapsed_ms = start.elapsed().as_millis() as u64;
            let text = match format {
                Format::Text => report.search_text(),
                Format::Json => report.to_canonical_json(),
                Format::Csv => report.search_csv(),
            };
            emit(text, out)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { suite, qmax, format, jobs, out } => {
            if qmax < 4 {
                return Err("--qmax must be at least 4".into());
            }
            let suite = match suite {
                SuiteArg::Charsums => Suite::Charsums,
                SuiteArg::Bounds => Suite::Bounds,
                SuiteArg::Potents => Suite::Potents,
                SuiteArg::All => Suite::All,
            };
            let start = Instant::now();
            let outcome = run_verify(suite, qmax, jobs).map_err(|e| e.to_string())?;
            let mut report = RunReport::new("verify");
            report.param("suite", format!("{suite:?}").to_lowercase());
            report.param("qmax", qmax);
            report.charsum_reports = outcome.reports;
            report.failures = outcome.log.failures.clone();
            report.elapsed_ms = start.elapsed().as_millis() as u64;
            let ok = report.failures.is_empty();
            let text = match format {
                Format::Text => {
                    let mut t = outcome.log.lines.join("\n");
                    t.push('\n');
                    t.push_str(&format!(
                        "{}: {} checks, {} failures\n",
                        if ok { "PASS" } else { "FAIL" },
                        outcome.log.lines.len(),
                        report.failures.len()
                    ));
                    t.push_str(&format!("done in {:.1}s\n", report.elapsed_ms as f64 / 1000.0));
                    t
                }
                Format::Json => report.to_canonical_json(),
                Format::Csv => return Err("csv format is only available for search".into()),
            };
            emit(text, out)?;
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Field { q, show_potents, format, out } => {
            let (p, v) =
                prime_power_decompose(q as u64).ok_or(format!("{q} is not a prime power"))?;
            let ctx = build_field(p as u32, v).map_err(|e| e.to_string())?;
            let mut report = RunReport::new("field");
            report.param("q", q);
            report.param("p", p);
            report.param("v", v);
            report.param("modulus", modulus_to_string(&ctx.spec.modulus));
            report.param("generator", ctx.generator);
            let roots = ctx.cube_roots_of_unity();
            if let Some((_, z, y)) = roots {
                report.param("z", z);
                report.param("y", y);
            }
            let potents = match show_potents {
                Some(n) => Some(n_potents(&ctx, n).map_err(|e| e.to_string())?),
                None => None,
            };
            if let Some(set) = &potents {
                report.param(
                    format!("C_{}", set.n).as_str(),
                    format!(
                        "{{{}}}",
                        set.members.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", ")
                    ),
                );
            }
            let text = match format {
                Format::Text => {
                    let mut t = format!("q = {} = {}^{}\n", q, p, v);
                    t.push_str(&format!("modulus = {}\n", modulus_to_string(&ctx.spec.modulus)));
                    t.push_str(&format!("generator = {}\n", ctx.generator));
                    match roots {
                        Some((_, z, y)) => {
                            t.push_str(&format!("cube roots of unity: 1, {z}, {y}\n"))
                        }
                        None => t.push_str("cube roots of unity: none besides 1\n"),
                    }
                    if let Some(set) = &potents {
                        t.push_str(&format!(
                            "C_{} = {{{}}}\n",
                            set.n,
                            set.members.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", ")
                        ));
                    }
                    t
                }
                Format::Json => report.to_canonical_json(),
                Format::Csv => return Err("csv format is only available for search".into()),
            };
            emit(text, out)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
