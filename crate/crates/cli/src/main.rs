//! `ncpair`: count, list and draw non-crossing pairings of bitstrings, and
//! run the verification sweeps.

mod render;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ncpair::bounds::main_theorem_check;
use ncpair::pairing::{enumerate_pairings, ORACLE_LIMIT};
use ncpair::verify::{self, Caps, Suite, SuiteReport};
use ncpair::{phi, Word};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "ncpair", version, about = "Non-crossing pairings of bitstrings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the number of non-crossing pairings.
    Count {
        #[command(flatten)]
        input: WordInput,
        /// Also print every bound on the count.
        #[arg(short, long)]
        verbose: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the pairings of a word of length at most 16.
    Enumerate {
        #[command(flatten)]
        input: WordInput,
        /// Stop after this many pairings.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Draw a chord diagram or the lattice path as SVG.
    Render {
        #[command(flatten)]
        input: WordInput,
        #[arg(long, value_enum, default_value_t = Drawing::Chord)]
        what: Drawing,
        /// 1-based pairing index, or "all".
        #[arg(long, default_value = "all")]
        pairing: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a verification suite and write its report.
    Verify {
        /// One of: oracle, symmetry, bounds, main-theorem, bijections,
        /// tree-formula, refined-conjecture, tree-conjecture, ginibre.
        suite: String,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        entries: Option<usize>,
        #[arg(long, default_value_t = 128)]
        dim: usize,
        #[arg(long, default_value_t = 400)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = ncpair::ginibre::DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        parallel: usize,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct WordInput {
    /// Literal bitstring, e.g. 110100.
    #[arg(long)]
    string: Option<String>,
    /// Run exponents n_1,m_1,n_2,m_2,...
    #[arg(long)]
    runs: Option<String>,
}

impl WordInput {
    fn word(&self) -> Result<Word> {
        match (&self.string, &self.runs) {
            (Some(s), _) => Word::from_bitstring(s).with_context(|| format!("cannot read --string {s:?}")),
            (_, Some(r)) => Word::from_run_notation(r).with_context(|| format!("cannot read --runs {r:?}")),
            _ => bail!("give --string or --runs"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Drawing {
    Chord,
    Path,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Count { input, verbose, format } => count(&input.word()?, verbose, format),
        Command::Enumerate { input, limit, format } => enumerate(&input.word()?, limit, format),
        Command::Render {
            input,
            what,
            pairing,
            out,
        } => {
            let word = input.word()?;
            let svg = match what {
                Drawing::Path => render::path_svg(&word),
                Drawing::Chord => {
                    if word.len() > ORACLE_LIMIT {
                        bail!("chord diagrams are limited to words of length {ORACLE_LIMIT}");
                    }
                    let all = enumerate_pairings(&word);
                    let chosen = if pairing == "all" {
                        all
                    } else {
                        let k: usize = pairing.parse().context("--pairing takes an index or \"all\"")?;
                        match all.get(k.wrapping_sub(1)) {
                            Some(p) => vec![p.clone()],
                            None => bail!("pairing {k} out of range 1..={}", all.len()),
                        }
                    };
                    render::chord_svg(&word, &chosen)
                }
            };
            emit(Some(&out), &svg)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            max_n,
            r,
            entries,
            dim,
            samples,
            seed,
            tolerance,
            format,
            out,
            parallel,
        } => {
            let suite: Suite = suite.parse()?;
            let caps = Caps {
                max_n,
                r,
                entries,
                dim,
                samples,
                seed,
                tolerance,
            };
            let pool = rayon::ThreadPoolBuilder::new().num_threads(parallel.max(1)).build()?;
            let report = pool.install(|| verify::run(suite, &caps))?;
            emit(out.as_ref(), &format_report(&report, format)?)?;
            if out.is_some() {
                eprintln!("{}", summary_line(&report));
            }
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn count(word: &Word, verbose: bool, format: Format) -> Result<ExitCode> {
    let value = phi(word);
    let balanced = word.is_balanced();
    let bounds = if verbose && balanced && !word.is_empty() {
        Some(main_theorem_check(word)?)
    } else {
        None
    };
    match format {
        Format::Json => {
            let mut doc = json!({
                "word": word.to_string(),
                "runs": word.run_notation(),
                "phi": value.to_string(),
                "balanced": balanced,
            });
            if let Some(b) = &bounds {
                doc["bounds"] = serde_json::to_value(b)?;
            }
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        Format::Text | Format::Csv => {
            println!("{value}");
            if !balanced {
                println!("note: not balanced ({} ones, {} zeros)", word.ones(), word.zeros());
            }
            if let Some(b) = bounds {
                println!("runs {}  height {}  block {}", b.runs, b.height, b.block);
                println!("lower (1+i)^(r-1)        {}", b.lower_simple);
                println!("lower iterated {:?}  {}", b.stage_minima, b.lower_iterated);
                println!("upper C^({})_{}           {}", b.block, b.runs, b.upper_main);
                println!("upper C^({})_{} (height)  {}", b.height, b.runs, b.upper_height);
                println!("crude {}/{}", b.crude.numerator, b.crude.denominator);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn enumerate(word: &Word, limit: Option<usize>, format: Format) -> Result<ExitCode> {
    if word.len() > ORACLE_LIMIT {
        bail!("refusing to list pairings of a word of length {} (limit {ORACLE_LIMIT})", word.len());
    }
    let all = enumerate_pairings(word);
    let shown = limit.unwrap_or(all.len()).min(all.len());
    let truncated = shown < all.len();
    match format {
        Format::Json => {
            let doc = json!({
                "word": word.to_string(),
                "count": all.len().to_string(),
                "pairings": all[..shown].iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "truncated": truncated,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        Format::Text | Format::Csv => {
            for p in &all[..shown] {
                println!("{p}");
            }
            if truncated {
                println!("... ({} more)", all.len() - shown);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn summary_line(report: &SuiteReport) -> String {
    format!(
        "{}: {} checks, {} violations, {} findings",
        report.suite,
        report.checked,
        report.violations.len(),
        report.findings.len()
    )
}

fn format_report(report: &SuiteReport, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(report)? + "\n",
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer.write_record(["suite", "kind", "subject", "detail"])?;
            for (kind, records) in [("violation", &report.violations), ("finding", &report.findings)] {
                for rec in records {
                    writer.write_record([report.suite.name(), kind, &rec.subject, &rec.detail])?;
                }
            }
            writer.write_record([report.suite.name(), "summary", "checked", &report.checked.to_string()])?;
            String::from_utf8(writer.into_inner()?)?
        }
        Format::Text => {
            let mut text = summary_line(report) + "\n";
            for (key, value) in &report.scope {
                text += &format!("  {key} = {value}\n");
            }
            for rec in &report.violations {
                text += &format!("VIOLATION {}: {}\n", rec.subject, rec.detail);
            }
            for rec in &report.findings {
                text += &format!("{}: {}\n", rec.subject, rec.detail);
            }
            text
        }
    })
}
