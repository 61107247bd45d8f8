use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use apseq::certifier::{
    self, coverage_check, read_certificate_file, read_skip_file, replay, write_certificate_file, BranchVariant,
    ClassKey, RunConfig,
};
use apseq::constants::{limit_family, solve_congruence};
use apseq::suites::{run_suite, SUITE_NAMES};
use apseq::table::{compute_values, histogram_csv, scatter_csv, ApTable, TableKind};
use apseq::{Pattern, StagePlan};

#[derive(Parser)]
#[command(name = "apseq", version, about = "Monochromatic arithmetic progressions in pattern sequences")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a CSV table of A_v(0,d) or A_v(d) for d = 1..=dmax.
    Table {
        #[arg(long, default_value = "global")]
        kind: TableKind,
        #[arg(long = "pattern", required = true, num_args = 1..)]
        patterns: Vec<Pattern>,
        #[arg(long)]
        dmax: u128,
        /// Staged thresholds, e.g. "20,35,d" or "none".
        #[arg(long, default_value = "20,35,d")]
        stages: StagePlan,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and report expected against computed values.
    Verify {
        #[arg(long, value_parser = suite_name)]
        suite: String,
    },
    /// Run the certification search for A_r(0,d) < d/2.
    Certify {
        #[arg(long, default_value = "1")]
        prefix: String,
        #[arg(long, default_value = "1")]
        suffix: String,
        /// Start from the class (1, a 0 1^k) with the suffix-family limits, given as "a,k".
        #[arg(long, value_parser = family_spec, conflicts_with_all = ["prefix", "suffix"])]
        suffix_family: Option<(u8, usize)>,
        /// Classes to skip, one "p s" per line; defaults to the built-in set for the main run.
        #[arg(long)]
        skip_file: Option<PathBuf>,
        #[arg(long)]
        max_iter: Option<usize>,
        #[arg(long)]
        max_s2j: Option<u32>,
        #[arg(long, default_value = "prefix-only")]
        branch_variant: BranchVariant,
        /// Also check every odd d up to this bound against the result.
        #[arg(long)]
        dmax: Option<u128>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify every certificate in a certificate file.
    Replay { file: PathBuf },
    /// Print x_min, y_min, C_v and B_v for all patterns up to a length.
    Constants {
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(2..=8))]
        max_len: u8,
    },
    /// Write value counts, or (d, log2(A/d)) rows with --scatter.
    Hist {
        #[arg(long, default_value = "from-zero")]
        kind: TableKind,
        #[arg(long)]
        pattern: Pattern,
        #[arg(long)]
        dmax: u128,
        #[arg(long)]
        scatter: bool,
        #[arg(long, default_value = "20,35,d")]
        stages: StagePlan,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn suite_name(s: &str) -> std::result::Result<String, String> {
    if s == "all" || SUITE_NAMES.contains(&s) {
        Ok(s.to_string())
    } else {
        Err(format!("unknown suite; expected one of: {}, all", SUITE_NAMES.join(", ")))
    }
}

fn family_spec(s: &str) -> std::result::Result<(u8, usize), String> {
    let (a, k) = s.split_once(',').ok_or("expected \"a,k\"")?;
    let a: u8 = a.trim().parse().map_err(|_| "a must be 0 or 1")?;
    let k: usize = k.trim().parse().map_err(|_| "k must be a positive integer")?;
    if a > 1 || k == 0 {
        return Err("a must be 0 or 1 and k positive".into());
    }
    Ok((a, k))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

/// Returns whether every check passed.
fn execute(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Table {
            kind,
            patterns,
            dmax,
            stages,
            out,
        } => {
            let table = ApTable::compute(&patterns, kind, dmax, &stages)?;
            emit(out.as_deref(), &table.to_csv()?)?;
            Ok(true)
        }
        Command::Verify { suite } => {
            let reports = run_suite(&suite)?;
            let mut ok = true;
            for rep in &reports {
                println!("{rep}");
                ok &= rep.passed();
            }
            Ok(ok)
        }
        Command::Certify {
            prefix,
            suffix,
            suffix_family,
            skip_file,
            max_iter,
            max_s2j,
            branch_variant,
            dmax,
            out,
        } => {
            let mut config = match suffix_family {
                Some((a, k)) => RunConfig::suffix_family(a, k),
                None => RunConfig {
                    input: ClassKey::parse(&prefix, &suffix)?,
                    ..RunConfig::main_run()
                },
            };
            if let Some(path) = skip_file {
                config.skip = read_skip_file(&path)?;
            }
            if let Some(m) = max_iter {
                config.max_iter = m;
            }
            if max_s2j.is_some() {
                config.max_s2j = max_s2j;
            }
            config.branch_variant = branch_variant;
            let result = certifier::run(&config)?;
            match &out {
                Some(path) => write_certificate_file(path, &result)?,
                None => print!("{}", certifier::format_certificates(&result)),
            }
            println!("iterations: {}", result.iterations);
            println!("certificates: {}", result.certificates.len());
            let e: Vec<String> = result.exceptions.iter().map(u128::to_string).collect();
            println!("exceptions: {{{}}}", e.join(","));
            println!("skipped: {}", result.skipped.len());
            println!("unresolved: {}", result.unresolved.len());
            for key in &result.unresolved {
                println!("  {key}");
            }
            if let Some(d_max) = dmax {
                let report = coverage_check(&result, &config.skip, d_max)?;
                println!(
                    "coverage to {d_max}: {} checked, {} exceptional, {} skipped, {} gaps",
                    report.checked,
                    report.exceptional,
                    report.skipped,
                    report.gaps.len()
                );
                for gap in &report.gaps {
                    println!("  {gap:?}");
                }
                return Ok(report.passed());
            }
            Ok(true)
        }
        Command::Replay { file } => {
            let parsed = read_certificate_file(&file)?;
            let mut ok = true;
            for cert in &parsed.certificates {
                if let Err(e) = replay(cert) {
                    println!("FAIL {} i={} j={}: {e:?}", cert.key, cert.i, cert.j);
                    ok = false;
                }
            }
            println!(
                "{} certificates, {}",
                parsed.certificates.len(),
                if ok { "all valid" } else { "some invalid" }
            );
            Ok(ok)
        }
        Command::Constants { max_len } => {
            println!("v\tx_min\ty_min\tC\tB");
            for v in limit_family(max_len as usize) {
                let k = solve_congruence(&v)?;
                println!("{}\t{}\t{}\t{}\t{}", v, k.x_min, k.y_min, k.c, k.b);
            }
            Ok(true)
        }
        Command::Hist {
            kind,
            pattern,
            dmax,
            scatter,
            stages,
            out,
        } => {
            let values = compute_values(&pattern, kind, dmax, &stages)?;
            let text = if scatter {
                scatter_csv(&values)?
            } else {
                histogram_csv(&values)?
            };
            emit(out.as_deref(), &text)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match execute(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
