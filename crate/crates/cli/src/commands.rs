use std::fmt::Write as _;
use std::io;

use num_bigint::BigInt;
use thiserror::Error;

use staircase_core::detengine::{
    c_det, det_a, det_b, n_det, DetMode, DeterminantRegistry,
};
use staircase_core::genfun::{dq_at_q1, GfRegistry};
use staircase_core::verify::{all_passed, run_suite, VerifyConfig};
use staircase_core::{
    count_staircases, total_staircases_formula, Composition, Oracle, PatternParams,
    TriSeries,
};

use crate::output::{emit, render, Row};
use crate::{CorollaryArgs, DumpArgs, DumpTarget, OracleArgs, TableArgs, VerifyArgs};

#[derive(Debug, Error)]
pub enum CliError {
    /// Invalid flags or an infeasible request; exit code 2.
    #[error("{0}")]
    Usage(String),
    /// A verification found a disagreement; exit code 1.
    #[error("{0}")]
    Mismatch(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl From<staircase_core::Error> for CliError {
    fn from(err: staircase_core::Error) -> Self {
        CliError::Usage(err.to_string())
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// `(max_n, trunc)` with the shared defaulting rule and `max_n <= trunc`.
fn resolve_range(max_n: Option<u32>, trunc: Option<u32>, default: u32) -> Result<(u32, u32)> {
    let trunc = trunc.or(max_n).unwrap_or(default);
    let max_n = max_n.unwrap_or(trunc);
    if max_n > trunc {
        return Err(CliError::Usage(format!(
            "--max-n {max_n} exceeds --trunc {trunc}"
        )));
    }
    Ok((max_n, trunc))
}

pub fn table(args: &TableArgs) -> Result<()> {
    let (max_n, trunc) = resolve_range(args.max_n, args.trunc, 20)?;
    let registry = GfRegistry::default();
    let strategy = registry.get(&args.method)?;
    let f = strategy.generating_function(&PatternParams::new(args.m, trunc)?)?;
    let rows: Vec<Row> = f
        .terms()
        .filter(|&(a, ..)| (1..=max_n).contains(&a))
        .map(|(a, b, s, c)| Row {
            a,
            b,
            s,
            count: c.clone(),
        })
        .collect();
    emit(&render(&rows, args.out.format)?, args.out.output.as_deref())?;
    Ok(())
}

pub fn verify(args: &VerifyArgs) -> Result<()> {
    let (max_n, trunc) = resolve_range(args.max_n, args.trunc, 14)?;
    if max_n > args.cap {
        return Err(CliError::Usage(format!(
            "--max-n {max_n} exceeds the enumeration cap {} (raise --cap)",
            args.cap
        )));
    }
    let cfg = VerifyConfig {
        m: args.m,
        max_n,
        trunc,
        oracle: Oracle::with_cap(args.cap),
        det_limit: args.det_limit,
    };
    let reports = run_suite(&cfg)?;
    let mut text = format!("verify m={} max-n={max_n} trunc={trunc}\n", args.m);
    for r in &reports {
        writeln!(text, "{r}").expect("write to string");
    }
    let passed = all_passed(&reports);
    text.push_str(if passed { "PASS\n" } else { "FAIL\n" });
    emit(&text, args.output.as_deref())?;
    if passed {
        Ok(())
    } else {
        let failed: Vec<_> = reports.iter().filter(|r| !r.passed).map(|r| r.name).collect();
        Err(CliError::Mismatch(format!("failed checks: {}", failed.join(", "))))
    }
}

pub fn corollary(args: &CorollaryArgs) -> Result<()> {
    let formula = total_staircases_formula(args.n, args.parts, args.m);
    if !args.check {
        println!("{formula}");
        return Ok(());
    }
    if args.n > args.cap {
        return Err(CliError::Usage(format!(
            "--check needs n <= {} (raise --cap)",
            args.cap
        )));
    }
    let brute = Oracle::with_cap(args.cap).total_staircases(args.n, args.parts, args.m)?;
    println!("formula {formula}");
    println!("oracle  {brute}");
    if formula == BigInt::from(brute) {
        Ok(())
    } else {
        Err(CliError::Mismatch(format!(
            "formula {formula} != oracle {brute}"
        )))
    }
}

fn parse_composition(text: &str) -> Result<Composition> {
    let parts = text
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| CliError::Usage(format!("bad composition `{text}`: {e}")))?;
    Composition::new(parts)
        .ok_or_else(|| CliError::Usage(format!("bad composition `{text}`: parts must be >= 1")))
}

pub fn oracle(args: &OracleArgs) -> Result<()> {
    if let Some(text) = &args.composition {
        let c = parse_composition(text)?;
        println!("{}", count_staircases(&c, args.m)?);
        return Ok(());
    }
    let n = args.n.expect("clap requires --n without --composition");
    let hist = Oracle::with_cap(args.cap).histogram(n, args.m)?;
    let rows: Vec<Row> = hist
        .iter()
        .map(|((b, s), count)| Row {
            a: n,
            b,
            s,
            count: BigInt::from(count),
        })
        .collect();
    emit(&render(&rows, args.out.format)?, args.out.output.as_deref())?;
    Ok(())
}

pub fn series_dump(args: &DumpArgs) -> Result<()> {
    let p = PatternParams::new(args.m, args.trunc)?;
    let mode: DetMode = args.mode.parse().map_err(CliError::Usage)?;
    let registry = GfRegistry::default();
    let series: TriSeries = match args.what {
        DumpTarget::Gf => registry.get(&args.method)?.generating_function(&p)?,
        DumpTarget::Q1 => registry.get(&args.method)?.generating_function(&p)?.subst_q1(),
        DumpTarget::Dq => dq_at_q1(&p)?,
        DumpTarget::DetA => det_a(&p, mode),
        DumpTarget::DetB => det_b(&p, mode),
        DumpTarget::NDet => n_det(args.m, args.trunc, mode),
        DumpTarget::CDet => c_det(args.m as i32, args.trunc, mode),
    };
    let mut text = series.to_json()?;
    text.push('\n');
    emit(&text, args.output.as_deref())?;
    Ok(())
}

pub fn methods() -> Result<()> {
    println!("generating-function strategies (--method):");
    for s in GfRegistry::default().iter() {
        println!("  {:<16} {}", s.name(), s.description());
    }
    println!("determinant algorithms:");
    for d in DeterminantRegistry::default().iter() {
        println!("  {:<16} {}", d.name(), d.description());
    }
    Ok(())
}
