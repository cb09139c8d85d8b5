//! Command-line interface: compute polynomials and coefficients, print
//! tables, and run the named verification suites with deterministic seeds.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error,
//! 3 parameter certification failure.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use bcjacobi::deformed::{super_jacobi, super_jack};
use bcjacobi::eigen::{eigenvalue, jacobi, jacobi_zero_closed, jack};
use bcjacobi::error::Error;
use bcjacobi::interpolation::{interpolation_comb, interpolation_value};
use bcjacobi::partition::Partition;
use bcjacobi::pieri::{admissible_shifts_r1, pieri_coeff_r1, SignedShift};
use bcjacobi::rational::{format_rat, int, parse_rat, Rat};
use bcjacobi::suites::{all_suite_names, run_suite, SuiteOptions, SuiteReport};
use bcjacobi::ParamContext;

#[derive(Parser)]
#[command(
    name = "bcjacobi",
    about = "Exact computations with Jacobi symmetric functions, CMS operators of type BC, and super Jacobi polynomials",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a single polynomial, coefficient or value.
    Compute {
        #[arg(value_enum)]
        target: ComputeTarget,
        #[command(flatten)]
        params: ParamFlags,
        #[command(flatten)]
        io: IoFlags,
        /// Partition, comma-separated; the empty string is the empty partition.
        #[arg(long, default_value = "")]
        partition: String,
        /// Second partition for interpolation values.
        #[arg(long)]
        mu: Option<String>,
        /// Row shift for pieri-coeff, e.g. +1 or -2 (sign and row index).
        #[arg(long)]
        shift: Option<String>,
    },
    /// Run a named verification suite (or `all`).
    Verify {
        /// Suite name; `all` runs the full battery.
        suite: String,
        #[command(flatten)]
        io: IoFlags,
        /// Largest weight to verify (0 keeps each suite's built-in bound).
        #[arg(long, default_value_t = 0)]
        max_weight: usize,
        /// Seeds for the certified parameter draws.
        #[arg(long, num_args = 1.., default_values_t = [42u64, 7, 2026])]
        seed: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Largest Pieri order r where applicable.
        #[arg(long, default_value_t = 3)]
        r: usize,
        /// Number of finite variables where applicable.
        #[arg(long = "N", default_value_t = 5)]
        n_vars: usize,
        /// Random trials for sampled checks.
        #[arg(long, default_value_t = 3)]
        trials: usize,
        /// Worker parallelism.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Self-test hook: corrupt one coefficient so the suite must fail.
        #[arg(long, hide = true)]
        mutate: bool,
    },
    /// Print a table of values over all partitions up to a weight.
    Table {
        #[arg(value_enum)]
        target: TableTarget,
        #[command(flatten)]
        params: ParamFlags,
        #[command(flatten)]
        io: IoFlags,
        #[arg(long, default_value_t = 3)]
        max_weight: usize,
        /// Partition for pieri-coeffs.
        #[arg(long, default_value = "")]
        partition: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ComputeTarget {
    Jacobi,
    Jack,
    SuperJacobi,
    SuperJack,
    Interpolation,
    PieriCoeff,
    EvalZero,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableTarget {
    EvalZero,
    Eigenvalues,
    PieriCoeffs,
}

#[derive(Args)]
struct ParamFlags {
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    q: Option<String>,
    /// The parameter replacing the dimension.
    #[arg(long)]
    h: Option<String>,
    /// Derive h = -kN - p/2 - q from a finite dimension.
    #[arg(long = "N")]
    n_vars: Option<usize>,
    /// Deformed block sizes; super targets derive h = -km - n - p/2 - q.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Args)]
struct IoFlags {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the output to a file instead of standard output.
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

/// Application-level failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Uncertifiable(_) | Error::NotCertified => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn parse_flag_rat(flag: &str, value: &Option<String>) -> Result<Rat, Failure> {
    let s = value
        .as_ref()
        .ok_or_else(|| Failure::input(format!("missing required flag --{flag}")))?;
    parse_rat(s).map_err(Failure::from)
}

impl ParamFlags {
    /// Resolves (k, p, q, h) with the derivation rules and certifies.
    fn context(&self, degree: usize, super_target: bool) -> Result<ParamContext, Failure> {
        let k = parse_flag_rat("k", &self.k)?;
        let p = parse_flag_rat("p", &self.p)?;
        let q = parse_flag_rat("q", &self.q)?;
        let h = if super_target {
            let m = self
                .m
                .ok_or_else(|| Failure::input("super targets require --m"))?;
            let n = self
                .n
                .ok_or_else(|| Failure::input("super targets require --n"))?;
            -(&k * int(m as i64)) - int(n as i64) - &p / int(2) - &q
        } else if let Some(h) = &self.h {
            parse_rat(h).map_err(Failure::from)?
        } else if let Some(n) = self.n_vars {
            -(&k * int(n as i64)) - &p / int(2) - &q
        } else {
            return Err(Failure::input("pass --h, --N, or (--m and --n)"));
        };
        ParamContext::intern(k, p, q, h, degree).map_err(Failure::from)
    }

    fn hook(&self) -> Result<(usize, usize), Failure> {
        Ok((
            self.m
                .ok_or_else(|| Failure::input("this target requires --m"))?,
            self.n
                .ok_or_else(|| Failure::input("this target requires --n"))?,
        ))
    }
}

fn parse_partition_flag(s: &str) -> Result<Partition, Failure> {
    Partition::parse(s).map_err(Failure::from)
}

fn parse_shift(s: &str) -> Result<SignedShift, Failure> {
    let (sign, body) = if let Some(rest) = s.strip_prefix('+') {
        (1i8, rest)
    } else if let Some(rest) = s.strip_prefix('-') {
        (-1i8, rest)
    } else {
        (1i8, s)
    };
    let row: usize = body
        .parse()
        .map_err(|_| Failure::input(format!("bad shift `{s}`; expected e.g. +1 or -2")))?;
    if row == 0 {
        return Err(Failure::input("shift rows are 1-based"));
    }
    Ok(SignedShift { row, sign })
}

fn emit(io: &IoFlags, content: &str) -> Result<(), Failure> {
    match &io.output {
        None => {
            println!("{content}");
            Ok(())
        }
        Some(path) => std::fs::write(path, format!("{content}\n"))
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display()))),
    }
}

fn symfunc_text(f: &bcjacobi::SymFunc) -> String {
    let tag = match f.basis() {
        bcjacobi::Basis::PowerSum => "p",
        bcjacobi::Basis::Monomial => "m",
    };
    if f.is_zero() {
        return "0".into();
    }
    f.terms()
        .iter()
        .map(|(lam, c)| format!("{} {tag}[{lam}]", format_rat(c)))
        .collect::<Vec<_>>()
        .join("\n")
}

fn run_compute(
    target: ComputeTarget,
    params: &ParamFlags,
    io: &IoFlags,
    partition: &str,
    mu: &Option<String>,
    shift: &Option<String>,
) -> Result<(), Failure> {
    let lam = parse_partition_flag(partition)?;
    let degree = lam.weight() as usize + 1;
    match target {
        ComputeTarget::Jacobi => {
            let ctx = params.context(degree, false)?;
            let f = jacobi(&lam, &ctx)?;
            match io.format {
                Format::Json => emit(io, &f.to_json()),
                _ => emit(io, &symfunc_text(&f)),
            }
        }
        ComputeTarget::Jack => {
            let ctx = params.context(degree, false)?;
            let f = jack(&lam, &ctx)?;
            match io.format {
                Format::Json => emit(io, &f.to_json()),
                _ => emit(io, &symfunc_text(&f)),
            }
        }
        ComputeTarget::SuperJacobi => {
            let ctx = params.context(degree, true)?;
            let (m, n) = params.hook()?;
            let poly = super_jacobi(&lam, m, n, ctx.k(), ctx.p(), ctx.q())?;
            match io.format {
                Format::Json => emit(io, &poly.to_json()),
                _ => emit(io, &poly.to_string()),
            }
        }
        ComputeTarget::SuperJack => {
            let ctx = params.context(degree, true)?;
            let (m, n) = params.hook()?;
            let poly = super_jack(&lam, m, n, ctx.k())?;
            match io.format {
                Format::Json => emit(io, &poly.to_json()),
                _ => emit(io, &poly.to_string()),
            }
        }
        ComputeTarget::Interpolation => {
            let k = parse_flag_rat("k", &params.k)?;
            let h = if let Some(h) = &params.h {
                parse_rat(h).map_err(Failure::from)?
            } else {
                let p = parse_flag_rat("p", &params.p)?;
                let q = parse_flag_rat("q", &params.q)?;
                let n = params
                    .n_vars
                    .ok_or_else(|| Failure::input("interpolation needs --h or --N"))?;
                -(&k * int(n as i64)) - &p / int(2) - &q
            };
            if let Some(mu) = mu {
                let mu = parse_partition_flag(mu)?;
                emit(io, &format_rat(&interpolation_value(&lam, &mu, &k, &h)))
            } else if let Some(n) = params.n_vars {
                let poly = interpolation_comb(&lam, n, &k, &h);
                match io.format {
                    Format::Json => emit(io, &poly.to_json()),
                    _ => emit(io, &poly.to_string()),
                }
            } else {
                Err(Failure::input("interpolation needs --mu or --N"))
            }
        }
        ComputeTarget::PieriCoeff => {
            let ctx = params.context(degree, false)?;
            let shift = shift
                .as_ref()
                .ok_or_else(|| Failure::input("pieri-coeff needs --shift"))?;
            let shift = parse_shift(shift)?;
            let value = pieri_coeff_r1(&lam, shift, &ctx)?;
            emit(io, &format_rat(&value))
        }
        ComputeTarget::EvalZero => {
            let ctx = params.context(degree, false)?;
            emit(io, &format_rat(&jacobi_zero_closed(&lam, &ctx)?))
        }
    }
}

#[derive(Serialize)]
struct TableRow {
    partition: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    shift: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    target: Option<String>,
}

fn rows_to_output(rows: Vec<(String, TableRow)>, io: &IoFlags, header: &str) -> Result<(), Failure> {
    match io.format {
        Format::Json => {
            let body: Vec<&TableRow> = rows.iter().map(|(_, r)| r).collect();
            emit(
                io,
                &serde_json::to_string_pretty(&body).expect("serialization cannot fail"),
            )
        }
        Format::Tsv | Format::Text => {
            let sep = if io.format == Format::Tsv { "\t" } else { "  " };
            let mut out = String::new();
            out.push_str(&header.replace('\t', sep));
            for (line, _) in &rows {
                out.push('\n');
                out.push_str(&line.replace('\t', sep));
            }
            emit(io, &out)
        }
    }
}

fn run_table(
    target: TableTarget,
    params: &ParamFlags,
    io: &IoFlags,
    max_weight: usize,
    partition: &str,
) -> Result<(), Failure> {
    match target {
        TableTarget::Eigenvalues => {
            let ctx = params.context(max_weight.max(1), false)?;
            let rows = Partition::all_up_to_weight(max_weight as u32)
                .into_iter()
                .map(|lam| {
                    let e = format_rat(&eigenvalue(&lam, &ctx));
                    (
                        format!("{lam}\t{e}"),
                        TableRow {
                            partition: lam.parts().to_vec(),
                            value: Some(e),
                            shift: None,
                            target: None,
                        },
                    )
                })
                .collect();
            rows_to_output(rows, io, "partition\teigenvalue")
        }
        TableTarget::EvalZero => {
            let ctx = params.context(max_weight.max(1), false)?;
            let mut rows = Vec::new();
            for lam in Partition::all_up_to_weight(max_weight as u32) {
                let v = format_rat(&jacobi_zero_closed(&lam, &ctx)?);
                rows.push((
                    format!("{lam}\t{v}"),
                    TableRow {
                        partition: lam.parts().to_vec(),
                        value: Some(v),
                        shift: None,
                        target: None,
                    },
                ));
            }
            rows_to_output(rows, io, "partition\tvalue")
        }
        TableTarget::PieriCoeffs => {
            let lam = parse_partition_flag(partition)?;
            let ctx = params.context(lam.weight() as usize + 1, false)?;
            let mut rows = Vec::new();
            for shift in admissible_shifts_r1(&lam) {
                let v = format_rat(&pieri_coeff_r1(&lam, shift, &ctx)?);
                let target = shift.apply(&lam).expect("admissible");
                let shift_txt = format!(
                    "{}{}",
                    if shift.sign > 0 { "+" } else { "-" },
                    shift.row
                );
                rows.push((
                    format!("{shift_txt}\t{target}\t{v}"),
                    TableRow {
                        partition: target.parts().to_vec(),
                        value: Some(v),
                        shift: Some(shift_txt),
                        target: None,
                    },
                ));
            }
            rows_to_output(rows, io, "shift\ttarget\tcoefficient")
        }
    }
}

#[derive(Serialize)]
struct Battery<'a> {
    suite: &'a str,
    reports: Vec<SuiteReport>,
}

#[allow(clippy::too_many_arguments)]
fn run_verify(
    suite: &str,
    io: &IoFlags,
    opts: SuiteOptions,
) -> Result<bool, Failure> {
    if suite == "all" {
        let reports: Vec<SuiteReport> = all_suite_names()
            .into_iter()
            .map(|name| run_suite(name, &opts).expect("known suite"))
            .collect();
        let pass = reports.iter().all(|r| r.pass());
        let body = Battery {
            suite: "all",
            reports,
        };
        emit(
            io,
            &serde_json::to_string_pretty(&body).expect("serialization cannot fail"),
        )?;
        Ok(pass)
    } else {
        let report = run_suite(suite, &opts)
            .ok_or_else(|| Failure::input(format!("unknown suite `{suite}`")))?;
        let pass = report.pass();
        emit(io, &report.to_json())?;
        Ok(pass)
    }
}

fn dispatch(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Compute {
            target,
            params,
            io,
            partition,
            mu,
            shift,
        } => {
            run_compute(target, &params, &io, &partition, &mu, &shift)?;
            Ok(true)
        }
        Command::Verify {
            suite,
            io,
            max_weight,
            seed,
            m,
            n,
            r,
            n_vars,
            trials,
            jobs,
            mutate,
        } => {
            let opts = SuiteOptions {
                max_weight,
                seeds: seed,
                m,
                n,
                r,
                n_vars,
                trials,
                jobs,
                mutate,
            };
            run_verify(&suite, &io, opts)
        }
        Command::Table {
            target,
            params,
            io,
            max_weight,
            partition,
        } => {
            run_table(target, &params, &io, max_weight, &partition)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            let _ = writeln!(std::io::stderr(), "error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
