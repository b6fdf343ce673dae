use std::io::{IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use alphacontent::arith::{parse_rational, parse_rational_list};
use alphacontent::coefficients::{nbi, table_rows, Family};
use alphacontent::growth::{cotransition_kernel, sample_growth, sample_next_cell, transition_kernel, GrowthOutput};
use alphacontent::jack::{s_r_closed, s_r_direct, s_r_lagrange, sigma_r_closed, sigma_r_direct, sigma_r_lagrange};
use alphacontent::shifted::d_k;
use alphacontent::symfun::chi_experiment;
use alphacontent::verify::{verify_all, verify_identity, Mode, Status, VerificationReport, VerifyParams};
use alphacontent::{Error, Partition, Rational};
use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod config;

#[derive(Parser)]
#[command(
    name = "alphacontent",
    version,
    about = "Generalized binomial integers, alpha-content moments and their identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generalized binomial integers.
    #[command(subcommand)]
    Coeff(CoeffCmd),
    /// Exploratory fits.
    #[command(subcommand)]
    Experiment(ExperimentCmd),
    /// Content power sums and moments of a partition.
    #[command(subcommand)]
    Moments(MomentsCmd),
    /// Transition measures and the growth sampler.
    #[command(subcommand)]
    Growth(GrowthCmd),
    /// Run identity checks.
    #[command(after_help = identity_list())]
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum CoeffCmd {
    /// One value <n,p>_k.
    Nbi {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: i64,
        #[arg(long)]
        k: i64,
    },
    /// Every entry of a family up to a size.
    Table {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        max: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Nbi,
    Pbi,
    Npbi,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum ExperimentCmd {
    /// Fit the monomial coefficients of P_npk(-X) and compare with the conjectured chi.
    Chi {
        #[arg(long, default_value_t = 6)]
        n_max: u32,
        #[arg(long, default_value_t = 3)]
        p_max: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: ReportFormat,
    },
}

#[derive(Subcommand)]
enum MomentsCmd {
    /// Content power sums d_0 .. d_kmax.
    Dk {
        #[arg(long, value_parser = partition_arg, allow_hyphen_values = true)]
        lambda: Partition,
        #[arg(long, value_parser = rational_arg)]
        alpha: Rational,
        #[arg(long, default_value_t = 6)]
        k_max: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
    /// Moments of the added cell.
    S(MomentArgs),
    /// Moments of the removed cell.
    Sigma(MomentArgs),
}

#[derive(Args)]
struct MomentArgs {
    #[arg(long, value_parser = partition_arg)]
    lambda: Partition,
    #[arg(long, value_parser = rational_arg)]
    alpha: Rational,
    #[arg(long, default_value_t = 9)]
    r_max: u32,
    #[arg(long, value_enum, default_value = "all")]
    method: Method,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Closed,
    Lagrange,
    All,
}

#[derive(Subcommand)]
enum GrowthCmd {
    /// Exact transition (up) or co-transition (down) kernel.
    Dist {
        #[arg(long, value_parser = partition_arg)]
        lambda: Partition,
        #[arg(long, value_parser = rational_arg)]
        alpha: Rational,
        #[arg(long, value_enum, default_value = "up")]
        direction: DirectionArg,
        #[arg(long, value_enum, default_value = "json")]
        format: ReportFormat,
    },
    /// Simulate growth chains from the empty partition.
    Sample {
        #[arg(long, value_parser = rational_arg)]
        alpha: Rational,
        #[arg(long)]
        steps: u32,
        #[arg(long)]
        paths: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "moments")]
        emit: Emit,
        #[arg(long, default_value_t = 4)]
        r_max: u32,
        /// Most paths written by `--emit paths`.
        #[arg(long, default_value_t = 10_000)]
        path_cap: u64,
    },
    /// Sample the next cell from a fixed partition.
    Next {
        #[arg(long, value_parser = partition_arg)]
        lambda: Partition,
        #[arg(long, value_parser = rational_arg)]
        alpha: Rational,
        #[arg(long)]
        paths: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        r_max: u32,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DirectionArg {
    Up,
    Down,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Moments,
    Occupancy,
    Paths,
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity id, repeatable.
    #[arg(long = "identity", required_unless_present = "all")]
    identities: Vec<String>,
    /// Every identity with default ranges.
    #[arg(long, conflicts_with = "identities")]
    all: bool,
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long)]
    order: Option<u32>,
    #[arg(long)]
    lambda_max: Option<u32>,
    #[arg(long)]
    alpha_set: Option<String>,
    #[arg(long)]
    y_set: Option<String>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<u32>,
    /// `key = value` file of defaults; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Symbolic,
    Random,
}

fn partition_arg(s: &str) -> Result<Partition, Error> {
    s.parse()
}

fn rational_arg(s: &str) -> Result<Rational, Error> {
    parse_rational(s)
}

/// Errors in the inputs rather than in a computation.
fn is_usage(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        matches!(
            c.downcast_ref::<Error>(),
            Some(
                Error::POutOfRange { .. }
                    | Error::KOutOfRange(_)
                    | Error::InvalidPartition(_)
                    | Error::Parse(_)
                    | Error::NonPositiveAlpha
                    | Error::EmptyCotransition
                    | Error::UnknownIdentity(_)
                    | Error::InvalidParameter(_)
                    | Error::AlphabetTooSmall(_)
            )
        )
    }) || e.to_string().starts_with("config:")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if is_usage(&e) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let mut out = std::io::stdout().lock();
    match cli.command {
        Command::Coeff(CoeffCmd::Nbi { n, p, k }) => {
            writeln!(out, "{}", nbi(n, p, k)?)?;
        }
        Command::Coeff(CoeffCmd::Table { family, max, format }) => {
            let fam = match family {
                FamilyArg::Nbi => Family::Nbi,
                FamilyArg::Pbi => Family::Pbi,
                FamilyArg::Npbi => Family::Npbi,
            };
            let rows = table_rows(fam, max);
            match format {
                TableFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?,
                TableFormat::Csv => {
                    let mut w = csv::Writer::from_writer(out);
                    let first = if fam == Family::Nbi { "n" } else { "lambda" };
                    w.write_record([first, "p", "k", "value"])?;
                    for r in rows {
                        let p = r.p.map(|p| p.to_string()).unwrap_or_default();
                        w.write_record([r.index, p, r.k.to_string(), r.value])?;
                    }
                    w.flush()?;
                }
            }
        }
        Command::Experiment(ExperimentCmd::Chi {
            n_max,
            p_max,
            seed,
            format,
        }) => {
            let entries = chi_experiment(n_max, p_max, seed)?;
            match format {
                ReportFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&entries)?)?,
                ReportFormat::Text => {
                    for e in &entries {
                        let mark = if e.matches { "match" } else { "MISMATCH" };
                        writeln!(
                            out,
                            "n={} p={} k={} mu={} fitted={} conjectured={} {mark}",
                            e.n, e.p, e.k, e.mu, e.chi_fitted, e.chi_conjectured
                        )?;
                    }
                    let bad = entries.iter().filter(|e| !e.matches).count();
                    writeln!(out, "{} entries, {bad} mismatches", entries.len())?;
                }
            }
        }
        Command::Moments(MomentsCmd::Dk {
            lambda,
            alpha,
            k_max,
            format,
        }) => {
            let mut rows = Vec::new();
            for k in 0..=k_max {
                rows.push((k.to_string(), d_k(&lambda, &alpha, k)?.to_string()));
            }
            match format {
                TableFormat::Json => {
                    let v: Vec<_> = rows
                        .iter()
                        .map(|(k, v)| serde_json::json!({"k": k.parse::<u32>().unwrap(), "value": v}))
                        .collect();
                    writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
                }
                TableFormat::Csv => {
                    let mut w = csv::Writer::from_writer(out);
                    w.write_record(["k", "value"])?;
                    for (k, v) in rows {
                        w.write_record([k, v])?;
                    }
                    w.flush()?;
                }
            }
        }
        Command::Moments(MomentsCmd::S(a)) => moment_table(&mut out, a, false)?,
        Command::Moments(MomentsCmd::Sigma(a)) => moment_table(&mut out, a, true)?,
        Command::Growth(GrowthCmd::Dist {
            lambda,
            alpha,
            direction,
            format,
        }) => {
            let kernel = match direction {
                DirectionArg::Up => transition_kernel(&lambda, &alpha)?,
                DirectionArg::Down => cotransition_kernel(&lambda, &alpha)?,
            };
            match format {
                ReportFormat::Json => writeln!(out, "{}", serde_json::to_string(&kernel)?)?,
                ReportFormat::Text => {
                    for a in &kernel.atoms {
                        writeln!(out, "row {}: {}", a.row, a.p)?;
                    }
                }
            }
        }
        Command::Growth(GrowthCmd::Sample {
            alpha,
            steps,
            paths,
            seed,
            emit,
            r_max,
            path_cap,
        }) => {
            let output = GrowthOutput {
                occupancy: emit == Emit::Occupancy,
                paths: emit == Emit::Paths,
                path_cap,
            };
            let g = sample_growth(steps, &alpha, paths, seed, r_max, output)?;
            match emit {
                Emit::Paths => {
                    for line in g.paths.iter().flatten() {
                        writeln!(out, "{line}")?;
                    }
                }
                _ => writeln!(out, "{}", serde_json::to_string_pretty(&g)?)?,
            }
        }
        Command::Growth(GrowthCmd::Next {
            lambda,
            alpha,
            paths,
            seed,
            r_max,
        }) => {
            let s = sample_next_cell(&lambda, &alpha, paths, seed, r_max)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&s)?)?;
        }
        Command::Verify(args) => return verify(&mut out, args),
    }
    Ok(ExitCode::SUCCESS)
}

fn moment_table(out: &mut impl Write, a: MomentArgs, removed: bool) -> anyhow::Result<()> {
    type Route = fn(&Partition, &Rational, u32) -> alphacontent::Result<Rational>;
    let routes: [(&str, Method, Route, Route); 3] = [
        ("direct", Method::Direct, s_r_direct, sigma_r_direct),
        ("closed", Method::Closed, s_r_closed, sigma_r_closed),
        ("lagrange", Method::Lagrange, s_r_lagrange, sigma_r_lagrange),
    ];
    let mut rows = Vec::new();
    for r in 0..=a.r_max {
        for (name, m, s, sigma) in &routes {
            if a.method == Method::All || a.method == *m {
                let f = if removed { sigma } else { s };
                rows.push((r, f(&a.lambda, &a.alpha, r)?.to_string(), *name));
            }
        }
    }
    match a.format {
        TableFormat::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(r, v, m)| serde_json::json!({"r": r, "value": v, "method": m}))
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        }
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["r", "value", "method"])?;
            for (r, v, m) in rows {
                w.write_record([r.to_string(), v, m.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn verify_params(args: &VerifyArgs) -> anyhow::Result<VerifyParams> {
    let file = match &args.config {
        Some(path) => config::load(path).map_err(|e| anyhow::anyhow!("config: {e:#}"))?,
        None => Default::default(),
    };
    let pick = |flag: Option<String>, key: &str| flag.or_else(|| file.get(key).cloned());
    let num = |flag: Option<u32>, key: &str| -> anyhow::Result<Option<u32>> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => file
                .get(key)
                .map(|s| s.parse().with_context(|| format!("config: {key} = {s:?}")))
                .transpose(),
        }
    };
    let mut p = VerifyParams {
        n_max: num(args.n_max, "n-max")?,
        order: num(args.order, "order")?,
        lambda_max: num(args.lambda_max, "lambda-max")?,
        ..Default::default()
    };
    if let Some(s) = pick(args.alpha_set.clone(), "alpha-set") {
        p.alphas = parse_rational_list(&s)?;
    }
    if let Some(s) = pick(args.y_set.clone(), "y-set") {
        p.ys = Some(parse_rational_list(&s)?);
    }
    p.mode = match args.mode {
        Some(ModeArg::Symbolic) => Mode::Symbolic,
        Some(ModeArg::Random) => Mode::Random,
        None => match file.get("mode") {
            Some(s) => s.parse::<Mode>()?,
            None => Mode::Symbolic,
        },
    };
    if let Some(s) = args.seed.map(|v| v.to_string()).or_else(|| file.get("seed").cloned()) {
        p.seed = s.parse().with_context(|| format!("config: seed = {s:?}"))?;
    }
    if let Some(t) = num(args.trials, "trials")? {
        p.trials = t;
    }
    Ok(p)
}

fn verify(out: &mut impl Write, args: VerifyArgs) -> anyhow::Result<ExitCode> {
    let params = verify_params(&args)?;
    let reports: Vec<VerificationReport> = if args.all {
        verify_all(&params)?
    } else {
        args.identities
            .iter()
            .map(|id| verify_identity(id, &params))
            .collect::<Result<_, _>>()?
    };
    match args.format {
        ReportFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?,
        ReportFormat::Text => {
            let color = std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal();
            for r in &reports {
                write_text_report(out, r, color)?;
            }
        }
    }
    Ok(ExitCode::from(report_status(&reports)))
}

fn identity_list() -> String {
    format!("Identity ids: {}", alphacontent::verify::IDENTITIES.join(", "))
}

/// 1 if any report failed, else 0.
fn report_status(reports: &[VerificationReport]) -> u8 {
    u8::from(reports.iter().any(|r| !r.passed()))
}

fn write_text_report(out: &mut impl Write, r: &VerificationReport, color: bool) -> std::io::Result<()> {
    let (word, code) = match r.status {
        Status::Verified => ("verified", "32"),
        Status::Failed => ("FAILED", "31"),
        Status::Reported => ("reported", "33"),
    };
    let status = if color {
        format!("\x1b[{code}m{word}\x1b[0m")
    } else {
        word.to_string()
    };
    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    writeln!(
        out,
        "{:<22}{status}  cases={} coefficients={}  [{}]",
        r.id,
        r.cases,
        r.coefficients,
        params.join(" ")
    )?;
    if let Some(c) = &r.counterexample {
        writeln!(out, "    first mismatch: {}", c.case)?;
        writeln!(out, "    lhs: {}", c.lhs)?;
        writeln!(out, "    rhs: {}", c.rhs)?;
    }
    if let Some(d) = &r.details {
        if let Some(m) = d.get("mismatches").and_then(|m| m.as_array()) {
            writeln!(
                out,
                "    {} entries, {} differ from the conjectured formula",
                d["entries"],
                m.len()
            )?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alphacontent::verify::Counterexample;

    fn report(status: Status) -> VerificationReport {
        VerificationReport {
            id: "thm3.1".into(),
            params: Default::default(),
            status,
            cases: 1,
            coefficients: 1,
            counterexample: None,
            details: None,
        }
    }

    #[test]
    fn failed_report_exits_one() {
        assert_eq!(report_status(&[report(Status::Verified), report(Status::Reported)]), 0);
        let mut bad = report(Status::Failed);
        bad.counterexample = Some(Counterexample {
            case: "n = 2".into(),
            lhs: "1".into(),
            rhs: "2".into(),
        });
        assert_eq!(report_status(&[report(Status::Verified), bad]), 1);
    }
}
