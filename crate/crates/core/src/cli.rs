//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::assembly::{dt_orbifold_series, dt_quiver_series, quintic_factors, stratum_euler_chars, AssemblyError};
use crate::check::{run_check, CheckReport};
use crate::multicolor::{multicolor_oracle, multicolor_product, CountTable};
use crate::plane_partition::{colored_gf, enumerate_plane_partitions, size_counts, ColorWeights, QUINTIC_WEIGHTS};
use crate::quiver::{quintic_identification, QuantumMatrix, Quiver};
use crate::series::{macmahon, render_orbits, OrbitTerm, TruncatedSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "quintic-dt", version, about = "Degree-zero DT series of the generic quantum Fermat quintic")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// MacMahon function M(t) = prod (1 - t^n)^-n.
    Macmahon {
        #[arg(long, default_value_t = 5)]
        trunc: u32,
    },
    /// Plane partition enumeration.
    Pp {
        #[command(subcommand)]
        command: PpCommand,
    },
    /// Counts n_Q(d) of multi-colored plane partitions of the quintic quiver.
    Multicolored {
        #[arg(long, default_value_t = 5)]
        trunc: u32,
        /// Enumerate colorings directly instead of using the product formula.
        #[arg(long)]
        oracle: bool,
    },
    /// Signed DT generating functions.
    Dt {
        #[command(subcommand)]
        command: DtCommand,
    },
    /// Euler characteristics of the strata of the hyperplane sum x_i = 0 in P^N.
    Euler {
        #[arg(long, default_value_t = 4)]
        ambient: u32,
    },
    /// Global quantum matrix, local matrix and Ext quiver of the quintic.
    ExtQuiver {
        #[arg(long, default_value_t = 0)]
        base: usize,
    },
    /// Cross-validates every module.
    Check {
        #[arg(long, default_value_t = 5)]
        trunc: u32,
    },
}

#[derive(Debug, Subcommand)]
enum PpCommand {
    /// Number of plane partitions of each size.
    Count {
        #[arg(long, default_value_t = 5)]
        max: u32,
    },
    /// Colored plane partition generating function.
    Colored {
        #[arg(long, default_value_t = 5)]
        r: u32,
        #[arg(long, value_parser = parse_weights, default_value = "1,1,3")]
        weights: [u32; 3],
        #[arg(long, default_value_t = 5)]
        trunc: u32,
        /// Set every variable to t.
        #[arg(long)]
        specialize: bool,
    },
    /// Every plane partition up to the given size.
    List {
        #[arg(long, default_value_t = 3)]
        max: u32,
    },
}

#[derive(Debug, Subcommand)]
enum DtCommand {
    /// Z^{Q,W} of the quintic quiver with potential.
    Quiver {
        #[arg(long, default_value_t = 5)]
        trunc: u32,
        /// Emit only the orbit table in json and csv output.
        #[arg(long)]
        orbit_view: bool,
    },
    /// DT series of the orbifold [C^3 / mu_r].
    Orbifold {
        #[arg(long, default_value_t = 5)]
        r: u32,
        #[arg(long, value_parser = parse_weights, default_value = "1,1,3")]
        weights: [u32; 3],
        #[arg(long, default_value_t = 5)]
        trunc: u32,
    },
    /// Degree-zero DT series of the quantum Fermat quintic.
    Quintic {
        #[arg(long, default_value_t = 5)]
        trunc: u32,
    },
}

fn parse_weights(s: &str) -> Result<[u32; 3], String> {
    let parts: Vec<u32> = s
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    parts
        .try_into()
        .map_err(|p: Vec<u32>| format!("expected three weights A,B,C, got {}", p.len()))
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Assembly(#[from] AssemblyError),
    #[error("{0}")]
    Other(String),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
}

/// A command result ready to be printed in any format.
struct Rendered {
    text: String,
    json: serde_json::Value,
    csv: Vec<Vec<String>>,
    /// Exit code on success of the computation itself.
    code: i32,
}

impl Rendered {
    fn new(text: String, json: impl Serialize, csv: Vec<Vec<String>>) -> Self {
        Self {
            text,
            json: serde_json::to_value(json).expect("serializable"),
            csv,
            code: 0,
        }
    }
}

fn series_csv(s: &TruncatedSeries) -> Vec<Vec<String>> {
    if s.num_vars() == 1 {
        let mut rows = vec![vec!["degree".to_string(), "coefficient".to_string()]];
        rows.extend(
            s.degree_sums()
                .iter()
                .enumerate()
                .map(|(n, c)| vec![n.to_string(), c.to_string()]),
        );
        return rows;
    }
    let mut header: Vec<String> = (0..s.num_vars()).map(|i| format!("t{i}")).collect();
    header.push("coefficient".into());
    let mut rows = vec![header];
    for (e, c) in s.terms() {
        let mut row: Vec<String> = e.iter().map(|a| a.to_string()).collect();
        row.push(c.to_string());
        rows.push(row);
    }
    rows
}

fn orbits_csv(orbits: &[OrbitTerm]) -> Vec<Vec<String>> {
    let mut header: Vec<String> = (0..5).map(|i| format!("a{i}")).collect();
    header.extend(["coefficient".to_string(), "orbit_size".to_string()]);
    let mut rows = vec![header];
    for o in orbits {
        let mut row: Vec<String> = o.rep_exponent.iter().map(|a| a.to_string()).collect();
        row.push(o.coefficient.to_string());
        row.push(o.orbit_size.to_string());
        rows.push(row);
    }
    rows
}

fn counts_render(table: &CountTable) -> Rendered {
    let mut text = String::new();
    let mut rows = vec![(0..5).map(|i| format!("d{i}")).chain(["count".to_string()]).collect::<Vec<_>>()];
    for (d, c) in table.iter() {
        let parts: Vec<String> = d.iter().map(|a| a.to_string()).collect();
        text.push_str(&format!("({}) {c}\n", parts.join(",")));
        rows.push(parts.into_iter().chain([c.to_string()]).collect());
    }
    Rendered::new(text.trim_end().to_string(), table, rows)
}

fn weights(r: u32, [a, b, c]: [u32; 3]) -> Result<ColorWeights, CliError> {
    ColorWeights::reduced(r, a, b, c).map_err(|e| CliError::Other(e.to_string()))
}

fn execute(command: Command) -> Result<Rendered, CliError> {
    Ok(match command {
        Command::Macmahon { trunc } => {
            let m = macmahon(trunc);
            Rendered::new(m.to_string(), &m, series_csv(&m))
        }
        Command::Pp { command } => match command {
            PpCommand::Count { max } => {
                let counts = size_counts(max);
                let text = counts
                    .iter()
                    .enumerate()
                    .map(|(n, c)| format!("{n}: {c}"))
                    .collect::<Vec<_>>()
                    .join("\n");
                let mut rows = vec![vec!["size".to_string(), "count".to_string()]];
                rows.extend(counts.iter().enumerate().map(|(n, c)| vec![n.to_string(), c.to_string()]));
                Rendered::new(text, &counts, rows)
            }
            PpCommand::Colored {
                r,
                weights: w,
                trunc,
                specialize,
            } => {
                let mut s = colored_gf(&weights(r, w)?, trunc);
                if specialize {
                    s = s.specialize();
                }
                Rendered::new(s.to_string(), &s, series_csv(&s))
            }
            PpCommand::List { max } => {
                let all: Vec<_> = enumerate_plane_partitions(max).collect();
                let text = all.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("\n");
                let mut rows = vec![vec!["index".to_string(), "size".to_string(), "rows".to_string()]];
                rows.extend(
                    all.iter()
                        .enumerate()
                        .map(|(i, p)| vec![i.to_string(), p.size().to_string(), p.to_string()]),
                );
                Rendered::new(text, &all, rows)
            }
        },
        Command::Multicolored { trunc, oracle } => {
            let table = if oracle {
                multicolor_oracle(&Quiver::mckay(&QUINTIC_WEIGHTS), trunc).map_err(AssemblyError::from)?
            } else {
                CountTable::from_series(&multicolor_product(trunc)).map_err(AssemblyError::from)?
            };
            counts_render(&table)
        }
        Command::Dt { command } => match command {
            DtCommand::Quiver { trunc, orbit_view } => {
                let report = dt_quiver_series(trunc)?;
                let mut text = format!("{}\n{}", render_orbits(&report.orbit_view), report.univariate);
                for a in &report.anomalies {
                    text.push_str(&format!("\nanomaly: {a}"));
                }
                if orbit_view {
                    let csv = orbits_csv(&report.orbit_view);
                    Rendered::new(text, &report.orbit_view, csv)
                } else {
                    let csv = series_csv(&report.multivariate);
                    Rendered::new(text, &report, csv)
                }
            }
            DtCommand::Orbifold { r, weights: w, trunc } => {
                let s = dt_orbifold_series(&weights(r, w)?, trunc)?;
                Rendered::new(s.to_string(), &s, series_csv(&s))
            }
            DtCommand::Quintic { trunc } => {
                let s = quintic_factors(trunc)?.product();
                Rendered::new(s.to_string(), &s, series_csv(&s))
            }
        },
        Command::Euler { ambient } => {
            let e = stratum_euler_chars(ambient)?;
            let mut text: Vec<String> = e
                .strata
                .iter()
                .enumerate()
                .map(|(i, c)| format!("chi(X_({i})) = {c}"))
                .collect();
            text.push(format!("weighted = {}", e.weighted));
            text.push(format!("total = {}", e.total));
            if ambient == 4 {
                text.push(format!(
                    "note: printed chi(X_(0)) = 0; the quiver exponent uses {}",
                    e.strata[0]
                ));
            }
            let mut rows = vec![vec!["stratum".to_string(), "euler".to_string()]];
            rows.extend(e.strata.iter().enumerate().map(|(i, c)| vec![i.to_string(), c.to_string()]));
            Rendered::new(text.join("\n"), &e, rows)
        }
        Command::ExtQuiver { base } => {
            let global = QuantumMatrix::generic_quintic();
            let local = global.local(base).map_err(AssemblyError::from)?;
            let ext = local.ext_quiver().map_err(AssemblyError::from)?;
            let mckay = Quiver::mckay(&QUINTIC_WEIGHTS);
            let iso = if base == 0 {
                Some(quintic_identification())
            } else {
                ext.find_label_isomorphism(&mckay)
            };
            let iso_text = match &iso {
                Some(i) => format!(
                    "isomorphic to the McKay quiver of mu_5(1,1,3): vertices {:?}, labels x,y,z -> {},{},{}",
                    i.vertex_map, i.label_map[0], i.label_map[1], i.label_map[2]
                ),
                None => "not isomorphic to the McKay quiver of mu_5(1,1,3)".to_string(),
            };
            let text = format!(
                "global:\n{global}\nlocal at {base}:\n{local}\nExt quiver:\n{ext}\n{iso_text}"
            );
            let mut rows = vec![vec!["source".to_string(), "target".to_string(), "label".to_string()]];
            rows.extend(
                ext.arrows()
                    .iter()
                    .map(|a| vec![a.source.to_string(), a.target.to_string(), a.label.to_string()]),
            );
            Rendered::new(
                text,
                json!({ "global": global, "local": local, "quiver": ext, "identification": iso }),
                rows,
            )
        }
        Command::Check { trunc } => {
            let report = run_check(trunc)?;
            let mut r = Rendered::new(check_text(&report), &report, check_csv(&report));
            r.code = if report.passed() { 0 } else { 1 };
            r
        }
    })
}

fn check_text(report: &CheckReport) -> String {
    let width = report.items.iter().map(|i| i.name.len()).max().unwrap_or(0);
    let mut lines = Vec::new();
    for item in &report.items {
        lines.push(format!(
            "{:<width$}  {:<17}  {}",
            item.name,
            item.status.to_string(),
            item.detail
        ));
        for w in &item.witnesses {
            lines.push(format!("{:<width$}    {w}", ""));
        }
    }
    let verdict = if report.passed() { "all checks passed" } else { "some checks failed" };
    lines.push(verdict.to_string());
    lines.join("\n")
}

fn check_csv(report: &CheckReport) -> Vec<Vec<String>> {
    let mut rows = vec![["name", "status", "detail", "witnesses"].map(String::from).to_vec()];
    for item in &report.items {
        rows.push(vec![
            item.name.to_string(),
            item.status.to_string(),
            item.detail.clone(),
            item.witnesses.join("; "),
        ]);
    }
    rows
}

fn emit(format: OutputFormat, r: &Rendered, out: &mut impl Write) -> Result<(), CliError> {
    match format {
        OutputFormat::Text => writeln!(out, "{}", r.text)?,
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &r.json).map_err(|e| CliError::Other(e.to_string()))?;
            writeln!(out)?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for row in &r.csv {
                w.write_record(row).map_err(|e| CliError::Other(e.to_string()))?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the command. Returns
/// 0 on success, 1 on a computation error or failed check, 2 on a usage error.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                2
            } else {
                let _ = write!(out, "{}", e.render());
                0
            };
            return code;
        }
    };
    let format = cli.format;
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(cli.command)),
            Err(e) => Err(CliError::Other(e.to_string())),
        },
        None => execute(cli.command),
    };
    match result.and_then(|r| emit(format, &r, out).map(|_| r.code)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
