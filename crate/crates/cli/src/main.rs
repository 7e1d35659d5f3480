//! Batch interface: compute any series, run any verification suite, and
//! emit deterministic reports with a stable exit-code contract:
//! 0 = pass, 1 = identity failure, 2 = usage error, 3 = internal error.

mod report;
mod suites;

use clap::{Parser, Subcommand, ValueEnum};
use qchar_core::qcore::{expand, Orientation};
use qchar_core::sl3::{phi_b, psi_b, ModuleParams};
use qchar_core::toda::{i_dd, i_ddn};
use qchar_core::QError;
use report::RunConfig;
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qchar", version, about = "exact character series and identity verification")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Table,
}

#[derive(clap::Args, Clone)]
struct ConfigArgs {
    /// total z-degree truncation
    #[arg(long, default_value_t = 4)]
    zmax: i32,
    /// lower q-window edge
    #[arg(long, default_value_t = 0)]
    qlo: i32,
    /// upper q-window edge
    #[arg(long, default_value_t = 10)]
    qhi: i32,
    /// reserved margin on outer-sum truncation, echoed for reproducibility
    #[arg(long, default_value_t = 2)]
    imax_buffer: u32,
    /// decimal digits for the numeric suites
    #[arg(long, default_value_t = 100)]
    precision: u32,
    /// number of numeric sample points
    #[arg(long, default_value_t = 5)]
    samples: usize,
    /// RNG seed for sampling and randomized parameter tuples
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// write the report here instead of stdout
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute a character or coefficient series and print it.
    Char {
        /// one of: sl2, sl3-chi, sl3-phi, sl3-psi, vk, I, Iddn
        target: String,
        #[arg(long)]
        k: Option<i32>,
        #[arg(long)]
        k1: Option<i32>,
        #[arg(long)]
        k2: Option<i32>,
        #[arg(long)]
        l: Option<i32>,
        #[arg(long)]
        l1: Option<i32>,
        #[arg(long)]
        l2: Option<i32>,
        #[arg(long)]
        l3: Option<i32>,
        #[arg(long)]
        d1: Option<i32>,
        #[arg(long)]
        d2: Option<i32>,
        #[arg(long)]
        n: Option<i32>,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Run a verification suite and emit a report.
    Verify {
        /// one of: sl2-all, chsp, ses, boundary, gl, toda, irec, isum,
        /// terms, gt-numeric, whittaker, all
        suite: String,
        /// restrict level sweeps to this first level
        #[arg(long)]
        k1: Option<i32>,
        /// restrict level sweeps to this second level
        #[arg(long)]
        k2: Option<i32>,
        #[command(flatten)]
        config: ConfigArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

enum AppError {
    Usage(String),
    Internal(String),
}

impl From<QError> for AppError {
    fn from(e: QError) -> Self {
        match e {
            QError::Param(m) => AppError::Usage(m),
            other => AppError::Internal(other.to_string()),
        }
    }
}

fn need(name: &str, v: Option<i32>) -> Result<i32, AppError> {
    v.ok_or_else(|| AppError::Usage(format!("missing required flag --{name}")))
}

fn emit(config: &ConfigArgs, body: String) -> Result<(), AppError> {
    match &config.out {
        Some(path) => {
            let mut f = std::fs::File::create(path)
                .map_err(|e| AppError::Internal(format!("cannot write {}: {e}", path.display())))?;
            writeln!(f, "{body}").map_err(|e| AppError::Internal(e.to_string()))?;
        }
        None => println!("{body}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, AppError> {
    init_thread_pool();
    match cli.cmd {
        Cmd::Char { target, k, k1, k2, l, l1, l2, l3, d1, d2, n, config } => {
            let window = (config.qlo, config.qhi);
            if window.0 > window.1 || config.zmax < 0 {
                return Err(AppError::Usage("need qlo <= qhi and zmax >= 0".into()));
            }
            let series = match target.as_str() {
                "sl2" => {
                    let k = need("k", k)?;
                    let l = need("l", l)?;
                    if k < 0 || l < 0 || l > k {
                        return Err(AppError::Usage(format!(
                            "sl2 parameters must satisfy 0 <= l <= k, got k={k} l={l}"
                        )));
                    }
                    let p = qchar_core::sl2::Sl2Params::new(k as u32, l as u32)?;
                    qchar_core::sl2::fermionic_sl2(p, config.zmax, window)
                }
                "sl3-chi" => {
                    let k = need("k", k)?;
                    let (l1, l2) = (need("l1", l1)?, need("l2", l2)?);
                    qchar_core::sl3::enumerate_x(k, l1, l2, config.zmax, config.qhi)?
                }
                "sl3-phi" | "sl3-psi" => {
                    let p = ModuleParams::new(
                        need("k1", k1)?,
                        need("k2", k2)?,
                        need("l1", l1)?,
                        need("l2", l2)?,
                        need("l3", l3)?,
                    );
                    p.require_levels()?;
                    if target == "sl3-phi" {
                        if !p.in_p_u() {
                            return Err(AppError::Usage(format!(
                                "{:?} violates the U-family parameter region (0<=l1<=k1, 0<=l2<=k2, 0<=l3<=min(l1,l2))",
                                p
                            )));
                        }
                        phi_b(p, config.zmax, window)?
                    } else {
                        if !p.in_p_v() {
                            return Err(AppError::Usage(format!(
                                "{:?} violates the V-family parameter region (0<=l1<=k1, 0<=l2<=k2, l1<=l3<=min(l1+l2,k1))",
                                p
                            )));
                        }
                        psi_b(p, config.zmax, window)?
                    }
                }
                "vk" => {
                    let k = need("k", k)?;
                    if k < 1 {
                        return Err(AppError::Usage(format!(
                            "vacuum character needs k >= 1, got {k}"
                        )));
                    }
                    qchar_core::sl3::ch_vk(
                        k,
                        qchar_core::sl3::VkBackend::Fermionic,
                        config.zmax,
                        window,
                    )?
                }
                "I" => {
                    let (d1, d2) = (need("d1", d1)?, need("d2", d2)?);
                    if d1 < 0 || d2 < 0 {
                        return Err(AppError::Usage("need d1, d2 >= 0".into()));
                    }
                    expand(&i_dd(d1, d2), Orientation::MM, config.zmax, window)?
                }
                "Iddn" => {
                    let (d1, d2, n) = (need("d1", d1)?, need("d2", d2)?, need("n", n)?);
                    if d1 < 0 || d2 < 0 || n < 0 || n > d1.min(d2) {
                        return Err(AppError::Usage("need 0 <= n <= min(d1, d2)".into()));
                    }
                    expand(&i_ddn(d1, d2, n), Orientation::MM, config.zmax, window)?
                }
                other => {
                    return Err(AppError::Usage(format!(
                        "unknown char target '{other}' (expected sl2, sl3-chi, sl3-phi, sl3-psi, vk, I, Iddn)"
                    )))
                }
            };
            let clipped = series.clip_view(window);
            let body = match config.format {
                FormatArg::Json => clipped.to_json(),
                FormatArg::Table => report::series_table(&clipped),
            };
            emit(&config, body)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { suite, k1, k2, config } => {
            if config.qlo > config.qhi || config.zmax < 0 {
                return Err(AppError::Usage("need qlo <= qhi and zmax >= 0".into()));
            }
            if let (Some(a), Some(b)) = (k1, k2) {
                if a > b {
                    return Err(AppError::Usage(format!("need k1 <= k2, got k1={a} k2={b}")));
                }
            }
            let rc = RunConfig {
                zmax: config.zmax,
                qlo: config.qlo,
                qhi: config.qhi,
                imax_buffer: config.imax_buffer,
                precision: config.precision,
                samples: config.samples,
                seed: config.seed,
                k1,
                k2,
            };
            let started = std::time::Instant::now();
            let rep = suites::run_suite(&suite, &rc).map_err(AppError::from)?;
            // wall-clock goes to stderr so stdout stays byte-identical
            eprintln!("suite '{}' finished in {:?}", suite, started.elapsed());
            let body = match config.format {
                FormatArg::Json => rep.to_json(&rc),
                FormatArg::Table => rep.to_table(&rc),
            };
            let pass = rep.pass();
            emit(&config, body)?;
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn init_thread_pool() {
    if let Ok(v) = std::env::var("QCHAR_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
        }
    }
}
