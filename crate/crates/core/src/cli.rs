//! The `qcav` command-line front end.
//!
//! `qcav <subcommand> --config <path> --out <dir> [--seed <u64>]`
//!
//! Each run writes `manifest.json` and `resolved.toml` (every default
//! materialized, replayable as a config) before computing anything, then
//! its outputs. Exit codes: 0 success, 2 config/validation error, 3 size cap.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::cavitation::{
    enhanced_rate, enhancement_instant, enhancement_thermal, EnhancementSource, ThermalSource,
};
use crate::config::{Config, GridPoint};
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::ising::{exact_enumerate, sample, sample_chains, RunConfig, SampleSummary};
use crate::lattice::FieldPattern;
use crate::rng::derive_seed;
use crate::vortex::{
    circulation_quantum, discrepancy_ledger, flux_quantum, superfluid_velocity, vorticity, CouplingDerivation,
};

pub const OBSERVABLE_HEADER: &str = "sweep,E_red,M,field_term";
pub const SWEEP_HEADER: &str =
    "L,K,T_red,b,seed,mean_E,stderr_E,mean_absM,stderr_absM,binder_U,ln_enhancement,stderr_ln_enhancement";

#[derive(Debug, Parser)]
#[command(name = "qcav", version, about = "Vortex-coupled quantum cavitation calculator and simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Closed-form vortex physics report with literature discrepancies
    Physics(CommonArgs),
    /// Exact enumeration over all spin configurations (N <= 20)
    Exact(CommonArgs),
    /// Metropolis simulation: observable stream and summary
    Simulate(CommonArgs),
    /// Parameter grid over L, K, T_red and b
    Sweep(CommonArgs),
    /// Cavitation-rate enhancement report
    Enhance(CommonArgs),
}

#[derive(Debug, Clone, PartialEq, Eq, clap::Args)]
pub struct CommonArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Overrides `run.seed` from the config
    #[arg(long)]
    pub seed: Option<u64>,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Physics(_) => "physics",
            Command::Exact(_) => "exact",
            Command::Simulate(_) => "simulate",
            Command::Sweep(_) => "sweep",
            Command::Enhance(_) => "enhance",
        }
    }

    pub fn args(&self) -> &CommonArgs {
        match self {
            Command::Physics(a) | Command::Exact(a) | Command::Simulate(a) | Command::Sweep(a) | Command::Enhance(a) => a,
        }
    }
}

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    tool_version: &'static str,
    subcommand: &'a str,
    config_path: String,
    out_dir: String,
    seed: u64,
    resolved_config: &'static str,
    config: &'a Config,
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

/// Shortest round-trip decimal; `NA` for missing or non-finite values.
fn num(v: Option<f64>) -> String {
    match v {
        Some(x) if x.is_finite() => format!("{x:?}"),
        _ => "NA".to_string(),
    }
}

/// Runs one subcommand given its config path, output directory and optional seed.
pub fn run(command: &str, config_path: &Path, out: &Path, seed: Option<u64>) -> Result<()> {
    let config = Config::load(config_path)?.resolved(seed);
    fs::create_dir_all(out).map_err(|source| Error::Io {
        path: out.display().to_string(),
        source,
    })?;
    let manifest = Manifest {
        tool: "qcav",
        tool_version: env!("CARGO_PKG_VERSION"),
        subcommand: command,
        config_path: config_path.display().to_string(),
        out_dir: out.display().to_string(),
        seed: config.run.seed,
        resolved_config: "resolved.toml",
        config: &config,
    };
    match command {
        "physics" | "exact" | "simulate" | "sweep" | "enhance" => {}
        other => return Err(Error::config(format!("unknown subcommand {other}"))),
    }
    // validate before committing anything to disk
    validate(command, &config)?;
    write_file(&out.join("manifest.json"), &to_json(&manifest))?;
    write_file(&out.join("resolved.toml"), &config.to_toml())?;
    match command {
        "physics" => cmd_physics(&config, out),
        "exact" => cmd_exact(&config, out),
        "simulate" => cmd_simulate(&config, out),
        "sweep" => cmd_sweep(&config, out),
        _ => cmd_enhance(&config, out),
    }
}

fn validate(command: &str, c: &Config) -> Result<()> {
    match command {
        "physics" => {
            CouplingDerivation::derive(&PhysicalConstants::default(), &c.superfluid()?, &c.superconductor()?)
                .map_err(|e| Error::config(format!("[superconductor] {e}")))?;
        }
        "exact" => {
            c.lattice()?;
            c.couplings()?;
        }
        "simulate" => {
            c.lattice()?;
            c.couplings()?;
            c.run_config()?;
        }
        "sweep" => {
            c.run_config()?;
            for p in c.grid()? {
                c.lattice_at(&p)?;
            }
        }
        _ => {
            c.lattice()?;
            c.couplings()?;
            c.cavitation()?;
            if c.cavitation.source == EnhancementSource::Mc {
                c.run_config()?;
            }
        }
    }
    Ok(())
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with(cli: Cli) -> i32 {
    let a = cli.command.args();
    match run(cli.command.name(), &a.config, &a.out, a.seed) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("qcav {}: {e}", cli.command.name());
            e.exit_code()
        }
    }
}

fn cmd_physics(c: &Config, out: &Path) -> Result<()> {
    let k = PhysicalConstants::default();
    let sf = c.superfluid()?;
    let sc = c.superconductor()?;
    let d = CouplingDerivation::derive(&k, &sf, &sc).map_err(|e| Error::config(format!("[superconductor] {e}")))?;
    let w0 = vorticity(&k, sf.r0, sf.m_s)?;
    let identity_err = ((d.eta * w0 - k.hbar) / k.hbar).abs();
    let discrepancies: Vec<_> = discrepancy_ledger(&d)
        .into_iter()
        .map(|x| {
            json!({
                "quantity": x.quantity,
                "computed": x.computed,
                "quoted": x.quoted,
                "ratio": x.ratio,
                "relative_error": x.relative_error,
                "status": if x.reproduced { "reproduced" } else { "UNREPRODUCED" },
            })
        })
        .collect();
    let report = json!({
        "constants": k,
        "superfluid": sf,
        "superconductor": sc,
        "circulation_quantum": circulation_quantum(&k, 1, sf.m_s)?,
        "flux_quantum": flux_quantum(&k, 1, sc.e_c)?,
        "v_r0": superfluid_velocity(&k, sf.r0, sf.m_s)?,
        "w_r0": w0,
        "derivation": {
            "eta": d.eta,
            "rho": d.rho,
            "delta": d.delta,
            "gamma": d.gamma,
            "k_required": d.k_required,
            "ln_k_required": d.ln_k_required,
            "k_required_overflow": d.k_required.is_none(),
            "B_cycl": d.b_cycl,
            "f_c": d.f_c,
            "B0_abrikosov": d.b0_abrikosov,
        },
        "checks": {
            "eta_w_r0_equals_hbar": {
                "relative_error": identity_err,
                "status": if identity_err <= 1e-12 { "PASS" } else { "FAIL" },
            },
        },
        "discrepancies": discrepancies,
    });
    write_file(&out.join("physics.json"), &to_json(&report))
}

fn cmd_exact(c: &Config, out: &Path) -> Result<()> {
    let lattice = c.lattice()?;
    let r = exact_enumerate(&lattice, &c.couplings()?)?;
    let mut v = serde_json::to_value(&r).expect("exact result serializes");
    v["ln_enhancement"] = json!(r.ln_mean_exp_field);
    v["n_sites"] = json!(lattice.n_sites());
    write_file(&out.join("exact.json"), &to_json(&v))?;
    write_file(&out.join("lattice.json"), &lattice.snapshot().to_json())
}

fn observables_csv(records: &[crate::ising::ObservableRecord]) -> String {
    let mut s = String::with_capacity(32 * (records.len() + 1));
    s.push_str(OBSERVABLE_HEADER);
    s.push('\n');
    for r in records {
        let _ = writeln!(s, "{},{},{},{}", r.sweep, num(Some(r.e_red)), r.m, num(Some(r.field_term)));
    }
    s
}

fn cmd_simulate(c: &Config, out: &Path) -> Result<()> {
    let lattice = c.lattice()?;
    let r = sample(&lattice, &c.couplings()?, &c.run_config()?)?;
    write_file(&out.join("observables.csv"), &observables_csv(&r.records))?;
    write_file(&out.join("summary.json"), &to_json(&r.summary))?;
    write_file(&out.join("final_lattice.json"), &r.final_lattice.snapshot().to_json())
}

/// Result row of one sweep point.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub point: GridPoint,
    pub seed: u64,
    pub summary: SampleSummary,
}

/// Runs every grid point of the config; rows come back in grid order.
pub fn run_sweep(c: &Config) -> Result<Vec<SweepRow>> {
    let grid = c.grid()?;
    let run = c.run_config()?;
    grid.into_par_iter()
        .enumerate()
        .map(|(i, point)| {
            let lattice = c.lattice_at(&point)?;
            let seed = derive_seed(run.seed, i as u64);
            let couplings = crate::ising::CouplingSet::new(point.k, point.t_red)?;
            let point_run = RunConfig { seed, ..run };
            let (_, summary) = sample_chains(&lattice, &couplings, &point_run, c.sweep.chains)?;
            Ok(SweepRow { point, seed, summary })
        })
        .collect()
}

pub fn sweep_csv(c: &Config, rows: &[SweepRow]) -> String {
    let mut s = String::new();
    s.push_str(SWEEP_HEADER);
    s.push('\n');
    for r in rows {
        let p = &r.point;
        let l = if p.lx == p.ly { p.lx.to_string() } else { format!("{}x{}", p.lx, p.ly) };
        let b = match (p.b, &c.lattice.field) {
            (Some(b), _) => Some(b),
            (None, FieldPattern::Uniform { b }) => Some(*b),
            _ => None,
        };
        let m = &r.summary;
        let _ = writeln!(
            s,
            "{l},{},{},{},{},{},{},{},{},{},{},{}",
            num(Some(p.k)),
            num(Some(p.t_red)),
            num(b),
            r.seed,
            num(Some(m.mean_e)),
            num(m.stderr_e),
            num(Some(m.mean_abs_m)),
            num(m.stderr_abs_m),
            num(m.binder_u),
            num(Some(m.ln_enhancement_mean)),
            num(m.stderr_ln_enhancement),
        );
    }
    s
}

fn cmd_sweep(c: &Config, out: &Path) -> Result<()> {
    let rows = run_sweep(c)?;
    write_file(&out.join("sweep.csv"), &sweep_csv(c, &rows))
}

fn cmd_enhance(c: &Config, out: &Path) -> Result<()> {
    let params = c.cavitation()?;
    let lattice = c.lattice()?;
    let couplings = c.couplings()?;
    let report = match c.cavitation.source {
        EnhancementSource::Exact => {
            let r = exact_enumerate(&lattice, &couplings)?;
            enhancement_thermal(
                ThermalSource::Exact {
                    result: &r,
                    n_sites: lattice.n_sites(),
                },
                enhancement_instant(&lattice),
            )?
        }
        EnhancementSource::Mc => {
            let r = sample(&lattice, &couplings, &c.run_config()?)?;
            enhancement_thermal(ThermalSource::Mc(&r.summary), enhancement_instant(&r.final_lattice))?
        }
    };
    let rate = enhanced_rate(&params, &report, c.cavitation.mode);
    let v = json!({
        "ln_factor_instant": report.ln_factor_instant,
        "ln_factor_thermal": report.ln_factor_thermal,
        "stderr_ln_factor": report.stderr_ln_factor,
        "ln_base_rate": rate.ln_base_rate,
        "ln_enhanced_rate": rate.ln_rate,
        "overflow_flag": rate.overflow,
        "base_rate": crate::cavitation::base_rate(&params),
        "enhanced_rate": rate.rate,
        "mode": c.cavitation.mode,
        "source": report.source,
        "n_samples": report.n_samples,
    });
    write_file(&out.join("enhancement.json"), &to_json(&v))
}
