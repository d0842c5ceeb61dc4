//! Single-flip Metropolis sampling and blocked summaries.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{binder_cumulant, delta_energy_at, energy, CouplingSet};
use crate::error::{Error, Result};
use crate::lattice::TriangularLattice;
use crate::rng::{chain_rng, SimRng};
use crate::stats::{block_ranges, blocked_log_mean_exp, blocked_mean};

/// Number of jackknife blocks a measurement series is split into (spread over chains).
pub const DEFAULT_BLOCKS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub n_therm: u64,
    pub n_measure: u64,
    pub measure_every: u64,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_measure < 1 {
            return Err(Error::config("run.n_measure must be at least 1"));
        }
        if self.measure_every < 1 {
            return Err(Error::config("run.measure_every must be at least 1"));
        }
        Ok(())
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 1,
            n_therm: 1000,
            n_measure: 10_000,
            measure_every: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObservableRecord {
    pub sweep: u64,
    #[serde(rename = "E_red")]
    pub e_red: f64,
    #[serde(rename = "M")]
    pub m: i64,
    pub field_term: f64,
}

/// One Metropolis sweep over the sites in row-major order.
///
/// Each site proposes a new spin value drawn uniformly from {−1, +1} and the
/// proposal is accepted with probability min(1, exp(−ΔE/T)). Half of the
/// proposals keep the current value (ΔE = 0, accepted); these null moves make
/// the chain aperiodic when every flip costs nothing (K = 0, b ≡ 0), where a
/// pure flip proposal would change the parity of M on every step.
///
/// Returns the number of accepted proposals, null moves included.
pub fn metropolis_sweep(lattice: &mut TriangularLattice, k: f64, t_red: f64, rng: &mut SimRng) -> usize {
    let beta = 1.0 / t_red;
    let mut accepted = 0;
    for idx in 0..lattice.n_sites() {
        if rng.random::<bool>() {
            accepted += 1;
            continue;
        }
        let de = delta_energy_at(lattice, k, idx);
        if de <= 0.0 || rng.random::<f64>() < (-de * beta).exp() {
            lattice.flip(idx);
            accepted += 1;
        }
    }
    accepted
}

fn measure(lattice: &TriangularLattice, k: f64, sweep: u64) -> ObservableRecord {
    ObservableRecord {
        sweep,
        e_red: energy(lattice, k),
        m: lattice.magnetization(),
        field_term: lattice.field_term(),
    }
}

#[derive(Debug, Clone)]
pub struct ChainOutput {
    pub chain: u64,
    pub records: Vec<ObservableRecord>,
    pub accepted: u64,
    pub proposed: u64,
    pub final_lattice: TriangularLattice,
}

/// Runs chain `chain` of a run: thermalize, then record every `measure_every` sweeps.
pub fn run_chain(start: &TriangularLattice, c: &CouplingSet, run: &RunConfig, chain: u64) -> Result<ChainOutput> {
    run.validate()?;
    CouplingSet::new(c.k, c.t_red)?;
    let mut lattice = start.clone();
    let mut rng = chain_rng(run.seed, chain);
    let mut accepted = 0u64;
    let mut sweeps = 0u64;
    for _ in 0..run.n_therm {
        accepted += metropolis_sweep(&mut lattice, c.k, c.t_red, &mut rng) as u64;
        sweeps += 1;
    }
    let mut records = Vec::with_capacity(run.n_measure as usize);
    for _ in 0..run.n_measure {
        for _ in 0..run.measure_every {
            accepted += metropolis_sweep(&mut lattice, c.k, c.t_red, &mut rng) as u64;
            sweeps += 1;
        }
        records.push(measure(&lattice, c.k, sweeps));
    }
    Ok(ChainOutput {
        chain,
        records,
        accepted,
        proposed: sweeps * lattice.n_sites() as u64,
        final_lattice: lattice,
    })
}

/// Means and jackknife errors over the measurement stream.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSummary {
    #[serde(rename = "mean_E")]
    pub mean_e: f64,
    #[serde(rename = "stderr_E")]
    pub stderr_e: Option<f64>,
    #[serde(rename = "mean_absM")]
    pub mean_abs_m: f64,
    #[serde(rename = "stderr_absM")]
    pub stderr_abs_m: Option<f64>,
    #[serde(rename = "mean_M2")]
    pub mean_m2: f64,
    #[serde(rename = "stderr_M2")]
    pub stderr_m2: Option<f64>,
    #[serde(rename = "mean_M4")]
    pub mean_m4: f64,
    #[serde(rename = "binder_U")]
    pub binder_u: Option<f64>,
    pub mean_field_term: f64,
    pub stderr_field_term: Option<f64>,
    /// ln of the sample mean of exp(Σ b_i σ_i).
    pub ln_enhancement_mean: f64,
    pub stderr_ln_enhancement: Option<f64>,
    pub acceptance_rate: f64,
    pub n_samples: u64,
    pub seed: u64,
}

impl SampleSummary {
    /// Pools the chains; blocks never straddle a chain boundary.
    pub fn from_chains(chains: &[ChainOutput], seed: u64) -> Result<Self> {
        let n: usize = chains.iter().map(|c| c.records.len()).sum();
        if n == 0 {
            return Err(Error::domain("cannot summarize an empty sample set"));
        }
        let per_chain = DEFAULT_BLOCKS.div_ceil(chains.len()).max(2);
        let mut blocks = Vec::new();
        let mut offset = 0;
        for c in chains {
            for r in block_ranges(c.records.len(), per_chain) {
                if !r.is_empty() {
                    blocks.push(r.start + offset..r.end + offset);
                }
            }
            offset += c.records.len();
        }
        let recs = chains.iter().flat_map(|c| c.records.iter());
        let e: Vec<f64> = recs.clone().map(|r| r.e_red).collect();
        let abs_m: Vec<f64> = recs.clone().map(|r| r.m.abs() as f64).collect();
        let m2: Vec<f64> = recs.clone().map(|r| (r.m * r.m) as f64).collect();
        let m4: Vec<f64> = m2.iter().map(|x| x * x).collect();
        let f: Vec<f64> = recs.map(|r| r.field_term).collect();

        let (mean_e, stderr_e) = blocked_mean(&e, &blocks);
        let (mean_abs_m, stderr_abs_m) = blocked_mean(&abs_m, &blocks);
        let (mean_m2, stderr_m2) = blocked_mean(&m2, &blocks);
        let (mean_m4, _) = blocked_mean(&m4, &blocks);
        let (mean_field_term, stderr_field_term) = blocked_mean(&f, &blocks);
        let (ln_enhancement_mean, stderr_ln_enhancement) = blocked_log_mean_exp(&f, &blocks);
        let accepted: u64 = chains.iter().map(|c| c.accepted).sum();
        let proposed: u64 = chains.iter().map(|c| c.proposed).sum();
        Ok(SampleSummary {
            mean_e,
            stderr_e,
            mean_abs_m,
            stderr_abs_m,
            mean_m2,
            stderr_m2,
            mean_m4,
            binder_u: binder_cumulant(mean_m2, mean_m4).ok(),
            mean_field_term,
            stderr_field_term,
            ln_enhancement_mean,
            stderr_ln_enhancement,
            acceptance_rate: if proposed == 0 { 0.0 } else { accepted as f64 / proposed as f64 },
            n_samples: n as u64,
            seed,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}

#[derive(Debug, Clone)]
pub struct SampleResult {
    pub records: Vec<ObservableRecord>,
    pub summary: SampleSummary,
    pub final_lattice: TriangularLattice,
}

/// Samples a single chain (chain index 0).
pub fn sample(start: &TriangularLattice, c: &CouplingSet, run: &RunConfig) -> Result<SampleResult> {
    let out = run_chain(start, c, run, 0)?;
    let summary = SampleSummary::from_chains(std::slice::from_ref(&out), run.seed)?;
    Ok(SampleResult {
        records: out.records,
        summary,
        final_lattice: out.final_lattice,
    })
}

/// Runs `n_chains` independent chains in parallel and pools them.
///
/// Chain `i` draws from stream `i` of the run seed; the output is ordered by
/// chain index regardless of completion order.
pub fn sample_chains(
    start: &TriangularLattice,
    c: &CouplingSet,
    run: &RunConfig,
    n_chains: u64,
) -> Result<(Vec<ChainOutput>, SampleSummary)> {
    if n_chains < 1 {
        return Err(Error::config("chain count must be at least 1"));
    }
    let chains = (0..n_chains)
        .into_par_iter()
        .map(|i| run_chain(start, c, run, i))
        .collect::<Result<Vec<_>>>()?;
    let summary = SampleSummary::from_chains(&chains, run.seed)?;
    Ok((chains, summary))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{Boundary, FieldPattern, InitialSpins};

    fn lat3(initial: InitialSpins, b: f64) -> TriangularLattice {
        TriangularLattice::build(3, 3, Boundary::Periodic, initial, &FieldPattern::Uniform { b }).unwrap()
    }

    #[test]
    fn hot_limit_accepts_everything() {
        let mut l = lat3(InitialSpins::Random { seed: 5 }, 0.0);
        let mut rng = chain_rng(1, 0);
        let mut acc = 0;
        for _ in 0..100 {
            acc += metropolis_sweep(&mut l, 0.0, 1e9, &mut rng);
        }
        assert!(acc as f64 / 900.0 >= 0.99);
    }

    #[test]
    fn zero_energy_moves_always_accepted() {
        // K = 0, b = 0: every proposal has ΔE = 0
        let mut l = lat3(InitialSpins::Random { seed: 4 }, 0.0);
        let mut rng = chain_rng(9, 0);
        for _ in 0..20 {
            assert_eq!(metropolis_sweep(&mut l, 0.0, 1.0, &mut rng), 9);
        }
    }

    #[test]
    fn downhill_moves_always_accepted() {
        // all-down against a strong up field at T -> 0: uphill flips are
        // never taken, downhill ones always
        let mut l = lat3(InitialSpins::AllDown, 5.0);
        let mut rng = chain_rng(9, 0);
        for _ in 0..60 {
            let before = l.spins().to_vec();
            metropolis_sweep(&mut l, 0.0, 1e-6, &mut rng);
            for (a, b) in before.iter().zip(l.spins()) {
                assert!(b >= a);
            }
        }
        assert_eq!(l.spins(), &[1; 9]);
    }

    #[test]
    fn free_spins_are_ergodic() {
        // 16 sites: a pure flip proposal would only ever show even numbers of down spins
        let start = TriangularLattice::build(4, 4, Boundary::Periodic, InitialSpins::AllUp, &FieldPattern::zero()).unwrap();
        let run = RunConfig {
            seed: 21,
            n_therm: 100,
            n_measure: 20_000,
            measure_every: 1,
        };
        let s = sample(&start, &CouplingSet::default(), &run).unwrap().summary;
        // Σ_d C(16, d)·|16 − 2d| / 2^16
        let want = 205_920.0 / 65_536.0;
        let se = s.stderr_abs_m.unwrap();
        assert!((s.mean_abs_m - want).abs() < 3.0 * se, "{} +- {se}", s.mean_abs_m);
    }

    #[test]
    fn same_seed_same_trajectory() {
        let start = lat3(InitialSpins::Random { seed: 2 }, 0.1);
        let mut a = start.clone();
        let mut b = start.clone();
        let mut ra = chain_rng(77, 0);
        let mut rb = chain_rng(77, 0);
        for _ in 0..50 {
            metropolis_sweep(&mut a, 0.4, 1.0, &mut ra);
            metropolis_sweep(&mut b, 0.4, 1.0, &mut rb);
            assert_eq!(a.spins(), b.spins());
        }
    }

    #[test]
    fn single_measurement_summary() {
        let run = RunConfig {
            seed: 3,
            n_therm: 5,
            n_measure: 1,
            measure_every: 1,
        };
        let r = sample(&lat3(InitialSpins::AllUp, 0.2), &CouplingSet::new(0.3, 1.0).unwrap(), &run).unwrap();
        assert_eq!(r.records.len(), 1);
        let rec = r.records[0];
        assert_eq!(r.summary.mean_e, rec.e_red);
        assert_eq!(r.summary.mean_abs_m, rec.m.abs() as f64);
        assert_eq!(r.summary.ln_enhancement_mean, rec.field_term);
        assert_eq!(r.summary.stderr_e, None);
        assert_eq!(r.summary.stderr_abs_m, None);
        assert_eq!(r.summary.stderr_ln_enhancement, None);
    }

    #[test]
    fn record_sweep_indices() {
        let run = RunConfig {
            seed: 3,
            n_therm: 10,
            n_measure: 4,
            measure_every: 3,
        };
        let r = sample(&lat3(InitialSpins::AllUp, 0.0), &CouplingSet::default(), &run).unwrap();
        let sweeps: Vec<u64> = r.records.iter().map(|x| x.sweep).collect();
        assert_eq!(sweeps, vec![13, 16, 19, 22]);
        for rec in &r.records {
            assert!(rec.m.unsigned_abs() <= 9);
            assert_eq!(rec.m.rem_euclid(2), 1);
        }
    }

    #[test]
    fn invalid_run_config() {
        let bad = RunConfig {
            n_measure: 0,
            ..RunConfig::default()
        };
        assert!(sample(&lat3(InitialSpins::AllUp, 0.0), &CouplingSet::default(), &bad).is_err());
        let bad = RunConfig {
            measure_every: 0,
            ..RunConfig::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn chains_are_order_stable() {
        let run = RunConfig {
            seed: 11,
            n_therm: 10,
            n_measure: 50,
            measure_every: 1,
        };
        let start = lat3(InitialSpins::Random { seed: 1 }, 0.3);
        let c = CouplingSet::new(0.2, 1.0).unwrap();
        let (a, sa) = sample_chains(&start, &c, &run, 4).unwrap();
        let (b, sb) = sample_chains(&start, &c, &run, 4).unwrap();
        assert_eq!(sa, sb);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.records, y.records);
        }
        assert_ne!(a[0].records, a[1].records);
        let single = sample(&start, &c, &run).unwrap();
        assert_eq!(single.records, a[0].records);
    }
}
