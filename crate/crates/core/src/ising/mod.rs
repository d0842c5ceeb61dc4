//! Reduced-unit Ising energy on the triangular vortex lattice.
//!
//! E = −K Σ_bonds σ_a σ_b − Σ_i b_i σ_i, sampled with Boltzmann weight
//! exp(−E/T_red). The physical prefactors are mapped onto `K` and `b_i` by
//! [`reduce_couplings`].

mod exact;
mod mc;

pub use exact::{exact_enumerate, ExactResult, EXACT_MAX_SITES};
pub use mc::{
    metropolis_sweep, run_chain, sample, sample_chains, ChainOutput, ObservableRecord, RunConfig, SampleResult,
    SampleSummary, DEFAULT_BLOCKS,
};

use serde::{Deserialize, Serialize};

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::lattice::{Site, TriangularLattice};
use crate::vortex::{eta_coupling, vorticity, SuperfluidSpec};

/// Dimensionless spin-spin coupling and temperature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingSet {
    /// Ferromagnetic for `k > 0`.
    pub k: f64,
    pub t_red: f64,
}

impl CouplingSet {
    pub fn new(k: f64, t_red: f64) -> Result<Self> {
        if !k.is_finite() {
            return Err(Error::config(format!("coupling K must be finite, got {k}")));
        }
        if !(t_red.is_finite() && t_red > 0.0) {
            return Err(Error::config(format!("reduced temperature must be positive, got {t_red}")));
        }
        Ok(CouplingSet { k, t_red })
    }
}

impl Default for CouplingSet {
    fn default() -> Self {
        CouplingSet { k: 0.0, t_red: 1.0 }
    }
}

pub fn energy(lattice: &TriangularLattice, k: f64) -> f64 {
    -k * lattice.bond_sum() as f64 - lattice.field_term()
}

/// Energy change from flipping the spin at `index`: 2σ(K Σ_n σ_n + b).
#[inline]
pub fn delta_energy_at(lattice: &TriangularLattice, k: f64, index: usize) -> f64 {
    let s = lattice.spin(index) as f64;
    let nsum: i32 = lattice
        .neighbor_indices(index)
        .iter()
        .map(|&n| lattice.spin(n) as i32)
        .sum();
    2.0 * s * (k * nsum as f64 + lattice.fields()[index])
}

pub fn delta_energy(lattice: &TriangularLattice, k: f64, site: Site) -> Result<f64> {
    let idx = lattice.index(site)?;
    Ok(delta_energy_at(lattice, k, idx))
}

/// U = 1 − ⟨M⁴⟩ / (3⟨M²⟩²).
pub fn binder_cumulant(mean_m2: f64, mean_m4: f64) -> Result<f64> {
    if !(mean_m2 > 0.0) {
        return Err(Error::domain(format!("Binder cumulant needs <M^2> > 0, got {mean_m2}")));
    }
    Ok(1.0 - mean_m4 / (3.0 * mean_m2 * mean_m2))
}

/// Which physical energy scale the field term carries.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum FieldConvention {
    /// b = ρ η w₀ h / (k_B T*) · u. The product ρηhw is not an energy, so a
    /// unit-normalization constant `u` must be supplied.
    ChargeArea { unit: Option<f64> },
    /// b = ħ ω_c / (k_B T*), with ω_c = q_s h / m_s.
    #[default]
    CyclotronEnergy,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReducedCouplings {
    pub couplings: CouplingSet,
    pub fields: Vec<f64>,
}

/// Maps the physical coupling `j_phys`, per-site fields `h` (T) and crossover
/// temperature `t_star` (K) onto reduced `K` and `b_i` at `T_red = 1`.
///
/// Spins are fixed at the cut-off vorticity w₀, so S = η w₀ = ħ and
/// K = J η² w₀² / (k_B T*).
pub fn reduce_couplings(
    c: &PhysicalConstants,
    j_phys: f64,
    sf: &SuperfluidSpec,
    h: &[f64],
    t_star: f64,
    convention: FieldConvention,
) -> Result<ReducedCouplings> {
    if !(t_star.is_finite() && t_star > 0.0) {
        return Err(Error::domain(format!("T* must be positive, got {t_star}")));
    }
    let thermal = c.k_b * t_star;
    let spin = eta_coupling(sf) * vorticity(c, sf.r0, sf.m_s)?;
    let k = j_phys * spin * spin / thermal;
    let scale = match convention {
        FieldConvention::ChargeArea { unit } => {
            let u = unit.ok_or_else(|| {
                Error::config("charge-area field convention needs a unit-normalization constant u")
            })?;
            let rho = sf.q_s * sf.r0 * sf.r0;
            rho * spin * u / thermal
        }
        FieldConvention::CyclotronEnergy => c.hbar * sf.q_s / (sf.m_s * thermal),
    };
    Ok(ReducedCouplings {
        couplings: CouplingSet::new(k, 1.0)?,
        fields: h.iter().map(|&hi| scale * hi).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{Boundary, FieldPattern, InitialSpins};

    fn lat(b: f64) -> TriangularLattice {
        TriangularLattice::build(3, 3, Boundary::Periodic, InitialSpins::AllUp, &FieldPattern::Uniform { b })
            .unwrap()
    }

    #[test]
    fn energy_examples() {
        assert_eq!(energy(&lat(0.0), 1.0), -27.0);
        assert_eq!(energy(&lat(0.5), 1.0), -27.0 - 4.5);
        let r = TriangularLattice::build(4, 5, Boundary::Open, InitialSpins::Random { seed: 1 }, &FieldPattern::zero())
            .unwrap();
        assert_eq!(energy(&r, 0.0), 0.0);
    }

    #[test]
    fn delta_energy_examples() {
        let l = lat(0.0);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(delta_energy(&l, 1.0, Site::new(i, j)).unwrap(), 12.0);
            }
        }
        let beta = 0.37;
        assert_eq!(delta_energy(&lat(beta), 0.0, Site::new(1, 2)).unwrap(), 2.0 * beta);
        let mut l = lat(0.2);
        let d1 = delta_energy_at(&l, 0.7, 4);
        l.flip(4);
        let d2 = delta_energy_at(&l, 0.7, 4);
        assert_eq!(d1 + d2, 0.0);
        assert!(delta_energy(&l, 1.0, Site::new(3, 0)).is_err());
    }

    #[test]
    fn binder_examples() {
        // |M| delta-distributed: M4 = M2²
        assert!((binder_cumulant(4.0, 16.0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        // Gaussian: M4 = 3 M2²
        assert!(binder_cumulant(2.0, 12.0).unwrap().abs() < 1e-15);
        assert!(binder_cumulant(0.0, 0.0).is_err());
    }

    #[test]
    fn coupling_set_validation() {
        assert!(CouplingSet::new(1.0, 0.0).is_err());
        assert!(CouplingSet::new(1.0, -1.0).is_err());
        assert!(CouplingSet::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn reduce_couplings_examples() {
        let c = PhysicalConstants::default();
        let sf = SuperfluidSpec::helium3(&c);
        for conv in [FieldConvention::CyclotronEnergy, FieldConvention::ChargeArea { unit: Some(1.0) }] {
            let r = reduce_couplings(&c, 1.0, &sf, &[0.0, 0.0], 0.01, conv).unwrap();
            assert_eq!(r.fields, vec![0.0, 0.0]);
        }
        let b_cycl = crate::vortex::cyclotron_field(&c, &sf);
        let r = reduce_couplings(&c, 0.0, &sf, &[b_cycl], 0.01, FieldConvention::CyclotronEnergy).unwrap();
        let direct = c.hbar * c.hbar / (sf.m_s * sf.r0 * sf.r0 * c.k_b * 0.01);
        assert!(((r.fields[0] - direct) / direct).abs() < 1e-12);
        assert!((r.fields[0] - 1608.36).abs() < 0.01);

        let r2 = reduce_couplings(&c, 0.0, &sf, &[2.0 * b_cycl], 0.02, FieldConvention::CyclotronEnergy).unwrap();
        assert!(((r2.fields[0] - r.fields[0]) / r.fields[0]).abs() < 1e-12);

        let missing = reduce_couplings(&c, 0.0, &sf, &[1.0], 0.01, FieldConvention::ChargeArea { unit: None });
        assert!(matches!(missing, Err(Error::Config(_))));
        assert!(reduce_couplings(&c, 0.0, &sf, &[1.0], 0.0, FieldConvention::CyclotronEnergy).is_err());
    }

    #[test]
    fn reduce_couplings_k_mapping() {
        let c = PhysicalConstants::default();
        let sf = SuperfluidSpec::helium3(&c);
        let j = 1e45;
        let r = reduce_couplings(&c, j, &sf, &[], 0.5, FieldConvention::CyclotronEnergy).unwrap();
        let want = j * c.hbar * c.hbar / (c.k_b * 0.5);
        assert!(((r.couplings.k - want) / want).abs() < 1e-12);
        assert_eq!(r.couplings.t_red, 1.0);
    }
}
