//! Cavitation rate J0·exp(−ΔΩ_max/T*) and its vortex-coupling enhancement.
//!
//! The enhancement factor is exp(Σ b_i σ_i). All arithmetic is done on
//! logarithms; linear rates are reported only when representable.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ising::{ExactResult, SampleSummary};
use crate::lattice::TriangularLattice;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CavitationParams {
    /// Rate prefactor, bubbles/(m³·s).
    pub j0: f64,
    /// Nucleation barrier, same energy units as `t_star`.
    pub delta_omega_max: f64,
    /// Crossover temperature (k_B absorbed).
    pub t_star: f64,
}

impl CavitationParams {
    pub fn new(j0: f64, delta_omega_max: f64, t_star: f64) -> Result<Self> {
        let p = CavitationParams {
            j0,
            delta_omega_max,
            t_star,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.j0.is_finite() && self.j0 >= 0.0) {
            return Err(Error::config(format!("cavitation.j0 must be >= 0, got {}", self.j0)));
        }
        if !(self.delta_omega_max.is_finite() && self.delta_omega_max >= 0.0) {
            return Err(Error::config(format!(
                "cavitation.delta_omega_max must be >= 0, got {}",
                self.delta_omega_max
            )));
        }
        if !(self.t_star.is_finite() && self.t_star > 0.0) {
            return Err(Error::config(format!("cavitation.t_star must be > 0, got {}", self.t_star)));
        }
        Ok(())
    }

    /// ln J0 − ΔΩ_max/T*; `-inf` when J0 = 0.
    pub fn ln_base_rate(&self) -> f64 {
        self.j0.ln() - self.delta_omega_max / self.t_star
    }
}

pub fn base_rate(p: &CavitationParams) -> f64 {
    p.j0 * (-p.delta_omega_max / p.t_star).exp()
}

/// ln of the enhancement factor for the lattice's current configuration: Σ b_i σ_i.
pub fn enhancement_instant(lattice: &TriangularLattice) -> f64 {
    lattice.field_term()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnhancementSource {
    Exact,
    Mc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnhancementReport {
    pub ln_factor_instant: f64,
    pub ln_factor_thermal: f64,
    pub stderr_ln_factor: Option<f64>,
    pub source: EnhancementSource,
    /// Sampled configurations for MC; 2^N for exact.
    pub n_samples: u64,
}

/// Where the thermal average of the enhancement factor comes from.
#[derive(Debug, Clone, Copy)]
pub enum ThermalSource<'a> {
    Exact { result: &'a ExactResult, n_sites: usize },
    Mc(&'a SampleSummary),
}

/// Combines a single-configuration ln factor with a thermal ln⟨exp(Σbσ)⟩.
pub fn enhancement_thermal(source: ThermalSource<'_>, ln_factor_instant: f64) -> Result<EnhancementReport> {
    match source {
        ThermalSource::Exact { result, n_sites } => Ok(EnhancementReport {
            ln_factor_instant,
            ln_factor_thermal: result.ln_mean_exp_field,
            stderr_ln_factor: Some(0.0),
            source: EnhancementSource::Exact,
            n_samples: 1u64 << n_sites,
        }),
        ThermalSource::Mc(s) => {
            if s.n_samples == 0 {
                return Err(Error::domain("enhancement needs at least one sample"));
            }
            Ok(EnhancementReport {
                ln_factor_instant,
                ln_factor_thermal: s.ln_enhancement_mean,
                stderr_ln_factor: s.stderr_ln_enhancement,
                source: EnhancementSource::Mc,
                n_samples: s.n_samples,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RateMode {
    Instant,
    #[default]
    Thermal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnhancedRate {
    pub ln_base_rate: f64,
    pub ln_factor: f64,
    pub ln_rate: f64,
    /// exp(ln_rate), or `None` when it overflows an `f64`.
    pub rate: Option<f64>,
    pub overflow: bool,
}

pub fn enhanced_rate(p: &CavitationParams, report: &EnhancementReport, mode: RateMode) -> EnhancedRate {
    let ln_factor = match mode {
        RateMode::Instant => report.ln_factor_instant,
        RateMode::Thermal => report.ln_factor_thermal,
    };
    enhanced_rate_from_ln(p, ln_factor)
}

pub fn enhanced_rate_from_ln(p: &CavitationParams, ln_factor: f64) -> EnhancedRate {
    let ln_base_rate = p.ln_base_rate();
    let ln_rate = ln_base_rate + ln_factor;
    let overflow = ln_rate > f64::MAX.ln();
    EnhancedRate {
        ln_base_rate,
        ln_factor,
        ln_rate,
        rate: (!overflow).then(|| ln_rate.exp()),
        overflow,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{Boundary, FieldPattern, InitialSpins};
    use proptest::prelude::*;

    #[test]
    fn base_rate_examples() {
        assert_eq!(base_rate(&CavitationParams::new(5.0, 0.0, 1.0).unwrap()), 5.0);
        let r = base_rate(&CavitationParams::new(5.0, 0.3, 0.3).unwrap());
        assert!((r - 5.0 / std::f64::consts::E).abs() < 1e-15);
        let r = base_rate(&CavitationParams::new(1e20, 2.0, 1.0).unwrap());
        assert!((r / 1.3534e19 - 1.0).abs() < 1e-4);
    }

    #[test]
    fn params_validation() {
        assert!(CavitationParams::new(-1.0, 0.0, 1.0).is_err());
        assert!(CavitationParams::new(1.0, -1.0, 1.0).is_err());
        assert!(CavitationParams::new(1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn instant_examples() {
        let zero = TriangularLattice::build(4, 4, Boundary::Periodic, InitialSpins::Random { seed: 1 }, &FieldPattern::zero())
            .unwrap();
        assert_eq!(enhancement_instant(&zero), 0.0);

        let b = 0.25;
        let up = TriangularLattice::build(4, 4, Boundary::Periodic, InitialSpins::AllUp, &FieldPattern::Uniform { b })
            .unwrap();
        assert_eq!(enhancement_instant(&up), 16.0 * b);

        let mut half = up.clone();
        let spins: Vec<i8> = (0..16).map(|k| if k % 2 == 0 { 1 } else { -1 }).collect();
        half.set_spins(&spins).unwrap();
        assert_eq!(enhancement_instant(&half), 0.0);
    }

    #[test]
    fn enhanced_rate_examples() {
        let p = CavitationParams::new(1e20, 2.0, 1.0).unwrap();
        let neutral = enhanced_rate_from_ln(&p, 0.0);
        assert!((neutral.rate.unwrap() / base_rate(&p) - 1.0).abs() < 1e-14);
        let one = enhanced_rate_from_ln(&p, 1.0);
        assert!((one.rate.unwrap() / (std::f64::consts::E * base_rate(&p)) - 1.0).abs() < 1e-14);
        let big = enhanced_rate_from_ln(&p, 800.0);
        assert!(big.overflow);
        assert_eq!(big.rate, None);
        assert_eq!(big.ln_rate, p.ln_base_rate() + 800.0);

        let cancel = CavitationParams::new(3.5e7, 0.7, 0.7).unwrap();
        let r = enhanced_rate_from_ln(&cancel, 1.0);
        assert!((r.rate.unwrap() / 3.5e7 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn empty_mc_source_is_an_error() {
        let s = SampleSummary {
            mean_e: 0.0,
            stderr_e: None,
            mean_abs_m: 0.0,
            stderr_abs_m: None,
            mean_m2: 0.0,
            stderr_m2: None,
            mean_m4: 0.0,
            binder_u: None,
            mean_field_term: 0.0,
            stderr_field_term: None,
            ln_enhancement_mean: 0.0,
            stderr_ln_enhancement: None,
            acceptance_rate: 0.0,
            n_samples: 0,
            seed: 0,
        };
        assert!(enhancement_thermal(ThermalSource::Mc(&s), 0.0).is_err());
    }

    proptest! {
        #[test]
        fn monotonicity(
            j0 in 1e-3f64..1e30,
            dw in 1e-3f64..50.0,
            ts in 1e-2f64..10.0,
            f in -100.0f64..100.0,
            step in 1e-3f64..1.0,
        ) {
            let p = CavitationParams::new(j0, dw, ts).unwrap();
            let base = enhanced_rate_from_ln(&p, f).ln_rate;
            prop_assert!(enhanced_rate_from_ln(&p, f + step).ln_rate > base);
            let hotter = CavitationParams::new(j0, dw, ts * (1.0 + step)).unwrap();
            prop_assert!(enhanced_rate_from_ln(&hotter, f).ln_rate > base);
            let higher = CavitationParams::new(j0, dw * (1.0 + step), ts).unwrap();
            prop_assert!(enhanced_rate_from_ln(&higher, f).ln_rate < base);
        }

        #[test]
        fn instant_factor_ignores_temperature(seed in any::<u64>(), b in -2.0f64..2.0, ts in 1e-3f64..1e3) {
            let lat = TriangularLattice::build(3, 4, Boundary::Periodic, InitialSpins::Random { seed }, &FieldPattern::Uniform { b }).unwrap();
            let f = enhancement_instant(&lat);
            let p = CavitationParams::new(1.0, 1.0, ts).unwrap();
            let r = enhanced_rate_from_ln(&p, f);
            prop_assert_eq!(r.ln_factor, f);
            prop_assert_eq!(enhancement_instant(&lat), lat.spins().iter().map(|&s| b * s as f64).sum::<f64>());
        }

        #[test]
        fn zero_field_is_neutral(j0 in 1e-3f64..1e30, dw in 0.0f64..50.0, ts in 1e-2f64..10.0) {
            let p = CavitationParams::new(j0, dw, ts).unwrap();
            let r = enhanced_rate_from_ln(&p, 0.0);
            prop_assert_eq!(r.ln_rate, p.ln_base_rate());
        }
    }
}
