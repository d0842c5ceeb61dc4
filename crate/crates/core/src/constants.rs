//! Physical constants registry (CODATA 2018 exact/recommended values).
//!
//! Every formula in the crate takes its constants from a [`PhysicalConstants`]
//! value; nothing downstream hard-codes a numeric constant.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Atomic mass constant, kg.
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;

/// Relative atomic mass of a ³He atom.
pub const HE3_ATOMIC_MASS: f64 = 3.016_029_322;

/// Relative atomic mass of a ⁴He atom.
pub const HE4_ATOMIC_MASS: f64 = 4.002_603_254;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Elementary charge, C.
    pub e_charge: f64,
    /// Boltzmann constant, J/K.
    pub k_b: f64,
    /// Mass of a ³He atom, kg.
    pub m_he3: f64,
    /// Mass of a ⁴He atom, kg.
    pub m_he4: f64,
}

impl PhysicalConstants {
    pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
        hbar: 1.054_571_817e-34,
        e_charge: 1.602_176_634e-19,
        k_b: 1.380_649e-23,
        m_he3: HE3_ATOMIC_MASS * ATOMIC_MASS_UNIT,
        m_he4: HE4_ATOMIC_MASS * ATOMIC_MASS_UNIT,
    };

    /// Builds a registry after checking every constant is finite and positive.
    pub fn new(hbar: f64, e_charge: f64, k_b: f64, m_he3: f64, m_he4: f64) -> Result<Self> {
        let c = PhysicalConstants {
            hbar,
            e_charge,
            k_b,
            m_he3,
            m_he4,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let named = [
            ("hbar", self.hbar),
            ("e_charge", self.e_charge),
            ("k_B", self.k_b),
            ("m_he3", self.m_he3),
            ("m_he4", self.m_he4),
        ];
        for (name, v) in named {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain(format!("constant {name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    /// Planck constant h = 2πħ.
    pub fn planck(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.hbar
    }

    /// Cooper-pair charge 2e.
    pub fn cooper_pair_charge(&self) -> f64 {
        2.0 * self.e_charge
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA_2018
    }
}
