//! Brute-force partition function over all 2^N spin configurations.

use serde::{Deserialize, Serialize};

use super::{binder_cumulant, CouplingSet};
use crate::error::{Error, Result};
use crate::lattice::TriangularLattice;

/// Largest lattice (in sites) the enumerator accepts.
pub const EXACT_MAX_SITES: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactResult {
    #[serde(rename = "logZ")]
    pub log_z: f64,
    #[serde(rename = "mean_E")]
    pub mean_e: f64,
    #[serde(rename = "mean_M")]
    pub mean_m: f64,
    #[serde(rename = "mean_absM")]
    pub mean_abs_m: f64,
    #[serde(rename = "mean_M2")]
    pub mean_m2: f64,
    #[serde(rename = "mean_M4")]
    pub mean_m4: f64,
    /// ⟨Σ b_i σ_i⟩
    pub mean_field_term: f64,
    /// ln⟨exp(Σ b_i σ_i)⟩, accumulated in the log domain.
    pub ln_mean_exp_field: f64,
    pub mean_exp_field: f64,
    #[serde(rename = "binder_U")]
    pub binder_u: Option<f64>,
}

/// Weighted sums relative to a running maximum log-weight.
struct Accum {
    max: f64,
    z: f64,
    e: f64,
    m: f64,
    abs_m: f64,
    m2: f64,
    m4: f64,
    f: f64,
}

impl Accum {
    fn add(&mut self, lw: f64, e: f64, m: f64, f: f64) {
        if lw > self.max {
            let s = (self.max - lw).exp();
            self.z *= s;
            self.e *= s;
            self.m *= s;
            self.abs_m *= s;
            self.m2 *= s;
            self.m4 *= s;
            self.f *= s;
            self.max = lw;
        }
        let w = (lw - self.max).exp();
        let m2 = m * m;
        self.z += w;
        self.e += w * e;
        self.m += w * m;
        self.abs_m += w * m.abs();
        self.m2 += w * m2;
        self.m4 += w * m2 * m2;
        self.f += w * f;
    }
}

/// Running ln Σ exp(x).
struct LogSum {
    max: f64,
    sum: f64,
}

impl LogSum {
    fn add(&mut self, x: f64) {
        if x > self.max {
            self.sum *= (self.max - x).exp();
            self.max = x;
        }
        self.sum += (x - self.max).exp();
    }

    fn value(&self) -> f64 {
        self.max + self.sum.ln()
    }
}

/// Exact Boltzmann averages for the lattice geometry and fields (its current
/// spins are ignored).
pub fn exact_enumerate(lattice: &TriangularLattice, c: &CouplingSet) -> Result<ExactResult> {
    let n = lattice.n_sites();
    if n > EXACT_MAX_SITES {
        return Err(Error::Size {
            sites: n,
            max: EXACT_MAX_SITES,
        });
    }
    CouplingSet::new(c.k, c.t_red)?;
    let beta = 1.0 / c.t_red;
    let bonds = lattice.bond_list();
    let nb = bonds.len() as i64;
    let fields = lattice.fields();

    let mut acc = Accum {
        max: f64::NEG_INFINITY,
        z: 0.0,
        e: 0.0,
        m: 0.0,
        abs_m: 0.0,
        m2: 0.0,
        m4: 0.0,
        f: 0.0,
    };
    let mut tilted = LogSum {
        max: f64::NEG_INFINITY,
        sum: 0.0,
    };

    // bit k set <=> spin k is +1
    for state in 0u32..(1u32 << n) {
        let disagree = bonds
            .iter()
            .filter(|&&(a, b)| ((state >> a) ^ (state >> b)) & 1 == 1)
            .count() as i64;
        let bond_sum = nb - 2 * disagree;
        let f: f64 = fields
            .iter()
            .enumerate()
            .map(|(k, &b)| if (state >> k) & 1 == 1 { b } else { -b })
            .sum();
        let m = (2 * state.count_ones() as i64 - n as i64) as f64;
        let e = -c.k * bond_sum as f64 - f;
        let lw = -beta * e;
        acc.add(lw, e, m, f);
        tilted.add(lw + f);
    }

    let log_z = acc.max + acc.z.ln();
    let mean_m2 = acc.m2 / acc.z;
    let mean_m4 = acc.m4 / acc.z;
    let ln_mean_exp_field = tilted.value() - log_z;
    Ok(ExactResult {
        log_z,
        mean_e: acc.e / acc.z,
        mean_m: acc.m / acc.z,
        mean_abs_m: acc.abs_m / acc.z,
        mean_m2,
        mean_m4,
        mean_field_term: acc.f / acc.z,
        ln_mean_exp_field,
        mean_exp_field: ln_mean_exp_field.exp(),
        binder_u: binder_cumulant(mean_m2, mean_m4).ok(),
    })
}
