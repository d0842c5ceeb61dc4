//! Closed-form superfluid and Abrikosov vortex formulas.
//!
//! Quantized circulation and flux, the tangential velocity and vorticity of
//! a superfluid vortex, the Abrikosov core-field estimate, the cyclotron
//! field and frequency at the core cut-off, and the constants that match the
//! two vortex lattices (spin scale η, charge-area products ρ and δ, and the
//! Ginzburg–Landau parameter k = exp(δ/ρ) they demand).
//!
//! All functions are pure and take their constants from [`PhysicalConstants`].

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};

/// Cyclotron field at the cut-off quoted in the literature model, Wb/m².
pub const QUOTED_CYCLOTRON_FIELD: f64 = 0.3e5;

/// Cyclotron frequency at the cut-off quoted in the literature model, Hz.
pub const QUOTED_CYCLOTRON_FREQUENCY: f64 = 3.0e8;

/// Relative tolerance under which a quoted value counts as reproduced.
pub const QUOTE_TOLERANCE: f64 = 0.15;

/// Beyond this exponent `exp(gamma)` is not representable as an `f64`.
pub const EXP_OVERFLOW_GAMMA: f64 = 700.0;

fn require_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be positive and finite, got {v}")))
    }
}

/// A particle circulating around a superfluid vortex line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuperfluidSpec {
    /// Particle mass, kg.
    pub m_s: f64,
    /// Core cut-off radius, m.
    pub r0: f64,
    /// Effective particle charge, C.
    pub q_s: f64,
}

impl SuperfluidSpec {
    pub fn new(m_s: f64, r0: f64, q_s: f64) -> Result<Self> {
        require_positive("m_s", m_s)?;
        require_positive("r0", r0)?;
        require_positive("q_s", q_s)?;
        Ok(SuperfluidSpec { m_s, r0, q_s })
    }

    /// ³He atom at r0 = 1e-10 m carrying charge 2e.
    ///
    /// A charge of 2e reproduces the quoted 0.3e5 Wb/m² cyclotron field
    /// within 10%; a charge of e misses it by more than a factor of two.
    pub fn helium3(c: &PhysicalConstants) -> Self {
        SuperfluidSpec {
            m_s: c.m_he3,
            r0: 1e-10,
            q_s: 2.0 * c.e_charge,
        }
    }
}

/// Type-II superconductor hosting the Abrikosov lattice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuperconductorSpec {
    /// Cooper-pair charge, C.
    pub e_c: f64,
    /// London penetration depth, m.
    pub lambda: f64,
    /// Coherence length, m.
    pub xi: f64,
    /// Ginzburg–Landau parameter λ/ξ.
    pub k: f64,
}

impl SuperconductorSpec {
    pub fn new(e_c: f64, lambda: f64, xi: f64) -> Result<Self> {
        require_positive("e_c", e_c)?;
        require_positive("lambda", lambda)?;
        require_positive("xi", xi)?;
        let k = lambda / xi;
        if k <= std::f64::consts::FRAC_1_SQRT_2 {
            return Err(Error::domain(format!(
                "type-II condition k > 1/sqrt(2) violated: k = lambda/xi = {k}"
            )));
        }
        Ok(SuperconductorSpec { e_c, lambda, xi, k })
    }

    /// Builds the spec from λ and k, setting ξ = λ/k.
    pub fn from_lambda_k(e_c: f64, lambda: f64, k: f64) -> Result<Self> {
        require_positive("k", k)?;
        let mut sc = Self::new(e_c, lambda, lambda / k)?;
        // keep the caller's k bit-exact rather than λ/(λ/k)
        sc.k = k;
        Ok(sc)
    }
}

/// Velocity and vorticity of the superfluid at distance `r` from the core.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VortexProfile {
    pub r: f64,
    pub v: f64,
    pub w: f64,
}

/// Circulation quantum 2πħn/m_s, m²/s.
pub fn circulation_quantum(c: &PhysicalConstants, n: i64, m_s: f64) -> Result<f64> {
    require_positive("mass", m_s)?;
    Ok(c.planck() * n as f64 / m_s)
}

/// Tangential velocity ħ/(m_s r) of a particle carrying one quantum of angular momentum.
pub fn superfluid_velocity(c: &PhysicalConstants, r: f64, m_s: f64) -> Result<f64> {
    require_positive("r", r)?;
    require_positive("mass", m_s)?;
    Ok(c.hbar / (m_s * r))
}

/// Vorticity 2ħ/(m_s r²).
pub fn vorticity(c: &PhysicalConstants, r: f64, m_s: f64) -> Result<f64> {
    require_positive("r", r)?;
    require_positive("mass", m_s)?;
    Ok(2.0 * c.hbar / (m_s * r * r))
}

pub fn vortex_profile(c: &PhysicalConstants, r: f64, m_s: f64) -> Result<VortexProfile> {
    Ok(VortexProfile {
        r,
        v: superfluid_velocity(c, r, m_s)?,
        w: vorticity(c, r, m_s)?,
    })
}

/// Magnetic flux quantum 2πħn/e_c, Wb.
pub fn flux_quantum(c: &PhysicalConstants, n: i64, e_c: f64) -> Result<f64> {
    require_positive("charge", e_c)?;
    Ok(c.planck() * n as f64 / e_c)
}

/// Abrikosov core field (ħ/(e_c λ²))·ln k, T.
///
/// Only defined for k > 1, where the logarithm is positive.
pub fn abrikosov_core_field(c: &PhysicalConstants, sc: &SuperconductorSpec) -> Result<f64> {
    if !(sc.k > 1.0) {
        return Err(Error::domain(format!(
            "Abrikosov core field needs Ginzburg-Landau parameter k > 1, got k = {}",
            sc.k
        )));
    }
    require_positive("e_c", sc.e_c)?;
    require_positive("lambda", sc.lambda)?;
    Ok(c.hbar / (sc.e_c * sc.lambda * sc.lambda) * sc.k.ln())
}

/// Field ħ/(r0² q_s) at which the magnetic force balances the centripetal
/// force at the cut-off, T.
pub fn cyclotron_field(c: &PhysicalConstants, sf: &SuperfluidSpec) -> f64 {
    c.hbar / (sf.r0 * sf.r0 * sf.q_s)
}

/// Standard cyclotron frequency q_s B/(2π m_s), Hz.
pub fn cyclotron_frequency(b: f64, sf: &SuperfluidSpec) -> Result<f64> {
    require_positive("field B", b)?;
    Ok(sf.q_s * b / (2.0 * PI * sf.m_s))
}

/// Spin scale η = r0² m_s / 2, so that η·w(r0) = ħ.
pub fn eta_coupling(sf: &SuperfluidSpec) -> f64 {
    sf.r0 * sf.r0 * sf.m_s / 2.0
}

/// Result of matching the Abrikosov core field to the cyclotron field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GlMatch {
    /// γ = (e_c λ²)/(q_s r0²).
    pub gamma: f64,
    /// ln k_required; always equal to γ.
    pub ln_k_required: f64,
    /// exp(γ), or `None` when γ exceeds [`EXP_OVERFLOW_GAMMA`].
    pub k_required: Option<f64>,
}

impl GlMatch {
    pub fn overflow(&self) -> bool {
        self.k_required.is_none()
    }
}

/// Ginzburg–Landau parameter k = exp(γ) required for the two core fields to match.
pub fn gl_parameter_match(sf: &SuperfluidSpec, sc_charge: f64, lambda: f64) -> Result<GlMatch> {
    require_positive("superconductor charge", sc_charge)?;
    require_positive("lambda", lambda)?;
    let delta = sc_charge * lambda * lambda;
    let rho = sf.q_s * sf.r0 * sf.r0;
    let gamma = delta / rho;
    Ok(GlMatch {
        gamma,
        ln_k_required: gamma,
        k_required: (gamma <= EXP_OVERFLOW_GAMMA).then(|| gamma.exp()),
    })
}

/// Penetration depth λ = sqrt(ln k · q_s r0² / e_c) at which a superconductor
/// with parameter `k` satisfies the matching condition.
pub fn gl_inverse_match(k: f64, sf: &SuperfluidSpec, sc_charge: f64) -> Result<f64> {
    if !(k > 1.0) || !k.is_finite() {
        return Err(Error::domain(format!("inverse match needs k > 1, got {k}")));
    }
    require_positive("superconductor charge", sc_charge)?;
    Ok((k.ln() * sf.q_s * sf.r0 * sf.r0 / sc_charge).sqrt())
}

/// Every derived quantity of the vortex-matching construction in one record.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingDerivation {
    /// Spin-vorticity coupling η, kg·m².
    pub eta: f64,
    /// q_s r0², C·m².
    pub rho: f64,
    /// e_c λ², C·m².
    pub delta: f64,
    /// δ/ρ.
    pub gamma: f64,
    /// exp(γ); `None` on overflow.
    pub k_required: Option<f64>,
    pub ln_k_required: f64,
    /// Cyclotron field at the cut-off, T.
    pub b_cycl: f64,
    /// Cyclotron frequency at the cut-off, Hz.
    pub f_c: f64,
    /// Abrikosov core field, T.
    pub b0_abrikosov: f64,
}

impl CouplingDerivation {
    pub fn derive(c: &PhysicalConstants, sf: &SuperfluidSpec, sc: &SuperconductorSpec) -> Result<Self> {
        let b_cycl = cyclotron_field(c, sf);
        let m = gl_parameter_match(sf, sc.e_c, sc.lambda)?;
        Ok(CouplingDerivation {
            eta: eta_coupling(sf),
            rho: sf.q_s * sf.r0 * sf.r0,
            delta: sc.e_c * sc.lambda * sc.lambda,
            gamma: m.gamma,
            k_required: m.k_required,
            ln_k_required: m.ln_k_required,
            b_cycl,
            f_c: cyclotron_frequency(b_cycl, sf)?,
            b0_abrikosov: abrikosov_core_field(c, sc)?,
        })
    }
}

/// Comparison of a computed quantity against a literature quote.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub quantity: String,
    pub computed: f64,
    pub quoted: f64,
    /// computed / quoted
    pub ratio: f64,
    pub relative_error: f64,
    /// Whether |computed − quoted| ≤ [`QUOTE_TOLERANCE`]·quoted.
    pub reproduced: bool,
}

impl Discrepancy {
    pub fn new(quantity: &str, computed: f64, quoted: f64) -> Self {
        let relative_error = (computed - quoted).abs() / quoted;
        Discrepancy {
            quantity: quantity.to_string(),
            computed,
            quoted,
            ratio: computed / quoted,
            relative_error,
            reproduced: relative_error <= QUOTE_TOLERANCE,
        }
    }
}

/// Cyclotron field and frequency checked against the quoted 0.3e5 Wb/m² and 3e8 Hz.
pub fn discrepancy_ledger(d: &CouplingDerivation) -> Vec<Discrepancy> {
    vec![
        Discrepancy::new("B_cycl", d.b_cycl, QUOTED_CYCLOTRON_FIELD),
        Discrepancy::new("f_c", d.f_c, QUOTED_CYCLOTRON_FREQUENCY),
    ]
}
