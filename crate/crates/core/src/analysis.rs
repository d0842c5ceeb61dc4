//! Finite-size analysis of Binder-cumulant curves.

use crate::error::{Error, Result};

/// Critical temperature of the ferromagnetic triangular Ising model at K = 1: 4/ln 3.
pub fn triangular_critical_temperature(k: f64) -> f64 {
    4.0 * k / 3f64.ln()
}

/// Temperature where the Binder curves of two lattice sizes cross.
///
/// Fits a straight line to U_large(T) − U_small(T) by least squares and
/// returns its root. The fit absorbs statistical noise in individual points,
/// so the grid should bracket the crossing narrowly.
pub fn binder_crossing(temps: &[f64], u_small: &[f64], u_large: &[f64]) -> Result<f64> {
    if temps.len() != u_small.len() || temps.len() != u_large.len() {
        return Err(Error::domain("Binder curves must share one temperature grid"));
    }
    if temps.len() < 2 {
        return Err(Error::domain("Binder crossing needs at least two temperatures"));
    }
    let n = temps.len() as f64;
    let diff: Vec<f64> = u_large.iter().zip(u_small).map(|(a, b)| a - b).collect();
    let tm = temps.iter().sum::<f64>() / n;
    let dm = diff.iter().sum::<f64>() / n;
    let sxy: f64 = temps.iter().zip(&diff).map(|(t, d)| (t - tm) * (d - dm)).sum();
    let sxx: f64 = temps.iter().map(|t| (t - tm).powi(2)).sum();
    if sxx == 0.0 || sxy == 0.0 {
        return Err(Error::domain("Binder difference has no slope; curves do not cross"));
    }
    let slope = sxy / sxx;
    Ok(tm - dm / slope)
}
