//! Locates the ferromagnetic transition from the crossing of Binder cumulants
//! for two lattice sizes and compares it with the exact critical temperature.
//!
//!     cargo run --release --example binder_crossing
//!
//! Takes a few tens of seconds.

use qcav::analysis::{binder_crossing, triangular_critical_temperature};
use qcav::ising::{sample_chains, CouplingSet, RunConfig};
use qcav::lattice::{Boundary, FieldPattern, InitialSpins, TriangularLattice};

fn main() -> qcav::Result<()> {
    let k = 1.0;
    let temps: Vec<f64> = (0..9).map(|i| 3.45 + 0.05 * i as f64).collect();
    let run = RunConfig {
        seed: 2024,
        n_therm: 5_000,
        n_measure: 40_000,
        measure_every: 1,
    };

    let mut curves = Vec::new();
    for l in [12, 24] {
        let lat = TriangularLattice::build(l, l, Boundary::Periodic, InitialSpins::AllUp, &FieldPattern::zero())?;
        let mut u = Vec::new();
        for &t in &temps {
            let (_, s) = sample_chains(&lat, &CouplingSet::new(k, t)?, &run, 4)?;
            u.push(s.binder_u.unwrap_or(f64::NAN));
        }
        curves.push(u);
    }

    println!("{:>6} {:>8} {:>8}", "T", "U(12)", "U(24)");
    for (i, t) in temps.iter().enumerate() {
        println!("{t:>6.2} {:>8.4} {:>8.4}", curves[0][i], curves[1][i]);
    }
    let tc = binder_crossing(&temps, &curves[0], &curves[1])?;
    let exact = triangular_critical_temperature(k);
    println!("crossing T = {tc:.4}, exact 4K/ln 3 = {exact:.4} ({:+.2}%)", 100.0 * (tc - exact) / exact);
    Ok(())
}
