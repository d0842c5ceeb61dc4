//! Cavitation rate with and without the vortex-field enhancement factor.
//!
//!     cargo run --release --example cavitation_enhancement

use qcav::cavitation::{enhanced_rate, enhancement_instant, enhancement_thermal, CavitationParams, RateMode, ThermalSource};
use qcav::ising::{exact_enumerate, CouplingSet};
use qcav::lattice::{Boundary, FieldPattern, InitialSpins, TriangularLattice};

fn main() -> qcav::Result<()> {
    // barrier of 40 T*: the bare rate is tiny
    let params = CavitationParams::new(1e30, 40.0, 1.0)?;
    println!("ln J0 - dOmega/T* = {:.3}", params.ln_base_rate());

    println!("{:>5} {:>5} {:>10} {:>10} {:>12}", "b", "K", "instant", "thermal", "ln rate");
    for b in [0.0, 0.1, 0.3, 1.0] {
        for k in [0.0, 0.3] {
            let lat = TriangularLattice::build(4, 4, Boundary::Periodic, InitialSpins::AllUp, &FieldPattern::Uniform { b })?;
            let exact = exact_enumerate(&lat, &CouplingSet::new(k, 1.0)?)?;
            let report = enhancement_thermal(
                ThermalSource::Exact { result: &exact, n_sites: lat.n_sites() },
                enhancement_instant(&lat),
            )?;
            let rate = enhanced_rate(&params, &report, RateMode::Thermal);
            println!(
                "{b:>5.1} {k:>5.1} {:>10.4} {:>10.4} {:>12.4}",
                report.ln_factor_instant, report.ln_factor_thermal, rate.ln_rate
            );
        }
    }
    Ok(())
}
