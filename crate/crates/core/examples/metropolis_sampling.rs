//! Metropolis sampling checked against exact enumeration on a 3x3 torus.
//!
//!     cargo run --release --example metropolis_sampling

use qcav::ising::{exact_enumerate, sample_chains, CouplingSet, RunConfig};
use qcav::lattice::{Boundary, FieldPattern, InitialSpins, TriangularLattice};

fn main() -> qcav::Result<()> {
    let lat = TriangularLattice::build(3, 3, Boundary::Periodic, InitialSpins::AllUp, &FieldPattern::Uniform { b: 0.2 })?;
    let run = RunConfig {
        seed: 42,
        n_therm: 1_000,
        n_measure: 50_000,
        measure_every: 5,
    };
    for k in [0.0, 0.2, 0.4] {
        let c = CouplingSet::new(k, 1.0)?;
        let exact = exact_enumerate(&lat, &c)?;
        let (_, s) = sample_chains(&lat, &c, &run, 4)?;
        println!("K = {k}  (acceptance {:.3}, {} samples)", s.acceptance_rate, s.n_samples);
        let rows = [
            ("<E>", s.mean_e, s.stderr_e, exact.mean_e),
            ("<|M|>", s.mean_abs_m, s.stderr_abs_m, exact.mean_abs_m),
            ("ln<e^F>", s.ln_enhancement_mean, s.stderr_ln_enhancement, exact.ln_mean_exp_field),
        ];
        for (name, mc, se, want) in rows {
            let se = se.unwrap_or(f64::NAN);
            println!("  {name:<8} mc {mc:>10.5} +- {se:.1e}   exact {want:>10.5}   z = {:+.2}", (mc - want) / se);
        }
    }
    Ok(())
}
