//! Exact thermal averages by enumerating every spin configuration of a small
//! lattice, across the ordering transition.
//!
//!     cargo run --release --example exact_oracle

use qcav::ising::{exact_enumerate, CouplingSet};
use qcav::lattice::{Boundary, FieldPattern, InitialSpins, TriangularLattice};

fn main() -> qcav::Result<()> {
    let lat = TriangularLattice::build(4, 4, Boundary::Periodic, InitialSpins::AllUp, &FieldPattern::Uniform { b: 0.1 })?;
    println!("{:>5} {:>12} {:>9} {:>9} {:>10}", "K", "<E>", "<|M|>", "U", "ln<e^F>");
    for k in [0.0, 0.1, 0.2, 0.3, 0.4, 0.6, 1.0] {
        let r = exact_enumerate(&lat, &CouplingSet::new(k, 1.0)?)?;
        println!(
            "{k:>5.2} {:>12.5} {:>9.4} {:>9.4} {:>10.5}",
            r.mean_e,
            r.mean_abs_m,
            r.binder_u.unwrap_or(f64::NAN),
            r.ln_mean_exp_field
        );
    }
    Ok(())
}
