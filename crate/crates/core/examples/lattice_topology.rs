//! Neighbour structure of the triangular lattice under both boundary
//! conditions.
//!
//!     cargo run --example lattice_topology

use qcav::lattice::{Boundary, FieldPattern, InitialSpins, Site, TriangularLattice};

fn main() -> qcav::Result<()> {
    for bc in [Boundary::Periodic, Boundary::Open] {
        let lat = TriangularLattice::build(4, 5, bc, InitialSpins::AllUp, &FieldPattern::zero())?;
        println!("{bc:?} 4x5: {} sites, {} bonds", lat.n_sites(), lat.bond_list().len());
        for s in [Site::new(0, 0), Site::new(2, 2), Site::new(3, 4)] {
            let ns: Vec<String> = lat.neighbors(s)?.iter().map(|n| format!("({},{})", n.i, n.j)).collect();
            println!("  ({},{}) -> {}", s.i, s.j, ns.join(" "));
        }
    }

    // a diluted field: each site independently carries b with probability p
    let lat = TriangularLattice::build(
        6,
        6,
        Boundary::Periodic,
        InitialSpins::Random { seed: 1 },
        &FieldPattern::Diluted { b: 0.5, p: 0.3, seed: 2 },
    )?;
    let active = lat.fields().iter().filter(|&&b| b != 0.0).count();
    println!("\ndiluted 6x6: {active}/36 sites carry a field, M = {}, field term = {:.2}", lat.magnetization(), lat.field_term());
    let json = lat.snapshot().to_json();
    let back = TriangularLattice::from_snapshot(qcav::lattice::LatticeSnapshot::from_json(&json)?)?;
    println!("snapshot: {} bytes of JSON, round-trips: {}", json.len(), back.spins() == lat.spins());
    Ok(())
}
