//! Converts physical couplings (J in J/(kg m^2/s)^2, fields in tesla, T* in
//! kelvin) into the dimensionless K and b used by the lattice model.
//!
//!     cargo run --example reduced_couplings

use qcav::ising::{reduce_couplings, FieldConvention};
use qcav::vortex::{cyclotron_field, SuperfluidSpec};
use qcav::PhysicalConstants;

fn main() -> qcav::Result<()> {
    let c = PhysicalConstants::default();
    let sf = SuperfluidSpec::helium3(&c);
    let b_cycl = cyclotron_field(&c, &sf);
    let t_star = 0.01;

    // J chosen so that K = 1 at T* = 10 mK
    let j = c.k_b * t_star / (c.hbar * c.hbar);
    let fields = [0.0, 1.0, 1e3, b_cycl];
    let r = reduce_couplings(&c, j, &sf, &fields, t_star, FieldConvention::CyclotronEnergy)?;
    println!("K = {:.6}, T_red = {}", r.couplings.k, r.couplings.t_red);
    for (h, b) in fields.iter().zip(&r.fields) {
        println!("h = {h:>12.4e} T  ->  b = {b:.4e}");
    }

    // the literal convention needs an explicit unit normalisation
    let missing = reduce_couplings(&c, j, &sf, &fields, t_star, FieldConvention::ChargeArea { unit: None });
    println!("\nwithout a unit constant: {}", missing.unwrap_err());
    Ok(())
}
