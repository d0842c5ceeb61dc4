//! Closed-form vortex quantities for a helium-3 pair condensate coupled to a
//! type-II superconductor, and how they compare with commonly quoted values.
//!
//!     cargo run --example vortex_physics

use qcav::vortex::{
    circulation_quantum, discrepancy_ledger, flux_quantum, vortex_profile, CouplingDerivation, SuperconductorSpec,
    SuperfluidSpec,
};
use qcav::PhysicalConstants;

fn main() -> qcav::Result<()> {
    let c = PhysicalConstants::default();
    let sf = SuperfluidSpec::helium3(&c);
    let sc = SuperconductorSpec::new(c.cooper_pair_charge(), 1e-7, 1e-8)?;

    println!("circulation quantum  {:.6e} m^2/s", circulation_quantum(&c, 1, sf.m_s)?);
    println!("flux quantum         {:.10e} Wb", flux_quantum(&c, 1, sc.e_c)?);

    println!("\n{:>10} {:>14} {:>14}", "r (m)", "v (m/s)", "w (1/s)");
    for r in [1e-10, 3e-10, 1e-9, 1e-8] {
        let p = vortex_profile(&c, r, sf.m_s)?;
        println!("{:>10.1e} {:>14.4e} {:>14.4e}", p.r, p.v, p.w);
    }

    let d = CouplingDerivation::derive(&c, &sf, &sc)?;
    println!("\neta = {:.4e} kg m^2, gamma = delta/rho = {:.4e}", d.eta, d.gamma);
    match d.k_required {
        Some(k) => println!("GL parameter needed to match charges: {k:.4e}"),
        None => println!("GL parameter needed overflows f64 (ln k = {:.4e})", d.ln_k_required),
    }
    println!("B_cycl = {:.4e} T, f_c = {:.4e} Hz, B0 = {:.4e} T", d.b_cycl, d.f_c, d.b0_abrikosov);

    println!();
    for e in discrepancy_ledger(&d) {
        let status = if e.reproduced { "reproduced" } else { "UNREPRODUCED" };
        println!("{:<6} computed {:.4e} quoted {:.1e} ratio {:.3e}  {status}", e.quantity, e.computed, e.quoted, e.ratio);
    }
    Ok(())
}
