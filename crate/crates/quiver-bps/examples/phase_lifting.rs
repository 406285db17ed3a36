//! Branch-continuous phases: lift phi = (1/pi) Im log Z along paths, watch it
//! leave the principal interval [0, 2), and read off winding numbers from
//! closed loops.
//!
//! ```bash
//! cargo run --example phase_lifting
//! ```

use num_complex::Complex64;
use quiver_bps::central_charge::{lift_phase, Charge, ModuliPath, PeriodModel, MASSLESS_TOL};

fn main() -> quiver_bps::Result<()> {
    // Z = t on the upper half circle: phi runs continuously from 0 to 1
    let periods = PeriodModel::polynomial(vec![
        vec![Complex64::new(1.0, 0.0)],
        vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    ]);
    let q = Charge(vec![0, 1]);
    let arc = ModuliPath::arc(Complex64::new(0.0, 0.0), 1.0, 0.0, std::f64::consts::PI, 8);
    let lift = lift_phase(&q, &arc, &periods, MASSLESS_TOL)?;
    println!("phi of Z = t along the half circle:");
    for s in &lift.samples {
        println!("  s = {:.4}  phi = {:.4}", s.s, s.phi());
    }

    // a closed loop around the zero of Z = t - 1 picks up Delta phi = 2
    let shifted = PeriodModel::polynomial(vec![vec![
        Complex64::new(-1.0, 0.0),
        Complex64::new(1.0, 0.0),
    ]]);
    let loop_path = ModuliPath::arc(
        Complex64::new(1.0, 0.0),
        0.5,
        0.0,
        std::f64::consts::TAU,
        32,
    );
    let lift = lift_phase(&Charge(vec![1]), &loop_path, &shifted, MASSLESS_TOL)?;
    println!(
        "\nclosed loop around the zero of Z = t - 1: Delta phi = {:.6} (winding {})",
        lift.delta(),
        (lift.delta() / 2.0).round() as i64
    );

    // a double loop winds twice
    let double = ModuliPath::arc(
        Complex64::new(1.0, 0.0),
        0.5,
        0.0,
        2.0 * std::f64::consts::TAU,
        64,
    );
    let lift = lift_phase(&Charge(vec![1]), &double, &shifted, MASSLESS_TOL)?;
    println!(
        "double loop: Delta phi = {:.6} (winding {})",
        lift.delta(),
        (lift.delta() / 2.0).round() as i64
    );
    Ok(())
}
