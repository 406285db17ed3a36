//! Pi-stability in the two-charge model Pi = (1, t): the brane (1,1) is
//! stable below the positive real axis, marginal on it, and unstable above
//! it, with the subcharge (0,1) as the destabilizing witness.
//!
//! ```bash
//! cargo run --example pi_stability
//! ```

use num_complex::Complex64;
use quiver_bps::central_charge::{Charge, PeriodModel, MASSLESS_TOL};
use quiver_bps::stability::{is_pi_stable, PHASE_TOL};

fn main() -> quiver_bps::Result<()> {
    let periods = PeriodModel::polynomial(vec![
        vec![Complex64::new(1.0, 0.0)],
        vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    ]);
    let object = Charge(vec![1, 1]);
    let subcharges = vec![Charge(vec![1, 0]), Charge(vec![0, 1])];

    for (label, t) in [
        ("below the wall (t = 1 - 0.2i)", Complex64::new(1.0, -0.2)),
        ("on the wall   (t = 1)", Complex64::new(1.0, 0.0)),
        ("above the wall (t = 1 + 0.2i)", Complex64::new(1.0, 0.2)),
        ("far away      (t = i)", Complex64::new(0.0, 1.0)),
    ] {
        let v = is_pi_stable(&object, &subcharges, t, &periods, MASSLESS_TOL, PHASE_TOL)?;
        println!("{label}: {}", v.to_json());
    }
    Ok(())
}
