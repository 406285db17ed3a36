//! The large-volume limit: with the preset periods (1, t, t^2/2) at t = iT,
//! Pi-stability phase ordering converges to slope ordering as T grows.
//!
//! ```bash
//! cargo run --example large_volume
//! ```

use num_complex::Complex64;
use num_traits::ToPrimitive;
use quiver_bps::central_charge::{phase_principal, Charge, MASSLESS_TOL};
use quiver_bps::stability::{chern_from_large_volume_charge, large_volume_periods, mu_slope};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> quiver_bps::Result<()> {
    let periods = large_volume_periods();
    let mut rng = ChaCha8Rng::seed_from_u64(11);

    let mut pairs = Vec::new();
    while pairs.len() < 2000 {
        let sample = |rng: &mut ChaCha8Rng| {
            Charge(vec![
                rng.gen_range(-60i64..=60),
                rng.gen_range(-9i64..=9),
                rng.gen_range(1i64..=6),
            ])
        };
        let e = sample(&mut rng);
        let f = sample(&mut rng);
        let mu_e = mu_slope(&chern_from_large_volume_charge(&e)?)?;
        let mu_f = mu_slope(&chern_from_large_volume_charge(&f)?)?;
        if mu_e != mu_f {
            pairs.push((e, f, mu_f - mu_e));
        }
    }

    println!("fraction of pairs where sign(phi' - phi) = sign(mu' - mu):");
    for big_t in [3.0, 10.0, 30.0, 100.0, 1000.0] {
        let t = Complex64::new(0.0, big_t);
        let agree = pairs
            .iter()
            .filter(|(e, f, dmu)| {
                let phi_e = phase_principal(e, t, &periods, MASSLESS_TOL).unwrap();
                let phi_f = phase_principal(f, t, &periods, MASSLESS_TOL).unwrap();
                (phi_f - phi_e).signum() == dmu.to_f64().unwrap().signum()
            })
            .count();
        println!(
            "  T = {big_t:>6}: {:.3}",
            agree as f64 / pairs.len() as f64
        );
    }
    Ok(())
}
