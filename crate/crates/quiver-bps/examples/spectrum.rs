//! Enumerate the Pi-stable spectrum of the C^3/Z_3 model at two moduli
//! points separated by a wall: the (1,1,0) brane decays when the point moves
//! across the positive real axis.
//!
//! ```bash
//! cargo run --example spectrum
//! ```

use std::sync::Arc;

use num_complex::Complex64;
use quiver_bps::orbifold::{mckay_quiver_with_relations, OrbifoldSpec};
use quiver_bps::stability::{large_volume_periods, ChargeMap};
use quiver_bps::walls::{stable_spectrum, SpectrumOptions};

fn main() -> quiver_bps::Result<()> {
    let spec = OrbifoldSpec::new(3, [1, 1, 1])?;
    let quiver = Arc::new(mckay_quiver_with_relations(&spec)?);
    let periods = large_volume_periods();
    let map = ChargeMap::identity(3);
    let opts = SpectrumOptions::default();
    let cap = vec![1, 1, 1];

    for (label, t) in [
        ("above the real axis (t = 1 + 0.1i)", Complex64::new(1.0, 0.1)),
        ("below the real axis (t = 1 - 0.1i)", Complex64::new(1.0, -0.1)),
    ] {
        println!("spectrum {label}:");
        let entries = stable_spectrum(&quiver, &cap, t, &periods, &map, &opts)?;
        for e in &entries {
            match e.phase {
                Some(phase) => println!(
                    "  {:?}  {:<10}  phi = {:.4}{}",
                    e.charge.0,
                    e.verdict,
                    phase,
                    e.witness
                        .as_ref()
                        .map(|w| format!("  witness {:?}", w.0))
                        .unwrap_or_default()
                ),
                None => println!("  {:?}  error: {}", e.charge.0, e.error.as_deref().unwrap_or("?")),
            }
        }
        println!();
    }
    Ok(())
}
