//! The deformed slope Im e^{i theta} Tr (omega + i ls^2 F)^d on
//! pre-integrated Chern numbers, with its exact rational expansion.
//!
//! ```bash
//! cargo run --example mmms_slope
//! ```

use quiver_bps::linalg::rat_int;
use quiver_bps::stability::{mmms_expansion, mmms_slope, ChernData};

fn main() -> quiver_bps::Result<()> {
    // rank 1, c1 pairing 1, vanishing second pairing: a line-bundle-like brane
    let c = ChernData::from_i64(&[1, 1, 0])?;

    println!("mu_(2,0) = Im(omega^2 + 2 i omega) = 2 omega:");
    for omega in [0.5, 1.0, 2.0, 4.0] {
        println!("  omega = {omega}: {}", mmms_slope(&c, omega, 0.0, 2, 1.0));
    }

    // theta rotates the vanishing locus
    println!("\nmu_(2,theta) at omega = 1 as theta varies:");
    for k in 0..=4 {
        let theta = k as f64 * std::f64::consts::FRAC_PI_8;
        println!("  theta = {theta:.4}: {:+.6}", mmms_slope(&c, 1.0, theta, 2, 1.0));
    }

    // the exact expansion keeps everything rational until the final rotation
    let (re, im) = mmms_expansion(&c, &rat_int(3), &rat_int(2), 3);
    println!("\nexact trace of (3 + 4i F)^3 paired with (1, 1, 0, 0): {re} + {im} i");

    // flat connection: the slope vanishes identically at theta = 0
    let flat = ChernData::from_i64(&[5])?;
    println!(
        "flat bundle, theta = 0, any omega: {}",
        mmms_slope(&flat, 1.7, 0.0, 3, 1.0)
    );
    Ok(())
}
