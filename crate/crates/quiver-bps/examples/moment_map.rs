//! Linear sigma model phases: the moment map of the U(1) action on C^6 and
//! the geometric / Landau-Ginzburg classification by the sign of the
//! Fayet-Iliopoulos parameter.
//!
//! ```bash
//! cargo run --example moment_map
//! ```

use num_complex::Complex64;
use num_traits::One;
use quiver_bps::linalg::Rat;
use quiver_bps::orbifold::{
    classify_phase, critical_locus_check, moment_map_value, LinearSigmaSpec, SparsePoly,
    CRITICAL_LOCUS_TOL,
};

fn main() -> quiver_bps::Result<()> {
    // weighted projective space weights with sum zero
    let weights = [1, 1, 1, 1, 1, -5];

    for mu in [2.0, 0.0, -2.0] {
        let spec = LinearSigmaSpec::new(weights, mu)?;
        println!("mu = {mu:+}: {:?} phase", classify_phase(&spec));
    }

    let spec = LinearSigmaSpec::new(weights, 1.0)?;
    let mut z = [Complex64::new(0.0, 0.0); 6];
    z[0] = Complex64::new(1.0, 0.0);
    println!(
        "\nmoment map at z = e_1 with mu = 1: {}",
        moment_map_value(&z, &spec)
    );

    // the superpotential W = z6 f(z): its critical locus inside the quotient
    // is cut out by z6 = 0 and f = 0; here f = z1^2 + z2 z3
    let f = SparsePoly {
        terms: vec![
            (Rat::one(), [2, 0, 0, 0, 0]),
            (Rat::one(), [0, 1, 1, 0, 0]),
        ],
    };
    let origin = [Complex64::new(0.0, 0.0); 6];
    println!(
        "origin on the critical locus of W = z6 (z1^2 + z2 z3): {}",
        critical_locus_check(&origin, &f, CRITICAL_LOCUS_TOL)
    );
    let mut off = origin;
    off[0] = Complex64::new(1.0, 0.0);
    off[5] = Complex64::new(1.0, 0.0);
    println!(
        "z1 = z6 = 1 on the critical locus: {}",
        critical_locus_check(&off, &f, CRITICAL_LOCUS_TOL)
    );
    Ok(())
}
