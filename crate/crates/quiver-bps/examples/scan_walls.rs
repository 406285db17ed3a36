//! Locate marginal-stability walls along a path: the aligned zero of
//! Im(Z(Q') conj Z(Q)) at the end of the arc from i to 1 is the wall between
//! (1,1) and (1,0) in the two-charge model.
//!
//! ```bash
//! cargo run --example scan_walls
//! ```

use num_complex::Complex64;
use quiver_bps::central_charge::{Charge, ModuliPath, PeriodModel};
use quiver_bps::emit;
use quiver_bps::walls::{find_walls_on_path, WALL_S_TOL};

fn main() -> quiver_bps::Result<()> {
    let periods = PeriodModel::polynomial(vec![
        vec![Complex64::new(1.0, 0.0)],
        vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    ]);
    let parent = Charge(vec![1, 1]);
    let witnesses = vec![Charge(vec![1, 0]), Charge(vec![0, 1])];

    // quarter arc from t = i to t = 1
    let path = ModuliPath::arc(
        Complex64::new(0.0, 0.0),
        1.0,
        std::f64::consts::FRAC_PI_2,
        0.0,
        64,
    );
    let scan = find_walls_on_path(&parent, &witnesses, &path, &periods, WALL_S_TOL)?;
    for wall in &scan.walls {
        for locus in &wall.loci {
            println!(
                "wall between {:?} and {:?} at s = {:.9} (t = {:.4}), residual {:e}",
                wall.parent.0,
                wall.witness.0,
                locus.s,
                path.point(locus.s),
                locus.residual
            );
        }
    }

    println!("\nCSV:\n{}", emit::walls_csv(&scan)?);

    // a path inside one chamber crosses nothing
    let interior = ModuliPath::segment(Complex64::new(0.2, 0.9), Complex64::new(0.9, 0.3), 64);
    let scan = find_walls_on_path(&parent, &witnesses, &interior, &periods, WALL_S_TOL)?;
    println!("chamber-interior path: {} walls", scan.walls.len());
    Ok(())
}
