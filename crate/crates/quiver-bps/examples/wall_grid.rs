//! Classify a rectangle of the t-plane by alignment sign and emit the wall
//! overlay as SVG: the wall between (1,1) and (0,1) in the two-charge model
//! runs along the positive real axis.
//!
//! ```bash
//! cargo run --example wall_grid
//! ```

use num_complex::Complex64;
use quiver_bps::central_charge::{Charge, PeriodModel};
use quiver_bps::emit;
use quiver_bps::walls::{wall_grid_2d, GridRect};

fn main() -> quiver_bps::Result<()> {
    let periods = PeriodModel::polynomial(vec![
        vec![Complex64::new(1.0, 0.0)],
        vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    ]);
    let parent = Charge(vec![1, 1]);
    let witnesses = vec![Charge(vec![0, 1]), Charge(vec![1, 0])];
    let rect = GridRect {
        re_min: -0.5,
        re_max: 3.0,
        im_min: -1.5,
        im_max: 1.5,
    };

    let grid = wall_grid_2d(&parent, &witnesses, rect, &periods, 48, 48)?;
    for wgrid in &grid.grids {
        let segments = grid.wall_segments(wgrid);
        println!(
            "witness {:?}: {} wall boundary segments",
            wgrid.witness.0,
            segments.len()
        );
    }

    let svg = emit::grid_svg(&grid);
    std::fs::create_dir_all("out")?;
    std::fs::write("out/wall_grid.svg", &svg)?;
    println!("wrote out/wall_grid.svg ({} bytes)", svg.len());
    Ok(())
}
