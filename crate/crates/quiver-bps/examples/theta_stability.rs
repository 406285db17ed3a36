//! King-style theta stability of quiver representations: the verdict depends
//! on the moment-map levels theta, with walls where theta pairs to zero on a
//! subrepresentation.
//!
//! ```bash
//! cargo run --example theta_stability
//! ```

use std::sync::Arc;

use quiver_bps::linalg::{rat, QMat};
use quiver_bps::orbifold::{Arrow, McKayQuiver};
use quiver_bps::rep::{QuiverRep, SubrepOptions};
use quiver_bps::stability::is_theta_stable;

fn main() -> quiver_bps::Result<()> {
    // a two-node quiver with a single arrow: the representation 1 -> 1 with a
    // nonzero map has exactly one proper subobject, supported on the sink
    let quiver = Arc::new(McKayQuiver::from_parts(
        2,
        vec![Arrow {
            src: 0,
            dst: 1,
            label: 1,
        }],
        vec![],
    )?);

    let nonzero = QuiverRep::new(
        Arc::clone(&quiver),
        vec![1, 1],
        vec![QMat::from_i64(&[&[1]])],
    )?;
    let zero = QuiverRep::zero(Arc::clone(&quiver), vec![1, 1])?;
    let opts = SubrepOptions::default();

    for (num, den) in [(1, 1), (2, 3), (0, 1), (-1, 1)] {
        let theta = vec![rat(num, den), rat(-num, den)];
        let v_nonzero = is_theta_stable(&nonzero, &theta, &opts)?;
        let v_zero = is_theta_stable(&zero, &theta, &opts)?;
        println!(
            "theta = ({num}/{den}, -{num}/{den}): nonzero map -> {:?}, zero map -> {:?}",
            v_nonzero, v_zero
        );
    }

    println!(
        "\nscaling theta by a positive rational never changes a verdict;\n\
         flipping its sign swaps which representation is stable"
    );
    Ok(())
}
