//! BPS D-brane spectra on abelian orbifold Calabi-Yau models.
//!
//! This library builds McKay quivers with superpotential relations for
//! `C^3/Z_n` orbifolds, works with quiver representations over exact
//! rationals, evaluates moduli-dependent central charges and their phases,
//! tests slope/theta/Pi-stability, tracks the flow of morphism gradings
//! along paths in moduli space, and locates marginal-stability walls.
//!
//! ## Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run --example build_quiver        # McKay quivers and relations
//! cargo run --example generic_reps        # representations, Hom spaces, subobjects
//! cargo run --example theta_stability     # King-style GIT stability
//! cargo run --example pi_stability        # Pi-stability against a period model
//! cargo run --example phase_lifting       # branch-continuous phases and monodromy
//! cargo run --example grading_flow        # morphism-degree flow along paths
//! cargo run --example scan_walls          # marginal-stability walls on a path
//! cargo run --example wall_grid           # 2-D wall overlay for the t-plane
//! cargo run --example spectrum            # Pi-stable spectrum at a moduli point
//! cargo run --example large_volume        # slope ordering as the large-volume limit
//! cargo run --example mmms_slope          # deformed slope from the Born-Infeld form
//! ```
//!
//! The thin `quiver-bps` binary exposes the same operations as subcommands
//! (`build-quiver`, `check-stability`, `scan-walls`, `flow-gradings`,
//! `spectrum`) driven by a JSON config; see the README.

pub mod central_charge;
pub mod cli;
pub mod config;
pub mod emit;
pub mod error;
pub mod gf5;
pub mod grading_flow;
pub mod linalg;
pub mod orbifold;
pub mod rep;
pub mod stability;
pub mod walls;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
