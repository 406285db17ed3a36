//! Marginal-stability walls: loci where the phase of a subcharge aligns with
//! the phase of its parent, across which the stable spectrum can change.
//!
//! The wall condition phi(Q') = phi(Q) mod 2 (with aligned, not anti-aligned,
//! central charges) is located as a zero of the smooth function
//! Im(Z(Q') conj Z(Q)) with an Re > 0 mask; sign changes are bisected, which
//! avoids branch-cut artifacts of comparing principal phases directly.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::central_charge::{
    central_charge, phase_principal, Charge, ModuliPath, ModuliPoint, PeriodModel, MASSLESS_TOL,
};
use crate::error::Error;
use crate::orbifold::McKayQuiver;
use crate::rep::{generic_rep, DimensionVector, SubrepOptions};
use crate::stability::{pi_stability_of_rep, ChargeMap, Verdict, PHASE_TOL};
use crate::Result;

/// Im(Z(Q1) conj Z(Q2)): vanishes iff the two central charges are collinear;
/// they are aligned (equal phase) when additionally Re(Z(Q1) conj Z(Q2)) > 0.
pub fn alignment_function(
    q1: &Charge,
    q2: &Charge,
    t: ModuliPoint,
    p: &PeriodModel,
) -> Result<f64> {
    let z1 = central_charge(q1, t, p)?;
    let z2 = central_charge(q2, t, p)?;
    Ok((z1 * z2.conj()).im)
}

fn alignment_parts(
    q1: &Charge,
    q2: &Charge,
    t: ModuliPoint,
    p: &PeriodModel,
) -> Result<(f64, f64)> {
    let z1 = central_charge(q1, t, p)?;
    let z2 = central_charge(q2, t, p)?;
    let w = z1 * z2.conj();
    Ok((w.im, w.re))
}

/// One root of the alignment function on a path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WallLocus {
    pub s: f64,
    pub residual: f64,
}

/// All alignment loci of one (parent, witness) pair along a path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Wall {
    pub parent: Charge,
    pub witness: Charge,
    pub loci: Vec<WallLocus>,
}

/// Scan result: walls plus metadata about skipped samples and degenerate
/// (everywhere-aligned) witnesses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WallScan {
    pub walls: Vec<Wall>,
    /// Path parameters where a sample was excluded as massless.
    pub skipped_samples: Vec<f64>,
    /// Witnesses aligned along the whole path (e.g. the parent itself).
    pub degenerate: Vec<Charge>,
}

/// Default bisection bracket width on the path parameter.
pub const WALL_S_TOL: f64 = 1e-9;

/// Locate walls between `parent` and each subcharge along the path: sample
/// the alignment function on the path grid, bisect every sign change down to
/// `s_tol`, and keep roots where the charges are aligned (Re > 0). Samples at
/// massless points are excluded and reported in the scan metadata.
pub fn find_walls_on_path(
    parent: &Charge,
    subcharges: &[Charge],
    path: &ModuliPath,
    p: &PeriodModel,
    s_tol: f64,
) -> Result<WallScan> {
    let mut scan = WallScan {
        walls: Vec::new(),
        skipped_samples: Vec::new(),
        degenerate: Vec::new(),
    };
    for witness in subcharges {
        if witness == parent || witness.is_zero() {
            scan.degenerate.push(witness.clone());
            continue;
        }
        // sampled alignment values; None marks a skipped (massless) sample
        let mut values: Vec<(f64, Option<f64>)> = Vec::with_capacity(path.samples.len());
        for &s in &path.samples {
            let t = path.point(s);
            let z_parent = central_charge(parent, t, p)?;
            let z_witness = central_charge(witness, t, p)?;
            if z_parent.norm() < MASSLESS_TOL || z_witness.norm() < MASSLESS_TOL {
                scan.skipped_samples.push(s);
                values.push((s, None));
                continue;
            }
            values.push((s, Some((z_witness * z_parent.conj()).im)));
        }
        let finite: Vec<f64> = values.iter().filter_map(|(_, f)| *f).collect();
        if finite.is_empty() {
            continue;
        }
        let scale = finite.iter().fold(1.0f64, |m, f| m.max(f.abs()));
        let zero_tol = 1e-12 * scale;

        if finite.iter().all(|f| f.abs() <= zero_tol) {
            scan.degenerate.push(witness.clone());
            continue;
        }

        let mut roots: Vec<f64> = Vec::new();
        // grid samples that are already roots (covers endpoint tangencies)
        for (s, f) in &values {
            if matches!(f, Some(v) if v.abs() <= zero_tol) {
                roots.push(*s);
            }
        }
        // sign changes between consecutive valid samples
        for w in values.windows(2) {
            let ((s0, f0), (s1, f1)) = (&w[0], &w[1]);
            let (Some(f0), Some(f1)) = (f0, f1) else {
                continue;
            };
            if f0.abs() <= zero_tol || f1.abs() <= zero_tol || f0.signum() == f1.signum() {
                continue;
            }
            let eval = |s: f64| -> Result<f64> {
                alignment_function(witness, parent, path.point(s), p)
            };
            let (mut lo, mut hi, mut flo) = (*s0, *s1, *f0);
            while hi - lo > s_tol {
                let mid = 0.5 * (lo + hi);
                let fmid = eval(mid)?;
                if fmid == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if fmid.signum() == flo.signum() {
                    lo = mid;
                    flo = fmid;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }

        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        roots.dedup_by(|a, b| (*a - *b).abs() <= 2.0 * s_tol.max(1e-12));

        let mut loci = Vec::new();
        for s in roots {
            let (im, re) = alignment_parts(witness, parent, path.point(s), p)?;
            if re > 0.0 {
                loci.push(WallLocus { s, residual: im });
            }
        }
        if !loci.is_empty() {
            scan.walls.push(Wall {
                parent: parent.clone(),
                witness: witness.clone(),
                loci,
            });
        }
    }
    Ok(scan)
}

/// Whether a brane of charge Q can decay into the given constituents at t:
/// the constituents must sum to Q and all their phases must align within
/// `tol` (circular distance on the period-2 phase circle).
pub fn decay_allowed(
    q: &Charge,
    parts: &[Charge],
    t: ModuliPoint,
    p: &PeriodModel,
    massless_tol: f64,
    tol: f64,
) -> Result<bool> {
    let sum = parts
        .iter()
        .fold(Charge(vec![0; q.len()]), |acc, part| acc.add(part));
    if sum != *q {
        return Err(Error::ChargeMismatch);
    }
    let phases: Vec<f64> = parts
        .iter()
        .map(|part| phase_principal(part, t, p, massless_tol))
        .collect::<Result<_>>()?;
    let aligned = phases.iter().all(|a| {
        phases.iter().all(|b| {
            let d = (a - b).rem_euclid(2.0);
            d.min(2.0 - d) <= tol
        })
    });
    // energy-conservation consistency: the BPS bound forces the triangle
    // inequality, with equality exactly in the aligned case
    let mass_sum: f64 = parts
        .iter()
        .map(|part| central_charge(part, t, p).map(|z| z.norm()))
        .sum::<Result<f64>>()?;
    let mass = central_charge(q, t, p)?.norm();
    debug_assert!(mass <= mass_sum + 1e-9);
    Ok(aligned)
}

/// Triangle-inequality residual sum |Z(part_i)| - |Z(Q)| >= 0; zero exactly
/// on the decay locus.
pub fn triangle_residual(
    q: &Charge,
    parts: &[Charge],
    t: ModuliPoint,
    p: &PeriodModel,
) -> Result<f64> {
    let mass_sum: f64 = parts
        .iter()
        .map(|part| central_charge(part, t, p).map(|z| z.norm()))
        .sum::<Result<f64>>()?;
    let mass = central_charge(q, t, p)?.norm();
    Ok(mass_sum - mass)
}

/// One row of the Pi-stable spectrum sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub dims: DimensionVector,
    pub charge: Charge,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phase: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Charge>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_phase: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Knobs for the spectrum sweep.
#[derive(Debug, Clone)]
pub struct SpectrumOptions {
    pub seed: u64,
    pub generic_retries: u32,
    pub subrep: SubrepOptions,
    pub massless_tol: f64,
    pub phase_tol: f64,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            seed: 0,
            generic_retries: 8,
            subrep: SubrepOptions::default(),
            massless_tol: MASSLESS_TOL,
            phase_tol: PHASE_TOL,
        }
    }
}

fn derive_seed(base: u64, dims: &DimensionVector) -> u64 {
    // FNV-style fold, stable across platforms
    let mut h = base ^ 0xcbf2_9ce4_8422_2325;
    for &d in dims {
        h ^= d as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn dim_vectors_up_to(cap: &DimensionVector) -> Vec<DimensionVector> {
    let mut out = Vec::new();
    let mut d = vec![0usize; cap.len()];
    loop {
        let mut i = 0;
        loop {
            if i == d.len() {
                return out;
            }
            d[i] += 1;
            if d[i] <= cap[i] {
                break;
            }
            d[i] = 0;
            i += 1;
        }
        out.push(d.clone());
    }
}

/// Enumerate nonzero dimension vectors below the cap, build a generic
/// representation for each, and test its Pi-stability at t. Per-charge
/// failures (projection, massless, dimension bound) are recorded inline and
/// never abort the sweep. Entries are sorted by phase, then charge; failures
/// sort last.
pub fn stable_spectrum(
    quiver: &Arc<McKayQuiver>,
    cap: &DimensionVector,
    t: ModuliPoint,
    p: &PeriodModel,
    charge_map: &ChargeMap,
    opts: &SpectrumOptions,
) -> Result<Vec<SpectrumEntry>> {
    if cap.len() != quiver.node_count {
        return Err(Error::LengthMismatch(format!(
            "cap has {} entries for {} nodes",
            cap.len(),
            quiver.node_count
        )));
    }
    let dims_list = dim_vectors_up_to(cap);
    let mut entries: Vec<SpectrumEntry> = dims_list
        .par_iter()
        .map(|dims| spectrum_entry(quiver, dims, t, p, charge_map, opts))
        .collect();
    entries.sort_by(|a, b| {
        match (a.phase, b.phase) {
            (Some(x), Some(y)) => x
                .partial_cmp(&y)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then_with(|| a.charge.cmp(&b.charge)),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => a.charge.cmp(&b.charge),
        }
    });
    Ok(entries)
}

fn spectrum_entry(
    quiver: &Arc<McKayQuiver>,
    dims: &DimensionVector,
    t: ModuliPoint,
    p: &PeriodModel,
    charge_map: &ChargeMap,
    opts: &SpectrumOptions,
) -> SpectrumEntry {
    let charge = match charge_map.apply(dims) {
        Ok(c) => c,
        Err(e) => return failed_entry(dims, Charge(vec![]), &e),
    };
    let base = derive_seed(opts.seed, dims);
    let mut last_err: Option<Error> = None;
    for attempt in 0..opts.generic_retries.max(1) {
        let rep = match generic_rep(quiver, dims, base.wrapping_add(u64::from(attempt))) {
            Ok(rep) => rep,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        match pi_stability_of_rep(
            &rep,
            charge_map,
            t,
            p,
            opts.massless_tol,
            opts.phase_tol,
            &opts.subrep,
        ) {
            Ok(v) => {
                let (witness, witness_phase) = match &v.verdict {
                    Verdict::Semistable(w) | Verdict::Unstable(w) => {
                        (Some(w.clone()), v.witness_phase)
                    }
                    Verdict::Stable => (None, None),
                };
                return SpectrumEntry {
                    dims: dims.clone(),
                    charge,
                    verdict: v.verdict.kind().to_string(),
                    phase: Some(v.object_phase),
                    witness,
                    witness_phase,
                    error: None,
                };
            }
            Err(e @ Error::ProjectionFailed { .. }) => {
                last_err = Some(e);
                continue;
            }
            Err(e) => {
                last_err = Some(e);
                break;
            }
        }
    }
    let err = last_err.unwrap_or(Error::ProjectionFailed { seed: base });
    failed_entry(dims, charge, &err)
}

fn failed_entry(dims: &DimensionVector, charge: Charge, err: &Error) -> SpectrumEntry {
    SpectrumEntry {
        dims: dims.clone(),
        charge,
        verdict: "error".to_string(),
        phase: None,
        witness: None,
        witness_phase: None,
        error: Some(format!("{}: {err}", err.code())),
    }
}

/// Rectangle in the t-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridRect {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

/// Per-witness cell classification: sign of the alignment function at each
/// cell center (-1, 0, +1; 2 marks a singular/massless cell), with the
/// aligned-side mask Re(Z' conj Z) > 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessGrid {
    pub witness: Charge,
    pub signs: Vec<i8>,
    pub aligned: Vec<bool>,
}

/// Sign grids for every witness over a rectangle; sign-change boundaries
/// between aligned cells are the walls.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WallGrid {
    pub rect: GridRect,
    pub nx: usize,
    pub ny: usize,
    pub grids: Vec<WitnessGrid>,
}

impl WallGrid {
    pub fn cell_center(&self, ix: usize, iy: usize) -> ModuliPoint {
        let dx = (self.rect.re_max - self.rect.re_min) / self.nx as f64;
        let dy = (self.rect.im_max - self.rect.im_min) / self.ny as f64;
        ModuliPoint::new(
            self.rect.re_min + (ix as f64 + 0.5) * dx,
            self.rect.im_min + (iy as f64 + 0.5) * dy,
        )
    }

    /// Wall edges as segments in the t-plane: boundaries between adjacent
    /// cells whose alignment signs differ, both on the aligned side.
    pub fn wall_segments(&self, grid: &WitnessGrid) -> Vec<(f64, f64, f64, f64)> {
        let dx = (self.rect.re_max - self.rect.re_min) / self.nx as f64;
        let dy = (self.rect.im_max - self.rect.im_min) / self.ny as f64;
        let idx = |ix: usize, iy: usize| iy * self.nx + ix;
        let crossing = |a: i8, b: i8| a != 2 && b != 2 && (i32::from(a) * i32::from(b) <= 0) && (a != 0 || b != 0);
        let mut segments = Vec::new();
        for iy in 0..self.ny {
            for ix in 0..self.nx {
                let here = grid.signs[idx(ix, iy)];
                let aligned_here = grid.aligned[idx(ix, iy)];
                // vertical edge to the right neighbor
                if ix + 1 < self.nx {
                    let right = grid.signs[idx(ix + 1, iy)];
                    if crossing(here, right) && aligned_here && grid.aligned[idx(ix + 1, iy)] {
                        let x = self.rect.re_min + (ix as f64 + 1.0) * dx;
                        let y0 = self.rect.im_min + iy as f64 * dy;
                        segments.push((x, y0, x, y0 + dy));
                    }
                }
                // horizontal edge to the upper neighbor
                if iy + 1 < self.ny {
                    let up = grid.signs[idx(ix, iy + 1)];
                    if crossing(here, up) && aligned_here && grid.aligned[idx(ix, iy + 1)] {
                        let y = self.rect.im_min + (iy as f64 + 1.0) * dy;
                        let x0 = self.rect.re_min + ix as f64 * dx;
                        segments.push((x0, y, x0 + dx, y));
                    }
                }
            }
        }
        segments
    }
}

/// Classify every cell of an nx x ny grid over the rectangle by the sign of
/// the alignment function for each subcharge. Singular (massless) cells are
/// flagged with sign 2 rather than failing the sweep.
pub fn wall_grid_2d(
    parent: &Charge,
    subcharges: &[Charge],
    rect: GridRect,
    p: &PeriodModel,
    nx: usize,
    ny: usize,
) -> Result<WallGrid> {
    let grid = WallGrid {
        rect,
        nx,
        ny,
        grids: Vec::new(),
    };
    let mut grids = Vec::with_capacity(subcharges.len());
    for witness in subcharges {
        let rows: Vec<(Vec<i8>, Vec<bool>)> = (0..ny)
            .into_par_iter()
            .map(|iy| {
                let mut signs = Vec::with_capacity(nx);
                let mut aligned = Vec::with_capacity(nx);
                for ix in 0..nx {
                    let t = grid.cell_center(ix, iy);
                    match (
                        central_charge(witness, t, p),
                        central_charge(parent, t, p),
                    ) {
                        (Ok(zw), Ok(zp)) => {
                            if zw.norm() < MASSLESS_TOL || zp.norm() < MASSLESS_TOL {
                                signs.push(2);
                                aligned.push(false);
                            } else {
                                let w = zw * zp.conj();
                                signs.push(if w.im > 0.0 {
                                    1
                                } else if w.im < 0.0 {
                                    -1
                                } else {
                                    0
                                });
                                aligned.push(w.re > 0.0);
                            }
                        }
                        _ => {
                            signs.push(2);
                            aligned.push(false);
                        }
                    }
                }
                (signs, aligned)
            })
            .collect();
        let mut signs = Vec::with_capacity(nx * ny);
        let mut aligned = Vec::with_capacity(nx * ny);
        for (s, a) in rows {
            signs.extend(s);
            aligned.extend(a);
        }
        grids.push(WitnessGrid {
            witness: witness.clone(),
            signs,
            aligned,
        });
    }
    Ok(WallGrid { grids, ..grid })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbifold::Arrow;
    use num_complex::Complex64;
    use std::f64::consts::FRAC_PI_2;

    fn model_1_t() -> PeriodModel {
        PeriodModel::polynomial(vec![
            vec![Complex64::new(1.0, 0.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        ])
    }

    fn const_model(values: &[Complex64]) -> PeriodModel {
        PeriodModel::polynomial(values.iter().map(|&v| vec![v]).collect())
    }

    #[test]
    fn alignment_function_cases() {
        let t = Complex64::new(0.0, 0.0);
        // Z1 = 1, Z2 = 2: aligned
        let p = const_model(&[Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)]);
        let f = alignment_function(&Charge(vec![1, 0]), &Charge(vec![0, 1]), t, &p).unwrap();
        assert_eq!(f, 0.0);
        let (_, re) =
            alignment_parts(&Charge(vec![1, 0]), &Charge(vec![0, 1]), t, &p).unwrap();
        assert!(re > 0.0);

        // Z1 = 1, Z2 = -1: collinear but anti-aligned
        let p = const_model(&[Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]);
        let (im, re) =
            alignment_parts(&Charge(vec![1, 0]), &Charge(vec![0, 1]), t, &p).unwrap();
        assert_eq!(im, 0.0);
        assert!(re < 0.0);

        // Z1 = 1, Z2 = i: orthogonal phases
        let p = const_model(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]);
        let f = alignment_function(&Charge(vec![1, 0]), &Charge(vec![0, 1]), t, &p).unwrap();
        assert_eq!(f, -1.0);
    }

    #[test]
    fn wall_found_at_arc_endpoint() {
        // Pi = (1, t), parent (1,1), witness (1,0), arc from i to 1:
        // alignment = -Im t vanishes exactly at s = 1 where t = 1.
        let p = model_1_t();
        let parent = Charge(vec![1, 1]);
        let witness = Charge(vec![1, 0]);
        let path = ModuliPath::arc(Complex64::new(0.0, 0.0), 1.0, FRAC_PI_2, 0.0, 64);
        let scan = find_walls_on_path(&parent, std::slice::from_ref(&witness), &path, &p, WALL_S_TOL).unwrap();
        assert_eq!(scan.walls.len(), 1);
        let loci = &scan.walls[0].loci;
        assert_eq!(loci.len(), 1);
        assert!((loci[0].s - 1.0).abs() < 1e-6, "s = {}", loci[0].s);
        assert!(loci[0].residual.abs() < 1e-9);

        // at the root the principal phases agree mod 2
        let t_star = path.point(loci[0].s);
        let phi_p = phase_principal(&parent, t_star, &p, MASSLESS_TOL).unwrap();
        let phi_w = phase_principal(&witness, t_star, &p, MASSLESS_TOL).unwrap();
        let d = (phi_p - phi_w).rem_euclid(2.0);
        assert!(d.min(2.0 - d) < 1e-6);
    }

    #[test]
    fn wall_with_interior_sign_change() {
        // parent (1,1), witness (0,1): alignment = Im(t conj(1+t)) = Im t on
        // a vertical segment crossing the real axis at t = 2.
        let p = model_1_t();
        let parent = Charge(vec![1, 1]);
        let witness = Charge(vec![0, 1]);
        let path = ModuliPath::segment(
            Complex64::new(2.0, -1.0),
            Complex64::new(2.0, 1.0),
            16,
        );
        let scan = find_walls_on_path(&parent, &[witness], &path, &p, WALL_S_TOL).unwrap();
        assert_eq!(scan.walls.len(), 1);
        let loci = &scan.walls[0].loci;
        assert_eq!(loci.len(), 1);
        assert!((loci[0].s - 0.5).abs() < 1e-6);
    }

    #[test]
    fn self_witness_is_degenerate() {
        let p = model_1_t();
        let q = Charge(vec![1, 1]);
        let path = ModuliPath::segment(Complex64::new(0.0, 1.0), Complex64::new(1.0, 1.0), 8);
        let scan = find_walls_on_path(&q, std::slice::from_ref(&q), &path, &p, WALL_S_TOL).unwrap();
        assert!(scan.walls.is_empty());
        assert_eq!(scan.degenerate, vec![q]);
    }

    #[test]
    fn chamber_interior_has_no_walls() {
        // both phases constant and distinct: Z1 = 1, Z2 = i under constant periods
        let p = const_model(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]);
        let parent = Charge(vec![1, 0]);
        let witness = Charge(vec![0, 1]);
        let path = ModuliPath::segment(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), 8);
        let scan = find_walls_on_path(&parent, &[witness], &path, &p, WALL_S_TOL).unwrap();
        assert!(scan.walls.is_empty());
        assert!(scan.degenerate.is_empty());
    }

    #[test]
    fn anti_aligned_zero_not_reported() {
        // Z(witness) = -Z(parent): alignment vanishes identically but Re < 0;
        // treated as degenerate (aligned-function zero) and never as a wall.
        let p = model_1_t();
        let parent = Charge(vec![1, 1]);
        let witness = Charge(vec![-1, -1]);
        let path = ModuliPath::segment(Complex64::new(0.3, 0.4), Complex64::new(1.0, 2.0), 8);
        let scan = find_walls_on_path(&parent, &[witness], &path, &p, WALL_S_TOL).unwrap();
        assert!(scan.walls.is_empty());
    }

    #[test]
    fn decay_constraints() {
        let t = Complex64::new(0.0, 0.0);
        // parts with Z = 1 and Z = 2: collinear, decay allowed
        let p = const_model(&[Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)]);
        let q = Charge(vec![1, 1]);
        assert!(decay_allowed(
            &q,
            &[Charge(vec![1, 0]), Charge(vec![0, 1])],
            t,
            &p,
            MASSLESS_TOL,
            1e-9
        )
        .unwrap());

        // parts with Z = 1 and Z = i: strict triangle inequality, no decay
        let p = const_model(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]);
        assert!(!decay_allowed(
            &q,
            &[Charge(vec![1, 0]), Charge(vec![0, 1])],
            t,
            &p,
            MASSLESS_TOL,
            1e-9
        )
        .unwrap());
        let residual = triangle_residual(
            &q,
            &[Charge(vec![1, 0]), Charge(vec![0, 1])],
            t,
            &p,
        )
        .unwrap();
        assert!(residual > 0.5); // 2 - sqrt(2)

        // trivial decay into itself
        assert!(decay_allowed(&q, std::slice::from_ref(&q), t, &p, MASSLESS_TOL, 1e-9).unwrap());

        // mismatched constituent sum
        assert!(matches!(
            decay_allowed(&q, &[Charge(vec![1, 0])], t, &p, MASSLESS_TOL, 1e-9),
            Err(Error::ChargeMismatch)
        ));
    }

    fn two_node_quiver() -> Arc<McKayQuiver> {
        Arc::new(
            McKayQuiver::from_parts(
                2,
                vec![Arrow {
                    src: 0,
                    dst: 1,
                    label: 1,
                }],
                vec![],
            )
            .unwrap(),
        )
    }

    #[test]
    fn spectrum_of_single_simple() {
        let q = two_node_quiver();
        let opts = SpectrumOptions::default();
        let entries = stable_spectrum(
            &q,
            &vec![1, 0],
            Complex64::new(0.0, 1.0),
            &model_1_t(),
            &ChargeMap::identity(2),
            &opts,
        )
        .unwrap();
        assert_eq!(entries.len(), 1);
        assert_eq!(entries[0].charge, Charge(vec![1, 0]));
        assert_eq!(entries[0].verdict, "stable");
    }

    #[test]
    fn spectrum_changes_across_wall() {
        // the (1,1) brane in the two-node model is unstable above the real
        // axis and stable below it; the wall sits on the axis
        let q = two_node_quiver();
        let opts = SpectrumOptions::default();
        let above = stable_spectrum(
            &q,
            &vec![1, 1],
            Complex64::new(1.0, 0.1),
            &model_1_t(),
            &ChargeMap::identity(2),
            &opts,
        )
        .unwrap();
        let below = stable_spectrum(
            &q,
            &vec![1, 1],
            Complex64::new(1.0, -0.1),
            &model_1_t(),
            &ChargeMap::identity(2),
            &opts,
        )
        .unwrap();
        let verdict_of = |entries: &[SpectrumEntry], c: &[i64]| {
            entries
                .iter()
                .find(|e| e.charge.0 == c)
                .map(|e| e.verdict.clone())
                .unwrap()
        };
        assert_eq!(verdict_of(&above, &[1, 1]), "unstable");
        assert_eq!(verdict_of(&below, &[1, 1]), "stable");
        // simples are stable on both sides
        assert_eq!(verdict_of(&above, &[1, 0]), "stable");
        assert_eq!(verdict_of(&below, &[1, 0]), "stable");
    }

    #[test]
    fn spectrum_identical_within_chamber() {
        let q = two_node_quiver();
        let opts = SpectrumOptions::default();
        let p = model_1_t();
        let t1 = Complex64::new(0.5, 0.4);
        let t2 = Complex64::new(1.5, 0.8);
        let a = stable_spectrum(&q, &vec![1, 1], t1, &p, &ChargeMap::identity(2), &opts).unwrap();
        let b = stable_spectrum(&q, &vec![1, 1], t2, &p, &ChargeMap::identity(2), &opts).unwrap();
        let strip = |v: &[SpectrumEntry]| -> Vec<(Vec<usize>, String)> {
            v.iter().map(|e| (e.dims.clone(), e.verdict.clone())).collect()
        };
        assert_eq!(strip(&a), strip(&b));
        // and the connecting path crosses no wall
        let path = ModuliPath::segment(t1, t2, 32);
        let scan = find_walls_on_path(
            &Charge(vec![1, 1]),
            &[Charge(vec![1, 0]), Charge(vec![0, 1])],
            &path,
            &p,
            WALL_S_TOL,
        )
        .unwrap();
        assert!(scan.walls.is_empty());
    }

    #[test]
    fn grid_classification_flips_across_wall() {
        let p = model_1_t();
        let parent = Charge(vec![1, 1]);
        let witness = Charge(vec![0, 1]);
        let rect = GridRect {
            re_min: 1.0,
            re_max: 3.0,
            im_min: -1.0,
            im_max: 1.0,
        };
        let grid = wall_grid_2d(&parent, &[witness], rect, &p, 8, 8).unwrap();
        let g = &grid.grids[0];
        // bottom row negative, top row positive (alignment = Im t)
        assert!(g.signs[..8].iter().all(|&s| s == -1));
        assert!(g.signs[56..].iter().all(|&s| s == 1));
        let segments = grid.wall_segments(g);
        assert!(!segments.is_empty());
        // all wall segments hug the real axis within one cell height
        assert!(segments.iter().all(|&(_, y0, _, y1)| y0.abs() <= 0.26 && y1.abs() <= 0.26));
    }

    #[test]
    fn grid_uniform_inside_chamber() {
        let p = model_1_t();
        let parent = Charge(vec![1, 1]);
        let witness = Charge(vec![0, 1]);
        let rect = GridRect {
            re_min: 1.0,
            re_max: 2.0,
            im_min: 0.5,
            im_max: 1.5,
        };
        let grid = wall_grid_2d(&parent, &[witness], rect, &p, 6, 6).unwrap();
        let g = &grid.grids[0];
        assert!(g.signs.iter().all(|&s| s == 1));
        assert!(grid.wall_segments(g).is_empty());
    }

    #[test]
    fn grid_refinement_keeps_wall_in_place() {
        let p = model_1_t();
        let parent = Charge(vec![1, 1]);
        let witness = Charge(vec![0, 1]);
        let rect = GridRect {
            re_min: 1.0,
            re_max: 3.0,
            im_min: -1.0,
            im_max: 1.0,
        };
        let coarse = wall_grid_2d(&parent, std::slice::from_ref(&witness), rect, &p, 8, 8).unwrap();
        let fine = wall_grid_2d(&parent, &[witness], rect, &p, 16, 16).unwrap();
        let coarse_cell = (rect.im_max - rect.im_min) / 8.0;
        let coarse_segments = coarse.wall_segments(&coarse.grids[0]);
        let fine_segments = fine.wall_segments(&fine.grids[0]);
        for &(_, y0, _, _) in &fine_segments {
            assert!(coarse_segments
                .iter()
                .any(|&(_, cy0, _, _)| (y0 - cy0).abs() <= coarse_cell));
        }
    }
}
