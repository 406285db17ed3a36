//! Flow of morphism gradings under motion in moduli space.
//!
//! A morphism of degree n between branes E and F at a reference point K picks
//! up the phase change of its endpoints when the moduli move: the degree at L
//! is n + phi_L(F) - phi_K(F) - phi_L(E) + phi_K(E). Gradings are real-valued
//! along a path; around closed loops they shift by even integers (monodromy),
//! and open paths can push them below zero or flip parity, which is exactly
//! what breaks any fixed abelian category.

use serde::{Deserialize, Serialize};

use crate::central_charge::{
    lift_phase, phase_principal, Charge, ModuliPath, ModuliPoint, PeriodModel,
};
use crate::error::Error;
use crate::Result;

/// A graded morphism E -> F anchored at a reference moduli point, with the
/// reference phases frozen in.
#[derive(Debug, Clone, PartialEq)]
pub struct MorphismRecord {
    pub source: Charge,
    pub target: Charge,
    pub degree: f64,
    pub reference: ModuliPoint,
    pub phase_source: f64,
    pub phase_target: f64,
}

impl MorphismRecord {
    /// Anchors a degree-n morphism at K, computing the reference phases from
    /// the period model.
    pub fn new(
        source: Charge,
        target: Charge,
        degree: f64,
        reference: ModuliPoint,
        p: &PeriodModel,
        massless_tol: f64,
    ) -> Result<Self> {
        let phase_source = phase_principal(&source, reference, p, massless_tol)?;
        let phase_target = phase_principal(&target, reference, p, massless_tol)?;
        Ok(MorphismRecord {
            source,
            target,
            degree,
            reference,
            phase_source,
            phase_target,
        })
    }
}

/// The degree-flow formula: n' = n + phi_L(F) - phi_K(F) - phi_L(E) + phi_K(E).
/// Depends only on the four phase values.
pub fn flow_degree(n: f64, phi_k_e: f64, phi_k_f: f64, phi_l_e: f64, phi_l_f: f64) -> f64 {
    n + (phi_l_f - phi_k_f) - (phi_l_e - phi_k_e)
}

/// One row of a grading-flow trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowSample {
    pub s: f64,
    pub phase_source: f64,
    pub phase_target: f64,
    pub degree: f64,
}

/// Degree of the morphism along the path, using lifted phases for both
/// endpoint charges. The path must start at the record's reference point;
/// values are reported at the path's own sample grid.
pub fn flow_along_path(
    m: &MorphismRecord,
    path: &ModuliPath,
    p: &PeriodModel,
    massless_tol: f64,
) -> Result<Vec<FlowSample>> {
    let gap = (path.start() - m.reference).norm();
    if gap > 1e-9 {
        return Err(Error::PathMismatch { gap });
    }
    let lift_e = lift_phase(&m.source, path, p, massless_tol)?;
    let lift_f = lift_phase(&m.target, path, p, massless_tol)?;
    let phi_k_e = lift_e.start_phi();
    let phi_k_f = lift_f.start_phi();
    Ok(path
        .samples
        .iter()
        .map(|&s| {
            let phi_e = lift_e
                .phi_at_sample(s)
                .expect("lift retains original path samples");
            let phi_f = lift_f
                .phi_at_sample(s)
                .expect("lift retains original path samples");
            FlowSample {
                s,
                phase_source: phi_e,
                phase_target: phi_f,
                degree: flow_degree(m.degree, phi_k_e, phi_k_f, phi_e, phi_f),
            }
        })
        .collect())
}

/// Degree shift of a morphism after transport around a closed loop:
/// 2 * (winding of Z(F) - winding of Z(E)), asserted to be an even integer.
pub fn monodromy_shift(
    q_e: &Charge,
    q_f: &Charge,
    closed_path: &ModuliPath,
    p: &PeriodModel,
    massless_tol: f64,
) -> Result<i64> {
    let gap = (closed_path.end() - closed_path.start()).norm();
    if gap > 1e-9 {
        return Err(Error::NotClosed { gap });
    }
    let delta_e = lift_phase(q_e, closed_path, p, massless_tol)?.delta();
    let delta_f = lift_phase(q_f, closed_path, p, massless_tol)?.delta();
    let shift = delta_f - delta_e;
    let rounded = shift.round();
    if (shift - rounded).abs() > 1e-9 || (rounded as i64) % 2 != 0 {
        return Err(Error::NonIntegralMonodromy { value: shift });
    }
    Ok(rounded as i64)
}

/// Start and end degree of one flowed morphism.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowEndpoints {
    pub start_degree: f64,
    pub end_degree: f64,
}

/// Why a fixed abelian category stops describing the flowed data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AbelianViolation {
    /// An endpoint degree dropped below zero.
    NegativeDegree,
    /// The net integer shift is odd, exchanging even and odd objects.
    ParityFlip,
}

/// Tolerance for the negative-degree check.
pub const NEGATIVE_DEGREE_TOL: f64 = 1e-9;
/// Rounding tolerance used only for parity detection.
pub const PARITY_ROUND_TOL: f64 = 1e-6;

/// Flags each record whose flowed endpoint violates abelian-category axioms:
/// a degree below zero, or an odd integer net shift. An empty result means
/// the fixed category is still self-consistent on this data.
pub fn abelian_violation_check(records: &[FlowEndpoints]) -> Vec<(usize, AbelianViolation)> {
    let mut flags = Vec::new();
    for (i, r) in records.iter().enumerate() {
        if r.end_degree < -NEGATIVE_DEGREE_TOL {
            flags.push((i, AbelianViolation::NegativeDegree));
        }
        let shift = r.end_degree - r.start_degree;
        let rounded = shift.round();
        if (rounded as i64).rem_euclid(2) == 1 && (shift - rounded).abs() < PARITY_ROUND_TOL {
            flags.push((i, AbelianViolation::ParityFlip));
        }
    }
    flags
}
