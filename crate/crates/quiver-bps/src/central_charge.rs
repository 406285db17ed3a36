//! Central charges Z(Q) as pairings of integer charges with moduli-dependent
//! period vectors, their phases in [0, 2), and branch-continuous phase lifts
//! along paths in moduli space.
//!
//! The phase convention is phi = (1/pi) Im log Z, so a sign flip of Z shifts
//! phi by 1 and a full turn of Z around zero shifts a lifted phi by 2. Lifts
//! are defined by continuity along an explicit path starting from the
//! principal branch; every lifted result is therefore path-dependent data.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// Integer vector in the charge lattice.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Charge(pub Vec<i64>);

impl Charge {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&q| q == 0)
    }

    pub fn add(&self, other: &Charge) -> Charge {
        Charge(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Charge) -> Charge {
        Charge(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Charge {
        Charge(self.0.iter().map(|&a| -a).collect())
    }
}

/// A point in the one-parameter moduli space.
pub type ModuliPoint = Complex64;

/// Map from a moduli point to a complex period vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum PeriodModel {
    /// Each component is a polynomial in t, coefficients low degree first.
    Polynomial { components: Vec<Vec<Complex64>> },
    /// Periods tabulated against a real parameter, linearly interpolated;
    /// the moduli point must sit on the real axis inside the table range.
    Tabulated { samples: Vec<(f64, Vec<Complex64>)> },
}

impl PeriodModel {
    pub fn polynomial(components: Vec<Vec<Complex64>>) -> Self {
        PeriodModel::Polynomial { components }
    }

    pub fn rank(&self) -> usize {
        match self {
            PeriodModel::Polynomial { components } => components.len(),
            PeriodModel::Tabulated { samples } => {
                samples.first().map_or(0, |(_, v)| v.len())
            }
        }
    }

    pub fn eval(&self, t: ModuliPoint) -> Result<Vec<Complex64>> {
        match self {
            PeriodModel::Polynomial { components } => Ok(components
                .iter()
                .map(|coeffs| {
                    coeffs
                        .iter()
                        .rev()
                        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * t + c)
                })
                .collect()),
            PeriodModel::Tabulated { samples } => {
                if samples.len() < 2 {
                    return Err(Error::Domain("tabulated model needs >= 2 samples".into()));
                }
                if t.im.abs() > 1e-9 {
                    return Err(Error::Domain(format!(
                        "tabulated model is real-parameter only, got Im t = {}",
                        t.im
                    )));
                }
                let x = t.re;
                let (lo, hi) = (samples[0].0, samples[samples.len() - 1].0);
                if x < lo - 1e-12 || x > hi + 1e-12 {
                    return Err(Error::Domain(format!(
                        "parameter {x} outside table range [{lo}, {hi}]"
                    )));
                }
                let i = samples
                    .windows(2)
                    .position(|w| x <= w[1].0)
                    .unwrap_or(samples.len() - 2);
                let (s0, ref v0) = samples[i];
                let (s1, ref v1) = samples[i + 1];
                let u = if s1 > s0 { (x - s0) / (s1 - s0) } else { 0.0 };
                Ok(v0
                    .iter()
                    .zip(v1)
                    .map(|(a, b)| a * (1.0 - u) + b * u)
                    .collect())
            }
        }
    }
}

/// Z(Q) = sum_i q_i Pi_i(t).
pub fn central_charge(q: &Charge, t: ModuliPoint, p: &PeriodModel) -> Result<Complex64> {
    let periods = p.eval(t)?;
    if periods.len() != q.len() {
        return Err(Error::LengthMismatch(format!(
            "charge has {} entries, period model rank {}",
            q.len(),
            periods.len()
        )));
    }
    Ok(q
        .0
        .iter()
        .zip(&periods)
        .map(|(&qi, pi)| pi * qi as f64)
        .sum())
}

/// |Z(Q)|, the minimal mass of a brane of charge Q. Zero is allowed here.
pub fn bps_mass_bound(q: &Charge, t: ModuliPoint, p: &PeriodModel) -> Result<f64> {
    Ok(central_charge(q, t, p)?.norm())
}

/// Default tolerance below which |Z| counts as massless.
pub const MASSLESS_TOL: f64 = 1e-12;

fn phase_of(z: Complex64, massless_tol: f64, at: f64) -> Result<f64> {
    if z.norm() < massless_tol {
        return Err(Error::MasslessCharge {
            mass: z.norm(),
            at,
        });
    }
    Ok((z.arg() / std::f64::consts::PI).rem_euclid(2.0))
}

/// phi = (1/pi) arg Z, mapped into [0, 2).
pub fn phase_principal(q: &Charge, t: ModuliPoint, p: &PeriodModel, massless_tol: f64) -> Result<f64> {
    let z = central_charge(q, t, p)?;
    phase_of(z, massless_tol, f64::NAN)
}

/// Parameterized path in moduli space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PathKind {
    Segment {
        from: Complex64,
        to: Complex64,
    },
    Arc {
        center: Complex64,
        radius: f64,
        angle_start: f64,
        angle_end: f64,
    },
    Polyline {
        points: Vec<Complex64>,
    },
}

/// A path t(s), s in [0, 1], with an initial sample grid. Refinement during
/// phase lifting inserts additional samples between grid points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModuliPath {
    pub kind: PathKind,
    pub samples: Vec<f64>,
}

impl ModuliPath {
    /// Uniform grid with `n` intervals (n + 1 samples).
    pub fn new(kind: PathKind, n: usize) -> Self {
        let n = n.max(1);
        let samples = (0..=n).map(|i| i as f64 / n as f64).collect();
        ModuliPath { kind, samples }
    }

    pub fn segment(from: Complex64, to: Complex64, n: usize) -> Self {
        ModuliPath::new(PathKind::Segment { from, to }, n)
    }

    pub fn arc(center: Complex64, radius: f64, angle_start: f64, angle_end: f64, n: usize) -> Self {
        ModuliPath::new(
            PathKind::Arc {
                center,
                radius,
                angle_start,
                angle_end,
            },
            n,
        )
    }

    pub fn point(&self, s: f64) -> Complex64 {
        match &self.kind {
            PathKind::Segment { from, to } => from + (to - from) * s,
            PathKind::Arc {
                center,
                radius,
                angle_start,
                angle_end,
            } => {
                let a = angle_start + (angle_end - angle_start) * s;
                center + Complex64::from_polar(*radius, a)
            }
            PathKind::Polyline { points } => {
                let edges = points.len().saturating_sub(1).max(1);
                let x = (s * edges as f64).clamp(0.0, edges as f64);
                let i = (x.floor() as usize).min(edges - 1);
                let u = x - i as f64;
                points[i] + (points[i + 1] - points[i]) * u
            }
        }
    }

    pub fn start(&self) -> Complex64 {
        self.point(0.0)
    }

    pub fn end(&self) -> Complex64 {
        self.point(1.0)
    }

    pub fn is_closed(&self, tol: f64) -> bool {
        (self.end() - self.start()).norm() <= tol
    }

    /// Same geometry traversed backwards, with the mirrored sample grid.
    pub fn reversed(&self) -> ModuliPath {
        let kind = match &self.kind {
            PathKind::Segment { from, to } => PathKind::Segment {
                from: *to,
                to: *from,
            },
            PathKind::Arc {
                center,
                radius,
                angle_start,
                angle_end,
            } => PathKind::Arc {
                center: *center,
                radius: *radius,
                angle_start: *angle_end,
                angle_end: *angle_start,
            },
            PathKind::Polyline { points } => PathKind::Polyline {
                points: points.iter().rev().copied().collect(),
            },
        };
        let mut samples: Vec<f64> = self.samples.iter().map(|s| 1.0 - s).collect();
        samples.reverse();
        ModuliPath { kind, samples }
    }
}

/// One sample of a lifted phase: phi = principal + 2 * branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LiftSample {
    pub s: f64,
    pub principal: f64,
    pub branch: i64,
}

impl LiftSample {
    pub fn phi(&self) -> f64 {
        self.principal + 2.0 * self.branch as f64
    }
}

/// A branch-continuous phase along a path; consecutive samples differ by
/// less than the refinement step bound.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseLift {
    pub samples: Vec<LiftSample>,
}

impl PhaseLift {
    pub fn start_phi(&self) -> f64 {
        self.samples[0].phi()
    }

    pub fn end_phi(&self) -> f64 {
        self.samples[self.samples.len() - 1].phi()
    }

    pub fn delta(&self) -> f64 {
        self.end_phi() - self.start_phi()
    }

    /// Lifted phase at an exact sample parameter, if present.
    pub fn phi_at_sample(&self, s: f64) -> Option<f64> {
        self.samples
            .binary_search_by(|probe| probe.s.partial_cmp(&s).unwrap())
            .ok()
            .map(|i| self.samples[i].phi())
    }

    /// Lifted phase at an arbitrary parameter by linear interpolation.
    pub fn phi_at(&self, s: f64) -> f64 {
        if let Some(phi) = self.phi_at_sample(s) {
            return phi;
        }
        let i = self
            .samples
            .windows(2)
            .position(|w| s <= w[1].s)
            .unwrap_or(self.samples.len() - 2);
        let (a, b) = (self.samples[i], self.samples[i + 1]);
        let u = if b.s > a.s { (s - a.s) / (b.s - a.s) } else { 0.0 };
        a.phi() + (b.phi() - a.phi()) * u
    }
}

/// Maximum allowed |phi step| before a segment is bisected; any value below 1
/// makes the nearest-branch choice unambiguous.
pub const MAX_PHASE_STEP: f64 = 0.25;
/// Bisection depth limit per path segment.
pub const MAX_REFINE_DEPTH: u32 = 40;

/// Lift the phase of Z(Q) continuously along the path, starting from the
/// principal value at the start. Each step picks the branch closest to the
/// previous lifted value and bisects the segment until steps stay below
/// [`MAX_PHASE_STEP`].
pub fn lift_phase(
    q: &Charge,
    path: &ModuliPath,
    p: &PeriodModel,
    massless_tol: f64,
) -> Result<PhaseLift> {
    if path.samples.len() < 2 {
        return Err(Error::Domain("path needs at least two samples".into()));
    }
    let principal_at = |s: f64| -> Result<f64> {
        let z = central_charge(q, path.point(s), p)?;
        phase_of(z, massless_tol, s)
    };
    let s0 = path.samples[0];
    let first = LiftSample {
        s: s0,
        principal: principal_at(s0)?,
        branch: 0,
    };
    let mut out = vec![first];
    for w in path.samples.windows(2) {
        extend_lift(&principal_at, &mut out, w[0], w[1], 0)?;
    }
    Ok(PhaseLift { samples: out })
}

fn extend_lift(
    principal_at: &dyn Fn(f64) -> Result<f64>,
    out: &mut Vec<LiftSample>,
    s_prev: f64,
    s_next: f64,
    depth: u32,
) -> Result<()> {
    let prev = *out.last().expect("lift starts nonempty");
    let principal = principal_at(s_next)?;
    // nearest branch to the previous lifted value
    let branch = ((prev.phi() - principal) / 2.0).round() as i64;
    let step = principal + 2.0 * branch as f64 - prev.phi();
    if step.abs() < MAX_PHASE_STEP {
        out.push(LiftSample {
            s: s_next,
            principal,
            branch,
        });
        return Ok(());
    }
    if depth >= MAX_REFINE_DEPTH {
        return Err(Error::RefinementExhausted {
            depth,
            at: s_next,
        });
    }
    let mid = 0.5 * (s_prev + s_next);
    extend_lift(principal_at, out, s_prev, mid, depth + 1)?;
    extend_lift(principal_at, out, mid, s_next, depth + 1)
}
