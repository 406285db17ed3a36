//! The four stability notions: classical slope stability, King-style theta
//! stability on quiver representations, Pi-stability against a central
//! charge, and the deformed slope coming from the Born-Infeld action.
//!
//! Subobjects are always supplied from the outside (for quiver reps, the
//! subrepresentation enumeration mapped through a charge basis); the verdicts
//! here are pure comparisons. `Stable` requires strict inequality for every
//! proper nonzero subobject, `Semistable` allows equality, and `Unstable`
//! carries a maximizing witness.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::central_charge::{
    lift_phase, phase_principal, Charge, ModuliPath, ModuliPoint, PeriodModel,
};
use crate::error::Error;
use crate::linalg::Rat;
use crate::orbifold::rat_to_f64;
use crate::rep::{enumerate_subrep_dimvectors, DimensionVector, QuiverRep, SubrepOptions};
use crate::Result;

/// Pre-integrated Chern character numbers: ch[0] is the rank, ch[k] the
/// degree-k pairing against powers of the Kaehler class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChernData {
    #[serde(with = "crate::linalg::rat_vec_str")]
    pub ch: Vec<Rat>,
}

impl ChernData {
    pub fn new(ch: Vec<Rat>) -> Result<Self> {
        if ch.is_empty() || ch.len() > 4 {
            return Err(Error::LengthMismatch(format!(
                "Chern data must carry 1..=4 entries, got {}",
                ch.len()
            )));
        }
        Ok(ChernData { ch })
    }

    pub fn from_i64(ch: &[i64]) -> Result<Self> {
        ChernData::new(ch.iter().map(|&x| Rat::from_integer(x.into())).collect())
    }

    pub fn rank(&self) -> &Rat {
        &self.ch[0]
    }

    pub fn c1(&self) -> Rat {
        self.ch.get(1).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn pairing(&self, k: usize) -> Rat {
        self.ch.get(k).cloned().unwrap_or_else(Rat::zero)
    }
}

/// Moment-map levels of the GIT quotient, one rational entry per quiver node.
pub type ThetaVector = Vec<Rat>;

/// Outcome of a stability test, generic over the witness type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "witness", rename_all = "lowercase")]
pub enum Verdict<W> {
    Stable,
    Semistable(W),
    Unstable(W),
}

impl<W> Verdict<W> {
    pub fn is_stable(&self) -> bool {
        matches!(self, Verdict::Stable)
    }

    pub fn is_unstable(&self) -> bool {
        matches!(self, Verdict::Unstable(_))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::Stable => "stable",
            Verdict::Semistable(_) => "semistable",
            Verdict::Unstable(_) => "unstable",
        }
    }
}

/// Slope c1 / rank as an exact rational.
pub fn mu_slope(c: &ChernData) -> Result<Rat> {
    if c.rank().is_zero() {
        return Err(Error::ZeroRank);
    }
    Ok(c.c1() / c.rank())
}

/// Slope stability: strict inequality mu(E') < mu(E) for every supplied
/// subobject. The unstable witness maximizes the slope.
pub fn is_mu_stable(c: &ChernData, subobjects: &[ChernData]) -> Result<Verdict<ChernData>> {
    if !c.rank().is_positive() {
        return Err(Error::ZeroRank);
    }
    let mu = mu_slope(c)?;
    let mut equal: Option<&ChernData> = None;
    let mut worst: Option<(&ChernData, Rat)> = None;
    for sub in subobjects {
        if !sub.rank().is_positive() {
            return Err(Error::ZeroRank);
        }
        let mu_sub = mu_slope(sub)?;
        if mu_sub > mu {
            let replace = match &worst {
                Some((_, m)) => mu_sub > *m,
                None => true,
            };
            if replace {
                worst = Some((sub, mu_sub));
            }
        } else if mu_sub == mu && equal.is_none() {
            equal = Some(sub);
        }
    }
    Ok(match (worst, equal) {
        (Some((w, _)), _) => Verdict::Unstable(w.clone()),
        (None, Some(e)) => Verdict::Semistable(e.clone()),
        (None, None) => Verdict::Stable,
    })
}

/// Linear pairing theta . d.
pub fn theta_pairing(theta: &ThetaVector, d: &DimensionVector) -> Result<Rat> {
    if theta.len() != d.len() {
        return Err(Error::LengthMismatch(format!(
            "theta has {} entries, dimension vector {}",
            theta.len(),
            d.len()
        )));
    }
    Ok(theta
        .iter()
        .zip(d)
        .map(|(t, &di)| t * Rat::from_integer(BigInt::from(di)))
        .fold(Rat::zero(), |acc, x| acc + x))
}

fn require_valid_rep(rep: &QuiverRep) -> Result<()> {
    let violated = crate::rep::check_relations(rep)?;
    if violated.is_empty() {
        Ok(())
    } else {
        Err(Error::RelationsViolated {
            count: violated.len(),
        })
    }
}

/// King-style GIT stability: theta . d = 0 on the object and theta . d' < 0
/// on every proper nonzero subrepresentation dimension vector. Only
/// relation-satisfying representations are admitted.
pub fn is_theta_stable(
    rep: &QuiverRep,
    theta: &ThetaVector,
    opts: &SubrepOptions,
) -> Result<Verdict<DimensionVector>> {
    require_valid_rep(rep)?;
    let norm = theta_pairing(theta, &rep.dims)?;
    if !norm.is_zero() {
        return Err(Error::NormalizationError {
            value: norm.to_string(),
        });
    }
    let subs = enumerate_subrep_dimvectors(rep, opts)?;
    let zero = vec![0usize; rep.dims.len()];
    let mut equal: Option<DimensionVector> = None;
    let mut worst: Option<(DimensionVector, Rat)> = None;
    for d in subs {
        if d == zero || d == rep.dims {
            continue;
        }
        let pairing = theta_pairing(theta, &d)?;
        if pairing.is_positive() {
            let replace = match &worst {
                Some((_, p)) => pairing > *p,
                None => true,
            };
            if replace {
                worst = Some((d, pairing));
            }
        } else if pairing.is_zero() && equal.is_none() {
            equal = Some(d);
        }
    }
    Ok(match (worst, equal) {
        (Some((w, _)), _) => Verdict::Unstable(w),
        (None, Some(e)) => Verdict::Semistable(e),
        (None, None) => Verdict::Stable,
    })
}

/// Integer change of basis from dimension vectors to charge-lattice vectors:
/// rows are quiver nodes, columns the K-theory basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeMap(pub Vec<Vec<i64>>);

impl ChargeMap {
    pub fn identity(n: usize) -> Self {
        ChargeMap(
            (0..n)
                .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
                .collect(),
        )
    }

    pub fn nodes(&self) -> usize {
        self.0.len()
    }

    pub fn rank(&self) -> usize {
        self.0.first().map_or(0, Vec::len)
    }

    pub fn apply(&self, d: &DimensionVector) -> Result<Charge> {
        if d.len() != self.nodes() {
            return Err(Error::LengthMismatch(format!(
                "dimension vector has {} entries, charge map {} rows",
                d.len(),
                self.nodes()
            )));
        }
        let m = self.rank();
        let mut q = vec![0i64; m];
        for (di, row) in d.iter().zip(&self.0) {
            for (qj, &mij) in q.iter_mut().zip(row) {
                *qj += *di as i64 * mij;
            }
        }
        Ok(Charge(q))
    }
}

/// Pi-stability outcome with the phases that decided it.
#[derive(Debug, Clone, PartialEq)]
pub struct PiVerdict {
    pub verdict: Verdict<Charge>,
    pub object_phase: f64,
    pub witness_phase: Option<f64>,
}

impl PiVerdict {
    /// JSON shape: {verdict, witness?, phases:{object, witness?}}.
    pub fn to_json(&self) -> serde_json::Value {
        let mut phases = serde_json::json!({ "object": self.object_phase });
        if let Some(wp) = self.witness_phase {
            phases["witness"] = serde_json::json!(wp);
        }
        let mut out = serde_json::json!({
            "verdict": self.verdict.kind(),
            "phases": phases,
        });
        match &self.verdict {
            Verdict::Semistable(w) | Verdict::Unstable(w) => {
                out["witness"] = serde_json::json!(w.0);
            }
            Verdict::Stable => {}
        }
        out
    }
}

/// Default tolerance for phase comparisons.
pub const PHASE_TOL: f64 = 1e-9;

fn classify_phases(
    object: (f64, &Charge),
    subphases: &[(f64, Charge)],
    tol: f64,
) -> PiVerdict {
    let (phi, q) = object;
    let mut marginal: Option<(f64, Charge)> = None;
    let mut worst: Option<(f64, Charge)> = None;
    for (phi_sub, q_sub) in subphases {
        if q_sub.is_zero() || q_sub == q {
            continue;
        }
        let d = phi_sub - phi;
        if d > tol {
            let replace = match &worst {
                Some((p, _)) => *phi_sub > *p,
                None => true,
            };
            if replace {
                worst = Some((*phi_sub, q_sub.clone()));
            }
        } else if d.abs() <= tol && marginal.is_none() {
            marginal = Some((*phi_sub, q_sub.clone()));
        }
    }
    match (worst, marginal) {
        (Some((p, w)), _) => PiVerdict {
            verdict: Verdict::Unstable(w),
            object_phase: phi,
            witness_phase: Some(p),
        },
        (None, Some((p, w))) => PiVerdict {
            verdict: Verdict::Semistable(w),
            object_phase: phi,
            witness_phase: Some(p),
        },
        (None, None) => PiVerdict {
            verdict: Verdict::Stable,
            object_phase: phi,
            witness_phase: None,
        },
    }
}

/// Pi-stability at a point, comparing principal phases: stable iff every
/// proper nonzero subcharge has strictly smaller phase (within `tol`);
/// marginal when some subcharge phase ties.
pub fn is_pi_stable(
    object: &Charge,
    subcharges: &[Charge],
    t: ModuliPoint,
    p: &PeriodModel,
    massless_tol: f64,
    tol: f64,
) -> Result<PiVerdict> {
    let phi = phase_principal(object, t, p, massless_tol)?;
    let mut subphases = Vec::with_capacity(subcharges.len());
    for q in subcharges {
        if q.is_zero() || q == object {
            continue;
        }
        subphases.push((phase_principal(q, t, p, massless_tol)?, q.clone()));
    }
    Ok(classify_phases((phi, object), &subphases, tol))
}

/// Pi-stability with lifted phases: phases are transported along the path
/// and compared at its endpoint, making the verdict path-dependent data.
pub fn is_pi_stable_lifted(
    object: &Charge,
    subcharges: &[Charge],
    path: &ModuliPath,
    p: &PeriodModel,
    massless_tol: f64,
    tol: f64,
) -> Result<PiVerdict> {
    let phi = lift_phase(object, path, p, massless_tol)?.end_phi();
    let mut subphases = Vec::with_capacity(subcharges.len());
    for q in subcharges {
        if q.is_zero() || q == object {
            continue;
        }
        subphases.push((lift_phase(q, path, p, massless_tol)?.end_phi(), q.clone()));
    }
    Ok(classify_phases((phi, object), &subphases, tol))
}

/// Pi-stability of a concrete representation: subobjects are its
/// subrepresentation dimension vectors mapped through the charge basis.
/// Only relation-satisfying representations are admitted.
pub fn pi_stability_of_rep(
    rep: &QuiverRep,
    charge_map: &ChargeMap,
    t: ModuliPoint,
    p: &PeriodModel,
    massless_tol: f64,
    tol: f64,
    opts: &SubrepOptions,
) -> Result<PiVerdict> {
    require_valid_rep(rep)?;
    let object = charge_map.apply(&rep.dims)?;
    let zero = vec![0usize; rep.dims.len()];
    let mut subcharges = Vec::new();
    for d in enumerate_subrep_dimvectors(rep, opts)? {
        if d == zero || d == rep.dims {
            continue;
        }
        let q = charge_map.apply(&d)?;
        if !subcharges.contains(&q) {
            subcharges.push(q);
        }
    }
    is_pi_stable(&object, &subcharges, t, p, massless_tol, tol)
}

/// Exact real and imaginary parts of sum_k C(d,k) omega^(d-k) (i ls^2)^k p_k,
/// the integrand trace of the deformed-slope condition.
pub fn mmms_expansion(c: &ChernData, omega: &Rat, l_s: &Rat, d: u32) -> (Rat, Rat) {
    let ls2 = l_s * l_s;
    let mut re = Rat::zero();
    let mut im = Rat::zero();
    for k in 0..=d {
        let b: BigInt = binomial(BigInt::from(d), BigInt::from(k));
        let mut term = Rat::from_integer(b);
        for _ in 0..(d - k) {
            term *= omega;
        }
        for _ in 0..k {
            term *= &ls2;
        }
        term *= &c.pairing(k as usize);
        match k % 4 {
            0 => re += term,
            1 => im += term,
            2 => re -= term,
            _ => im -= term,
        }
    }
    (re, im)
}

/// Deformed slope Im[e^{i theta} Tr (omega + i ls^2 F)^d] evaluated on
/// pre-integrated Chern numbers: exact binomial expansion, then a single
/// floating-point rotation by theta.
pub fn mmms_slope(c: &ChernData, omega: f64, theta: f64, d: u32, l_s: f64) -> f64 {
    let omega_exact = BigRational::from_float(omega).unwrap_or_else(Rat::zero);
    let ls_exact = BigRational::from_float(l_s).unwrap_or_else(Rat::zero);
    let (re, im) = mmms_expansion(c, &omega_exact, &ls_exact, d);
    theta.cos() * rat_to_f64(&im) + theta.sin() * rat_to_f64(&re)
}

/// Chern data read off a charge in the large-volume period basis
/// Pi = (1, t, t^2/2): the components are (ch2, -c1, rank), with the middle
/// entry oriented so that phase ordering matches slope ordering as the
/// imaginary part of t grows.
pub fn chern_from_large_volume_charge(q: &Charge) -> Result<ChernData> {
    if q.len() != 3 {
        return Err(Error::LengthMismatch(format!(
            "large-volume charges have 3 components, got {}",
            q.len()
        )));
    }
    ChernData::from_i64(&[q.0[2], -q.0[1], q.0[0]])
}

/// The bundled large-volume period preset Pi(t) = (1, t, t^2/2).
pub fn large_volume_periods() -> PeriodModel {
    use num_complex::Complex64;
    PeriodModel::polynomial(vec![
        vec![Complex64::new(1.0, 0.0)],
        vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.5, 0.0),
        ],
    ])
}

/// Used by tests and the spectrum sweep: alignment of phase ordering with
/// slope ordering for a pair of positive-rank charges at a point.
pub fn phase_and_slope_signs(
    e: &Charge,
    e_prime: &Charge,
    t: ModuliPoint,
    p: &PeriodModel,
) -> Result<(f64, Rat)> {
    let phi = phase_principal(e, t, p, crate::central_charge::MASSLESS_TOL)?;
    let phi_p = phase_principal(e_prime, t, p, crate::central_charge::MASSLESS_TOL)?;
    let mu = mu_slope(&chern_from_large_volume_charge(e)?)?;
    let mu_p = mu_slope(&chern_from_large_volume_charge(e_prime)?)?;
    Ok((phi_p - phi, mu_p - mu))
}
