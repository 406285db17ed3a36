//! McKay quivers for abelian orbifolds of C^3 and the linear sigma model
//! phase structure.
//!
//! Nodes of the quiver are the characters of Z_n; arrows come from tensoring
//! with the three-dimensional defining representation, so node `i` gets one
//! outgoing arrow per coordinate weight. The quadratic relations are the
//! cyclic-superpotential derivatives, which reduce to commutators for the
//! trivial group.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::Rat;
use crate::Result;

/// An abelian orbifold C^3/Z_n with coordinate weights (a1, a2, a3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbifoldSpec {
    pub order: u32,
    /// Weights reduced into [0, n).
    pub weights: [u32; 3],
}

impl OrbifoldSpec {
    /// Validates n >= 1 and a1 + a2 + a3 = 0 mod n, reducing weights mod n.
    pub fn new(order: u32, weights: [i64; 3]) -> Result<Self> {
        if order == 0 {
            return Err(Error::WeightSum { order, sum: 0 });
        }
        let n = i64::from(order);
        let reduced = weights.map(|w| w.rem_euclid(n) as u32);
        let sum = reduced.iter().map(|&w| i64::from(w)).sum::<i64>();
        if sum % n != 0 {
            return Err(Error::WeightSum { order, sum });
        }
        Ok(OrbifoldSpec {
            order,
            weights: reduced,
        })
    }
}

/// One quiver arrow, labelled by the C^3 coordinate (1, 2, or 3) it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub src: usize,
    pub dst: usize,
    pub label: u8,
}

/// A length-2 path: arrow indices in traversal order (first traversed first).
pub type Path2 = [usize; 2];

/// A quadratic relation `lhs - rhs = 0` between two length-2 paths sharing
/// source and target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation(pub Path2, pub Path2);

impl Relation {
    pub fn lhs(&self) -> Path2 {
        self.0
    }
    pub fn rhs(&self) -> Path2 {
        self.1
    }
}

/// McKay quiver: nodes are Z_n characters, arrows the defining-representation
/// tensor decomposition, relations the superpotential derivatives.
///
/// The struct is also usable as a plain quiver container (see
/// [`McKayQuiver::from_parts`]) so that representation and stability code can
/// run on hand-built test quivers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct McKayQuiver {
    #[serde(rename = "nodes")]
    pub node_count: usize,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
}

impl McKayQuiver {
    /// Arbitrary quiver from explicit data; checks structural sanity only.
    pub fn from_parts(
        node_count: usize,
        arrows: Vec<Arrow>,
        relations: Vec<Relation>,
    ) -> Result<Self> {
        let q = McKayQuiver {
            node_count,
            arrows,
            relations,
        };
        q.check_structure()?;
        Ok(q)
    }

    fn check_structure(&self) -> Result<()> {
        for (i, a) in self.arrows.iter().enumerate() {
            if a.src >= self.node_count || a.dst >= self.node_count {
                return Err(Error::ShapeMismatch(format!(
                    "arrow {i} endpoints out of range"
                )));
            }
        }
        for (i, r) in self.relations.iter().enumerate() {
            let (l, r2) = (r.lhs(), r.rhs());
            for &idx in l.iter().chain(r2.iter()) {
                if idx >= self.arrows.len() {
                    return Err(Error::ShapeMismatch(format!(
                        "relation {i} references arrow {idx} out of range"
                    )));
                }
            }
            let (ls, lt) = self.path_endpoints(l)?;
            let (rs, rt) = self.path_endpoints(r2)?;
            if (ls, lt) != (rs, rt) {
                return Err(Error::ShapeMismatch(format!(
                    "relation {i} paths have different endpoints"
                )));
            }
        }
        Ok(())
    }

    /// (source, target) of a length-2 path, checking composability.
    pub fn path_endpoints(&self, p: Path2) -> Result<(usize, usize)> {
        let first = self.arrows[p[0]];
        let second = self.arrows[p[1]];
        if first.dst != second.src {
            return Err(Error::ShapeMismatch(format!(
                "path {p:?} is not composable"
            )));
        }
        Ok((first.src, second.dst))
    }

    pub fn out_degree(&self, node: usize) -> usize {
        self.arrows.iter().filter(|a| a.src == node).count()
    }

    pub fn in_degree(&self, node: usize) -> usize {
        self.arrows.iter().filter(|a| a.dst == node).count()
    }
}

/// Builds the McKay quiver of `spec`: n nodes and, for each node i and label
/// k, one arrow i -> (i + a_k) mod n. Arrows are sorted by (node, label), so
/// arrow (i, k) has index 3*i + k - 1. Relations are left empty; see
/// [`superpotential_relations`].
pub fn build_mckay_quiver(spec: &OrbifoldSpec) -> Result<McKayQuiver> {
    // Re-validate: specs can arrive from config files.
    let spec = OrbifoldSpec::new(spec.order, spec.weights.map(i64::from))?;
    let n = spec.order as usize;
    let mut arrows = Vec::with_capacity(3 * n);
    for i in 0..n {
        for (k, &w) in spec.weights.iter().enumerate() {
            arrows.push(Arrow {
                src: i,
                dst: (i + w as usize) % n,
                label: (k + 1) as u8,
            });
        }
    }
    Ok(McKayQuiver {
        node_count: n,
        arrows,
        relations: Vec::new(),
    })
}

fn arrow_index(node: usize, label: usize) -> usize {
    3 * node + label - 1
}

/// Quadratic relations from the cyclic superpotential
/// W = Tr(x1 x2 x3 - x1 x3 x2): for each node i and label pair {a, b},
/// (arrow b at i+w_a) o (arrow a at i) - (arrow a at i+w_b) o (arrow b at i).
/// For the trivial group these are the commutators of the three loops.
///
/// Expects a quiver produced by [`build_mckay_quiver`]; the weights are read
/// back off the arrows at node 0.
pub fn superpotential_relations(q: &McKayQuiver) -> Result<Vec<Relation>> {
    let n = q.node_count;
    if q.arrows.len() != 3 * n || n == 0 {
        return Err(Error::ShapeMismatch(
            "quiver does not have the 3n arrows of a McKay quiver".into(),
        ));
    }
    let w: Vec<usize> = (1..=3).map(|k| q.arrows[arrow_index(0, k)].dst).collect();
    for i in 0..n {
        for k in 1..=3 {
            let a = q.arrows[arrow_index(i, k)];
            if a.src != i || a.label != k as u8 || a.dst != (i + w[k - 1]) % n {
                return Err(Error::ShapeMismatch(
                    "arrows are not in McKay (node, label) order".into(),
                ));
            }
        }
    }
    let mut relations = Vec::with_capacity(3 * n);
    for i in 0..n {
        for (a, b) in [(1, 2), (1, 3), (2, 3)] {
            let lhs = [arrow_index(i, a), arrow_index((i + w[a - 1]) % n, b)];
            let rhs = [arrow_index(i, b), arrow_index((i + w[b - 1]) % n, a)];
            relations.push(Relation(lhs, rhs));
        }
    }
    Ok(relations)
}

/// Convenience: quiver with relations populated.
pub fn mckay_quiver_with_relations(spec: &OrbifoldSpec) -> Result<McKayQuiver> {
    let mut q = build_mckay_quiver(spec)?;
    q.relations = superpotential_relations(&q)?;
    q.check_structure()?;
    Ok(q)
}

/// Linear sigma model data: a U(1) action on C^6 with weights w_i and
/// Fayet-Iliopoulos parameter mu.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearSigmaSpec {
    pub weights: [i64; 6],
    pub mu: f64,
}

impl LinearSigmaSpec {
    /// Validates w1..w5 >= 0 and sum of all six weights = 0.
    pub fn new(weights: [i64; 6], mu: f64) -> Result<Self> {
        if weights[..5].iter().any(|&w| w < 0) {
            return Err(Error::LsmWeights("w1..w5 must be nonnegative".into()));
        }
        let sum: i64 = weights.iter().sum();
        if sum != 0 {
            return Err(Error::LsmWeights(format!("weights sum to {sum}, not 0")));
        }
        Ok(LinearSigmaSpec { weights, mu })
    }
}

/// Moment map of the U(1) action: -mu + sum_i w_i |z_i|^2.
pub fn moment_map_value(z: &[Complex64; 6], spec: &LinearSigmaSpec) -> f64 {
    -spec.mu
        + spec
            .weights
            .iter()
            .zip(z)
            .map(|(&w, zi)| w as f64 * zi.norm_sqr())
            .sum::<f64>()
}

/// Which side of the phase boundary a linear sigma model sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Phase {
    Geometric,
    LandauGinzburg,
    Boundary,
}

/// mu > 0 is the geometric phase, mu < 0 Landau-Ginzburg, mu = 0 the wall.
pub fn classify_phase(spec: &LinearSigmaSpec) -> Phase {
    if spec.mu > 0.0 {
        Phase::Geometric
    } else if spec.mu < 0.0 {
        Phase::LandauGinzburg
    } else {
        Phase::Boundary
    }
}

/// Sparse polynomial in z1..z5 with rational coefficients, one entry per
/// monomial: (coefficient, exponents).
#[derive(Debug, Clone, Default)]
pub struct SparsePoly {
    pub terms: Vec<(Rat, [u32; 5])>,
}

impl SparsePoly {
    pub fn eval(&self, z: &[Complex64; 5]) -> Complex64 {
        self.terms
            .iter()
            .map(|(c, exps)| {
                let mono = exps
                    .iter()
                    .zip(z)
                    .fold(Complex64::new(1.0, 0.0), |acc, (&e, zi)| {
                        acc * zi.powu(e)
                    });
                rat_to_f64(c) * mono
            })
            .sum()
    }

    /// Partial derivative with respect to z_{i+1}, evaluated at z.
    pub fn eval_partial(&self, i: usize, z: &[Complex64; 5]) -> Complex64 {
        self.terms
            .iter()
            .filter(|(_, exps)| exps[i] > 0)
            .map(|(c, exps)| {
                let mut mono = Complex64::new(f64::from(exps[i]), 0.0);
                for (j, (&e, zj)) in exps.iter().zip(z).enumerate() {
                    let e = if j == i { e - 1 } else { e };
                    mono *= zj.powu(e);
                }
                rat_to_f64(c) * mono
            })
            .sum()
    }
}

pub(crate) fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// True iff all six partials of W = z6 * f(z1..z5) vanish at z within `tol`
/// (exact zero when the inputs are exact). The partials reduce to f(z) = 0
/// and z6 * grad f = 0.
pub fn critical_locus_check(z: &[Complex64; 6], f: &SparsePoly, tol: f64) -> bool {
    let head: [Complex64; 5] = [z[0], z[1], z[2], z[3], z[4]];
    let z6 = z[5];
    if f.eval(&head).norm() > tol {
        return false;
    }
    (0..5).all(|i| (z6 * f.eval_partial(i, &head)).norm() <= tol)
}

pub const CRITICAL_LOCUS_TOL: f64 = 1e-12;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, rat_int};
    use num_traits::{One, Zero};

    /// Independent oracle: arrow multiplicities from the character pairing
    /// m_ij = (1/n) sum_g chi_def(g) zeta^{ig} conj(zeta^{jg}), computed with
    /// complex roots of unity rather than index arithmetic.
    fn character_multiplicities(n: usize, weights: [u32; 3]) -> Vec<Vec<usize>> {
        let tau = std::f64::consts::TAU / n as f64;
        let zeta = |e: f64| Complex64::new(0.0, e * tau).exp();
        let mut m = vec![vec![0usize; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let mut acc = Complex64::zero();
                for g in 0..n {
                    let chi_def: Complex64 = weights
                        .iter()
                        .map(|&a| zeta((a as usize * g) as f64))
                        .sum();
                    acc += chi_def * zeta((i * g) as f64) * zeta((j * g) as f64).conj();
                }
                let val = acc.re / n as f64;
                assert!(
                    (val - val.round()).abs() < 1e-6 && acc.im.abs() < 1e-6,
                    "character sum should be a real integer"
                );
                *entry = val.round() as usize;
            }
        }
        m
    }

    fn arrow_counts(q: &McKayQuiver) -> Vec<Vec<usize>> {
        let mut m = vec![vec![0usize; q.node_count]; q.node_count];
        for a in &q.arrows {
            m[a.src][a.dst] += 1;
        }
        m
    }

    #[test]
    fn z3_quiver_structure() {
        let spec = OrbifoldSpec::new(3, [1, 1, 1]).unwrap();
        let q = mckay_quiver_with_relations(&spec).unwrap();
        assert_eq!(q.node_count, 3);
        assert_eq!(q.arrows.len(), 9);
        assert_eq!(q.relations.len(), 9);
        assert!(q.arrows.iter().all(|a| a.dst == (a.src + 1) % 3));
        for i in 0..3 {
            assert_eq!(q.out_degree(i), 3);
            assert_eq!(q.in_degree(i), 3);
        }
    }

    #[test]
    fn trivial_group_quiver() {
        let spec = OrbifoldSpec::new(1, [0, 0, 0]).unwrap();
        let q = mckay_quiver_with_relations(&spec).unwrap();
        assert_eq!(q.node_count, 1);
        assert_eq!(q.arrows.len(), 3);
        assert!(q.arrows.iter().all(|a| a.src == 0 && a.dst == 0));
        assert_eq!(q.relations.len(), 3);
    }

    #[test]
    fn z5_122_matches_character_oracle() {
        let spec = OrbifoldSpec::new(5, [1, 2, 2]).unwrap();
        let q = build_mckay_quiver(&spec).unwrap();
        assert_eq!(q.arrows.len(), 15);
        let counts = arrow_counts(&q);
        let oracle = character_multiplicities(5, spec.weights);
        assert_eq!(counts, oracle);
        // one arrow i -> i+1, two arrows i -> i+2 per node
        for i in 0..5 {
            assert_eq!(counts[i][(i + 1) % 5], 1);
            assert_eq!(counts[i][(i + 2) % 5], 2);
        }
    }

    #[test]
    fn invalid_weight_sum_rejected() {
        assert!(OrbifoldSpec::new(3, [1, 1, 2]).is_err());
        assert!(OrbifoldSpec::new(0, [0, 0, 0]).is_err());
        // negative weights reduce mod n first
        let spec = OrbifoldSpec::new(3, [-1, -1, 2]).unwrap();
        assert_eq!(spec.weights, [2, 2, 2]);
    }

    #[test]
    fn relations_share_endpoints_on_random_specs() {
        for n in 1..=12u32 {
            for a1 in 0..n {
                for a2 in 0..n {
                    let a3 = (2 * n - (a1 + a2) % n) % n;
                    let spec =
                        OrbifoldSpec::new(n, [i64::from(a1), i64::from(a2), i64::from(a3)])
                            .unwrap();
                    let q = mckay_quiver_with_relations(&spec).unwrap();
                    assert_eq!(q.relations.len(), 3 * n as usize);
                    for r in &q.relations {
                        let l = q.path_endpoints(r.lhs()).unwrap();
                        let rr = q.path_endpoints(r.rhs()).unwrap();
                        assert_eq!(l, rr);
                    }
                }
            }
        }
    }

    #[test]
    fn node_translation_is_a_quiver_isomorphism() {
        let spec = OrbifoldSpec::new(6, [1, 2, 3]).unwrap();
        let q = build_mckay_quiver(&spec).unwrap();
        let n = q.node_count;
        for c in 0..n {
            // translate every arrow and re-sort by (src, label)
            let mut translated: Vec<Arrow> = q
                .arrows
                .iter()
                .map(|a| Arrow {
                    src: (a.src + c) % n,
                    dst: (a.dst + c) % n,
                    label: a.label,
                })
                .collect();
            translated.sort_by_key(|a| (a.src, a.label));
            assert_eq!(translated, q.arrows);
        }
    }

    #[test]
    fn moment_map_values() {
        let spec = LinearSigmaSpec::new([1, 1, 1, 1, 1, -5], 1.0).unwrap();
        let zero = [Complex64::zero(); 6];
        assert_eq!(moment_map_value(&zero, &spec), -1.0);

        let mut z = [Complex64::zero(); 6];
        z[0] = Complex64::one();
        assert_eq!(moment_map_value(&z, &spec), 0.0);

        let spec0 = LinearSigmaSpec::new([1, 1, 1, 1, 1, -5], 0.0).unwrap();
        let mut z = [Complex64::zero(); 6];
        z[5] = Complex64::one();
        assert_eq!(moment_map_value(&z, &spec0), -5.0);
    }

    #[test]
    fn moment_map_u1_invariance() {
        let spec = LinearSigmaSpec::new([1, 2, 0, 1, 1, -5], 0.7).unwrap();
        let z: [Complex64; 6] = [
            Complex64::new(0.3, -0.4),
            Complex64::new(1.0, 2.0),
            Complex64::new(-0.5, 0.1),
            Complex64::new(0.0, 1.5),
            Complex64::new(2.0, 0.0),
            Complex64::new(-1.0, -1.0),
        ];
        let base = moment_map_value(&z, &spec);
        for theta in [0.1, 1.0, 2.5, -0.9] {
            let mut rotated = z;
            for (zi, &w) in rotated.iter_mut().zip(&spec.weights) {
                *zi *= Complex64::new(0.0, w as f64 * theta).exp();
            }
            assert!((moment_map_value(&rotated, &spec) - base).abs() < 1e-9);
        }
    }

    #[test]
    fn phase_classification() {
        let mk = |mu| LinearSigmaSpec::new([1, 1, 1, 1, 1, -5], mu).unwrap();
        assert_eq!(classify_phase(&mk(1.0)), Phase::Geometric);
        assert_eq!(classify_phase(&mk(-1.0)), Phase::LandauGinzburg);
        assert_eq!(classify_phase(&mk(0.0)), Phase::Boundary);
        // odd under mu -> -mu
        for mu in [0.3, 2.0, 17.5] {
            let plus = classify_phase(&mk(mu));
            let minus = classify_phase(&mk(-mu));
            assert_eq!(
                (plus, minus),
                (Phase::Geometric, Phase::LandauGinzburg)
            );
        }
    }

    #[test]
    fn critical_locus_cases() {
        let tol = CRITICAL_LOCUS_TOL;
        // f = z1^2 + z2 z3 (no constant/linear-free origin issue: grad f
        // vanishes at 0 and f(0) = 0)
        let f = SparsePoly {
            terms: vec![(Rat::one(), [2, 0, 0, 0, 0]), (rat_int(1), [0, 1, 1, 0, 0])],
        };
        let zero = [Complex64::zero(); 6];
        assert!(critical_locus_check(&zero, &f, tol));

        // z6 = 0 and f(z) = 0 with grad f != 0: pick f = z1, z = 0 except z2
        let f_lin = SparsePoly {
            terms: vec![(Rat::one(), [1, 0, 0, 0, 0])],
        };
        let mut z = [Complex64::zero(); 6];
        z[1] = Complex64::one(); // f = z1 = 0 here, grad f = (1,0,..) != 0, z6 = 0
        assert!(critical_locus_check(&z, &f_lin, tol));

        // z6 = 1, f = z1: dW/dz1 = z6 = 1 != 0
        let mut z = [Complex64::zero(); 6];
        z[5] = Complex64::one();
        assert!(!critical_locus_check(&z, &f_lin, tol));
    }

    #[test]
    fn sparse_poly_partials() {
        // f = 3/2 z1^2 z4
        let f = SparsePoly {
            terms: vec![(rat(3, 2), [2, 0, 0, 1, 0])],
        };
        let z = [
            Complex64::new(2.0, 0.0),
            Complex64::zero(),
            Complex64::zero(),
            Complex64::new(0.0, 1.0),
            Complex64::zero(),
        ];
        // df/dz1 = 3 z1 z4 = 6i
        let d1 = f.eval_partial(0, &z);
        assert!((d1 - Complex64::new(0.0, 6.0)).norm() < 1e-12);
        // df/dz4 = 3/2 z1^2 = 6
        let d4 = f.eval_partial(3, &z);
        assert!((d4 - Complex64::new(6.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn quiver_json_round_trip() {
        let spec = OrbifoldSpec::new(3, [1, 1, 1]).unwrap();
        let q = mckay_quiver_with_relations(&spec).unwrap();
        let json = serde_json::to_string(&q).unwrap();
        assert!(json.contains("\"nodes\":3"));
        assert!(json.contains("\"src\""));
        let back: McKayQuiver = serde_json::from_str(&json).unwrap();
        assert_eq!(back, q);
    }
}
