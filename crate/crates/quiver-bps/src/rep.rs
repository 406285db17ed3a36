//! Quiver representations over exact rationals: construction, relation
//! checking, morphism spaces, direct sums, and subrepresentation enumeration.
//!
//! A subrepresentation here is a tuple of node subspaces preserved by every
//! arrow map acting source -> target. That convention is fixed once and used
//! by all stability tests.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::{primitive_integer_vector, QMat, Rat, Subspace};
use crate::orbifold::{McKayQuiver, Relation};
use crate::Result;

/// Per-node dimensions of a representation; the orbifold-point brane charge.
pub type DimensionVector = Vec<usize>;

/// A concrete representation: one rational matrix per arrow, shaped
/// dims[dst] x dims[src].
#[derive(Debug, Clone, PartialEq)]
pub struct QuiverRep {
    pub quiver: Arc<McKayQuiver>,
    pub dims: DimensionVector,
    pub maps: Vec<QMat>,
}

impl QuiverRep {
    pub fn new(quiver: Arc<McKayQuiver>, dims: DimensionVector, maps: Vec<QMat>) -> Result<Self> {
        let rep = QuiverRep { quiver, dims, maps };
        rep.check_shapes()?;
        Ok(rep)
    }

    /// All-zero representation of the given dimension vector.
    pub fn zero(quiver: Arc<McKayQuiver>, dims: DimensionVector) -> Result<Self> {
        if dims.len() != quiver.node_count {
            return Err(Error::LengthMismatch(format!(
                "dimension vector has {} entries for {} nodes",
                dims.len(),
                quiver.node_count
            )));
        }
        let maps = quiver
            .arrows
            .iter()
            .map(|a| QMat::zeros(dims[a.dst], dims[a.src]))
            .collect();
        QuiverRep::new(quiver, dims, maps)
    }

    pub fn check_shapes(&self) -> Result<()> {
        if self.dims.len() != self.quiver.node_count {
            return Err(Error::LengthMismatch(format!(
                "dimension vector has {} entries for {} nodes",
                self.dims.len(),
                self.quiver.node_count
            )));
        }
        if self.maps.len() != self.quiver.arrows.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} maps for {} arrows",
                self.maps.len(),
                self.quiver.arrows.len()
            )));
        }
        for (i, (m, a)) in self.maps.iter().zip(&self.quiver.arrows).enumerate() {
            if m.rows != self.dims[a.dst] || m.cols != self.dims[a.src] {
                return Err(Error::ShapeMismatch(format!(
                    "map {i} is {}x{}, expected {}x{}",
                    m.rows, m.cols, self.dims[a.dst], self.dims[a.src]
                )));
            }
        }
        Ok(())
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    fn same_quiver(&self, other: &QuiverRep) -> bool {
        Arc::ptr_eq(&self.quiver, &other.quiver) || self.quiver == other.quiver
    }

    /// Matrix of a length-2 path (second arrow applied after the first).
    fn path_matrix(&self, p: [usize; 2]) -> QMat {
        self.maps[p[1]].mul(&self.maps[p[0]])
    }
}

/// Indices of violated relations; empty means the representation is valid.
/// Shape problems surface as a structural error, not a violation.
pub fn check_relations(rep: &QuiverRep) -> Result<Vec<usize>> {
    rep.check_shapes()?;
    let mut violated = Vec::new();
    for (i, r) in rep.quiver.relations.iter().enumerate() {
        let diff = rep.path_matrix(r.lhs()).sub(&rep.path_matrix(r.rhs()));
        if !diff.is_zero() {
            violated.push(i);
        }
    }
    Ok(violated)
}

fn rand_entry(rng: &mut ChaCha8Rng) -> Rat {
    Rat::from_integer(rng.gen_range(-9i64..=9).into())
}

/// Deterministic pseudo-random representation on the relation variety.
///
/// Arrows are processed label class by label class: the lowest label is
/// sampled freely; each later class is chosen as a random integer combination
/// of a nullspace basis of the relations that are linear in it (for McKay
/// relations, label 2 is solved from the {1,2} commutation relations and
/// label 3 from {1,3} and {2,3}). Relations that fit no class are checked at
/// the end; a violation is reported as `ProjectionFailed`.
pub fn generic_rep(
    quiver: &Arc<McKayQuiver>,
    dims: &DimensionVector,
    seed: u64,
) -> Result<QuiverRep> {
    let mut rep = QuiverRep::zero(Arc::clone(quiver), dims.clone())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut labels: Vec<u8> = quiver.arrows.iter().map(|a| a.label).collect();
    labels.sort_unstable();
    labels.dedup();

    let mut solved_relations: BTreeSet<usize> = BTreeSet::new();
    for (class_pos, &label) in labels.iter().enumerate() {
        let class: Vec<usize> = (0..quiver.arrows.len())
            .filter(|&i| quiver.arrows[i].label == label)
            .collect();
        if class_pos == 0 {
            for &a in &class {
                let (r, c) = (rep.maps[a].rows, rep.maps[a].cols);
                let mut m = QMat::zeros(r, c);
                for i in 0..r {
                    for j in 0..c {
                        m[(i, j)] = rand_entry(&mut rng);
                    }
                }
                rep.maps[a] = m;
            }
            continue;
        }
        // Relations linear in this class: both paths contain exactly one
        // class arrow and no arrow of a later class.
        let linear: Vec<usize> = (0..quiver.relations.len())
            .filter(|i| !solved_relations.contains(i))
            .filter(|&i| {
                let r = quiver.relations[i];
                [r.lhs(), r.rhs()].iter().all(|p| {
                    let class_count = p
                        .iter()
                        .filter(|&&a| quiver.arrows[a].label == label)
                        .count();
                    let later = p.iter().any(|&a| quiver.arrows[a].label > label);
                    class_count == 1 && !later
                })
            })
            .collect();
        let solution = solve_class(&rep, &class, &linear)?;
        apply_class_solution(&mut rep, &class, &solution, &mut rng);
        solved_relations.extend(linear);
    }

    let violated = check_relations(&rep)?;
    if violated.is_empty() {
        Ok(rep)
    } else {
        Err(Error::ProjectionFailed { seed })
    }
}

/// Nullspace basis of the linear system the given relations impose on the
/// entries of the class arrows, as primitive integer vectors.
fn solve_class(rep: &QuiverRep, class: &[usize], relations: &[usize]) -> Result<Vec<Vec<Rat>>> {
    let mut offsets = BTreeMap::new();
    let mut total = 0usize;
    for &a in class {
        offsets.insert(a, total);
        total += rep.maps[a].rows * rep.maps[a].cols;
    }
    if total == 0 {
        return Ok(Vec::new());
    }
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for &ri in relations {
        let rel: Relation = rep.quiver.relations[ri];
        let (src, tgt) = rep.quiver.path_endpoints(rel.lhs())?;
        let (r_t, r_s) = (rep.dims[tgt], rep.dims[src]);
        for u in 0..r_t {
            for v in 0..r_s {
                let mut row = vec![Rat::zero(); total];
                accumulate_path_terms(rep, &offsets, rel.lhs(), u, v, false, &mut row);
                accumulate_path_terms(rep, &offsets, rel.rhs(), u, v, true, &mut row);
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        // no constraints: identity basis
        return Ok((0..total)
            .map(|i| {
                let mut v = vec![Rat::zero(); total];
                v[i] = Rat::one();
                v
            })
            .collect());
    }
    let system = QMat::from_rows(rows);
    let basis = system
        .nullspace()
        .into_iter()
        .map(|v| {
            primitive_integer_vector(&v)
                .into_iter()
                .map(Rat::from_integer)
                .collect()
        })
        .collect();
    Ok(basis)
}

/// Adds the (u, v) entry of the path product to `row`, where exactly one of
/// the two path arrows is an unknown of the class.
fn accumulate_path_terms(
    rep: &QuiverRep,
    offsets: &BTreeMap<usize, usize>,
    path: [usize; 2],
    u: usize,
    v: usize,
    negate: bool,
    row: &mut [Rat],
) {
    let (first, second) = (path[0], path[1]);
    let sign = if negate { -Rat::one() } else { Rat::one() };
    let mid = rep.maps[first].rows; // = cols of the second arrow's matrix
    if let Some(&off) = offsets.get(&second) {
        // unknown is the second arrow: coeff of X2[u,k] is X1[k,v]
        let x1 = &rep.maps[first];
        let cols2 = rep.maps[second].cols;
        for k in 0..mid {
            let coeff = &sign * &x1[(k, v)];
            row[off + u * cols2 + k] += coeff;
        }
    } else {
        let &off = offsets.get(&first).expect("one path arrow must be unknown");
        // unknown is the first arrow: coeff of X1[k,v] is X2[u,k]
        let x2 = &rep.maps[second];
        let cols1 = rep.maps[first].cols;
        for k in 0..mid {
            let coeff = &sign * &x2[(u, k)];
            row[off + k * cols1 + v] += coeff;
        }
    }
}

fn apply_class_solution(
    rep: &mut QuiverRep,
    class: &[usize],
    basis: &[Vec<Rat>],
    rng: &mut ChaCha8Rng,
) {
    let total: usize = class
        .iter()
        .map(|&a| rep.maps[a].rows * rep.maps[a].cols)
        .sum();
    let mut x = vec![Rat::zero(); total];
    for b in basis {
        let c = rand_entry(rng);
        for (xi, bi) in x.iter_mut().zip(b) {
            *xi += &c * bi;
        }
    }
    let mut cursor = 0usize;
    for &a in class {
        let (r, c) = (rep.maps[a].rows, rep.maps[a].cols);
        let mut m = QMat::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                m[(i, j)] = x[cursor].clone();
                cursor += 1;
            }
        }
        rep.maps[a] = m;
    }
}

/// Dimension of the space of intertwiners E -> F: node-wise matrices phi with
/// phi_dst . X_a(E) = X_a(F) . phi_src for every arrow, by exact nullspace.
pub fn hom_space(e: &QuiverRep, f: &QuiverRep) -> Result<usize> {
    if !e.same_quiver(f) {
        return Err(Error::QuiverMismatch);
    }
    let n = e.quiver.node_count;
    let mut offsets = vec![0usize; n];
    let mut total = 0usize;
    for (i, off) in offsets.iter_mut().enumerate() {
        *off = total;
        total += f.dims[i] * e.dims[i];
    }
    if total == 0 {
        return Ok(0);
    }
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (a, arrow) in e.quiver.arrows.iter().enumerate() {
        let (s, t) = (arrow.src, arrow.dst);
        let xe = &e.maps[a];
        let xf = &f.maps[a];
        // equation shape: f.dims[t] x e.dims[s]
        for u in 0..f.dims[t] {
            for v in 0..e.dims[s] {
                let mut row = vec![Rat::zero(); total];
                // + phi_t[u,k] * XE[k,v]
                for k in 0..e.dims[t] {
                    row[offsets[t] + u * e.dims[t] + k] += xe[(k, v)].clone();
                }
                // - XF[u,k] * phi_s[k,v]
                for k in 0..f.dims[s] {
                    row[offsets[s] + k * e.dims[s] + v] -= xf[(u, k)].clone();
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Ok(total);
    }
    let rank = QMat::from_rows(rows).rank();
    Ok(total - rank)
}

/// Block-diagonal direct sum; dimension vectors add and relations hold
/// blockwise.
pub fn direct_sum(e: &QuiverRep, f: &QuiverRep) -> Result<QuiverRep> {
    if !e.same_quiver(f) {
        return Err(Error::QuiverMismatch);
    }
    let dims: DimensionVector = e.dims.iter().zip(&f.dims).map(|(a, b)| a + b).collect();
    let maps = e
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            let (re, ce) = (e.dims[arrow.dst], e.dims[arrow.src]);
            let mut m = QMat::zeros(dims[arrow.dst], dims[arrow.src]);
            for i in 0..re {
                for j in 0..ce {
                    m[(i, j)] = e.maps[a][(i, j)].clone();
                }
            }
            for i in 0..f.dims[arrow.dst] {
                for j in 0..f.dims[arrow.src] {
                    m[(re + i, ce + j)] = f.maps[a][(i, j)].clone();
                }
            }
            m
        })
        .collect();
    QuiverRep::new(Arc::clone(&e.quiver), dims, maps)
}

/// Knobs for the subobject search.
#[derive(Debug, Clone)]
pub struct SubrepOptions {
    /// Hard cap on the total dimension of the representation.
    pub total_dim_bound: usize,
    /// Pseudo-random search vectors per node, on top of the coordinate and
    /// arrow-kernel vectors that are always included.
    pub candidates_per_node: usize,
    pub seed: u64,
    /// Stop generating new subspace tuples beyond this count.
    pub max_tracked: usize,
}

impl Default for SubrepOptions {
    fn default() -> Self {
        SubrepOptions {
            total_dim_bound: 12,
            candidates_per_node: 64,
            seed: 0,
            max_tracked: 4096,
        }
    }
}

type SubspaceTuple = Vec<Subspace>;

/// Arrow-closure of a starting tuple: repeatedly push images through every
/// arrow until nothing grows.
fn close_under_arrows(rep: &QuiverRep, mut tuple: SubspaceTuple) -> SubspaceTuple {
    loop {
        let mut grew = false;
        for (a, arrow) in rep.quiver.arrows.iter().enumerate() {
            if tuple[arrow.src].dim() == 0 {
                continue;
            }
            let images: Vec<Vec<Rat>> = tuple[arrow.src]
                .basis_vectors()
                .map(|v| rep.maps[a].apply(v))
                .collect();
            if tuple[arrow.dst].extend_with(&images) {
                grew = true;
            }
        }
        if !grew {
            return tuple;
        }
    }
}

fn dim_vector(tuple: &SubspaceTuple) -> Vec<usize> {
    tuple.iter().map(Subspace::dim).collect()
}

const EIGEN_SCAN_CAP: i64 = 128;

/// Kernel vectors of (L - lambda I) for every integer lambda inside the
/// Gershgorin row-sum bound of the loop map L.
fn loop_eigen_seeds(l: &QMat) -> Vec<Vec<Rat>> {
    let d = l.rows;
    if d == 0 || l.cols != d {
        return Vec::new();
    }
    let bound = (0..d)
        .map(|i| {
            l.row(i)
                .iter()
                .map(|x| crate::orbifold::rat_to_f64(x).abs())
                .sum::<f64>()
        })
        .fold(0.0f64, f64::max)
        .ceil() as i64;
    let bound = bound.min(EIGEN_SCAN_CAP);
    let mut seeds = Vec::new();
    for lambda in -bound..=bound {
        let mut shifted = l.clone();
        for i in 0..d {
            let v = &shifted[(i, i)] - Rat::from_integer(lambda.into());
            shifted[(i, i)] = v;
        }
        seeds.extend(shifted.nullspace());
    }
    seeds
}

/// The set of dimension vectors of subrepresentations found by arrow-closing
/// spans of search vectors and joining the results to a lattice fixpoint.
/// Always contains the zero vector and dims(rep).
///
/// This is a sampling strategy: coordinate vectors, arrow-kernel and
/// loop-eigenline vectors, and seeded random vectors generate the closures.
/// Completeness at small total dimension is checked against the exhaustive
/// F_5 oracle in [`crate::gf5`].
pub fn enumerate_subrep_dimvectors(
    rep: &QuiverRep,
    opts: &SubrepOptions,
) -> Result<BTreeSet<DimensionVector>> {
    Ok(enumerate_subrep_subspaces(rep, opts)?
        .iter()
        .map(dim_vector)
        .collect())
}

/// The subrepresentations themselves, as canonical subspace tuples (one
/// subspace per node). See [`enumerate_subrep_dimvectors`].
pub fn enumerate_subrep_subspaces(
    rep: &QuiverRep,
    opts: &SubrepOptions,
) -> Result<Vec<Vec<Subspace>>> {
    rep.check_shapes()?;
    let total = rep.total_dim();
    if total > opts.total_dim_bound {
        return Err(Error::BoundExceeded {
            total,
            bound: opts.total_dim_bound,
        });
    }
    let n = rep.quiver.node_count;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let zero_tuple: SubspaceTuple = rep.dims.iter().map(|&d| Subspace::zero(d)).collect();
    let full_tuple: SubspaceTuple = rep.dims.iter().map(|&d| Subspace::full(d)).collect();

    // Representative tuples are capped per dimension vector: without the cap
    // a decoupled node turns the lattice walk quadratic in the number of
    // distinct subspaces rather than distinct dimension vectors. Structured
    // candidates (coordinate, kernel, eigenline) are inserted first so they
    // survive the cap.
    const REPS_PER_DIMVEC: usize = 8;
    let mut tuples: Vec<SubspaceTuple> = Vec::new();
    let mut per_dimvec: BTreeMap<DimensionVector, usize> = BTreeMap::new();
    let push_capped = |tuples: &mut Vec<SubspaceTuple>,
                       per_dimvec: &mut BTreeMap<DimensionVector, usize>,
                       t: SubspaceTuple|
     -> bool {
        let dv = dim_vector(&t);
        let count = per_dimvec.entry(dv).or_insert(0);
        if *count >= REPS_PER_DIMVEC || tuples.contains(&t) {
            return false;
        }
        *count += 1;
        tuples.push(t);
        true
    };
    push_capped(&mut tuples, &mut per_dimvec, zero_tuple);
    push_capped(&mut tuples, &mut per_dimvec, full_tuple);

    // Single-vector closures.
    'nodes: for node in 0..n {
        let d = rep.dims[node];
        if d == 0 {
            continue;
        }
        let mut seeds: Vec<Vec<Rat>> = Vec::new();
        for i in 0..d {
            let mut e = vec![Rat::zero(); d];
            e[i] = Rat::one();
            seeds.push(e);
        }
        for (a, arrow) in rep.quiver.arrows.iter().enumerate() {
            if arrow.src == node {
                seeds.extend(rep.maps[a].nullspace());
            }
            // Eigenlines of loop maps are subrep sources the random search
            // cannot hit. Rational eigenvalues of an integer matrix are
            // integers bounded by the largest absolute row sum, so shifted
            // kernels over that range find them all for integral maps.
            if arrow.src == node && arrow.dst == node {
                seeds.extend(loop_eigen_seeds(&rep.maps[a]));
            }
        }
        for _ in 0..opts.candidates_per_node {
            seeds.push((0..d).map(|_| rand_entry(&mut rng)).collect());
        }
        for v in seeds {
            if v.iter().all(Zero::is_zero) {
                continue;
            }
            let mut start: SubspaceTuple =
                rep.dims.iter().map(|&d| Subspace::zero(d)).collect();
            start[node] = Subspace::span(d, &[v]);
            let closed = close_under_arrows(rep, start);
            push_capped(&mut tuples, &mut per_dimvec, closed);
            if tuples.len() >= opts.max_tracked {
                break 'nodes;
            }
        }
    }

    // Join to a lattice fixpoint (sums of closed tuples are closed).
    let mut i = 0;
    while i < tuples.len() && tuples.len() < opts.max_tracked {
        let mut j = 0;
        while j < i && tuples.len() < opts.max_tracked {
            let joined: SubspaceTuple = tuples[i]
                .iter()
                .zip(&tuples[j])
                .map(|(a, b)| a.join(b))
                .collect();
            push_capped(&mut tuples, &mut per_dimvec, joined);
            j += 1;
        }
        i += 1;
    }

    Ok(tuples)
}

/// Serialized form: dims plus per-arrow matrices of "p/q" strings, keyed by
/// arrow index.
#[derive(Debug, Serialize, Deserialize)]
pub struct RepJson {
    pub dims: Vec<usize>,
    pub maps: BTreeMap<String, Vec<Vec<String>>>,
}

impl QuiverRep {
    pub fn to_json_value(&self) -> RepJson {
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(a, m)| {
                let rows = (0..m.rows)
                    .map(|i| m.row(i).iter().map(ToString::to_string).collect())
                    .collect();
                (a.to_string(), rows)
            })
            .collect();
        RepJson {
            dims: self.dims.clone(),
            maps,
        }
    }

    pub fn from_json_value(quiver: Arc<McKayQuiver>, json: &RepJson) -> Result<Self> {
        let mut rep = QuiverRep::zero(quiver, json.dims.clone())?;
        for (key, rows) in &json.maps {
            let a: usize = key
                .parse()
                .map_err(|_| Error::ShapeMismatch(format!("bad arrow index key {key}")))?;
            if a >= rep.maps.len() {
                return Err(Error::ShapeMismatch(format!(
                    "arrow index {a} out of range"
                )));
            }
            let expect = (rep.maps[a].rows, rep.maps[a].cols);
            if expect.0 * expect.1 == 0 {
                continue;
            }
            let parsed: Vec<Vec<Rat>> = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|s| {
                            Rat::from_str(s).map_err(|e| {
                                Error::ShapeMismatch(format!("bad rational {s:?}: {e}"))
                            })
                        })
                        .collect()
                })
                .collect::<Result<_>>()?;
            let got_rows = parsed.len();
            let got_cols = parsed.first().map_or(0, Vec::len);
            if (got_rows, got_cols) != expect {
                return Err(Error::ShapeMismatch(format!(
                    "map {a} is {got_rows}x{got_cols}, expected {}x{}",
                    expect.0, expect.1
                )));
            }
            rep.maps[a] = QMat::from_rows(parsed);
        }
        rep.check_shapes()?;
        Ok(rep)
    }
}

/// On-demand completeness check of the rational subobject search: reduce an
/// integral representation mod 5 and compare the dimension-vector set with
/// the exhaustive enumeration in [`crate::gf5`]. Returns `None` when the
/// representation is not integral. Disagreement does not by itself mean the
/// search is wrong — mod-5 reduction can create or destroy subobjects when a
/// minor of the data vanishes mod 5 — but agreement certifies completeness
/// at this dimension.
pub fn subreps_match_f5_oracle(rep: &QuiverRep, opts: &SubrepOptions) -> Result<Option<bool>> {
    let Some(ints) = integer_entries(rep) else {
        return Ok(None);
    };
    let rational = enumerate_subrep_dimvectors(rep, opts)?;
    let rep5 = crate::gf5::Rep5 {
        dims: rep.dims.clone(),
        arrows: rep.quiver.arrows.iter().map(|a| (a.src, a.dst)).collect(),
        maps: rep
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                crate::gf5::Mat5::from_i64_mod5(
                    rep.dims[arrow.dst],
                    rep.dims[arrow.src],
                    &ints[a],
                )
            })
            .collect(),
    };
    Ok(Some(
        crate::gf5::subrep_dimvectors_exhaustive(&rep5) == rational,
    ))
}

/// Entries of every map as i64, if the representation is integral; used for
/// mod-p reductions.
pub fn integer_entries(rep: &QuiverRep) -> Option<Vec<Vec<i64>>> {
    rep.maps
        .iter()
        .map(|m| {
            (0..m.rows)
                .flat_map(|i| m.row(i).iter())
                .map(|r| {
                    if r.denom().is_one() {
                        r.numer().to_i64()
                    } else {
                        None
                    }
                })
                .collect::<Option<Vec<i64>>>()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf5;
    use crate::orbifold::{mckay_quiver_with_relations, Arrow, OrbifoldSpec};

    fn trivial_quiver() -> Arc<McKayQuiver> {
        let spec = OrbifoldSpec::new(1, [0, 0, 0]).unwrap();
        Arc::new(mckay_quiver_with_relations(&spec).unwrap())
    }

    fn z3_quiver() -> Arc<McKayQuiver> {
        let spec = OrbifoldSpec::new(3, [1, 1, 1]).unwrap();
        Arc::new(mckay_quiver_with_relations(&spec).unwrap())
    }

    fn two_node_one_arrow() -> Arc<McKayQuiver> {
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

    fn simple_rep(q: &Arc<McKayQuiver>, node: usize) -> QuiverRep {
        let mut dims = vec![0; q.node_count];
        dims[node] = 1;
        QuiverRep::zero(Arc::clone(q), dims).unwrap()
    }

    #[test]
    fn zero_maps_satisfy_relations() {
        let q = z3_quiver();
        let rep = QuiverRep::zero(Arc::clone(&q), vec![2, 1, 2]).unwrap();
        assert!(check_relations(&rep).unwrap().is_empty());
    }

    #[test]
    fn commuting_diagonals_are_valid() {
        let q = trivial_quiver();
        let diag = |a: i64, b: i64| QMat::from_i64(&[&[a, 0], &[0, b]]);
        let rep = QuiverRep::new(
            Arc::clone(&q),
            vec![2],
            vec![diag(1, 2), diag(3, -1), diag(0, 5)],
        )
        .unwrap();
        assert!(check_relations(&rep).unwrap().is_empty());
    }

    #[test]
    fn noncommuting_pair_is_flagged() {
        let q = trivial_quiver();
        let rep = QuiverRep::new(
            Arc::clone(&q),
            vec![2],
            vec![
                QMat::from_i64(&[&[0, 1], &[0, 0]]),
                QMat::from_i64(&[&[0, 0], &[1, 0]]),
                QMat::zeros(2, 2),
            ],
        )
        .unwrap();
        // relations at node 0 come in label-pair order (1,2), (1,3), (2,3);
        // only the commutator [x1, x2] fails.
        assert_eq!(check_relations(&rep).unwrap(), vec![0]);
    }

    #[test]
    fn shape_mismatch_is_structural() {
        let q = trivial_quiver();
        let rep = QuiverRep {
            quiver: Arc::clone(&q),
            dims: vec![2],
            maps: vec![QMat::zeros(2, 2), QMat::zeros(1, 2), QMat::zeros(2, 2)],
        };
        assert!(matches!(
            check_relations(&rep),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn generic_rep_is_deterministic_and_valid() {
        let q = z3_quiver();
        let dims = vec![2, 1, 1];
        let a = generic_rep(&q, &dims, 7).unwrap();
        let b = generic_rep(&q, &dims, 7).unwrap();
        assert_eq!(a, b);
        assert!(check_relations(&a).unwrap().is_empty());
        let c = generic_rep(&q, &dims, 8).unwrap();
        assert!(check_relations(&c).unwrap().is_empty());
    }

    #[test]
    fn generic_rep_trivial_group_commutes() {
        let q = trivial_quiver();
        for seed in 0..6 {
            let rep = generic_rep(&q, &vec![2], seed).unwrap();
            assert!(check_relations(&rep).unwrap().is_empty());
        }
        // scalars always commute
        let rep = generic_rep(&q, &vec![1], 0).unwrap();
        assert!(check_relations(&rep).unwrap().is_empty());
    }

    #[test]
    fn generic_rep_simple_vector() {
        let q = z3_quiver();
        let rep = generic_rep(&q, &vec![1, 0, 0], 3).unwrap();
        assert!(check_relations(&rep).unwrap().is_empty());
        assert_eq!(rep.total_dim(), 1);
    }

    #[test]
    fn hom_space_schur() {
        let q = z3_quiver();
        let e = simple_rep(&q, 0);
        assert_eq!(hom_space(&e, &e).unwrap(), 1);
        let f = simple_rep(&q, 1);
        assert_eq!(hom_space(&e, &f).unwrap(), 0);
    }

    #[test]
    fn hom_space_identity_lower_bound() {
        let q = z3_quiver();
        for seed in 0..4 {
            let rep = generic_rep(&q, &vec![1, 1, 1], seed).unwrap();
            assert!(hom_space(&rep, &rep).unwrap() >= 1);
        }
    }

    #[test]
    fn hom_space_is_basis_independent() {
        // Relabeling the nodes of the quiver must not change Hom dimensions.
        let q = two_node_one_arrow();
        let e = QuiverRep::new(
            Arc::clone(&q),
            vec![1, 2],
            vec![QMat::from_i64(&[&[1], &[2]])],
        )
        .unwrap();
        let f = QuiverRep::new(
            Arc::clone(&q),
            vec![1, 2],
            vec![QMat::from_i64(&[&[3], &[-1]])],
        )
        .unwrap();
        let d1 = hom_space(&e, &f).unwrap();

        let q2 = Arc::new(
            McKayQuiver::from_parts(
                2,
                vec![Arrow {
                    src: 1,
                    dst: 0,
                    label: 1,
                }],
                vec![],
            )
            .unwrap(),
        );
        let swap = |r: &QuiverRep| {
            QuiverRep::new(
                Arc::clone(&q2),
                vec![r.dims[1], r.dims[0]],
                r.maps.clone(),
            )
            .unwrap()
        };
        let d2 = hom_space(&swap(&e), &swap(&f)).unwrap();
        assert_eq!(d1, d2);
    }

    #[test]
    fn direct_sum_properties() {
        let q = z3_quiver();
        let e = generic_rep(&q, &vec![1, 1, 0], 1).unwrap();
        let f = generic_rep(&q, &vec![0, 1, 1], 2).unwrap();
        let s = direct_sum(&e, &f).unwrap();
        assert_eq!(s.dims, vec![1, 2, 1]);
        assert!(check_relations(&s).unwrap().is_empty());

        let zero = QuiverRep::zero(Arc::clone(&q), vec![0, 0, 0]).unwrap();
        let e0 = direct_sum(&e, &zero).unwrap();
        assert_eq!(e0.dims, e.dims);
        assert_eq!(e0.maps, e.maps);
    }

    #[test]
    fn quiver_mismatch_detected() {
        let e = simple_rep(&z3_quiver(), 0);
        let f = simple_rep(&trivial_quiver(), 0);
        assert!(matches!(hom_space(&e, &f), Err(Error::QuiverMismatch)));
        assert!(matches!(direct_sum(&e, &f), Err(Error::QuiverMismatch)));
    }

    #[test]
    fn subreps_of_simple() {
        let q = z3_quiver();
        let rep = simple_rep(&q, 1);
        let got = enumerate_subrep_dimvectors(&rep, &SubrepOptions::default()).unwrap();
        let want: BTreeSet<Vec<usize>> = [vec![0, 0, 0], vec![0, 1, 0]].into_iter().collect();
        assert_eq!(got, want);
    }

    #[test]
    fn subreps_two_node_nonzero_map() {
        let q = two_node_one_arrow();
        let rep =
            QuiverRep::new(Arc::clone(&q), vec![1, 1], vec![QMat::from_i64(&[&[2]])]).unwrap();
        let got = enumerate_subrep_dimvectors(&rep, &SubrepOptions::default()).unwrap();
        let want: BTreeSet<Vec<usize>> =
            [vec![0, 0], vec![0, 1], vec![1, 1]].into_iter().collect();
        assert_eq!(got, want);
    }

    #[test]
    fn subreps_two_node_zero_map() {
        let q = two_node_one_arrow();
        let rep = QuiverRep::zero(Arc::clone(&q), vec![1, 1]).unwrap();
        let got = enumerate_subrep_dimvectors(&rep, &SubrepOptions::default()).unwrap();
        assert_eq!(got.len(), 4);
    }

    #[test]
    fn subrep_dimvectors_bounded_componentwise() {
        let q = z3_quiver();
        let rep = generic_rep(&q, &vec![2, 1, 2], 5).unwrap();
        let got = enumerate_subrep_dimvectors(&rep, &SubrepOptions::default()).unwrap();
        for d in &got {
            for (a, b) in d.iter().zip(&rep.dims) {
                assert!(a <= b);
            }
        }
        assert!(got.contains(&vec![0, 0, 0]));
        assert!(got.contains(&rep.dims));
    }

    #[test]
    fn subreps_of_direct_sum_contain_sums() {
        let q = two_node_one_arrow();
        let e =
            QuiverRep::new(Arc::clone(&q), vec![1, 1], vec![QMat::from_i64(&[&[1]])]).unwrap();
        let f = QuiverRep::zero(Arc::clone(&q), vec![1, 1]).unwrap();
        let s = direct_sum(&e, &f).unwrap();
        let opts = SubrepOptions::default();
        let se = enumerate_subrep_dimvectors(&e, &opts).unwrap();
        let sf = enumerate_subrep_dimvectors(&f, &opts).unwrap();
        let ss = enumerate_subrep_dimvectors(&s, &opts).unwrap();
        for a in &se {
            for b in &sf {
                let sum: Vec<usize> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                assert!(ss.contains(&sum), "{sum:?} missing from direct sum");
            }
        }
    }

    #[test]
    fn bound_exceeded() {
        let q = trivial_quiver();
        let rep = QuiverRep::zero(Arc::clone(&q), vec![13]).unwrap();
        assert!(matches!(
            enumerate_subrep_dimvectors(&rep, &SubrepOptions::default()),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn rational_strategy_matches_f5_on_generic_z3_rep() {
        let q = z3_quiver();
        let rep = generic_rep(&q, &vec![1, 1, 1], 11).unwrap();
        let got = enumerate_subrep_dimvectors(&rep, &SubrepOptions::default()).unwrap();
        let ints = integer_entries(&rep).expect("generic reps have integer entries");
        let rep5 = gf5::Rep5 {
            dims: rep.dims.clone(),
            arrows: q.arrows.iter().map(|a| (a.src, a.dst)).collect(),
            maps: q
                .arrows
                .iter()
                .enumerate()
                .map(|(a, arrow)| {
                    gf5::Mat5::from_i64_mod5(rep.dims[arrow.dst], rep.dims[arrow.src], &ints[a])
                })
                .collect(),
        };
        let oracle = gf5::subrep_dimvectors_exhaustive(&rep5);
        assert_eq!(got, oracle);
    }

    #[test]
    fn eigenline_subreps_are_found() {
        // three equal loop maps with eigenvalues 2 and 3; the lambda = 3
        // eigenline span{(1,1)} is a subrep no coordinate or random vector
        // would find
        let q = trivial_quiver();
        let m = QMat::from_i64(&[&[2, 1], &[0, 3]]);
        let rep = QuiverRep::new(
            Arc::clone(&q),
            vec![2],
            vec![m.clone(), m.clone(), m],
        )
        .unwrap();
        assert!(check_relations(&rep).unwrap().is_empty());
        let got = enumerate_subrep_dimvectors(&rep, &SubrepOptions::default()).unwrap();
        let want: BTreeSet<Vec<usize>> = [vec![0], vec![1], vec![2]].into_iter().collect();
        assert_eq!(got, want);
    }

    #[test]
    fn rep_json_round_trip() {
        let q = z3_quiver();
        let rep = generic_rep(&q, &vec![1, 2, 1], 13).unwrap();
        let json = serde_json::to_string(&rep.to_json_value()).unwrap();
        let parsed: RepJson = serde_json::from_str(&json).unwrap();
        let back = QuiverRep::from_json_value(Arc::clone(&q), &parsed).unwrap();
        assert_eq!(back, rep);
    }

    #[test]
    fn generic_rep_seed_independent_subreps_mostly() {
        // genericity check: subrep sets agree across seeds for most pairs;
        // deviations are logged, not failed.
        let q = z3_quiver();
        let dims = vec![1, 1, 1];
        let opts = SubrepOptions::default();
        let sets: Vec<_> = (0..6)
            .map(|s| {
                let rep = generic_rep(&q, &dims, s).unwrap();
                enumerate_subrep_dimvectors(&rep, &opts).unwrap()
            })
            .collect();
        let mut agree = 0;
        let mut total = 0;
        for i in 0..sets.len() {
            for j in 0..i {
                total += 1;
                if sets[i] == sets[j] {
                    agree += 1;
                } else {
                    println!(
                        "seed pair ({i},{j}) disagrees: {:?} vs {:?}",
                        sets[i], sets[j]
                    );
                }
            }
        }
        assert!(agree * 100 >= total * 95, "{agree}/{total} pairs agree");
    }
}
