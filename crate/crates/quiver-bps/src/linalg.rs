//! Dense exact-rational matrices: Gaussian elimination, nullspaces, and
//! canonical row-reduced bases for subspaces.
//!
//! Stability verdicts must not depend on rounding, so everything in here is
//! `BigRational`. Matrices are small (node dimensions of a quiver rep), so a
//! dense row-major layout with textbook elimination is the right tool.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Row-major dense matrix over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        QMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, rhs: &QMat) -> QMat {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = QMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a * &rhs[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn sub(&self, rhs: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
        out
    }

    /// Apply the matrix to a column vector.
    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rat::zero(), |acc, (a, x)| acc + a * x)
            })
            .collect()
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        QMat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// In-place reduced row echelon form. Returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let pivot_row = (r..self.rows).find(|&i| !self[(i, c)].is_zero());
            let Some(p) = pivot_row else { continue };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let factor = self[(i, c)].clone();
                    for j in c..self.cols {
                        let v = &self[(i, j)] - &factor * &self[(r, j)];
                        self[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right nullspace, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![Rat::zero(); self.cols];
            vec[free] = Rat::one();
            for (col, &rowopt) in pivot_set.iter().enumerate() {
                if let Some(row) = rowopt {
                    vec[col] = -m[(row, free)].clone();
                }
            }
            basis.push(vec);
        }
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// A subspace of Q^n kept in canonical form: RREF rows form the basis, so two
/// `Subspace` values are equal iff they span the same space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: QMat,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: QMat::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: QMat::identity(ambient),
        }
    }

    pub fn span(ambient: usize, vectors: &[Vec<Rat>]) -> Self {
        let mut m = QMat::from_rows(vectors.to_vec());
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        assert_eq!(m.cols, ambient);
        let pivots = m.rref();
        let rank = pivots.len();
        let mut rows = Vec::with_capacity(rank);
        for i in 0..rank {
            rows.push(m.row(i).to_vec());
        }
        Subspace {
            ambient,
            basis: QMat::from_rows(rows),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[Rat]> {
        (0..self.basis.rows).map(|i| self.basis.row(i))
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient);
        // Reduce v against the RREF basis; membership iff the residue is zero.
        let mut v = v.to_vec();
        for i in 0..self.basis.rows {
            let pivot_col = (0..self.ambient)
                .find(|&j| self.basis[(i, j)].is_one())
                .expect("rref row has a pivot");
            if !v[pivot_col].is_zero() {
                let f = v[pivot_col].clone();
                for (j, vj) in v.iter_mut().enumerate() {
                    let d = &*vj - &f * &self.basis[(i, j)];
                    *vj = d;
                }
            }
        }
        v.iter().all(Zero::is_zero)
    }

    /// Sum of subspaces; returns the enlarged subspace and whether it grew.
    pub fn join(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut vectors: Vec<Vec<Rat>> = self.basis_vectors().map(<[Rat]>::to_vec).collect();
        vectors.extend(other.basis_vectors().map(<[Rat]>::to_vec));
        if vectors.is_empty() {
            return Subspace::zero(self.ambient);
        }
        Subspace::span(self.ambient, &vectors)
    }

    /// Enlarge by a set of vectors, reporting whether the dimension grew.
    pub fn extend_with(&mut self, vectors: &[Vec<Rat>]) -> bool {
        let before = self.dim();
        let mut all: Vec<Vec<Rat>> = self.basis_vectors().map(<[Rat]>::to_vec).collect();
        all.extend(vectors.iter().cloned());
        if all.is_empty() {
            return false;
        }
        *self = Subspace::span(self.ambient, &all);
        self.dim() > before
    }
}

/// Serde adapter: vectors of rationals as "p/q" strings, bit-exact.
pub mod rat_vec_str {
    use super::Rat;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(ToString::to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .iter()
            .map(|s| Rat::from_str(s).map_err(|e| D::Error::custom(format!("bad rational {s:?}: {e}"))))
            .collect()
    }
}

/// Clear denominators and divide by the content, yielding a primitive integer
/// vector spanning the same line.
pub fn primitive_integer_vector(v: &[Rat]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| {
        num_integer::lcm(acc, x.denom().clone())
    });
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let gcd = ints
        .iter()
        .fold(BigInt::zero(), |acc, x| num_integer::gcd(acc, x.abs()));
    if gcd.is_zero() || gcd.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &gcd).collect()
    }
}
