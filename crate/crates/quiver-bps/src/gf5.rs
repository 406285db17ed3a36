//! Exhaustive subrepresentation enumeration over the prime field F_5.
//!
//! This is the verification side of a dual-route check: the rational closure
//! strategy in [`crate::rep`] is heuristic, while this module enumerates every
//! subspace tuple of a mod-5 reduction by brute force and filters the
//! arrow-closed ones. The two routes share no code and must agree on
//! non-degenerate inputs.

use std::collections::BTreeSet;

pub const P: u8 = 5;

fn inv5(a: u8) -> u8 {
    // 1->1, 2->3, 3->2, 4->4
    match a {
        1 => 1,
        2 => 3,
        3 => 2,
        4 => 4,
        _ => panic!("no inverse of 0 mod 5"),
    }
}

fn mul5(a: u8, b: u8) -> u8 {
    (a as u16 * b as u16 % 5) as u8
}

fn sub5(a: u8, b: u8) -> u8 {
    ((a as i16 - b as i16).rem_euclid(5)) as u8
}

/// Row-major matrix over F_5.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Mat5 {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u8>,
}

impl Mat5 {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat5 {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_i64_mod5(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Mat5 {
            rows,
            cols,
            data: entries.iter().map(|&x| x.rem_euclid(5) as u8).collect(),
        }
    }

    pub fn at(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v;
    }

    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(0u8, |acc, j| (acc + mul5(self.at(i, j), v[j])) % 5)
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.at(i, c) != 0) else {
                continue;
            };
            for j in 0..m.cols {
                let (a, b) = (m.at(r, j), m.at(p, j));
                m.set(r, j, b);
                m.set(p, j, a);
            }
            let inv = inv5(m.at(r, c));
            for j in 0..m.cols {
                m.set(r, j, mul5(m.at(r, j), inv));
            }
            for i in 0..m.rows {
                if i != r && m.at(i, c) != 0 {
                    let f = m.at(i, c);
                    for j in 0..m.cols {
                        let v = sub5(m.at(i, j), mul5(f, m.at(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            r += 1;
        }
        r
    }
}

/// A subspace of F_5^d, stored as RREF basis rows plus pivot columns.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Space5 {
    pub ambient: usize,
    pub basis: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl Space5 {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let mut v = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if v[p] != 0 {
                let f = v[p];
                for j in 0..self.ambient {
                    v[j] = sub5(v[j], mul5(f, row[j]));
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }
}

/// Every subspace of F_5^d, generated by enumerating RREF matrices directly:
/// for each rank and each choice of pivot columns, fill the free entries in
/// all 5^k ways.
pub fn all_subspaces(d: usize) -> Vec<Space5> {
    let mut out = vec![Space5 {
        ambient: d,
        basis: vec![],
        pivots: vec![],
    }];
    for rank in 1..=d {
        for pivots in combinations(d, rank) {
            // Free entries: (row r, col c) with c > pivots[r], c not a pivot.
            let mut free = Vec::new();
            for (r, &pc) in pivots.iter().enumerate() {
                for c in (pc + 1)..d {
                    if !pivots.contains(&c) {
                        free.push((r, c));
                    }
                }
            }
            let total = 5usize.pow(free.len() as u32);
            for code in 0..total {
                let mut basis = vec![vec![0u8; d]; rank];
                for (r, &pc) in pivots.iter().enumerate() {
                    basis[r][pc] = 1;
                }
                let mut x = code;
                for &(r, c) in &free {
                    basis[r][c] = (x % 5) as u8;
                    x /= 5;
                }
                out.push(Space5 {
                    ambient: d,
                    basis,
                    pivots: pivots.clone(),
                });
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Mod-5 image of a quiver representation: arrow list plus one `Mat5` per
/// arrow, shaped dims[dst] x dims[src].
pub struct Rep5 {
    pub dims: Vec<usize>,
    pub arrows: Vec<(usize, usize)>,
    pub maps: Vec<Mat5>,
}

/// Exhaustively enumerate the dimension vectors of arrow-closed subspace
/// tuples. Cost is the product of per-node subspace counts; callers keep the
/// total dimension small.
pub fn subrep_dimvectors_exhaustive(rep: &Rep5) -> BTreeSet<Vec<usize>> {
    subrep_tuples_exhaustive(rep)
        .iter()
        .map(|t| t.iter().map(Space5::dim).collect())
        .collect()
}

/// All arrow-closed subspace tuples themselves.
pub fn subrep_tuples_exhaustive(rep: &Rep5) -> Vec<Vec<Space5>> {
    let per_node: Vec<Vec<Space5>> = rep.dims.iter().map(|&d| all_subspaces(d)).collect();
    let mut found = Vec::new();
    let mut index = vec![0usize; rep.dims.len()];
    loop {
        let tuple: Vec<&Space5> = index
            .iter()
            .enumerate()
            .map(|(n, &i)| &per_node[n][i])
            .collect();
        let closed = rep.arrows.iter().enumerate().all(|(a, &(src, dst))| {
            tuple[src]
                .basis
                .iter()
                .all(|v| tuple[dst].contains(&rep.maps[a].apply(v)))
        });
        if closed {
            found.push(tuple.into_iter().cloned().collect());
        }
        // odometer over the tuple indices
        let mut n = 0;
        loop {
            if n == index.len() {
                return found;
            }
            index[n] += 1;
            if index[n] < per_node[n].len() {
                break;
            }
            index[n] = 0;
            n += 1;
        }
    }
}
