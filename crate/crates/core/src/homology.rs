//! Rational simplicial homology of order complexes, by fraction-free
//! (Bareiss) rank computation on integer boundary matrices. Drives the
//! Cohen--Macaulay test: the reduced homology of every open interval of
//! a bounded graded poset must be concentrated in top dimension.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::poset::{Poset, RankFn};

/// Simplicial chain complex presented by its face lists; `faces[k]` are
/// the k-dimensional faces, each a strictly sorted vertex list.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    faces: Vec<Vec<Vec<u32>>>,
}

/// Reduced Betti numbers over `Q`. The empty complex concentrates in
/// dimension `-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedBetti {
    pub neg_one: u64,
    pub by_dim: Vec<u64>,
}

impl ReducedBetti {
    pub fn get(&self, dim: i64) -> u64 {
        match dim {
            -1 => self.neg_one,
            d if d >= 0 => self.by_dim.get(d as usize).copied().unwrap_or(0),
            _ => 0,
        }
    }

    /// True when all reduced homology sits in the single dimension `dim`.
    pub fn concentrated_in(&self, dim: i64) -> bool {
        if dim != -1 && self.neg_one != 0 {
            return false;
        }
        self.by_dim
            .iter()
            .enumerate()
            .all(|(d, &b)| b == 0 || d as i64 == dim)
    }
}

impl ChainComplex {
    /// Build from the maximal faces; all subsets are filled in.
    pub fn from_facets(facets: &[Vec<u32>]) -> ChainComplex {
        let mut all: std::collections::BTreeSet<Vec<u32>> = std::collections::BTreeSet::new();
        for f in facets {
            let mut face = f.clone();
            face.sort_unstable();
            face.dedup();
            let k = face.len();
            for mask in 1u64..(1 << k) {
                let sub: Vec<u32> =
                    (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| face[i]).collect();
                all.insert(sub);
            }
        }
        let max_dim = all.iter().map(|f| f.len()).max().unwrap_or(0);
        let mut faces = vec![Vec::new(); max_dim];
        for f in all {
            faces[f.len() - 1].push(f);
        }
        ChainComplex { faces }
    }

    /// Order complex of the given elements of a poset: faces are the
    /// chains, with vertices listed in chain order (which is strictly
    /// sorted after relabeling by a linear extension).
    pub fn order_complex(poset: &Poset, vertices: &[u32]) -> ChainComplex {
        // Relabel by topological position so chains are sorted lists.
        let mut verts: Vec<u32> = vertices.to_vec();
        let pos: std::collections::HashMap<u32, usize> = poset
            .topo()
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        verts.sort_by_key(|v| pos[v]);
        let mut faces: Vec<Vec<Vec<u32>>> = Vec::new();
        let mut stack: Vec<(Vec<u32>, usize)> =
            (0..verts.len()).map(|i| (vec![i as u32], i)).collect();
        while let Some((chain, last)) = stack.pop() {
            let dim = chain.len() - 1;
            if faces.len() <= dim {
                faces.resize(dim + 1, Vec::new());
            }
            for next in last + 1..verts.len() {
                if poset.lt(verts[last], verts[next]) {
                    let mut extended = chain.clone();
                    extended.push(next as u32);
                    stack.push((extended, next));
                }
            }
            faces[dim].push(chain);
        }
        for level in &mut faces {
            level.sort_unstable();
        }
        ChainComplex { faces }
    }

    pub fn num_faces(&self, dim: usize) -> usize {
        self.faces.get(dim).map_or(0, Vec::len)
    }

    pub fn total_faces(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    pub fn dim(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    /// Boundary matrix from k-faces to (k-1)-faces, entries in {-1,0,1}.
    fn boundary(&self, k: usize) -> Vec<Vec<BigInt>> {
        let rows = self.num_faces(k - 1);
        let cols = self.num_faces(k);
        let mut m = vec![vec![BigInt::zero(); cols]; rows];
        let index: std::collections::HashMap<&[u32], usize> = self.faces[k - 1]
            .iter()
            .enumerate()
            .map(|(i, f)| (f.as_slice(), i))
            .collect();
        for (j, face) in self.faces[k].iter().enumerate() {
            for drop in 0..face.len() {
                let sub: Vec<u32> = face
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != drop)
                    .map(|(_, &v)| v)
                    .collect();
                let i = index[sub.as_slice()];
                m[i][j] = if drop % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            }
        }
        m
    }

    /// Reduced Betti numbers over the rationals.
    pub fn reduced_betti(&self) -> ReducedBetti {
        if self.faces.is_empty() || self.faces[0].is_empty() {
            return ReducedBetti { neg_one: 1, by_dim: Vec::new() };
        }
        let top = self.faces.len() - 1;
        // rank of boundary maps; index k = rank of d_k : C_k -> C_{k-1},
        // with d_0 the augmentation onto C_{-1} = Q.
        let mut ranks = vec![0usize; top + 2];
        ranks[0] = 1; // augmentation is onto once there is a vertex
        for k in 1..=top {
            let m = self.boundary(k);
            debug_assert!(self.total_faces() > 400 || self.dd_zero(k), "boundary squared must vanish");
            ranks[k] = bareiss_rank(m);
        }
        let mut by_dim = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let dim_ck = self.num_faces(k);
            let kernel = dim_ck - ranks[k];
            by_dim.push((kernel - ranks[k + 1]) as u64);
        }
        ReducedBetti { neg_one: 0, by_dim }
    }

    /// `d_{k-1} . d_k = 0`, checked for small complexes.
    fn dd_zero(&self, k: usize) -> bool {
        if k < 2 {
            return true;
        }
        let a = self.boundary(k - 1);
        let b = self.boundary(k);
        for i in 0..a.len() {
            for j in 0..b[0].len() {
                let mut acc = BigInt::zero();
                for (l, brow) in b.iter().enumerate() {
                    acc += &a[i][l] * &brow[j];
                }
                if !acc.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Alternating face-count sum `sum (-1)^d f_d` (unreduced Euler
    /// characteristic).
    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(d, fs)| if d % 2 == 0 { fs.len() as i64 } else { -(fs.len() as i64) })
            .sum()
    }
}

/// Rank of an integer matrix by Bareiss fraction-free elimination.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        // Pivot search: smallest nonzero magnitude keeps entries modest.
        let pivot = (row..rows)
            .filter(|&i| !m[i][col].is_zero())
            .min_by_key(|&i| m[i][col].abs());
        let Some(p) = pivot else { continue };
        m.swap(row, p);
        for i in row + 1..rows {
            for j in col + 1..cols {
                let t = (&m[i][j] * &m[row][col] - &m[i][col] * &m[row][j]) / &prev;
                m[i][j] = t;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[row][col].clone();
        row += 1;
        rank += 1;
    }
    rank
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmWitness {
    pub interval: (u32, u32),
    pub expected_dim: i64,
    pub betti: ReducedBetti,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmReport {
    pub is_cohen_macaulay: bool,
    pub witness: Option<CmWitness>,
}

/// Cohen--Macaulay test over `Q`: the reduced homology of the order
/// complex of every open interval `(s, t)` (including the proper part
/// `(min, max)`) must be concentrated in dimension `rho_st - 2`.
/// Short-circuits on the first failing interval.
pub fn is_cohen_macaulay(poset: &Poset, rank: &RankFn) -> CmReport {
    for (s, t) in poset.comparable_pairs() {
        if s == t {
            continue;
        }
        let rho = rank.rho(s, t) as i64;
        if rho == 1 {
            continue; // empty complex: concentrated in dimension -1
        }
        let open = poset.open_interval(s, t);
        let complex = ChainComplex::order_complex(poset, &open);
        let betti = complex.reduced_betti();
        if !betti.concentrated_in(rho - 2) {
            return CmReport {
                is_cohen_macaulay: false,
                witness: Some(CmWitness { interval: (s, t), expected_dim: rho - 2, betti }),
            };
        }
    }
    CmReport { is_cohen_macaulay: true, witness: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{boolean, chain, RankFn};

    #[test]
    fn circle_betti() {
        // Boundary of a triangle: 3 vertices, 3 edges.
        let c = ChainComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]]);
        let b = c.reduced_betti();
        assert_eq!(b.by_dim, vec![0, 1]);
        assert_eq!(b.neg_one, 0);
    }

    #[test]
    fn two_points() {
        let c = ChainComplex::from_facets(&[vec![0], vec![1]]);
        assert_eq!(c.reduced_betti().by_dim, vec![1]);
    }

    #[test]
    fn empty_complex() {
        let c = ChainComplex::from_facets(&[]);
        let b = c.reduced_betti();
        assert_eq!(b.neg_one, 1);
        assert!(b.concentrated_in(-1));
    }

    #[test]
    fn b3_proper_part_is_wedge_of_circle() {
        // Order complex of the proper part of B3 is a hexagon: one
        // 1-sphere, beta_1 = |mu| = 1.
        let b3 = boolean(3);
        let open = b3.open_interval(0, 7);
        let c = ChainComplex::order_complex(&b3, &open);
        let b = c.reduced_betti();
        assert_eq!(b.by_dim, vec![0, 1]);
        // Euler characteristic cross-check: chi - 1 = sum (-1)^d b_d.
        let reduced_chi: i64 = b
            .by_dim
            .iter()
            .enumerate()
            .map(|(d, &v)| if d % 2 == 0 { v as i64 } else { -(v as i64) })
            .sum();
        assert_eq!(c.euler_characteristic() - 1, reduced_chi);
    }

    #[test]
    fn booleans_are_cm() {
        for k in 1..=4 {
            let b = boolean(k);
            let rk = RankFn::graded(&b).unwrap();
            let report = is_cohen_macaulay(&b, &rk);
            assert!(report.is_cohen_macaulay, "B_{k} must be CM");
        }
    }

    #[test]
    fn chains_are_cm() {
        let c = chain(5);
        let rk = RankFn::graded(&c).unwrap();
        assert!(is_cohen_macaulay(&c, &rk).is_cohen_macaulay);
    }

    #[test]
    fn mobius_euler_cross_check() {
        // For a CM poset, beta_{rho-2} = (-1)^rho mu_st on every interval.
        let b4 = boolean(4);
        let rk = RankFn::graded(&b4).unwrap();
        assert!(is_cohen_macaulay(&b4, &rk).is_cohen_macaulay);
        for (s, t) in b4.comparable_pairs() {
            let rho = rk.rho(s, t) as i64;
            if rho < 2 {
                continue;
            }
            let c = ChainComplex::order_complex(&b4, &b4.open_interval(s, t));
            let betti = c.reduced_betti();
            let sign = if rho % 2 == 0 { 1 } else { -1 };
            assert_eq!(betti.get(rho - 2) as i64, sign * b4.mobius()[&(s, t)]);
        }
    }

    #[test]
    fn bareiss_rank_basics() {
        let m = |rows: &[&[i64]]| -> Vec<Vec<BigInt>> {
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
        };
        assert_eq!(bareiss_rank(m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(bareiss_rank(m(&[&[1, 0], &[0, 1]])), 2);
        assert_eq!(bareiss_rank(m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(bareiss_rank(m(&[&[2, 3, 5], &[4, 6, 10], &[1, 1, 1]])), 2);
    }
}
