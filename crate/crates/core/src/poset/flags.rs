//! Flag f/h-vectors of bounded graded posets and the h-polynomial of
//! the order complex of the proper part.
//!
//! The flag vectors are indexed by subsets of the proper ranks
//! `{1, ..., r-1}` (ranks 0 and r are forced in a bounded poset, so the
//! index-set convention of sources that use `{0, ..., r}` collapses to
//! this one). A subset is stored as a bitmask with bit `k` standing for
//! rank `k + 1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::Poly;

use super::{Poset, RankFn};

/// Flag f-vector (`alpha`, rank-selected chain counts) and flag
/// h-vector (`beta`, its Möbius inversion over the subset lattice).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagVector {
    r: usize,
    alpha: Vec<BigInt>,
    beta: Vec<BigInt>,
}

impl FlagVector {
    /// Rank of the underlying poset.
    pub fn rank(&self) -> usize {
        self.r
    }

    fn mask_of(&self, ranks: &[usize]) -> usize {
        let mut mask = 0usize;
        for &k in ranks {
            assert!(k >= 1 && k < self.r, "rank {k} outside proper range 1..{}", self.r);
            mask |= 1 << (k - 1);
        }
        mask
    }

    /// `alpha(S)` for a set of proper ranks.
    pub fn alpha(&self, ranks: &[usize]) -> &BigInt {
        &self.alpha[self.mask_of(ranks)]
    }

    /// `beta(S)` for a set of proper ranks.
    pub fn beta(&self, ranks: &[usize]) -> &BigInt {
        &self.beta[self.mask_of(ranks)]
    }

    pub fn alpha_by_mask(&self) -> &[BigInt] {
        &self.alpha
    }

    pub fn beta_by_mask(&self) -> &[BigInt] {
        &self.beta
    }

    /// Iterate `(mask, |S|, beta(S))`.
    pub fn beta_entries(&self) -> impl Iterator<Item = (usize, u32, &BigInt)> {
        self.beta
            .iter()
            .enumerate()
            .map(|(mask, b)| (mask, mask.count_ones(), b))
    }
}

/// Compute both flag vectors of a bounded graded poset by dynamic
/// programming over rank-selected chains and subset inclusion-exclusion.
pub fn flag_vectors(poset: &Poset, rank: &RankFn) -> FlagVector {
    let (bot, _top) = poset.bounds().expect("flag vectors need a bounded poset");
    let r = rank.rank(poset) as usize;
    assert!(r < 24, "rank too large for subset-indexed flag vectors");
    let proper = r.saturating_sub(1);
    let size = 1usize << proper;

    // Elements by proper rank.
    let mut levels: Vec<Vec<u32>> = vec![Vec::new(); r + 1];
    for v in 0..poset.n() as u32 {
        levels[rank.rho(bot, v) as usize].push(v);
    }

    let mut alpha = vec![BigInt::zero(); size];
    for (mask, slot) in alpha.iter_mut().enumerate() {
        let ranks: Vec<usize> = (0..proper).filter(|k| mask >> k & 1 == 1).map(|k| k + 1).collect();
        *slot = count_rank_chains(poset, &levels, &ranks);
    }

    // beta(S) = sum_{T subseteq S} (-1)^{|S - T|} alpha(T).
    let mut beta = alpha.clone();
    for k in 0..proper {
        for mask in 0..size {
            if mask >> k & 1 == 1 {
                let lower = beta[mask ^ (1 << k)].clone();
                beta[mask] -= lower;
            }
        }
    }

    FlagVector { r, alpha, beta }
}

fn count_rank_chains(poset: &Poset, levels: &[Vec<u32>], ranks: &[usize]) -> BigInt {
    if ranks.is_empty() {
        return BigInt::one();
    }
    let mut current: Vec<(u32, BigInt)> =
        levels[ranks[0]].iter().map(|&v| (v, BigInt::one())).collect();
    for &rk in &ranks[1..] {
        let mut next = Vec::with_capacity(levels[rk].len());
        for &w in &levels[rk] {
            let mut acc = BigInt::zero();
            for (v, c) in &current {
                if poset.leq(*v, w) {
                    acc += c;
                }
            }
            next.push((w, acc));
        }
        current = next;
    }
    current.into_iter().map(|(_, c)| c).sum()
}

/// h-polynomial of the order complex of the proper part of a bounded
/// graded poset, returned with ascending coefficients `h_0 + h_1 x + ...`.
/// Computed via `h(x) = f(x - 1)` on the f-polynomial of chain counts.
pub fn order_complex_h(poset: &Poset, rank: &RankFn) -> Poly {
    let flags = flag_vectors(poset, rank);
    order_complex_h_from_flags(&flags)
}

pub fn order_complex_h_from_flags(flags: &FlagVector) -> Poly {
    let r = flags.rank();
    if r == 0 {
        return Poly::one();
    }
    let d = r - 1;
    // f_j = number of j-element chains in the proper part.
    let mut f = vec![BigInt::zero(); d + 1];
    for (mask, a) in flags.alpha_by_mask().iter().enumerate() {
        f[mask.count_ones() as usize] += a;
    }
    // q(x) = sum_j f_j (x-1)^{d-j}; h_i = [x^{d-i}] q.
    let mut q = Poly::zero();
    let xm1 = Poly::from_i64(&[-1, 1]);
    let mut pow = Poly::one();
    let mut pows = vec![Poly::one()];
    for _ in 0..d {
        pow = &pow * &xm1;
        pows.push(pow.clone());
    }
    for (j, fj) in f.iter().enumerate() {
        q += &pows[d - j].scaled(fj.clone());
    }
    q.rev(d).expect("h-polynomial fits its window")
}
