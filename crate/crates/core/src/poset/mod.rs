//! Finite posets with precomputed order relation, cover structure,
//! Möbius function, and the constructors/combinators used by the Chow
//! machinery (chains, Boolean lattices, duals, joins, augmentation,
//! truncation, face lattices, diamond products).
//!
//! Elements are dense indices `0..n`. Construction verifies acyclicity
//! and recomputes covers as the transitive reduction, so the relation
//! invariants hold by the time a `Poset` exists. Interval member lists
//! are memoized lazily behind a mutex; readers may share a poset freely.

mod flags;
mod json;

pub use flags::{flag_vectors, order_complex_h, order_complex_h_from_flags, FlagVector};
pub use json::{poset_from_json, poset_to_json, PosetJson, PosetJsonError};

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PosetError {
    #[error("cover index {0} out of range for {1} elements")]
    BadIndex(u32, usize),
    #[error("cover relation has a self-loop at {0}")]
    SelfLoop(u32),
    #[error("relation contains a cycle through elements {0:?}")]
    Cycle(Vec<u32>),
    #[error("relation is not reflexive at {0}")]
    NotReflexive(u32),
    #[error("relation is not antisymmetric on ({0}, {1})")]
    NotAntisymmetric(u32, u32),
    #[error("relation is not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(u32, u32, u32),
    #[error("poset is not bounded (needs unique minimum and maximum)")]
    NotBounded,
    #[error("poset is not graded: element {element} is reached by saturated chains {chain_a:?} and {chain_b:?} of different lengths")]
    NotGraded {
        element: u32,
        chain_a: Vec<u32>,
        chain_b: Vec<u32>,
    },
    #[error("rank function must increase strictly along cover ({0}, {1})")]
    RankNotIncreasing(u32, u32),
    #[error("rank vector length {0} does not match element count {1}")]
    RankLength(usize, usize),
    #[error("operation requires a bounded poset")]
    RequiresBounded,
    #[error("truncation requires rank at least 2")]
    TruncateRank,
}

/// Fixed-size bit set used for rows of the order relation.
#[derive(Clone, PartialEq, Eq)]
pub(crate) struct Bits {
    words: Vec<u64>,
}

impl Bits {
    pub fn new(n: usize) -> Self {
        Bits { words: vec![0; n.div_ceil(64)] }
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn union_with(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Indices present in both `self` and `other`, ascending.
    pub fn and_iter<'a>(&'a self, other: &'a Bits) -> impl Iterator<Item = u32> + 'a {
        self.words
            .iter()
            .zip(&other.words)
            .enumerate()
            .flat_map(|(wi, (a, b))| {
                let mut word = a & b;
                std::iter::from_fn(move || {
                    if word == 0 {
                        return None;
                    }
                    let bit = word.trailing_zeros();
                    word &= word - 1;
                    Some(wi as u32 * 64 + bit)
                })
            })
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Finite poset on elements `0..n`.
pub struct Poset {
    n: usize,
    up: Vec<Bits>,
    down: Vec<Bits>,
    covers: Vec<(u32, u32)>,
    up_covers: Vec<Vec<u32>>,
    down_covers: Vec<Vec<u32>>,
    labels: Option<Vec<String>>,
    topo: Vec<u32>,
    interval_cache: Mutex<HashMap<(u32, u32), Arc<Vec<u32>>>>,
    mobius_cache: OnceLock<HashMap<(u32, u32), i64>>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.up == other.up
    }
}
impl Eq for Poset {}

impl Clone for Poset {
    fn clone(&self) -> Self {
        Poset {
            n: self.n,
            up: self.up.clone(),
            down: self.down.clone(),
            covers: self.covers.clone(),
            up_covers: self.up_covers.clone(),
            down_covers: self.down_covers.clone(),
            labels: self.labels.clone(),
            topo: self.topo.clone(),
            interval_cache: Mutex::new(HashMap::new()),
            mobius_cache: self.mobius_cache.clone(),
        }
    }
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Poset")
            .field("n", &self.n)
            .field("covers", &self.covers)
            .finish()
    }
}

impl Poset {
    /// Build from a cover (or any acyclic) relation; the stored covers
    /// are the transitive reduction of the generated order.
    pub fn from_covers(n: usize, covers: &[(u32, u32)]) -> Result<Poset, PosetError> {
        Self::from_covers_labeled(n, covers, None)
    }

    pub fn from_covers_labeled(
        n: usize,
        covers: &[(u32, u32)],
        labels: Option<Vec<String>>,
    ) -> Result<Poset, PosetError> {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in covers {
            if a as usize >= n || b as usize >= n {
                return Err(PosetError::BadIndex(a.max(b), n));
            }
            if a == b {
                return Err(PosetError::SelfLoop(a));
            }
            adj[a as usize].push(b);
        }
        let topo = toposort(n, &adj)?;
        // Transitive closure in reverse topological order.
        let mut up = vec![Bits::new(n); n];
        for &v in topo.iter().rev() {
            let mut row = Bits::new(n);
            row.set(v as usize);
            for &w in &adj[v as usize] {
                let other = up[w as usize].clone();
                row.union_with(&other);
            }
            up[v as usize] = row;
        }
        Ok(Self::from_closure(n, up, topo, labels))
    }

    /// Build from a full order relation, verifying the poset axioms.
    pub fn from_leq(n: usize, leq: &[Vec<bool>]) -> Result<Poset, PosetError> {
        for (i, row) in leq.iter().enumerate() {
            if !row[i] {
                return Err(PosetError::NotReflexive(i as u32));
            }
            for j in 0..n {
                if i != j && row[j] && leq[j][i] {
                    return Err(PosetError::NotAntisymmetric(i as u32, j as u32));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j || !leq[i][j] {
                    continue;
                }
                for k in 0..n {
                    if j != k && leq[j][k] && !leq[i][k] {
                        return Err(PosetError::NotTransitive(i as u32, j as u32, k as u32));
                    }
                }
            }
        }
        let mut adj = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] {
                    adj[i].push(j as u32);
                }
            }
        }
        let topo = toposort(n, &adj)?;
        let mut up = vec![Bits::new(n); n];
        for i in 0..n {
            for j in 0..n {
                if leq[i][j] {
                    up[i].set(j);
                }
            }
        }
        Ok(Self::from_closure(n, up, topo, None))
    }

    fn from_closure(n: usize, up: Vec<Bits>, topo: Vec<u32>, labels: Option<Vec<String>>) -> Poset {
        let mut down = vec![Bits::new(n); n];
        for s in 0..n {
            for t in 0..n {
                if up[s].get(t) {
                    down[t].set(s);
                }
            }
        }
        // Covers: s < t with no intermediate element.
        let mut covers = Vec::new();
        let mut up_covers = vec![Vec::new(); n];
        let mut down_covers = vec![Vec::new(); n];
        for s in 0..n {
            for t in 0..n {
                if s == t || !up[s].get(t) {
                    continue;
                }
                let has_mid = up[s].and_iter(&down[t]).any(|w| w as usize != s && w as usize != t);
                if !has_mid {
                    covers.push((s as u32, t as u32));
                    up_covers[s].push(t as u32);
                    down_covers[t].push(s as u32);
                }
            }
        }
        Poset {
            n,
            up,
            down,
            covers,
            up_covers,
            down_covers,
            labels,
            topo,
            interval_cache: Mutex::new(HashMap::new()),
            mobius_cache: OnceLock::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn leq(&self, s: u32, t: u32) -> bool {
        self.up[s as usize].get(t as usize)
    }

    #[inline]
    pub fn lt(&self, s: u32, t: u32) -> bool {
        s != t && self.leq(s, t)
    }

    pub fn covers(&self) -> &[(u32, u32)] {
        &self.covers
    }

    pub fn up_covers(&self, s: u32) -> &[u32] {
        &self.up_covers[s as usize]
    }

    pub fn down_covers(&self, t: u32) -> &[u32] {
        &self.down_covers[t as usize]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Elements in topological (linear extension) order.
    pub fn topo(&self) -> &[u32] {
        &self.topo
    }

    /// Closed interval `[s, t]`, memoized.
    pub fn interval(&self, s: u32, t: u32) -> Arc<Vec<u32>> {
        debug_assert!(self.leq(s, t));
        let mut cache = self.interval_cache.lock().unwrap();
        cache
            .entry((s, t))
            .or_insert_with(|| {
                Arc::new(self.up[s as usize].and_iter(&self.down[t as usize]).collect())
            })
            .clone()
    }

    /// Elements strictly between `s` and `t`.
    pub fn open_interval(&self, s: u32, t: u32) -> Vec<u32> {
        self.interval(s, t)
            .iter()
            .copied()
            .filter(|&w| w != s && w != t)
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<u32> {
        (0..self.n as u32).filter(|&v| self.down_covers[v as usize].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<u32> {
        (0..self.n as u32).filter(|&v| self.up_covers[v as usize].is_empty()).collect()
    }

    pub fn minimum(&self) -> Option<u32> {
        let m = self.minimal_elements();
        (m.len() == 1 && self.up[m[0] as usize].count() == self.n).then(|| m[0])
    }

    pub fn maximum(&self) -> Option<u32> {
        let m = self.maximal_elements();
        (m.len() == 1 && self.down[m[0] as usize].count() == self.n).then(|| m[0])
    }

    pub fn is_bounded(&self) -> bool {
        self.minimum().is_some() && self.maximum().is_some()
    }

    pub fn bounds(&self) -> Result<(u32, u32), PosetError> {
        match (self.minimum(), self.maximum()) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(PosetError::NotBounded),
        }
    }

    /// All pairs `s <= t`, ascending by index.
    pub fn comparable_pairs(&self) -> Vec<(u32, u32)> {
        let mut pairs = Vec::new();
        for s in 0..self.n as u32 {
            for t in 0..self.n as u32 {
                if self.leq(s, t) {
                    pairs.push((s, t));
                }
            }
        }
        pairs
    }

    /// Möbius function on all comparable pairs, computed by the
    /// recursion `mu_st = -sum_{s <= w < t} mu_sw` and cached.
    pub fn mobius(&self) -> &HashMap<(u32, u32), i64> {
        self.mobius_cache.get_or_init(|| {
            let mut mu = HashMap::new();
            for &s in &self.topo {
                for &t in &self.topo {
                    if !self.leq(s, t) {
                        continue;
                    }
                    let value = if s == t {
                        1
                    } else {
                        let mut acc: i64 = 0;
                        for &w in self.interval(s, t).iter() {
                            if w != t {
                                acc = acc.checked_add(mu[&(s, w)]).expect("mobius overflow");
                            }
                        }
                        -acc
                    };
                    mu.insert((s, t), value);
                }
            }
            mu
        })
    }

    /// Number of multichains `s <= t_1 <= ... <= t_{n-1} <= t` over the
    /// full interval of a bounded poset; this is `zeta^n` at `(0,1)`.
    pub fn multichain_count(&self, n: usize) -> BigInt {
        let (bot, top) = self.bounds().expect("multichain_count requires bounded poset");
        self.zeta_power(bot, top, n)
    }

    /// `zeta^n` evaluated at `(s, t)`.
    pub fn zeta_power(&self, s: u32, t: u32, n: usize) -> BigInt {
        assert!(n >= 1, "zeta_power needs n >= 1");
        let interval = self.interval(s, t);
        let pos: HashMap<u32, usize> =
            interval.iter().enumerate().map(|(i, &w)| (w, i)).collect();
        // a[w] = zeta^k_{s,w}; iterate k from 1 to n.
        let mut a: Vec<BigInt> = vec![BigInt::one(); interval.len()];
        for _ in 1..n {
            let mut next = vec![BigInt::zero(); interval.len()];
            for (i, &w) in interval.iter().enumerate() {
                let mut acc = BigInt::zero();
                for u in self.up[s as usize].and_iter(&self.down[w as usize]) {
                    // u ranges over [s, w]; it lies in [s, t] as well.
                    acc += &a[pos[&u]];
                }
                next[i] = acc;
            }
            a = next;
        }
        a[pos[&t]].clone()
    }

    /// Graph isomorphism search specialized to posets: returns a map
    /// `p` with `i <= j  iff  p[i] <= p[j]`, if one exists. Backtracking
    /// with degree/level signatures; intended for desk-scale posets.
    pub fn find_isomorphism(&self, other: &Poset) -> Option<Vec<u32>> {
        if self.n != other.n || self.covers.len() != other.covers.len() {
            return None;
        }
        let sig = |p: &Poset| -> Vec<(usize, usize, usize, usize)> {
            (0..p.n)
                .map(|v| {
                    (
                        p.up_covers[v].len(),
                        p.down_covers[v].len(),
                        p.up[v].count(),
                        p.down[v].count(),
                    )
                })
                .collect()
        };
        let sa = sig(self);
        let sb = sig(other);
        {
            let mut ca = sa.clone();
            let mut cb = sb.clone();
            ca.sort_unstable();
            cb.sort_unstable();
            if ca != cb {
                return None;
            }
        }
        // Map elements in topo order so partial images are downward closed.
        let order = self.topo.clone();
        let mut map = vec![u32::MAX; self.n];
        let mut used = vec![false; self.n];
        fn assign(
            a: &Poset,
            b: &Poset,
            order: &[u32],
            k: usize,
            map: &mut Vec<u32>,
            used: &mut Vec<bool>,
            sa: &[(usize, usize, usize, usize)],
            sb: &[(usize, usize, usize, usize)],
        ) -> bool {
            if k == order.len() {
                return true;
            }
            let v = order[k] as usize;
            for w in 0..b.n {
                if used[w] || sa[v] != sb[w] {
                    continue;
                }
                // Check consistency against already-mapped elements.
                let ok = order[..k].iter().all(|&u| {
                    let u = u as usize;
                    let m = map[u];
                    a.leq(u as u32, v as u32) == b.leq(m, w as u32)
                        && a.leq(v as u32, u as u32) == b.leq(w as u32, m)
                });
                if !ok {
                    continue;
                }
                map[v] = w as u32;
                used[w] = true;
                if assign(a, b, order, k + 1, map, used, sa, sb) {
                    return true;
                }
                map[v] = u32::MAX;
                used[w] = false;
            }
            false
        }
        assign(self, other, &order, 0, &mut map, &mut used, &sa, &sb).then_some(map)
    }
}

fn toposort(n: usize, adj: &[Vec<u32>]) -> Result<Vec<u32>, PosetError> {
    let mut indeg = vec![0usize; n];
    for row in adj {
        for &w in row {
            indeg[w as usize] += 1;
        }
    }
    let mut queue: Vec<u32> = (0..n as u32).filter(|&v| indeg[v as usize] == 0).collect();
    let mut topo = Vec::with_capacity(n);
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        topo.push(v);
        for &w in &adj[v as usize] {
            indeg[w as usize] -= 1;
            if indeg[w as usize] == 0 {
                queue.push(w);
            }
        }
    }
    if topo.len() != n {
        let leftover: Vec<u32> = (0..n as u32).filter(|&v| indeg[v as usize] > 0).collect();
        return Err(PosetError::Cycle(leftover));
    }
    Ok(topo)
}

/// Weak rank function presented by a per-element potential: the rank of
/// an interval `[s, t]` is `rho[t] - rho[s]`. Interval additivity is
/// automatic in this form; construction checks strict increase along
/// covers. The graded rank of a bounded graded poset is the canonical
/// instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankFn {
    rho: Vec<u32>,
    graded: bool,
}

impl RankFn {
    /// Saturated-chain-length rank of a bounded graded poset. Errors
    /// carry two saturated chains of different lengths as witness when
    /// the poset is not graded.
    pub fn graded(poset: &Poset) -> Result<RankFn, PosetError> {
        let (bot, _top) = poset.bounds()?;
        let n = poset.n();
        let mut rho = vec![u32::MAX; n];
        let mut parent = vec![u32::MAX; n];
        rho[bot as usize] = 0;
        for &v in poset.topo() {
            if rho[v as usize] == u32::MAX {
                continue;
            }
            for &w in poset.up_covers(v) {
                let cand = rho[v as usize] + 1;
                if rho[w as usize] == u32::MAX {
                    rho[w as usize] = cand;
                    parent[w as usize] = v;
                } else if rho[w as usize] != cand {
                    let chain = |mut x: u32| {
                        let mut c = vec![x];
                        while parent[x as usize] != u32::MAX {
                            x = parent[x as usize];
                            c.push(x);
                        }
                        c.reverse();
                        c
                    };
                    let mut chain_b = chain(v);
                    chain_b.push(w);
                    let chain_a = chain(w);
                    return Err(PosetError::NotGraded { element: w, chain_a, chain_b });
                }
            }
        }
        Ok(RankFn { rho, graded: true })
    }

    /// Explicit weak rank from a per-element potential (used e.g. for
    /// lattices of flats of polymatroids).
    pub fn explicit(poset: &Poset, rho: Vec<u32>) -> Result<RankFn, PosetError> {
        if rho.len() != poset.n() {
            return Err(PosetError::RankLength(rho.len(), poset.n()));
        }
        for &(s, t) in poset.covers() {
            if rho[t as usize] <= rho[s as usize] {
                return Err(PosetError::RankNotIncreasing(s, t));
            }
        }
        Ok(RankFn { rho, graded: false })
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    /// `rho_{st}`.
    #[inline]
    pub fn rho(&self, s: u32, t: u32) -> u32 {
        self.rho[t as usize] - self.rho[s as usize]
    }

    /// Potential of a single element (rank above the minimum for the
    /// graded case).
    #[inline]
    pub fn rho_elem(&self, w: u32) -> u32 {
        self.rho[w as usize]
    }

    /// Rank of the full interval of a bounded poset.
    pub fn rank(&self, poset: &Poset) -> u32 {
        let (bot, top) = poset.bounds().expect("rank of unbounded poset");
        self.rho(bot, top)
    }
}

/// Outcome of the Eulerian test: `mu_st = (-1)^{rho_st}` on every
/// interval, with the first failing interval as witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerianReport {
    pub is_eulerian: bool,
    pub witness: Option<(u32, u32)>,
}

/// Möbius-based Eulerian test.
pub fn is_eulerian(poset: &Poset, rank: &RankFn) -> EulerianReport {
    let mu = poset.mobius();
    for (&(s, t), &m) in mu.iter() {
        let expected = if rank.rho(s, t) % 2 == 0 { 1 } else { -1 };
        if m != expected {
            return EulerianReport { is_eulerian: false, witness: Some((s, t)) };
        }
    }
    EulerianReport { is_eulerian: true, witness: None }
}

/// Second, independent Eulerian test: every interval contains equally
/// many elements of odd and even rank.
pub fn is_eulerian_by_counts(poset: &Poset, rank: &RankFn) -> EulerianReport {
    for (s, t) in poset.comparable_pairs() {
        if s == t {
            continue;
        }
        let mut balance: i64 = 0;
        for &w in poset.interval(s, t).iter() {
            if rank.rho(s, w) % 2 == 0 {
                balance += 1;
            } else {
                balance -= 1;
            }
        }
        if balance != 0 {
            return EulerianReport { is_eulerian: false, witness: Some((s, t)) };
        }
    }
    EulerianReport { is_eulerian: true, witness: None }
}

// ---------------------------------------------------------------------
// Constructors and combinators.
// ---------------------------------------------------------------------

/// Chain on `n` elements (rank `n - 1`).
pub fn chain(n: usize) -> Poset {
    assert!(n >= 1);
    let covers: Vec<(u32, u32)> = (1..n as u32).map(|i| (i - 1, i)).collect();
    Poset::from_covers(n, &covers).unwrap()
}

/// Boolean lattice on `k` atoms: subsets of `{0, ..., k-1}`.
pub fn boolean(k: usize) -> Poset {
    assert!(k <= 20, "boolean lattice too large");
    let n = 1usize << k;
    let mut covers = Vec::new();
    for mask in 0..n as u32 {
        for bit in 0..k as u32 {
            if mask >> bit & 1 == 0 {
                covers.push((mask, mask | 1 << bit));
            }
        }
    }
    Poset::from_covers(n, &covers).unwrap()
}

pub fn dual(p: &Poset) -> Poset {
    let covers: Vec<(u32, u32)> = p.covers().iter().map(|&(a, b)| (b, a)).collect();
    Poset::from_covers(p.n(), &covers).unwrap()
}

/// Ordinal sum: everything in `p` below everything in `q`.
pub fn ordinal_sum(p: &Poset, q: &Poset) -> Poset {
    let shift = p.n() as u32;
    let mut covers: Vec<(u32, u32)> = p.covers().to_vec();
    covers.extend(q.covers().iter().map(|&(a, b)| (a + shift, b + shift)));
    for &a in &p.maximal_elements() {
        for &b in &q.minimal_elements() {
            covers.push((a, b + shift));
        }
    }
    Poset::from_covers(p.n() + q.n(), &covers).unwrap()
}

/// Join `P * Q = P (+) (Q minus its minimum)`; both posets must be
/// bounded. The rank of the join is the sum of the ranks.
pub fn join(p: &Poset, q: &Poset) -> Result<Poset, PosetError> {
    p.bounds()?;
    let (qbot, _) = q.bounds()?;
    let keep: Vec<u32> = (0..q.n() as u32).filter(|&v| v != qbot).collect();
    Ok(ordinal_sum(p, &induced_subposet(q, &keep)))
}

/// Add a new minimum element below `p` (index 0 in the result; old
/// element `i` becomes `i + 1`).
pub fn augment(p: &Poset) -> Poset {
    let mut covers: Vec<(u32, u32)> =
        p.covers().iter().map(|&(a, b)| (a + 1, b + 1)).collect();
    for &m in &p.minimal_elements() {
        covers.push((0, m + 1));
    }
    Poset::from_covers(p.n() + 1, &covers).unwrap()
}

/// Remove the coatoms of a bounded graded poset of rank >= 2.
pub fn truncate(p: &Poset) -> Result<Poset, PosetError> {
    let (_bot, top) = p.bounds()?;
    let coatoms: Vec<u32> = p.down_covers(top).to_vec();
    if p.n() - coatoms.len() < 2 {
        return Err(PosetError::TruncateRank);
    }
    let keep: Vec<u32> = (0..p.n() as u32).filter(|v| !coatoms.contains(v)).collect();
    Ok(induced_subposet(p, &keep))
}

/// Subposet induced on `keep` (order inherited); element `i` of the
/// result corresponds to `keep[i]`.
pub fn induced_subposet(p: &Poset, keep: &[u32]) -> Poset {
    let n = keep.len();
    let leq: Vec<Vec<bool>> = keep
        .iter()
        .map(|&a| keep.iter().map(|&b| p.leq(a, b)).collect())
        .collect();
    Poset::from_leq(n, &leq).unwrap()
}

/// Face-lattice product of two bounded posets: pairs of non-minimum
/// elements ordered componentwise, plus a new minimum. For face
/// lattices of polytopes this is the face lattice of the Cartesian
/// product, so it preserves the Eulerian property.
pub fn diamond_product(p: &Poset, q: &Poset) -> Result<Poset, PosetError> {
    let (pbot, _) = p.bounds()?;
    let (qbot, _) = q.bounds()?;
    let pe: Vec<u32> = (0..p.n() as u32).filter(|&v| v != pbot).collect();
    let qe: Vec<u32> = (0..q.n() as u32).filter(|&v| v != qbot).collect();
    let n = pe.len() * qe.len() + 1;
    let idx = |i: usize, j: usize| 1 + i * qe.len() + j;
    let mut leq = vec![vec![false; n]; n];
    for j in 0..n {
        leq[0][j] = true;
    }
    for (i1, &a1) in pe.iter().enumerate() {
        for (j1, &b1) in qe.iter().enumerate() {
            leq[idx(i1, j1)][idx(i1, j1)] = true;
            for (i2, &a2) in pe.iter().enumerate() {
                for (j2, &b2) in qe.iter().enumerate() {
                    if p.leq(a1, a2) && q.leq(b1, b2) {
                        leq[idx(i1, j1)][idx(i2, j2)] = true;
                    }
                }
            }
        }
    }
    Poset::from_leq(n, &leq)
}

/// Face lattice of the `d`-simplex, including the empty face: the
/// Boolean lattice on `d + 1` atoms.
pub fn simplex_face_lattice(d: usize) -> Poset {
    boolean(d + 1)
}

/// Face lattice of the `d`-cube. Faces are sign vectors in
/// `{0, 1, *}^d` plus the empty face; rank of a face is its number of
/// free coordinates plus one.
pub fn cube_face_lattice(d: usize) -> Poset {
    assert!(d <= 6, "cube face lattice too large");
    let m = 3usize.pow(d as u32);
    let n = m + 1;
    let trit = |code: usize, i: usize| code / 3usize.pow(i as u32) % 3;
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for j in 0..m {
        leq[0][j + 1] = true; // empty face below everything
    }
    for a in 0..m {
        for b in 0..m {
            // face a <= face b iff every fixed coordinate of b agrees with a
            // being equally fixed: b free (2) or equal values.
            let ok = (0..d).all(|i| trit(b, i) == 2 || trit(a, i) == trit(b, i));
            if ok {
                leq[a + 1][b + 1] = true;
            }
        }
    }
    Poset::from_leq(n, &leq).unwrap()
}

/// Face lattice of the `d`-dimensional cross-polytope: dual of the
/// cube's.
pub fn crosspolytope_face_lattice(d: usize) -> Poset {
    dual(&cube_face_lattice(d))
}

/// Face lattice of an `m`-gon (rank 3): empty face, m vertices, m
/// edges, and the polygon itself.
pub fn polygon_face_lattice(m: usize) -> Poset {
    assert!(m >= 3);
    let n = 2 * m + 2;
    let mut covers = Vec::new();
    let top = (n - 1) as u32;
    for v in 0..m as u32 {
        covers.push((0, v + 1));
    }
    for e in 0..m as u32 {
        let edge = m as u32 + 1 + e;
        covers.push((e + 1, edge));
        covers.push(((e + 1) % m as u32 + 1, edge));
        covers.push((edge, top));
    }
    Poset::from_covers(n, &covers).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_and_covers() {
        let c3 = chain(3);
        assert_eq!(c3.covers(), &[(0, 1), (1, 2)]);
        assert!(c3.leq(0, 2));
        assert_eq!(c3.minimum(), Some(0));
        assert_eq!(c3.maximum(), Some(2));
        // Redundant edges are reduced away.
        let p = Poset::from_covers(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn cycle_detection() {
        match Poset::from_covers(2, &[(0, 1), (1, 0)]) {
            Err(PosetError::Cycle(_)) => {}
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn mobius_values() {
        let c2 = chain(2);
        assert_eq!(c2.mobius()[&(0, 1)], -1);
        let b3 = boolean(3);
        assert_eq!(b3.mobius()[&(0, 7)], -1); // (-1)^3
        assert_eq!(b3.mobius()[&(0, 0)], 1);
        // mu * zeta = delta on every interval.
        for (s, t) in b3.comparable_pairs() {
            let sum: i64 = b3.interval(s, t).iter().map(|&w| b3.mobius()[&(s, w)]).sum();
            assert_eq!(sum, i64::from(s == t));
        }
    }

    #[test]
    fn graded_rank_and_witness() {
        let b3 = boolean(3);
        let rk = RankFn::graded(&b3).unwrap();
        assert_eq!(rk.rank(&b3), 3);
        assert_eq!(rk.rho_elem(0b101), 2);

        // Diamond with one long side: not graded.
        let p = Poset::from_covers(5, &[(0, 1), (1, 4), (0, 2), (2, 3), (3, 4)]).unwrap();
        match RankFn::graded(&p) {
            Err(PosetError::NotGraded { chain_a, chain_b, .. }) => {
                assert_ne!(chain_a.len(), chain_b.len());
            }
            other => panic!("expected not-graded, got {other:?}"),
        }
    }

    #[test]
    fn eulerian_tests_agree() {
        for (poset, expect) in [
            (boolean(3), true),
            (chain(3), false),
            (cube_face_lattice(2), true),
            (crosspolytope_face_lattice(3), true),
            (polygon_face_lattice(5), true),
        ] {
            let rk = RankFn::graded(&poset).unwrap();
            let a = is_eulerian(&poset, &rk);
            let b = is_eulerian_by_counts(&poset, &rk);
            assert_eq!(a.is_eulerian, expect);
            assert_eq!(a.is_eulerian, b.is_eulerian);
        }
        let c3 = chain(3);
        let rk = RankFn::graded(&c3).unwrap();
        assert_eq!(is_eulerian(&c3, &rk).witness, Some((0, 2)));
    }

    #[test]
    fn constructors() {
        // augment(C2) = C3
        assert_eq!(augment(&chain(2)), chain(3));
        // join(C2, P) raises rank by 1
        let b2 = boolean(2);
        let j = join(&chain(2), &b2).unwrap();
        let rk = RankFn::graded(&j).unwrap();
        assert_eq!(rk.rank(&j), 3);
        // simplex face lattice of a triangle is B3
        assert_eq!(simplex_face_lattice(2).n(), 8);
        assert!(simplex_face_lattice(2).find_isomorphism(&boolean(3)).is_some());
        // cube and cross-polytope face lattices are dual
        let c = cube_face_lattice(2);
        assert_eq!(c.n(), 10);
        assert!(dual(&c).find_isomorphism(&crosspolytope_face_lattice(2)).is_some());
        // 2-cube = 4-gon
        assert!(c.find_isomorphism(&polygon_face_lattice(4)).is_some());
    }

    #[test]
    fn truncation() {
        let b3 = boolean(3);
        let t = truncate(&b3).unwrap();
        assert_eq!(t.n(), 5); // drop the three coatoms
        let rk = RankFn::graded(&t).unwrap();
        assert_eq!(rk.rank(&t), 2);
        assert!(truncate(&chain(2)).is_err());
    }

    #[test]
    fn multichains() {
        assert_eq!(chain(2).multichain_count(1), BigInt::from(1));
        assert_eq!(boolean(2).multichain_count(2), BigInt::from(4));
        assert_eq!(chain(2).multichain_count(3), BigInt::from(3));
    }

    #[test]
    fn diamond_product_eulerian() {
        // square x segment = 3-cube, at the level of face lattices
        let sq = polygon_face_lattice(4);
        let seg = simplex_face_lattice(1);
        let prod = diamond_product(&sq, &seg).unwrap();
        let rk = RankFn::graded(&prod).unwrap();
        assert_eq!(rk.rank(&prod), 4);
        assert!(is_eulerian(&prod, &rk).is_eulerian);
        assert!(prod.find_isomorphism(&cube_face_lattice(3)).is_some());
    }

    #[test]
    fn isomorphism_search() {
        let b3 = boolean(3);
        let map = b3.find_isomorphism(&dual(&b3)).unwrap();
        for (s, t) in b3.comparable_pairs() {
            assert!(dual(&b3).leq(map[s as usize], map[t as usize]));
        }
        assert!(boolean(2).find_isomorphism(&chain(4)).is_none());
    }
}
