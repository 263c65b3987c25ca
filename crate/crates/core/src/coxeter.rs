//! Bruhat intervals of symmetric and dihedral groups: Bruhat order and
//! graph, R-polynomials and their nonnegative reparameterization,
//! reflection orders, and the path enumeration behind the Chow
//! function of the R-kernel.
//!
//! Group elements are stored as permutations (dihedral groups act on
//! polygon vertices), lengths come from a Cayley-graph BFS, and the
//! Bruhat order is reachability along length-increasing reflection
//! edges. Three path engines coexist: a DFS that also yields the
//! census and descent words (small intervals), an exponent DP for
//! the Chow polynomial (all supported sizes), and a word DP feeding
//! the complete cd-index.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::incidence::{IncAlgebra, IncElem};
use crate::poly::Poly;
use crate::poset::{Poset, RankFn};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("elements are not comparable in Bruhat order")]
    NotComparable,
    #[error("unknown generator index {0} (generators are 1-based)")]
    BadGenerator(usize),
    #[error("dihedral groups need m >= 2")]
    BadDihedral,
    #[error("symmetric groups supported for 1 <= n <= 7")]
    BadSymmetric,
    #[error("not a reduced word for the longest element")]
    NotLongestWord,
    #[error("reflection order must enumerate all {expected} reflections, got {got}")]
    IncompleteOrder { expected: usize, got: usize },
}

type Perm = Vec<u8>;

fn pmul(a: &Perm, b: &Perm) -> Perm {
    b.iter().map(|&i| a[i as usize]).collect()
}

fn pinv(a: &Perm) -> Perm {
    let mut out = vec![0u8; a.len()];
    for (i, &v) in a.iter().enumerate() {
        out[v as usize] = i as u8;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupSpec {
    /// Symmetric group on n letters, simple reflections s_1..s_{n-1}.
    Symmetric(usize),
    /// Dihedral group I_2(m), simple reflections s_1, s_2.
    Dihedral(usize),
}

/// A finite Coxeter group with its Cayley lengths, reflections, and
/// Bruhat order fully tabulated.
pub struct CoxeterGroup {
    spec: GroupSpec,
    elems: Vec<Perm>,
    index: HashMap<Perm, u32>,
    length: Vec<u32>,
    gens: Vec<Perm>,
    /// Element ids of the reflections, sorted by (length, one-line).
    reflections: Vec<u32>,
    /// Bruhat order: `leq[u]` has bit `v` set iff `u <= v`.
    leq: Vec<crate::poset::Bits>,
    r_memo: Mutex<HashMap<(u32, u32), Poly>>,
}

impl CoxeterGroup {
    pub fn symmetric(n: usize) -> Result<Arc<CoxeterGroup>, CoxeterError> {
        if n == 0 || n > 7 {
            return Err(CoxeterError::BadSymmetric);
        }
        let gens: Vec<Perm> = (0..n.saturating_sub(1))
            .map(|i| {
                let mut p: Perm = (0..n as u8).collect();
                p.swap(i, i + 1);
                p
            })
            .collect();
        Ok(Self::build(GroupSpec::Symmetric(n), n, gens))
    }

    pub fn dihedral(m: usize) -> Result<Arc<CoxeterGroup>, CoxeterError> {
        if m < 2 {
            return Err(CoxeterError::BadDihedral);
        }
        let (points, s, t): (usize, Perm, Perm) = if m == 2 {
            (4, vec![1, 0, 2, 3], vec![0, 1, 3, 2])
        } else {
            let s: Perm = (0..m).map(|x| ((m - x) % m) as u8).collect();
            let t: Perm = (0..m).map(|x| ((m + 1 - x) % m) as u8).collect();
            (m, s, t)
        };
        let group = Self::build(GroupSpec::Dihedral(m), points, vec![s, t]);
        assert_eq!(group.elems.len(), 2 * m, "dihedral group order");
        Ok(group)
    }

    fn build(spec: GroupSpec, points: usize, gens: Vec<Perm>) -> Arc<CoxeterGroup> {
        let id: Perm = (0..points as u8).collect();
        // BFS over right multiplication: word lengths.
        let mut order: Vec<Perm> = vec![id.clone()];
        let mut length_of: HashMap<Perm, u32> = HashMap::from([(id, 0)]);
        let mut head = 0;
        while head < order.len() {
            let w = order[head].clone();
            let lw = length_of[&w];
            head += 1;
            for g in &gens {
                let ws = pmul(&w, g);
                length_of.entry(ws.clone()).or_insert_with(|| {
                    order.push(ws);
                    lw + 1
                });
            }
        }
        // Deterministic ids: sort by (length, one-line).
        let mut elems = order;
        elems.sort_by(|a, b| (length_of[a], a).cmp(&(length_of[b], b)));
        let index: HashMap<Perm, u32> =
            elems.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let length: Vec<u32> = elems.iter().map(|p| length_of[p]).collect();

        // Reflections: all conjugates of the generators.
        let mut refl_set = std::collections::BTreeSet::new();
        for w in &elems {
            let winv = pinv(w);
            for g in &gens {
                refl_set.insert(pmul(&pmul(w, g), &winv));
            }
        }
        let mut reflections: Vec<u32> = refl_set.iter().map(|p| index[p]).collect();
        reflections.sort_by_key(|&t| (length[t as usize], elems[t as usize].clone()));

        // Bruhat order: reachability along length-increasing
        // reflection edges, processed by decreasing length.
        let n = elems.len();
        let mut leq = vec![crate::poset::Bits::new(n); n];
        let mut by_len_desc: Vec<u32> = (0..n as u32).collect();
        by_len_desc.sort_by_key(|&v| std::cmp::Reverse(length[v as usize]));
        for &u in &by_len_desc {
            let mut row = crate::poset::Bits::new(n);
            row.set(u as usize);
            for &t in &reflections {
                let ut = pmul(&elems[u as usize], &elems[t as usize]);
                let w = index[&ut];
                if length[w as usize] > length[u as usize] {
                    let other = leq[w as usize].clone();
                    row.union_with(&other);
                }
            }
            leq[u as usize] = row;
        }

        Arc::new(CoxeterGroup {
            spec,
            elems,
            index,
            length,
            gens,
            reflections,
            leq,
            r_memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn longest(&self) -> u32 {
        (0..self.elems.len() as u32).max_by_key(|&v| self.length[v as usize]).unwrap()
    }

    pub fn length(&self, w: u32) -> u32 {
        self.length[w as usize]
    }

    pub fn reflections(&self) -> &[u32] {
        &self.reflections
    }

    pub fn one_line(&self, w: u32) -> &[u8] {
        &self.elems[w as usize]
    }

    /// Product of 1-based generator indices, e.g. `[1, 2, 1]`.
    pub fn element_from_word(&self, word: &[usize]) -> Result<u32, CoxeterError> {
        let mut w: Perm = (0..self.elems[0].len() as u8).collect();
        for &i in word {
            if i == 0 || i > self.gens.len() {
                return Err(CoxeterError::BadGenerator(i));
            }
            w = pmul(&w, &self.gens[i - 1]);
        }
        Ok(self.index[&w])
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.index[&pmul(&self.elems[a as usize], &self.elems[b as usize])]
    }

    pub fn bruhat_leq(&self, u: u32, v: u32) -> bool {
        self.leq[u as usize].get(v as usize)
    }

    /// Right descent set as generator indices (0-based).
    pub fn right_descents(&self, w: u32) -> Vec<usize> {
        (0..self.gens.len())
            .filter(|&i| {
                let ws = pmul(&self.elems[w as usize], &self.gens[i]);
                self.length[self.index[&ws] as usize] < self.length[w as usize]
            })
            .collect()
    }

    /// R-polynomial of the pair, by the right-descent recursion;
    /// memoized across the group.
    pub fn r_polynomial(&self, u: u32, v: u32) -> Poly {
        if !self.bruhat_leq(u, v) {
            return Poly::zero();
        }
        if u == v {
            return Poly::one();
        }
        if let Some(p) = self.r_memo.lock().unwrap().get(&(u, v)) {
            return p.clone();
        }
        let s = *self
            .right_descents(v)
            .first()
            .expect("v != e has a right descent");
        let gs = &self.gens[s];
        let vs = self.index[&pmul(&self.elems[v as usize], gs)];
        let us = self.index[&pmul(&self.elems[u as usize], gs)];
        let result = if self.length[us as usize] < self.length[u as usize] {
            self.r_polynomial(us, vs)
        } else {
            let a = self.r_polynomial(us, vs).shifted(1);
            let b = &self.r_polynomial(u, vs) * &Poly::from_i64(&[-1, 1]);
            &a + &b
        };
        self.r_memo.lock().unwrap().insert((u, v), result.clone());
        result
    }

    /// The nonnegative reparameterization: the unique polynomial with
    /// `R_uv(x) = x^{rho/2} Rt(x^{1/2} - x^{-1/2})`. Extracted exactly
    /// in `Z[z]` with `z^2 = x`; panics if the substitution leaves a
    /// residue (that would mean a broken R recursion).
    pub fn r_tilde(&self, u: u32, v: u32) -> Poly {
        let r = self.r_polynomial(u, v);
        if r.is_zero() {
            return Poly::zero();
        }
        let rho = (self.length(v) - self.length(u)) as usize;
        // P(z) = R(z^2) = sum_k c_k z^{rho-k} (z^2-1)^k, solved by
        // descending k (leading term of the k-th basis element is
        // z^{rho+k}).
        let mut residual = r.stretch2();
        let z2m1 = Poly::from_i64(&[-1, 0, 1]);
        let mut coeffs = vec![BigInt::zero(); rho + 1];
        for k in (0..=rho).rev() {
            let c = residual.coeff(rho + k);
            if !c.is_zero() {
                let mut basis = Poly::monomial(1, rho - k);
                for _ in 0..k {
                    basis = &basis * &z2m1;
                }
                residual -= &basis.scaled(c.clone());
                coeffs[k] = c;
            }
        }
        assert!(residual.is_zero(), "R-tilde substitution residue: {residual}");
        let rt = Poly::from_vec(coeffs);
        assert!(rt.is_nonnegative(), "R-tilde must be nonnegative: {rt}");
        rt
    }
}

/// A Bruhat interval with its poset, graded rank, and Bruhat graph.
pub struct BruhatInterval {
    pub group: Arc<CoxeterGroup>,
    /// Group ids of the interval elements; index in this list is the
    /// local poset index. Sorted by (length, id).
    pub elems: Vec<u32>,
    pub poset: Arc<Poset>,
    pub rank: Arc<RankFn>,
    /// Bruhat graph edges `(local_from, local_to, reflection_pos)`
    /// where `reflection_pos` indexes `group.reflections()`.
    pub edges: Vec<(u32, u32, u32)>,
}

/// Extract the Bruhat interval `[u, v]` with its graph.
pub fn bruhat_interval(
    group: &Arc<CoxeterGroup>,
    u: u32,
    v: u32,
) -> Result<BruhatInterval, CoxeterError> {
    if !group.bruhat_leq(u, v) {
        return Err(CoxeterError::NotComparable);
    }
    let mut elems: Vec<u32> = (0..group.order() as u32)
        .filter(|&w| group.bruhat_leq(u, w) && group.bruhat_leq(w, v))
        .collect();
    elems.sort_by_key(|&w| (group.length(w), w));
    let local: HashMap<u32, u32> =
        elems.iter().enumerate().map(|(i, &w)| (w, i as u32)).collect();

    let mut edges = Vec::new();
    let mut covers = Vec::new();
    for (i, &w) in elems.iter().enumerate() {
        for (tpos, &t) in group.reflections().iter().enumerate() {
            let wt = group.mul(w, t);
            if let Some(&j) = local.get(&wt) {
                let delta = group.length(wt) as i64 - group.length(w) as i64;
                if delta > 0 {
                    edges.push((i as u32, j, tpos as u32));
                    if delta == 1 {
                        covers.push((i as u32, j));
                    }
                }
            }
        }
    }
    let poset = Arc::new(Poset::from_covers(elems.len(), &covers).expect("Bruhat order is acyclic"));
    let rank = Arc::new(RankFn::graded(&poset).expect("Bruhat intervals are graded"));
    Ok(BruhatInterval { group: group.clone(), elems, poset, rank, edges })
}

impl BruhatInterval {
    pub fn rho(&self) -> u32 {
        self.rank.rank(&self.poset)
    }

    /// R-polynomials of all subintervals as an incidence element; a
    /// kernel on the interval poset.
    pub fn r_polynomials(&self) -> IncElem {
        let alg = IncAlgebra::new(self.poset.clone(), self.rank.clone());
        alg.from_fn(|s, t| self.group.r_polynomial(self.elems[s as usize], self.elems[t as usize]))
    }
}

/// Total order on the reflections of a group. `pos[t]` is the position
/// of `group.reflections()[t]` in the order.
#[derive(Debug, Clone)]
pub struct ReflectionOrder {
    pos: Vec<u32>,
}

impl ReflectionOrder {
    /// Position of reflection index `tpos` (into `group.reflections()`).
    pub fn position(&self, tpos: u32) -> u32 {
        self.pos[tpos as usize]
    }

    /// The default order: lexicographic on transposed pairs for
    /// symmetric groups (a reflection order for type A), prefix
    /// conjugates of the alternating longest word for dihedral groups.
    pub fn default_for(group: &CoxeterGroup) -> ReflectionOrder {
        match group.spec() {
            GroupSpec::Symmetric(_) => {
                let mut keyed: Vec<(Vec<u8>, u32)> = group
                    .reflections()
                    .iter()
                    .enumerate()
                    .map(|(tpos, &t)| {
                        let p = group.one_line(t);
                        let moved: Vec<u8> =
                            (0..p.len()).filter(|&i| p[i] != i as u8).map(|i| i as u8).collect();
                        (moved, tpos as u32)
                    })
                    .collect();
                keyed.sort();
                let mut pos = vec![0u32; keyed.len()];
                for (rank, (_, tpos)) in keyed.into_iter().enumerate() {
                    pos[tpos as usize] = rank as u32;
                }
                ReflectionOrder { pos }
            }
            GroupSpec::Dihedral(m) => {
                let word: Vec<usize> = (0..m).map(|i| 1 + i % 2).collect();
                Self::from_longest_word(group, &word).expect("alternating word is reduced")
            }
        }
    }

    /// Dyer's construction: the prefix-conjugate sequence
    /// `t_k = s_{i_1} ... s_{i_k} ... s_{i_1}` of a reduced word for
    /// the longest element enumerates the reflections in a reflection
    /// order.
    pub fn from_longest_word(
        group: &CoxeterGroup,
        word: &[usize],
    ) -> Result<ReflectionOrder, CoxeterError> {
        let w0 = group.longest();
        let w = group.element_from_word(word)?;
        if w != w0 || word.len() != group.length(w0) as usize {
            return Err(CoxeterError::NotLongestWord);
        }
        let refl_index: HashMap<u32, u32> = group
            .reflections()
            .iter()
            .enumerate()
            .map(|(i, &t)| (t, i as u32))
            .collect();
        let mut pos = vec![u32::MAX; group.reflections().len()];
        let mut prefix = group.identity();
        for (k, &i) in word.iter().enumerate() {
            let s = group.element_from_word(&[i])?;
            let t = {
                // prefix * s * prefix^{-1}
                let ps = group.mul(prefix, s);
                let prefix_inv = group.index[&pinv(group.one_line(prefix).to_vec().as_ref())];
                group.mul(ps, prefix_inv)
            };
            let tpos = refl_index[&t];
            if pos[tpos as usize] != u32::MAX {
                return Err(CoxeterError::NotLongestWord);
            }
            pos[tpos as usize] = k as u32;
            prefix = group.mul(prefix, s);
        }
        let got = pos.iter().filter(|&&p| p != u32::MAX).count();
        if got != pos.len() {
            return Err(CoxeterError::IncompleteOrder { expected: pos.len(), got });
        }
        Ok(ReflectionOrder { pos })
    }

    /// Explicit order from reflection words (1-based generator
    /// indices), e.g. the six type-A words `1 / 121 / 12321 / 2 / 232 / 3`.
    pub fn from_words(group: &CoxeterGroup, words: &[Vec<usize>]) -> Result<ReflectionOrder, CoxeterError> {
        let refl_index: HashMap<u32, u32> = group
            .reflections()
            .iter()
            .enumerate()
            .map(|(i, &t)| (t, i as u32))
            .collect();
        let mut pos = vec![u32::MAX; group.reflections().len()];
        for (rank, word) in words.iter().enumerate() {
            let t = group.element_from_word(word)?;
            let tpos = *refl_index
                .get(&t)
                .ok_or(CoxeterError::IncompleteOrder { expected: pos.len(), got: 0 })?;
            pos[tpos as usize] = rank as u32;
        }
        let got = pos.iter().filter(|&&p| p != u32::MAX).count();
        if got != pos.len() {
            return Err(CoxeterError::IncompleteOrder { expected: pos.len(), got });
        }
        Ok(ReflectionOrder { pos })
    }
}

/// Per-path statistics gathered by the DFS enumerator: counts grouped
/// by (length, descents) and by full descent word.
#[derive(Debug, Clone, Default)]
pub struct PathStats {
    /// (path length, descent count) -> number of paths.
    pub census: BTreeMap<(u32, u32), BigInt>,
    /// (word length = path length - 1, descent bitmask) -> count.
    pub descent_words: BTreeMap<(u8, u32), BigInt>,
}

impl PathStats {
    pub fn total_paths(&self) -> BigInt {
        self.census.values().sum()
    }

    /// Chow polynomial from the census with the descent statistic.
    pub fn chow_des(&self, rho: u32) -> Poly {
        let mut acc = Poly::zero();
        for (&(len, des), count) in &self.census {
            assert_eq!((rho - len) % 2, 0, "path parity violated");
            let e = (rho - len) / 2 + des;
            acc += &Poly::monomial(count.clone(), e as usize);
        }
        acc
    }

    /// Chow polynomial with the ascent statistic (must agree).
    pub fn chow_asc(&self, rho: u32) -> Poly {
        let mut acc = Poly::zero();
        for (&(len, des), count) in &self.census {
            let asc = len - des - 1;
            let e = (rho - len) / 2 + asc;
            acc += &Poly::monomial(count.clone(), e as usize);
        }
        acc
    }
}

/// Enumerate every path of the Bruhat graph from bottom to top by
/// depth-first search. Exponential in the worst case; intended as the
/// oracle for small intervals (and for the explicit path census).
pub fn dfs_paths(interval: &BruhatInterval, order: &ReflectionOrder) -> PathStats {
    let n = interval.elems.len();
    let mut out: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
    for &(a, b, tpos) in &interval.edges {
        out[a as usize].push((b, order.position(tpos)));
    }
    let target = (n - 1) as u32;
    let mut stats = PathStats::default();
    // Trivial interval: the empty path.
    if target == 0 {
        stats.census.insert((0, 0), BigInt::one());
        stats.descent_words.insert((0, 0), BigInt::one());
        return stats;
    }
    fn go(
        out: &[Vec<(u32, u32)>],
        target: u32,
        v: u32,
        last: u32,
        len: u8,
        word: u32,
        stats: &mut PathStats,
    ) {
        if v == target {
            let des = word.count_ones();
            *stats
                .census
                .entry((len as u32 + 1, des))
                .or_insert_with(BigInt::zero) += 1;
            *stats
                .descent_words
                .entry((len, word))
                .or_insert_with(BigInt::zero) += 1;
            // do not return: no outgoing edges from the top anyway
        }
        for &(w, lpos) in &out[v as usize] {
            let bit = u32::from(lpos < last) << len;
            go(out, target, w, lpos, len + 1, word | bit, stats);
        }
    }
    for &(w, lpos) in &out[0] {
        go(&out, target, w, lpos, 0, 0, &mut stats);
    }
    stats
}

/// Descent-word distribution by dynamic programming over
/// (vertex, last label) states; polynomial in the interval size for a
/// fixed rank. Agrees with [`dfs_paths`].
pub fn descent_words_dp(
    interval: &BruhatInterval,
    order: &ReflectionOrder,
) -> BTreeMap<(u8, u32), BigInt> {
    let n = interval.elems.len();
    let target = (n - 1) as u32;
    let mut out: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
    for &(a, b, tpos) in &interval.edges {
        out[a as usize].push((b, order.position(tpos)));
    }
    if target == 0 {
        return BTreeMap::from([((0, 0), BigInt::one())]);
    }
    // dp[(v, last)] = word distribution of partial paths 0 -> v ending
    // with label `last`.
    let mut dp: HashMap<(u32, u32), BTreeMap<(u8, u32), BigInt>> = HashMap::new();
    for &(w, lpos) in &out[0] {
        dp.entry((w, lpos))
            .or_default()
            .entry((0, 0))
            .and_modify(|c| *c += 1)
            .or_insert_with(BigInt::one);
    }
    // Process states in increasing length of the vertex.
    let mut states: Vec<(u32, u32)> = dp.keys().copied().collect();
    let mut seen: std::collections::HashSet<(u32, u32)> = states.iter().copied().collect();
    let mut result: BTreeMap<(u8, u32), BigInt> = BTreeMap::new();
    // Vertices are sorted by length already (interval.elems order).
    let mut queue: std::collections::BinaryHeap<std::cmp::Reverse<(u32, u32)>> =
        states.drain(..).map(std::cmp::Reverse).collect();
    while let Some(std::cmp::Reverse((v, last))) = queue.pop() {
        let Some(words) = dp.remove(&(v, last)) else { continue };
        if v == target {
            for (k, c) in &words {
                *result.entry(*k).or_insert_with(BigInt::zero) += c;
            }
            continue;
        }
        for &(w, lpos) in &out[v as usize] {
            let descent = u32::from(lpos < last);
            let entry = dp.entry((w, lpos)).or_default();
            for (&(len, word), c) in &words {
                let key = (len + 1, word | (descent << len));
                entry
                    .entry(key)
                    .and_modify(|acc| *acc += c)
                    .or_insert_with(|| c.clone());
            }
            if seen.insert((w, lpos)) {
                queue.push(std::cmp::Reverse((w, lpos)));
            }
        }
    }
    result
}

/// Chow polynomial of the interval by the descent path formula,
/// computed with an exponent-level DP (both statistics run and
/// compared). This is the main engine; `dfs_paths` is its oracle.
pub fn chow_by_paths(interval: &BruhatInterval, order: &ReflectionOrder) -> Poly {
    let rho = interval.rho();
    let des = chow_paths_dp(interval, order, false);
    let asc = chow_paths_dp(interval, order, true);
    assert_eq!(des, asc, "ascent/descent path statistics disagree");
    debug_assert!(des.is_palindromic((rho.max(1) - 1) as usize) || des.is_zero());
    des
}

fn chow_paths_dp(interval: &BruhatInterval, order: &ReflectionOrder, use_asc: bool) -> Poly {
    let n = interval.elems.len();
    let target = (n - 1) as u32;
    if target == 0 {
        return Poly::one();
    }
    let rho = interval.rho() as usize;
    let mut out: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
    for &(a, b, tpos) in &interval.edges {
        out[a as usize].push((b, order.position(tpos)));
    }
    // Track E = 2*stat + rho - len, which stays in [0, 2 rho] and is
    // even at the end; exponent = E/2. Per edge, E changes by
    // 2*stat_increment - 1.
    let width = 2 * rho + 1;
    let mut dp: HashMap<(u32, u32), Vec<BigInt>> = HashMap::new();
    for &(w, lpos) in &out[0] {
        let e = rho - 1; // len 1, stat 0
        dp.entry((w, lpos)).or_insert_with(|| vec![BigInt::zero(); width])[e] += 1;
    }
    let mut queue: std::collections::BinaryHeap<std::cmp::Reverse<(u32, u32)>> =
        dp.keys().copied().map(std::cmp::Reverse).collect();
    let mut seen: std::collections::HashSet<(u32, u32)> = dp.keys().copied().collect();
    let mut acc = vec![BigInt::zero(); width];
    while let Some(std::cmp::Reverse((v, last))) = queue.pop() {
        let Some(vals) = dp.remove(&(v, last)) else { continue };
        if v == target {
            for (i, c) in vals.iter().enumerate() {
                acc[i] += c;
            }
            continue;
        }
        for &(w, lpos) in &out[v as usize] {
            let is_descent = lpos < last;
            let inc: i64 = if use_asc {
                2 * i64::from(!is_descent) - 1
            } else {
                2 * i64::from(is_descent) - 1
            };
            let entry = dp.entry((w, lpos)).or_insert_with(|| vec![BigInt::zero(); width]);
            for (i, c) in vals.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let j = i as i64 + inc;
                assert!((0..width as i64).contains(&j), "exponent range");
                entry[j as usize] += c;
            }
            if seen.insert((w, lpos)) {
                queue.push(std::cmp::Reverse((w, lpos)));
            }
        }
    }
    // Collapse E to exponents E/2.
    let mut coeffs = vec![BigInt::zero(); rho];
    for (i, c) in acc.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        assert!(i % 2 == 0, "odd exponent parity in path DP");
        coeffs[i / 2] = c;
    }
    Poly::from_vec(coeffs)
}

/// Chow polynomial of the full group `[e, w_0]` of `S_n`, by the path
/// DP under the default reflection order.
pub fn full_group_chow(n: usize) -> Result<Poly, CoxeterError> {
    let group = CoxeterGroup::symmetric(n)?;
    if group.order() == 1 {
        return Ok(Poly::one());
    }
    let interval = bruhat_interval(&group, group.identity(), group.longest())?;
    let order = ReflectionOrder::default_for(&group);
    Ok(chow_by_paths(&interval, &order))
}

/// Combinatorial-invariance spot check: group the intervals of rank
/// `<= max_rank` into isomorphism classes and require equal Chow
/// polynomials within each class.
#[derive(Debug, Default)]
pub struct InvarianceReport {
    pub classes: usize,
    pub intervals: usize,
    pub mismatches: Vec<((u32, u32), (u32, u32))>,
}

pub fn comb_invariance_spotcheck(
    group: &Arc<CoxeterGroup>,
    max_rank: u32,
) -> InvarianceReport {
    let order = ReflectionOrder::default_for(group);
    let mut classes: Vec<(Poset, Poly, (u32, u32))> = Vec::new();
    let mut report = InvarianceReport::default();
    for u in 0..group.order() as u32 {
        for v in 0..group.order() as u32 {
            if !group.bruhat_leq(u, v) {
                continue;
            }
            let rho = group.length(v) - group.length(u);
            if rho == 0 || rho > max_rank {
                continue;
            }
            let interval = bruhat_interval(group, u, v).unwrap();
            let h = chow_by_paths(&interval, &order);
            report.intervals += 1;
            let poset = interval.poset.as_ref().clone();
            let mut found = false;
            for (rep, rep_h, rep_pair) in &classes {
                if rep.n() == poset.n() && rep.find_isomorphism(&poset).is_some() {
                    found = true;
                    if *rep_h != h {
                        report.mismatches.push((*rep_pair, (u, v)));
                    }
                    break;
                }
            }
            if !found {
                classes.push((poset, h, (u, v)));
            }
        }
    }
    report.classes = classes.len();
    report
}
