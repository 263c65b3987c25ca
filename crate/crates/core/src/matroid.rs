//! Matroids from bases/uniform/graphic presentations, their lattices
//! of flats, and the chain-formula route to the Hilbert series of the
//! (augmented) Chow ring — an oracle for the incidence-algebra
//! computation that never touches kernel inversion. Also the
//! chi-specific identity battery: Larson recursions, truncation
//! convolution, gamma recursion, and the good-set flag formula.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::incidence::{ChowSystem, IncAlgebra};
use crate::kernels::characteristic;
use crate::poly::{gamma_of, w_poly, Poly};
use crate::poset::{augment, flag_vectors, induced_subposet, truncate, Poset, RankFn};


#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatroidError {
    #[error("matroid has loops: element {0} lies in no basis")]
    HasLoops(u32),
    #[error("bases must be nonempty and equicardinal")]
    BadBases,
    #[error("rank axioms fail on set {0:#b} with elements {1}, {2}")]
    RankAxioms(u32, u32, u32),
    #[error("ground set too large ({0}); this implementation supports up to 20 elements")]
    TooLarge(usize),
}

/// Matroid on ground set `{0, ..., n-1}` given by its bases as
/// bitmasks. The rank of a set is its largest intersection with a
/// basis.
#[derive(Debug, Clone)]
pub struct Matroid {
    n: usize,
    bases: Vec<u32>,
    rank: u32,
}

impl Matroid {
    pub fn from_bases(n: usize, bases: &[Vec<u32>]) -> Result<Matroid, MatroidError> {
        if n > 20 {
            return Err(MatroidError::TooLarge(n));
        }
        if bases.is_empty() {
            return Err(MatroidError::BadBases);
        }
        let masks: Vec<u32> = bases
            .iter()
            .map(|b| b.iter().fold(0u32, |m, &e| m | 1 << e))
            .collect();
        let rank = masks[0].count_ones();
        if masks.iter().any(|m| m.count_ones() != rank) {
            return Err(MatroidError::BadBases);
        }
        let m = Matroid { n, bases: masks, rank };
        m.check_rank_axioms()?;
        Ok(m)
    }

    /// Uniform matroid `U_{k,n}`.
    pub fn uniform(k: usize, n: usize) -> Result<Matroid, MatroidError> {
        if n > 20 {
            return Err(MatroidError::TooLarge(n));
        }
        let mut bases = Vec::new();
        for mask in 0u32..1 << n {
            if mask.count_ones() as usize == k {
                bases.push(mask);
            }
        }
        Ok(Matroid { n, bases, rank: k as u32 })
    }

    /// Graphic matroid of an edge list on vertices `0..v`: bases are
    /// the maximal spanning forests.
    pub fn graphic(vertices: usize, edges: &[(u32, u32)]) -> Result<Matroid, MatroidError> {
        let n = edges.len();
        if n > 20 {
            return Err(MatroidError::TooLarge(n));
        }
        let forest_rank = |mask: u32| -> u32 {
            let mut parent: Vec<u32> = (0..vertices as u32).collect();
            fn find(parent: &mut Vec<u32>, x: u32) -> u32 {
                if parent[x as usize] != x {
                    let r = find(parent, parent[x as usize]);
                    parent[x as usize] = r;
                }
                parent[x as usize]
            }
            let mut rank = 0;
            for (i, &(a, b)) in edges.iter().enumerate() {
                if mask >> i & 1 == 0 {
                    continue;
                }
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra as usize] = rb;
                    rank += 1;
                }
            }
            rank
        };
        let full_rank = forest_rank(if n == 32 { u32::MAX } else { (1 << n) - 1 });
        let mut bases = Vec::new();
        for mask in 0u32..1 << n {
            if mask.count_ones() == full_rank && forest_rank(mask) == full_rank {
                bases.push(mask);
            }
        }
        if bases.is_empty() {
            return Err(MatroidError::BadBases);
        }
        Ok(Matroid { n, bases, rank: full_rank })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn full_rank(&self) -> u32 {
        self.rank
    }

    /// Rank of a subset (as bitmask): largest intersection with a basis.
    pub fn rank_of(&self, mask: u32) -> u32 {
        self.bases.iter().map(|b| (b & mask).count_ones()).max().unwrap()
    }

    /// Closure: elements whose addition does not raise the rank.
    pub fn closure(&self, mask: u32) -> u32 {
        let r = self.rank_of(mask);
        let mut out = mask;
        for e in 0..self.n {
            if out >> e & 1 == 0 && self.rank_of(mask | 1 << e) == r {
                out |= 1 << e;
            }
        }
        out
    }

    pub fn is_loopless(&self) -> bool {
        self.closure(0) == 0
    }

    /// Monotonicity, unit increase, and local submodularity
    /// `rk(A+e) + rk(A+f) >= rk(A+e+f) + rk(A)` over all `(A, e, f)`.
    pub fn check_rank_axioms(&self) -> Result<(), MatroidError> {
        for mask in 0u32..1 << self.n {
            let r = self.rank_of(mask);
            for e in 0..self.n as u32 {
                if mask >> e & 1 == 1 {
                    continue;
                }
                let re = self.rank_of(mask | 1 << e);
                if re < r || re > r + 1 {
                    return Err(MatroidError::RankAxioms(mask, e, e));
                }
                for f in e + 1..self.n as u32 {
                    if mask >> f & 1 == 1 {
                        continue;
                    }
                    let rf = self.rank_of(mask | 1 << f);
                    let ref_both = self.rank_of(mask | 1 << e | 1 << f);
                    if re + rf < ref_both + r {
                        return Err(MatroidError::RankAxioms(mask, e, f));
                    }
                }
            }
        }
        Ok(())
    }

    /// Lattice of flats with its (matroid-rank) rank function and the
    /// flats as bitmasks, sorted by rank then mask. Errors when the
    /// matroid has loops.
    pub fn lattice_of_flats(&self) -> Result<(Poset, RankFn, Vec<u32>), MatroidError> {
        if !self.is_loopless() {
            let loops = self.closure(0);
            return Err(MatroidError::HasLoops(loops.trailing_zeros()));
        }
        let mut flats: Vec<u32> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        let bottom = self.closure(0);
        let mut queue = vec![bottom];
        seen.insert(bottom);
        while let Some(flat) = queue.pop() {
            flats.push(flat);
            for e in 0..self.n {
                if flat >> e & 1 == 0 {
                    let next = self.closure(flat | 1 << e);
                    if seen.insert(next) {
                        queue.push(next);
                    }
                }
            }
        }
        flats.sort_by_key(|&f| (self.rank_of(f), f));
        let k = flats.len();
        let mut leq = vec![vec![false; k]; k];
        for i in 0..k {
            for j in 0..k {
                leq[i][j] = flats[i] & flats[j] == flats[i];
            }
        }
        let poset = Poset::from_leq(k, &leq).expect("flat containment is a partial order");
        let rho: Vec<u32> = flats.iter().map(|&f| self.rank_of(f)).collect();
        let rank = RankFn::explicit(&poset, rho).expect("matroid rank increases on covers");
        Ok((poset, rank, flats))
    }

    /// Hilbert series of the Chow ring, via the chain/monomial-count
    /// formula over the lattice of flats. Never touches the incidence
    /// algebra.
    pub fn fy_hilbert(&self) -> Result<Poly, MatroidError> {
        let (poset, rank, _) = self.lattice_of_flats()?;
        Ok(chi_chow_by_chains(&poset, &rank))
    }

    /// Hilbert series of the augmented Chow ring: the same chain
    /// formula on the augmented lattice of flats.
    pub fn fy_hilbert_augmented(&self) -> Result<Poly, MatroidError> {
        let (poset, rank, _) = self.lattice_of_flats()?;
        let aug = augment(&poset);
        let aug_rank = RankFn::graded(&aug).expect("augmented lattice is graded");
        drop(rank);
        Ok(chi_chow_by_chains(&aug, &aug_rank))
    }
}

/// The chi-Chow polynomial by the closed chain sum
/// `sum over chains bot = p_0 < ... < p_m  prod x(x^{gap-1} - 1)/(x - 1)`,
/// computed by dynamic programming from the top down. This route is
/// independent of the incidence-algebra inversion.
pub fn chi_chow_by_chains(poset: &Poset, rank: &RankFn) -> Poly {
    let (bot, _top) = poset.bounds().expect("chain formula needs a bounded poset");
    // gap polynomial x + x^2 + ... + x^{d-1}; zero for d = 1.
    let gap = |d: u32| -> Poly {
        Poly::ones(d as i64 - 2).shifted(1)
    };
    // W(v) = 1 + sum_{w > v} gap(rho(v, w)) W(w), over the whole poset.
    let mut w: HashMap<u32, Poly> = HashMap::new();
    let mut order: Vec<u32> = poset.topo().to_vec();
    order.reverse();
    for &v in &order {
        let mut acc = Poly::one();
        for u in 0..poset.n() as u32 {
            if poset.lt(v, u) {
                let g = gap(rank.rho(v, u));
                if !g.is_zero() {
                    acc += &(&g * &w[&u]);
                }
            }
        }
        w.insert(v, acc);
    }
    w.remove(&bot).unwrap()
}

/// Is `s` free of 1 and of consecutive integers? Index sets of the
/// gamma flag formula.
pub fn is_good_set(s: &[usize]) -> bool {
    !s.contains(&1) && s.windows(2).all(|w| w[1] > w[0] + 1)
}

/// One failed identity with a human-readable context.
#[derive(Debug, Clone)]
pub struct ChiIdentityFailure {
    pub identity: &'static str,
    pub context: String,
    pub lhs: Poly,
    pub rhs: Poly,
}

#[derive(Debug, Clone, Default)]
pub struct ChiIdentityReport {
    pub checked: usize,
    pub failures: Vec<ChiIdentityFailure>,
}

impl ChiIdentityReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, identity: &'static str, context: String, lhs: Poly, rhs: Poly) {
        self.checked += 1;
        if lhs != rhs {
            self.failures.push(ChiIdentityFailure { identity, context, lhs, rhs });
        }
    }
}

fn chi_system_on(poset: &Poset) -> ChowSystem {
    let arc = Arc::new(poset.clone());
    let rank = Arc::new(RankFn::graded(&arc).unwrap());
    let alg = IncAlgebra::new(arc, rank);
    ChowSystem::new(characteristic(&alg)).unwrap()
}

fn chow_poly(poset: &Poset) -> Poly {
    chi_system_on(poset).chow().at_bounds().clone()
}

fn aug_chow_poly(poset: &Poset) -> Poly {
    chi_system_on(poset).aug_left().at_bounds().clone()
}

/// The chi-specific identity battery on a bounded graded poset:
/// truncation recursions, the truncation convolution law, the gamma
/// recursion through the gamma polynomials of upper intervals, and the
/// good-set flag formula.
pub fn chi_chow_identities(poset: &Poset, rank: &RankFn) -> ChiIdentityReport {
    let mut report = ChiIdentityReport::default();
    let sys = {
        let alg = IncAlgebra::new(Arc::new(poset.clone()), Arc::new(rank.clone()));
        ChowSystem::new(characteristic(&alg)).unwrap()
    };
    let alg = sys.algebra().clone();
    let local = alg.poset();
    let (bot, top) = local.bounds().expect("bounded poset");
    let r = rank.rank(local) as i64;
    let h = sys.chow();
    let z = sys.z_function();
    let mu = local.mobius();

    // The chain-sum route agrees with the algebraic route everywhere.
    report.record(
        "chain-formula",
        "full interval".into(),
        h.at_bounds().clone(),
        chi_chow_by_chains(local, rank),
    );

    // Truncation recursion: H_P = 1 + x sum_{rho(t) > 1} H_trunc([0,t]).
    let trunc_chow = |s: u32, t: u32| -> Poly {
        let interval = local.interval(s, t);
        let sub = induced_subposet(local, &interval);
        let tsub = truncate(&sub).expect("rank >= 2 interval");
        chow_poly(&tsub)
    };
    let mut rhs = Poly::one();
    for t in 0..local.n() as u32 {
        if rank.rho(bot, t) > 1 {
            rhs += &trunc_chow(bot, t).shifted(1);
        }
    }
    report.record("larson-H", "full interval".into(), h.at_bounds().clone(), rhs);

    // G_P = 1 + x sum_{t != bot} G_trunc([0,t]).
    let mut rhs = Poly::one();
    for t in 0..local.n() as u32 {
        if t == bot {
            continue;
        }
        let interval = local.interval(bot, t);
        let sub = induced_subposet(local, &interval);
        let g_tr = if rank.rho(bot, t) >= 2 {
            aug_chow_poly(&truncate(&sub).unwrap())
        } else {
            // rank-1 interval truncates to a point
            Poly::one()
        };
        rhs += &g_tr.shifted(1);
    }
    report.record(
        "larson-G",
        "full interval".into(),
        sys.aug_left().at_bounds().clone(),
        rhs,
    );

    // Right augmented recursion:
    // F_P = Z_P + x sum_{rho(t) > 1} H_trunc([0,t]) Z_{t,top}.
    let mut rhs = z.at_bounds().clone();
    for t in 0..local.n() as u32 {
        if rank.rho(bot, t) > 1 {
            rhs += &(&trunc_chow(bot, t) * z.get(t, top)).shifted(1);
        }
    }
    report.record(
        "larson-F",
        "full interval".into(),
        sys.aug_right().at_bounds().clone(),
        rhs,
    );

    // Truncation convolution: sum_{s<=w<=t} H_sw mu_wt equals 1, 0, or
    // x H_trunc([s,t]) according to rho_st = 0, 1, >= 2.
    for (s, t) in local.comparable_pairs() {
        let mut lhs = Poly::zero();
        for &w in local.interval(s, t).iter() {
            lhs += &h.get(s, w).scaled(mu[&(w, t)]);
        }
        let rhs = match rank.rho(s, t) {
            0 => Poly::one(),
            1 => Poly::zero(),
            _ => trunc_chow(s, t).shifted(1),
        };
        report.record("truncation-convolution", format!("interval ({s}, {t})"), lhs, rhs);
    }

    // Gamma recursion: gamma_P = W_{r-1} + x sum_{bot < t < top}
    // W_{rho(t)-2} gamma_{[t, top]}.
    let gamma_p = gamma_of(h.at_bounds(), (r - 1) as usize).expect("H is palindromic");
    let mut rhs = w_poly(r - 1);
    for t in 0..local.n() as u32 {
        if t == bot || t == top {
            continue;
        }
        let rho_t = rank.rho(bot, t) as i64;
        let gamma_up = gamma_of(h.get(t, top), (rank.rho(t, top) - 1) as usize)
            .expect("H is palindromic on intervals");
        rhs += &(&w_poly(rho_t - 2) * &gamma_up).shifted(1);
    }
    report.record("gamma-recursion", "full interval".into(), gamma_p.clone(), rhs);

    // Good-set flag formula: gamma_P = sum over good S of beta(S) x^{|S|}.
    let flags = flag_vectors(local, rank);
    let mut by_size: Vec<BigInt> = vec![BigInt::from(0); r as usize + 1];
    for (mask, size, beta) in flags.beta_entries() {
        let ranks: Vec<usize> =
            (0..flags.rank()).filter(|k| mask >> k & 1 == 1).map(|k| k + 1).collect();
        if is_good_set(&ranks) {
            by_size[size as usize] += beta;
        }
    }
    report.record(
        "good-set-gamma",
        "full interval".into(),
        gamma_p,
        Poly::from_vec(by_size),
    );

    report
}

/// Join/augmentation product laws: `H_{P*Q} = H_P G_Q`,
/// `G_P = H_{aug(P)}`, and `G_{P*Q} = G_P G_Q`.
pub fn join_formulas_check(p: &Poset, q: &Poset) -> ChiIdentityReport {
    let mut report = ChiIdentityReport::default();
    let joined = crate::poset::join(p, q).expect("bounded posets");
    report.record(
        "join-H",
        "H_{P*Q} = H_P G_Q".into(),
        chow_poly(&joined),
        &chow_poly(p) * &aug_chow_poly(q),
    );
    report.record(
        "aug-as-chow",
        "G_Q = H_{aug(Q)}".into(),
        aug_chow_poly(q),
        chow_poly(&augment(q)),
    );
    report.record(
        "join-G",
        "G_{P*Q} = G_P G_Q".into(),
        aug_chow_poly(&joined),
        &aug_chow_poly(p) * &aug_chow_poly(q),
    );
    report
}
