//! The incidence algebra `I_rho(P)`: convolution, inversion, the rev
//! involution, kernel verification, KLS functions, Chow and augmented
//! Chow functions, Z-functions, and the numerical canonical
//! decomposition checks.
//!
//! An [`IncElem`] assigns a polynomial to every closed interval, with
//! `deg a_st <= rho_st`. Everything here is exact; any inexact division
//! by `x - 1` inside the Chow machinery is treated as data corruption
//! and panics rather than degrading.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::Poly;
use crate::poset::{Poset, RankFn};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IncError {
    #[error("elements live on different posets or rank functions")]
    MismatchedAlgebra,
    #[error("diagonal entry at element {0} is not a unit (+1/-1)")]
    NonUnitDiagonal(u32),
    #[error("entry on interval ({0}, {1}) violates the degree bound")]
    DegreeBound(u32, u32),
    #[error("element is not a kernel; first failing interval ({0}, {1})")]
    NotKernel(u32, u32),
    #[error("entry on interval ({0}, {1}) is not symmetric with center (rho-1)/2")]
    NotPalindromic(u32, u32),
    #[error("diagonal entry at {0} must be 1")]
    DiagonalNotOne(u32),
}

/// Shared handle to the poset and weak rank function an element lives on.
#[derive(Clone)]
pub struct IncAlgebra {
    poset: Arc<Poset>,
    rank: Arc<RankFn>,
}

impl IncAlgebra {
    pub fn new(poset: Arc<Poset>, rank: Arc<RankFn>) -> Self {
        IncAlgebra { poset, rank }
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn rank(&self) -> &Arc<RankFn> {
        &self.rank
    }

    pub fn rho(&self, s: u32, t: u32) -> u32 {
        self.rank.rho(s, t)
    }

    fn same(&self, other: &IncAlgebra) -> bool {
        (Arc::ptr_eq(&self.poset, &other.poset) || *self.poset == *other.poset)
            && (Arc::ptr_eq(&self.rank, &other.rank) || *self.rank == *other.rank)
    }

    /// Comparable pairs sorted by interval rank (well-founded order for
    /// every recursion here).
    pub fn pairs_by_rank(&self) -> Vec<(u32, u32)> {
        let mut pairs = self.poset.comparable_pairs();
        pairs.sort_by_key(|&(s, t)| (self.rho(s, t), s, t));
        pairs
    }

    /// Multiplicative identity `delta`.
    pub fn delta(&self) -> IncElem {
        self.from_fn(|s, t| if s == t { Poly::one() } else { Poly::zero() })
    }

    /// All-ones element `zeta`.
    pub fn zeta(&self) -> IncElem {
        self.from_fn(|_, _| Poly::one())
    }

    /// Möbius function as an incidence element.
    pub fn mobius_elem(&self) -> IncElem {
        let mu = self.poset.mobius();
        self.from_fn(|s, t| Poly::constant(mu[&(s, t)]))
    }

    /// Build an element entrywise. Panics if the degree bound
    /// `deg a_st <= rho_st` is violated; use [`IncAlgebra::try_from_fn`]
    /// for fallible input.
    pub fn from_fn(&self, mut f: impl FnMut(u32, u32) -> Poly) -> IncElem {
        self.try_from_fn(|s, t| Ok(f(s, t))).unwrap()
    }

    pub fn try_from_fn(
        &self,
        mut f: impl FnMut(u32, u32) -> Result<Poly, IncError>,
    ) -> Result<IncElem, IncError> {
        let mut table = HashMap::new();
        for (s, t) in self.poset.comparable_pairs() {
            let p = f(s, t)?;
            if let Some(d) = p.degree() {
                if d as u32 > self.rho(s, t) {
                    return Err(IncError::DegreeBound(s, t));
                }
            }
            table.insert((s, t), p);
        }
        Ok(IncElem { alg: self.clone(), table })
    }
}

/// Element of the incidence algebra: one polynomial per closed interval.
#[derive(Clone)]
pub struct IncElem {
    alg: IncAlgebra,
    table: HashMap<(u32, u32), Poly>,
}

impl fmt::Debug for IncElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut entries: Vec<_> = self.table.iter().collect();
        entries.sort_by_key(|(&k, _)| k);
        writeln!(f, "IncElem {{")?;
        for (&(s, t), p) in entries {
            writeln!(f, "  ({s}, {t}): {p}")?;
        }
        write!(f, "}}")
    }
}

impl PartialEq for IncElem {
    fn eq(&self, other: &Self) -> bool {
        self.alg.same(&other.alg) && self.table == other.table
    }
}

impl IncElem {
    pub fn algebra(&self) -> &IncAlgebra {
        &self.alg
    }

    pub fn get(&self, s: u32, t: u32) -> &Poly {
        &self.table[&(s, t)]
    }

    /// Entry at the full interval of a bounded poset.
    pub fn at_bounds(&self) -> &Poly {
        let (bot, top) = self.alg.poset.bounds().expect("bounded poset");
        self.get(bot, top)
    }

    /// Convolution `(ab)_st = sum_{s <= w <= t} a_sw b_wt`.
    pub fn convolve(&self, other: &IncElem) -> IncElem {
        self.try_convolve(other).expect("convolution across mismatched algebras")
    }

    pub fn try_convolve(&self, other: &IncElem) -> Result<IncElem, IncError> {
        if !self.alg.same(&other.alg) {
            return Err(IncError::MismatchedAlgebra);
        }
        let poset = &self.alg.poset;
        let mut table = HashMap::with_capacity(self.table.len());
        for (s, t) in poset.comparable_pairs() {
            let mut acc = Poly::zero();
            for &w in poset.interval(s, t).iter() {
                let a = &self.table[&(s, w)];
                if a.is_zero() {
                    continue;
                }
                acc += &(a * &other.table[&(w, t)]);
            }
            table.insert((s, t), acc);
        }
        Ok(IncElem { alg: self.alg.clone(), table })
    }

    /// Two-sided inverse; exists iff every diagonal entry is +1 or -1.
    pub fn invert(&self) -> Result<IncElem, IncError> {
        let poset = &self.alg.poset;
        for v in 0..poset.n() as u32 {
            let d = &self.table[&(v, v)];
            if *d != Poly::one() && *d != Poly::constant(-1) {
                return Err(IncError::NonUnitDiagonal(v));
            }
        }
        let mut table: HashMap<(u32, u32), Poly> = HashMap::with_capacity(self.table.len());
        for (s, t) in self.alg.pairs_by_rank() {
            if s == t {
                table.insert((s, t), self.table[&(s, t)].clone());
                continue;
            }
            // sum_{s <= w <= t} a_sw b_wt = 0  =>  b_st = -a_ss * sum_{s < w <= t} a_sw b_wt
            let mut acc = Poly::zero();
            for &w in poset.interval(s, t).iter() {
                if w == s {
                    continue;
                }
                acc += &(&self.table[&(s, w)] * &table[&(w, t)]);
            }
            let unit = &self.table[&(s, s)]; // +-1
            table.insert((s, t), -(unit * &acc));
        }
        let inv = IncElem { alg: self.alg.clone(), table };
        debug_assert!({
            let left = inv.convolve(self);
            left == self.alg.delta()
        });
        Ok(inv)
    }

    /// The rev involution: `(a^rev)_st = x^{rho_st} a_st(1/x)`.
    pub fn rev(&self) -> IncElem {
        let mut table = HashMap::with_capacity(self.table.len());
        for (&(s, t), p) in &self.table {
            let d = self.alg.rho(s, t) as usize;
            table.insert((s, t), p.rev(d).expect("degree bound holds in I_rho"));
        }
        IncElem { alg: self.alg.clone(), table }
    }

    /// Entrywise map.
    pub fn map(&self, mut f: impl FnMut(u32, u32, &Poly) -> Poly) -> IncElem {
        let mut table = HashMap::with_capacity(self.table.len());
        for (s, t) in self.alg.poset.comparable_pairs() {
            table.insert((s, t), f(s, t, &self.table[&(s, t)]));
        }
        IncElem { alg: self.alg.clone(), table }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.table.values().all(Poly::is_nonnegative)
    }

    /// First interval whose entry differs, scanning by ascending rank.
    pub fn first_difference(&self, other: &IncElem) -> Option<(u32, u32)> {
        self.alg
            .pairs_by_rank()
            .into_iter()
            .find(|&(s, t)| self.get(s, t) != other.get(s, t))
    }
}

/// Verdict of the kernel test `kappa_ss = 1` and `kappa kappa^rev = delta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelCheck {
    pub is_kernel: bool,
    pub is_nondegenerate: bool,
    pub failing_interval: Option<(u32, u32)>,
}

/// Check the kernel axioms; failures are reported, never panicked.
pub fn check_kernel(kappa: &IncElem) -> KernelCheck {
    let alg = kappa.algebra();
    for v in 0..alg.poset.n() as u32 {
        if *kappa.get(v, v) != Poly::one() {
            return KernelCheck {
                is_kernel: false,
                is_nondegenerate: false,
                failing_interval: Some((v, v)),
            };
        }
    }
    let product = kappa.convolve(&kappa.rev());
    let delta = alg.delta();
    if let Some(interval) = product.first_difference(&delta) {
        return KernelCheck {
            is_kernel: false,
            is_nondegenerate: false,
            failing_interval: Some(interval),
        };
    }
    let nondeg = alg
        .poset
        .comparable_pairs()
        .into_iter()
        .all(|(s, t)| kappa.get(s, t).degree() == Some(alg.rho(s, t) as usize));
    KernelCheck { is_kernel: true, is_nondegenerate: nondeg, failing_interval: None }
}

/// Reduced kernel: `kappa_st / (x - 1)` off the diagonal, `-1` on it.
/// The divisibility is guaranteed for kernels; an inexact division
/// means the input was corrupt and panics.
pub fn reduce_kernel(kappa: &IncElem) -> IncElem {
    let xm1 = Poly::from_i64(&[-1, 1]);
    kappa.map(|s, t, p| {
        if s == t {
            Poly::constant(-1)
        } else {
            p.divide_exact(&xm1)
                .unwrap_or_else(|e| panic!("kernel entry ({s},{t}) not divisible by x-1: {e}"))
        }
    })
}

/// A kernel together with lazily computed KLS/Chow/Z/augmented data.
/// Each derived element is computed once per (kernel, poset) and and
/// shared immutably afterwards.
pub struct ChowSystem {
    kappa: IncElem,
    check: KernelCheck,
    reduced: OnceLock<IncElem>,
    f: OnceLock<IncElem>,
    g: OnceLock<IncElem>,
    h: OnceLock<IncElem>,
    z: OnceLock<IncElem>,
    aug_f: OnceLock<IncElem>,
    aug_g: OnceLock<IncElem>,
}

impl ChowSystem {
    /// Verify the kernel axioms and wrap the kernel.
    pub fn new(kappa: IncElem) -> Result<ChowSystem, IncError> {
        let check = check_kernel(&kappa);
        if !check.is_kernel {
            let (s, t) = check.failing_interval.unwrap();
            return Err(IncError::NotKernel(s, t));
        }
        Ok(ChowSystem {
            kappa,
            check,
            reduced: OnceLock::new(),
            f: OnceLock::new(),
            g: OnceLock::new(),
            h: OnceLock::new(),
            z: OnceLock::new(),
            aug_f: OnceLock::new(),
            aug_g: OnceLock::new(),
        })
    }

    pub fn kernel(&self) -> &IncElem {
        &self.kappa
    }

    pub fn kernel_check(&self) -> &KernelCheck {
        &self.check
    }

    pub fn algebra(&self) -> &IncAlgebra {
        self.kappa.algebra()
    }

    pub fn reduced(&self) -> &IncElem {
        self.reduced.get_or_init(|| reduce_kernel(&self.kappa))
    }

    /// Right KLS function: the unique f with unit diagonal,
    /// `deg f_st < rho_st / 2`, and `f^rev = kappa f`.
    pub fn kls_right(&self) -> &IncElem {
        self.f.get_or_init(|| kls_extract(&self.kappa, Side::Right))
    }

    /// Left KLS function: `g^rev = g kappa`.
    pub fn kls_left(&self) -> &IncElem {
        self.g.get_or_init(|| kls_extract(&self.kappa, Side::Left))
    }

    /// Chow function `H = -(reduced kernel)^{-1}`, computed by the
    /// rank-ascending recursion `H_st = sum_{s < w <= t} kbar_sw H_wt`.
    pub fn chow(&self) -> &IncElem {
        self.h.get_or_init(|| {
            let alg = self.kappa.algebra().clone();
            let kbar = self.reduced();
            let poset = alg.poset().clone();
            let mut table: HashMap<(u32, u32), Poly> = HashMap::new();
            for (s, t) in alg.pairs_by_rank() {
                if s == t {
                    table.insert((s, t), Poly::one());
                    continue;
                }
                let mut acc = Poly::zero();
                for &w in poset.interval(s, t).iter() {
                    if w == s {
                        continue;
                    }
                    acc += &(kbar.get(s, w) * &table[&(w, t)]);
                }
                table.insert((s, t), acc);
            }
            let h = IncElem { alg, table };
            debug_assert!(h
                .algebra()
                .poset()
                .comparable_pairs()
                .iter()
                .all(|&(s, t)| {
                    s == t
                        || h.get(s, t)
                            .is_palindromic(self.algebra().rho(s, t) as usize - 1)
                }));
            h
        })
    }

    /// Z-function `Z = g^rev f = g f^rev`; both routes are computed and
    /// must agree exactly.
    pub fn z_function(&self) -> &IncElem {
        self.z.get_or_init(|| {
            let f = self.kls_right();
            let g = self.kls_left();
            let z1 = g.rev().convolve(f);
            let z2 = g.convolve(&f.rev());
            if let Some((s, t)) = z1.first_difference(&z2) {
                panic!("Z-function routes disagree on interval ({s}, {t})");
            }
            debug_assert!(z1 == z1.rev(), "Z must be rev-symmetric");
            z1
        })
    }

    /// Right augmented Chow function `F = H f^rev`.
    pub fn aug_right(&self) -> &IncElem {
        self.aug_f.get_or_init(|| self.chow().convolve(&self.kls_right().rev()))
    }

    /// Left augmented Chow function `G = g^rev H`.
    pub fn aug_left(&self) -> &IncElem {
        self.aug_g.get_or_init(|| self.kls_left().rev().convolve(self.chow()))
    }
}

enum Side {
    Right,
    Left,
}

/// Shared KLS extraction. On each interval, the defining relation
/// leaves `a^rev_st - a_st` equal to a sum of known lower terms; the
/// half-degree bound separates the two copies, so the element is read
/// off the lower coefficient half. The mirrored upper half is then
/// checked exactly.
fn kls_extract(kappa: &IncElem, side: Side) -> IncElem {
    let alg = kappa.algebra().clone();
    let poset = alg.poset().clone();
    let mut table: HashMap<(u32, u32), Poly> = HashMap::new();
    for (s, t) in alg.pairs_by_rank() {
        if s == t {
            table.insert((s, t), Poly::one());
            continue;
        }
        let rho = alg.rho(s, t) as usize;
        let mut known = Poly::zero();
        for &w in poset.interval(s, t).iter() {
            match side {
                // f^rev = kappa f:  f^rev_st - f_st = sum_{s < w <= t} kappa_sw f_wt
                Side::Right => {
                    if w != s {
                        known += &(kappa.get(s, w) * &table[&(w, t)]);
                    }
                }
                // g^rev = g kappa:  g^rev_st - g_st = sum_{s <= w < t} g_sw kappa_wt
                Side::Left => {
                    if w != t {
                        known += &(&table[&(s, w)] * kappa.get(w, t));
                    }
                }
            }
        }
        // known = a^rev_st - a_st; exponents below rho/2 carry -a_st.
        let half = rho.div_ceil(2);
        let low: Vec<_> = (0..half).map(|i| -known.coeff(i)).collect();
        let a = Poly::from_vec(low);
        let residue = &a.rev(rho).expect("half-degree bound") - &a;
        if residue != known {
            panic!(
                "KLS extraction inconsistency on interval ({s}, {t}): \
                 derived {a} leaves residue {:?} vs {:?}",
                residue, known
            );
        }
        table.insert((s, t), a);
    }
    IncElem { alg, table }
}

/// The unique kernel whose Chow function is `h` (which must have unit
/// diagonal and palindromic entries with center `(rho - 1)/2`):
/// `kappa = h^rev h^{-1}`.
pub fn kernel_from_chow(h: &IncElem) -> Result<IncElem, IncError> {
    let alg = h.algebra();
    for (s, t) in alg.poset().comparable_pairs() {
        if s == t {
            if *h.get(s, t) != Poly::one() {
                return Err(IncError::DiagonalNotOne(s));
            }
        } else {
            let rho = alg.rho(s, t) as usize;
            if !h.get(s, t).is_palindromic(rho - 1) {
                return Err(IncError::NotPalindromic(s, t));
            }
        }
    }
    let kappa = h.rev().convolve(&h.invert()?);
    Ok(kappa)
}

// ---------------------------------------------------------------------
// Identity reports.
// ---------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct IdentityFailure {
    pub identity: &'static str,
    pub interval: (u32, u32),
    pub lhs: Poly,
    pub rhs: Poly,
}

#[derive(Debug, Clone, Default)]
pub struct IdentityReport {
    pub checked: usize,
    pub failures: Vec<IdentityFailure>,
}

impl IdentityReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, identity: &'static str, interval: (u32, u32), lhs: &Poly, rhs: &Poly) {
        self.checked += 1;
        if lhs != rhs {
            self.failures.push(IdentityFailure {
                identity,
                interval,
                lhs: lhs.clone(),
                rhs: rhs.clone(),
            });
        }
    }
}

fn xm1() -> Poly {
    Poly::from_i64(&[-1, 1])
}

/// `(a^rev_st - a_st) / (x-1)` — the "tau" factor of the decompositions.
fn tau_plain(a: &IncElem, s: u32, t: u32) -> Poly {
    let rho = a.algebra().rho(s, t) as usize;
    let p = a.get(s, t);
    (&p.rev(rho).unwrap() - p).divide_exact(&xm1()).expect("tau divides exactly")
}

/// `(a^rev_st - x a_st) / (x-1)`.
fn tau_shifted(a: &IncElem, s: u32, t: u32) -> Poly {
    let rho = a.algebra().rho(s, t) as usize;
    let p = a.get(s, t);
    (&p.rev(rho).unwrap() - &p.shifted(1))
        .divide_exact(&xm1())
        .expect("shifted tau divides exactly")
}

/// Numerical canonical decomposition checks: the two Chow
/// decompositions, their augmented analogues, and the chain-sum
/// formula (evaluated by literal chain enumeration on the full
/// interval of a bounded poset).
pub fn ncd_check(sys: &ChowSystem) -> IdentityReport {
    let alg = sys.algebra().clone();
    let poset = alg.poset().clone();
    let h = sys.chow();
    let f = sys.kls_right();
    let g = sys.kls_left();
    let z = sys.z_function();
    let big_f = sys.aug_right();
    let big_g = sys.aug_left();
    let mut report = IdentityReport::default();

    for (s, t) in alg.pairs_by_rank() {
        if s == t {
            continue;
        }
        // ncd-f: H_st = (f^rev - f)/(x-1)|_st + sum_{s<w<t} H_sw (f^rev - x f)/(x-1)|_wt
        let mut rhs = tau_plain(f, s, t);
        for &w in poset.interval(s, t).iter() {
            if w != s && w != t {
                rhs += &(h.get(s, w) * &tau_shifted(f, w, t));
            }
        }
        report.record("ncd-f", (s, t), h.get(s, t), &rhs);

        // ncd-g: H_st = (g^rev - g)/(x-1)|_st + sum_{s<w<t} (g^rev - x g)/(x-1)|_sw H_wt
        let mut rhs = tau_plain(g, s, t);
        for &w in poset.interval(s, t).iter() {
            if w != s && w != t {
                rhs += &(&tau_shifted(g, s, w) * h.get(w, t));
            }
        }
        report.record("ncd-g", (s, t), h.get(s, t), &rhs);

        // ncd-F: F_st = Z_st + sum_{s<w<=t} (g^rev - x g)/(x-1)|_sw F_wt
        let mut rhs = z.get(s, t).clone();
        for &w in poset.interval(s, t).iter() {
            if w != s {
                rhs += &(&tau_shifted(g, s, w) * big_f.get(w, t));
            }
        }
        report.record("ncd-F", (s, t), big_f.get(s, t), &rhs);

        // ncd-G: G_st = Z_st + sum_{s<=w<t} G_sw (f^rev - x f)/(x-1)|_wt
        let mut rhs = z.get(s, t).clone();
        for &w in poset.interval(s, t).iter() {
            if w != t {
                rhs += &(big_g.get(s, w) * &tau_shifted(f, w, t));
            }
        }
        report.record("ncd-G", (s, t), big_g.get(s, t), &rhs);
    }

    // Chain-sum formula on the full interval, by explicit enumeration
    // of chains s = p_0 < p_1 < ... < p_m <= t weighted with the g-side
    // factors, and dually anchored at the top for the f-side.
    if let Ok((bot, top)) = poset.bounds() {
        let lhs = h.get(bot, top);
        let rhs = chain_sum_left(sys, bot, top);
        report.record("chain-sum-g", (bot, top), lhs, &rhs);
        let rhs = chain_sum_right(sys, bot, top);
        report.record("chain-sum-f", (bot, top), lhs, &rhs);
    }

    report
}

/// `H_st = sum_{s = p_0 < ... < p_m <= t} (prod tau_shifted(g)) g_{p_m t}`,
/// enumerated literally.
pub fn chain_sum_left(sys: &ChowSystem, s: u32, t: u32) -> Poly {
    let g = sys.kls_left();
    let poset = sys.algebra().poset().clone();
    fn walk(sys: &ChowSystem, poset: &Poset, g: &IncElem, p: u32, t: u32, weight: &Poly) -> Poly {
        let mut acc = weight * g.get(p, t);
        for &w in poset.interval(p, t).iter() {
            if w == p {
                continue;
            }
            let hop = tau_shifted(g, p, w);
            if hop.is_zero() {
                continue;
            }
            acc += &walk(sys, poset, g, w, t, &(weight * &hop));
        }
        acc
    }
    walk(sys, &poset, g, s, t, &Poly::one())
}

/// Dual chain sum anchored at the top: `H_st = sum_{s <= q_0 < ... < q_m = t}
/// f_{s q_0} prod tau_shifted(f)`.
pub fn chain_sum_right(sys: &ChowSystem, s: u32, t: u32) -> Poly {
    let f = sys.kls_right();
    let poset = sys.algebra().poset().clone();
    fn walk(poset: &Poset, f: &IncElem, s: u32, q: u32, weight: &Poly) -> Poly {
        let mut acc = f.get(s, q) * weight;
        for &w in poset.interval(s, q).iter() {
            if w == q {
                continue;
            }
            let hop = tau_shifted(f, w, q);
            if hop.is_zero() {
                continue;
            }
            acc += &walk(poset, f, s, w, &(&hop * weight));
        }
        acc
    }
    walk(&poset, f, s, t, &Poly::one())
}

/// Empirical check of the inverse presentation of the augmented Chow
/// functions: `F^perp := (x (f^{-1})^rev - f^{-1})/(x-1)` satisfies
/// `F F^perp = F^perp F = delta`, and dually for `G`. The paper states
/// this without proof; the report flags any interval where it fails.
pub fn aug_inverse_check(sys: &ChowSystem) -> IdentityReport {
    let alg = sys.algebra().clone();
    let delta = alg.delta();
    let mut report = IdentityReport::default();
    let perp = |a: &IncElem| -> IncElem {
        let inv = a.invert().expect("KLS functions are invertible");
        inv.map(|s, t, p| {
            let rho = alg.rho(s, t) as usize;
            (&p.rev(rho).unwrap().shifted(1) - p)
                .divide_exact(&xm1())
                .expect("perp divides exactly")
        })
    };
    let f_perp = perp(sys.kls_right());
    let g_perp = perp(sys.kls_left());
    for (name, lhs) in [
        ("F * F_perp", sys.aug_right().convolve(&f_perp)),
        ("F_perp * F", f_perp.convolve(sys.aug_right())),
        ("G * G_perp", sys.aug_left().convolve(&g_perp)),
        ("G_perp * G", g_perp.convolve(sys.aug_left())),
    ] {
        match lhs.first_difference(&delta) {
            None => report.checked += 1,
            Some((s, t)) => {
                report.checked += 1;
                report.failures.push(IdentityFailure {
                    identity: name,
                    interval: (s, t),
                    lhs: lhs.get(s, t).clone(),
                    rhs: delta.get(s, t).clone(),
                });
            }
        }
    }
    report
}

/// Unimodality-transfer report: when the right or left KLS function is
/// non-negative on all intervals, the Chow function must be
/// non-negative and unimodal on all intervals; similarly for the
/// augmented functions driven by the Z-function.
#[derive(Debug, Clone)]
pub struct TransferReport {
    pub f_nonnegative: bool,
    pub g_nonnegative: bool,
    pub hypothesis_holds: bool,
    pub h_conclusion_failures: Vec<(u32, u32)>,
    pub z_nonneg_unimodal: bool,
    pub aug_f_failures: Vec<(u32, u32)>,
    pub aug_g_failures: Vec<(u32, u32)>,
}

impl TransferReport {
    pub fn ok(&self) -> bool {
        self.h_conclusion_failures.is_empty()
            && self.aug_f_failures.is_empty()
            && self.aug_g_failures.is_empty()
    }
}

pub fn unimodality_transfer_check(sys: &ChowSystem) -> TransferReport {
    let alg = sys.algebra().clone();
    let pairs = alg.poset().comparable_pairs();
    let f_nonnegative = sys.kls_right().is_nonnegative();
    let g_nonnegative = sys.kls_left().is_nonnegative();
    let hypothesis_holds = f_nonnegative || g_nonnegative;

    let nonneg_unimodal = |p: &Poly| -> bool {
        let r = crate::poly::analyze(p, None);
        r.is_nonnegative && r.is_unimodal
    };

    let mut h_conclusion_failures = Vec::new();
    if hypothesis_holds {
        for &(s, t) in &pairs {
            if !nonneg_unimodal(sys.chow().get(s, t)) {
                h_conclusion_failures.push((s, t));
            }
        }
    }

    let z = sys.z_function();
    let z_nonneg_unimodal = pairs.iter().all(|&(s, t)| nonneg_unimodal(z.get(s, t)));

    let mut aug_f_failures = Vec::new();
    let mut aug_g_failures = Vec::new();
    if z_nonneg_unimodal && g_nonnegative {
        for &(s, t) in &pairs {
            if !crate::poly::analyze(sys.aug_right().get(s, t), None).is_unimodal {
                aug_f_failures.push((s, t));
            }
        }
    }
    if z_nonneg_unimodal && f_nonnegative {
        for &(s, t) in &pairs {
            if !crate::poly::analyze(sys.aug_left().get(s, t), None).is_unimodal {
                aug_g_failures.push((s, t));
            }
        }
    }

    TransferReport {
        f_nonnegative,
        g_nonnegative,
        hypothesis_holds,
        h_conclusion_failures,
        z_nonneg_unimodal,
        aug_f_failures,
        aug_g_failures,
    }
}

// ---------------------------------------------------------------------
// JSON exchange for incidence elements (kernel-from-file).
// ---------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct IncElemJson {
    n: usize,
    entries: Vec<(u32, u32, Poly)>,
}

/// Serialize the table (sorted by interval) as
/// `{"n": ..., "entries": [[s, t, [coeffs]], ...]}`.
pub fn inc_elem_to_json(a: &IncElem) -> String {
    let mut entries: Vec<(u32, u32, Poly)> = a
        .alg
        .poset()
        .comparable_pairs()
        .into_iter()
        .map(|(s, t)| (s, t, a.get(s, t).clone()))
        .collect();
    entries.sort_by_key(|&(s, t, _)| (s, t));
    serde_json::to_string_pretty(&IncElemJson { n: a.alg.poset().n(), entries }).unwrap()
}

pub fn inc_elem_from_json(alg: &IncAlgebra, text: &str) -> Result<IncElem, String> {
    let dto: IncElemJson = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if dto.n != alg.poset().n() {
        return Err(format!(
            "table is for a poset with {} elements, expected {}",
            dto.n,
            alg.poset().n()
        ));
    }
    let map: HashMap<(u32, u32), Poly> =
        dto.entries.into_iter().map(|(s, t, p)| ((s, t), p)).collect();
    alg.try_from_fn(|s, t| {
        map.get(&(s, t))
            .cloned()
            .ok_or(IncError::DegreeBound(s, t))
    })
    .map_err(|e| format!("missing or invalid entry: {e}"))
}
