//! Constructors for the named kernels: the characteristic function
//! `chi`, the Eulerian kernel `eps`, the parametrized rank-3 example
//! kernel, and the kernel generated by a prescribed left KLS function.

use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::incidence::{check_kernel, IncAlgebra, IncElem, IncError};
use crate::poly::Poly;
use crate::poset::{boolean, is_eulerian, Poset, RankFn};

#[derive(Debug, Error)]
pub enum KernelError {
    #[error("poset is not Eulerian; witness interval ({0}, {1})")]
    NotEulerian(u32, u32),
    #[error("prescribed g violates its preconditions: {0}")]
    BadG(IncError),
    #[error(transparent)]
    Inc(#[from] IncError),
}

/// Characteristic function `chi_st = sum_{s <= w <= t} mu_sw x^{rho_wt}`,
/// built by the closed sum (the `zeta^{-1} zeta^rev` route is kept as a
/// test-side cross-check). A non-degenerate kernel on any weakly
/// ranked poset.
pub fn characteristic(alg: &IncAlgebra) -> IncElem {
    let poset = alg.poset().clone();
    let mu = poset.mobius();
    alg.from_fn(|s, t| {
        let mut acc = Poly::zero();
        for &w in poset.interval(s, t).iter() {
            let m = mu[&(s, w)];
            if m != 0 {
                acc += &Poly::monomial(BigInt::from(m), alg.rho(w, t) as usize);
            }
        }
        acc
    })
}

/// Eulerian kernel `eps_st = (x - 1)^{rho_st}` without any check; this
/// is a kernel exactly when the poset is Eulerian.
pub fn eulerian_elem(alg: &IncAlgebra) -> IncElem {
    let xm1 = Poly::from_i64(&[-1, 1]);
    alg.from_fn(|s, t| {
        let mut p = Poly::one();
        for _ in 0..alg.rho(s, t) {
            p = &p * &xm1;
        }
        p
    })
}

/// Eulerian kernel with the Eulerian property verified first; the error
/// carries the first interval violating the Möbius condition.
pub fn eulerian(alg: &IncAlgebra) -> Result<IncElem, KernelError> {
    let report = is_eulerian(alg.poset(), alg.rank());
    if !report.is_eulerian {
        let (s, t) = report.witness.unwrap();
        return Err(KernelError::NotEulerian(s, t));
    }
    let eps = eulerian_elem(alg);
    debug_assert!(check_kernel(&eps).is_kernel);
    Ok(eps)
}

/// The parametrized kernel on the Boolean lattice with three atoms:
/// `1, x-1, x^2-2x+1, x^3+mx^2-mx-1` by interval rank. A kernel for
/// every integer `m`.
pub fn adhoc_b3(m: i64) -> (IncAlgebra, IncElem) {
    let poset = Arc::new(boolean(3));
    let rank = Arc::new(RankFn::graded(&poset).unwrap());
    let alg = IncAlgebra::new(poset, rank);
    let kappa = alg.from_fn(|s, t| match alg.rho(s, t) {
        0 => Poly::one(),
        1 => Poly::from_i64(&[-1, 1]),
        2 => Poly::from_i64(&[1, -2, 1]),
        3 => Poly::from_i64(&[-1, -m, m, 1]),
        _ => unreachable!(),
    });
    debug_assert!(check_kernel(&kappa).is_kernel);
    (alg, kappa)
}

/// Kernel generated by a prescribed left KLS function:
/// `kappa = g^{-1} g^rev`. Preconditions: `g_ss = 1` and
/// `deg g_st < rho_st / 2`.
pub fn kernel_from_g(g: &IncElem) -> Result<IncElem, KernelError> {
    let alg = g.algebra();
    for (s, t) in alg.poset().comparable_pairs() {
        if s == t {
            if *g.get(s, t) != Poly::one() {
                return Err(KernelError::BadG(IncError::DiagonalNotOne(s)));
            }
        } else if let Some(d) = g.get(s, t).degree() {
            if 2 * d >= alg.rho(s, t) as usize {
                return Err(KernelError::BadG(IncError::DegreeBound(s, t)));
            }
        }
    }
    let kappa = g.invert().map_err(KernelError::BadG)?.convolve(&g.rev());
    debug_assert!(check_kernel(&kappa).is_kernel);
    Ok(kappa)
}

/// `chi` directly on a poset with its graded rank; convenience for
/// tests and the CLI.
pub fn chi_on(poset: Poset) -> (IncAlgebra, IncElem) {
    let poset = Arc::new(poset);
    let rank = Arc::new(RankFn::graded(&poset).expect("graded bounded poset"));
    let alg = IncAlgebra::new(poset, rank);
    let chi = characteristic(&alg);
    (alg, chi)
}
