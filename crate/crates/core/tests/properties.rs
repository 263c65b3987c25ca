//! Property tests for the polynomial layer. The real-root counter is
//! checked against an independent oracle: Descartes-rule bisection
//! (sign-variation counting on Möbius-transformed coefficients), a
//! different algorithm from the Sturm chain used by the library.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use chow_core::poly::{analyze, gamma_expand, real_root_count, w_poly, Poly};

type RatVec = Vec<BigRational>;

fn to_rat(p: &Poly) -> RatVec {
    p.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn rat_trim(mut v: RatVec) -> RatVec {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn rat_eval(p: &RatVec, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn rat_deriv(p: &RatVec) -> RatVec {
    rat_trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

fn rat_rem(a: &RatVec, b: &RatVec) -> RatVec {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = b.last().unwrap();
    while r.len() > db {
        let c = r.last().unwrap() / lead;
        let k = r.len() - 1 - db;
        for i in 0..=db {
            let t = &b[i] * &c;
            r[k + i] -= t;
        }
        r.pop();
        r = rat_trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn rat_gcd(a: &RatVec, b: &RatVec) -> RatVec {
    let (mut a, mut b) = (rat_trim(a.clone()), rat_trim(b.clone()));
    while !b.is_empty() {
        let r = rat_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn rat_div_exact(a: &RatVec, b: &RatVec) -> RatVec {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = b.last().unwrap();
    let mut q = Vec::new();
    while r.len() > db {
        let c = r.last().unwrap() / lead;
        let k = r.len() - 1 - db;
        for i in 0..=db {
            let t = &b[i] * &c;
            r[k + i] -= t;
        }
        r.pop();
        q.push(c);
    }
    q.reverse();
    rat_trim(q)
}

/// Sign variations in a coefficient list.
fn variations(p: &RatVec) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for c in p {
        let s = if c.is_zero() {
            0
        } else if c.is_positive() {
            1
        } else {
            -1
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Descartes bound for the number of roots of `p` in the open interval
/// `(a, b)`: variations of `(1+x)^n p((a + bx)/(1+x))`.
fn descartes_in(p: &RatVec, a: &BigRational, b: &BigRational) -> usize {
    let n = p.len() - 1;
    // q(x) = sum_i p_i (a + b x)^i (1 + x)^{n - i}
    let mul = |u: &RatVec, v: &RatVec| -> RatVec {
        let mut out = vec![BigRational::zero(); u.len() + v.len() - 1];
        for (i, x) in u.iter().enumerate() {
            for (j, y) in v.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    };
    let mut q = vec![BigRational::zero(); n + 1];
    let lin_ab = vec![a.clone(), b.clone()];
    let lin_1x = vec![BigRational::one(), BigRational::one()];
    for (i, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut term = vec![c.clone()];
        for _ in 0..i {
            term = mul(&term, &lin_ab);
        }
        for _ in 0..n - i {
            term = mul(&term, &lin_1x);
        }
        for (k, t) in term.into_iter().enumerate() {
            q[k] += t;
        }
    }
    variations(&rat_trim(q))
}

/// Distinct real roots of a square-free polynomial in `(a, b)`, by
/// recursive bisection on the Descartes bound.
fn isolate_count(p: &RatVec, a: &BigRational, b: &BigRational) -> usize {
    match descartes_in(p, a, b) {
        0 => 0,
        1 => 1,
        _ => {
            let two = BigRational::from_integer(BigInt::from(2));
            let mid = (a + b) / two;
            let at_mid = usize::from(rat_eval(p, &mid).is_zero());
            isolate_count(p, a, &mid) + at_mid + isolate_count(p, &mid, b)
        }
    }
}

/// Real roots with multiplicity by the oracle: square-free
/// decomposition, then Descartes bisection within the Cauchy bound.
fn oracle_root_count(p: &Poly) -> usize {
    fn count(p: &RatVec) -> usize {
        if p.len() <= 1 {
            return 0;
        }
        let g = rat_gcd(p, &rat_deriv(p));
        let sf = if g.len() <= 1 { p.clone() } else { rat_div_exact(p, &g) };
        // Cauchy bound; all roots lie strictly inside (-bound, bound).
        let lead = sf.last().unwrap().abs();
        let max = sf.iter().map(Signed::abs).fold(BigRational::zero(), |a, b| a.max(b));
        let bound = BigRational::one() + BigRational::one() + max / lead;
        let distinct = isolate_count(&sf, &(-bound.clone()), &bound);
        distinct + if g.len() <= 1 { 0 } else { count(&g) }
    }
    count(&to_rat(p))
}

proptest! {
    #[test]
    fn rev_is_an_involution(coeffs in prop::collection::vec(-30i64..=30, 0..8), pad in 0usize..4) {
        let p = Poly::from_i64(&coeffs);
        let d = p.degree().unwrap_or(0) + pad;
        let r = p.rev(d).unwrap();
        prop_assert_eq!(r.rev(d).unwrap(), p);
    }

    #[test]
    fn gamma_round_trip(gamma in prop::collection::vec(-9i64..=9, 1..5), pad in 0usize..3) {
        // Every symmetric polynomial is gamma_expand of its gamma vector.
        let g = Poly::from_i64(&gamma);
        let d = 2 * g.degree().unwrap_or(0) + pad;
        let p = gamma_expand(&g, d).unwrap();
        if !p.is_zero() {
            let report = analyze(&p, Some(d));
            prop_assert!(report.is_symmetric);
            prop_assert_eq!(report.gamma.unwrap(), g);
        }
    }

    #[test]
    fn real_rooted_symmetric_nonneg_is_gamma_positive(
        pairs in prop::collection::vec(1i64..=6, 0..3),
        ones in 0usize..4,
    ) {
        // Products of (x + a)(a x + 1) and powers of (x + 1) are
        // symmetric, nonnegative, and real-rooted.
        let mut p = Poly::one();
        for a in &pairs {
            p = &p * &Poly::from_i64(&[*a, a * a + 1, *a]);
        }
        for _ in 0..ones {
            p = &p * &Poly::from_i64(&[1, 1]);
        }
        let report = analyze(&p, None);
        prop_assert!(report.is_symmetric && report.is_nonnegative);
        prop_assert!(report.is_real_rooted);
        prop_assert!(report.is_gamma_positive, "gamma of {}: {:?}", p, report.gamma);
        prop_assert!(report.is_unimodal);
    }

    #[test]
    fn gamma_positive_implies_unimodal(gamma in prop::collection::vec(0i64..=9, 1..5)) {
        let g = Poly::from_i64(&gamma);
        let d = 2 * g.degree().unwrap_or(0) + 1;
        let p = gamma_expand(&g, d).unwrap();
        let report = analyze(&p, Some(d));
        if report.is_gamma_positive {
            prop_assert!(report.is_unimodal && report.is_nonnegative);
        }
    }

    #[test]
    fn sturm_count_matches_descartes_oracle(coeffs in prop::collection::vec(-20i64..=20, 1..8)) {
        let p = Poly::from_i64(&coeffs);
        prop_assume!(!p.is_zero());
        prop_assert_eq!(real_root_count(&p), oracle_root_count(&p), "{}", p);
    }

    #[test]
    fn sturm_counts_constructed_roots(
        linear in prop::collection::vec(-8i64..=8, 0..4),
        complex_pairs in prop::collection::vec(1i64..=5, 0..2),
    ) {
        // Known-by-construction root counts: linear factors contribute
        // one real root each (with multiplicity), x^2 + bx + (b^2+1)
        // factors contribute none.
        let mut p = Poly::one();
        for a in &linear {
            p = &p * &Poly::from_i64(&[*a, 1]);
        }
        for b in &complex_pairs {
            p = &p * &Poly::from_i64(&[b * b + 1, *b, 1]);
        }
        prop_assert_eq!(real_root_count(&p), linear.len());
    }
}

#[test]
fn w_poly_gamma_identity_full_range() {
    for r in -1i64..=12 {
        let w = w_poly(r);
        if r >= 0 {
            assert_eq!(gamma_expand(&w, r as usize).unwrap(), Poly::ones(r));
        } else {
            assert!(w.is_zero());
        }
    }
}
