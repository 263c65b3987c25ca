//! Coefficient-shape analysis: symmetry, unimodality, gamma vectors,
//! and real-rootedness verdicts, all exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::sturm::{distinct_real_roots_in, square_free_part, RatPoly};
use super::{real_root_count, Poly, PolyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    NonNegative,
    Symmetric,
    Unimodal,
    GammaPositive,
}

/// Index/coefficient pair falsifying the named property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub property: Property,
    pub index: usize,
    #[serde(serialize_with = "super::serialize_bigint")]
    pub coefficient: BigInt,
}

/// Verdicts produced by [`analyze`]. For a symmetric polynomial the
/// gamma vector is always present (it may have negative entries);
/// gamma-positivity is the separate verdict. `center2` is twice the
/// center of symmetry, so a palindrome of degree 3 reports `center2 = 3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub is_zero: bool,
    pub is_nonnegative: bool,
    pub is_symmetric: bool,
    pub center2: Option<usize>,
    pub is_unimodal: bool,
    pub peak: Option<usize>,
    pub gamma: Option<Poly>,
    pub is_gamma_positive: bool,
    pub real_root_count: usize,
    pub is_real_rooted: bool,
    pub witness: Option<Witness>,
}

fn first_negative(p: &Poly) -> Option<usize> {
    p.coeffs().iter().position(|c| c.is_negative())
}

/// Unimodality of the stored coefficient sequence: weakly increasing up
/// to some peak, weakly decreasing after it. Returns the peak index.
fn unimodal_peak(coeffs: &[BigInt]) -> Result<usize, usize> {
    let mut i = 0;
    while i + 1 < coeffs.len() && coeffs[i] <= coeffs[i + 1] {
        i += 1;
    }
    let peak = i;
    while i + 1 < coeffs.len() {
        if coeffs[i] < coeffs[i + 1] {
            return Err(i + 1);
        }
        i += 1;
    }
    Ok(peak)
}

/// Gamma vector of `p` relative to the symmetry window `[0, d]`:
/// coordinates in the basis `x^i (1+x)^{d-2i}`. Returns `None` when `p`
/// is not palindromic in that window. Extraction walks degree 0 upward,
/// subtracting the leading contribution at each step.
pub fn gamma_of(p: &Poly, d: usize) -> Option<Poly> {
    if p.is_zero() {
        return Some(Poly::zero());
    }
    if !p.is_palindromic(d) {
        return None;
    }
    let mut residual = p.clone();
    let mut gamma = Vec::with_capacity(d / 2 + 1);
    for i in 0..=d / 2 {
        let g = residual.coeff(i);
        if !g.is_zero() {
            let term = Poly::one_plus_x_pow(d - 2 * i).shifted(i).scaled(g.clone());
            residual -= &term;
        }
        gamma.push(g);
    }
    debug_assert!(residual.is_zero(), "palindrome must exhaust: {residual}");
    Some(Poly::from_vec(gamma))
}

/// Inverse of gamma extraction: `sum_i g_i x^i (1+x)^{d-2i}`.
pub fn gamma_expand(g: &Poly, d: usize) -> Result<Poly, PolyError> {
    if let Some(deg) = g.degree() {
        if 2 * deg > d {
            return Err(PolyError::GammaDegreeTooLarge { degree: deg, window: d });
        }
    }
    let mut acc = Poly::zero();
    for (i, c) in g.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc += &Poly::one_plus_x_pow(d - 2 * i).shifted(i).scaled(c.clone());
    }
    Ok(acc)
}

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Gamma polynomial of `1 + x + ... + x^r`, with `w_poly(-1) = 0`:
/// `W_r(x) = sum_j (-1)^j C(r-j, j) x^j`.
pub fn w_poly(r: i64) -> Poly {
    assert!(r >= -1, "w_poly needs r >= -1");
    if r == -1 {
        return Poly::zero();
    }
    let mut coeffs = Vec::new();
    for j in 0..=r / 2 {
        let mut c = binomial(r - j, j);
        if j % 2 == 1 {
            c = -c;
        }
        coeffs.push(c);
    }
    Poly::from_vec(coeffs)
}

/// Full shape report for `p`. `window_hint`, when given, fixes the
/// symmetry window `[0, d]` (center of symmetry `d/2`); otherwise the
/// window is the degree of `p`.
pub fn analyze(p: &Poly, window_hint: Option<usize>) -> PropertyReport {
    if p.is_zero() {
        return PropertyReport {
            is_zero: true,
            is_nonnegative: true,
            is_symmetric: true,
            center2: None,
            is_unimodal: true,
            peak: None,
            gamma: Some(Poly::zero()),
            is_gamma_positive: true,
            real_root_count: 0,
            is_real_rooted: true,
            witness: None,
        };
    }
    let deg = p.degree().unwrap();
    let window = window_hint.unwrap_or(deg);

    let neg_at = first_negative(p);
    let is_nonnegative = neg_at.is_none();

    let is_symmetric = p.is_palindromic(window);
    let gamma = if is_symmetric { gamma_of(p, window) } else { None };
    let is_gamma_positive = matches!(&gamma, Some(g) if g.is_nonnegative());

    let (is_unimodal, peak, unimodal_break) = match unimodal_peak(p.coeffs()) {
        Ok(peak) => (true, Some(peak), None),
        Err(i) => (false, None, Some(i)),
    };

    let real_root_count = real_root_count(p);
    let is_real_rooted = real_root_count == deg;

    let witness = if let Some(i) = neg_at {
        Some(Witness { property: Property::NonNegative, index: i, coefficient: p.coeff(i) })
    } else if !is_symmetric {
        let i = (0..=window / 2)
            .find(|&i| p.coeff(i) != p.coeff(window - i))
            .unwrap_or(0);
        Some(Witness { property: Property::Symmetric, index: i, coefficient: p.coeff(i) })
    } else if let Some(i) = unimodal_break {
        Some(Witness { property: Property::Unimodal, index: i, coefficient: p.coeff(i) })
    } else if !is_gamma_positive {
        gamma.as_ref().and_then(|g| {
            first_negative(g).map(|i| Witness {
                property: Property::GammaPositive,
                index: i,
                coefficient: g.coeff(i),
            })
        })
    } else {
        None
    };

    PropertyReport {
        is_zero: false,
        is_nonnegative,
        is_symmetric,
        center2: is_symmetric.then_some(window),
        is_unimodal,
        peak,
        gamma,
        is_gamma_positive,
        real_root_count,
        is_real_rooted,
        witness,
    }
}

/// Whether the real-rooted polynomials `p` and `q` have a common
/// interleaving of their roots, by the Hermite--Kakeya--Obreschkoff
/// criterion: the Wronskian `p'q - pq'` must not change sign on the
/// real line. Returns `false` when either polynomial fails to be
/// real-rooted or the degrees differ by more than one.
pub fn interlaces(p: &Poly, q: &Poly) -> bool {
    let (Some(dp), Some(dq)) = (p.degree(), q.degree()) else {
        return false;
    };
    if dp.abs_diff(dq) > 1 {
        return false;
    }
    if real_root_count(p) != dp || real_root_count(q) != dq {
        return false;
    }
    let w = &(&p.derivative() * q) - &(p * &q.derivative());
    if w.is_zero() {
        return true;
    }
    wronskian_sign_definite(&w)
}

/// True when `w` does not change sign over the reals: every real root
/// has even multiplicity.
fn wronskian_sign_definite(w: &Poly) -> bool {
    let rw = RatPoly::from_poly(w);
    let sf = square_free_part(&rw);
    if sf.degree().unwrap_or(0) == 0 {
        return true;
    }
    // Sign changes of w happen exactly at odd-multiplicity roots, i.e.
    // at roots of the square-free part that remain roots of w/sf with
    // even co-multiplicity. Rather than tracking multiplicities, bisect
    // isolating intervals and compare signs of w at the two sides.
    let bound = cauchy_bound(w);
    let lo = -bound.clone();
    let mut stack = vec![(lo, bound)];
    while let Some((a, b)) = stack.pop() {
        let roots = distinct_real_roots_in(&sf, &a, &b);
        if roots == 0 {
            continue;
        }
        let mid = (&a + &b) / BigRational::from_integer(BigInt::from(2));
        if roots == 1 && !rw.eval(&a).is_zero() && !rw.eval(&b).is_zero() {
            let sa = rw.eval(&a).is_positive();
            let sb = rw.eval(&b).is_positive();
            if sa != sb {
                return false;
            }
            continue;
        }
        stack.push((a, mid.clone()));
        stack.push((mid, b));
    }
    true
}

fn cauchy_bound(p: &Poly) -> BigRational {
    let lead = p.leading().expect("nonzero").abs();
    let max = p.coeffs().iter().map(Signed::abs).max().unwrap();
    BigRational::from_integer(BigInt::one() + max / lead + BigInt::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_i64(cs)
    }

    #[test]
    fn analyze_paper_example() {
        // x^4 + 7x^3 + 11x^2 + 7x + 1: symmetric center 2, unimodal,
        // gamma = -x^2 + 3x + 1, not gamma-positive.
        let r = analyze(&p(&[1, 7, 11, 7, 1]), None);
        assert!(r.is_symmetric);
        assert_eq!(r.center2, Some(4));
        assert!(r.is_unimodal);
        assert_eq!(r.gamma, Some(p(&[1, 3, -1])));
        assert!(!r.is_gamma_positive);
        assert!(!r.is_real_rooted);
        assert_eq!(
            r.witness,
            Some(Witness {
                property: Property::GammaPositive,
                index: 2,
                coefficient: BigInt::from(-1),
            })
        );
    }

    #[test]
    fn analyze_quadratic() {
        let r = analyze(&p(&[1, 4, 1]), None);
        assert!(r.is_symmetric && r.is_unimodal && r.is_gamma_positive && r.is_real_rooted);
        assert_eq!(r.gamma, Some(p(&[1, 2])));
        assert_eq!(r.real_root_count, 2);
    }

    #[test]
    fn analyze_constant_and_zero() {
        let r = analyze(&Poly::one(), None);
        assert!(r.is_symmetric && r.is_unimodal && r.is_gamma_positive && r.is_real_rooted);
        assert_eq!(r.center2, Some(0));

        let z = analyze(&Poly::zero(), None);
        assert!(z.is_zero && z.is_symmetric && z.is_unimodal && z.is_real_rooted);
    }

    #[test]
    fn analyze_with_window() {
        // x is symmetric with center 1 (window 2) but not with window 1.
        let r = analyze(&Poly::x(), Some(2));
        assert!(r.is_symmetric);
        let r = analyze(&Poly::x(), Some(1));
        assert!(!r.is_symmetric);
    }

    #[test]
    fn non_unimodal_boundary() {
        // x^2 + 0x + 1 is the ad-hoc kernel's m = -7 boundary case.
        let r = analyze(&p(&[1, 0, 1]), None);
        assert!(!r.is_unimodal);
        assert_eq!(r.witness.as_ref().unwrap().property, Property::Unimodal);
    }

    #[test]
    fn gamma_expand_examples() {
        assert_eq!(gamma_expand(&p(&[1, 2]), 2).unwrap(), p(&[1, 4, 1]));
        assert_eq!(gamma_expand(&Poly::one(), 5).unwrap(), Poly::one_plus_x_pow(5));
        assert_eq!(
            gamma_expand(&p(&[1, 12, 9]), 4).unwrap(),
            p(&[1, 16, 39, 16, 1])
        );
        assert!(gamma_expand(&p(&[1, 0, 0, 1]), 4).is_err());
    }

    #[test]
    fn w_poly_values() {
        assert_eq!(w_poly(-1), Poly::zero());
        assert_eq!(w_poly(0), Poly::one());
        assert_eq!(w_poly(1), Poly::one());
        assert_eq!(w_poly(2), p(&[1, -1]));
        for r in 0..=12 {
            let expanded = gamma_expand(&w_poly(r), r as usize).unwrap();
            assert_eq!(expanded, Poly::ones(r), "W_{r} expands to 1 + ... + x^{r}");
        }
    }

    #[test]
    fn interlacing_basics() {
        // (x+1)(x+3) vs (x+2): roots -1,-3 vs -2.
        assert!(interlaces(&p(&[3, 4, 1]), &p(&[2, 1])));
        // (x+1)(x+2) vs (x+3): -3 does not separate -1 and -2.
        assert!(!interlaces(&p(&[2, 3, 1]), &p(&[3, 1])));
        // Not real-rooted.
        assert!(!interlaces(&p(&[1, 0, 1]), &p(&[1, 1])));
    }
}
