//! Exact real-root counting via Sturm sequences over rational
//! arithmetic. No floating point: signs at the infinities come from
//! leading coefficients, everything else is `BigRational`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::Poly;

/// Polynomial over `Q`, dense, trailing zeros trimmed. Internal helper.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct RatPoly {
    pub coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn from_poly(p: &Poly) -> Self {
        RatPoly {
            coeffs: p
                .coeffs()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn trim(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn derivative(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return RatPoly { coeffs: vec![] };
        }
        RatPoly::trim(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Remainder of `self` divided by `d`.
    pub fn rem(&self, d: &RatPoly) -> RatPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.coeffs.last().unwrap().clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let c = r.last().unwrap() / &lead;
            let k = r.len() - 1 - dd;
            for i in 0..=dd {
                let t = &d.coeffs[i] * &c;
                r[k + i] -= t;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        RatPoly { coeffs: r }
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if let Some(lead) = a.coeffs.last().cloned() {
            for c in &mut a.coeffs {
                *c /= lead.clone();
            }
        }
        a
    }

    pub fn div_exact(&self, d: &RatPoly) -> RatPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.coeffs.last().unwrap().clone();
        let mut r = self.coeffs.clone();
        let mut q = Vec::new();
        while r.len() > dd {
            let c = r.last().unwrap() / &lead;
            let k = r.len() - 1 - dd;
            for i in 0..=dd {
                let t = &d.coeffs[i] * &c;
                r[k + i] -= t;
            }
            r.pop();
            q.push(c);
        }
        q.reverse();
        RatPoly::trim(q)
    }

    fn sign_at_pos_infinity(&self) -> i8 {
        match self.coeffs.last() {
            None => 0,
            Some(c) if c.is_positive() => 1,
            _ => -1,
        }
    }

    fn sign_at_neg_infinity(&self) -> i8 {
        match self.degree() {
            None => 0,
            Some(d) => {
                let s = self.sign_at_pos_infinity();
                if d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        }
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Sturm chain of a square-free polynomial.
fn sturm_chain(p: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            return chain;
        }
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            return chain;
        }
        chain.push(RatPoly {
            coeffs: r.coeffs.iter().map(|c| -c).collect(),
        });
    }
}

/// Number of distinct real roots of a square-free polynomial.
fn distinct_real_roots(p: &RatPoly) -> usize {
    match p.degree() {
        None | Some(0) => 0,
        _ => {
            let chain = sturm_chain(p);
            let at_neg = variations(chain.iter().map(|q| q.sign_at_neg_infinity()));
            let at_pos = variations(chain.iter().map(|q| q.sign_at_pos_infinity()));
            at_neg - at_pos
        }
    }
}

/// Distinct real roots of a square-free polynomial in the open interval
/// `(a, b]`.
pub(crate) fn distinct_real_roots_in(p: &RatPoly, a: &BigRational, b: &BigRational) -> usize {
    match p.degree() {
        None | Some(0) => 0,
        _ => {
            let chain = sturm_chain(p);
            let sign = |v: BigRational| -> i8 {
                if v.is_zero() {
                    0
                } else if v.is_positive() {
                    1
                } else {
                    -1
                }
            };
            let at_a = variations(chain.iter().map(|q| sign(q.eval(a))));
            let at_b = variations(chain.iter().map(|q| sign(q.eval(b))));
            at_a - at_b
        }
    }
}

pub(crate) fn square_free_part(p: &RatPoly) -> RatPoly {
    let g = p.gcd(&p.derivative());
    match g.degree() {
        None | Some(0) => p.clone(),
        _ => p.div_exact(&g),
    }
}

/// Number of real roots of `p`, counted with multiplicity. The zero
/// polynomial and constants have none.
pub fn real_root_count(p: &Poly) -> usize {
    let rp = RatPoly::from_poly(p);
    real_root_count_rat(&rp)
}

fn real_root_count_rat(p: &RatPoly) -> usize {
    match p.degree() {
        None | Some(0) => 0,
        _ => {
            let g = p.gcd(&p.derivative());
            let sf = match g.degree() {
                None | Some(0) => p.clone(),
                _ => p.div_exact(&g),
            };
            // roots(p) = roots(square-free part) + roots(gcd(p, p')),
            // each counted with multiplicity.
            distinct_real_roots(&sf) + real_root_count_rat(&g)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn count(cs: &[i64]) -> usize {
        real_root_count(&Poly::from_i64(cs))
    }

    #[test]
    fn basic_counts() {
        assert_eq!(count(&[1]), 0);
        assert_eq!(count(&[]), 0);
        assert_eq!(count(&[-1, 1]), 1); // x - 1
        assert_eq!(count(&[1, 0, 1]), 0); // x^2 + 1
        assert_eq!(count(&[1, 4, 1]), 2); // x^2 + 4x + 1, disc > 0
        assert_eq!(count(&[1, 2, 1]), 2); // (x+1)^2 double root
        assert_eq!(count(&[0, 0, 0, 1]), 3); // x^3 triple root
        assert_eq!(count(&[1, 3, -1, 1]), 1); // one real, two complex
        // x^4 + 7x^3 + 11x^2 + 7x + 1: symmetric, gamma = 1+3x-x^2, not
        // real-rooted (two complex conjugate roots).
        assert_eq!(count(&[1, 7, 11, 7, 1]), 2);
    }

    #[test]
    fn roots_in_interval() {
        let p = RatPoly::from_poly(&Poly::from_i64(&[2, -3, 1])); // (x-1)(x-2)
        let q = |n: i64| BigRational::from_integer(BigInt::from(n));
        assert_eq!(distinct_real_roots_in(&p, &q(0), &q(3)), 2);
        assert_eq!(distinct_real_roots_in(&p, &q(0), &q(1)), 1);
        assert_eq!(distinct_real_roots_in(&p, &q(1), &q(3)), 1);
    }
}
