//! Dense univariate polynomials over arbitrary-precision integers, and
//! the coefficient-shape predicates (symmetry, unimodality,
//! gamma-positivity, real-rootedness) used throughout the crate.

mod analysis;
mod sturm;

pub use analysis::{
    analyze, gamma_expand, gamma_of, interlaces, w_poly, Property, PropertyReport, Witness,
};
pub use sturm::real_root_count;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("degree {degree} exceeds reversal window {window}")]
    DegreeExceedsWindow { degree: usize, window: usize },
    #[error("division is not exact, remainder {remainder}")]
    InexactDivision { remainder: Poly },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gamma support needs 2*deg(g) <= {window}, got degree {degree}")]
    GammaDegreeTooLarge { degree: usize, window: usize },
}

/// Element of `Z[x]`. Coefficients are stored low degree first and the
/// top stored coefficient is nonzero; the zero polynomial is the empty
/// list and its degree is `None`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(1)
    }

    pub fn x() -> Self {
        Poly::from_i64(&[0, 1])
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Poly::from_vec(vec![c.into()])
    }

    pub fn from_vec(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::from_vec(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `c * x^k`.
    pub fn monomial<T: Into<BigInt>>(c: T, k: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// `1 + x + ... + x^r`; `r = -1` gives the zero polynomial.
    pub fn ones(r: i64) -> Self {
        if r < 0 {
            return Poly::zero();
        }
        Poly {
            coeffs: vec![BigInt::one(); r as usize + 1],
        }
    }

    /// `(1 + x)^d`.
    pub fn one_plus_x_pow(d: usize) -> Self {
        let mut p = Poly::one();
        let b = Poly::from_i64(&[1, 1]);
        for _ in 0..d {
            p = &p * &b;
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Multiply by `x^k`.
    pub fn shifted(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn scaled<T: Into<BigInt>>(&self, c: T) -> Poly {
        let c = c.into();
        Poly::from_vec(self.coeffs.iter().map(|a| a * &c).collect())
    }

    /// Coefficient reversal within the window `[0, d]`: `x^d p(1/x)`.
    pub fn rev(&self, d: usize) -> Result<Poly, PolyError> {
        match self.degree() {
            None => Ok(Poly::zero()),
            Some(deg) if deg > d => Err(PolyError::DegreeExceedsWindow { degree: deg, window: d }),
            Some(_) => {
                let mut coeffs = vec![BigInt::zero(); d + 1];
                for (i, c) in self.coeffs.iter().enumerate() {
                    coeffs[d - i] = c.clone();
                }
                Ok(Poly::from_vec(coeffs))
            }
        }
    }

    /// `a_i == a_{d-i}` on the window `[0, d]`. Requires `deg <= d`.
    pub fn is_palindromic(&self, d: usize) -> bool {
        match self.rev(d) {
            Ok(r) => r == *self,
            Err(_) => false,
        }
    }

    /// Exact division in `Z[x]`; inexact division is an error carrying
    /// the remainder.
    pub fn divide_exact(&self, q: &Poly) -> Result<Poly, PolyError> {
        if q.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        let dq = q.degree().unwrap();
        let lq = q.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot: Vec<BigInt> = Vec::new();
        while rem.len() > dq {
            let lead = rem.last().unwrap();
            if lead.is_zero() {
                rem.pop();
                quot.push(BigInt::zero());
                continue;
            }
            let (c, r) = num_integer::div_rem(lead.clone(), lq.clone());
            if !r.is_zero() {
                return Err(PolyError::InexactDivision { remainder: Poly::from_vec(rem) });
            }
            let k = rem.len() - 1 - dq;
            for i in 0..=dq {
                let t = &q.coeffs[i] * &c;
                rem[k + i] -= t;
            }
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
            quot.push(c);
        }
        let rem = Poly::from_vec(rem);
        if !rem.is_zero() {
            return Err(PolyError::InexactDivision { remainder: rem });
        }
        quot.reverse();
        Ok(Poly::from_vec(quot))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::from_vec(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Substitute `x -> x^2`.
    pub fn stretch2(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); 2 * (self.coeffs.len() - 1) + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = c.clone();
        }
        Poly { coeffs }
    }

    /// Inverse of `stretch2`: requires all odd coefficients to vanish.
    pub fn unstretch2(&self) -> Option<Poly> {
        if self.coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Poly::from_vec(
            self.coeffs.iter().step_by(2).cloned().collect(),
        ))
    }

    /// Sum of coefficients, `p(1)`.
    pub fn sum_coeffs(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{}", mag)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}", mag)?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{}", i)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
            if let Some(b) = rhs.coeffs.get(i) {
                c += b;
            }
            coeffs.push(c);
        }
        Poly::from_vec(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
            if let Some(b) = rhs.coeffs.get(i) {
                c -= b;
            }
            coeffs.push(c);
        }
        Poly::from_vec(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly { coeffs }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        *self = &*self - rhs;
    }
}

const JSON_SAFE: i64 = (1 << 53) - 1;

/// Serialize a coefficient as a JSON number when it fits in the 53-bit
/// safe range, as a decimal string otherwise.
pub(crate) fn serialize_bigint<S: Serializer>(c: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match c.to_i64() {
        Some(v) if v.abs() <= JSON_SAFE => s.serialize_i64(v),
        _ => s.serialize_str(&c.to_string()),
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct C<'a>(&'a BigInt);
        impl Serialize for C<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                serialize_bigint(self.0, s)
            }
        }
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&C(c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Poly;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an array of integers (numbers or decimal strings)")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Poly, A::Error> {
                #[derive(Deserialize)]
                #[serde(untagged)]
                enum IntOrStr {
                    Int(i64),
                    Str(String),
                }
                let mut coeffs = Vec::new();
                while let Some(v) = seq.next_element::<IntOrStr>()? {
                    coeffs.push(match v {
                        IntOrStr::Int(i) => BigInt::from(i),
                        IntOrStr::Str(s) => s
                            .parse::<BigInt>()
                            .map_err(|e| serde::de::Error::custom(format!("bad integer: {e}")))?,
                    });
                }
                Ok(Poly::from_vec(coeffs))
            }
        }
        deserializer.deserialize_seq(V)
    }
}
