//! Non-commutative ab- and cd-polynomials: the ab-index of a bounded
//! graded poset, rewriting into the cd-subalgebra (exactly when the
//! poset is Eulerian), Gal's gamma specialization, and the complete
//! cd-index of a Bruhat interval assembled from path descent words
//! with its two Chow specializations.
//!
//! Words over {a, b} are stored as (length, bitmask) with bit `i` set
//! when position `i` carries `b`; this matches the descent words
//! produced by the path enumerators. The letter `d` counts 2 in all
//! degree bookkeeping.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::coxeter::{descent_words_dp, BruhatInterval, ReflectionOrder};
use crate::poly::Poly;
use crate::poset::FlagVector;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CdError {
    #[error("polynomial is not in the cd-subalgebra; residual word {0}")]
    NotInSubalgebra(String),
    #[error("cannot parse word {0:?}")]
    BadWord(String),
}

/// Word over {a, b}: `bits` bit `i` is 1 when position `i` is `b`.
pub type AbWord = (u8, u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CdLetter {
    C,
    D,
}

pub type CdWord = Vec<CdLetter>;

fn ab_word_string(w: AbWord) -> String {
    if w.0 == 0 {
        return "1".into();
    }
    (0..w.0).map(|i| if w.1 >> i & 1 == 1 { 'b' } else { 'a' }).collect()
}

fn cd_word_string(w: &CdWord) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|l| if *l == CdLetter::C { 'c' } else { 'd' }).collect()
}

fn cd_word_degree(w: &CdWord) -> usize {
    w.iter().map(|l| if *l == CdLetter::C { 1 } else { 2 }).sum()
}

/// Integer combination of ab-words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AbPoly {
    terms: BTreeMap<AbWord, BigInt>,
}

/// Integer combination of cd-words (possibly of mixed degree).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CdPoly {
    terms: BTreeMap<CdWord, BigInt>,
}

impl AbPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut p = Self::default();
        p.add_term((0, 0), BigInt::one());
        p
    }

    pub fn add_term(&mut self, word: AbWord, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(word).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&word);
        }
    }

    pub fn from_counts<'a>(counts: impl Iterator<Item = (&'a AbWord, &'a BigInt)>) -> Self {
        let mut p = Self::default();
        for (&w, c) in counts {
            p.add_term(w, c.clone());
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<AbWord, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degrees present, ascending.
    pub fn degrees(&self) -> Vec<u8> {
        let mut out: Vec<u8> = self.terms.keys().map(|&(len, _)| len).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn component(&self, degree: u8) -> AbPoly {
        AbPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&(len, _), _)| len == degree)
                .map(|(&w, c)| (w, c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for AbPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&w, c)| format!("{}.{}", c, ab_word_string(w)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl CdPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut p = Self::default();
        p.add_term(Vec::new(), BigInt::one());
        p
    }

    pub fn add_term(&mut self, word: CdWord, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(word.clone()).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&word);
        }
    }

    pub fn terms(&self) -> &BTreeMap<CdWord, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, word: &CdWord) -> BigInt {
        self.terms.get(word).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// The homogeneous part of the given ab-degree.
    pub fn homogeneous_part(&self, degree: usize) -> CdPoly {
        CdPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| cd_word_degree(w) == degree)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Build a word from a string like "cdc"; "1" or "" is the empty
    /// word.
    pub fn parse_word(text: &str) -> Result<CdWord, CdError> {
        if text == "1" || text.is_empty() {
            return Ok(Vec::new());
        }
        text.chars()
            .map(|ch| match ch {
                'c' => Ok(CdLetter::C),
                'd' => Ok(CdLetter::D),
                _ => Err(CdError::BadWord(text.into())),
            })
            .collect()
    }
}

impl fmt::Display for CdPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Display by descending degree, then word order.
        let mut entries: Vec<(&CdWord, &BigInt)> = self.terms.iter().collect();
        entries.sort_by_key(|(w, _)| (std::cmp::Reverse(cd_word_degree(w)), (*w).clone()));
        let parts: Vec<String> = entries
            .into_iter()
            .map(|(w, c)| {
                if c.is_one() && !w.is_empty() {
                    cd_word_string(w)
                } else {
                    format!("{}{}", c, if w.is_empty() { String::new() } else { cd_word_string(w) })
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

use num_traits::Signed;

impl Serialize for CdPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct C<'a>(&'a BigInt);
        impl Serialize for C<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                crate::poly::serialize_bigint(self.0, s)
            }
        }
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (w, c) in &self.terms {
            map.serialize_entry(&cd_word_string(w), &C(c))?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for CdPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = CdPoly;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a map from cd-words to integer coefficients")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<CdPoly, A::Error> {
                #[derive(Deserialize)]
                #[serde(untagged)]
                enum IntOrStr {
                    Int(i64),
                    Str(String),
                }
                let mut out = CdPoly::zero();
                while let Some((key, value)) = access.next_entry::<String, IntOrStr>()? {
                    let word = CdPoly::parse_word(&key)
                        .map_err(|e| serde::de::Error::custom(e.to_string()))?;
                    let coeff = match value {
                        IntOrStr::Int(i) => BigInt::from(i),
                        IntOrStr::Str(s) => s
                            .parse::<BigInt>()
                            .map_err(|e| serde::de::Error::custom(format!("bad integer: {e}")))?,
                    };
                    out.add_term(word, coeff);
                }
                Ok(out)
            }
        }
        deserializer.deserialize_map(V)
    }
}

/// ab-index of a bounded graded poset: `sum_S beta(S) u_S` with `b` at
/// the positions of `S`. Homogeneous of degree `rank - 1`.
pub fn ab_index(flags: &FlagVector) -> AbPoly {
    let r = flags.rank();
    let len = r.saturating_sub(1) as u8;
    let mut out = AbPoly::zero();
    for (mask, _, beta) in flags.beta_entries() {
        out.add_term((len, mask as u32), beta.clone());
    }
    out
}

/// Expand a cd-word into its ab-polynomial: `c -> a + b`,
/// `d -> ab + ba`.
pub fn expand_cd_word(word: &CdWord) -> AbPoly {
    let mut branches: Vec<(u8, u32)> = vec![(0, 0)];
    for letter in word {
        let mut next = Vec::with_capacity(branches.len() * 2);
        for &(len, bits) in &branches {
            match letter {
                CdLetter::C => {
                    next.push((len + 1, bits)); // a
                    next.push((len + 1, bits | 1 << len)); // b
                }
                CdLetter::D => {
                    next.push((len + 2, bits | 1 << (len + 1))); // ab
                    next.push((len + 2, bits | 1 << len)); // ba
                }
            }
        }
        branches = next;
    }
    let mut out = AbPoly::zero();
    for w in branches {
        out.add_term(w, BigInt::one());
    }
    out
}

/// Expand a full cd-polynomial.
pub fn expand(cd: &CdPoly) -> AbPoly {
    let mut out = AbPoly::zero();
    for (word, coeff) in cd.terms() {
        for (&w, c) in expand_cd_word(word).terms() {
            out.add_term(w, c * coeff);
        }
    }
    out
}

/// Lexicographic key for an ab-word (position 0 most significant,
/// a < b), within a fixed degree.
fn lex_key(word: AbWord) -> u32 {
    let (len, bits) = word;
    let mut key = 0u32;
    for i in 0..len {
        key = key << 1 | (bits >> i & 1);
    }
    key
}

/// Rewrite an ab-polynomial in the cd-subalgebra. The system is
/// unitriangular: the lexicographically least expansion word of a
/// cd-monomial is its image under `c -> a`, `d -> ab`, so repeatedly
/// peeling the least residual word solves the rewrite exactly. A
/// residual word that starts with `b` or ends in a dangling `b` is the
/// witness that the input lies outside the subalgebra.
pub fn to_cd(ab: &AbPoly) -> Result<CdPoly, CdError> {
    let mut out = CdPoly::zero();
    for degree in ab.degrees() {
        let mut residual = ab.component(degree);
        while !residual.is_zero() {
            let (&word, coeff) = residual
                .terms
                .iter()
                .min_by_key(|(&w, _)| lex_key(w))
                .expect("nonzero residual");
            let coeff = coeff.clone();
            // Parse the least word as a cd-monomial: b must pair with a
            // preceding a (forming d); a followed by b is forced to be d.
            let (len, bits) = word;
            let mut cd_word: CdWord = Vec::new();
            let mut i = 0u8;
            while i < len {
                if bits >> i & 1 == 1 {
                    return Err(CdError::NotInSubalgebra(ab_word_string(word)));
                }
                if i + 1 < len && bits >> (i + 1) & 1 == 1 {
                    cd_word.push(CdLetter::D);
                    i += 2;
                } else {
                    cd_word.push(CdLetter::C);
                    i += 1;
                }
            }
            for (&w, c) in expand_cd_word(&cd_word).terms() {
                residual.add_term(w, -(c * &coeff));
            }
            out.add_term(cd_word, coeff);
        }
    }
    Ok(out)
}

/// Gal's specialization: substitute `c -> 1`, `d -> 2t` in a cd-index.
/// For Eulerian posets this gives the gamma polynomial of the
/// h-polynomial of the order complex.
pub fn gal_gamma(cd: &CdPoly) -> Poly {
    let mut acc = Poly::zero();
    for (word, coeff) in cd.terms() {
        let d_count = word.iter().filter(|&&l| l == CdLetter::D).count();
        let value = coeff * BigInt::from(2).pow(d_count as u32);
        acc += &Poly::monomial(value, d_count);
    }
    acc
}

/// Complete cd-index of a Bruhat interval: descent words of all Bruhat
/// paths rewritten per homogeneous degree. A component outside the
/// cd-subalgebra would falsify the underlying path theorem, so it is a
/// hard error.
pub fn complete_cd_from_paths(interval: &BruhatInterval, order: &ReflectionOrder) -> CdPoly {
    let words = descent_words_dp(interval, order);
    let ab = AbPoly::from_counts(words.iter());
    to_cd(&ab).unwrap_or_else(|e| panic!("path descent words must lie in the cd-subalgebra: {e}"))
}

fn cd_counts(word: &CdWord) -> (usize, usize) {
    let c = word.iter().filter(|&&l| l == CdLetter::C).count();
    (c, word.len() - c)
}

/// Chow polynomial from the complete cd-index:
/// substitute `c -> x^{-1/2} + x^{1/2}`, `d -> 2` and scale by
/// `x^{(rho-1)/2}`. Half-integer exponents must clear; the computation
/// runs in `Z[z]` with `z^2 = x`.
pub fn chow_from_complete_cd(cd: &CdPoly, rho: u32) -> Poly {
    let z2p1 = Poly::from_i64(&[1, 0, 1]);
    let mut acc = Poly::zero();
    for (word, coeff) in cd.terms() {
        let (c, d) = cd_counts(word);
        assert!(
            c + 2 * d < rho as usize || rho as usize == c + 2 * d + 1,
            "cd-word degree exceeds rho - 1"
        );
        // z^{rho-1-c} (z^2+1)^c 2^d
        let mut term = Poly::monomial(coeff * BigInt::from(2).pow(d as u32), rho as usize - 1 - c);
        for _ in 0..c {
            term = &term * &z2p1;
        }
        acc += &term;
    }
    acc.unstretch2().expect("half-integer exponents must clear")
}

/// Gamma polynomial of the Chow polynomial straight from the complete
/// cd-index: `gamma(H, y^2) = y^{rho-1} psi(y^{-1}, 2)`, evaluated in
/// `Z[y]` (all exponents come out even).
pub fn gamma_from_complete_cd(cd: &CdPoly, rho: u32) -> Poly {
    let mut acc = Poly::zero();
    for (word, coeff) in cd.terms() {
        let (c, d) = cd_counts(word);
        acc += &Poly::monomial(coeff * BigInt::from(2).pow(d as u32), rho as usize - 1 - c);
    }
    acc.unstretch2().expect("exponent parity in gamma specialization")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{boolean, chain, flag_vectors, polygon_face_lattice, RankFn};

    fn cdw(text: &str) -> CdWord {
        CdPoly::parse_word(text).unwrap()
    }

    #[test]
    fn ab_index_small() {
        let b2 = boolean(2);
        let rk = RankFn::graded(&b2).unwrap();
        let psi = ab_index(&flag_vectors(&b2, &rk));
        // beta(empty) = 1 -> word "a"; beta({1}) = 1 -> word "b".
        let mut expect = AbPoly::zero();
        expect.add_term((1, 0), BigInt::one());
        expect.add_term((1, 1), BigInt::one());
        assert_eq!(psi, expect);
        assert_eq!(to_cd(&psi).unwrap().terms().len(), 1);
        assert_eq!(to_cd(&psi).unwrap().coeff(&cdw("c")), BigInt::one());

        // Rank-1 chain: the empty word.
        let c2 = chain(2);
        let rk = RankFn::graded(&c2).unwrap();
        let psi = ab_index(&flag_vectors(&c2, &rk));
        assert_eq!(psi, AbPoly::one());
    }

    #[test]
    fn to_cd_basics() {
        // a + b = c
        let mut ab = AbPoly::zero();
        ab.add_term((1, 0), BigInt::one());
        ab.add_term((1, 1), BigInt::one());
        let cd = to_cd(&ab).unwrap();
        assert_eq!(cd.coeff(&cdw("c")), BigInt::one());

        // ab + ba = d
        let mut ab = AbPoly::zero();
        ab.add_term((2, 0b10), BigInt::one());
        ab.add_term((2, 0b01), BigInt::one());
        let cd = to_cd(&ab).unwrap();
        assert_eq!(cd.coeff(&cdw("d")), BigInt::one());

        // Square face lattice: Phi = c^2 + 2d.
        let square = polygon_face_lattice(4);
        let rk = RankFn::graded(&square).unwrap();
        let cd = to_cd(&ab_index(&flag_vectors(&square, &rk))).unwrap();
        assert_eq!(cd.coeff(&cdw("cc")), BigInt::one());
        assert_eq!(cd.coeff(&cdw("d")), BigInt::from(2));
        assert_eq!(cd.terms().len(), 2);
    }

    #[test]
    fn to_cd_detects_non_eulerian() {
        // ab-index of the chain C3 (rank 2) is the single word "a",
        // which is not in the cd-subalgebra.
        let c3 = chain(3);
        let rk = RankFn::graded(&c3).unwrap();
        let psi = ab_index(&flag_vectors(&c3, &rk));
        match to_cd(&psi) {
            Err(CdError::NotInSubalgebra(w)) => assert_eq!(w, "b"),
            other => panic!("expected subalgebra failure, got {other:?}"),
        }
    }

    #[test]
    fn expand_round_trip() {
        // to_cd . expand = identity on cd-polynomials up to degree 8.
        let words = [
            "1", "c", "d", "cc", "cd", "dc", "ccc", "dd", "cdc", "ccdd", "dcdc", "cccc",
            "ddcc", "cdcdc", "dddd", "cccccccc",
        ];
        let mut cd = CdPoly::zero();
        for (i, w) in words.iter().enumerate() {
            cd.add_term(cdw(w), BigInt::from(i as i64 + 1) * BigInt::from(if i % 3 == 0 { -1 } else { 1 }));
        }
        assert_eq!(to_cd(&expand(&cd)).unwrap(), cd);
    }

    #[test]
    fn gal_gamma_substitution() {
        let mut cd = CdPoly::zero();
        cd.add_term(cdw("cc"), BigInt::one());
        cd.add_term(cdw("d"), BigInt::one());
        assert_eq!(gal_gamma(&cd), Poly::from_i64(&[1, 2]));
        assert_eq!(gal_gamma(&CdPoly::one()), Poly::one());
    }

    #[test]
    fn serde_round_trip() {
        let mut cd = CdPoly::zero();
        cd.add_term(cdw("cdc"), BigInt::from(2));
        cd.add_term(cdw("1"), BigInt::one());
        let text = serde_json::to_string(&cd).unwrap();
        assert_eq!(serde_json::from_str::<CdPoly>(&text).unwrap(), cd);
        assert!(text.contains("\"cdc\":2"));
    }

    #[test]
    fn display_format() {
        let mut cd = CdPoly::zero();
        cd.add_term(cdw("cc"), BigInt::from(2));
        cd.add_term(cdw("1"), BigInt::one());
        cd.add_term(cdw("d"), BigInt::one());
        assert_eq!(cd.to_string(), "2cc + d + 1");
    }
}
