//! Sign vectors over `{+, 0, -}` and their basic algebra.
//!
//! A [`SignVector`] of length `n` is stored as a pair of bit masks (positive
//! and negative positions). Element `e` of the ground set is bit `e`
//! internally; externally elements are numbered from 1 and the string form
//! writes element 1 leftmost.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_LEN: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn to_char(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Zero => '0',
            Sign::Neg => '-',
        }
    }

    pub fn from_char(c: char) -> Result<Sign> {
        match c {
            '+' => Ok(Sign::Pos),
            '0' => Ok(Sign::Zero),
            '-' => Ok(Sign::Neg),
            other => Err(Error::InvalidSign(other)),
        }
    }

    pub fn of<T: num_traits::Signed>(x: &T) -> Sign {
        if x.is_positive() {
            Sign::Pos
        } else if x.is_negative() {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Pos,
            _ => Sign::Neg,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// Bit set of ground-set elements (bit `e` = zero-based element `e`).
pub type ElementSet = u64;

/// Iterate the zero-based elements of an [`ElementSet`] in increasing order.
pub fn elements(set: ElementSet) -> impl Iterator<Item = usize> {
    let mut rest = set;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let e = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(e)
        }
    })
}

/// Formats an element set with 1-based indices, e.g. `{1,3}`.
pub fn format_set(set: ElementSet) -> String {
    let parts: Vec<String> = elements(set).map(|e| (e + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn full_mask(len: usize) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignVector {
    len: u8,
    pos: u64,
    neg: u64,
}

impl SignVector {
    pub fn zero(len: usize) -> SignVector {
        assert!(len <= MAX_LEN, "sign vector length {len} exceeds {MAX_LEN}");
        SignVector {
            len: len as u8,
            pos: 0,
            neg: 0,
        }
    }

    pub fn from_signs(signs: &[Sign]) -> Result<SignVector> {
        if signs.len() > MAX_LEN {
            return Err(Error::GroundSetTooLarge(signs.len(), MAX_LEN));
        }
        let mut v = SignVector::zero(signs.len());
        for (e, s) in signs.iter().enumerate() {
            v.set(e, *s);
        }
        Ok(v)
    }

    /// Builds a vector from its positive and negative element sets.
    pub fn from_masks(len: usize, pos: ElementSet, neg: ElementSet) -> SignVector {
        assert!(len <= MAX_LEN);
        let full = full_mask(len);
        assert!(pos & neg == 0 && pos & !full == 0 && neg & !full == 0);
        SignVector {
            len: len as u8,
            pos,
            neg,
        }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn pos(&self) -> ElementSet {
        self.pos
    }

    pub fn neg(&self) -> ElementSet {
        self.neg
    }

    pub fn get(&self, e: usize) -> Sign {
        debug_assert!(e < self.len());
        let bit = 1u64 << e;
        if self.pos & bit != 0 {
            Sign::Pos
        } else if self.neg & bit != 0 {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    pub fn set(&mut self, e: usize, s: Sign) {
        assert!(e < self.len());
        let bit = 1u64 << e;
        self.pos &= !bit;
        self.neg &= !bit;
        match s {
            Sign::Pos => self.pos |= bit,
            Sign::Neg => self.neg |= bit,
            Sign::Zero => {}
        }
    }

    pub fn signs(&self) -> impl Iterator<Item = Sign> + '_ {
        (0..self.len()).map(move |e| self.get(e))
    }

    pub fn support(&self) -> ElementSet {
        self.pos | self.neg
    }

    pub fn zero_set(&self) -> ElementSet {
        full_mask(self.len()) & !self.support()
    }

    pub fn support_size(&self) -> usize {
        self.support().count_ones() as usize
    }

    pub fn is_zero(&self) -> bool {
        self.support() == 0
    }

    pub fn has_full_support(&self) -> bool {
        self.zero_set() == 0
    }

    fn check_len(&self, other: &SignVector) -> Result<()> {
        if self.len != other.len {
            Err(Error::LengthMismatch(self.len(), other.len()))
        } else {
            Ok(())
        }
    }

    /// `X ∘ Y`: takes `X_e` where it is nonzero and `Y_e` elsewhere.
    pub fn compose(&self, other: &SignVector) -> Result<SignVector> {
        self.check_len(other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &SignVector) -> SignVector {
        let free = !self.support();
        SignVector {
            len: self.len,
            pos: self.pos | (other.pos & free),
            neg: self.neg | (other.neg & free),
        }
    }

    /// Elements where the two vectors carry opposite nonzero signs.
    pub fn separation_set(&self, other: &SignVector) -> Result<ElementSet> {
        self.check_len(other)?;
        Ok(self.separation_unchecked(other))
    }

    pub(crate) fn separation_unchecked(&self, other: &SignVector) -> ElementSet {
        (self.pos & other.neg) | (self.neg & other.pos)
    }

    /// `self ≤ other`: every nonzero entry of `self` agrees with `other`.
    pub fn conforms(&self, other: &SignVector) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.conforms_unchecked(other))
    }

    pub(crate) fn conforms_unchecked(&self, other: &SignVector) -> bool {
        self.pos & !other.pos == 0 && self.neg & !other.neg == 0
    }

    /// Restriction to an element subset, zeroing everything else.
    pub fn mask(&self, keep: ElementSet) -> SignVector {
        SignVector {
            len: self.len,
            pos: self.pos & keep,
            neg: self.neg & keep,
        }
    }

    /// Reorients the given elements (flips their signs).
    pub fn reorient(&self, flip: ElementSet) -> SignVector {
        SignVector {
            len: self.len,
            pos: (self.pos & !flip) | (self.neg & flip),
            neg: (self.neg & !flip) | (self.pos & flip),
        }
    }

    /// Relabels: entry `e` of `self` lands at position `perm[e]`.
    pub fn permute(&self, perm: &[usize]) -> SignVector {
        assert_eq!(perm.len(), self.len());
        let mut out = SignVector::zero(self.len());
        for (e, &target) in perm.iter().enumerate() {
            out.set(target, self.get(e));
        }
        out
    }
}

impl Neg for SignVector {
    type Output = SignVector;
    fn neg(self) -> SignVector {
        SignVector {
            len: self.len,
            pos: self.neg,
            neg: self.pos,
        }
    }
}

impl Neg for &SignVector {
    type Output = SignVector;
    fn neg(self) -> SignVector {
        -*self
    }
}

// Lexicographic on the string form with '+' < '-' < '0' (ASCII order), which
// keeps sorted reports identical to sorting the emitted strings.
impl Ord for SignVector {
    fn cmp(&self, other: &Self) -> Ordering {
        fn rank(s: Sign) -> u8 {
            match s {
                Sign::Pos => 0,
                Sign::Neg => 1,
                Sign::Zero => 2,
            }
        }
        self.signs()
            .map(rank)
            .cmp(other.signs().map(rank))
            .then(self.len.cmp(&other.len))
    }
}

impl PartialOrd for SignVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.signs() {
            write!(f, "{}", s.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignVector({self})")
    }
}

impl FromStr for SignVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<SignVector> {
        let signs = s.chars().map(Sign::from_char).collect::<Result<Vec<_>>>()?;
        SignVector::from_signs(&signs)
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SignVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a sign string, panicking on malformed input. For fixtures and tests.
pub fn sv(s: &str) -> SignVector {
    s.parse().unwrap_or_else(|e| panic!("bad sign string {s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_vectors(n: usize) -> Vec<SignVector> {
        let mut out = vec![SignVector::zero(n)];
        for e in 0..n {
            let mut next = Vec::new();
            for v in &out {
                for s in [Sign::Pos, Sign::Zero, Sign::Neg] {
                    let mut w = *v;
                    w.set(e, s);
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }

    #[test]
    fn compose_examples() {
        assert_eq!(sv("+0-").compose(&sv("-++")).unwrap(), sv("++-"));
        for x in all_vectors(3) {
            assert_eq!(x.compose(&sv("000")).unwrap(), x);
            assert_eq!(sv("-+-").compose(&x).unwrap(), sv("-+-"));
        }
        assert_eq!(sv("0+0").compose(&sv("-0-")).unwrap(), sv("-+-"));
    }

    #[test]
    fn separation_examples() {
        assert_eq!(sv("+0-").separation_set(&sv("-++")).unwrap(), 0b101);
        assert_eq!(format_set(sv("+0-").separation_set(&sv("-++")).unwrap()), "{1,3}");
        for x in all_vectors(3) {
            assert_eq!(x.separation_set(&x).unwrap(), 0);
        }
        assert_eq!(sv("++").separation_set(&sv("--")).unwrap(), 0b11);
    }

    #[test]
    fn conforms_examples() {
        assert!(sv("0+0").conforms(&sv("++-")).unwrap());
        assert!(!sv("+-0").conforms(&sv("++-")).unwrap());
        for x in all_vectors(3) {
            assert!(sv("000").conforms(&x).unwrap());
        }
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert_eq!(sv("+0").compose(&sv("+00")), Err(Error::LengthMismatch(2, 3)));
        assert!(sv("+").separation_set(&sv("--")).is_err());
        assert!(sv("+").conforms(&sv("--")).is_err());
    }

    #[test]
    fn string_round_trip_and_bad_chars() {
        assert_eq!(sv("+-0+").to_string(), "+-0+");
        assert_eq!("+x".parse::<SignVector>(), Err(Error::InvalidSign('x')));
        assert_eq!(sv("").len(), 0);
    }

    #[test]
    fn composition_laws_exhaustive() {
        for n in 0..=3 {
            let all = all_vectors(n);
            for x in &all {
                assert_eq!(-(-*x), *x);
                assert_eq!(x.support() | x.zero_set(), full_mask(n));
                assert_eq!(x.support() & x.zero_set(), 0);
                assert_eq!(x.compose_unchecked(x), *x);
                for y in &all {
                    let xy = x.compose_unchecked(y);
                    assert!(x.conforms_unchecked(&xy));
                    assert_eq!(xy.support(), x.support() | y.support());
                    if x.separation_unchecked(y) == 0 {
                        assert_eq!(xy, y.compose_unchecked(x));
                    }
                    for z in &all {
                        assert_eq!(xy.compose_unchecked(z), x.compose_unchecked(&y.compose_unchecked(z)));
                    }
                }
            }
        }
    }

    #[test]
    fn conformal_order_is_partial_order() {
        let all = all_vectors(3);
        for x in &all {
            assert!(x.conforms_unchecked(x));
            for y in &all {
                if x.conforms_unchecked(y) && y.conforms_unchecked(x) {
                    assert_eq!(x, y);
                }
                for z in &all {
                    if x.conforms_unchecked(y) && y.conforms_unchecked(z) {
                        assert!(x.conforms_unchecked(z));
                    }
                }
            }
        }
    }

    #[test]
    fn ordering_matches_string_order() {
        let mut all = all_vectors(3);
        all.sort();
        let strings: Vec<String> = all.iter().map(|v| v.to_string()).collect();
        let mut sorted = strings.clone();
        sorted.sort();
        assert_eq!(strings, sorted);
    }

    #[test]
    fn permute_and_reorient() {
        let x = sv("+0-");
        assert_eq!(x.permute(&[2, 0, 1]), sv("0-+"));
        assert_eq!(x.reorient(0b101), sv("-0+"));
    }
}
