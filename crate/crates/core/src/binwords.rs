//! Finite binary words and the integer/digit helpers built on them.
//!
//! Words are stored most significant letter first, so the word `110`
//! denotes the integer 6 and `w[0]` is the leading digit.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite word over `{0, 1}`. The empty word denotes 0.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryWord(Vec<u8>);

impl BinaryWord {
    pub fn empty() -> Self {
        BinaryWord(Vec::new())
    }

    /// Builds a word from letters, rejecting anything other than 0 and 1.
    pub fn from_letters(letters: Vec<u8>) -> Result<Self> {
        if let Some(bad) = letters.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidWord(format!("letter {bad} is not a binary digit")));
        }
        Ok(BinaryWord(letters))
    }

    pub(crate) fn from_letters_unchecked(letters: Vec<u8>) -> Self {
        debug_assert!(letters.iter().all(|&b| b <= 1));
        BinaryWord(letters)
    }

    /// The word `b^n`.
    pub fn repeat(letter: u8, n: usize) -> Self {
        assert!(letter <= 1);
        BinaryWord(vec![letter; n])
    }

    /// Canonical expansion of `n`: no leading zeros, and `0` maps to the empty word.
    pub fn from_value(n: u128) -> Self {
        let len = bit_length(n) as usize;
        BinaryWord((0..len).rev().map(|k| ((n >> k) & 1) as u8).collect())
    }

    /// The `width` low digits of `n`, left-padded with zeros.
    pub fn from_value_padded(n: u128, width: usize) -> Self {
        BinaryWord(
            (0..width)
                .rev()
                .map(|k| if k < 128 { ((n >> k) & 1) as u8 } else { 0 })
                .collect(),
        )
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Integer value, or `None` if it needs more than 128 bits.
    pub fn checked_value(&self) -> Option<u128> {
        let digits = self.trim_leading_zeros();
        if digits.len() > 128 {
            return None;
        }
        Some(digits.0.iter().fold(0u128, |acc, &b| (acc << 1) | b as u128))
    }

    /// Integer value of the word. Leading zeros are ignored.
    ///
    /// Panics if the value does not fit in 128 bits; use
    /// [`checked_value`](Self::checked_value) for untrusted input.
    pub fn value(&self) -> u128 {
        self.checked_value()
            .expect("binary word value exceeds 128 bits")
    }

    pub fn trim_leading_zeros(&self) -> BinaryWord {
        let first_one = self.0.iter().position(|&b| b == 1).unwrap_or(self.0.len());
        BinaryWord(self.0[first_one..].to_vec())
    }

    pub fn negate(&self) -> BinaryWord {
        BinaryWord(self.0.iter().map(|&b| 1 - b).collect())
    }

    pub fn reverse(&self) -> BinaryWord {
        BinaryWord(self.0.iter().rev().copied().collect())
    }

    pub fn transform(&self, kind: Transform) -> BinaryWord {
        match kind {
            Transform::Negate => self.negate(),
            Transform::Reverse => self.reverse(),
        }
    }

    pub fn concat(&self, other: &BinaryWord) -> BinaryWord {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        BinaryWord(letters)
    }

    pub fn push(&mut self, letter: u8) {
        assert!(letter <= 1);
        self.0.push(letter);
    }

    pub fn starts_with(&self, prefix: &BinaryWord) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn ends_with(&self, suffix: &BinaryWord) -> bool {
        self.0.ends_with(&suffix.0)
    }

    /// `|self|_v`: overlapping occurrences of the nonempty word `v`.
    pub fn count(&self, v: &BinaryWord) -> Result<usize> {
        count_subword(self, v)
    }

    /// Occurrences of `11`, the quantity the Rudin–Shapiro coloring tracks.
    pub fn count_11(&self) -> usize {
        self.0.windows(2).filter(|w| w[0] == 1 && w[1] == 1).count()
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("ε")
        } else {
            write!(f, "{self}")
        }
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.bytes()
            .map(|c| match c {
                b'0' => Ok(0),
                b'1' => Ok(1),
                _ => Err(Error::InvalidWord(format!("{s:?} contains {:?}", c as char))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(BinaryWord)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    Negate,
    Reverse,
}

/// `ℓ(n)`, the length of the canonical expansion; `ℓ(0) = 0`.
pub fn bit_length(n: u128) -> u32 {
    128 - n.leading_zeros()
}

/// 2-adic valuation. Undefined (an error) for `n = 0`.
pub fn nu2(n: u128) -> Result<u32> {
    if n == 0 {
        return Err(Error::Domain("2-adic valuation of 0 is infinite".into()));
    }
    Ok(n.trailing_zeros())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DigitStats {
    pub ell: u32,
    pub nu2: Option<u32>,
    pub s2: u32,
}

pub fn digit_stats(n: u128) -> DigitStats {
    DigitStats {
        ell: bit_length(n),
        nu2: nu2(n).ok(),
        s2: n.count_ones(),
    }
}

pub fn count_subword(w: &BinaryWord, v: &BinaryWord) -> Result<usize> {
    if v.is_empty() {
        return Err(Error::InvalidPattern("pattern must be nonempty".into()));
    }
    Ok(w.0.windows(v.len()).filter(|win| *win == v.0.as_slice()).count())
}

/// Carry into each digit position of a binary addition.
///
/// Index `k` is the position counted from the least significant digit;
/// the last entry is the overflow out of the top position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarryProfile {
    bits: Vec<bool>,
}

impl CarryProfile {
    /// Whether a carry entered the digit at position `k` (from the right).
    pub fn carry_into(&self, k: usize) -> bool {
        self.bits.get(k).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn overflow(&self) -> bool {
        self.bits.last().copied().unwrap_or(false)
    }

    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, &c)| c).map(|(k, _)| k)
    }
}

/// Schoolbook addition of two words. The sum is returned in canonical
/// form (leading zeros removed).
pub fn add_words(a: &BinaryWord, b: &BinaryWord) -> (BinaryWord, CarryProfile) {
    let width = a.len().max(b.len());
    let digit = |w: &BinaryWord, k: usize| -> u8 {
        if k < w.len() {
            w.0[w.len() - 1 - k]
        } else {
            0
        }
    };
    let mut carries = Vec::with_capacity(width + 1);
    let mut sum_lsb_first = Vec::with_capacity(width + 1);
    let mut carry = 0u8;
    for k in 0..width {
        carries.push(carry == 1);
        let t = digit(a, k) + digit(b, k) + carry;
        sum_lsb_first.push(t & 1);
        carry = t >> 1;
    }
    carries.push(carry == 1);
    if carry == 1 {
        sum_lsb_first.push(1);
    }
    sum_lsb_first.reverse();
    let sum = BinaryWord(sum_lsb_first).trim_leading_zeros();
    (sum, CarryProfile { bits: carries })
}
