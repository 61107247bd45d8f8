//! Pattern-counting functions `e_v`, their parity colorings `g_v`, and the
//! named sequences built from them (Thue–Morse `t`, Rudin–Shapiro `r`, and
//! the odd-index subsequence `s_n = r_{2n+1}`).

use std::fmt;
use std::str::FromStr;

use crate::binwords::{bit_length, BinaryWord};
use crate::error::{Error, Result};
use crate::morphism::BlockMorphism;

/// Longest pattern the word-parallel counter supports.
pub const MAX_PATTERN_LEN: usize = 64;

/// Prefixes at least this long are generated by iterating the substitution.
pub const MORPHISM_PREFIX_THRESHOLD: usize = 1 << 16;

/// A nonempty binary word whose occurrences are counted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    word: BinaryWord,
    bits: u64,
    leading_zeros: u32,
    contains_one: bool,
}

impl Pattern {
    pub fn new(word: BinaryWord) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::InvalidPattern("pattern must be nonempty".into()));
        }
        if word.len() > MAX_PATTERN_LEN {
            return Err(Error::InvalidPattern(format!(
                "pattern longer than {MAX_PATTERN_LEN} letters"
            )));
        }
        let letters = word.letters();
        let leading_zeros = letters.iter().take_while(|&&b| b == 0).count() as u32;
        let contains_one = (leading_zeros as usize) < letters.len();
        let bits = letters.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
        Ok(Pattern {
            word,
            bits,
            leading_zeros,
            contains_one,
        })
    }

    /// Thue–Morse: `e_1 = s_2`.
    pub fn thue_morse() -> Self {
        "1".parse().unwrap()
    }

    /// Rudin–Shapiro: occurrences of `11`.
    pub fn rudin_shapiro() -> Self {
        "11".parse().unwrap()
    }

    pub fn word(&self) -> &BinaryWord {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn leading_zeros(&self) -> u32 {
        self.leading_zeros
    }

    pub fn trailing_zeros(&self) -> u32 {
        self.word.letters().iter().rev().take_while(|&&b| b == 0).count() as u32
    }

    pub fn contains_one(&self) -> bool {
        self.contains_one
    }

    /// `v = 0^i` for some `i ≥ 1`.
    pub fn is_all_zeros(&self) -> bool {
        !self.contains_one
    }

    pub fn ends_with_one(&self) -> bool {
        self.word.letters().last() == Some(&1)
    }

    /// Whether `v` belongs to the family with `|v| ≥ 2` and `v ≠ 0^i`.
    pub fn in_limit_family(&self) -> bool {
        self.len() >= 2 && self.contains_one
    }

    /// Length of aligned blocks, `2^{|v|-1}`.
    pub fn block_len(&self) -> usize {
        1usize << (self.len() - 1)
    }

    /// `e_v(n)`. Patterns with `i ≥ 1` leading zeros and a one are matched
    /// against `0^i (n)_2`; `0^i` itself is matched against `(n)_2` alone.
    pub fn count_in(&self, n: u128) -> u32 {
        let m = self.len() as u32;
        let pad = if self.contains_one { self.leading_zeros } else { 0 };
        let total = bit_length(n) + pad;
        if total < m {
            return 0;
        }
        let last_window = total - m;
        let mut hits = !0u128;
        for t in 0..m {
            let shifted = n >> t;
            hits &= if (self.bits >> t) & 1 == 1 { shifted } else { !shifted };
        }
        let mask = if last_window >= 127 {
            !0u128
        } else {
            (1u128 << (last_window + 1)) - 1
        };
        (hits & mask).count_ones()
    }

    /// `g_v(n) = e_v(n) mod 2`.
    pub fn parity(&self, n: u128) -> u8 {
        (self.count_in(n) & 1) as u8
    }

    /// All patterns of exactly `len` letters, in increasing numeric order.
    pub fn all_of_len(len: usize) -> Vec<Pattern> {
        (0..(1u128 << len))
            .map(|n| Pattern::new(BinaryWord::from_value_padded(n, len)).unwrap())
            .collect()
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let word: BinaryWord = s
            .parse()
            .map_err(|_| Error::InvalidPattern(format!("{s:?} is not a binary word")))?;
        Pattern::new(word)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word)
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({})", self.word)
    }
}

/// `e_v(n)` as a free function.
pub fn e_v(v: &Pattern, n: u128) -> u32 {
    v.count_in(n)
}

/// A two-colored sequence: either `g_v` directly, or the odd-index
/// subsequence of the Rudin–Shapiro coloring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum SequenceHandle {
    Pattern(Pattern),
    OddSubsequence(Pattern),
}

impl SequenceHandle {
    pub fn pattern(v: Pattern) -> Self {
        SequenceHandle::Pattern(v)
    }

    pub fn thue_morse() -> Self {
        SequenceHandle::Pattern(Pattern::thue_morse())
    }

    pub fn rudin_shapiro() -> Self {
        SequenceHandle::Pattern(Pattern::rudin_shapiro())
    }

    /// `s_n = r_{2n+1}`.
    pub fn rs_odd() -> Self {
        SequenceHandle::OddSubsequence(Pattern::rudin_shapiro())
    }

    /// Odd-index subsequence of `base`; only the Rudin–Shapiro coloring is supported.
    pub fn odd_subsequence_of(base: &SequenceHandle) -> Result<Self> {
        match base {
            SequenceHandle::Pattern(v) if *v == Pattern::rudin_shapiro() => {
                Ok(SequenceHandle::OddSubsequence(v.clone()))
            }
            _ => Err(Error::Domain(
                "odd subsequences are only defined for the Rudin-Shapiro coloring".into(),
            )),
        }
    }

    /// The pattern whose counting function drives this sequence.
    pub fn base_pattern(&self) -> &Pattern {
        match self {
            SequenceHandle::Pattern(v) | SequenceHandle::OddSubsequence(v) => v,
        }
    }

    pub fn color(&self, n: u128) -> u8 {
        match self {
            SequenceHandle::Pattern(v) => v.parity(n),
            SequenceHandle::OddSubsequence(v) => {
                let idx = n
                    .checked_mul(2)
                    .and_then(|x| x.checked_add(1))
                    .expect("odd-subsequence index overflows u128");
                v.parity(idx)
            }
        }
    }

    /// First `length` colors as a word.
    pub fn prefix(&self, length: usize) -> BinaryWord {
        if length >= MORPHISM_PREFIX_THRESHOLD {
            if let Some(m) = self.generating_morphism() {
                return m.project_prefix(length);
            }
        }
        self.prefix_direct(length)
    }

    /// Prefix by per-index evaluation, never through a substitution.
    pub fn prefix_direct(&self, length: usize) -> BinaryWord {
        BinaryWord::from_letters_unchecked((0..length as u128).map(|n| self.color(n)).collect())
    }

    // Deriving the block substitution scans 2^{3|v|+1} blocks, so long
    // patterns are cheaper to evaluate directly.
    fn generating_morphism(&self) -> Option<BlockMorphism> {
        match self {
            SequenceHandle::Pattern(v) if v.len() <= 5 => BlockMorphism::derive(v).ok(),
            SequenceHandle::Pattern(_) => None,
            SequenceHandle::OddSubsequence(_) => Some(BlockMorphism::sigma()),
        }
    }
}

impl fmt::Display for SequenceHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceHandle::Pattern(v) => write!(f, "{v}"),
            SequenceHandle::OddSubsequence(v) => write!(f, "odd({v})"),
        }
    }
}

impl fmt::Debug for SequenceHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SequenceHandle({self})")
    }
}

pub fn color(h: &SequenceHandle, n: u128) -> u8 {
    h.color(n)
}

pub fn prefix(h: &SequenceHandle, length: usize) -> BinaryWord {
    h.prefix(length)
}

/// `G_v(n)`: the colors at `2^{|v|-1} n .. 2^{|v|-1}(n+1) - 1`.
pub fn aligned_block(v: &Pattern, n: u128) -> BinaryWord {
    let b = v.block_len() as u128;
    BinaryWord::from_letters_unchecked((0..b).map(|j| v.parity(b * n + j)).collect())
}

/// `G_v(n)` packed into the low bits of an integer, first color highest.
pub(crate) fn aligned_block_bits(v: &Pattern, n: u128) -> u128 {
    let b = v.block_len() as u128;
    let base = b * n;
    (0..b).fold(0u128, |acc, j| (acc << 1) | v.parity(base + j) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    // Reference count straight from the definition, on explicit words.
    fn e_v_reference(v: &Pattern, n: u128) -> u32 {
        let mut w = BinaryWord::from_value(n);
        if v.contains_one() {
            w = BinaryWord::repeat(0, v.leading_zeros() as usize).concat(&w);
        }
        w.count(v.word()).unwrap() as u32
    }

    #[test]
    fn counting_examples() {
        assert_eq!(e_v(&p("001"), 9), 2);
        assert_eq!(e_v(&p("1"), 7), 3);
        assert_eq!(e_v(&p("11"), 3), 1);
        for v in ["0", "00", "1", "11", "001", "0110"] {
            assert_eq!(e_v(&p(v), 0), 0, "e_{v}(0)");
        }
    }

    #[test]
    fn counter_matches_reference() {
        for len in 1..=5 {
            for v in Pattern::all_of_len(len) {
                for n in 0..3000u128 {
                    assert_eq!(v.count_in(n), e_v_reference(&v, n), "v={v} n={n}");
                }
                let big = (1u128 << 127) | 0x5a5a_f0f0_1234_8765;
                assert_eq!(v.count_in(big), e_v_reference(&v, big), "v={v} big");
            }
        }
    }

    #[test]
    fn named_sequences() {
        let r = SequenceHandle::rudin_shapiro();
        assert_eq!(color(&r, 3), 1);
        assert_eq!(prefix(&r, 8).to_string(), "00010010");
        let s = SequenceHandle::rs_odd();
        assert_eq!((color(&s, 0), color(&s, 1)), (0, 1));
        assert_eq!(prefix(&SequenceHandle::thue_morse(), 4).to_string(), "0110");
        assert!(prefix(&r, 0).is_empty());
    }

    #[test]
    fn odd_subsequence_only_for_rudin_shapiro() {
        assert!(SequenceHandle::odd_subsequence_of(&SequenceHandle::rudin_shapiro()).is_ok());
        assert!(SequenceHandle::odd_subsequence_of(&SequenceHandle::thue_morse()).is_err());
    }

    #[test]
    fn aligned_blocks() {
        let rs = p("11");
        assert_eq!(aligned_block(&rs, 0).to_string(), "00");
        assert_eq!(aligned_block(&rs, 1).to_string(), "01");
        // r_6 = 1 (110), r_7 = 0 (111 holds 11 twice)
        let oracle: String = [6u128, 7].iter().map(|&n| e_v_reference(&rs, n) % 2).map(|b| b.to_string()).collect();
        assert_eq!(oracle, "10");
        assert_eq!(aligned_block(&rs, 3).to_string(), oracle);
        let tm = Pattern::thue_morse();
        for n in 0..32 {
            assert_eq!(aligned_block(&tm, n).letters(), &[(n.count_ones() % 2) as u8]);
        }
    }

    #[test]
    fn thue_morse_is_digit_sum() {
        let t = Pattern::thue_morse();
        for n in 0..100_000u128 {
            assert_eq!(t.count_in(n), n.count_ones());
        }
    }

    #[test]
    fn trailing_one_patterns_ignore_doubling() {
        for len in 1..=4 {
            for v in Pattern::all_of_len(len).into_iter().filter(|v| v.ends_with_one()) {
                for n in 0..10_000u128 {
                    assert_eq!(v.count_in(2 * n), v.count_in(n), "v={v} n={n}");
                }
            }
        }
    }

    #[test]
    fn block_congruence() {
        for len in 1..=4 {
            for v in Pattern::all_of_len(len).into_iter().filter(|v| v.contains_one()) {
                let b = v.block_len() as u128;
                for n in 0..10_000u128 {
                    let l = n % b;
                    for j in 0..b {
                        let lhs = v.parity(b * n + j);
                        // g_v(l) vanishes unless v starts with 0
                        let rhs = (v.parity(n) + v.parity(l) + v.parity(b * l + j)) % 2;
                        assert_eq!(lhs, rhs, "v={v} n={n} j={j}");
                    }
                }
            }
        }
    }

    #[test]
    fn odd_subsequence_matches_sigma_fixed_point() {
        let s = SequenceHandle::rs_odd();
        let direct = s.prefix_direct(1 << 12);
        assert_eq!(BlockMorphism::sigma().project_prefix(1 << 12), direct);
        let r = Pattern::rudin_shapiro();
        for n in 0..(1u128 << 12) {
            assert_eq!(s.color(n), r.parity(2 * n + 1));
        }
    }

    #[test]
    fn long_prefix_paths_agree() {
        for h in [
            SequenceHandle::rudin_shapiro(),
            SequenceHandle::thue_morse(),
            SequenceHandle::rs_odd(),
            SequenceHandle::pattern(p("00")),
            SequenceHandle::pattern(p("010")),
        ] {
            let len = MORPHISM_PREFIX_THRESHOLD + 77;
            assert_eq!(h.prefix(len), h.prefix_direct(len), "{h}");
        }
    }

    #[test]
    fn pattern_flags() {
        let v = p("0010");
        assert_eq!(v.leading_zeros(), 2);
        assert_eq!(v.trailing_zeros(), 1);
        assert!(v.contains_one());
        assert!(p("000").is_all_zeros());
        assert!("".parse::<Pattern>().is_err());
        assert!("0a1".parse::<Pattern>().is_err());
    }
}
