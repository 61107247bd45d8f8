//! Limit constants `C_v`, `B_v` governing `A_v(0, d)` along the differences
//! `d_k = 2^{l+j}(2^k + 1)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::apsolver::{ap_from, ApQuery};
use crate::binwords::BinaryWord;
use crate::error::{Error, Result};
use crate::patseq::{Pattern, SequenceHandle};

/// Exact rational `num / 2^exp`, kept in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: i128,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: i128, exp: u32) -> Self {
        let mut d = Dyadic { num, exp };
        while d.exp > 0 && d.num % 2 == 0 {
            d.num /= 2;
            d.exp -= 1;
        }
        d
    }

    pub fn integer(n: i128) -> Self {
        Dyadic { num: n, exp: 0 }
    }

    pub fn numerator(&self) -> i128 {
        self.num
    }

    /// Base-2 logarithm of the denominator.
    pub fn denominator_exp(&self) -> u32 {
        self.exp
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    pub fn to_integer(&self) -> Option<i128> {
        self.is_integer().then_some(self.num)
    }

    /// Multiplies by `2^k`.
    pub fn shl(self, k: u32) -> Self {
        if k <= self.exp {
            Dyadic::new(self.num, self.exp - k)
        } else {
            Dyadic::new(self.num << (k - self.exp), 0)
        }
    }

    /// Divides by `2^k`.
    pub fn shr(self, k: u32) -> Self {
        Dyadic::new(self.num, self.exp + k)
    }

    fn aligned(a: Self, b: Self) -> (i128, i128, u32) {
        let e = a.exp.max(b.exp);
        (a.num << (e - a.exp), b.num << (e - b.exp), e)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        let (a, b, e) = Dyadic::aligned(self, rhs);
        Dyadic::new(a + b, e)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        let (a, b, e) = Dyadic::aligned(self, rhs);
        Dyadic::new(a - b, e)
    }
}

impl Mul<i128> for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: i128) -> Dyadic {
        Dyadic::new(self.num * rhs, self.exp)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = Dyadic::aligned(*self, *other);
        a.cmp(&b)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, 1i128 << self.exp)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for Dyadic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("{s:?} is not a dyadic rational"));
        match s.split_once('/') {
            None => Ok(Dyadic::integer(s.trim().parse().map_err(|_| bad())?)),
            Some((n, d)) => {
                let n: i128 = n.trim().parse().map_err(|_| bad())?;
                let d: i128 = d.trim().parse().map_err(|_| bad())?;
                if d <= 0 || d.count_ones() != 1 {
                    return Err(bad());
                }
                Ok(Dyadic::new(n, d.trailing_zeros()))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitConstants {
    pub v: Pattern,
    pub x_min: BinaryWord,
    pub y_min: BinaryWord,
    pub c: Dyadic,
    pub b: Dyadic,
}

/// Longest pattern accepted by the constants routines.
pub const MAX_CONSTANTS_LEN: usize = 12;

fn check_family(v: &Pattern) -> Result<()> {
    if !v.in_limit_family() {
        return Err(Error::Domain(format!(
            "pattern {v} must have length at least 2 and contain a 1"
        )));
    }
    if v.len() > MAX_CONSTANTS_LEN {
        return Err(Error::Capacity(format!("pattern {v} is too long")));
    }
    Ok(())
}

fn count(w: &BinaryWord, v: &Pattern) -> usize {
    w.count(v.word()).expect("pattern is nonempty")
}

fn constants_from(v: &Pattern, x: BinaryWord, y: BinaryWord) -> LimitConstants {
    let j = v.trailing_zeros();
    let c = Dyadic::new(x.value() as i128, j + v.len() as u32 - 1);
    let b = Dyadic::integer(y.value() as i128) - c.shl(j);
    LimitConstants {
        v: v.clone(),
        x_min: x,
        y_min: y,
        c,
        b,
    }
}

/// Whether `|0^i x|_v + |yx|_v + |y0^j|_v` is odd.
pub fn congruence_holds(v: &Pattern, x: &BinaryWord, y: &BinaryWord) -> bool {
    let zi = BinaryWord::repeat(0, v.leading_zeros() as usize);
    let zj = BinaryWord::repeat(0, v.trailing_zeros() as usize);
    (count(&zi.concat(x), v) + count(&y.concat(x), v) + count(&y.concat(&zj), v)) % 2 == 1
}

/// Least `(x, y)`, `x` first, satisfying the parity congruence.
pub fn solve_congruence(v: &Pattern) -> Result<LimitConstants> {
    check_family(v)?;
    let w = v.len() - 1;
    for xv in 0..(1u128 << w) {
        let x = BinaryWord::from_value_padded(xv, w);
        for yv in 0..(1u128 << w) {
            let y = BinaryWord::from_value_padded(yv, w);
            if congruence_holds(v, &x, &y) {
                return Ok(constants_from(v, x, y));
            }
        }
    }
    Err(Error::Internal(format!("no solution of the congruence for {v}")))
}

/// Constants for `v` ending in 1 from its least proper suffix `s`, `v = ps`.
pub fn closed_form(v: &Pattern) -> Result<LimitConstants> {
    check_family(v)?;
    if !v.ends_with_one() {
        return Err(Error::Domain(format!("pattern {v} must end with 1")));
    }
    let letters = v.word().letters();
    let n = letters.len();
    let split = (1..n)
        .min_by(|&a, &b| letters[a..].cmp(&letters[b..]))
        .expect("|v| >= 2");
    let p = BinaryWord::from_letters_unchecked(letters[..split].to_vec());
    let s = BinaryWord::from_letters_unchecked(letters[split..].to_vec());
    let x = s.concat(&BinaryWord::repeat(0, p.len() - 1));
    let y = if p.value() != 0 {
        BinaryWord::repeat(0, s.len() - 1).concat(&p)
    } else {
        let mut y = BinaryWord::repeat(0, n - 2);
        y.push(1);
        y
    };
    let c = Dyadic::new(s.value() as i128, s.len() as u32);
    let b = Dyadic::integer(p.value().max(1) as i128) - c;
    Ok(LimitConstants {
        v: v.clone(),
        x_min: x,
        y_min: y,
        c,
        b,
    })
}

/// `C_v ≤ 1/2` when `v` ends in 1, `C_v ≤ 2^{-2j}` with `j ≥ 1` trailing zeros.
pub fn check_bound(v: &Pattern) -> Result<bool> {
    let c = solve_congruence(v)?.c;
    let j = v.trailing_zeros();
    let bound = if j == 0 { Dyadic::new(1, 1) } else { Dyadic::new(1, 2 * j) };
    Ok(c <= bound)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DkStatus {
    Pass,
    Fail,
    /// `k < 2|v| - 2`.
    NotApplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DkCheck {
    pub k: u32,
    pub d: u128,
    pub expected: Dyadic,
    pub actual: Option<u64>,
    pub status: DkStatus,
}

/// Compares `A_v(0, d_k)` with `(C_v / 2^l) d_k + B_v` for `k ≤ k_max`.
pub fn check_dk_formula(v: &Pattern, l: u32, k_max: u32) -> Result<Vec<DkCheck>> {
    let consts = solve_congruence(v)?;
    let j = v.trailing_zeros();
    let h = SequenceHandle::pattern(v.clone());
    let first_k = 2 * v.len() as u32 - 2;
    (0..=k_max)
        .map(|k| {
            let d = ((1u128 << k) + 1) << (l + j);
            let expected = consts.c.shr(l) * d as i128 + consts.b;
            if k < first_k {
                return Ok(DkCheck {
                    k,
                    d,
                    expected,
                    actual: None,
                    status: DkStatus::NotApplicable,
                });
            }
            let actual = ap_from(&ApQuery::new(h.clone(), 0, d))?;
            let status = if expected.to_integer() == Some(actual as i128) {
                DkStatus::Pass
            } else {
                DkStatus::Fail
            };
            Ok(DkCheck {
                k,
                d,
                expected,
                actual: Some(actual),
                status,
            })
        })
        .collect()
}

/// All patterns of length `2..=max_len` that contain a 1, shortest first.
pub fn limit_family(max_len: usize) -> Vec<Pattern> {
    (2..=max_len)
        .flat_map(Pattern::all_of_len)
        .filter(|v| v.contains_one())
        .collect()
}
