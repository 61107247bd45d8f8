//! Lengths of monochromatic arithmetic progressions: from a fixed start
//! (`A_v(n,d)`), and the supremum over all starts (`A_v(d)`) computed exactly
//! on windows of the block substitution.

use std::fmt;
use std::str::FromStr;

use crate::binwords::{bit_length, nu2, BinaryWord};
use crate::error::{Error, Result};
use crate::morphism::{BlockMorphism, LetterId, PairSite};
use crate::patseq::{Pattern, SequenceHandle};

/// Differences must stay below this bound.
pub const MAX_DIFFERENCE: u128 = 1 << 32;
/// Longest pattern accepted by the solvers.
pub const MAX_SOLVER_PATTERN_LEN: usize = 8;
/// Windows longer than this many letters are refused.
pub const MAX_WINDOW_LEN: usize = 1 << 31;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApQuery {
    pub sequence: SequenceHandle,
    pub start: u128,
    pub difference: u128,
}

impl ApQuery {
    pub fn new(sequence: SequenceHandle, start: u128, difference: u128) -> Self {
        ApQuery {
            sequence,
            start,
            difference,
        }
    }
}

fn check_difference(d: u128) -> Result<()> {
    if d == 0 {
        return Err(Error::Domain("difference must be at least 1".into()));
    }
    if d >= MAX_DIFFERENCE {
        return Err(Error::Capacity(format!("difference {d} is not below 2^32")));
    }
    Ok(())
}

fn check_pattern(v: &Pattern) -> Result<()> {
    if v.len() > MAX_SOLVER_PATTERN_LEN {
        return Err(Error::Capacity(format!(
            "pattern {v} is longer than {MAX_SOLVER_PATTERN_LEN} letters"
        )));
    }
    Ok(())
}

/// Proven upper bound on `A_v(d)`: `2^{ℓ(d)+|v|-ν_2(d)-1}` for `|v| ≥ 2`,
/// `2^{ℓ(d)} + 4` for single-letter patterns. The odd subsequence of the
/// Rudin–Shapiro coloring uses the bound for `11`.
pub fn search_cap(h: &SequenceHandle, d: u128) -> Result<u64> {
    pattern_cap(h.base_pattern(), d)
}

pub fn pattern_cap(v: &Pattern, d: u128) -> Result<u64> {
    check_difference(d)?;
    check_pattern(v)?;
    let ell = bit_length(d);
    if v.len() == 1 {
        // `A_t(d) ≤ 2^ℓ + 4`. Nothing comparable is known for `0`, so twice
        // that serves as a search limit which a solved value must stay below.
        let tm = (1u64 << ell) + 4;
        Ok(if v.contains_one() { tm } else { 2 * tm })
    } else {
        let exp = ell + v.len() as u32 - nu2(d)? - 1;
        Ok(1u64 << exp)
    }
}

/// `A_v(n,d)`: the least `l ≥ 1` with a color change at `n + l d`.
pub fn ap_from(q: &ApQuery) -> Result<u64> {
    let d = q.difference;
    let cap = search_cap(&q.sequence, d)?;
    let n = q.start;
    (cap as u128)
        .checked_mul(d)
        .and_then(|x| x.checked_add(n))
        .filter(|&x| x < 1 << 126)
        .ok_or_else(|| Error::Capacity(format!("start {n} too large for difference {d}")))?;
    let c0 = q.sequence.color(n);
    let mut idx = n;
    for l in 1..=cap {
        idx += d;
        if q.sequence.color(idx) != c0 {
            return Ok(l);
        }
    }
    Err(Error::Internal(format!(
        "progression from {n} with difference {d} in {} exceeds the proven bound {cap}",
        q.sequence
    )))
}

/// Longest monochromatic progression of difference `d` inside a word.
pub fn max_ap_in_word(w: &BinaryWord, d: usize) -> Result<usize> {
    if d == 0 {
        return Err(Error::Domain("difference must be at least 1".into()));
    }
    Ok(longest_run(w.letters(), d, usize::MAX).len)
}

/// A progression found inside a word: `len` terms starting at offset `start`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Run {
    pub len: usize,
    pub start: usize,
}

/// Longest run of equal letters along stride `d`. Stops as soon as a run
/// longer than `stop_above` is seen.
pub fn longest_run(w: &[u8], d: usize, stop_above: usize) -> Run {
    if w.is_empty() {
        return Run { len: 0, start: 0 };
    }
    let mut run = vec![0u32; d.min(w.len())];
    let mut best = 0u32;
    let mut best_end = 0usize;
    let mut k = 0usize;
    for i in 0..w.len() {
        let r = if i >= d && w[i] == w[i - d] { run[k] + 1 } else { 1 };
        run[k] = r;
        if r > best {
            best = r;
            best_end = i;
            if best as usize > stop_above {
                break;
            }
        }
        k += 1;
        if k == run.len() {
            k = 0;
        }
    }
    Run {
        len: best as usize,
        start: best_end - (best as usize - 1) * d,
    }
}

/// Odd part of `d`, for the sequences where `A(2d) = A(d)` is known.
pub fn reduce_even(h: &SequenceHandle, d: u128) -> Result<u128> {
    let supported = matches!(h, SequenceHandle::Pattern(v)
        if [Pattern::thue_morse(), Pattern::rudin_shapiro(), "0".parse().unwrap()].contains(v));
    if !supported {
        return Err(Error::Domain(format!(
            "the even-difference reduction is not established for {h}"
        )));
    }
    check_difference(d)?;
    Ok(d >> nu2(d)?)
}

/// Largest `A_v(n,d)` over `0 ≤ n < n_max`, by direct color evaluation.
pub fn oracle_scan(v: &Pattern, d: u128, n_max: u128) -> Result<u64> {
    let cap = pattern_cap(v, d)?;
    if n_max == 0 {
        return Ok(0);
    }
    let len = n_max + cap as u128 * d + 1;
    if len > MAX_WINDOW_LEN as u128 {
        return Err(Error::Capacity(format!("oracle range {len} too long")));
    }
    let h = SequenceHandle::pattern(v.clone());
    let colors = h.prefix_direct(len as usize);
    let colors = colors.letters();
    let d = d as usize;
    let mut best = 0u64;
    for n in 0..n_max as usize {
        let mut l = 1u64;
        let mut idx = n + d;
        while colors[idx] == colors[n] {
            l += 1;
            if l > cap {
                return Err(Error::Internal(format!(
                    "oracle: progression from {n} in {v} exceeds the bound {cap}"
                )));
            }
            idx += d;
        }
        best = best.max(l);
    }
    Ok(best)
}

/// Which part of the staged search produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    /// A fixed threshold from the plan.
    Threshold(u64),
    /// The threshold `d`, or `d + 5` for single-letter patterns.
    Linear(u64),
    /// Window sized for the proven bound.
    Final,
}

/// Thresholds tried before the final window. Must be positive and increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StagePlan {
    pub thresholds: Vec<u64>,
    pub linear: bool,
}

impl StagePlan {
    pub fn new(thresholds: Vec<u64>, linear: bool) -> Result<Self> {
        if thresholds.iter().any(|&f| f == 0) || thresholds.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(
                "stage thresholds must be positive and strictly increasing".into(),
            ));
        }
        Ok(StagePlan { thresholds, linear })
    }

    /// Only the final window.
    pub fn final_only() -> Self {
        StagePlan {
            thresholds: Vec::new(),
            linear: false,
        }
    }
}

impl Default for StagePlan {
    fn default() -> Self {
        StagePlan {
            thresholds: vec![20, 35],
            linear: true,
        }
    }
}

/// Comma-separated thresholds; a trailing `d` enables the linear stage.
/// `none` selects the final window only.
impl FromStr for StagePlan {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "none" {
            return Ok(StagePlan::final_only());
        }
        let mut thresholds = Vec::new();
        let mut linear = false;
        for (k, tok) in s.split(',').map(str::trim).enumerate() {
            if tok == "d" {
                if k + 1 != s.split(',').count() {
                    return Err(Error::Domain("the `d` stage must come last".into()));
                }
                linear = true;
            } else {
                let f = tok
                    .parse::<u64>()
                    .map_err(|_| Error::Domain(format!("bad stage threshold {tok:?}")))?;
                thresholds.push(f);
            }
        }
        StagePlan::new(thresholds, linear)
    }
}

impl fmt::Display for StagePlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.thresholds.iter().map(|t| t.to_string()).collect();
        if self.linear {
            parts.push("d".into());
        }
        if parts.is_empty() {
            write!(f, "none")
        } else {
            write!(f, "{}", parts.join(","))
        }
    }
}

/// Exact `A_v(d)` with a progression attaining it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GlobalValue {
    pub value: u64,
    /// First index of a monochromatic progression of length `value`.
    pub witness_start: u128,
    pub stage: Stage,
    pub window_exponent: u32,
}

/// Per-pattern state for computing `A_v(d)`: the block substitution, its
/// length-2 factors, and cached projected powers of each letter.
#[derive(Clone, Debug)]
pub struct GlobalSolver {
    pattern: Pattern,
    morphism: BlockMorphism,
    pairs: Vec<PairSite>,
    levels: Vec<Vec<Vec<u8>>>,
}

impl GlobalSolver {
    /// Solver running the substitution of `v`, with the placeholder letter
    /// for patterns without a 1.
    pub fn new(v: &Pattern) -> Result<Self> {
        check_pattern(v)?;
        let morphism = BlockMorphism::derive(v)?;
        let all = morphism.subword_pairs()?;
        let present: std::collections::BTreeSet<_> = all.iter().map(|s| s.pair).collect();
        let pairs = all
            .iter()
            .copied()
            .filter(|site| {
                if !v.contains_one() {
                    return true;
                }
                let (a, b) = site.pair;
                match (morphism.negation(a), morphism.negation(b)) {
                    (Some(na), Some(nb)) => !(present.contains(&(na, nb)) && (na, nb) < (a, b)),
                    _ => true,
                }
            })
            .collect();
        let base = 14 - (v.len() as u32 - 1);
        let mut levels: Vec<Vec<Vec<u8>>> = vec![(0..morphism.alphabet_len() as LetterId)
            .map(|a| morphism.projection(a).to_vec())
            .collect()];
        for s in 0..base as usize {
            let next = (0..morphism.alphabet_len() as LetterId)
                .map(|a| {
                    let [x, y] = morphism.image(a);
                    let mut w = levels[s][x as usize].clone();
                    w.extend_from_slice(&levels[s][y as usize]);
                    w
                })
                .collect();
            levels.push(next);
        }
        Ok(GlobalSolver {
            pattern: v.clone(),
            morphism,
            pairs,
            levels,
        })
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn morphism(&self) -> &BlockMorphism {
        &self.morphism
    }

    /// Length-2 factors scanned (one of each negation pair).
    pub fn scanned_pairs(&self) -> &[PairSite] {
        &self.pairs
    }

    fn base_level(&self) -> u32 {
        self.levels.len() as u32 - 1
    }

    /// Smallest `s` whose windows contain every factor of length `span + 1`.
    fn exponent_for_span(&self, span: u128) -> u32 {
        let shift = self.pattern.len() as u32 - 1;
        let mut s = 0;
        while (1u128 << (s + shift)) < span {
            s += 1;
        }
        s
    }

    fn final_exponent(&self, d: u128, cap: u64) -> Result<u32> {
        if self.pattern.len() >= 2 {
            Ok(2 * bit_length(d) - nu2(d)?)
        } else {
            Ok(self.exponent_for_span((cap as u128 - 1) * d))
        }
    }

    /// Projected `γ^s(GH)` into `buf`.
    fn fill_window(&self, pair: (LetterId, LetterId), s: u32, buf: &mut Vec<u8>) -> Result<()> {
        buf.clear();
        let base = self.base_level();
        if s <= base {
            buf.extend_from_slice(&self.levels[s as usize][pair.0 as usize]);
            buf.extend_from_slice(&self.levels[s as usize][pair.1 as usize]);
        } else {
            let letters = self.morphism.iterate(&[pair.0, pair.1], s - base)?;
            for a in letters {
                buf.extend_from_slice(&self.levels[base as usize][a as usize]);
            }
        }
        Ok(())
    }

    /// Best progression over all windows at exponent `s`; stops early once
    /// one longer than `stop_above` is seen.
    fn scan(&self, d: u128, s: u32, stop_above: u64) -> Result<(u64, u128)> {
        let window_len = (2u128 << s) * self.morphism.block_len() as u128;
        if window_len > MAX_WINDOW_LEN as u128 {
            return Err(Error::Capacity(format!(
                "window of {window_len} letters needed for difference {d}"
            )));
        }
        let mut buf = Vec::with_capacity(window_len as usize);
        let mut best = (0u64, 0u128);
        for site in &self.pairs {
            self.fill_window(site.pair, s, &mut buf)?;
            let run = longest_run(&buf, d as usize, stop_above.min(usize::MAX as u64) as usize);
            if run.len as u64 > best.0 {
                let origin = site
                    .position
                    .checked_mul(1u128 << s)
                    .and_then(|x| x.checked_mul(self.morphism.block_len() as u128))
                    .ok_or_else(|| Error::Capacity("witness index overflow".into()))?;
                best = (run.len as u64, origin + run.start as u128);
                if best.0 > stop_above {
                    break;
                }
            }
        }
        Ok(best)
    }

    /// `A_v(d)` by escalating windows sized for the plan's thresholds, then
    /// the proven bound.
    pub fn solve(&self, d: u128, plan: &StagePlan) -> Result<GlobalValue> {
        let cap = pattern_cap(&self.pattern, d)?;
        let mut stages: Vec<(u64, Stage)> =
            plan.thresholds.iter().map(|&f| (f, Stage::Threshold(f))).collect();
        if plan.linear {
            let f = if self.pattern.len() == 1 { d as u64 + 5 } else { d as u64 };
            stages.push((f, Stage::Linear(f)));
        }
        let mut last = 0;
        for (f, stage) in stages {
            if f >= cap {
                break;
            }
            if f <= last {
                continue;
            }
            last = f;
            let s = self.exponent_for_span(f as u128 * d);
            let (value, start) = self.scan(d, s, f)?;
            if value <= f {
                return self.finish(d, value, start, stage, s);
            }
        }
        let s = self.final_exponent(d, cap)?;
        let (value, start) = self.scan(d, s, u64::MAX)?;
        if value > cap {
            return Err(Error::Internal(format!(
                "A_{}({d}) = {value} exceeds the proven bound {cap}",
                self.pattern
            )));
        }
        if value == cap && self.pattern.len() == 1 && !self.pattern.contains_one() {
            return Err(Error::Capacity(format!(
                "A_{}({d}) reaches the search limit {cap}",
                self.pattern
            )));
        }
        self.finish(d, value, start, Stage::Final, s)
    }

    fn finish(&self, d: u128, value: u64, start: u128, stage: Stage, s: u32) -> Result<GlobalValue> {
        let h = SequenceHandle::pattern(self.pattern.clone());
        let c0 = h.color(start);
        if (1..value as u128).any(|i| h.color(start + i * d) != c0) {
            return Err(Error::Internal(format!(
                "witness at {start} for A_{}({d}) is not monochromatic",
                self.pattern
            )));
        }
        if self.pattern.len() == 1 {
            if let Some(expected) = thue_morse_mersenne(d) {
                if expected != value {
                    return Err(Error::Internal(format!(
                        "A_t({d}) = {value} disagrees with the closed form {expected}"
                    )));
                }
            }
        }
        Ok(GlobalValue {
            value,
            witness_start: start,
            stage,
            window_exponent: s,
        })
    }
}

/// `A_t(2^k - 1)`: `2^k + 4` for even `k`, `2^k` for odd `k`.
pub fn thue_morse_mersenne(d: u128) -> Option<u64> {
    let k = bit_length(d + 1) - 1;
    if d + 1 != 1 << k {
        return None;
    }
    Some(if k % 2 == 0 { (1u64 << k) + 4 } else { 1u64 << k })
}

/// Exact `A_v(d)` using only the final window.
pub fn ap_global(v: &Pattern, d: u128) -> Result<u64> {
    check_difference(d)?;
    Ok(GlobalSolver::new(v)?.solve(d, &StagePlan::final_only())?.value)
}

/// Exact `A_v(d)` with the default thresholds 20, 35, d.
pub fn ap_global_staged(v: &Pattern, d: u128) -> Result<u64> {
    check_difference(d)?;
    Ok(GlobalSolver::new(v)?.solve(d, &StagePlan::default())?.value)
}
