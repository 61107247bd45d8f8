//! Search for admissible pairs `(i, j)` over prefix/suffix classes `D(p, s)`
//! of differences, proving `A_r(0,d) < d/2` class by class.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::apsolver::{ap_from, ApQuery};
use crate::binwords::{add_words, bit_length, BinaryWord};
use crate::error::{Error, Result};
use crate::patseq::{Pattern, SequenceHandle};

/// Longest suffix the certifier handles with 128-bit arithmetic.
pub const MAX_SUFFIX_LEN: usize = 100;

/// The class `D(p, s)`: differences whose expansion starts with `p` and ends with `s`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassKey {
    p: BinaryWord,
    s: BinaryWord,
}

impl ClassKey {
    pub fn new(p: BinaryWord, s: BinaryWord) -> Result<Self> {
        if p.letters().first() != Some(&1) {
            return Err(Error::InvalidWord(format!("prefix {p:?} must start with 1")));
        }
        if s.letters().last() != Some(&1) {
            return Err(Error::InvalidWord(format!("suffix {s:?} must end with 1")));
        }
        if s.len() > MAX_SUFFIX_LEN || p.len() > MAX_SUFFIX_LEN {
            return Err(Error::Capacity(format!(
                "prefix and suffix are limited to {MAX_SUFFIX_LEN} letters"
            )));
        }
        Ok(ClassKey { p, s })
    }

    pub fn parse(p: &str, s: &str) -> Result<Self> {
        ClassKey::new(p.parse()?, s.parse()?)
    }

    pub fn prefix(&self) -> &BinaryWord {
        &self.p
    }

    pub fn suffix(&self) -> &BinaryWord {
        &self.s
    }

    /// Whether `d ∈ D(p, s)`; prefix and suffix may overlap.
    pub fn contains(&self, d: u128) -> bool {
        let w = BinaryWord::from_value(d);
        w.starts_with(&self.p) && w.ends_with(&self.s)
    }
}

impl fmt::Display for ClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} s={}", self.p, self.s)
    }
}

impl fmt::Debug for ClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdmissibleCertificate {
    pub key: ClassKey,
    pub i: usize,
    pub j: u128,
    pub sigma: BinaryWord,
    pub gamma: BinaryWord,
}

/// Why a candidate `(i, j)` is not a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rejection {
    EvenMultiplier,
    IndexTooSmall,
    IndexNotBelowPrefixLen,
    SuffixShorterThanPrefix,
    /// The bound `2^{ℓ-i} j + 1 < d/2` is not guaranteed.
    ConditionA,
    /// The count of `11` across the three lines is even.
    ConditionB,
    /// A carry reaches the leftmost digit of `σ`.
    ConditionC,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            Rejection::EvenMultiplier => "j must be odd",
            Rejection::IndexTooSmall => "i must be at least 2",
            Rejection::IndexNotBelowPrefixLen => "i must be below |p|",
            Rejection::SuffixShorterThanPrefix => "|s| must be at least |p|",
            Rejection::ConditionA => "condition (a) fails",
            Rejection::ConditionB => "condition (b) fails",
            Rejection::ConditionC => "condition (c) fails",
        };
        f.write_str(msg)
    }
}

/// `σ`: the last `|s|` digits of `j [s]_2`, zero padded.
pub fn sigma_word(s: &BinaryWord, j: u128) -> BinaryWord {
    let width = s.len();
    let mask = if width >= 128 { !0 } else { (1u128 << width) - 1 };
    BinaryWord::from_value_padded(j.wrapping_mul(s.value()) & mask, width)
}

/// Condition (a), in integers: `ℓ(j) < i-1`, or `ℓ(j) = i-1` and `j 2^{|p|} < [p]_2 2^{ℓ(j)}`.
pub fn condition_a(p: &BinaryWord, i: usize, j: u128) -> bool {
    let lj = bit_length(j) as usize;
    if lj + 1 < i {
        return true;
    }
    lj + 1 == i && (j << p.len()) < (p.value() << lj)
}

struct Sum {
    gamma: BinaryWord,
    carry_into_sigma: bool,
}

// p + σ 0^{|p|-i}, with γ padded to the width of the shifted addend.
fn shifted_sum(p: &BinaryWord, sigma: &BinaryWord, i: usize) -> Sum {
    let shifted = sigma.concat(&BinaryWord::repeat(0, p.len() - i));
    let (sum, carries) = add_words(p, &shifted);
    let width = shifted.len().max(sum.len());
    Sum {
        gamma: BinaryWord::from_value_padded(sum.value(), width),
        carry_into_sigma: carries.carry_into(shifted.len() - 1),
    }
}

fn parity_b(p: &BinaryWord, sigma: &BinaryWord, gamma: &BinaryWord) -> bool {
    (p.count_11() + sigma.count_11() + gamma.count_11()) % 2 == 1
}

/// Tests the three sufficient conditions for `(i, j)` to be admissible for `key`.
pub fn check_admissible(
    key: &ClassKey,
    i: usize,
    j: u128,
) -> std::result::Result<AdmissibleCertificate, Rejection> {
    let (p, s) = (&key.p, &key.s);
    if j % 2 == 0 {
        return Err(Rejection::EvenMultiplier);
    }
    if i < 2 {
        return Err(Rejection::IndexTooSmall);
    }
    if i >= p.len() {
        return Err(Rejection::IndexNotBelowPrefixLen);
    }
    if s.len() < p.len() {
        return Err(Rejection::SuffixShorterThanPrefix);
    }
    if !condition_a(p, i, j) {
        return Err(Rejection::ConditionA);
    }
    let sigma = sigma_word(s, j);
    let sum = shifted_sum(p, &sigma, i);
    if !parity_b(p, &sigma, &sum.gamma) {
        return Err(Rejection::ConditionB);
    }
    if sum.carry_into_sigma {
        return Err(Rejection::ConditionC);
    }
    Ok(AdmissibleCertificate {
        key: key.clone(),
        i,
        j,
        sigma,
        gamma: sum.gamma,
    })
}

/// First admissible pair in the order `i` ascending, then odd `j` ascending.
pub fn find_admissible(key: &ClassKey, max_s2j: Option<u32>) -> Option<AdmissibleCertificate> {
    if key.s.len() < key.p.len() {
        return None;
    }
    for i in 2..key.p.len() {
        let j_limit = 1u128 << (i - 1);
        for j in (1..j_limit).step_by(2) {
            if max_s2j.is_some_and(|m| j.count_ones() > m) || !condition_a(&key.p, i, j) {
                continue;
            }
            if let Ok(cert) = check_admissible(key, i, j) {
                return Some(cert);
            }
        }
    }
    None
}

/// How failing classes are split in Step 3.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BranchVariant {
    /// Always `(p0,0s), (p0,1s), (p1,0s), (p1,1s)`.
    Quad,
    /// `(p0,s), (p1,s)` while `|p| < |s|`, otherwise as `Quad`.
    #[default]
    PrefixOnlyWhenShorter,
}

impl std::str::FromStr for BranchVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quad" => Ok(BranchVariant::Quad),
            "prefix-only" | "prefix_only_when_shorter" => Ok(BranchVariant::PrefixOnlyWhenShorter),
            other => Err(Error::Domain(format!("unknown branch variant {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub input: ClassKey,
    pub skip: BTreeSet<ClassKey>,
    pub max_iter: usize,
    pub max_s2j: Option<u32>,
    pub branch_variant: BranchVariant,
}

impl RunConfig {
    /// Input `(1, 1)` with the default skip set and at most 12 iterations.
    pub fn main_run() -> Self {
        RunConfig {
            input: ClassKey::parse("1", "1").unwrap(),
            skip: default_skip_set(),
            max_iter: 12,
            max_s2j: None,
            branch_variant: BranchVariant::default(),
        }
    }

    /// Input `(1, a 0 1^k)` restricted to `j = 1` and five iterations.
    pub fn suffix_family(a: u8, k: usize) -> Self {
        let s = format!("{a}0{}", "1".repeat(k));
        RunConfig {
            input: ClassKey::parse("1", &s).unwrap(),
            skip: BTreeSet::new(),
            max_iter: 5,
            max_s2j: Some(1),
            branch_variant: BranchVariant::default(),
        }
    }
}

/// `(100, 001)`, `(1u, 11111)` for all `u` of length 4, and `(100000, 111101)`.
pub fn default_skip_set() -> BTreeSet<ClassKey> {
    let mut skip = BTreeSet::new();
    skip.insert(ClassKey::parse("100", "001").unwrap());
    for u in 0..16u128 {
        let p = format!("1{}", BinaryWord::from_value_padded(u, 4));
        skip.insert(ClassKey::parse(&p, "11111").unwrap());
    }
    skip.insert(ClassKey::parse("100000", "111101").unwrap());
    skip
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunResult {
    pub certificates: Vec<AdmissibleCertificate>,
    pub exceptions: BTreeSet<u128>,
    pub unresolved: BTreeSet<ClassKey>,
    pub skipped: BTreeSet<ClassKey>,
    pub iterations: usize,
    /// Every `d = [s]_2` examined by Step 1, with `A_r(0,d)`.
    pub step1_values: BTreeMap<u128, u64>,
    pub step1_evaluations: usize,
}

/// Runs the iterative search until the frontier is empty or `max_iter`
/// iterations have been performed.
pub fn run(config: &RunConfig) -> Result<RunResult> {
    let r = SequenceHandle::rudin_shapiro();
    let mut out = RunResult::default();
    let mut frontier: BTreeSet<ClassKey> = BTreeSet::from([config.input.clone()]);
    if config.max_iter == 0 {
        out.unresolved = frontier;
        return Ok(out);
    }
    for m in 1..=config.max_iter {
        out.iterations = m;
        let keys: Vec<ClassKey> = frontier
            .into_iter()
            .filter(|k| {
                if config.skip.contains(k) {
                    out.skipped.insert(k.clone());
                    false
                } else {
                    true
                }
            })
            .collect();

        for key in &keys {
            if key.s.starts_with(&key.p) {
                let d = key.s.value();
                if !out.step1_values.contains_key(&d) {
                    let a = ap_from(&ApQuery::new(r.clone(), 0, d))?;
                    out.step1_evaluations += 1;
                    out.step1_values.insert(d, a);
                }
                if 2 * out.step1_values[&d] as u128 >= d {
                    out.exceptions.insert(d);
                }
            }
        }

        let found: Vec<Option<AdmissibleCertificate>> = keys
            .par_iter()
            .map(|k| find_admissible(k, config.max_s2j))
            .collect();

        let mut next = BTreeSet::new();
        let mut failed = BTreeSet::new();
        for (key, cert) in keys.into_iter().zip(found) {
            match cert {
                Some(c) => out.certificates.push(c),
                None => {
                    if m == config.max_iter {
                        failed.insert(key);
                    } else {
                        branch(&key, config.branch_variant, &mut next)?;
                    }
                }
            }
        }
        out.unresolved = failed;
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    out.certificates.sort();
    Ok(out)
}

fn branch(key: &ClassKey, variant: BranchVariant, next: &mut BTreeSet<ClassKey>) -> Result<()> {
    let ext = |w: &BinaryWord, b: u8| {
        let mut w = w.clone();
        w.push(b);
        w
    };
    let pre = |b: u8, w: &BinaryWord| BinaryWord::from_letters_unchecked(vec![b]).concat(w);
    if variant == BranchVariant::PrefixOnlyWhenShorter && key.p.len() < key.s.len() {
        for a in 0..2 {
            next.insert(ClassKey::new(ext(&key.p, a), key.s.clone())?);
        }
    } else {
        for a in 0..2 {
            for b in 0..2 {
                next.insert(ClassKey::new(ext(&key.p, a), pre(b, &key.s))?);
            }
        }
    }
    Ok(())
}

/// Why a certificate failed replay.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReplayFailure {
    InvalidParameters(Rejection),
    ConditionA,
    ConditionB,
    ConditionC,
    SigmaMismatch,
    GammaMismatch,
    /// The three colors at a sampled difference are not as claimed.
    SpotCheck { d: u128 },
}

impl fmt::Display for ReplayFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReplayFailure::InvalidParameters(r) => write!(f, "invalid parameters: {r}"),
            ReplayFailure::ConditionA => write!(f, "condition (a) fails"),
            ReplayFailure::ConditionB => write!(f, "condition (b) fails on the stored words"),
            ReplayFailure::ConditionC => write!(f, "condition (c) fails"),
            ReplayFailure::SigmaMismatch => write!(f, "stored sigma differs from j*[s] mod 2^|s|"),
            ReplayFailure::GammaMismatch => write!(f, "stored gamma differs from the addition"),
            ReplayFailure::SpotCheck { d } => write!(f, "spot check fails at d={d}"),
        }
    }
}

/// Number of sampled differences checked numerically by `replay`.
pub const REPLAY_SAMPLES: usize = 50;

/// Re-verifies a certificate from its fields and by sampling differences in its class.
pub fn replay(cert: &AdmissibleCertificate) -> std::result::Result<(), ReplayFailure> {
    let (p, s, i, j) = (&cert.key.p, &cert.key.s, cert.i, cert.j);
    let structural = if j % 2 == 0 {
        Some(Rejection::EvenMultiplier)
    } else if i < 2 {
        Some(Rejection::IndexTooSmall)
    } else if i >= p.len() {
        Some(Rejection::IndexNotBelowPrefixLen)
    } else if s.len() < p.len() {
        Some(Rejection::SuffixShorterThanPrefix)
    } else {
        None
    };
    if let Some(r) = structural {
        return Err(ReplayFailure::InvalidParameters(r));
    }
    if !condition_a(p, i, j) {
        return Err(ReplayFailure::ConditionA);
    }
    if !parity_b(p, &cert.sigma, &cert.gamma) {
        return Err(ReplayFailure::ConditionB);
    }
    let sigma = sigma_word(s, j);
    let sum = shifted_sum(p, &sigma, i);
    if sum.carry_into_sigma {
        return Err(ReplayFailure::ConditionC);
    }
    if sigma != cert.sigma {
        return Err(ReplayFailure::SigmaMismatch);
    }
    if sum.gamma != cert.gamma {
        return Err(ReplayFailure::GammaMismatch);
    }
    for d in sample_class(&cert.key, REPLAY_SAMPLES, seed_for(&cert.key)) {
        spot_check(cert, d)?;
    }
    Ok(())
}

/// Checks one difference: the bound on `2^{ℓ-i} j + 1` and the parity of
/// `r_d + r_{jd} + r_{(2^{ℓ-i}j+1)d}`, hence one of the three is 1.
pub fn spot_check(cert: &AdmissibleCertificate, d: u128) -> std::result::Result<(), ReplayFailure> {
    let r = Pattern::rudin_shapiro();
    let ell = bit_length(d) as usize;
    let fail = ReplayFailure::SpotCheck { d };
    if !cert.key.contains(d) || ell < cert.i {
        return Err(fail);
    }
    let k = (cert.j << (ell - cert.i)) + 1;
    let colors = [r.parity(d), r.parity(cert.j * d), r.parity(k * d)];
    let parity_ok = colors.iter().map(|&c| c as u32).sum::<u32>() % 2 == 1;
    if 2 * k >= d || !parity_ok || !colors.contains(&1) {
        return Err(fail);
    }
    Ok(())
}

fn seed_for(key: &ClassKey) -> u64 {
    // deterministic per class
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for b in key.p.letters().iter().chain([2u8].iter()).chain(key.s.letters()) {
        h = (h ^ *b as u64).wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Random members of `D(p, s)` of the form `p u s`, at most 24 digits when possible.
pub fn sample_class(key: &ClassKey, count: usize, seed: u64) -> Vec<u128> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let min_len = key.p.len() + key.s.len();
    let max_len = min_len.max(24);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(min_len..=max_len);
            let mid = len - min_len;
            let u: u128 = if mid == 0 { 0 } else { rng.gen::<u128>() & ((1u128 << mid) - 1) };
            let d = ((key.p.value() << mid | u) << key.s.len()) | key.s.value();
            d
        })
        .collect()
}

/// A difference the coverage check could not account for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverageGap {
    /// In no certified class, not exceptional, not skipped, not settled by Step 1.
    Unmatched { d: u128 },
    /// Accounted for, but `A_r(0,d) ≥ d/2`.
    NotBelowHalf { d: u128, value: u64 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoverageReport {
    pub checked: usize,
    pub exceptional: usize,
    pub skipped: usize,
    pub gaps: Vec<CoverageGap>,
}

impl CoverageReport {
    pub fn passed(&self) -> bool {
        self.gaps.is_empty()
    }
}

/// Checks every odd `d ≤ d_max`: either exceptional, in a skip class, or
/// accounted for by a certificate or a Step-1 evaluation, with `A_r(0,d) < d/2`.
pub fn coverage_check(
    result: &RunResult,
    skip: &BTreeSet<ClassKey>,
    d_max: u128,
) -> Result<CoverageReport> {
    let r = SequenceHandle::rudin_shapiro();
    let mut report = CoverageReport::default();
    for d in (1..=d_max).step_by(2) {
        if result.exceptions.contains(&d) {
            report.exceptional += 1;
            continue;
        }
        if skip.iter().any(|k| k.contains(d)) {
            report.skipped += 1;
            continue;
        }
        report.checked += 1;
        let matched = result.step1_values.contains_key(&d)
            || result.certificates.iter().any(|c| c.key.contains(d));
        if !matched {
            report.gaps.push(CoverageGap::Unmatched { d });
            continue;
        }
        let value = ap_from(&ApQuery::new(r.clone(), 0, d))?;
        if 2 * value as u128 >= d {
            report.gaps.push(CoverageGap::NotBelowHalf { d, value });
        }
    }
    Ok(report)
}

/// Writes the certificate file: one record per line, then the exceptional
/// set and the unresolved classes.
pub fn format_certificates(result: &RunResult) -> String {
    let mut out = String::new();
    for c in &result.certificates {
        out.push_str(&format!(
            "p={} s={} i={} j={} sigma={} gamma={}\n",
            c.key.p, c.key.s, c.i, c.j, c.sigma, c.gamma
        ));
    }
    out.push_str("[exceptions]\n");
    for d in &result.exceptions {
        out.push_str(&format!("{d}\n"));
    }
    out.push_str("[unresolved]\n");
    for k in &result.unresolved {
        out.push_str(&format!("{k}\n"));
    }
    out
}

/// Contents of a certificate file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CertificateFile {
    pub certificates: Vec<AdmissibleCertificate>,
    pub exceptions: BTreeSet<u128>,
    pub unresolved: BTreeSet<ClassKey>,
}

fn fields(line: &str, lineno: usize) -> Result<BTreeMap<&str, &str>> {
    line.split_whitespace()
        .map(|tok| {
            tok.split_once('=').ok_or_else(|| Error::Parse {
                line: lineno,
                msg: format!("expected key=value, got {tok:?}"),
            })
        })
        .collect()
}

fn field<'a>(map: &BTreeMap<&str, &'a str>, name: &str, lineno: usize) -> Result<&'a str> {
    map.get(name).copied().ok_or_else(|| Error::Parse {
        line: lineno,
        msg: format!("missing field {name}"),
    })
}

fn parse_word(text: &str, lineno: usize) -> Result<BinaryWord> {
    text.parse().map_err(|_| Error::Parse {
        line: lineno,
        msg: format!("{text:?} is not a binary word"),
    })
}

fn parse_key(map: &BTreeMap<&str, &str>, lineno: usize) -> Result<ClassKey> {
    let p = parse_word(field(map, "p", lineno)?, lineno)?;
    let s = parse_word(field(map, "s", lineno)?, lineno)?;
    ClassKey::new(p, s).map_err(|e| Error::Parse {
        line: lineno,
        msg: e.to_string(),
    })
}

pub fn parse_certificates(text: &str) -> Result<CertificateFile> {
    #[derive(PartialEq)]
    enum Section {
        Records,
        Exceptions,
        Unresolved,
    }
    let mut section = Section::Records;
    let mut file = CertificateFile::default();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        match line {
            "[exceptions]" => section = Section::Exceptions,
            "[unresolved]" => section = Section::Unresolved,
            _ => match section {
                Section::Records => {
                    let map = fields(line, lineno)?;
                    let num = |name: &str| -> Result<u128> {
                        field(&map, name, lineno)?.parse().map_err(|_| Error::Parse {
                            line: lineno,
                            msg: format!("field {name} is not an integer"),
                        })
                    };
                    file.certificates.push(AdmissibleCertificate {
                        key: parse_key(&map, lineno)?,
                        i: num("i")? as usize,
                        j: num("j")?,
                        sigma: parse_word(field(&map, "sigma", lineno)?, lineno)?,
                        gamma: parse_word(field(&map, "gamma", lineno)?, lineno)?,
                    });
                }
                Section::Exceptions => {
                    file.exceptions.insert(line.parse().map_err(|_| Error::Parse {
                        line: lineno,
                        msg: format!("{line:?} is not an integer"),
                    })?);
                }
                Section::Unresolved => {
                    file.unresolved.insert(parse_key(&fields(line, lineno)?, lineno)?);
                }
            },
        }
    }
    Ok(file)
}

/// Skip file: one `p=<word> s=<word>` per line; `#` starts a comment.
pub fn parse_skip_set(text: &str) -> Result<BTreeSet<ClassKey>> {
    let mut skip = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        skip.insert(parse_key(&fields(line, idx + 1)?, idx + 1)?);
    }
    Ok(skip)
}

pub fn read_skip_file(path: &Path) -> Result<BTreeSet<ClassKey>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_skip_set(&text)
}

pub fn write_certificate_file(path: &Path, result: &RunResult) -> Result<()> {
    std::fs::write(path, format_certificates(result)).map_err(|e| Error::io(path, e))
}

pub fn read_certificate_file(path: &Path) -> Result<CertificateFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_certificates(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(p: &str, s: &str) -> ClassKey {
        ClassKey::parse(p, s).unwrap()
    }

    #[test]
    fn worked_example_is_admissible() {
        let cert = check_admissible(&key("11011", "11101"), 4, 5).unwrap();
        assert_eq!(cert.sigma.to_string(), "10001");
        assert_eq!(cert.gamma.to_string(), "111101");
        let total = cert.key.prefix().count_11() + cert.sigma.count_11() + cert.gamma.count_11();
        assert_eq!(total, 5);
        assert_eq!(replay(&cert), Ok(()));
        // the overlapping member 110111101
        assert_eq!(spot_check(&cert, 0b110111101), Ok(()));
    }

    #[test]
    fn rejections() {
        let k = key("11011", "11101");
        assert_eq!(check_admissible(&k, 4, 9), Err(Rejection::ConditionA));
        assert_eq!(check_admissible(&k, 4, 4), Err(Rejection::EvenMultiplier));
        assert_eq!(check_admissible(&k, 1, 1), Err(Rejection::IndexTooSmall));
        assert_eq!(check_admissible(&k, 5, 1), Err(Rejection::IndexNotBelowPrefixLen));
        assert_eq!(
            check_admissible(&key("11011", "101"), 2, 1),
            Err(Rejection::SuffixShorterThanPrefix)
        );
        assert!(ClassKey::parse("01", "1").is_err());
        assert!(ClassKey::parse("1", "10").is_err());
    }

    #[test]
    fn condition_a_matches_rational_comparison() {
        for plen in 3..9usize {
            for pv in (1u128 << (plen - 1))..(1u128 << plen) {
                let p = BinaryWord::from_value(pv);
                for i in 2..plen {
                    for j in (1..(1u128 << i)).step_by(2) {
                        let lj = bit_length(j) as usize;
                        // j / 2^{lj} < p / 2^{|p|} with f64, exact at these sizes
                        let expected = lj + 1 < i
                            || (lj + 1 == i && (j as f64) / 2f64.powi(lj as i32) < (pv as f64) / 2f64.powi(plen as i32));
                        assert_eq!(condition_a(&p, i, j), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn tampered_gamma_fails_b() {
        let mut cert = check_admissible(&key("11011", "11101"), 4, 5).unwrap();
        cert.gamma = "100001".parse().unwrap();
        assert_eq!(replay(&cert), Err(ReplayFailure::ConditionB));
        let mut cert = check_admissible(&key("11011", "11101"), 4, 5).unwrap();
        cert.sigma = "10011".parse().unwrap();
        assert_eq!(replay(&cert), Err(ReplayFailure::ConditionB));
    }

    #[test]
    fn zero_iterations() {
        let mut cfg = RunConfig::main_run();
        cfg.max_iter = 0;
        let res = run(&cfg).unwrap();
        assert_eq!(res.unresolved, BTreeSet::from([key("1", "1")]));
        assert!(res.certificates.is_empty() && res.exceptions.is_empty());
    }

    #[test]
    fn samples_lie_in_class() {
        let k = key("1001", "0111");
        for d in sample_class(&k, 100, 7) {
            assert!(k.contains(d));
            assert!(bit_length(d) <= 24);
        }
    }

    #[test]
    fn default_skip_set_size() {
        let skip = default_skip_set();
        assert_eq!(skip.len(), 18);
        assert!(skip.contains(&key("10110", "11111")));
    }

    #[test]
    fn certificate_file_round_trip() {
        let cert = check_admissible(&key("11011", "11101"), 4, 5).unwrap();
        let result = RunResult {
            certificates: vec![cert],
            exceptions: BTreeSet::from([1, 39]),
            unresolved: BTreeSet::from([key("100", "001")]),
            ..Default::default()
        };
        let text = format_certificates(&result);
        assert_eq!(
            text,
            "p=11011 s=11101 i=4 j=5 sigma=10001 gamma=111101\n[exceptions]\n1\n39\n[unresolved]\np=100 s=001\n"
        );
        let parsed = parse_certificates(&text).unwrap();
        assert_eq!(parsed.certificates, result.certificates);
        assert_eq!(parsed.exceptions, result.exceptions);
        assert_eq!(parsed.unresolved, result.unresolved);
        assert!(matches!(parse_certificates("p=11 s=1 i=x\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn skip_file_parsing() {
        let skip = parse_skip_set("# comment\np=100 s=001\n\np=100000 s=111101 # trailing\n").unwrap();
        assert_eq!(skip.len(), 2);
        assert!(parse_skip_set("p=100\n").is_err());
    }

    #[test]
    fn branch_variants() {
        let mut next = BTreeSet::new();
        branch(&key("1", "011"), BranchVariant::PrefixOnlyWhenShorter, &mut next).unwrap();
        assert_eq!(next, BTreeSet::from([key("10", "011"), key("11", "011")]));
        next.clear();
        branch(&key("1", "011"), BranchVariant::Quad, &mut next).unwrap();
        assert_eq!(next.len(), 4);
        assert!(next.contains(&key("10", "1011")));
    }
}
