//! Block alphabets and 2-uniform substitutions whose fixed points encode the
//! pattern colorings, plus the Rudin–Shapiro substitutions `ρ` and `σ`.

use std::collections::{BTreeMap, HashMap};

use crate::binwords::BinaryWord;
use crate::error::{Error, Result};
use crate::patseq::{aligned_block_bits, Pattern};

pub type LetterId = u16;

/// Longest pattern whose blocks (2^{|v|-1} letters) fit the packed representation.
pub const MAX_DERIVE_LEN: usize = 8;

/// One letter of a block alphabet. `block` is `None` for the placeholder `X`
/// used by the all-zeros patterns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockLetter {
    pub id: LetterId,
    pub block: Option<BinaryWord>,
}

/// A length-2 factor of the fixed point together with a letter position
/// where it occurs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairSite {
    pub pair: (LetterId, LetterId),
    pub position: u128,
}

#[derive(Clone, Debug)]
pub struct BlockMorphism {
    blocks: Vec<Option<BinaryWord>>,
    projected: Vec<Vec<u8>>,
    images: Vec<[LetterId; 2]>,
    negation: Vec<Option<LetterId>>,
    start: LetterId,
    block_len: usize,
}

impl BlockMorphism {
    /// Builds the block substitution for `v` by scanning `G_v(n)` for
    /// `n < 2^{3|v|}` and reading off `G_v(n) ↦ G_v(2n) G_v(2n+1)`.
    pub fn derive(v: &Pattern) -> Result<Self> {
        if v.len() > MAX_DERIVE_LEN {
            return Err(Error::Capacity(format!(
                "block alphabets are supported for |v| <= {MAX_DERIVE_LEN}"
            )));
        }
        let b = v.block_len();
        let scan = 1usize << (3 * v.len());
        let with_x = v.is_all_zeros();

        // Long patterns: reuse the block congruence instead of 2^{|v|-1}
        // counter evaluations per block.
        let base: Option<Vec<u128>> = (v.len() >= 7 && v.contains_one())
            .then(|| (0..b as u128).map(|l| aligned_block_bits(v, l)).collect());
        let full = if b == 128 { !0u128 } else { (1u128 << b) - 1 };
        let block_of = |n: usize| -> u128 {
            match &base {
                Some(base) => {
                    let l = n % b;
                    let flip = v.parity(n as u128) ^ v.parity(l as u128);
                    base[l] ^ if flip == 1 { full } else { 0 }
                }
                None => aligned_block_bits(v, n as u128),
            }
        };

        let mut ids: HashMap<u128, LetterId> = HashMap::new();
        let mut raw: Vec<Option<u128>> = Vec::new();
        let mut letter_at: Vec<LetterId> = Vec::with_capacity(scan);
        for n in 0..scan {
            if with_x && n == 0 {
                raw.push(None);
                letter_at.push(0);
                continue;
            }
            let bits = block_of(n);
            let next = raw.len() as LetterId;
            let id = *ids.entry(bits).or_insert_with(|| {
                raw.push(Some(bits));
                next
            });
            letter_at.push(id);
        }

        let lookup = |n: usize| -> Result<LetterId> {
            if n < scan {
                return Ok(letter_at[n]);
            }
            ids.get(&block_of(n)).copied().ok_or_else(|| {
                Error::Internal(format!("pattern {v}: new block letter at index {n} beyond the scan"))
            })
        };
        let mut images: Vec<Option<[LetterId; 2]>> = vec![None; raw.len()];
        for n in 0..scan {
            let a = letter_at[n];
            let img = [lookup(2 * n)?, lookup(2 * n + 1)?];
            match images[a as usize] {
                None => images[a as usize] = Some(img),
                Some(prev) if prev != img => {
                    return Err(Error::Internal(format!(
                        "pattern {v}: block at index {n} has two different images"
                    )))
                }
                Some(_) => {}
            }
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(id, img)| {
                img.ok_or_else(|| Error::Internal(format!("pattern {v}: letter {id} has no image")))
            })
            .collect::<Result<Vec<_>>>()?;

        let g0 = BinaryWord::from_letters_unchecked(unpack(block_of(0), b));
        let blocks: Vec<Option<BinaryWord>> = raw
            .iter()
            .map(|r| r.map(|bits| BinaryWord::from_letters_unchecked(unpack(bits, b))))
            .collect();
        let projected = blocks
            .iter()
            .map(|blk| blk.as_ref().unwrap_or(&g0).letters().to_vec())
            .collect();
        let negation = raw
            .iter()
            .map(|r| r.and_then(|bits| ids.get(&(bits ^ full)).copied()))
            .collect();
        Ok(BlockMorphism {
            blocks,
            projected,
            images,
            negation,
            start: 0,
            block_len: b,
        })
    }

    /// The Rudin–Shapiro substitution on 2-letter blocks, fixed point from `00`.
    pub fn rho() -> Self {
        Self::from_table(&["00", "01", "10", "11"], &[[0, 1], [0, 2], [3, 1], [3, 2]])
    }

    /// The substitution generating `s_n = r_{2n+1}` from `01`.
    /// Letters in order of first appearance: 01, 00, 11, 10.
    pub fn sigma() -> Self {
        Self::from_table(&["01", "00", "11", "10"], &[[0, 1], [0, 2], [3, 1], [3, 2]])
    }

    // Letter 0 is the start letter.
    fn from_table(blocks: &[&str], images: &[[LetterId; 2]]) -> Self {
        let blocks: Vec<BinaryWord> = blocks.iter().map(|s| s.parse().unwrap()).collect();
        let negation = blocks
            .iter()
            .map(|b| {
                let neg = b.negate();
                blocks.iter().position(|c| *c == neg).map(|i| i as LetterId)
            })
            .collect();
        BlockMorphism {
            projected: blocks.iter().map(|b| b.letters().to_vec()).collect(),
            block_len: blocks[0].len(),
            blocks: blocks.into_iter().map(Some).collect(),
            images: images.to_vec(),
            negation,
            start: 0,
        }
    }

    pub fn alphabet_len(&self) -> usize {
        self.blocks.len()
    }

    pub fn alphabet(&self) -> Vec<BlockLetter> {
        self.blocks
            .iter()
            .enumerate()
            .map(|(id, block)| BlockLetter {
                id: id as LetterId,
                block: block.clone(),
            })
            .collect()
    }

    pub fn start(&self) -> LetterId {
        self.start
    }

    pub fn block_len(&self) -> usize {
        self.block_len
    }

    /// `None` for the placeholder letter.
    pub fn block(&self, id: LetterId) -> Option<&BinaryWord> {
        self.blocks.get(id as usize).and_then(|b| b.as_ref())
    }

    pub fn is_placeholder(&self, id: LetterId) -> bool {
        matches!(self.blocks.get(id as usize), Some(None))
    }

    /// Projected block of a letter (`X ↦ G_v(0)`).
    pub fn projection(&self, id: LetterId) -> &[u8] {
        &self.projected[id as usize]
    }

    pub fn image(&self, id: LetterId) -> [LetterId; 2] {
        self.images[id as usize]
    }

    /// Letter whose block is the negation of `id`'s block, if present.
    pub fn negation(&self, id: LetterId) -> Option<LetterId> {
        self.negation[id as usize]
    }

    /// Letter with the given block, if any.
    pub fn letter_for(&self, block: &BinaryWord) -> Option<LetterId> {
        self.blocks
            .iter()
            .position(|b| b.as_ref() == Some(block))
            .map(|i| i as LetterId)
    }

    /// `m^t(w)`.
    pub fn iterate(&self, w: &[LetterId], t: u32) -> Result<Vec<LetterId>> {
        if let Some(&bad) = w.iter().find(|&&a| a as usize >= self.images.len()) {
            return Err(Error::Domain(format!("letter {bad} is not in the alphabet")));
        }
        let mut cur = w.to_vec();
        for _ in 0..t {
            let mut next = Vec::with_capacity(cur.len() * 2);
            for &a in &cur {
                next.extend_from_slice(&self.images[a as usize]);
            }
            cur = next;
        }
        Ok(cur)
    }

    /// Concatenated projection of a letter sequence.
    pub fn project(&self, w: &[LetterId]) -> Vec<u8> {
        let mut out = Vec::with_capacity(w.len() * self.block_len);
        for &a in w {
            out.extend_from_slice(&self.projected[a as usize]);
        }
        out
    }

    /// All length-2 factors of the fixed point, each with the first letter
    /// position at which the closure reached it. Sorted by pair.
    pub fn subword_pairs(&self) -> Result<Vec<PairSite>> {
        let img = self.images[self.start as usize];
        let mut found: BTreeMap<(LetterId, LetterId), u128> = BTreeMap::new();
        found.insert((img[0], img[1]), 0);
        let mut frontier = vec![((img[0], img[1]), 0u128)];
        let cap = self.alphabet_len().pow(2) + 2;
        let mut rounds = 0;
        while !frontier.is_empty() {
            rounds += 1;
            if rounds > cap {
                return Err(Error::Internal("pair closure did not stabilize".into()));
            }
            let mut next = Vec::new();
            for ((a, b), q) in frontier {
                let [a0, a1] = self.images[a as usize];
                let [b0, b1] = self.images[b as usize];
                let w = [a0, a1, b0, b1];
                for k in 0..3 {
                    let pair = (w[k], w[k + 1]);
                    let pos = q
                        .checked_mul(2)
                        .and_then(|x| x.checked_add(k as u128))
                        .ok_or_else(|| Error::Capacity("pair position overflow".into()))?;
                    if let std::collections::btree_map::Entry::Vacant(e) = found.entry(pair) {
                        e.insert(pos);
                        next.push((pair, pos));
                    }
                }
            }
            frontier = next;
        }
        Ok(found
            .into_iter()
            .map(|(pair, position)| PairSite { pair, position })
            .collect())
    }

    /// Prefix of the projected fixed point.
    pub fn project_prefix(&self, length: usize) -> BinaryWord {
        let mut letters = vec![self.start];
        while letters.len() * self.block_len < length {
            letters = self.iterate(&letters, 1).expect("start letter is in the alphabet");
        }
        let mut out = self.project(&letters);
        out.truncate(length);
        BinaryWord::from_letters_unchecked(out)
    }

    /// Projected `m^t(a)` for a single letter.
    pub fn projected_power(&self, a: LetterId, t: u32) -> Result<BinaryWord> {
        Ok(BinaryWord::from_letters_unchecked(self.project(&self.iterate(&[a], t)?)))
    }
}

fn unpack(bits: u128, len: usize) -> Vec<u8> {
    (0..len).rev().map(|k| ((bits >> k) & 1) as u8).collect()
}

/// Outcome of one reversal identity between `σ^t` and `ρ^t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub t: u32,
    pub sigma_letter: &'static str,
    pub rho_letter: &'static str,
    pub holds: bool,
}

/// Checks `σ^t(a) = ρ^t(b)^R` for the eight letter correspondences, `1 ≤ t ≤ t_max`.
pub fn check_reversal_identities(t_max: u32) -> Result<Vec<IdentityCheck>> {
    if t_max == 0 {
        return Err(Error::Domain("t_max must be at least 1".into()));
    }
    const ODD: [(&str, &str); 4] = [("01", "01"), ("00", "11"), ("11", "00"), ("10", "10")];
    const EVEN: [(&str, &str); 4] = [("01", "10"), ("00", "00"), ("11", "11"), ("10", "01")];
    let rho = BlockMorphism::rho();
    let sigma = BlockMorphism::sigma();
    let mut out = Vec::new();
    for t in 1..=t_max {
        let table = if t % 2 == 1 { ODD } else { EVEN };
        for (a, b) in table {
            let sa = sigma.letter_for(&a.parse().unwrap()).unwrap();
            let rb = rho.letter_for(&b.parse().unwrap()).unwrap();
            let holds = sigma.projected_power(sa, t)? == rho.projected_power(rb, t)?.reverse();
            out.push(IdentityCheck {
                t,
                sigma_letter: a,
                rho_letter: b,
                holds,
            });
        }
    }
    Ok(out)
}
