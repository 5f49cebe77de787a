//! Primitive Matchings generated by two digital sets.
//!
//! Lengths are processed in increasing order. At each length every sum of an
//! equal-length pair of concatenations (one from each digital set) is a
//! candidate, and a candidate is kept unless it splits into a concatenation
//! of Matchings kept at shorter lengths.
//!
//! A pair of concatenations whose block boundaries coincide at some interior
//! position `p` always yields a decomposable candidate: both halves are
//! Matchings, and every Matching is a concatenation of kept ones. The
//! enumerator therefore only walks pairs with no common interior boundary
//! (the two "floors" never realign before the end). The kept set is the
//! same as with the exhaustive candidate set, at a small fraction of the cost.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::block::{Block, DigitalSet};
use crate::{Base, Error, Rational, Result, Similitude};

/// Default limit on cut-free concatenation pairs walked per length.
pub const DEFAULT_CANDIDATE_CAP: u64 = 10_000_000;

/// A Matching: the digitwise sum of two equal-length concatenations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    digits: Block,
}

impl Matching {
    pub fn new(digits: Block) -> Self {
        Self { digits }
    }

    pub fn digits(&self) -> &Block {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn similitude(&self, base: &Base) -> Similitude {
        crate::similitude_of_block(&self.digits, base)
    }
}

/// Primitive Matchings found up to a length cutoff.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MatchingSet {
    by_length: BTreeMap<usize, BTreeSet<Block>>,
    cutoff: usize,
    complete: bool,
}

impl MatchingSet {
    pub fn empty(cutoff: usize) -> Self {
        Self {
            by_length: BTreeMap::new(),
            cutoff,
            complete: false,
        }
    }

    /// Kept digit strings grouped by length; lengths with no Matching are absent.
    pub fn by_length(&self) -> &BTreeMap<usize, BTreeSet<Block>> {
        &self.by_length
    }

    /// Largest length that has been fully processed.
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// True only when the finiteness criterion certified that no primitive
    /// Matching exists beyond the cutoff.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub(crate) fn mark_complete(&mut self) {
        self.complete = true;
    }

    pub fn len(&self) -> usize {
        self.by_length.values().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.by_length.is_empty()
    }

    pub fn contains(&self, block: &Block) -> bool {
        self.by_length
            .get(&block.len())
            .is_some_and(|s| s.contains(block))
    }

    /// Matchings by ascending length, lexicographic within a length.
    pub fn iter(&self) -> impl Iterator<Item = &Block> {
        self.by_length.values().flatten()
    }

    pub fn matchings(&self) -> Vec<Matching> {
        self.iter().cloned().map(Matching::new).collect()
    }

    pub fn max_length(&self) -> Option<usize> {
        self.by_length.keys().next_back().copied()
    }

    pub fn similitudes(&self, base: &Base) -> Vec<Similitude> {
        self.iter()
            .map(|b| crate::similitude_of_block(b, base))
            .collect()
    }

    /// The Matchings of length at most `cutoff`.
    pub fn truncated(&self, cutoff: usize) -> MatchingSet {
        MatchingSet {
            by_length: self
                .by_length
                .range(..=cutoff)
                .map(|(l, s)| (*l, s.clone()))
                .collect(),
            cutoff: cutoff.min(self.cutoff),
            complete: self.complete && cutoff >= self.cutoff,
        }
    }

    fn insert(&mut self, block: Block) {
        self.by_length.entry(block.len()).or_default().insert(block);
    }

    #[cfg(test)]
    pub(crate) fn insert_for_tests(&mut self, blocks: &[&[i64]]) {
        for b in blocks {
            self.insert(Block::from_integers(b).unwrap());
        }
    }
}

/// `(L, c_L)` for every length with at least one Matching, ascending.
pub fn matching_counts(ms: &MatchingSet) -> Vec<(usize, usize)> {
    ms.by_length.iter().map(|(l, s)| (*l, s.len())).collect()
}

/// All distinct digit strings of length exactly `len` formed by
/// concatenating blocks of `d`.
pub fn enumerate_concat_sums(d: &DigitalSet, len: usize) -> BTreeSet<Block> {
    // strings[l] = distinct concatenations of total length l
    let mut strings: Vec<BTreeSet<Vec<Rational>>> = vec![BTreeSet::new(); len + 1];
    strings[0].insert(Vec::new());
    for total in 1..=len {
        let mut here = BTreeSet::new();
        for block in d.blocks() {
            let Some(rest) = total.checked_sub(block.len()) else {
                continue;
            };
            for prefix in &strings[rest] {
                let mut s = prefix.clone();
                s.extend(block.digits().iter().cloned());
                here.insert(s);
            }
        }
        strings[total] = here;
    }
    std::mem::take(&mut strings[len])
        .into_iter()
        .map(|digits| Block::new(digits).expect("len >= 1"))
        .collect()
}

/// True iff `block` splits into one or more kept Matchings, each strictly
/// shorter than `block`.
pub fn is_decomposable(block: &Block, kept: &MatchingSet) -> bool {
    let digits = block.digits();
    let n = digits.len();
    let lengths: Vec<usize> = kept.by_length.keys().copied().filter(|&l| l < n).collect();
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for start in 0..n {
        if !reach[start] {
            continue;
        }
        for &l in &lengths {
            let end = start + l;
            if end > n {
                break;
            }
            if reach[end] {
                continue;
            }
            let piece = Block::new(digits[start..end].to_vec()).expect("nonempty slice");
            if kept.by_length[&l].contains(&piece) {
                reach[end] = true;
            }
        }
    }
    reach[n]
}

/// Primitive Matchings of `d1` and `d2` of length at most `max_len`.
pub fn matchings_up_to(
    d1: &DigitalSet,
    d2: &DigitalSet,
    max_len: usize,
    cap: u64,
) -> Result<MatchingSet> {
    let mut en = MatchingEnumerator::new(d1, d2, cap);
    en.extend_to(max_len)?;
    Ok(en.matching_set().clone())
}

/// Incremental, length-by-length Matching enumeration.
///
/// Digits are interned: each distinct rational sum of a first-set digit and a
/// second-set digit gets one id, so digit strings compare as `u32` slices.
#[derive(Debug, Clone)]
pub struct MatchingEnumerator {
    first: Vec<Vec<u32>>,
    second: Vec<Vec<u32>>,
    first_lengths: Vec<usize>,
    second_lengths: Vec<usize>,
    // sum_ids[a * stride + b] is the id of digit a + digit b
    sum_ids: Vec<u32>,
    stride: usize,
    sum_values: Vec<Rational>,
    kept: HashMap<usize, HashSet<Vec<u32>>>,
    kept_lengths: Vec<usize>,
    set: MatchingSet,
    cap: u64,
    pairs_walked: Vec<u64>,
}

impl MatchingEnumerator {
    pub fn new(d1: &DigitalSet, d2: &DigitalSet, cap: u64) -> Self {
        let alphabet = |d: &DigitalSet| -> Vec<Rational> {
            d.blocks()
                .iter()
                .flat_map(|b| b.digits().iter().cloned())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect()
        };
        let a1 = alphabet(d1);
        let a2 = alphabet(d2);
        let encode = |d: &DigitalSet, alpha: &[Rational]| -> Vec<Vec<u32>> {
            d.blocks()
                .iter()
                .map(|b| {
                    b.digits()
                        .iter()
                        .map(|x| alpha.binary_search(x).expect("digit in alphabet") as u32)
                        .collect()
                })
                .collect()
        };
        let first = encode(d1, &a1);
        let second = encode(d2, &a2);

        let mut index: BTreeMap<Rational, u32> = BTreeMap::new();
        let mut sum_values = Vec::new();
        let mut sum_ids = Vec::with_capacity(a1.len() * a2.len());
        for x in &a1 {
            for y in &a2 {
                let s = x + y;
                let id = *index.entry(s.clone()).or_insert_with(|| {
                    sum_values.push(s);
                    (sum_values.len() - 1) as u32
                });
                sum_ids.push(id);
            }
        }

        Self {
            first_lengths: d1.lengths(),
            second_lengths: d2.lengths(),
            first,
            second,
            sum_ids,
            stride: a2.len(),
            sum_values,
            kept: HashMap::new(),
            kept_lengths: Vec::new(),
            set: MatchingSet::empty(0),
            cap,
            pairs_walked: Vec::new(),
        }
    }

    pub fn cutoff(&self) -> usize {
        self.set.cutoff
    }

    pub fn matching_set(&self) -> &MatchingSet {
        &self.set
    }

    pub fn into_matching_set(self) -> MatchingSet {
        self.set
    }

    pub fn first_lengths(&self) -> &[usize] {
        &self.first_lengths
    }

    pub fn second_lengths(&self) -> &[usize] {
        &self.second_lengths
    }

    /// Number of cut-free concatenation pairs walked at each processed length
    /// (index 0 is length 1).
    pub fn pairs_walked(&self) -> &[u64] {
        &self.pairs_walked
    }

    pub(crate) fn mark_complete(&mut self) {
        self.set.mark_complete();
    }

    /// Process every length up to `max_len`. On a cap error the lengths
    /// processed so far remain valid.
    pub fn extend_to(&mut self, max_len: usize) -> Result<()> {
        while self.set.cutoff < max_len {
            self.extend_one()?;
        }
        Ok(())
    }

    /// Process the next length; returns the Matchings kept at that length.
    pub fn extend_one(&mut self) -> Result<Vec<Block>> {
        let len = self.set.cutoff + 1;
        let (candidates, walked) = self.candidates(len)?;
        let mut fresh: Vec<Vec<u32>> = candidates
            .into_iter()
            .filter(|s| !self.decomposable(s))
            .collect();
        let mut blocks: Vec<Block> = fresh.iter().map(|s| self.decode(s)).collect();
        blocks.sort();
        if !fresh.is_empty() {
            fresh.sort();
            self.kept.insert(len, fresh.into_iter().collect());
            self.kept_lengths.push(len);
            for b in &blocks {
                self.set.insert(b.clone());
            }
        }
        self.pairs_walked.push(walked);
        self.set.cutoff = len;
        Ok(blocks)
    }

    fn decode(&self, s: &[u32]) -> Block {
        Block::new(
            s.iter()
                .map(|&i| self.sum_values[i as usize].clone())
                .collect(),
        )
        .expect("Matchings are nonempty")
    }

    fn decomposable(&self, s: &[u32]) -> bool {
        let n = s.len();
        let mut reach = vec![false; n + 1];
        reach[0] = true;
        for start in 0..n {
            if !reach[start] {
                continue;
            }
            for &l in &self.kept_lengths {
                let end = start + l;
                if l >= n || end > n {
                    break;
                }
                if !reach[end] && self.kept[&l].contains(&s[start..end]) {
                    reach[end] = true;
                }
            }
        }
        reach[n]
    }

    fn candidates(&self, len: usize) -> Result<(HashSet<Vec<u32>>, u64)> {
        let mut walk = FloorWalk {
            en: self,
            target: len,
            x: Vec::with_capacity(len),
            y: Vec::with_capacity(len),
            out: HashSet::new(),
            pairs: 0,
            overflow: false,
        };
        walk.step();
        if walk.overflow {
            return Err(Error::CapExceeded {
                what: "candidate pair",
                length: len,
                cap: self.cap,
            });
        }
        Ok((walk.out, walk.pairs))
    }
}

/// Depth-first walk over pairs of concatenations (the "x-floor" from the
/// first digital set, the "y-floor" from the second) that reach `target`
/// together without sharing an interior block boundary. The lagging floor is
/// always the one extended.
struct FloorWalk<'a> {
    en: &'a MatchingEnumerator,
    target: usize,
    x: Vec<u32>,
    y: Vec<u32>,
    out: HashSet<Vec<u32>>,
    pairs: u64,
    overflow: bool,
}

impl FloorWalk<'_> {
    fn step(&mut self) {
        if self.overflow {
            return;
        }
        let extend_first = self.x.len() <= self.y.len();
        let blocks = if extend_first {
            &self.en.first
        } else {
            &self.en.second
        };
        let (lag, lead) = if extend_first {
            (self.x.len(), self.y.len())
        } else {
            (self.y.len(), self.x.len())
        };
        for block in blocks {
            let end = lag + block.len();
            if end > self.target || (end == lead && end < self.target) {
                continue;
            }
            let floor = if extend_first {
                &mut self.x
            } else {
                &mut self.y
            };
            floor.extend_from_slice(block);
            if end == lead {
                self.emit();
            } else {
                self.step();
            }
            let floor = if extend_first {
                &mut self.x
            } else {
                &mut self.y
            };
            floor.truncate(lag);
            if self.overflow {
                return;
            }
        }
    }

    fn emit(&mut self) {
        self.pairs += 1;
        if self.pairs > self.en.cap {
            self.overflow = true;
            return;
        }
        let stride = self.en.stride;
        let s: Vec<u32> = self
            .x
            .iter()
            .zip(&self.y)
            .map(|(&a, &b)| self.en.sum_ids[a as usize * stride + b as usize])
            .collect();
        self.out.insert(s);
    }
}
