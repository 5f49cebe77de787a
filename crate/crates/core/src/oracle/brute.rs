use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::{Block, DigitalSet, Rational};

/// Digit strings as indices into a table of distinct values.
type Ids = Vec<u32>;

fn intern(values: &mut Vec<Rational>, index: &mut HashMap<Rational, u32>, v: &Rational) -> u32 {
    *index.entry(v.clone()).or_insert_with(|| {
        values.push(v.clone());
        (values.len() - 1) as u32
    })
}

/// Every distinct digit string of each length `1..=max` obtained by
/// concatenating blocks, by plain recursion, together with the digit table.
fn concatenations(d: &DigitalSet, max: usize) -> (Vec<Rational>, BTreeMap<usize, HashSet<Ids>>) {
    fn grow(blocks: &[Ids], max: usize, prefix: &mut Ids, out: &mut BTreeMap<usize, HashSet<Ids>>) {
        for block in blocks {
            if prefix.len() + block.len() > max {
                continue;
            }
            let keep = prefix.len();
            prefix.extend_from_slice(block);
            out.entry(prefix.len()).or_default().insert(prefix.clone());
            grow(blocks, max, prefix, out);
            prefix.truncate(keep);
        }
    }
    let mut values = Vec::new();
    let mut index = HashMap::new();
    let blocks: Vec<Ids> = d
        .blocks()
        .iter()
        .map(|b| {
            b.digits()
                .iter()
                .map(|x| intern(&mut values, &mut index, x))
                .collect()
        })
        .collect();
    let mut out = BTreeMap::new();
    grow(&blocks, max, &mut Vec::new(), &mut out);
    (values, out)
}

/// Number of string pairs the brute force would sum for lengths `1..=max`.
pub fn brute_force_pair_count(d1: &DigitalSet, d2: &DigitalSet, max: usize) -> u128 {
    let (_, c1) = concatenations(d1, max);
    let (_, c2) = concatenations(d2, max);
    (1..=max)
        .map(|l| {
            let a = c1.get(&l).map_or(0, HashSet::len) as u128;
            let b = c2.get(&l).map_or(0, HashSet::len) as u128;
            a * b
        })
        .sum()
}

/// Primitive Matchings of length at most `max`, by exhaustive pairing.
///
/// A Matching is primitive iff it is not the concatenation of two shorter
/// Matchings; this is checked by trying every split point.
pub fn brute_force_matchings(d1: &DigitalSet, d2: &DigitalSet, max: usize) -> BTreeSet<Block> {
    let (x1, c1) = concatenations(d1, max);
    let (x2, c2) = concatenations(d2, max);
    let mut values = Vec::new();
    let mut index = HashMap::new();
    let table: Vec<Vec<u32>> = x1
        .iter()
        .map(|a| {
            x2.iter()
                .map(|b| intern(&mut values, &mut index, &(a + b)))
                .collect()
        })
        .collect();
    let mut sums: BTreeMap<usize, HashSet<Ids>> = BTreeMap::new();
    for l in 1..=max {
        let (Some(us), Some(vs)) = (c1.get(&l), c2.get(&l)) else {
            continue;
        };
        let here = sums.entry(l).or_default();
        for u in us {
            for v in vs {
                here.insert(
                    u.iter()
                        .zip(v)
                        .map(|(&a, &b)| table[a as usize][b as usize])
                        .collect(),
                );
            }
        }
    }
    let is_sum = |s: &[u32]| sums.get(&s.len()).is_some_and(|set| set.contains(s));
    let mut out = BTreeSet::new();
    for set in sums.values() {
        for s in set {
            let splits = (1..s.len()).any(|p| is_sum(&s[..p]) && is_sum(&s[p..]));
            if !splits {
                let digits = s.iter().map(|&i| values[i as usize].clone()).collect();
                out.insert(Block::new(digits).expect("nonempty"));
            }
        }
    }
    out
}
