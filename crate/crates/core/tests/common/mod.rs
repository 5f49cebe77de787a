#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sumsetdim_core::block::Side;
use sumsetdim_core::oracle::brute_force_pair_count;
use sumsetdim_core::{Base, Block, DigitalSet, Ifs, Rational, Similitude};

pub const FAMILY_SEED: u64 = 0x5eed_2024;
pub const FAMILY_SIZE: usize = 60;
pub const BRUTE_LENGTH: usize = 12;
/// Instances whose brute-force enumeration to `BRUTE_LENGTH` would sum more
/// string pairs than this are redrawn.
pub const BRUTE_BUDGET: u128 = 20_000_000;

#[derive(Debug, Clone)]
pub struct Instance {
    pub d1: DigitalSet,
    pub d2: DigitalSet,
    pub base: Base,
}

fn random_set(rng: &mut ChaCha8Rng, side: Side) -> DigitalSet {
    const DIGITS: [i64; 4] = [0, 1, 2, 4];
    loop {
        let count = rng.gen_range(1..=3);
        let mut blocks: Vec<Block> = (0..count)
            .map(|_| {
                let len = rng.gen_range(1..=4);
                let digits: Vec<i64> = (0..len).map(|_| *DIGITS.choose(rng).unwrap()).collect();
                Block::from_integers(&digits).unwrap()
            })
            .collect();
        blocks.sort();
        blocks.dedup();
        if blocks.len() == count {
            return DigitalSet::new(blocks, side).unwrap();
        }
    }
}

/// Block lengths ≤ 4, digits in {0,1,2,4}, 1 to 3 distinct blocks per set,
/// β = 5, redrawn until the brute-force oracle fits its budget.
pub fn random_family() -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(FAMILY_SEED);
    let base = Base::integer(5).unwrap();
    let mut out = Vec::with_capacity(FAMILY_SIZE);
    while out.len() < FAMILY_SIZE {
        let d1 = random_set(&mut rng, Side::First);
        let d2 = random_set(&mut rng, Side::Second);
        if brute_force_pair_count(&d1, &d2, BRUTE_LENGTH) <= BRUTE_BUDGET {
            out.push(Instance {
                d1,
                d2,
                base: base.clone(),
            });
        }
    }
    out
}

pub fn describe(set: &DigitalSet) -> String {
    let parts: Vec<String> = set.blocks().iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

/// Smallest positive root of t³ − t² − 2t + 1, by Newton iteration from 0.
pub fn cubic_root() -> f64 {
    let mut t: f64 = 0.0;
    for _ in 0..100 {
        let step = (t * t * t - t * t - 2.0 * t + 1.0) / (3.0 * t * t - 2.0 * t - 2.0);
        t -= step;
        if step.abs() < 1e-17 {
            break;
        }
    }
    t
}

/// `−ln t₀ / ln 3`.
pub fn cubic_example_dimension() -> f64 {
    -cubic_root().ln() / 3f64.ln()
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn ifs_of_maps(base: &Base, maps: &[(u32, Rational)]) -> Ifs {
    Ifs::from_similitudes(
        base.clone(),
        maps.iter()
            .map(|(n, a)| Similitude::new(*n, a.clone()).unwrap())
            .collect(),
    )
    .unwrap()
}

pub fn ifs_of_blocks(base: &Base, blocks: &[&[i64]]) -> Ifs {
    Ifs::from_blocks(
        base.clone(),
        blocks
            .iter()
            .map(|b| Block::from_integers(b).unwrap())
            .collect(),
    )
    .unwrap()
}

pub fn blocks(v: &[&[i64]]) -> Vec<Block> {
    v.iter().map(|b| Block::from_integers(b).unwrap()).collect()
}
