//! Finite versus infinite Matching sets, common-base detection and the
//! countability test for non-Matching codings.
//!
//! The finiteness decision only looks at block lengths: with one side
//! homogeneous of length `k`, the Matching set is finite exactly when every
//! block length on the other side leaves the same residue `r` modulo `k`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::block::{Ifs, Side};
use crate::matching::{MatchingEnumerator, MatchingSet};
use crate::{Base, DigitalSet, Error, Rational, Result};

/// Block lengths of a digital set, with multiplicity, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LengthMultiset {
    lengths: Vec<usize>,
}

impl LengthMultiset {
    pub fn new(mut lengths: Vec<usize>) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::Empty("length multiset"));
        }
        if lengths.contains(&0) {
            return Err(Error::EmptyBlock);
        }
        lengths.sort_unstable();
        Ok(Self { lengths })
    }

    pub fn of(set: &DigitalSet) -> Self {
        Self::new(set.lengths()).expect("digital sets are nonempty with nonempty blocks")
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> usize {
        self.lengths[0]
    }

    pub fn max(&self) -> usize {
        *self.lengths.last().expect("nonempty")
    }
}

impl From<&DigitalSet> for LengthMultiset {
    fn from(set: &DigitalSet) -> Self {
        Self::of(set)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Finiteness {
    Finite,
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Countability {
    /// Both length multisets have the shape `{k, …, k, 2k}` for this `k`.
    Yes { k: usize },
    /// The sufficient condition does not apply; nothing is claimed.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrrationalAssumption {
    Holds,
    /// Every ratio is `base^(-n)` for the listed positive exponents.
    Fails {
        base: Base,
        exponents1: Vec<u32>,
        exponents2: Vec<u32>,
    },
}

#[derive(Debug, Clone)]
pub enum StructureClass {
    /// The sumset is self-similar; `matchings` is the complete primitive set,
    /// enumerated up to the length bound `bound`.
    SelfSimilar {
        matchings: MatchingSet,
        bound: usize,
    },
    /// Infinitely many primitive Matchings; the enumerator produces them lazily.
    IifsAttractor { generator: Box<MatchingEnumerator> },
}

impl StructureClass {
    pub fn is_self_similar(&self) -> bool {
        matches!(self, StructureClass::SelfSimilar { .. })
    }
}

pub fn is_homogeneous(l: &LengthMultiset) -> bool {
    l.min() == l.max()
}

/// Smallest `t ≥ 1` such that every `t`-fold sum of elements of `l2` is a
/// multiple of `k`, if one exists.
pub fn multiplier_witness(l2: &LengthMultiset, k: usize) -> Option<usize> {
    assert!(k >= 1, "k must be positive");
    let r = l2.lengths[0] % k;
    if l2.lengths.iter().any(|&l| l % k != r) {
        return None;
    }
    Some(k / r.gcd(&k))
}

pub fn is_multiplier_set(l2: &LengthMultiset, k: usize) -> bool {
    multiplier_witness(l2, k).is_some()
}

/// All `|l|^t` ordered `t`-fold sums of elements of `l`.
pub fn iterate_lengths(l: &LengthMultiset, t: usize) -> Vec<usize> {
    let mut sums = vec![0];
    for _ in 0..t {
        sums = sums
            .iter()
            .flat_map(|s| l.lengths.iter().map(move |x| s + x))
            .collect();
    }
    sums
}

/// `Some(t · max(other ∪ {k}))` when `homogeneous` has a single length `k`
/// and `other` is a multiplier set of it with witness `t`.
fn oriented_bound(homogeneous: &LengthMultiset, other: &LengthMultiset) -> Option<usize> {
    if !is_homogeneous(homogeneous) {
        return None;
    }
    let k = homogeneous.min();
    let t = multiplier_witness(other, k)?;
    Some(t * other.max().max(k))
}

pub fn finiteness(l1: &LengthMultiset, l2: &LengthMultiset) -> Finiteness {
    if oriented_bound(l1, l2).is_some() || oriented_bound(l2, l1).is_some() {
        Finiteness::Finite
    } else {
        Finiteness::Infinite
    }
}

/// Upper bound on the length of any primitive Matching of a finite pair.
///
/// With `l1` homogeneous of length `k` and `l2 ≡ r (mod k)`, the prefix sums
/// of a `l2`-concatenation hit a multiple of `k` after `t = k/gcd(r,k)` blocks,
/// where both floors cut. A primitive Matching therefore spans at most `t`
/// blocks of `l2`.
pub fn primitive_length_bound(l1: &LengthMultiset, l2: &LengthMultiset) -> Result<usize> {
    match (oriented_bound(l1, l2), oriented_bound(l2, l1)) {
        (Some(a), Some(b)) => Ok(a.min(b)),
        (Some(a), None) | (None, Some(a)) => Ok(a),
        (None, None) => Err(Error::NotFinite),
    }
}

fn countable_shape(l: &LengthMultiset) -> Option<usize> {
    let k = l.min();
    let n = l.len();
    (n >= 2 && l.lengths[..n - 1].iter().all(|&x| x == k) && l.lengths[n - 1] == 2 * k).then_some(k)
}

/// Sufficient test for countability of the non-Matching codings: both sides
/// are `{k, …, k, 2k}` for one `k`. Never answers "no".
pub fn c_countable_sufficient(l1: &LengthMultiset, l2: &LengthMultiset) -> Countability {
    match (countable_shape(l1), countable_shape(l2)) {
        (Some(a), Some(b)) if a == b => Countability::Yes { k: a },
        _ => Countability::Unknown,
    }
}

/// Length multisets of the reduced digital sets (see [`DigitalSet::reduced`]),
/// which is what the finiteness criterion is applied to.
pub fn reduced_lengths(d1: &DigitalSet, d2: &DigitalSet) -> (LengthMultiset, LengthMultiset) {
    (
        LengthMultiset::of(&d1.reduced()),
        LengthMultiset::of(&d2.reduced()),
    )
}

/// Decide the structure of the sumset of two IFSs over the same base.
///
/// Blocks that are concatenations of shorter blocks are dropped first (see
/// [`DigitalSet::reduced`]); the length criterion is applied to what remains.
pub fn classify_structure(ifs1: &Ifs, ifs2: &Ifs, cap: u64) -> Result<StructureClass> {
    if ifs1.base() != ifs2.base() {
        return Err(Error::BaseMismatch(
            Box::new(ifs1.base().beta().clone()),
            Box::new(ifs2.base().beta().clone()),
        ));
    }
    let d1 = ifs1.digital_set(Side::First).reduced();
    let d2 = ifs2.digital_set(Side::Second).reduced();
    let (l1, l2) = (LengthMultiset::of(&d1), LengthMultiset::of(&d2));
    let mut generator = MatchingEnumerator::new(&d1, &d2, cap);
    match finiteness(&l1, &l2) {
        Finiteness::Finite => {
            let bound = primitive_length_bound(&l1, &l2)?;
            generator.extend_to(bound)?;
            generator.mark_complete();
            Ok(StructureClass::SelfSimilar {
                matchings: generator.into_matching_set(),
                bound,
            })
        }
        Finiteness::Infinite => Ok(StructureClass::IifsAttractor {
            generator: Box::new(generator),
        }),
    }
}

/// Pairwise-coprime integers `> 1` such that every input factors over them.
fn coprime_basis(values: impl IntoIterator<Item = BigInt>) -> Vec<BigInt> {
    let mut basis: BTreeSet<BigInt> = values.into_iter().filter(|v| !v.is_one()).collect();
    'refine: loop {
        let items: Vec<BigInt> = basis.iter().cloned().collect();
        for (i, a) in items.iter().enumerate() {
            for b in &items[i + 1..] {
                let g = a.gcd(b);
                if !g.is_one() {
                    basis.remove(a);
                    basis.remove(b);
                    for part in [a / &g, b / &g, g] {
                        if !part.is_one() {
                            basis.insert(part);
                        }
                    }
                    continue 'refine;
                }
            }
        }
        return items;
    }
}

fn valuation(mut n: BigInt, basis: &[BigInt]) -> Vec<i64> {
    let exps = basis
        .iter()
        .map(|b| {
            let mut e = 0;
            while (&n % b).is_zero() {
                n /= b;
                e += 1;
            }
            e
        })
        .collect();
    debug_assert!(n.is_one(), "input factors over its coprime basis");
    exps
}

/// Decide whether all ratios are integer powers of one rational `1/β`.
///
/// On failure of the assumption, `β` is the largest such base.
pub fn irrational_assumption(
    ratios1: &[Rational],
    ratios2: &[Rational],
) -> Result<IrrationalAssumption> {
    if ratios1.is_empty() || ratios2.is_empty() {
        return Err(Error::Empty("ratio list"));
    }
    let all: Vec<&Rational> = ratios1.iter().chain(ratios2).collect();
    for r in &all {
        if !r.is_positive() || **r >= Rational::one() {
            return Err(Error::RatioOutOfRange((*r).clone()));
        }
    }
    let basis = coprime_basis(
        all.iter()
            .flat_map(|r| [r.numer().clone(), r.denom().clone()]),
    );
    // exponent vector of each ratio over the basis
    let vectors: Vec<Vec<i64>> = all
        .iter()
        .map(|r| {
            let num = valuation(r.numer().clone(), &basis);
            let den = valuation(r.denom().clone(), &basis);
            num.iter().zip(&den).map(|(a, b)| a - b).collect()
        })
        .collect();

    // primitive direction of β: the first vector, negated, divided by its content
    let first = &vectors[0];
    let content = first.iter().fold(0i64, |g, &x| g.gcd(&x));
    let direction: Vec<i64> = first.iter().map(|&x| -x / content).collect();

    let mut powers = Vec::with_capacity(vectors.len());
    for v in &vectors {
        // v must equal -n·direction with n ≥ 1
        let pivot = direction.iter().position(|&d| d != 0).expect("ratio ≠ 1");
        let n = -v[pivot];
        if n % direction[pivot] != 0 {
            return Ok(IrrationalAssumption::Holds);
        }
        let n = n / direction[pivot];
        if n <= 0 || v.iter().zip(&direction).any(|(&x, &d)| x != -n * d) {
            return Ok(IrrationalAssumption::Holds);
        }
        powers.push(n);
    }

    let g = powers.iter().fold(0i64, |g, &x| g.gcd(&x));
    let mut beta = Rational::one();
    for (b, &d) in basis.iter().zip(&direction) {
        let factor = Rational::from(b.clone()).pow(d as i32 * g as i32);
        beta *= factor;
    }
    let base = Base::new(beta)?;
    let exps: Vec<u32> = powers
        .iter()
        .map(|&n| u32::try_from(n / g).expect("exponent fits in u32"))
        .collect();
    let (e1, e2) = exps.split_at(ratios1.len());
    Ok(IrrationalAssumption::Fails {
        base,
        exponents1: e1.to_vec(),
        exponents2: e2.to_vec(),
    })
}
