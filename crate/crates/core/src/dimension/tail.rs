//! Upper bounds on the omitted mass `Σ_{L > L_max} c_L·x^L` of the dimension
//! series, with `x = β^(−t)`.
//!
//! The default model counts cut-free concatenation pairs. Every primitive
//! Matching of length `L` is the sum of at least one pair of concatenations
//! whose block boundaries never coincide before `L`, so the number `w_L` of
//! such pairs bounds `c_L`. These pairs are walks in a small automaton whose
//! state is the leading side and its lead `d`; the generating function of
//! walk completions solves a linear system `F = b + M(x)·F`.

use std::collections::BTreeMap;

use super::series::kahan_sum;

/// Source of the bound on `c_L` beyond the enumerated lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TailModel {
    /// `c_L ≤ w_L`, the number of cut-free concatenation pairs of length `L`.
    #[default]
    CutFreeWalks,
    /// `c_L ≤ m₁(L)·m₂(L)` with `m_i(L) ≤ C_i·λ_i^L` fitted on the enumerated
    /// window. Far looser; it diverges whenever `λ₁λ₂ ≥ β^t`.
    ConcatProduct,
}

// Slack factors that keep the floating-point bound on the safe side.
const X_ROUND_UP: f64 = 1.0 + 1e-13;
const COUNT_ROUND_UP: f64 = 1.0 + 1e-10;

/// The unique `λ ≥ 1` with `Σ λ^(−Lᵢ) = 1`: the exponential growth rate of
/// the number of concatenations of total length `L`.
pub fn concat_growth_rate(lengths: &[usize]) -> f64 {
    assert!(!lengths.is_empty(), "need at least one block length");
    if lengths.len() == 1 {
        return 1.0;
    }
    let g = |lambda: f64| kahan_sum(lengths.iter().map(|&l| lambda.powi(-(l as i32)))) - 1.0;
    let (mut lo, mut hi) = (1.0, lengths.len() as f64 + 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Number of concatenations of total length `L` for `L = 0..=max`.
pub fn concat_counts(lengths: &[usize], max: usize) -> Vec<f64> {
    let mut m = vec![0.0; max + 1];
    m[0] = 1.0;
    for total in 1..=max {
        m[total] = lengths
            .iter()
            .filter(|&&l| l <= total)
            .map(|&l| m[total - l])
            .sum();
    }
    m
}

fn multiplicities(lengths: &[usize]) -> Vec<(usize, f64)> {
    let mut by_len: BTreeMap<usize, f64> = BTreeMap::new();
    for &l in lengths {
        *by_len.entry(l).or_default() += 1.0;
    }
    by_len.into_iter().collect()
}

#[derive(Debug, Clone)]
pub(crate) enum Tail {
    Walks(WalkTail),
    Product(ProductTail),
}

impl Tail {
    pub(crate) fn new(model: TailModel, l1: &[usize], l2: &[usize], lmax: usize) -> Self {
        match model {
            TailModel::CutFreeWalks => Tail::Walks(WalkTail::new(l1, l2, lmax)),
            TailModel::ConcatProduct => Tail::Product(ProductTail::new(l1, l2, lmax)),
        }
    }

    /// Upper bound on `Σ_{L > L_max} c_L·x^L`, or `None` if the bound diverges.
    pub(crate) fn bound(&self, x: f64) -> Option<f64> {
        match self {
            Tail::Walks(w) => w.bound(x),
            Tail::Product(p) => p.bound(x),
        }
    }
}

/// Automaton bound over cut-free concatenation pairs.
///
/// States are `(leader, d)` with `leader ∈ {first, second}` and
/// `1 ≤ d ≤ maxlen`, indexed `leader·(maxlen+1) + d`. The lagging floor is
/// extended by a block of length `l`: `l < d` keeps the leader with lead
/// `d − l`, `l = d` closes the pair, `l > d` swaps the leader with lead
/// `l − d` and advances the leading position by `l − d`.
#[derive(Debug, Clone)]
pub(crate) struct WalkTail {
    maxlen: usize,
    blocks: [Vec<(usize, f64)>; 2],
    /// Partial walks that first reach leading position `p > L_max`, by
    /// `(p, state)`.
    arrivals: Vec<(usize, usize, f64)>,
    /// `w_L` for `L ≤ L_max` (index `L`); read by tests only.
    #[cfg_attr(not(test), allow(dead_code))]
    walk_counts: Vec<f64>,
}

impl WalkTail {
    pub(crate) fn new(l1: &[usize], l2: &[usize], lmax: usize) -> Self {
        let blocks = [multiplicities(l1), multiplicities(l2)];
        let maxlen = l1.iter().chain(l2).copied().max().expect("nonempty");
        let states = 2 * (maxlen + 1);
        let threshold = lmax + 1;
        let mut dp = vec![vec![0.0f64; states]; threshold];
        let mut arrivals: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        let mut walk_counts = vec![0.0; lmax + 1];
        let idx = |side: usize, d: usize| side * (maxlen + 1) + d;

        let mut record = |dp: &mut Vec<Vec<f64>>, p: usize, s: usize, n: f64| {
            if p < threshold {
                dp[p][s] += n;
            } else {
                *arrivals.entry((p, s)).or_default() += n;
            }
        };
        for &(a, m) in &blocks[0] {
            record(&mut dp, a, idx(0, a), m);
        }
        for p in 1..threshold {
            for leader in 0..2 {
                let lagger = 1 - leader;
                for d in (1..=maxlen).rev() {
                    let n = dp[p][idx(leader, d)];
                    if n == 0.0 {
                        continue;
                    }
                    for &(l, m) in &blocks[lagger] {
                        let n = n * m;
                        if l < d {
                            dp[p][idx(leader, d - l)] += n;
                        } else if l == d {
                            walk_counts[p] += n;
                        } else {
                            record(&mut dp, p + l - d, idx(lagger, l - d), n);
                        }
                    }
                }
            }
        }
        WalkTail {
            maxlen,
            blocks,
            arrivals: arrivals.into_iter().map(|((p, s), n)| (p, s, n)).collect(),
            walk_counts,
        }
    }

    #[cfg(test)]
    pub(crate) fn walk_counts(&self) -> &[f64] {
        &self.walk_counts
    }

    fn states(&self) -> usize {
        2 * (self.maxlen + 1)
    }

    /// `(M(x), b)` of the completion system.
    fn system(&self, x: f64) -> (Vec<Vec<f64>>, Vec<f64>) {
        let n = self.states();
        let idx = |side: usize, d: usize| side * (self.maxlen + 1) + d;
        let mut m = vec![vec![0.0; n]; n];
        let mut b = vec![0.0; n];
        for leader in 0..2 {
            let lagger = 1 - leader;
            for d in 1..=self.maxlen {
                let s = idx(leader, d);
                for &(l, mult) in &self.blocks[lagger] {
                    if l < d {
                        m[s][idx(leader, d - l)] += mult;
                    } else if l == d {
                        b[s] += mult;
                    } else {
                        m[s][idx(lagger, l - d)] += mult * x.powi((l - d) as i32);
                    }
                }
            }
        }
        (m, b)
    }

    /// A verified componentwise upper bound on the completion generating
    /// functions at `x`, or `None` when no finite one could be certified.
    fn completions(&self, x: f64) -> Option<Vec<f64>> {
        let (m, b) = self.system(x);
        let n = m.len();
        let mut a = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                a[i][j] = if i == j { 1.0 } else { 0.0 } - m[i][j];
            }
        }
        let f0 = solve(&a, &b)?;
        let scale = f0
            .iter()
            .fold(0.0f64, |acc, v| acc.max(v.abs()))
            .max(1e-300);
        let eta = 1e-9 * scale;
        let rhs: Vec<f64> = b.iter().map(|v| v + eta).collect();
        let f = solve(&a, &rhs)?;
        // F ≥ b + M·F with F > 0 certifies ρ(M) < 1 and bounds the minimal
        // nonnegative solution, which is the generating function.
        for i in 0..n {
            if !(f[i].is_finite() && f[i] > 0.0) {
                return None;
            }
            let image = b[i] + kahan_sum((0..n).map(|j| m[i][j] * f[j]));
            if image > f[i] - 0.5 * eta {
                return None;
            }
        }
        Some(f)
    }

    pub(crate) fn bound(&self, x: f64) -> Option<f64> {
        if self.arrivals.is_empty() {
            return Some(0.0);
        }
        let x = x * X_ROUND_UP;
        let f = self.completions(x)?;
        let total = kahan_sum(
            self.arrivals
                .iter()
                .map(|&(p, s, n)| n * x.powi(p as i32) * f[s]),
        );
        total.is_finite().then_some(total * COUNT_ROUND_UP)
    }
}

/// Gaussian elimination with partial pivoting.
fn solve(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(row, &r)| {
            let mut row = row.clone();
            row.push(r);
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        for row in col + 1..n {
            let factor = m[row][col] / m[col][col];
            if factor != 0.0 {
                let (upper, lower) = m.split_at_mut(row);
                for (target, &source) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                    *target -= factor * source;
                }
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| m[row][k] * x[k]).sum();
        x[row] = (m[row][n] - s) / m[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// `C₁C₂·Σ_{L > L_max} (λ₁λ₂x)^L` with `C_i = 2·max_{L ≤ L_max} m_i(L)/λ_i^L`.
#[derive(Debug, Clone)]
pub(crate) struct ProductTail {
    rate: f64,
    constant: f64,
    lmax: usize,
}

impl ProductTail {
    pub(crate) fn new(l1: &[usize], l2: &[usize], lmax: usize) -> Self {
        let fit = |lengths: &[usize]| -> (f64, f64) {
            let lambda = concat_growth_rate(lengths);
            let counts = concat_counts(lengths, lmax);
            let c = (1..=lmax)
                .map(|l| counts[l] / lambda.powi(l as i32))
                .fold(0.0, f64::max);
            (lambda, 2.0 * c.max(1.0))
        };
        let (r1, c1) = fit(l1);
        let (r2, c2) = fit(l2);
        ProductTail {
            rate: r1 * r2,
            constant: c1 * c2,
            lmax,
        }
    }

    pub(crate) fn bound(&self, x: f64) -> Option<f64> {
        let q = self.rate * x * X_ROUND_UP;
        (q < 1.0).then(|| self.constant * q.powi(self.lmax as i32 + 1) / (1.0 - q) * COUNT_ROUND_UP)
    }
}
