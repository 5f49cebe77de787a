use crate::block::rational_to_f64;
use crate::{Error, Ifs, Result};

/// Default limit on generated points (or point pairs for sumsets).
pub const DEFAULT_POINT_CAP: u64 = 50_000_000;

/// Sorted sample of an attractor.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<f64>,
    depth: usize,
    resolution: f64,
}

impl PointCloud {
    /// Sorts and merges points closer than `resolution / 4`.
    pub fn new(mut points: Vec<f64>, depth: usize, resolution: f64) -> Self {
        points.sort_by(f64::total_cmp);
        let gap = resolution / 4.0;
        let mut kept: Vec<f64> = Vec::with_capacity(points.len());
        for p in points {
            if kept.last().is_none_or(|&last| p - last > gap) {
                kept.push(p);
            }
        }
        Self {
            points: kept,
            depth,
            resolution,
        }
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Every attractor point lies within this distance of a sample.
    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    pub fn min(&self) -> Option<f64> {
        self.points.first().copied()
    }

    pub fn max(&self) -> Option<f64> {
        self.points.last().copied()
    }
}

/// Images of the hull midpoint under all `depth`-fold compositions of the
/// maps.
pub fn sample_attractor(ifs: &Ifs, depth: usize, cap: u64) -> Result<PointCloud> {
    if depth == 0 {
        return Err(Error::Empty("coding depth"));
    }
    let n = ifs.entries().len() as u64;
    let count = (0..depth).try_fold(1u64, |acc, _| acc.checked_mul(n).filter(|&c| c <= cap));
    let Some(_) = count else {
        return Err(Error::PointCapExceeded {
            count: n.saturating_pow(depth as u32),
            cap,
        });
    };
    let beta = ifs.base().to_f64();
    let maps: Vec<(f64, f64)> = ifs
        .similitudes()
        .iter()
        .map(|s| {
            (
                beta.powi(-(s.exponent() as i32)),
                rational_to_f64(s.translation()),
            )
        })
        .collect();
    let hull = ifs.hull();
    let (lo, hi) = (rational_to_f64(hull.lo()), rational_to_f64(hull.hi()));
    let mut points = vec![0.5 * (lo + hi)];
    for _ in 0..depth {
        points = maps
            .iter()
            .flat_map(|&(r, a)| points.iter().map(move |&x| r * x + a))
            .collect();
    }
    let min_exp = ifs.exponents().into_iter().min().expect("nonempty") as i32;
    let resolution = beta.powi(-(min_exp * depth as i32)) * (hi - lo);
    Ok(PointCloud::new(points, depth, resolution))
}

/// All pairwise sums of two clouds.
pub fn sumset_cloud(a: &PointCloud, b: &PointCloud, cap: u64) -> Result<PointCloud> {
    let count = (a.len() as u64).saturating_mul(b.len() as u64);
    if count > cap {
        return Err(Error::PointCapExceeded { count, cap });
    }
    let points = a
        .points
        .iter()
        .flat_map(|&x| b.points.iter().map(move |&y| x + y))
        .collect();
    Ok(PointCloud::new(
        points,
        a.depth.min(b.depth),
        a.resolution + b.resolution,
    ))
}
