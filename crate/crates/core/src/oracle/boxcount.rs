use std::collections::HashSet;

use super::cloud::PointCloud;
use crate::{Error, Result};

const MIN_SCALES: usize = 4;
// Boxes finer than this multiple of the cloud resolution are rejected.
const RESOLUTION_FACTOR: f64 = 8.0;

/// Least-squares box-counting slope; not a certified value.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxCountEstimate {
    pub dimension: f64,
    pub std_error: f64,
    /// `(ε, N(ε))` from coarse to fine.
    pub series: Vec<(f64, usize)>,
}

/// Scales `β^(−j)` for `j ≥ 2` down to the finest one allowed by the cloud.
pub fn default_scale_range(cloud: &PointCloud, base: f64) -> (f64, f64) {
    let finest = RESOLUTION_FACTOR * cloud.resolution();
    let j_max = ((1.0 / finest).ln() / base.ln()).floor().max(2.0);
    (base.powf(-j_max), base.powi(-2))
}

fn box_count(points: &[f64], eps: f64) -> usize {
    points
        .iter()
        .map(|&x| (x / eps).floor() as i64)
        .collect::<HashSet<_>>()
        .len()
}

/// Slope of `ln N(ε)` against `ln(1/ε)` over grid scales `ε = β^(−j)` inside
/// `scale_range` (either order).
pub fn box_count_dimension(
    cloud: &PointCloud,
    base: f64,
    scale_range: (f64, f64),
) -> Result<BoxCountEstimate> {
    let (fine, coarse) = if scale_range.0 <= scale_range.1 {
        scale_range
    } else {
        (scale_range.1, scale_range.0)
    };
    let floor_resolution = RESOLUTION_FACTOR * cloud.resolution();
    if fine < floor_resolution {
        return Err(Error::ScaleBelowResolution {
            scale: fine,
            resolution: cloud.resolution(),
        });
    }
    // tolerate rounding in the caller's powers of β
    let slack = 1e-9;
    let j_lo = ((1.0 / coarse).ln() / base.ln() - slack).ceil() as i32;
    let j_hi = ((1.0 / fine).ln() / base.ln() + slack).floor() as i32;
    let scales: Vec<f64> = (j_lo..=j_hi).map(|j| base.powi(-j)).collect();
    if scales.len() < MIN_SCALES {
        return Err(Error::TooFewScales {
            found: scales.len(),
            needed: MIN_SCALES,
        });
    }
    let series: Vec<(f64, usize)> = scales
        .iter()
        .map(|&eps| (eps, box_count(cloud.points(), eps)))
        .collect();

    let xs: Vec<f64> = series.iter().map(|&(e, _)| (1.0 / e).ln()).collect();
    let ys: Vec<f64> = series.iter().map(|&(_, n)| (n as f64).ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let std_error = (ssr / (n - 2.0) / sxx).sqrt();
    Ok(BoxCountEstimate {
        dimension: slope,
        std_error,
        series,
    })
}
