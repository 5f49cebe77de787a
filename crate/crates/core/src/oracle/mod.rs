//! Independent cross-checks: a brute-force Matching enumerator that shares
//! no code with [`crate::matching`], point clouds of attractors and sumsets,
//! and box-counting estimates. None of these certify anything.

mod boxcount;
mod brute;
mod cloud;

pub use boxcount::{box_count_dimension, default_scale_range, BoxCountEstimate};
pub use brute::{brute_force_matchings, brute_force_pair_count};
pub use cloud::{sample_attractor, sumset_cloud, PointCloud, DEFAULT_POINT_CAP};
