//! Fourier-series surrogate manifolds for bounded black-box objectives, with
//! a curvature-flow optimizer that locates extrema as metric blow-ups.
//!
//! The pipeline has two halves. First, a truncated Fourier surrogate is built
//! from corner and midpoint seeds plus samples drawn on geodesic circles of
//! the evolving surrogate graph, keeping only samples the current model
//! mispredicts. Second, the finished surrogate induces a conformal metric
//! `exp(beta * f) * delta` on the domain; evolving that metric against the
//! smoothing direction concentrates curvature at the sought extremum until it
//! pinches off, and the pinch locations are reported as candidate optima.

pub mod bench;
pub mod bounds;
pub mod config;
pub mod domain;
pub mod error;
pub mod flow;
pub mod fourier;
pub mod grid;
pub mod pipeline;
pub mod samples;
pub mod sampling;
pub mod tables;

pub use bench::{Benchmark, BenchmarkSpec, NoiseModel};
pub use domain::Domain;
pub use error::{Error, Result};
pub use fourier::{ErrorReport, FourierSurrogate};
pub use samples::{Provenance, Sample, SampleSet};

/// SplitMix64 fan-out of one master seed into per-purpose stream seeds, so
/// sampling, circle rotation and value noise stay decorrelated but
/// reproducible.
pub fn stream_seed(master: u64, stream: u64) -> u64 {
    let mut z = master ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
