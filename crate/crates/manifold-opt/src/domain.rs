//! Rectangular domains: products of closed intervals, one per dimension.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A product of closed intervals `[lo, hi]`, serialized as a JSON array of
/// `[lo, hi]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Domain(pub Vec<[f64; 2]>);

impl Domain {
    pub fn new(intervals: Vec<[f64; 2]>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::InvalidParameter("domain has no dimensions".into()));
        }
        for (d, iv) in intervals.iter().enumerate() {
            if !(iv[0] < iv[1]) {
                return Err(Error::InvalidParameter(format!(
                    "degenerate interval [{}, {}] in dimension {d}",
                    iv[0], iv[1]
                )));
            }
        }
        Ok(Domain(intervals))
    }

    /// Square domain `[lo, hi]^n`.
    pub fn square(lo: f64, hi: f64, n: usize) -> Self {
        Domain(vec![[lo, hi]; n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn lo(&self, d: usize) -> f64 {
        self.0[d][0]
    }

    pub fn hi(&self, d: usize) -> f64 {
        self.0[d][1]
    }

    pub fn width(&self, d: usize) -> f64 {
        self.0[d][1] - self.0[d][0]
    }

    pub fn midpoint(&self) -> Vec<f64> {
        self.0.iter().map(|iv| 0.5 * (iv[0] + iv[1])).collect()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(&self.0)
                .all(|(&xi, iv)| xi >= iv[0] && xi <= iv[1])
    }

    pub fn clamp(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(&self.0)
            .map(|(&xi, iv)| xi.clamp(iv[0], iv[1]))
            .collect()
    }

    /// All `2^n` corner points, in odometer order (last dimension fastest).
    pub fn corners(&self) -> Vec<Vec<f64>> {
        let n = self.dim();
        let mut out = Vec::with_capacity(1 << n);
        for mask in 0..(1usize << n) {
            let corner = (0..n)
                .map(|d| {
                    if mask >> (n - 1 - d) & 1 == 0 {
                        self.lo(d)
                    } else {
                        self.hi(d)
                    }
                })
                .collect();
            out.push(corner);
        }
        out
    }

    /// Zoomed copy: a box of the given half-widths around `center`, clamped so
    /// it stays inside `self`.
    pub fn zoom(&self, center: &[f64], half_widths: &[f64]) -> Result<Domain> {
        if center.len() != self.dim() || half_widths.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: center.len(),
            });
        }
        let intervals = (0..self.dim())
            .map(|d| {
                let h = half_widths[d].abs().min(0.5 * self.width(d));
                let mut lo = center[d] - h;
                let mut hi = center[d] + h;
                if lo < self.lo(d) {
                    hi += self.lo(d) - lo;
                    lo = self.lo(d);
                }
                if hi > self.hi(d) {
                    lo -= hi - self.hi(d);
                    hi = self.hi(d);
                }
                [lo, hi]
            })
            .collect();
        Domain::new(intervals)
    }
}
