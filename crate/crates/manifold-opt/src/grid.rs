//! 2-D rasters: endpoint-inclusive uniform grids over a rectangular domain.

use serde::{Deserialize, Serialize};

use crate::domain::Domain;
use crate::error::{Error, Result};

/// Geometry of an `nx x ny` endpoint-inclusive grid over a 2-D domain.
/// Index `(i, j)` maps to `(x0 + i*dx, y0 + j*dy)`; storage is row-major in
/// `j` (index = j*nx + i).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Raster2 {
    pub x0: f64,
    pub y0: f64,
    pub dx: f64,
    pub dy: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Raster2 {
    pub fn from_domain(domain: &Domain, nx: usize, ny: usize) -> Result<Self> {
        if domain.dim() != 2 {
            return Err(Error::UnsupportedDimension {
                expected: 2,
                got: domain.dim(),
            });
        }
        if nx < 3 || ny < 3 {
            return Err(Error::InvalidParameter(format!(
                "raster needs at least 3 points per dimension, got {nx} x {ny}"
            )));
        }
        Ok(Raster2 {
            x0: domain.lo(0),
            y0: domain.lo(1),
            dx: domain.width(0) / (nx - 1) as f64,
            dy: domain.width(1) / (ny - 1) as f64,
            nx,
            ny,
        })
    }

    pub fn square(domain: &Domain, resolution: usize) -> Result<Self> {
        Self::from_domain(domain, resolution, resolution)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    #[inline]
    pub fn y(&self, j: usize) -> f64 {
        self.y0 + j as f64 * self.dy
    }

    pub fn point(&self, i: usize, j: usize) -> [f64; 2] {
        [self.x(i), self.y(j)]
    }

    /// Grid cell nearest to `(x, y)`, clamped to the raster.
    pub fn nearest(&self, x: f64, y: f64) -> (usize, usize) {
        let i = ((x - self.x0) / self.dx).round().clamp(0.0, (self.nx - 1) as f64) as usize;
        let j = ((y - self.y0) / self.dy).round().clamp(0.0, (self.ny - 1) as f64) as usize;
        (i, j)
    }

    pub fn on_boundary(&self, i: usize, j: usize) -> bool {
        i == 0 || j == 0 || i == self.nx - 1 || j == self.ny - 1
    }

    /// Bilinear interpolation of `values` (laid out per `idx`) at `(x, y)`.
    /// Returns `None` outside the raster.
    pub fn interp(&self, values: &[f64], x: f64, y: f64) -> Option<f64> {
        let fx = (x - self.x0) / self.dx;
        let fy = (y - self.y0) / self.dy;
        if fx < 0.0 || fy < 0.0 || fx > (self.nx - 1) as f64 || fy > (self.ny - 1) as f64 {
            return None;
        }
        let i0 = (fx.floor() as usize).min(self.nx - 2);
        let j0 = (fy.floor() as usize).min(self.ny - 2);
        let tx = fx - i0 as f64;
        let ty = fy - j0 as f64;
        let v00 = values[self.idx(i0, j0)];
        let v10 = values[self.idx(i0 + 1, j0)];
        let v01 = values[self.idx(i0, j0 + 1)];
        let v11 = values[self.idx(i0 + 1, j0 + 1)];
        Some(v00 * (1.0 - tx) * (1.0 - ty) + v10 * tx * (1.0 - ty) + v01 * (1.0 - tx) * ty + v11 * tx * ty)
    }
}
