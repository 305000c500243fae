//! Truncated multivariate Fourier surrogates.
//!
//! A surrogate of order `M` over an `n`-dimensional box stores one complex
//! coefficient per frequency multi-index `k` in the full cube `{-M..M}^n`
//! ((2M+1)^n entries). The fundamental frequency in each dimension is
//! `omega_d = 2*pi / width_d`, so the box spans exactly one period; values are
//! `Re( sum_k a_k * exp(i * sum_d k_d omega_d (x_d - lo_d)) )`.
//!
//! Two estimators are provided: the plain Monte-Carlo average (exact discrete
//! orthogonality on uniform full-period grids, biased for scattered points)
//! and a ridge-regularized least-squares fit in the equivalent real
//! trigonometric basis, which is the default path for scattered samples.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::grid::Raster2;
use crate::samples::SampleSet;

/// Quality of a surrogate against a reference truth on a uniform grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub mae: f64,
    pub mse: f64,
    pub r_squared: f64,
    pub max_abs_error: f64,
    /// Number of samples the surrogate was fitted from (0 when not known at
    /// measurement time; build pipelines fill it in).
    pub n_samples: usize,
    /// Evaluation grid resolution per dimension.
    pub resolution: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FourierSurrogate {
    order: usize,
    domain: Domain,
    omega: Vec<f64>,
    /// Full cube `{-M..M}^n`, odometer order, dimension 0 slowest.
    coeffs: Vec<Complex64>,
}

impl FourierSurrogate {
    pub fn from_coefficients(
        order: usize,
        domain: Domain,
        coeffs: Vec<Complex64>,
    ) -> Result<Self> {
        let n = domain.dim();
        let expect = cube_len(order, n);
        if coeffs.len() != expect {
            return Err(Error::InvalidParameter(format!(
                "coefficient map must have (2M+1)^n = {expect} entries, got {}",
                coeffs.len()
            )));
        }
        let omega = (0..n).map(|d| TAU / domain.width(d)).collect();
        Ok(FourierSurrogate {
            order,
            domain,
            omega,
            coeffs,
        })
    }

    /// Surrogate that is identically `value`.
    pub fn constant(order: usize, domain: Domain, value: f64) -> Self {
        let n = domain.dim();
        let mut coeffs = vec![Complex64::ZERO; cube_len(order, n)];
        let center = coeffs.len() / 2; // all-zero multi-index
        coeffs[center] = Complex64::new(value, 0.0);
        Self::from_coefficients(order, domain, coeffs).expect("lengths match")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient for a multi-index, e.g. `&[1, -2]`.
    pub fn coefficient(&self, k: &[i64]) -> Option<Complex64> {
        if k.len() != self.dim() || k.iter().any(|kd| kd.unsigned_abs() as usize > self.order) {
            return None;
        }
        Some(self.coeffs[self.lin_index(k)])
    }

    fn lin_index(&self, k: &[i64]) -> usize {
        let size = 2 * self.order + 1;
        let mut lin = 0usize;
        for kd in k {
            lin = lin * size + (kd + self.order as i64) as usize;
        }
        lin
    }

    /// Largest deviation from Hermitian symmetry, `max |a_{-k} - conj(a_k)|`.
    pub fn hermitian_defect(&self) -> f64 {
        let total = self.coeffs.len();
        let mut worst = 0.0f64;
        for lin in 0..total {
            let mirror = total - 1 - lin;
            let d = (self.coeffs[mirror] - self.coeffs[lin].conj()).norm();
            worst = worst.max(d);
        }
        worst
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(())
    }

    fn phase_tables(&self, x: &[f64]) -> Vec<Vec<Complex64>> {
        (0..self.dim())
            .map(|d| phase_table(self.order, self.omega[d] * (x[d] - self.domain.lo(d))))
            .collect()
    }

    /// The full complex sum; imaginary part vanishes under Hermitian symmetry.
    pub fn eval_complex(&self, x: &[f64]) -> Result<Complex64> {
        self.check_dim(x)?;
        let tables = self.phase_tables(x);
        let size = 2 * self.order + 1;
        let n = self.dim();
        let mut digits = vec![0usize; n];
        let mut sum = Complex64::ZERO;
        for (lin, &a) in self.coeffs.iter().enumerate() {
            let mut p = Complex64::ONE;
            for d in 0..n {
                p *= tables[d][digits[d]];
            }
            sum += a * p;
            if lin + 1 < self.coeffs.len() {
                advance(&mut digits, size);
            }
        }
        Ok(sum)
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        Ok(self.eval_complex(x)?.re)
    }

    /// Analytic gradient, term by term.
    pub fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(x)?;
        let tables = self.phase_tables(x);
        let size = 2 * self.order + 1;
        let n = self.dim();
        let m = self.order as i64;
        let mut digits = vec![0usize; n];
        let mut grad = vec![Complex64::ZERO; n];
        for (lin, &a) in self.coeffs.iter().enumerate() {
            let mut p = Complex64::ONE;
            for d in 0..n {
                p *= tables[d][digits[d]];
            }
            let ap = a * p;
            for d in 0..n {
                let kd = digits[d] as i64 - m;
                // d/dx_d contributes i * k_d * omega_d per term
                grad[d] += ap * Complex64::new(0.0, kd as f64 * self.omega[d]);
            }
            if lin + 1 < self.coeffs.len() {
                advance(&mut digits, size);
            }
        }
        Ok(grad.into_iter().map(|g| g.re).collect())
    }

    /// Evaluates the surrogate on every node of a 2-D raster (row-major in j).
    /// Separable partial sums make this much cheaper than per-point `eval`.
    pub fn eval_raster(&self, raster: &Raster2) -> Result<Vec<f64>> {
        if self.dim() != 2 {
            return Err(Error::UnsupportedDimension {
                expected: 2,
                got: self.dim(),
            });
        }
        let size = 2 * self.order + 1;
        let x_tables: Vec<Vec<Complex64>> = (0..raster.nx)
            .map(|i| phase_table(self.order, self.omega[0] * (raster.x(i) - self.domain.lo(0))))
            .collect();
        let mut out = vec![0.0; raster.len()];
        let mut partial = vec![Complex64::ZERO; size];
        for j in 0..raster.ny {
            let y_table =
                phase_table(self.order, self.omega[1] * (raster.y(j) - self.domain.lo(1)));
            for t0 in 0..size {
                let row = &self.coeffs[t0 * size..(t0 + 1) * size];
                let mut acc = Complex64::ZERO;
                for (t1, &a) in row.iter().enumerate() {
                    acc += a * y_table[t1];
                }
                partial[t0] = acc;
            }
            for i in 0..raster.nx {
                let tx = &x_tables[i];
                let mut acc = Complex64::ZERO;
                for t0 in 0..size {
                    acc += partial[t0] * tx[t0];
                }
                out[raster.idx(i, j)] = acc.re;
            }
        }
        Ok(out)
    }
}

fn cube_len(order: usize, n: usize) -> usize {
    (2 * order + 1).pow(n as u32)
}

fn advance(digits: &mut [usize], size: usize) {
    for d in (0..digits.len()).rev() {
        digits[d] += 1;
        if digits[d] < size {
            return;
        }
        digits[d] = 0;
    }
}

/// `table[M + j] = exp(i j theta)` for `j in -M..=M`; negative entries are
/// exact conjugate mirrors, which keeps estimators Hermitian to the bit.
fn phase_table(order: usize, theta: f64) -> Vec<Complex64> {
    let mut t = vec![Complex64::ONE; 2 * order + 1];
    let base = Complex64::from_polar(1.0, theta);
    for j in 1..=order {
        t[order + j] = t[order + j - 1] * base;
        t[order - j] = t[order + j].conj();
    }
    t
}

/// Plain Monte-Carlo coefficient estimate: `a_k = (1/N) sum_i y_i e^{-i k.theta_i}`.
/// Exact for band-limited truth on uniform full-period grids with at least
/// `2M+1` points per dimension; biased for non-uniform sample locations.
pub fn estimate_coefficients_mc(
    samples: &SampleSet,
    order: usize,
    domain: &Domain,
) -> Result<FourierSurrogate> {
    if samples.is_empty() {
        return Err(Error::EmptySampleSet);
    }
    let n = domain.dim();
    let size = 2 * order + 1;
    let omega: Vec<f64> = (0..n).map(|d| TAU / domain.width(d)).collect();
    let mut coeffs = vec![Complex64::ZERO; cube_len(order, n)];
    for s in samples.iter() {
        if s.location.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: s.location.len(),
            });
        }
        let tables: Vec<Vec<Complex64>> = (0..n)
            .map(|d| phase_table(order, omega[d] * (s.location[d] - domain.lo(d))))
            .collect();
        let mut digits = vec![0usize; n];
        for (lin, c) in coeffs.iter_mut().enumerate() {
            let mut p = Complex64::ONE;
            for d in 0..n {
                p *= tables[d][digits[d]];
            }
            *c += s.value * p.conj();
            if lin + 1 < cube_len(order, n) {
                advance(&mut digits, size);
            }
        }
    }
    let inv_n = 1.0 / samples.len() as f64;
    for c in &mut coeffs {
        *c *= inv_n;
    }
    FourierSurrogate::from_coefficients(order, domain.clone(), coeffs)
}

/// Multi-indices `k` with positive leading nonzero component; together with
/// their mirrors and `k = 0` they cover the cube.
fn half_indices(order: usize, n: usize) -> Vec<Vec<i64>> {
    let m = order as i64;
    let size = 2 * order + 1;
    let total = cube_len(order, n);
    let mut out = Vec::with_capacity((total - 1) / 2);
    let mut digits = vec![0usize; n];
    for lin in 0..total {
        let k: Vec<i64> = digits.iter().map(|&t| t as i64 - m).collect();
        if let Some(&lead) = k.iter().find(|&&kd| kd != 0) {
            if lead > 0 {
                out.push(k);
            }
        }
        if lin + 1 < total {
            advance(&mut digits, size);
        }
    }
    out
}

/// Ridge-regularized least squares over Hermitian-symmetric coefficient maps,
/// i.e. ordinary least squares in the real basis `1, cos(k.theta), sin(k.theta)`.
/// The penalty is `ridge * sum_k |a_k|^2` over the full cube. With `ridge = 0`
/// a rank-deficient system is reported as ill-conditioned.
pub fn fit_coefficients_ls(
    samples: &SampleSet,
    order: usize,
    domain: &Domain,
    ridge: f64,
) -> Result<FourierSurrogate> {
    if samples.is_empty() {
        return Err(Error::EmptySampleSet);
    }
    if !(ridge >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "ridge must be >= 0, got {ridge}"
        )));
    }
    let n = domain.dim();
    let omega: Vec<f64> = (0..n).map(|d| TAU / domain.width(d)).collect();
    let half = half_indices(order, n);
    let p = 1 + 2 * half.len();
    let n_samples = samples.len();

    let mut design = DMatrix::<f64>::zeros(n_samples, p);
    let mut rhs = DVector::<f64>::zeros(n_samples);
    for (row, s) in samples.iter().enumerate() {
        if s.location.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: s.location.len(),
            });
        }
        design[(row, 0)] = 1.0;
        for (h, k) in half.iter().enumerate() {
            let theta: f64 = (0..n)
                .map(|d| k[d] as f64 * omega[d] * (s.location[d] - domain.lo(d)))
                .sum();
            design[(row, 1 + 2 * h)] = theta.cos();
            design[(row, 2 + 2 * h)] = theta.sin();
        }
        rhs[row] = s.value;
    }

    let mut gram = design.transpose() * &design;
    let atb = design.transpose() * rhs;
    if ridge > 0.0 {
        // |a_0|^2 = c_0^2, and each +-k pair contributes (cos^2 + sin^2)/2.
        gram[(0, 0)] += ridge;
        for c in 1..p {
            gram[(c, c)] += 0.5 * ridge;
        }
    }
    let chol = gram
        .cholesky()
        .ok_or(Error::IllConditioned { ridge })?;
    let solution = chol.solve(&atb);

    let mut coeffs = vec![Complex64::ZERO; cube_len(order, n)];
    let center = coeffs.len() / 2;
    coeffs[center] = Complex64::new(solution[0], 0.0);
    let m = order as i64;
    let size = 2 * order + 1;
    for (h, k) in half.iter().enumerate() {
        let alpha = solution[1 + 2 * h];
        let beta = solution[2 + 2 * h];
        let a = Complex64::new(0.5 * alpha, -0.5 * beta);
        let mut lin = 0usize;
        let mut mirror = 0usize;
        for &kd in k {
            lin = lin * size + (kd + m) as usize;
            mirror = mirror * size + (-kd + m) as usize;
        }
        coeffs[lin] = a;
        coeffs[mirror] = a.conj();
    }
    FourierSurrogate::from_coefficients(order, domain.clone(), coeffs)
}

/// Endpoint-exclusive uniform grid `x_j = lo + j*width/per_dim`, `j < per_dim`,
/// in odometer order. On this grid the discrete exponentials are exactly
/// orthogonal, which is what the Monte-Carlo estimator needs for band-limited
/// recovery.
pub fn uniform_grid(domain: &Domain, per_dim: usize) -> Vec<Vec<f64>> {
    let n = domain.dim();
    let total = per_dim.pow(n as u32);
    let mut out = Vec::with_capacity(total);
    let mut digits = vec![0usize; n];
    for lin in 0..total {
        out.push(
            (0..n)
                .map(|d| domain.lo(d) + digits[d] as f64 * domain.width(d) / per_dim as f64)
                .collect(),
        );
        if lin + 1 < total {
            advance(&mut digits, per_dim);
        }
    }
    out
}

/// Endpoint-inclusive evaluation grid with `per_dim` points per dimension.
pub fn evaluation_grid(domain: &Domain, per_dim: usize) -> Vec<Vec<f64>> {
    let n = domain.dim();
    let total = per_dim.pow(n as u32);
    let mut out = Vec::with_capacity(total);
    let mut digits = vec![0usize; n];
    let steps = (per_dim - 1).max(1) as f64;
    for lin in 0..total {
        out.push(
            (0..n)
                .map(|d| domain.lo(d) + digits[d] as f64 * domain.width(d) / steps)
                .collect(),
        );
        if lin + 1 < total {
            advance(&mut digits, per_dim);
        }
    }
    out
}

/// MAE / MSE / R^2 / max error of the surrogate against `truth` on a uniform
/// endpoint-inclusive grid with `resolution` points per dimension.
pub fn approximation_error(
    surrogate: &FourierSurrogate,
    truth: impl Fn(&[f64]) -> f64,
    resolution: usize,
) -> Result<ErrorReport> {
    if resolution < 2 {
        return Err(Error::InvalidParameter(format!(
            "evaluation resolution must be >= 2, got {resolution}"
        )));
    }
    let domain = surrogate.domain();
    let points = evaluation_grid(domain, resolution);
    let truth_vals: Vec<f64> = points.iter().map(|x| truth(x)).collect();
    let approx_vals: Vec<f64> = if surrogate.dim() == 2 && resolution >= 3 {
        // Raster order is j-major over (i, j) = (dim 0, dim 1) while the
        // odometer grid is dim-0 slowest; transpose to match.
        let raster = Raster2::square(domain, resolution)?;
        let grid = surrogate.eval_raster(&raster)?;
        let mut v = vec![0.0; grid.len()];
        for i in 0..resolution {
            for j in 0..resolution {
                v[i * resolution + j] = grid[raster.idx(i, j)];
            }
        }
        v
    } else {
        points
            .iter()
            .map(|x| surrogate.eval(x))
            .collect::<Result<_>>()?
    };

    let n_points = truth_vals.len() as f64;
    let mean_truth = truth_vals.iter().sum::<f64>() / n_points;
    let mut abs_sum = 0.0;
    let mut sq_sum = 0.0;
    let mut max_abs = 0.0f64;
    let mut ss_tot = 0.0;
    for (&t, &a) in truth_vals.iter().zip(&approx_vals) {
        let e = t - a;
        abs_sum += e.abs();
        sq_sum += e * e;
        max_abs = max_abs.max(e.abs());
        ss_tot += (t - mean_truth).powi(2);
    }
    if ss_tot <= 1e-28 * n_points * (1.0 + mean_truth * mean_truth) {
        return Err(Error::DegenerateVariance);
    }
    Ok(ErrorReport {
        mae: abs_sum / n_points,
        mse: sq_sum / n_points,
        r_squared: 1.0 - sq_sum / ss_tot,
        max_abs_error: max_abs,
        n_samples: 0,
        resolution,
    })
}

// --- serialization: {order, domain, omega, coefficients: [[k...], re, im]} ---

#[derive(Serialize, Deserialize)]
struct SurrogateRepr {
    order: usize,
    domain: Domain,
    omega: Vec<f64>,
    coefficients: Vec<(Vec<i64>, f64, f64)>,
}

impl Serialize for FourierSurrogate {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let size = 2 * self.order + 1;
        let n = self.dim();
        let m = self.order as i64;
        let mut digits = vec![0usize; n];
        let mut coefficients = Vec::with_capacity(self.coeffs.len());
        for (lin, a) in self.coeffs.iter().enumerate() {
            let k: Vec<i64> = digits.iter().map(|&t| t as i64 - m).collect();
            coefficients.push((k, a.re, a.im));
            if lin + 1 < self.coeffs.len() {
                advance(&mut digits, size);
            }
        }
        SurrogateRepr {
            order: self.order,
            domain: self.domain.clone(),
            omega: self.omega.clone(),
            coefficients,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FourierSurrogate {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let repr = SurrogateRepr::deserialize(deserializer)?;
        let n = repr.domain.dim();
        let total = cube_len(repr.order, n);
        if repr.coefficients.len() != total {
            return Err(D::Error::custom(format!(
                "expected {total} coefficients, got {}",
                repr.coefficients.len()
            )));
        }
        let size = 2 * repr.order + 1;
        let m = repr.order as i64;
        let mut coeffs = vec![None; total];
        for (k, re, im) in repr.coefficients {
            if k.len() != n || k.iter().any(|kd| kd.unsigned_abs() as usize > repr.order) {
                return Err(D::Error::custom(format!("multi-index {k:?} out of range")));
            }
            let mut lin = 0usize;
            for kd in &k {
                lin = lin * size + (kd + m) as usize;
            }
            if coeffs[lin].replace(Complex64::new(re, im)).is_some() {
                return Err(D::Error::custom(format!("duplicate multi-index {k:?}")));
            }
        }
        let coeffs: Vec<Complex64> = coeffs
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| D::Error::custom("coefficient map does not cover the index cube"))?;
        FourierSurrogate::from_coefficients(repr.order, repr.domain, coeffs)
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::{Provenance, Sample};
    use approx::assert_abs_diff_eq;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sample_at(x: Vec<f64>, value: f64) -> Sample {
        Sample {
            location: x,
            value,
            provenance: Provenance::Stochastic,
        }
    }

    fn scattered_samples<F: Fn(&[f64]) -> f64>(
        domain: &Domain,
        count: usize,
        seed: u64,
        f: F,
    ) -> SampleSet {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let x: Vec<f64> = (0..domain.dim())
                    .map(|d| rng.random_range(domain.lo(d)..domain.hi(d)))
                    .collect();
                let v = f(&x);
                sample_at(x, v)
            })
            .collect()
    }

    #[test]
    fn constant_series_evaluates_to_constant() {
        let s = FourierSurrogate::constant(3, Domain::square(-2.0, 2.0, 2), 5.0);
        for x in [[0.0, 0.0], [1.3, -1.9], [2.0, 2.0]] {
            assert_abs_diff_eq!(s.eval(&x).unwrap(), 5.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn cosine_pair_is_a_cosine() {
        // 1-D, a_{+1} = a_{-1} = 1/2 -> F(x) = cos(omega x').
        let domain = Domain::new(vec![[1.0, 3.0]]).unwrap();
        let mut coeffs = vec![Complex64::ZERO; 3];
        coeffs[0] = Complex64::new(0.5, 0.0);
        coeffs[2] = Complex64::new(0.5, 0.0);
        let s = FourierSurrogate::from_coefficients(1, domain, coeffs).unwrap();
        let omega = s.omega()[0];
        assert_abs_diff_eq!(s.eval(&[1.0]).unwrap(), 1.0, epsilon = 1e-14);
        for x in [1.2, 1.9, 2.7] {
            assert_abs_diff_eq!(
                s.eval(&[x]).unwrap(),
                (omega * (x - 1.0)).cos(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn complex_sum_is_real_under_hermitian_symmetry() {
        let domain = Domain::square(-1.0, 1.0, 2);
        let samples = scattered_samples(&domain, 60, 1, |x| (x[0] * 2.1).sin() + x[1]);
        let s = fit_coefficients_ls(&samples, 3, &domain, 1e-10).unwrap();
        assert!(s.hermitian_defect() <= 1e-12);
        // Independent full-complex-sum oracle, naive loop over the cube.
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let x = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
            let m = s.order() as i64;
            let mut oracle = Complex64::ZERO;
            for k0 in -m..=m {
                for k1 in -m..=m {
                    let a = s.coefficient(&[k0, k1]).unwrap();
                    let theta = k0 as f64 * s.omega()[0] * (x[0] + 1.0)
                        + k1 as f64 * s.omega()[1] * (x[1] + 1.0);
                    oracle += a * Complex64::from_polar(1.0, theta);
                }
            }
            let got = s.eval_complex(&x).unwrap();
            assert!(got.im.abs() <= 1e-12, "imaginary residue {}", got.im);
            assert_abs_diff_eq!(got.re, oracle.re, epsilon = 1e-10);
        }
    }

    #[test]
    fn mc_constant_on_uniform_grid_recovers_only_a0() {
        let domain = Domain::square(0.0, 1.0, 2);
        let samples: SampleSet = uniform_grid(&domain, 7)
            .into_iter()
            .map(|x| sample_at(x, 5.0))
            .collect();
        let s = estimate_coefficients_mc(&samples, 2, &domain).unwrap();
        for k0 in -2i64..=2 {
            for k1 in -2i64..=2 {
                let a = s.coefficient(&[k0, k1]).unwrap();
                if k0 == 0 && k1 == 0 {
                    assert_abs_diff_eq!(a.re, 5.0, epsilon = 1e-12);
                    assert_abs_diff_eq!(a.im, 0.0, epsilon = 1e-12);
                } else {
                    assert!(a.norm() <= 1e-12, "a[{k0},{k1}] = {a}");
                }
            }
        }
    }

    #[test]
    fn mc_single_sample_matches_closed_form() {
        // N = 1: a_k = y * exp(-i k omega x').
        let domain = Domain::new(vec![[0.0, 2.0]]).unwrap();
        let x0 = 0.7;
        let y = -1.3;
        let samples: SampleSet = std::iter::once(sample_at(vec![x0], y)).collect();
        let s = estimate_coefficients_mc(&samples, 3, &domain).unwrap();
        for k in -3i64..=3 {
            let expect = y * Complex64::from_polar(1.0, -(k as f64) * s.omega()[0] * x0);
            let got = s.coefficient(&[k]).unwrap();
            assert!((got - expect).norm() <= 1e-12);
        }
    }

    #[test]
    fn mc_recovers_cosine_coefficients_on_uniform_grid() {
        let domain = Domain::new(vec![[0.0, 4.0]]).unwrap();
        let omega = TAU / 4.0;
        let grid = uniform_grid(&domain, 9); // >= 2M+1 = 7
        let samples: SampleSet = grid
            .into_iter()
            .map(|x| {
                let v = (omega * x[0]).cos();
                sample_at(x, v)
            })
            .collect();

        // Independent direct-sum oracle for a_{+1}, computed from scratch.
        let mut oracle = Complex64::ZERO;
        for s in samples.iter() {
            oracle += s.value * Complex64::from_polar(1.0, -omega * s.location[0]);
        }
        oracle /= samples.len() as f64;
        assert_abs_diff_eq!(oracle.re, 0.5, epsilon = 1e-12);

        let s = estimate_coefficients_mc(&samples, 3, &domain).unwrap();
        for k in -3i64..=3 {
            let a = s.coefficient(&[k]).unwrap();
            match k {
                1 | -1 => {
                    assert_abs_diff_eq!(a.re, 0.5, epsilon = 1e-12);
                    assert!(a.im.abs() <= 1e-12);
                }
                _ => assert!(a.norm() <= 1e-12),
            }
        }
    }

    #[test]
    fn ls_generate_then_fit_round_trip() {
        let domain = Domain::square(-2.0, 2.0, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let order = 2;
        // Random Hermitian coefficient cube via a random real parameter fit.
        let truth = {
            let samples = scattered_samples(&domain, 80, 12, |x| {
                (1.7 * x[0]).sin() + (0.9 * x[1]).cos() + 0.3 * x[0] * x[1]
            });
            fit_coefficients_ls(&samples, order, &domain, 1e-9).unwrap()
        };
        let samples: SampleSet = (0..60)
            .map(|_| {
                let x: Vec<f64> = (0..2).map(|_| rng.random_range(-2.0..2.0)).collect();
                let v = truth.eval(&x).unwrap();
                sample_at(x, v)
            })
            .collect();
        let fitted = fit_coefficients_ls(&samples, order, &domain, 0.0).unwrap();
        for (a, b) in truth.coefficients().iter().zip(fitted.coefficients()) {
            assert!((a - b).norm() <= 1e-8, "coefficient drift {}", (a - b).norm());
        }
    }

    #[test]
    fn ls_constant_data_yields_constant_term() {
        let domain = Domain::square(0.0, 1.0, 2);
        let samples = scattered_samples(&domain, 60, 3, |_| 4.25);
        let s = fit_coefficients_ls(&samples, 3, &domain, 0.0).unwrap();
        assert_abs_diff_eq!(s.coefficient(&[0, 0]).unwrap().re, 4.25, epsilon = 1e-9);
        for (lin, a) in s.coefficients().iter().enumerate() {
            if lin != s.coefficients().len() / 2 {
                assert!(a.norm() <= 1e-9);
            }
        }
    }

    #[test]
    fn ls_huge_ridge_shrinks_everything() {
        let domain = Domain::square(0.0, 1.0, 1);
        let samples = scattered_samples(&domain, 40, 4, |x| 3.0 * x[0]);
        let s = fit_coefficients_ls(&samples, 3, &domain, 1e12).unwrap();
        for a in s.coefficients() {
            assert!(a.norm() < 1e-9);
        }
    }

    #[test]
    fn ls_rank_deficient_without_ridge_is_reported() {
        let domain = Domain::square(0.0, 1.0, 2);
        let samples = scattered_samples(&domain, 3, 5, |x| x[0]);
        match fit_coefficients_ls(&samples, 3, &domain, 0.0) {
            Err(Error::IllConditioned { .. }) => {}
            other => panic!("expected ill-conditioned, got {other:?}"),
        }
        // The same system solves once a ridge is supplied.
        assert!(fit_coefficients_ls(&samples, 3, &domain, 1e-8).is_ok());
    }

    #[test]
    fn gradient_constant_is_zero_and_cosine_matches_analytic() {
        let s = FourierSurrogate::constant(2, Domain::square(-1.0, 1.0, 2), 7.0);
        assert_eq!(s.gradient(&[0.3, -0.4]).unwrap(), vec![0.0, 0.0]);

        let domain = Domain::new(vec![[0.0, 2.0]]).unwrap();
        let mut coeffs = vec![Complex64::ZERO; 3];
        coeffs[0] = Complex64::new(0.5, 0.0);
        coeffs[2] = Complex64::new(0.5, 0.0);
        let c = FourierSurrogate::from_coefficients(1, domain, coeffs).unwrap();
        let omega = c.omega()[0];
        assert_abs_diff_eq!(c.gradient(&[0.0]).unwrap()[0], 0.0, epsilon = 1e-12);
        // Quarter period: d/dx cos(omega x) = -omega at omega x = pi/2.
        assert_abs_diff_eq!(c.gradient(&[0.5]).unwrap()[0], -omega, epsilon = 1e-12);
    }

    #[test]
    fn gradient_matches_central_differences() {
        let domain = Domain::square(-2.0, 2.0, 2);
        let samples = scattered_samples(&domain, 90, 6, |x| {
            (x[0] * 1.3).sin() * (x[1] * 0.7).cos() + x[0]
        });
        let s = fit_coefficients_ls(&samples, 3, &domain, 1e-9).unwrap();
        let h = 1e-5;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let x = [rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5)];
            let g = s.gradient(&x).unwrap();
            for d in 0..2 {
                let mut xp = x;
                let mut xm = x;
                xp[d] += h;
                xm[d] -= h;
                let fd = (s.eval(&xp).unwrap() - s.eval(&xm).unwrap()) / (2.0 * h);
                let scale = g[d].abs().max(1.0);
                assert!(
                    (g[d] - fd).abs() / scale <= 1e-4,
                    "dim {d}: analytic {} vs fd {fd}",
                    g[d]
                );
            }
        }
    }

    #[test]
    fn eval_raster_agrees_with_pointwise_eval() {
        let domain = Domain::square(-3.0, 1.0, 2);
        let samples = scattered_samples(&domain, 70, 8, |x| x[0] * x[0] - x[1]);
        let s = fit_coefficients_ls(&samples, 2, &domain, 1e-9).unwrap();
        let raster = Raster2::square(&domain, 17).unwrap();
        let grid = s.eval_raster(&raster).unwrap();
        for j in 0..raster.ny {
            for i in 0..raster.nx {
                let direct = s.eval(&[raster.x(i), raster.y(j)]).unwrap();
                assert_abs_diff_eq!(grid[raster.idx(i, j)], direct, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn self_comparison_report_is_perfect() {
        let domain = Domain::square(-1.0, 1.0, 2);
        let samples = scattered_samples(&domain, 50, 9, |x| x[0] + 2.0 * x[1]);
        let s = fit_coefficients_ls(&samples, 2, &domain, 1e-9).unwrap();
        let report = approximation_error(&s, |x| s.eval(x).unwrap(), 41).unwrap();
        assert!(report.mae <= 1e-12);
        assert!(report.mse <= 1e-24);
        assert_abs_diff_eq!(report.r_squared, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn report_matches_independent_two_pass_oracle() {
        let domain = Domain::square(-2.0, 2.0, 2);
        let truth = |x: &[f64]| x[0] * x[0] + x[1];
        let samples = scattered_samples(&domain, 120, 10, truth);
        let s = fit_coefficients_ls(&samples, 3, &domain, 1e-8).unwrap();
        let res = 33;
        let report = approximation_error(&s, truth, res).unwrap();

        // Brute-force two-pass recomputation, independent of the library path.
        let pts = evaluation_grid(&domain, res);
        let t: Vec<f64> = pts.iter().map(|x| truth(x)).collect();
        let a: Vec<f64> = pts.iter().map(|x| s.eval(x).unwrap()).collect();
        let mean = t.iter().sum::<f64>() / t.len() as f64;
        let mae = t.iter().zip(&a).map(|(t, a)| (t - a).abs()).sum::<f64>() / t.len() as f64;
        let mse = t.iter().zip(&a).map(|(t, a)| (t - a) * (t - a)).sum::<f64>() / t.len() as f64;
        let maxe = t
            .iter()
            .zip(&a)
            .map(|(t, a)| (t - a).abs())
            .fold(0.0f64, f64::max);
        let ss_res = mse * t.len() as f64;
        let ss_tot = t.iter().map(|t| (t - mean) * (t - mean)).sum::<f64>();
        assert_abs_diff_eq!(report.mae, mae, epsilon = 1e-12);
        assert_abs_diff_eq!(report.mse, mse, epsilon = 1e-12);
        assert_abs_diff_eq!(report.max_abs_error, maxe, epsilon = 1e-12);
        assert_abs_diff_eq!(report.r_squared, 1.0 - ss_res / ss_tot, epsilon = 1e-12);
    }

    #[test]
    fn zero_variance_truth_is_degenerate() {
        let s = FourierSurrogate::constant(1, Domain::square(0.0, 1.0, 2), 2.0);
        match approximation_error(&s, |_| 3.0, 11) {
            Err(Error::DegenerateVariance) => {}
            other => panic!("expected degenerate variance, got {other:?}"),
        }
    }

    #[test]
    fn evaluation_is_periodic_per_dimension() {
        let domain = Domain::new(vec![[-2.0, 2.0], [0.0, 10.0]]).unwrap();
        let samples = scattered_samples(&domain, 80, 13, |x| (x[0]).sin() + 0.1 * x[1]);
        let s = fit_coefficients_ls(&samples, 3, &domain, 1e-9).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..25 {
            let x = [rng.random_range(-2.0..2.0), rng.random_range(0.0..10.0)];
            let f = s.eval(&x).unwrap();
            for d in 0..2 {
                let mut shifted = x;
                shifted[d] += domain.width(d);
                assert_abs_diff_eq!(s.eval(&shifted).unwrap(), f, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn band_limited_truth_recovered_exactly_on_uniform_grid() {
        let domain = Domain::square(-1.0, 3.0, 2);
        let order = 3;
        let truth = {
            let samples = scattered_samples(&domain, 120, 15, |x| {
                (x[0] * 1.1).cos() + (x[1] * 0.6).sin()
            });
            fit_coefficients_ls(&samples, order, &domain, 1e-9).unwrap()
        };
        let grid = uniform_grid(&domain, 2 * order + 1);
        let samples: SampleSet = grid
            .into_iter()
            .map(|x| {
                let v = truth.eval(&x).unwrap();
                sample_at(x, v)
            })
            .collect();
        let recovered = estimate_coefficients_mc(&samples, order, &domain).unwrap();
        let check = evaluation_grid(&domain, 21);
        let mut worst = 0.0f64;
        for x in check {
            worst = worst.max((truth.eval(&x).unwrap() - recovered.eval(&x).unwrap()).abs());
        }
        assert!(worst <= 1e-8, "max grid error {worst}");
    }

    #[test]
    fn adding_a_sample_never_worsens_the_ls_objective() {
        // Optimality: the refit is at least as good on the extended set as
        // the previous coefficients were.
        let domain = Domain::square(-1.0, 1.0, 2);
        let ridge = 1e-8;
        let objective = |s: &FourierSurrogate, set: &SampleSet| -> f64 {
            let resid: f64 = set
                .iter()
                .map(|p| (s.eval(&p.location).unwrap() - p.value).powi(2))
                .sum();
            let pen: f64 = s.coefficients().iter().map(|a| a.norm_sqr()).sum();
            resid + ridge * pen
        };
        let f = |x: &[f64]| (2.0 * x[0]).sin() + x[1] * x[1];
        let mut set = scattered_samples(&domain, 30, 16, f);
        let mut fit = fit_coefficients_ls(&set, 3, &domain, ridge).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..5 {
            let x: Vec<f64> = (0..2).map(|_| rng.random_range(-1.0..1.0)).collect();
            let v = f(&x);
            set.push(sample_at(x, v));
            let refit = fit_coefficients_ls(&set, 3, &domain, ridge).unwrap();
            assert!(objective(&refit, &set) <= objective(&fit, &set) + 1e-9);
            fit = refit;
        }
    }

    #[test]
    fn max_error_non_increasing_over_nested_uniform_grids() {
        // Band-limited truth: doubling N on nested uniform grids cannot make
        // the recovery worse.
        let domain = Domain::square(0.0, 1.0, 2);
        let order = 2;
        let truth = {
            let samples = scattered_samples(&domain, 60, 18, |x| (x[0] * 3.0).sin() + x[1]);
            fit_coefficients_ls(&samples, order, &domain, 1e-9).unwrap()
        };
        let mut last = f64::INFINITY;
        for per_dim in [5usize, 10, 20, 40] {
            let samples: SampleSet = uniform_grid(&domain, per_dim)
                .into_iter()
                .map(|x| {
                    let v = truth.eval(&x).unwrap();
                    sample_at(x, v)
                })
                .collect();
            let rec = estimate_coefficients_mc(&samples, order, &domain).unwrap();
            let report = approximation_error(&rec, |x| truth.eval(x).unwrap(), 21).unwrap();
            assert!(report.max_abs_error <= last + 1e-12);
            last = report.max_abs_error;
        }
        assert!(last <= 1e-8);
    }

    #[test]
    fn json_round_trip_is_bit_faithful() {
        let domain = Domain::square(-2.0, 2.0, 2);
        let samples = scattered_samples(&domain, 60, 19, |x| (x[0] + 0.3).sin() * x[1]);
        let s = fit_coefficients_ls(&samples, 3, &domain, 1e-9).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        let back: FourierSurrogate = serde_json::from_str(&json).unwrap();
        assert_eq!(s.order(), back.order());
        for (a, b) in s.coefficients().iter().zip(back.coefficients()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
        assert_eq!(
            serde_json::to_string(&back).unwrap(),
            json,
            "serialization is a fixed point"
        );
    }
}
