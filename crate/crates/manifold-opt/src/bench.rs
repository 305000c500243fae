//! The five benchmark objectives, their domains and known optima, and the
//! stochastic sampling wrapper that simulates noisy black-box access.
//!
//! All five are 2-D minimization problems with global minimum value 0.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use std::f64::consts::{E, PI};

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::samples::{Provenance, Sample, SampleSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Benchmark {
    Rosenbrock,
    Himmelblau,
    Booth,
    Ackley,
    Rastrigin,
}

pub const ALL_BENCHMARKS: [Benchmark; 5] = [
    Benchmark::Rosenbrock,
    Benchmark::Himmelblau,
    Benchmark::Booth,
    Benchmark::Ackley,
    Benchmark::Rastrigin,
];

impl Benchmark {
    pub fn from_name(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "rosenbrock" => Ok(Benchmark::Rosenbrock),
            "himmelblau" => Ok(Benchmark::Himmelblau),
            "booth" => Ok(Benchmark::Booth),
            "ackley" => Ok(Benchmark::Ackley),
            "rastrigin" => Ok(Benchmark::Rastrigin),
            other => Err(Error::UnknownBenchmark(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Benchmark::Rosenbrock => "rosenbrock",
            Benchmark::Himmelblau => "himmelblau",
            Benchmark::Booth => "booth",
            Benchmark::Ackley => "ackley",
            Benchmark::Rastrigin => "rastrigin",
        }
    }

    pub fn spec(&self) -> BenchmarkSpec {
        let (domain, optima) = match self {
            Benchmark::Rosenbrock => (
                Domain::square(-2.0, 2.0, 2),
                vec![(vec![1.0, 1.0], 0.0)],
            ),
            // All four analytic minima, not just the two usually printed.
            Benchmark::Himmelblau => (
                Domain::square(-5.0, 5.0, 2),
                vec![
                    (vec![3.0, 2.0], 0.0),
                    (vec![-2.805118, 3.131312], 0.0),
                    (vec![-3.779310, -3.283186], 0.0),
                    (vec![3.584428, -1.848126], 0.0),
                ],
            ),
            Benchmark::Booth => (
                Domain::square(-10.0, 10.0, 2),
                vec![(vec![1.0, 3.0], 0.0)],
            ),
            Benchmark::Ackley => (
                Domain::square(-5.0, 5.0, 2),
                vec![(vec![0.0, 0.0], 0.0)],
            ),
            Benchmark::Rastrigin => (
                Domain::square(-5.12, 5.12, 2),
                vec![(vec![0.0, 0.0], 0.0)],
            ),
        };
        BenchmarkSpec {
            benchmark: *self,
            domain,
            known_optima: optima,
        }
    }
}

/// A benchmark objective with its domain and ground-truth optima.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchmarkSpec {
    pub benchmark: Benchmark,
    pub domain: Domain,
    pub known_optima: Vec<(Vec<f64>, f64)>,
}

impl BenchmarkSpec {
    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    /// Same objective restricted to a different (typically zoomed) domain.
    pub fn with_domain(&self, domain: Domain) -> BenchmarkSpec {
        BenchmarkSpec {
            benchmark: self.benchmark,
            domain,
            known_optima: self.known_optima.clone(),
        }
    }

    /// Exact analytic value. Out-of-domain points evaluate fine; dimension
    /// mismatch is an error.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(eval_analytic(self.benchmark, x))
    }

    /// The known global optima, best value first. Himmelblau returns all four.
    pub fn true_optima(&self) -> &[(Vec<f64>, f64)] {
        &self.known_optima
    }

    /// Draws `count` locations uniformly at random over the domain and
    /// evaluates the (possibly noisy) objective at each. Reproducible under a
    /// fixed noise seed.
    pub fn sample_stochastic(&self, count: usize, noise: &NoiseModel) -> Result<SampleSet> {
        if count == 0 {
            return Err(Error::InvalidParameter("sample count must be >= 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(noise.seed);
        let mut noise_stream = noise.stream();
        let mut set = SampleSet::new();
        for _ in 0..count {
            let x: Vec<f64> = (0..self.dim())
                .map(|d| rng.random_range(self.domain.lo(d)..=self.domain.hi(d)))
                .collect();
            let value = noise_stream.observe(eval_analytic(self.benchmark, &x));
            set.push(Sample {
                location: x,
                value,
                provenance: Provenance::Stochastic,
            });
        }
        Ok(set)
    }
}

fn eval_analytic(benchmark: Benchmark, x: &[f64]) -> f64 {
    match benchmark {
        Benchmark::Rosenbrock => {
            let (a, b) = (x[0], x[1]);
            (1.0 - a).powi(2) + 100.0 * (b - a * a).powi(2)
        }
        Benchmark::Himmelblau => {
            let (a, b) = (x[0], x[1]);
            (a * a + b - 11.0).powi(2) + (a + b * b - 7.0).powi(2)
        }
        Benchmark::Booth => {
            let (a, b) = (x[0], x[1]);
            (a + 2.0 * b - 7.0).powi(2) + (2.0 * a + b - 5.0).powi(2)
        }
        Benchmark::Ackley => {
            let (a, b) = (x[0], x[1]);
            let r = (0.5 * (a * a + b * b)).sqrt();
            let c = 0.5 * ((2.0 * PI * a).cos() + (2.0 * PI * b).cos());
            -20.0 * (-0.2 * r).exp() - c.exp() + E + 20.0
        }
        Benchmark::Rastrigin => {
            let n = x.len() as f64;
            10.0 * n
                + x.iter()
                    .map(|&xi| xi * xi - 10.0 * (2.0 * PI * xi).cos())
                    .sum::<f64>()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum NoiseKind {
    #[default]
    None,
    AdditiveGaussian,
}

/// Value noise added on top of the analytic objective. `kind = None` leaves
/// outputs bit-identical to the analytic form; identical seeds yield
/// identical streams.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub kind: NoiseKind,
    pub sigma: f64,
    pub seed: u64,
}

impl NoiseModel {
    pub fn none() -> Self {
        NoiseModel {
            kind: NoiseKind::None,
            sigma: 0.0,
            seed: 0,
        }
    }

    pub fn gaussian(sigma: f64, seed: u64) -> Result<Self> {
        if !(sigma >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "noise sigma must be >= 0, got {sigma}"
            )));
        }
        Ok(NoiseModel {
            kind: NoiseKind::AdditiveGaussian,
            sigma,
            seed,
        })
    }

    pub fn is_none(&self) -> bool {
        matches!(self.kind, NoiseKind::None) || self.sigma == 0.0
    }

    /// One observation stream. Each stream owns its RNG; concurrent sampling
    /// needs independently seeded models.
    pub fn stream(&self) -> NoiseStream {
        NoiseStream {
            normal: match self.kind {
                NoiseKind::None => None,
                NoiseKind::AdditiveGaussian if self.sigma > 0.0 => {
                    Some(Normal::new(0.0, self.sigma).expect("sigma validated"))
                }
                NoiseKind::AdditiveGaussian => None,
            },
            rng: ChaCha8Rng::seed_from_u64(self.seed ^ 0x9e37_79b9_7f4a_7c15),
        }
    }
}

pub struct NoiseStream {
    normal: Option<Normal<f64>>,
    rng: ChaCha8Rng,
}

impl NoiseStream {
    pub fn observe(&mut self, clean: f64) -> f64 {
        match &self.normal {
            None => clean,
            Some(n) => clean + n.sample(&mut self.rng),
        }
    }
}
