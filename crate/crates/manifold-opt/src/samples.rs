//! Tagged observations of a black-box objective.

use serde::{Deserialize, Serialize};

/// Where a sample came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Provenance {
    /// Domain corner, evaluated during seeding.
    Boundary,
    /// Domain midpoint, evaluated during seeding.
    Midpoint,
    /// Drawn on the geodesic circle of the given refinement iteration.
    Circle { iteration: usize, radius: f64 },
    /// Uniform-random draw over the domain.
    Stochastic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub location: Vec<f64>,
    pub value: f64,
    pub provenance: Provenance,
}

/// Ordered collection of samples; iteration indices of circle samples are
/// non-decreasing in insertion order.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub samples: Vec<Sample>,
}

impl SampleSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, sample: Sample) {
        self.samples.push(sample);
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Sample> {
        self.samples.iter()
    }

    pub fn locations(&self) -> impl Iterator<Item = &[f64]> {
        self.samples.iter().map(|s| s.location.as_slice())
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.value)
    }
}

impl FromIterator<Sample> for SampleSet {
    fn from_iter<I: IntoIterator<Item = Sample>>(iter: I) -> Self {
        SampleSet {
            samples: iter.into_iter().collect(),
        }
    }
}
