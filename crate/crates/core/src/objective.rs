//! Bounded continuous minimization problems and the four classic test
//! functions (sphere, Griewank, Rastrigin, Rosenbrock).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Per-dimension closed box `[lower[j], upper[j]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoxBounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl BoxBounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::InvalidDimension { dim: 0, reason: "bounds need at least one dimension" });
        }
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch { expected: lower.len(), actual: upper.len() });
        }
        for (index, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if !lo.is_finite() || !hi.is_finite() || lo >= hi {
                return Err(Error::InvalidBounds { index, lower: lo, upper: hi });
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same interval repeated over `dim` dimensions.
    pub fn uniform(dim: usize, lower: f64, upper: f64) -> Result<Self> {
        Self::new(vec![lower; dim], vec![upper; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Inclusive containment test.
    pub fn contains(&self, x: &[f64]) -> Result<bool> {
        self.check_dim(x)?;
        Ok(x.iter().zip(&self.lower).zip(&self.upper).all(|((v, lo), hi)| lo <= v && v <= hi))
    }

    /// Moves every out-of-range component onto the bound it violates.
    pub fn clamp(&self, x: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim());
        for ((v, &lo), &hi) in x.iter_mut().zip(&self.lower).zip(&self.upper) {
            *v = v.clamp(lo, hi);
        }
    }

    pub(crate) fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim(), actual: x.len() })
        }
    }
}

/// Free-function form of [`BoxBounds::contains`].
pub fn in_bounds(x: &[f64], bounds: &BoxBounds) -> Result<bool> {
    bounds.contains(x)
}

pub type ObjectiveFn = Arc<dyn Fn(&[f64]) -> Result<f64> + Send + Sync>;

/// A deterministic objective to be minimized over a box.
#[derive(Clone)]
pub struct Problem {
    name: String,
    bounds: BoxBounds,
    objective: ObjectiveFn,
    known_optimum: Option<f64>,
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("name", &self.name)
            .field("dimension", &self.dimension())
            .field("known_optimum", &self.known_optimum)
            .finish_non_exhaustive()
    }
}

impl Problem {
    pub fn new<F>(name: impl Into<String>, bounds: BoxBounds, objective: F) -> Self
    where
        F: Fn(&[f64]) -> Result<f64> + Send + Sync + 'static,
    {
        Self { name: name.into(), bounds, objective: Arc::new(objective), known_optimum: None }
    }

    pub fn with_known_optimum(mut self, value: f64) -> Self {
        self.known_optimum = Some(value);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.bounds.dim()
    }

    pub fn bounds(&self) -> &BoxBounds {
        &self.bounds
    }

    pub fn known_optimum(&self) -> Option<f64> {
        self.known_optimum
    }

    /// Evaluates the objective, rejecting wrong-length inputs and non-finite
    /// results.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        self.bounds.check_dim(x)?;
        let value = (self.objective)(x)?;
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::NonFiniteObjective { problem: self.name.clone(), value })
        }
    }
}

fn check_finite(x: &[f64]) -> Result<()> {
    if x.is_empty() {
        return Err(Error::InvalidDimension { dim: 0, reason: "objective needs at least one component" });
    }
    match x.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFinite { index, value: x[index] }),
        None => Ok(()),
    }
}

pub fn sphere(x: &[f64]) -> Result<f64> {
    check_finite(x)?;
    Ok(x.iter().map(|v| v * v).sum())
}

/// `1/4000 Σ x_i² − Π cos(x_i / √i) + 1`, with `i` counted from 1.
pub fn griewank(x: &[f64]) -> Result<f64> {
    check_finite(x)?;
    let sum: f64 = x.iter().map(|v| v * v).sum();
    let product: f64 = x.iter().enumerate().map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos()).product();
    Ok(sum / 4000.0 - product + 1.0)
}

pub fn rastrigin(x: &[f64]) -> Result<f64> {
    check_finite(x)?;
    Ok(x.iter().map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0).sum())
}

/// `Σ_{i=1}^{D-1} 100 (x_i² − x_{i+1})² + (1 − x_i)²`.
pub fn rosenbrock(x: &[f64]) -> Result<f64> {
    if x.len() < 2 {
        return Err(Error::InvalidDimension { dim: x.len(), reason: "rosenbrock needs at least two dimensions" });
    }
    check_finite(x)?;
    Ok(x.windows(2).map(|w| 100.0 * (w[0] * w[0] - w[1]).powi(2) + (1.0 - w[0]).powi(2)).sum())
}

/// The four test functions, addressable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Benchmark {
    Sphere,
    Griewank,
    Rastrigin,
    Rosenbrock,
}

impl Benchmark {
    pub const ALL: [Benchmark; 4] =
        [Benchmark::Sphere, Benchmark::Griewank, Benchmark::Rastrigin, Benchmark::Rosenbrock];

    pub fn name(self) -> &'static str {
        match self {
            Benchmark::Sphere => "sphere",
            Benchmark::Griewank => "griewank",
            Benchmark::Rastrigin => "rastrigin",
            Benchmark::Rosenbrock => "rosenbrock",
        }
    }

    /// Symmetric search range `[-r, r]` for every dimension.
    pub fn half_range(self) -> f64 {
        match self {
            Benchmark::Sphere => 100.0,
            Benchmark::Griewank => 600.0,
            Benchmark::Rastrigin => 5.12,
            Benchmark::Rosenbrock => 30.0,
        }
    }

    pub fn function(self) -> fn(&[f64]) -> Result<f64> {
        match self {
            Benchmark::Sphere => sphere,
            Benchmark::Griewank => griewank,
            Benchmark::Rastrigin => rastrigin,
            Benchmark::Rosenbrock => rosenbrock,
        }
    }

    /// Location of the global minimum (value 0).
    pub fn optimum(self, dim: usize) -> Vec<f64> {
        match self {
            Benchmark::Rosenbrock => vec![1.0; dim],
            _ => vec![0.0; dim],
        }
    }

    pub fn problem(self, dim: usize) -> Result<Problem> {
        if self == Benchmark::Rosenbrock && dim < 2 {
            return Err(Error::InvalidDimension { dim, reason: "rosenbrock needs at least two dimensions" });
        }
        let r = self.half_range();
        let bounds = BoxBounds::uniform(dim, -r, r)?;
        Ok(Problem::new(self.name(), bounds, self.function()).with_known_optimum(0.0))
    }
}

impl fmt::Display for Benchmark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Benchmark {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Benchmark::ALL
            .into_iter()
            .find(|b| b.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownProblem(s.to_string()))
    }
}
