//! Artificial Bee Colony optimization with an optional linear-crossover
//! phase (CbABC), the four classic continuous test functions, a random-key
//! TSP adapter, and a seeded multi-run experiment harness.
//!
//! ```
//! use cbabc::{abc, AbcConfig, Benchmark};
//!
//! let problem = Benchmark::Sphere.problem(2).unwrap();
//! let config = AbcConfig { max_cycles: 200, seed: 7, ..AbcConfig::cbabc(0.2) };
//! let result = abc::run(&problem, &config).unwrap();
//! assert!(result.best_objective < 1e-3);
//! ```

pub mod abc;
pub mod crossover;
pub mod error;
pub mod harness;
pub mod objective;
pub mod rng;
pub mod tsp;

pub use abc::{AbcConfig, Colony, FoodSource, ReplacementTarget, RunResult, Swarm, Variant};
pub use error::{Error, Result};
pub use objective::{Benchmark, BoxBounds, Problem};
pub use rng::{RandomSource, SeededRng};
pub use tsp::{Tour, TspInstance};
