//! Real-coded linear crossover and the crossover phase of the hybrid
//! (CbABC) colony.
//!
//! From parents `p1`, `p2` three offspring are formed componentwise:
//!
//! ```text
//! c1 = 0.5·(p1 + p2)
//! c2 = 1.5·p1 − 0.5·p2
//! c3 = −0.5·p1 + 1.5·p2
//! ```
//!
//! The extrapolated pair is computed as `p1 + h` and `p2 − h` with
//! `h = 0.5·(p1 − p2)`. That is the same expression, but the rounding error
//! of `p1 − p2` cancels in `c2 + c3`, so `c2 + c3 = p1 + p2` holds to within
//! half an ulp of each offspring.

use crate::abc::{fitness_of, Colony, Flow, Observer, Phase, ReplacementTarget};
use crate::error::{Error, Result};
use crate::objective::BoxBounds;
use crate::rng::RandomSource;

/// The three offspring before any clamping.
pub fn linear_crossover_raw(p1: &[f64], p2: &[f64]) -> Result<[Vec<f64>; 3]> {
    if p1.len() != p2.len() {
        return Err(Error::DimensionMismatch { expected: p1.len(), actual: p2.len() });
    }
    let mut mid = Vec::with_capacity(p1.len());
    let mut ext1 = Vec::with_capacity(p1.len());
    let mut ext2 = Vec::with_capacity(p1.len());
    for (&a, &b) in p1.iter().zip(p2) {
        let h = 0.5 * (a - b);
        mid.push(0.5 * (a + b));
        ext1.push(a + h);
        ext2.push(b - h);
    }
    Ok([mid, ext1, ext2])
}

/// Linear crossover with every offspring clamped into `bounds`.
pub fn linear_crossover(p1: &[f64], p2: &[f64], bounds: &BoxBounds) -> Result<[Vec<f64>; 3]> {
    bounds.check_dim(p1)?;
    let mut children = linear_crossover_raw(p1, p2)?;
    for child in &mut children {
        bounds.clamp(child);
    }
    Ok(children)
}

/// Record of one crossover event.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossoverOutcome {
    pub parents: (usize, usize),
    /// Clamped offspring in formula order (midpoint, two extrapolations).
    pub candidates: [Vec<f64>; 3],
    pub objectives: [f64; 3],
    /// Index into `candidates` of the fittest offspring.
    pub chosen: usize,
    /// The source the chosen offspring competed against.
    pub target: usize,
    pub applied: bool,
}

impl<R: RandomSource, O: Observer> Colony<'_, R, O> {
    /// One Bernoulli gate per food-source slot. When the gate opens, two
    /// distinct random parents produce three offspring; all three are
    /// evaluated and the fittest replaces the replacement target if it is
    /// strictly fitter. A closed gate consumes exactly one uniform draw.
    ///
    /// Trial counters are untouched on a failed replacement.
    pub fn crossover_phase(&mut self) -> Result<Flow> {
        let sn = self.config.sn;
        let rate = self.config.crossover_probability;
        for _ in 0..sn {
            if self.rng.uniform() >= rate {
                continue;
            }
            if self.crossover_event()? == Flow::Exhausted {
                self.observer.phase_end(Phase::Crossover, &self.swarm);
                return Ok(Flow::Exhausted);
            }
        }
        self.observer.phase_end(Phase::Crossover, &self.swarm);
        Ok(Flow::Continue)
    }

    fn crossover_event(&mut self) -> Result<Flow> {
        if !self.budget_left() {
            return Ok(Flow::Exhausted);
        }
        let sn = self.config.sn;
        let a = self.rng.index(sn);
        let mut b = self.rng.index(sn - 1);
        if b >= a {
            b += 1;
        }
        let candidates =
            linear_crossover(&self.swarm.sources[a].position, &self.swarm.sources[b].position, self.problem.bounds())?;
        let mut objectives = [0.0; 3];
        for (slot, child) in objectives.iter_mut().zip(&candidates) {
            match self.evaluate(child)? {
                Some(value) => *slot = value,
                // Budget ran out mid-event; the partial event is discarded.
                None => return Ok(Flow::Exhausted),
            }
        }
        let chosen = (1..3).fold(0, |best, i| if objectives[i] < objectives[best] { i } else { best });
        let fitness = fitness_of(objectives[chosen])?;

        let sources = &self.swarm.sources;
        let target = match self.config.replacement {
            ReplacementTarget::PairWorst => {
                if sources[b].fitness < sources[a].fitness {
                    b
                } else {
                    a
                }
            }
            ReplacementTarget::PopulationWorst => {
                (1..sn).fold(0, |worst, i| if sources[i].fitness < sources[worst].fitness { i } else { worst })
            }
        };
        let applied = fitness > sources[target].fitness;
        if applied {
            self.replace_source(target, candidates[chosen].clone(), objectives[chosen], fitness);
        }
        let outcome = CrossoverOutcome { parents: (a, b), candidates, objectives, chosen, target, applied };
        self.observer.crossover(&outcome);
        Ok(Flow::Continue)
    }
}
