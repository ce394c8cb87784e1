//! Artificial Bee Colony: initialization, employed, onlooker and scout
//! phases with trial/limit bookkeeping and a best-so-far memory.
//!
//! A [`Colony`] owns one run's state. Each cycle executes
//!
//! 1. employed phase: one neighbourhood move per employed bee,
//! 2. crossover phase (hybrid variant only, see [`crate::crossover`]),
//! 3. onlooker phase: roulette-selected sources get a neighbourhood move,
//! 4. scout phase: at most one exhausted source is re-drawn,
//! 5. best-so-far memorization.
//!
//! A run stops after `max_cycles` cycles or once `eval_budget` objective
//! calls have been spent, whichever comes first.

use crate::crossover::CrossoverOutcome;
use crate::error::{Error, Result};
use crate::objective::{BoxBounds, Problem};
use crate::rng::{RandomSource, SeededRng};

/// One candidate solution.
#[derive(Clone, Debug, PartialEq)]
pub struct FoodSource {
    pub position: Vec<f64>,
    pub objective: f64,
    pub fitness: f64,
    /// Consecutive failed improvement attempts.
    pub trials: u32,
}

impl FoodSource {
    fn new(position: Vec<f64>, objective: f64) -> Result<Self> {
        let fitness = fitness_of(objective)?;
        Ok(Self { position, objective, fitness, trials: 0 })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BestSoFar {
    pub position: Vec<f64>,
    pub objective: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Swarm {
    pub sources: Vec<FoodSource>,
    pub best: BestSoFar,
    /// Objective calls made so far.
    pub evaluations: u64,
    /// Cycles started so far.
    pub cycle: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Abc,
    CbAbc,
}

/// Which individual the best crossover offspring competes against.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ReplacementTarget {
    /// The worse of the two selected parents.
    #[default]
    PairWorst,
    /// The worst source in the whole population.
    PopulationWorst,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AbcConfig {
    /// Number of food sources.
    pub sn: usize,
    /// Employed bees per cycle; bee `i` works source `i`.
    pub employed_bees: usize,
    pub onlooker_bees: usize,
    /// A source whose trial counter exceeds this is abandoned.
    pub limit: u32,
    pub max_cycles: u64,
    pub eval_budget: u64,
    pub crossover_probability: f64,
    pub replacement: ReplacementTarget,
    pub variant: Variant,
    pub seed: u64,
}

impl Default for AbcConfig {
    fn default() -> Self {
        Self {
            sn: 20,
            employed_bees: 10,
            onlooker_bees: 10,
            limit: 100,
            max_cycles: 2000,
            eval_budget: 20_000,
            crossover_probability: 0.0,
            replacement: ReplacementTarget::PairWorst,
            variant: Variant::Abc,
            seed: 0,
        }
    }
}

impl AbcConfig {
    /// Plain ABC with default parameters.
    pub fn abc() -> Self {
        Self::default()
    }

    /// Crossover hybrid with default parameters and the given rate.
    pub fn cbabc(crossover_probability: f64) -> Self {
        Self { variant: Variant::CbAbc, crossover_probability, ..Self::default() }
    }

    /// Food-source count with employed and onlooker bees each set to half of it
    /// (rounded up for the employed side).
    pub fn with_sn(mut self, sn: usize) -> Self {
        self.sn = sn;
        self.employed_bees = sn.div_ceil(2);
        self.onlooker_bees = sn / 2;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        if self.sn < 2 {
            return fail(format!("sn must be at least 2 (got {}); a distinct neighbour is required", self.sn));
        }
        if self.employed_bees > self.sn {
            return fail(format!("employed_bees {} exceeds sn {}", self.employed_bees, self.sn));
        }
        if self.limit == 0 {
            return fail("limit must be positive".into());
        }
        if self.eval_budget < self.sn as u64 {
            return fail(format!("eval_budget {} cannot cover the {} initial evaluations", self.eval_budget, self.sn));
        }
        if !(0.0..=1.0).contains(&self.crossover_probability) {
            return fail(format!("crossover probability {} outside [0, 1]", self.crossover_probability));
        }
        Ok(())
    }
}

/// Positive fitness that decreases strictly with the objective value.
pub fn fitness_of(objective: f64) -> Result<f64> {
    if !objective.is_finite() {
        return Err(Error::NonFinite { index: 0, value: objective });
    }
    Ok(if objective >= 0.0 { 1.0 / (1.0 + objective) } else { 1.0 + objective.abs() })
}

/// Fitness-proportional selection probabilities.
pub fn selection_probabilities(sources: &[FoodSource]) -> Vec<f64> {
    let total: f64 = sources.iter().map(|s| s.fitness).sum();
    sources.iter().map(|s| s.fitness / total).collect()
}

/// Index picked by a roulette wheel for a uniform draw `u` in `[0, 1)`.
pub fn roulette_select(probabilities: &[f64], u: f64) -> usize {
    let mut cumulative = 0.0;
    for (i, p) in probabilities.iter().enumerate() {
        cumulative += p;
        if u < cumulative {
            return i;
        }
    }
    // Rounding can leave the final cumulative sum a hair below 1.
    probabilities.len() - 1
}

/// Uniform point in the box, one draw per dimension.
pub fn random_position(bounds: &BoxBounds, rng: &mut impl RandomSource) -> Vec<f64> {
    bounds.lower().iter().zip(bounds.upper()).map(|(lo, hi)| lo + rng.uniform() * (hi - lo)).collect()
}

/// Neighbourhood move for source `index`: one random dimension `j` is
/// shifted by `φ·(x_ij − x_kj)` against a random partner `k ≠ index`, with
/// `φ` uniform in `[-1, 1]`. The result is clamped into the box.
///
/// Draw order: dimension, partner, `φ`.
pub fn neighbor(index: usize, sources: &[FoodSource], bounds: &BoxBounds, rng: &mut impl RandomSource) -> Vec<f64> {
    debug_assert!(sources.len() >= 2);
    let dim = bounds.dim();
    let j = rng.index(dim);
    let mut k = rng.index(sources.len() - 1);
    if k >= index {
        k += 1;
    }
    let phi = 2.0 * rng.uniform() - 1.0;
    let mut candidate = sources[index].position.clone();
    let x = candidate[j];
    candidate[j] = (x + phi * (x - sources[k].position[j])).clamp(bounds.lower()[j], bounds.upper()[j]);
    candidate
}

/// Draws the initial swarm and evaluates every source once.
pub fn init_swarm(problem: &Problem, config: &AbcConfig, rng: &mut impl RandomSource) -> Result<Swarm> {
    config.validate()?;
    let mut sources = Vec::with_capacity(config.sn);
    for _ in 0..config.sn {
        let position = random_position(problem.bounds(), rng);
        let objective = problem.evaluate(&position)?;
        sources.push(FoodSource::new(position, objective)?);
    }
    let best = sources
        .iter()
        .min_by(|a, b| a.objective.total_cmp(&b.objective))
        .map(|s| BestSoFar { position: s.position.clone(), objective: s.objective })
        .expect("sn >= 2");
    Ok(Swarm { sources, best, evaluations: config.sn as u64, cycle: 0 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    Employed,
    Crossover,
    Onlooker,
    Scout,
}

/// Whether the run may continue after a phase.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flow {
    Continue,
    Exhausted,
}

/// Hooks into a run, for instrumentation. Every method defaults to a no-op.
pub trait Observer {
    fn phase_end(&mut self, _phase: Phase, _swarm: &Swarm) {}

    /// A neighbourhood move on `source` was evaluated.
    fn attempt(&mut self, _source: usize, _improved: bool) {}

    fn scout(&mut self, _source: usize, _cycle: u64) {}

    fn crossover(&mut self, _outcome: &CrossoverOutcome) {}
}

impl Observer for () {}

impl<O: Observer + ?Sized> Observer for &mut O {
    fn phase_end(&mut self, phase: Phase, swarm: &Swarm) {
        (**self).phase_end(phase, swarm)
    }

    fn attempt(&mut self, source: usize, improved: bool) {
        (**self).attempt(source, improved)
    }

    fn scout(&mut self, source: usize, cycle: u64) {
        (**self).scout(source, cycle)
    }

    fn crossover(&mut self, outcome: &CrossoverOutcome) {
        (**self).crossover(outcome)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    pub best_position: Vec<f64>,
    pub best_objective: f64,
    /// Best objective of the initial swarm.
    pub initial_best: f64,
    /// Best objective after each cycle; entry `c` is after cycle `c + 1`.
    pub trace: Vec<f64>,
    pub evaluations: u64,
    /// Evaluation count at which the best first reached the success
    /// threshold, or the configured budget if it never did.
    pub evaluations_to_success: u64,
    pub cycles: u64,
}

pub struct Colony<'p, R = SeededRng, O = ()> {
    pub(crate) problem: &'p Problem,
    pub(crate) config: AbcConfig,
    pub(crate) rng: R,
    pub(crate) observer: O,
    pub(crate) swarm: Swarm,
    success_threshold: Option<f64>,
    success_at: Option<u64>,
    initial_best: f64,
    trace: Vec<f64>,
}

impl<'p> Colony<'p> {
    /// Colony seeded from `config.seed`.
    pub fn new(problem: &'p Problem, config: AbcConfig) -> Result<Self> {
        let rng = SeededRng::new(config.seed);
        Self::with_parts(problem, config, rng, ())
    }
}

impl<'p, R: RandomSource, O: Observer> Colony<'p, R, O> {
    pub fn with_parts(problem: &'p Problem, config: AbcConfig, mut rng: R, observer: O) -> Result<Self> {
        let swarm = init_swarm(problem, &config, &mut rng)?;
        let initial_best = swarm.best.objective;
        Ok(Self {
            problem,
            config,
            rng,
            observer,
            swarm,
            success_threshold: None,
            success_at: None,
            initial_best,
            trace: Vec::new(),
        })
    }

    /// Objective value at or below which a run counts as solved.
    pub fn with_success_threshold(mut self, threshold: f64) -> Self {
        self.success_threshold = Some(threshold);
        if self.swarm.best.objective <= threshold {
            self.success_at = Some(self.swarm.evaluations);
        }
        self
    }

    pub fn swarm(&self) -> &Swarm {
        &self.swarm
    }

    /// Direct access for tests that stage a particular swarm.
    pub fn swarm_mut(&mut self) -> &mut Swarm {
        &mut self.swarm
    }

    pub fn config(&self) -> &AbcConfig {
        &self.config
    }

    pub fn rng_mut(&mut self) -> &mut R {
        &mut self.rng
    }

    pub fn observer(&self) -> &O {
        &self.observer
    }

    pub fn observer_mut(&mut self) -> &mut O {
        &mut self.observer
    }

    pub fn into_observer(self) -> O {
        self.observer
    }

    pub(crate) fn budget_left(&self) -> bool {
        self.swarm.evaluations < self.config.eval_budget
    }

    /// One counted objective call, or `None` once the budget is spent.
    pub(crate) fn evaluate(&mut self, x: &[f64]) -> Result<Option<f64>> {
        if !self.budget_left() {
            return Ok(None);
        }
        self.swarm.evaluations += 1;
        self.problem.evaluate(x).map(Some)
    }

    pub(crate) fn offer_best(&mut self, position: &[f64], objective: f64) {
        if objective < self.swarm.best.objective {
            self.swarm.best = BestSoFar { position: position.to_vec(), objective };
        }
        if let Some(threshold) = self.success_threshold {
            if self.success_at.is_none() && objective <= threshold {
                self.success_at = Some(self.swarm.evaluations);
            }
        }
    }

    /// Overwrites source `index` and resets its trial counter.
    pub(crate) fn replace_source(&mut self, index: usize, position: Vec<f64>, objective: f64, fitness: f64) {
        self.offer_best(&position, objective);
        self.swarm.sources[index] = FoodSource { position, objective, fitness, trials: 0 };
    }

    /// Neighbourhood move plus greedy selection on one source.
    fn improve_source(&mut self, index: usize) -> Result<Flow> {
        if !self.budget_left() {
            return Ok(Flow::Exhausted);
        }
        let candidate = neighbor(index, &self.swarm.sources, self.problem.bounds(), &mut self.rng);
        let Some(objective) = self.evaluate(&candidate)? else {
            return Ok(Flow::Exhausted);
        };
        let fitness = fitness_of(objective)?;
        let improved = fitness > self.swarm.sources[index].fitness;
        if improved {
            self.replace_source(index, candidate, objective, fitness);
        } else {
            self.swarm.sources[index].trials += 1;
        }
        self.observer.attempt(index, improved);
        Ok(Flow::Continue)
    }

    fn finish_phase(&mut self, phase: Phase, flow: Flow) -> Result<Flow> {
        self.observer.phase_end(phase, &self.swarm);
        Ok(flow)
    }

    pub fn employed_phase(&mut self) -> Result<Flow> {
        for i in 0..self.config.employed_bees {
            if self.improve_source(i)? == Flow::Exhausted {
                return self.finish_phase(Phase::Employed, Flow::Exhausted);
            }
        }
        self.finish_phase(Phase::Employed, Flow::Continue)
    }

    /// Each onlooker picks a source by roulette over the fitness
    /// distribution at the start of the phase, then works it like an
    /// employed bee.
    pub fn onlooker_phase(&mut self) -> Result<Flow> {
        if self.config.onlooker_bees == 0 {
            return self.finish_phase(Phase::Onlooker, Flow::Continue);
        }
        let probabilities = selection_probabilities(&self.swarm.sources);
        for _ in 0..self.config.onlooker_bees {
            if !self.budget_left() {
                return self.finish_phase(Phase::Onlooker, Flow::Exhausted);
            }
            let chosen = roulette_select(&probabilities, self.rng.uniform());
            if self.improve_source(chosen)? == Flow::Exhausted {
                return self.finish_phase(Phase::Onlooker, Flow::Exhausted);
            }
        }
        self.finish_phase(Phase::Onlooker, Flow::Continue)
    }

    /// Re-draws the single most-exhausted source, if any exceeds the limit.
    /// Ties go to the lowest index. The best-so-far memory is kept.
    pub fn scout_phase(&mut self) -> Result<Flow> {
        let limit = self.config.limit;
        let abandoned = self.swarm.sources.iter().enumerate().filter(|(_, s)| s.trials > limit).fold(
            None::<(usize, u32)>,
            |acc, (i, s)| match acc {
                Some((_, t)) if t >= s.trials => acc,
                _ => Some((i, s.trials)),
            },
        );
        let Some((index, _)) = abandoned else {
            return self.finish_phase(Phase::Scout, Flow::Continue);
        };
        if !self.budget_left() {
            return self.finish_phase(Phase::Scout, Flow::Exhausted);
        }
        let position = random_position(self.problem.bounds(), &mut self.rng);
        let Some(objective) = self.evaluate(&position)? else {
            return self.finish_phase(Phase::Scout, Flow::Exhausted);
        };
        let fitness = fitness_of(objective)?;
        self.replace_source(index, position, objective, fitness);
        self.observer.scout(index, self.swarm.cycle);
        self.finish_phase(Phase::Scout, Flow::Continue)
    }

    fn memorize(&mut self) {
        let best = self.swarm.sources.iter().min_by(|a, b| a.objective.total_cmp(&b.objective)).expect("sn >= 2");
        if best.objective < self.swarm.best.objective {
            self.swarm.best = BestSoFar { position: best.position.clone(), objective: best.objective };
        }
        self.trace.push(self.swarm.best.objective);
    }

    /// Runs one full cycle. A cycle cut short by the budget still records a
    /// trace entry.
    pub fn step(&mut self) -> Result<Flow> {
        self.swarm.cycle += 1;
        let mut flow = self.employed_phase()?;
        if flow == Flow::Continue && self.config.variant == Variant::CbAbc {
            flow = self.crossover_phase()?;
        }
        if flow == Flow::Continue {
            flow = self.onlooker_phase()?;
        }
        if flow == Flow::Continue {
            flow = self.scout_phase()?;
        }
        self.memorize();
        Ok(flow)
    }

    pub fn run(&mut self) -> Result<RunResult> {
        while self.swarm.cycle < self.config.max_cycles && self.budget_left() {
            if self.step()? == Flow::Exhausted {
                break;
            }
        }
        Ok(self.result())
    }

    /// Snapshot of the run so far.
    pub fn result(&self) -> RunResult {
        RunResult {
            best_position: self.swarm.best.position.clone(),
            best_objective: self.swarm.best.objective,
            initial_best: self.initial_best,
            trace: self.trace.clone(),
            evaluations: self.swarm.evaluations,
            evaluations_to_success: self.success_at.unwrap_or(self.config.eval_budget),
            cycles: self.swarm.cycle,
        }
    }
}

/// Runs `problem` to completion with `config`.
pub fn run(problem: &Problem, config: &AbcConfig) -> Result<RunResult> {
    Colony::new(problem, config.clone())?.run()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::objective::{sphere, Benchmark};

    /// Replays a fixed list of uniforms; indices are derived as `floor(u·n)`.
    pub(crate) struct Scripted {
        values: Vec<f64>,
        pos: usize,
    }

    impl Scripted {
        pub(crate) fn new(values: Vec<f64>) -> Self {
            Self { values, pos: 0 }
        }

        pub(crate) fn constant(u: f64) -> Self {
            Self::new(vec![u])
        }
    }

    impl RandomSource for Scripted {
        fn uniform(&mut self) -> f64 {
            let v = self.values[self.pos % self.values.len()];
            self.pos += 1;
            v
        }

        fn index(&mut self, n: usize) -> usize {
            ((self.uniform() * n as f64) as usize).min(n - 1)
        }
    }

    fn source(position: Vec<f64>) -> FoodSource {
        let objective = sphere(&position).unwrap();
        FoodSource::new(position, objective).unwrap()
    }

    #[test]
    fn fitness_transform() {
        assert_eq!(fitness_of(0.0).unwrap(), 1.0);
        assert_eq!(fitness_of(3.0).unwrap(), 0.25);
        assert_eq!(fitness_of(-2.0).unwrap(), 3.0);
        assert!(fitness_of(f64::NAN).is_err());
        assert!(fitness_of(f64::INFINITY).is_err());
        let values = [-5.0, -1.0, -1e-9, 0.0, 1e-3, 1.0, 10.0, 1e6];
        for w in values.windows(2) {
            assert!(fitness_of(w[0]).unwrap() > fitness_of(w[1]).unwrap());
        }
    }

    #[test]
    fn probabilities_normalize() {
        let mk = |fitness: f64| FoodSource { position: vec![0.0], objective: 0.0, fitness, trials: 0 };
        let p = selection_probabilities(&[mk(1.0), mk(1.0), mk(2.0)]);
        assert_eq!(p, vec![0.25, 0.25, 0.5]);

        let p = selection_probabilities(&vec![mk(0.3); 20]);
        assert!(p.iter().all(|&v| (v - 0.05).abs() < 1e-15));

        let mut sources = vec![mk(1e-6); 19];
        sources.push(mk(1e6));
        let p = selection_probabilities(&sources);
        assert!(p[19] > 1.0 - 1e-10);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn roulette_edges() {
        let p = [0.25, 0.25, 0.5];
        assert_eq!(roulette_select(&p, 0.0), 0);
        assert_eq!(roulette_select(&p, 0.2499), 0);
        assert_eq!(roulette_select(&p, 0.25), 1);
        assert_eq!(roulette_select(&p, 0.9999), 2);
        assert_eq!(roulette_select(&[0.3, 0.3, 0.3999999], 0.9999999999), 2);
    }

    #[test]
    fn neighbor_zero_step() {
        let bounds = BoxBounds::uniform(3, -100.0, 100.0).unwrap();
        let sources = vec![source(vec![1.0, 2.0, 3.0]), source(vec![-4.0, 5.0, 9.0])];
        // φ = 2u − 1 = 0 at u = 0.5.
        let v = neighbor(0, &sources, &bounds, &mut Scripted::constant(0.5));
        assert_eq!(v, sources[0].position);
    }

    #[test]
    fn neighbor_equal_partner() {
        let bounds = BoxBounds::uniform(2, -100.0, 100.0).unwrap();
        let sources = vec![source(vec![7.0, 7.0]), source(vec![7.0, 7.0])];
        for u in [0.0, 0.3, 0.99] {
            let v = neighbor(1, &sources, &bounds, &mut Scripted::constant(u));
            assert_eq!(v, vec![7.0, 7.0]);
        }
    }

    #[test]
    fn neighbor_substitution() {
        let bounds = BoxBounds::uniform(1, -100.0, 100.0).unwrap();
        let sources = vec![source(vec![50.0]), source(vec![10.0])];
        // j = 0, k = 1, φ = 2·1 − 1 = 1: 50 + 1·(50 − 10) = 90.
        let v = neighbor(0, &sources, &bounds, &mut Scripted::new(vec![0.0, 0.0, 1.0]));
        assert_eq!(v, vec![90.0]);
        // φ = −1 from 10 against 50: 10 − (10 − 50) = 50.
        let v = neighbor(1, &sources, &bounds, &mut Scripted::new(vec![0.0, 0.0, 0.0]));
        assert_eq!(v, vec![50.0]);
    }

    #[test]
    fn neighbor_clamps() {
        let bounds = BoxBounds::uniform(1, -100.0, 100.0).unwrap();
        let sources = vec![source(vec![90.0]), source(vec![-90.0])];
        let v = neighbor(0, &sources, &bounds, &mut Scripted::new(vec![0.0, 0.0, 1.0]));
        assert_eq!(v, vec![100.0]);
    }

    #[test]
    fn neighbor_never_picks_itself() {
        let bounds = BoxBounds::uniform(1, -10.0, 10.0).unwrap();
        let sources: Vec<_> = (0..5).map(|i| source(vec![i as f64])).collect();
        let mut rng = SeededRng::new(3);
        for i in 0..5 {
            for _ in 0..200 {
                // φ never 0 with probability one, so an unchanged result
                // would mean k == i.
                let v = neighbor(i, &sources, &bounds, &mut rng);
                assert_ne!(v[0], i as f64);
            }
        }
    }

    #[test]
    fn init_extremes() {
        let problem = Benchmark::Sphere.problem(3).unwrap();
        let cfg = AbcConfig::default();
        let swarm = init_swarm(&problem, &cfg, &mut Scripted::constant(0.0)).unwrap();
        assert!(swarm.sources.iter().all(|s| s.position == vec![-100.0; 3]));
        let swarm = init_swarm(&problem, &cfg, &mut Scripted::constant(1.0)).unwrap();
        assert!(swarm.sources.iter().all(|s| s.position == vec![100.0; 3]));
        assert_eq!(swarm.evaluations, 20);
        assert!(swarm.sources.iter().all(|s| s.trials == 0));
    }

    #[test]
    fn init_deterministic_and_best_is_argmin() {
        let problem = Benchmark::Griewank.problem(4).unwrap();
        let cfg = AbcConfig::default();
        let a = init_swarm(&problem, &cfg, &mut SeededRng::new(9)).unwrap();
        let b = init_swarm(&problem, &cfg, &mut SeededRng::new(9)).unwrap();
        assert_eq!(a, b);
        let min = a.sources.iter().map(|s| s.objective).fold(f64::INFINITY, f64::min);
        assert_eq!(a.best.objective, min);
    }

    #[test]
    fn config_validation() {
        assert!(AbcConfig::default().validate().is_ok());
        assert!(AbcConfig { sn: 1, employed_bees: 1, ..AbcConfig::default() }.validate().is_err());
        assert!(AbcConfig { employed_bees: 21, ..AbcConfig::default() }.validate().is_err());
        assert!(AbcConfig { limit: 0, ..AbcConfig::default() }.validate().is_err());
        assert!(AbcConfig { eval_budget: 5, ..AbcConfig::default() }.validate().is_err());
        assert!(AbcConfig::cbabc(1.5).validate().is_err());
        assert!(AbcConfig::cbabc(f64::NAN).validate().is_err());
        let c = AbcConfig::default().with_sn(7);
        assert_eq!((c.employed_bees, c.onlooker_bees), (4, 3));
    }

    #[test]
    fn default_config_matches_experimental_setup() {
        let c = AbcConfig::default();
        assert_eq!((c.sn, c.employed_bees, c.onlooker_bees, c.limit, c.max_cycles), (20, 10, 10, 100, 2000));
        assert_eq!(c.eval_budget, 20_000);
    }

    #[test]
    fn employed_phase_worse_candidates() {
        // Every source sits at the optimum, so no move can improve it.
        let problem = Benchmark::Sphere.problem(2).unwrap();
        let mut colony = Colony::with_parts(&problem, AbcConfig::default(), SeededRng::new(4), ()).unwrap();
        for s in &mut colony.swarm_mut().sources {
            *s = source(vec![0.0, 0.0]);
        }
        let before = colony.swarm().clone();
        colony.employed_phase().unwrap();
        let after = colony.swarm();
        for (i, (b, a)) in before.sources.iter().zip(&after.sources).enumerate() {
            assert_eq!(a.position, b.position);
            assert_eq!(a.trials, if i < 10 { 1 } else { 0 });
        }
        assert_eq!(after.evaluations, before.evaluations + 10);
    }

    #[test]
    fn employed_phase_zero_step_keeps_incumbents() {
        let problem = Benchmark::Rastrigin.problem(3).unwrap();
        let staged = init_swarm(&problem, &AbcConfig::default(), &mut SeededRng::new(2)).unwrap();
        // u = 0.5 everywhere gives φ = 0.
        let mut colony = Colony::with_parts(&problem, AbcConfig::default(), Scripted::constant(0.5), ()).unwrap();
        *colony.swarm_mut() = staged.clone();
        colony.employed_phase().unwrap();
        for (i, (b, a)) in staged.sources.iter().zip(&colony.swarm().sources).enumerate() {
            assert_eq!(a.position, b.position, "source {i} moved under zero step");
            assert_eq!(a.trials, b.trials + u32::from(i < 10));
        }
    }

    #[derive(Default)]
    struct Visits(Vec<usize>);

    impl Observer for Visits {
        fn attempt(&mut self, source: usize, _: bool) {
            self.0.push(source);
        }
    }

    #[test]
    fn onlooker_degenerate_distribution() {
        let problem = Benchmark::Sphere.problem(2).unwrap();
        let mut visits = Visits::default();
        let mut colony = Colony::with_parts(&problem, AbcConfig::default(), SeededRng::new(5), &mut visits).unwrap();
        for (i, s) in colony.swarm_mut().sources.iter_mut().enumerate() {
            *s = source(if i == 7 { vec![0.0, 0.0] } else { vec![100.0, 100.0] });
        }
        // Fitness 1 against 1/20001: source 7 holds ~99.9 % of the mass.
        colony.onlooker_phase().unwrap();
        assert_eq!(visits.0.len(), 10);
        assert!(visits.0.iter().filter(|&&i| i == 7).count() >= 9);
    }

    #[test]
    fn zero_onlookers_leave_swarm_unchanged() {
        let problem = Benchmark::Sphere.problem(2).unwrap();
        let cfg = AbcConfig { onlooker_bees: 0, ..AbcConfig::default() };
        let mut colony = Colony::new(&problem, cfg).unwrap();
        let before = colony.swarm().clone();
        colony.onlooker_phase().unwrap();
        assert_eq!(colony.swarm(), &before);
    }

    #[test]
    fn roulette_uniform_fitness_chi_square() {
        let p = vec![0.1; 10];
        let mut rng = SeededRng::new(99);
        let mut counts = [0usize; 10];
        let draws = 10_000;
        for _ in 0..draws {
            counts[roulette_select(&p, rng.uniform())] += 1;
        }
        let expected = draws as f64 / 10.0;
        let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
        // 99.9th percentile of chi-square with 9 degrees of freedom.
        assert!(chi2 < 27.877, "chi2 = {chi2}");
    }

    #[test]
    fn scout_rules() {
        let problem = Benchmark::Sphere.problem(2).unwrap();
        let mut colony = Colony::new(&problem, AbcConfig::default()).unwrap();
        for s in &mut colony.swarm.sources {
            s.trials = 100;
        }
        let before = colony.swarm().clone();
        colony.scout_phase().unwrap();
        assert_eq!(colony.swarm(), &before, "nobody above the limit");

        colony.swarm.sources[4].trials = 101;
        colony.scout_phase().unwrap();
        assert_eq!(colony.swarm.sources[4].trials, 0);
        assert_ne!(colony.swarm.sources[4].position, before.sources[4].position);
        assert!(problem.bounds().contains(&colony.swarm.sources[4].position).unwrap());
        assert_eq!(colony.swarm.evaluations, before.evaluations + 1);

        colony.swarm.sources[2].trials = 150;
        colony.swarm.sources[9].trials = 180;
        colony.swarm.sources[11].trials = 180;
        colony.scout_phase().unwrap();
        assert_eq!(colony.swarm.sources[9].trials, 0);
        assert_eq!(colony.swarm.sources[11].trials, 180);
        assert_eq!(colony.swarm.sources[2].trials, 150);
    }

    #[test]
    fn scout_keeps_best_memory() {
        let problem = Benchmark::Sphere.problem(2).unwrap();
        let mut colony = Colony::new(&problem, AbcConfig::default()).unwrap();
        colony.swarm.sources[0] = source(vec![0.0, 0.0]);
        colony.swarm.best = BestSoFar { position: vec![0.0, 0.0], objective: 0.0 };
        colony.swarm.sources[0].trials = 500;
        colony.scout_phase().unwrap();
        assert_eq!(colony.swarm.best.objective, 0.0);
        assert_ne!(colony.swarm.sources[0].position, vec![0.0, 0.0]);
    }

    #[test]
    fn zero_cycles_returns_initial_best() {
        let problem = Benchmark::Sphere.problem(5).unwrap();
        let cfg = AbcConfig { max_cycles: 0, seed: 3, ..AbcConfig::default() };
        let swarm = init_swarm(&problem, &cfg, &mut SeededRng::new(3)).unwrap();
        let r = run(&problem, &cfg).unwrap();
        assert_eq!(r.best_objective, swarm.best.objective);
        assert_eq!(r.evaluations, 20);
        assert!(r.trace.is_empty());
    }

    #[test]
    fn sphere_two_dimensional_converges() {
        let problem = Benchmark::Sphere.problem(2).unwrap();
        let cfg = AbcConfig { max_cycles: 500, eval_budget: u64::MAX, seed: 2024, ..AbcConfig::default() };
        let r = run(&problem, &cfg).unwrap();
        assert!(r.best_objective <= 1e-8, "best = {}", r.best_objective);
        assert_eq!(r.trace.len(), 500);
    }

    #[test]
    fn same_seed_same_result() {
        let problem = Benchmark::Griewank.problem(5).unwrap();
        let cfg = AbcConfig { seed: 77, max_cycles: 200, ..AbcConfig::default() };
        assert_eq!(run(&problem, &cfg).unwrap(), run(&problem, &cfg).unwrap());
    }

    #[test]
    fn budget_is_a_hard_cap() {
        let problem = Benchmark::Rastrigin.problem(4).unwrap();
        for budget in [20, 21, 33, 1000, 1001] {
            let cfg = AbcConfig { eval_budget: budget, ..AbcConfig::cbabc(0.3) };
            let r = run(&problem, &cfg).unwrap();
            assert_eq!(r.evaluations, budget);
            assert_eq!(r.evaluations_to_success, budget);
        }
    }

    #[test]
    fn success_threshold_records_first_hit() {
        let problem = Benchmark::Sphere.problem(2).unwrap();
        let cfg = AbcConfig { eval_budget: 20_000, seed: 1, ..AbcConfig::default() };
        let r = Colony::new(&problem, cfg).unwrap().with_success_threshold(1e-5).run().unwrap();
        assert!(r.evaluations_to_success < r.evaluations);
        assert!(r.evaluations_to_success > 20);
    }
}
