//! Symmetric Euclidean TSP on top of the continuous optimizer.
//!
//! A tour is encoded as a key vector in `[0, 1]^n`; visiting cities in
//! ascending key order gives the tour. Both the neighbourhood move and
//! linear crossover stay well defined under that encoding.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::objective::{BoxBounds, Problem};

/// Largest instance [`brute_force_optimum`] accepts.
pub const BRUTE_FORCE_MAX: usize = 10;

/// Side of the square cities are drawn from.
pub const COORDINATE_RANGE: f64 = 100.0;

/// Seed used for a generated instance of `n` cities when none is given.
pub fn default_instance_seed(n: usize) -> u64 {
    0x7_5350_0000 + n as u64
}

#[derive(Clone, Debug, PartialEq)]
pub struct TspInstance {
    name: String,
    seed: Option<u64>,
    cities: Vec<(f64, f64)>,
    /// Row-major `n × n` distance matrix.
    cost: Vec<f64>,
}

impl TspInstance {
    pub fn from_points(name: impl Into<String>, cities: Vec<(f64, f64)>) -> Result<Self> {
        let n = cities.len();
        if n < 3 {
            return Err(Error::InvalidDimension { dim: n, reason: "a tour needs at least three cities" });
        }
        for (i, &(x, y)) in cities.iter().enumerate() {
            if !x.is_finite() {
                return Err(Error::NonFinite { index: i, value: x });
            }
            if !y.is_finite() {
                return Err(Error::NonFinite { index: i, value: y });
            }
        }
        let mut cost = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let (dx, dy) = (cities[i].0 - cities[j].0, cities[i].1 - cities[j].1);
                let d = dx.hypot(dy);
                cost[i * n + j] = d;
                cost[j * n + i] = d;
            }
        }
        Ok(Self { name: name.into(), seed: None, cities, cost })
    }

    /// `n` cities uniform in `[0, 100]²`.
    pub fn generate(n: usize, seed: u64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidDimension { dim: n, reason: "a tour needs at least three cities" });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cities = (0..n)
            .map(|_| (rng.random_range(0.0..=COORDINATE_RANGE), rng.random_range(0.0..=COORDINATE_RANGE)))
            .collect();
        let mut inst = Self::from_points(format!("uniform-n{n}-s{seed}"), cities)?;
        inst.seed = Some(seed);
        Ok(inst)
    }

    /// Parses the plain-text format: a city count on the first line, then
    /// one `x y` pair per line. Blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (first, header) = lines.next().ok_or(Error::Parse { line: 1, message: "empty input".into() })?;
        let n: usize = header.trim().parse().map_err(|_| Error::Parse {
            line: first + 1,
            message: format!("expected city count, got `{}`", header.trim()),
        })?;
        let mut cities = Vec::with_capacity(n.min(1 << 16));
        for (idx, line) in lines {
            let lineno = idx + 1;
            if cities.len() == n {
                return Err(Error::Parse { line: lineno, message: format!("more than {n} cities") });
            }
            let mut fields = line.split_whitespace();
            let mut coord = |what: &str| -> Result<f64> {
                let field =
                    fields.next().ok_or_else(|| Error::Parse { line: lineno, message: format!("missing {what}") })?;
                let v: f64 = field
                    .parse()
                    .map_err(|_| Error::Parse { line: lineno, message: format!("bad {what} `{field}`") })?;
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::Parse { line: lineno, message: format!("non-finite {what}") })
                }
            };
            let x = coord("x")?;
            let y = coord("y")?;
            if fields.next().is_some() {
                return Err(Error::Parse { line: lineno, message: "trailing fields".into() });
            }
            cities.push((x, y));
        }
        if cities.len() != n {
            return Err(Error::Parse {
                line: first + 1,
                message: format!("header says {n} cities, found {}", cities.len()),
            });
        }
        Self::from_points(format!("file-n{n}"), cities)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut inst = Self::parse(&text)?;
        if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
            inst.name = stem.to_string();
        }
        Ok(inst)
    }

    /// Serializes to the text format; coordinates round-trip exactly.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.len());
        for (x, y) in &self.cities {
            writeln!(out, "{x:?} {y:?}").unwrap();
        }
        out
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.cities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cities.is_empty()
    }

    pub fn cities(&self) -> &[(f64, f64)] {
        &self.cities
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.cost[i * self.len() + j]
    }

    /// Closed-tour cost; `order` must already be a valid permutation.
    fn closed_length(&self, order: &[usize]) -> f64 {
        let n = order.len();
        (0..n).map(|t| self.distance(order[t], order[(t + 1) % n])).sum()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tour {
    pub order: Vec<usize>,
    pub length: f64,
}

/// City order that sorts the keys ascending; ties keep index order.
pub fn decode_keys(keys: &[f64]) -> Result<Vec<usize>> {
    if let Some(index) = keys.iter().position(|k| !k.is_finite()) {
        return Err(Error::NonFinite { index, value: keys[index] });
    }
    let mut order: Vec<usize> = (0..keys.len()).collect();
    // Keys are finite here, so the comparison is total (and -0 ties with 0).
    order.sort_by(|&a, &b| keys[a].partial_cmp(&keys[b]).expect("finite keys"));
    Ok(order)
}

fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    if order.len() != n {
        return Err(Error::InvalidTour(format!("expected {n} cities, got {}", order.len())));
    }
    let mut seen = vec![false; n];
    for &c in order {
        if c >= n {
            return Err(Error::InvalidTour(format!("city {c} out of range")));
        }
        if std::mem::replace(&mut seen[c], true) {
            return Err(Error::InvalidTour(format!("city {c} visited twice")));
        }
    }
    Ok(())
}

/// Length of the closed tour, including the edge back to the start.
pub fn tour_length(order: &[usize], inst: &TspInstance) -> Result<f64> {
    check_permutation(order, inst.len())?;
    Ok(inst.closed_length(order))
}

/// Key-vector problem over `[0, 1]^n` whose objective is the decoded tour
/// length.
pub fn as_problem(inst: Arc<TspInstance>) -> Problem {
    let n = inst.len();
    let bounds = BoxBounds::uniform(n, 0.0, 1.0).expect("n >= 3");
    let name = format!("tsp:{}", inst.name());
    Problem::new(name, bounds, move |keys| {
        let order = decode_keys(keys)?;
        Ok(inst.closed_length(&order))
    })
}

/// Exact optimum by enumerating every tour with city 0 fixed first and
/// each direction counted once: `(n − 1)! / 2` tours.
pub fn brute_force_optimum(inst: &TspInstance) -> Result<Tour> {
    let n = inst.len();
    if n > BRUTE_FORCE_MAX {
        return Err(Error::TooLarge { n, max: BRUTE_FORCE_MAX });
    }
    let mut rest: Vec<usize> = (1..n).collect();
    let mut best = Tour { order: Vec::new(), length: f64::INFINITY };
    let mut tour = vec![0; n];
    permute(&mut rest, 0, &mut |perm| {
        // Skip the mirror image of every tour.
        if perm[0] > perm[perm.len() - 1] {
            return;
        }
        tour[1..].copy_from_slice(perm);
        let length = inst.closed_length(&tour);
        if length < best.length {
            best = Tour { order: tour.clone(), length };
        }
    });
    Ok(best)
}

/// Visits every permutation of `items[k..]` in lexicographic-by-position
/// swap order.
fn permute(items: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}
