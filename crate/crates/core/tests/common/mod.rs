//! Test-only helpers shared by the integration suites.
#![allow(dead_code)]

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use cbabc::{Problem, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// Prints one verdict line and fails the test if the criterion failed.
pub fn verdict(id: u32, name: &str, pass: bool, detail: impl AsRef<str>) {
    println!("criterion {id} [{}] {name}: {}", if pass { "PASS" } else { "FAIL" }, detail.as_ref());
    assert!(pass, "criterion {id} failed: {}", detail.as_ref());
}

/// Wraps `inner` so every objective call increments the returned counter.
pub fn counting(inner: &Problem) -> (Problem, Arc<AtomicU64>) {
    let calls = Arc::new(AtomicU64::new(0));
    let counter = calls.clone();
    let wrapped = inner.clone();
    let problem = Problem::new(inner.name(), inner.bounds().clone(), move |x: &[f64]| -> Result<f64> {
        counter.fetch_add(1, Ordering::Relaxed);
        wrapped.evaluate(x)
    });
    (problem, calls)
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Textbook ABC written independently of the library: `food` sources, one
/// employed and one onlooker bee per source, onlookers visiting sources in
/// turn and accepting with probability `0.9·fit/max_fit + 0.1`, all
/// sources over `limit` trials re-drawn each cycle. Stops after `budget`
/// evaluations. Returns the best objective found.
#[allow(clippy::too_many_arguments)]
pub fn reference_abc(
    f: impl Fn(&[f64]) -> f64,
    dim: usize,
    lo: f64,
    hi: f64,
    food: usize,
    limit: u32,
    budget: u64,
    seed: u64,
) -> f64 {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let fit = |v: f64| if v >= 0.0 { 1.0 / (1.0 + v) } else { 1.0 + v.abs() };
    let mut evals = 0u64;
    let mut xs: Vec<Vec<f64>> = Vec::new();
    let mut fs: Vec<f64> = Vec::new();
    let mut trials = vec![0u32; food];
    let mut best = f64::INFINITY;
    for _ in 0..food {
        let x: Vec<f64> = (0..dim).map(|_| lo + rng.random::<f64>() * (hi - lo)).collect();
        let v = f(&x);
        evals += 1;
        best = best.min(v);
        xs.push(x);
        fs.push(v);
    }
    let try_update = |i: usize,
                      xs: &mut Vec<Vec<f64>>,
                      fs: &mut Vec<f64>,
                      trials: &mut Vec<u32>,
                      rng: &mut ChaCha20Rng,
                      evals: &mut u64,
                      best: &mut f64| {
        let j = rng.random_range(0..dim);
        let k = loop {
            let k = rng.random_range(0..food);
            if k != i {
                break k;
            }
        };
        let phi: f64 = rng.random_range(-1.0..=1.0);
        let mut v = xs[i].clone();
        v[j] = (xs[i][j] + phi * (xs[i][j] - xs[k][j])).clamp(lo, hi);
        let fv = f(&v);
        *evals += 1;
        *best = best.min(fv);
        if fit(fv) > fit(fs[i]) {
            xs[i] = v;
            fs[i] = fv;
            trials[i] = 0;
        } else {
            trials[i] += 1;
        }
    };
    'outer: loop {
        for i in 0..food {
            if evals >= budget {
                break 'outer;
            }
            try_update(i, &mut xs, &mut fs, &mut trials, &mut rng, &mut evals, &mut best);
        }
        let max_fit = fs.iter().map(|&v| fit(v)).fold(0.0, f64::max);
        let probs: Vec<f64> = fs.iter().map(|&v| 0.9 * fit(v) / max_fit + 0.1).collect();
        let (mut i, mut sent) = (0, 0);
        while sent < food {
            if evals >= budget {
                break 'outer;
            }
            if rng.random::<f64>() < probs[i] {
                sent += 1;
                try_update(i, &mut xs, &mut fs, &mut trials, &mut rng, &mut evals, &mut best);
            }
            i = (i + 1) % food;
        }
        for i in 0..food {
            if trials[i] > limit && evals < budget {
                let x: Vec<f64> = (0..dim).map(|_| lo + rng.random::<f64>() * (hi - lo)).collect();
                fs[i] = f(&x);
                evals += 1;
                best = best.min(fs[i]);
                xs[i] = x;
                trials[i] = 0;
            }
        }
    }
    best
}
