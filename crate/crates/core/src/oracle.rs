//! Independent checks: Monte Carlo first passage times, power iteration, and
//! closed forms for two-state chains.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::chain::StochasticChain;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};

/// Generator recorded in simulation output.
pub const RNG_NAME: &str = "ChaCha8 (rand_chacha 0.3), stream = trial index";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SimConfig {
    pub trials: usize,
    pub max_steps: u64,
    pub seed: u64,
}

impl SimConfig {
    pub fn new(trials: usize, seed: u64) -> Self {
        SimConfig {
            trials,
            max_steps: 1_000_000,
            seed,
        }
    }
}

/// Sample moments of a first passage time, in steps.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateWithError {
    pub mean: f64,
    pub second_moment: f64,
    pub stderr_mean: f64,
    pub stderr_second_moment: f64,
    pub trials_used: usize,
    pub censored: usize,
    pub rng: &'static str,
}

/// Runs `cfg.trials` walks from `i` until the first visit to `j` at a step `n ≥ 1`.
///
/// Trial `t` draws from stream `t` of a generator keyed by `cfg.seed`, so the
/// result does not depend on how trials are spread over threads.
pub fn simulate_first_passage(
    chain: &StochasticChain,
    i: usize,
    j: usize,
    cfg: &SimConfig,
) -> Result<EstimateWithError> {
    let n = chain.size();
    if i >= n || j >= n {
        return Err(Error::OutOfRange(format!(
            "state pair ({i}, {j}) for {n} states"
        )));
    }
    if cfg.trials == 0 || cfg.max_steps == 0 {
        return Err(Error::OutOfRange(
            "trials and max_steps must be at least 1".into(),
        ));
    }
    let cumulative: Vec<Vec<f64>> = (0..n)
        .map(|r| {
            let mut acc = 0.0;
            chain
                .p()
                .row(r)
                .iter()
                .map(|x| {
                    acc += x;
                    acc
                })
                .collect()
        })
        .collect();
    let last_positive: Vec<usize> = (0..n)
        .map(|r| {
            (0..n)
                .rev()
                .find(|&k| chain.p()[(r, k)] > 0.0)
                .unwrap_or(n - 1)
        })
        .collect();

    let times: Vec<Option<u64>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(t as u64);
            let mut state = i;
            for step in 1..=cfg.max_steps {
                let u: f64 = rng.gen();
                let row = &cumulative[state];
                state = row
                    .iter()
                    .position(|&c| u < c)
                    .unwrap_or(last_positive[state]);
                if state == j {
                    return Some(step);
                }
            }
            None
        })
        .collect();

    let censored = times.iter().filter(|t| t.is_none()).count();
    if censored * 100 > cfg.trials {
        return Err(Error::TooManyCensored {
            censored,
            trials: cfg.trials,
        });
    }
    let samples: Vec<f64> = times.iter().flatten().map(|&s| s as f64).collect();
    let k = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / k;
    let squares: Vec<f64> = samples.iter().map(|s| s * s).collect();
    let second_moment = squares.iter().sum::<f64>() / k;
    Ok(EstimateWithError {
        mean,
        second_moment,
        stderr_mean: stderr(&samples, mean),
        stderr_second_moment: stderr(&squares, second_moment),
        trials_used: samples.len(),
        censored,
        rng: RNG_NAME,
    })
}

fn stderr(xs: &[f64], mean: f64) -> f64 {
    let n = xs.len();
    if n < 2 {
        return 0.0;
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (var / n as f64).sqrt()
}

/// Iterates `xᵀ ← xᵀP` from the uniform vector until `‖Δ‖₁ < tol`. With
/// `damped`, uses `(P + I)/2`, which has the same π and is aperiodic.
pub fn power_iteration_pi(p: &Matrix, tol: f64, max_iters: usize, damped: bool) -> Result<Vector> {
    p.check_square()?;
    let n = p.rows();
    let step = if damped {
        (p + &Matrix::identity(n)).scale(0.5)
    } else {
        p.clone()
    };
    let mut x = Vector::filled(n, 1.0 / n as f64);
    for _ in 0..max_iters {
        let next = step.vec_mul(&x);
        let delta = (&next - &x).norm1();
        x = next;
        if delta < tol {
            return Ok(x.scale(1.0 / x.sum()));
        }
    }
    Err(Error::NoConvergence { iters: max_iters })
}

/// Analytic quantities for `P = [[1−a, a], [b, 1−b]]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwoStateClosedForm {
    pub pi: Vector,
    pub m: Matrix,
    pub md2: Vector,
    /// All second moments, including `m₁₂⁽²⁾ = (2 − a)/a²`.
    pub m2: Matrix,
    pub kemeny: f64,
    pub z: Matrix,
    pub a_sharp: Matrix,
}

pub fn two_state_closed_form(a: f64, b: f64) -> Result<TwoStateClosedForm> {
    for (name, v) in [("a", a), ("b", b)] {
        if !(v > 0.0 && v <= 1.0) {
            return Err(Error::OutOfRange(format!(
                "{name} = {v} must lie in (0, 1]"
            )));
        }
    }
    let s = a + b;
    let pi = Vector::from([b / s, a / s]);
    let m = Matrix::from_rows(&[[s / b, 1.0 / a], [1.0 / b, s / a]])?;
    // T_12 is geometric with success probability a, so E[T²] = (2 − a)/a².
    let m12_2 = (2.0 - a) / (a * a);
    let m21_2 = (2.0 - b) / (b * b);
    // first step stays with 1 − a, or leaves and returns after 1 + T_21
    let m11_2 = (1.0 - a) + a * (1.0 + 2.0 / b + m21_2);
    let m22_2 = (1.0 - b) + b * (1.0 + 2.0 / a + m12_2);
    let m2 = Matrix::from_rows(&[[m11_2, m12_2], [m21_2, m22_2]])?;

    // Z = [I − P + Π]⁻¹ by the 2×2 adjugate
    let k = [[a + pi[0], -a + pi[1]], [-b + pi[0], b + pi[1]]];
    let det = k[0][0] * k[1][1] - k[0][1] * k[1][0];
    let z = Matrix::from_rows(&[
        [k[1][1] / det, -k[0][1] / det],
        [-k[1][0] / det, k[0][0] / det],
    ])?;
    let c = 1.0 / (s * s);
    let a_sharp = Matrix::from_rows(&[[a * c, -a * c], [-b * c, b * c]])?;
    Ok(TwoStateClosedForm {
        pi,
        m,
        md2: Vector::from([m11_2, m22_2]),
        m2,
        kemeny: 1.0 + 1.0 / s,
        z,
        a_sharp,
    })
}
