#![allow(dead_code)]

use markov_ginv::chain::StochasticChain;
use markov_ginv::ginverse::{build_parametric, GInverse, GInverseParams};
use markov_ginv::random::{random_chain, random_params};
use markov_ginv::Matrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn c0() -> StochasticChain {
    StochasticChain::from_rows(&[[0.5, 0.5], [0.5, 0.5]]).unwrap()
}

pub fn c1() -> StochasticChain {
    StochasticChain::from_rows(&[[0.5, 0.5], [0.25, 0.75]]).unwrap()
}

pub fn c2() -> StochasticChain {
    StochasticChain::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random chain with 2..=8 states and a random admissible g-inverse on it.
pub fn instance(seed: u64) -> (StochasticChain, GInverseParams, GInverse) {
    let mut r = rng(seed);
    let m = r.gen_range(2..=8);
    let chain = random_chain(&mut r, m);
    let params = random_params(&mut r, &chain);
    let g = build_parametric(&chain, &params).unwrap();
    (chain, params, g)
}

pub fn max_diff(a: &Matrix, b: &Matrix) -> f64 {
    a.max_abs_diff(b).unwrap()
}

pub fn rel_diff(a: &Matrix, b: &Matrix) -> f64 {
    max_diff(a, b) / b.max_abs().max(1.0)
}

pub fn vec_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(0.0f64, |w, (x, y)| w.max((x - y).abs()))
}

/// Mean first passage times by value iteration on
/// `m_ij ← 1 + Σ_{k≠j} p_ik m_kj`, with `m_jj = 1/π_j` read off the fixed
/// point through `m_jj = 1 + Σ_{k≠j} p_jk m_kj`.
///
/// Shares no code with the library's linear solves.
pub fn mfpt_by_iteration(p: &Matrix, tol: f64) -> Matrix {
    let n = p.rows();
    let mut m = Matrix::filled(n, n, 1.0);
    for _ in 0..2_000_000 {
        let mut next = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut s = 1.0;
                for k in 0..n {
                    if k != j {
                        s += p[(i, k)] * m[(k, j)];
                    }
                }
                next[(i, j)] = s;
            }
        }
        let d = max_diff(&next, &m);
        m = next;
        if d < tol {
            return m;
        }
    }
    panic!("value iteration did not converge");
}

/// `[[1 − a, a], [b, 1 − b]]`.
pub fn two_state(a: f64, b: f64) -> StochasticChain {
    StochasticChain::from_rows(&[[1.0 - a, a], [b, 1.0 - b]]).unwrap()
}
