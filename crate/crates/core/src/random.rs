//! Random instance generators for property checks: chains, admissible
//! g-inverse parameters and valid perturbations.

use rand::Rng;

use crate::chain::StochasticChain;
use crate::ginverse::GInverseParams;
use crate::matrix::{Matrix, Tolerance, Vector};

/// A random irreducible chain on `m` states.
///
/// Roughly 30% of entries are zeroed; a cycle `i → i+1` keeps the chain irreducible.
pub fn random_chain<R: Rng + ?Sized>(rng: &mut R, m: usize) -> StochasticChain {
    let mut p = Matrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            if rng.gen_bool(0.7) {
                p[(i, j)] = rng.gen_range(0.05..1.0);
            }
        }
        p[(i, (i + 1) % m)] += 0.1;
        let s: f64 = p.row(i).iter().sum();
        for j in 0..m {
            p[(i, j)] /= s;
        }
    }
    StochasticChain::validate(&p, Tolerance::DEFAULT).expect("generated chain is irreducible")
}

/// A random doubly stochastic chain: convex combination of permutation
/// matrices including the cyclic shift.
pub fn random_doubly_stochastic<R: Rng + ?Sized>(rng: &mut R, m: usize) -> StochasticChain {
    let mut p = Matrix::zeros(m, m);
    let k = 3;
    let mut weights: Vec<f64> = (0..=k).map(|_| rng.gen_range(0.1..1.0)).collect();
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);
    for i in 0..m {
        p[(i, (i + 1) % m)] += weights[0];
    }
    for w in &weights[1..] {
        let mut perm: Vec<usize> = (0..m).collect();
        for a in (1..m).rev() {
            let b = rng.gen_range(0..=a);
            perm.swap(a, b);
        }
        for (i, &j) in perm.iter().enumerate() {
            p[(i, j)] += w;
        }
    }
    StochasticChain::validate(&p, Tolerance::DEFAULT).expect("generated chain is irreducible")
}

/// Admissible `(α, β, γ)`: `πᵀα = 1`, `βᵀe = 1`, `γ ∈ [−2, 2]`.
///
/// Draws with `|πᵀα'| < 0.1` or `|β'ᵀe| < 0.1` are rejected.
pub fn random_params<R: Rng + ?Sized>(rng: &mut R, chain: &StochasticChain) -> GInverseParams {
    let m = chain.size();
    let alpha = loop {
        let a: Vector = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let s = a.dot(chain.pi());
        if s.abs() >= 0.1 {
            break a.scale(1.0 / s);
        }
    };
    let beta = loop {
        let b: Vector = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let s = b.sum();
        if s.abs() >= 0.1 {
            break b.scale(1.0 / s);
        }
    };
    GInverseParams {
        alpha,
        beta,
        gamma: rng.gen_range(-2.0..2.0),
    }
}

/// A random zero-row-sum perturbation with `‖E‖∞ ≤ max_norm`.
///
/// Each row moves mass `ε` between two columns. Mass taken from an entry is
/// at most half of it, so every positive entry of `P` stays positive and
/// `P + E` remains irreducible.
pub fn random_perturbation<R: Rng + ?Sized>(
    rng: &mut R,
    chain: &StochasticChain,
    max_norm: f64,
) -> Matrix {
    let m = chain.size();
    let p = chain.p();
    let mut e = Matrix::zeros(m, m);
    if m < 2 {
        return e;
    }
    for i in 0..m {
        let j = rng.gen_range(0..m);
        let k = (j + rng.gen_range(1..m)) % m;
        // e_ij += eps, e_ik -= eps
        let eps = rng
            .gen_range(-0.5 * max_norm..=0.5 * max_norm)
            .clamp(-0.5 * p[(i, j)], 0.5 * p[(i, k)]);
        e[(i, j)] += eps;
        e[(i, k)] -= eps;
    }
    e
}
