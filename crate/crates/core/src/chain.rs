//! Validated transition matrices and their stationary distributions.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::matrix::{invert, Matrix, Tolerance, Vector};

/// Numerical threshold for the nonsingularity conditions `πᵀt ≠ 0` and `uᵀe ≠ 0`.
pub const NONSINGULAR_THRESHOLD: f64 = 1e-12;

/// An irreducible finite Markov chain with its stationary vector.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticChain {
    p: Matrix,
    pi: Vector,
}

impl StochasticChain {
    /// Checks stochasticity and irreducibility, renormalizes rows exactly,
    /// and computes π.
    pub fn validate(p_raw: &Matrix, tol: Tolerance) -> Result<Self> {
        p_raw.check_square()?;
        let m = p_raw.rows();
        let mut p = p_raw.clone();
        for i in 0..m {
            for j in 0..m {
                let v = p[(i, j)];
                if v < 0.0 {
                    if v < -tol.abs {
                        return Err(Error::NotStochastic {
                            row: i,
                            reason: format!("negative entry {v} in column {j}"),
                        });
                    }
                    p[(i, j)] = 0.0;
                }
            }
            let s: f64 = p.row(i).iter().sum();
            if !tol.close(s, 1.0) {
                return Err(Error::NotStochastic {
                    row: i,
                    reason: format!("row sums to {s}"),
                });
            }
            for j in 0..m {
                p[(i, j)] /= s;
            }
        }
        if let Some(state) = unreachable_state(&p) {
            return Err(Error::NotIrreducible { state });
        }
        let pi = stationary_distribution(&p)?;
        if let Some(j) = pi.iter().position(|&x| x <= 0.0) {
            return Err(Error::NotIrreducible { state: j });
        }
        Ok(StochasticChain { p, pi })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        StochasticChain::validate(&Matrix::from_rows(rows)?, Tolerance::DEFAULT)
    }

    /// Transition matrix `P`.
    pub fn p(&self) -> &Matrix {
        &self.p
    }

    /// Stationary distribution `π`.
    pub fn pi(&self) -> &Vector {
        &self.pi
    }

    /// Number of states.
    pub fn size(&self) -> usize {
        self.p.rows()
    }

    /// The Markovian kernel `I − P`.
    pub fn kernel(&self) -> Matrix {
        &Matrix::identity(self.size()) - &self.p
    }

    /// `Π = eπᵀ`.
    pub fn pi_matrix(&self) -> Matrix {
        Matrix::outer(&Vector::ones(self.size()), &self.pi)
    }

    /// `I − Π`.
    pub fn deflator(&self) -> Matrix {
        &Matrix::identity(self.size()) - &self.pi_matrix()
    }

    /// `D = M_d = (Π_d)⁻¹`, the diagonal of mean recurrence times.
    pub fn recurrence_diag(&self) -> Matrix {
        Matrix::from_diag(&self.pi.map(|x| 1.0 / x))
    }
}

/// True iff the graph with an edge `i → j` whenever `p_ij > 0` is strongly connected.
pub fn is_irreducible(p: &Matrix) -> bool {
    p.is_square() && unreachable_state(p).is_none()
}

/// First state not reachable from state 0, or not reaching it.
fn unreachable_state(p: &Matrix) -> Option<usize> {
    let forward = reach(p, false);
    let backward = reach(p, true);
    (0..p.rows()).find(|&j| !forward[j] || !backward[j])
}

fn reach(p: &Matrix, transposed: bool) -> Vec<bool> {
    let m = p.rows();
    let mut seen = vec![false; m];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for j in 0..m {
            let w = if transposed { p[(j, i)] } else { p[(i, j)] };
            if w > 0.0 && !seen[j] {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    seen
}

/// `πᵀ = uᵀ[I − P + t uᵀ]⁻¹` with `t = e`, `u = e/m`, renormalized to sum to one.
pub fn stationary_distribution(p: &Matrix) -> Result<Vector> {
    let m = p.rows();
    stationary_with(p, &Vector::ones(m), &Vector::filled(m, 1.0 / m as f64))
}

/// Stationary vector via `uᵀ[I − P + t uᵀ]⁻¹ = πᵀ/(πᵀt)` for caller-chosen `t`, `u`.
///
/// The result is renormalized, so any admissible `t` yields π.
pub fn stationary_with(p: &Matrix, t: &[f64], u: &[f64]) -> Result<Vector> {
    p.check_square()?;
    let m = p.rows();
    if u.iter().sum::<f64>().abs() < NONSINGULAR_THRESHOLD {
        return Err(Error::DegenerateParameters("uᵀe = 0".into()));
    }
    let a = &(&Matrix::identity(m) - p) + &Matrix::outer(t, u);
    let x = invert(&a)?.vec_mul(u);
    let s = x.sum();
    if s.abs() < NONSINGULAR_THRESHOLD {
        return Err(Error::DegenerateParameters("πᵀt = 0".into()));
    }
    Ok(normalize(x.scale(1.0 / s)))
}

/// Rescales a probability vector so its components sum to exactly one
/// under left-to-right summation.
pub(crate) fn normalize(v: Vector) -> Vector {
    let s = v.sum();
    let mut data = if s != 0.0 { v.scale(1.0 / s) } else { v }.into_inner();
    if let Some((last, head)) = data.split_last_mut() {
        // fl(s + fl(1 - s)) == 1 for any s in [0, 1]
        *last = 1.0 - head.iter().sum::<f64>();
    }
    Vector::new(data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_chain;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn validate_two_state() {
        let c = StochasticChain::from_rows(&[[0.5, 0.5], [0.25, 0.75]]).unwrap();
        assert!(c
            .pi()
            .approx_eq(&[1.0 / 3.0, 2.0 / 3.0], Tolerance::abs(1e-15)));
    }

    #[test]
    fn validate_rejects_identity_and_bad_rows() {
        assert!(matches!(
            StochasticChain::from_rows(&[[1.0, 0.0], [0.0, 1.0]]),
            Err(Error::NotIrreducible { .. })
        ));
        assert!(matches!(
            StochasticChain::from_rows(&[[0.5, 0.6], [0.25, 0.75]]),
            Err(Error::NotStochastic { row: 0, .. })
        ));
        assert!(matches!(
            StochasticChain::from_rows(&[[1.5, -0.5], [0.25, 0.75]]),
            Err(Error::NotStochastic { row: 0, .. })
        ));
    }

    #[test]
    fn rows_are_renormalized_exactly() {
        let p = Matrix::from_rows(&[[0.5 + 1e-12, 0.5], [0.25, 0.75]]).unwrap();
        let c = StochasticChain::validate(&p, Tolerance::DEFAULT).unwrap();
        for s in c.p().row_sums().iter() {
            assert!((s - 1.0).abs() <= f64::EPSILON);
        }
    }

    #[test]
    fn irreducibility_examples() {
        let m = |r: &[&[f64]]| Matrix::from_rows(r).unwrap();
        assert!(is_irreducible(&m(&[&[0.0, 1.0], &[1.0, 0.0]])));
        assert!(!is_irreducible(&Matrix::identity(2)));
        assert!(is_irreducible(&m(&[
            &[0.0, 1.0, 0.0],
            &[0.0, 0.0, 1.0],
            &[1.0, 0.0, 0.0]
        ])));
        // one-way edge only
        assert!(!is_irreducible(&m(&[&[0.5, 0.5], &[0.0, 1.0]])));
    }

    #[test]
    fn stationary_examples() {
        let m = |r: &[&[f64]]| Matrix::from_rows(r).unwrap();
        let tol = Tolerance::abs(1e-15);
        assert!(stationary_distribution(&m(&[&[0.5, 0.5], &[0.5, 0.5]]))
            .unwrap()
            .approx_eq(&[0.5, 0.5], tol));
        assert!(stationary_distribution(&m(&[&[0.5, 0.5], &[0.25, 0.75]]))
            .unwrap()
            .approx_eq(&[1.0 / 3.0, 2.0 / 3.0], tol));
        assert!(stationary_distribution(&m(&[&[0.0, 1.0], &[1.0, 0.0]]))
            .unwrap()
            .approx_eq(&[0.5, 0.5], tol));
    }

    #[test]
    fn random_chains_are_stationary_and_choice_of_u_is_irrelevant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let m = 2 + (rand::Rng::gen_range(&mut rng, 0..7));
            let c = random_chain(&mut rng, m);
            let pi = c.pi();
            let resid = (&c.p().vec_mul(pi) - pi).norm_inf();
            assert!(resid <= 1e-10, "residual {resid}");
            assert_eq!(pi.sum(), 1.0);
            let alt = stationary_with(c.p(), &Vector::ones(m), &Vector::basis(m, 0)).unwrap();
            assert!(alt.max_abs_diff(pi) <= 1e-10);
        }
    }
}
