//! Exact change of the stationary distribution under `P̄ = P + E`.

use serde::Serialize;

use crate::chain::StochasticChain;
use crate::error::{Error, Result};
use crate::ginverse::{classify, group_inverse, GInverse};
use crate::matrix::{solve_linear, Matrix, Tolerance, Vector};
use crate::moments::{kemeny_constant, KemenyRoute};
use crate::passage::mfpt_direct;
use crate::routes::{check_agreement, RouteValue};

/// Agreement tolerance between perturbation routes and the recomputed `π̄`.
pub const PERTURBATION_TOL: f64 = 1e-9;
/// Rounding slack allowed on the Kemeny bound.
pub const BOUND_SLACK: f64 = 1e-12;

/// A validated perturbation of a chain.
#[derive(Debug, Clone)]
pub struct Perturbation<'a> {
    chain: &'a StochasticChain,
    e: Matrix,
    perturbed: StochasticChain,
}

impl<'a> Perturbation<'a> {
    /// Checks that every row of `E` sums to zero and that `P + E` is a valid
    /// chain. The stored `E` is `P̄ − P` after validation.
    pub fn new(chain: &'a StochasticChain, e: &Matrix, tol: Tolerance) -> Result<Self> {
        let n = chain.size();
        if e.rows() != n || e.cols() != n {
            return Err(Error::ShapeMismatch {
                expected: format!("{n}x{n}"),
                found: format!("{}x{}", e.rows(), e.cols()),
            });
        }
        for (i, s) in e.row_sums().iter().enumerate() {
            if !tol.close(*s, 0.0) {
                return Err(Error::NotStochastic {
                    row: i,
                    reason: format!("perturbation row sums to {s}, must be 0"),
                });
            }
        }
        let perturbed = StochasticChain::validate(&(chain.p() + e), tol)?;
        let e = perturbed.p() - chain.p();
        Ok(Perturbation {
            chain,
            e,
            perturbed,
        })
    }

    pub fn chain(&self) -> &StochasticChain {
        self.chain
    }

    pub fn e(&self) -> &Matrix {
        &self.e
    }

    pub fn perturbed_chain(&self) -> &StochasticChain {
        &self.perturbed
    }
}

/// Solves `π̄ᵀ(I − EA#) = πᵀ` and checks the result against the stationary
/// vector of `P̄` computed from scratch.
pub fn perturbed_stationary(pert: &Perturbation) -> Result<Vector> {
    let chain = pert.chain();
    let n = chain.size();
    let h = group_inverse(chain)?;
    let a = &Matrix::identity(n) - &(pert.e() * h.g());
    let rhs = Matrix::from_fn(n, 1, |i, _| chain.pi()[i]);
    let x = solve_linear(&a.transpose(), &rhs)?.col(0);
    let pi_bar = crate::chain::normalize(x);
    let direct = pert.perturbed_chain().pi();
    let diff = pi_bar.max_abs_diff(direct);
    if !(diff <= PERTURBATION_TOL) {
        return Err(Error::RouteDisagreement {
            what: "perturbed stationary distribution",
            left: "pi'(I - E A#)^-1".into(),
            right: "stationary(P + E)".into(),
            diff,
        });
    }
    Ok(pi_bar)
}

/// The Kemeny-constant bound `Σ|π_j − π̄_j| ≤ (K − 1)‖E‖∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KemenyBound {
    pub lhs: f64,
    pub bound: f64,
    pub kemeny: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerturbationReport {
    pub pi_bar: Vector,
    pub delta: Vector,
    pub routes: Vec<RouteValue>,
    pub max_route_diff: f64,
    pub bound: KemenyBound,
}

/// `N = (M − M_d)M_d⁻¹`, computed as a product and element-wise as
/// `n_ij = (1 − δ_ij) m_ij / m_jj`; the two must agree.
pub fn n_matrix(m: &Matrix) -> Result<Matrix> {
    m.check_square()?;
    let n = m.rows();
    let md_inv = Matrix::from_diag(&m.diagonal().map(|x| 1.0 / x));
    let product = &(m - &m.diag_part()) * &md_inv;
    let element = Matrix::from_fn(
        n,
        n,
        |i, j| {
            if i == j {
                0.0
            } else {
                m[(i, j)] / m[(j, j)]
            }
        },
    );
    let diff = product.max_abs_diff(&element)?;
    if diff > 1e-12 * element.max_abs().max(1.0) {
        return Err(Error::RouteDisagreement {
            what: "N matrix",
            left: "(M - M_d) M_d^-1".into(),
            right: "(1 - delta_ij) pi_j m_ij".into(),
            diff,
        });
    }
    Ok(element)
}

/// Every applicable route to `π̄ − π`, checked against the direct difference.
pub fn delta_routes(pert: &Perturbation, ginv: &GInverse) -> Result<PerturbationReport> {
    let chain = pert.chain();
    let n = chain.size();
    let pi = chain.pi();
    let e = pert.e();
    let g = ginv.g();
    let set = classify(chain, ginv)?;

    let pi_bar = perturbed_stationary(pert)?;
    let mut delta = (&pi_bar - pi).into_inner();
    if let Some((last, head)) = delta.split_last_mut() {
        *last = -head.iter().sum::<f64>();
    }
    let delta = Vector::new(delta);

    let h = g * &chain.deflator();
    let m = mfpt_direct(chain)?.into_matrix();
    let nm = n_matrix(&m)?;
    let pe = e.vec_mul(&pi_bar);
    let row_sums = g.row_sums();
    let md_inv = Matrix::from_diag(&m.diagonal().map(|x| 1.0 / x));

    let mut routes = vec![RouteValue::new("pi_bar - pi", delta.clone())];
    routes.push(RouteValue::new("pi_bar' E H", h.vec_mul(&pe)));
    if set.cond5a {
        routes.push(RouteValue::new("pi_bar' E G", g.vec_mul(&pe)));
    }
    routes.push(RouteValue::new(
        "-pi_bar' E (M - M_d) M_d^-1",
        (&(&m - &m.diag_part()) * &md_inv).vec_mul(&pe).scale(-1.0),
    ));
    routes.push(RouteValue::new("-pi_bar' E N", nm.vec_mul(&pe).scale(-1.0)));

    // pe_k = Σ_i π̄_i ε_ik
    routes.push(RouteValue::new(
        "sum pi_bar_i e_ik h_kj",
        (0..n)
            .map(|j| (0..n).map(|k| pe[k] * h[(k, j)]).sum())
            .collect(),
    ));
    let weighted_rows: f64 = (0..n).map(|k| pe[k] * row_sums[k]).sum();
    routes.push(RouteValue::new(
        "sum pi_bar_i e_ik (g_kj - g_k. pi_j)",
        (0..n)
            .map(|j| (0..n).map(|k| pe[k] * g[(k, j)]).sum::<f64>() - pi[j] * weighted_rows)
            .collect(),
    ));
    if set.cond5a {
        routes.push(RouteValue::new(
            "sum pi_bar_i e_ik g_kj",
            (0..n)
                .map(|j| (0..n).map(|k| pe[k] * g[(k, j)]).sum())
                .collect(),
        ));
    }
    routes.push(RouteValue::new(
        "-pi_j sum_{k != j} pi_bar_i e_ik m_kj",
        (0..n)
            .map(|j| {
                -pi[j]
                    * (0..n)
                        .filter(|&k| k != j)
                        .map(|k| pe[k] * m[(k, j)])
                        .sum::<f64>()
            })
            .collect(),
    ));
    routes.push(RouteValue::new(
        "-sum_{l != j} pi_bar_k e_kl n_lj",
        (0..n)
            .map(|j| {
                -(0..n)
                    .filter(|&l| l != j)
                    .map(|l| pe[l] * nm[(l, j)])
                    .sum::<f64>()
            })
            .collect(),
    ));

    let max_route_diff = check_agreement("stationary perturbation", &routes, PERTURBATION_TOL)?;
    let bound = kemeny_bound_with(pert, &delta)?;
    Ok(PerturbationReport {
        pi_bar,
        delta,
        routes: routes.split_off(1),
        max_route_diff,
        bound,
    })
}

/// Max-abs residual of `(π̄ᵀ − πᵀ)(I − P) − π̄ᵀE`.
pub fn identity_residual(pert: &Perturbation, pi_bar: &[f64]) -> f64 {
    let chain = pert.chain();
    let d: Vector = pi_bar
        .iter()
        .zip(chain.pi().iter())
        .map(|(a, b)| a - b)
        .collect();
    chain
        .kernel()
        .vec_mul(&d)
        .max_abs_diff(&pert.e().vec_mul(pi_bar))
}

pub fn kemeny_bound(pert: &Perturbation) -> Result<KemenyBound> {
    let pi_bar = perturbed_stationary(pert)?;
    kemeny_bound_with(pert, &(&pi_bar - pert.chain().pi()))
}

fn kemeny_bound_with(pert: &Perturbation, delta: &[f64]) -> Result<KemenyBound> {
    let k = kemeny_constant(pert.chain(), KemenyRoute::Definition, None)?.value;
    let lhs: f64 = delta.iter().map(|d| d.abs()).sum();
    let bound = (k - 1.0) * pert.e().inf_norm();
    Ok(KemenyBound {
        lhs,
        bound,
        kemeny: k,
        satisfied: lhs <= bound + BOUND_SLACK,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ginverse::{fundamental_matrix, moore_penrose};

    const TIGHT: Tolerance = Tolerance {
        abs: 1e-12,
        rel: 0.0,
    };

    fn c0() -> StochasticChain {
        StochasticChain::from_rows(&[[0.5, 0.5], [0.5, 0.5]]).unwrap()
    }
    fn c1() -> StochasticChain {
        StochasticChain::from_rows(&[[0.5, 0.5], [0.25, 0.75]]).unwrap()
    }
    fn e1() -> Matrix {
        Matrix::from_rows(&[[-0.25, 0.25], [0.0, 0.0]]).unwrap()
    }

    #[test]
    fn perturbed_stationary_examples() {
        let c = c1();
        let p = Perturbation::new(&c, &e1(), Tolerance::DEFAULT).unwrap();
        assert!(perturbed_stationary(&p)
            .unwrap()
            .approx_eq(&[0.25, 0.75], TIGHT));
        let p = Perturbation::new(&c, &Matrix::zeros(2, 2), Tolerance::DEFAULT).unwrap();
        assert!(perturbed_stationary(&p).unwrap().approx_eq(c.pi(), TIGHT));
        let c = c0();
        let e = Matrix::from_rows(&[[-0.25, 0.25], [0.25, -0.25]]).unwrap();
        let p = Perturbation::new(&c, &e, Tolerance::DEFAULT).unwrap();
        assert!(perturbed_stationary(&p)
            .unwrap()
            .approx_eq(&[0.5, 0.5], TIGHT));
    }

    #[test]
    fn bad_perturbations_name_the_row() {
        let c = c1();
        let e = Matrix::from_rows(&[[0.0, 0.0], [0.1, 0.0]]).unwrap();
        assert!(matches!(
            Perturbation::new(&c, &e, Tolerance::DEFAULT),
            Err(Error::NotStochastic { row: 1, .. })
        ));
        let e = Matrix::from_rows(&[[-0.75, 0.75], [0.0, 0.0]]).unwrap();
        assert!(matches!(
            Perturbation::new(&c, &e, Tolerance::DEFAULT),
            Err(Error::NotStochastic { row: 0, .. })
        ));
    }

    #[test]
    fn delta_route_examples() {
        let c = c1();
        let p = Perturbation::new(&c, &e1(), Tolerance::DEFAULT).unwrap();
        let z = fundamental_matrix(&c).unwrap();
        let r = delta_routes(&p, &z).unwrap();
        assert_eq!(r.routes.len(), 9);
        for route in &r.routes {
            assert!(
                route.value.approx_eq(&[-1.0 / 12.0, 1.0 / 12.0], TIGHT),
                "{}",
                route.route
            );
        }
        let mp = moore_penrose(&c).unwrap();
        let r = delta_routes(&p, &mp).unwrap();
        assert_eq!(r.routes.len(), 7);
        assert!(r.delta.approx_eq(&[-1.0 / 12.0, 1.0 / 12.0], TIGHT));

        let p = Perturbation::new(&c, &Matrix::zeros(2, 2), Tolerance::DEFAULT).unwrap();
        let r = delta_routes(&p, &z).unwrap();
        assert!(r.delta.approx_eq(&[0.0, 0.0], TIGHT));
    }

    #[test]
    fn n_matrix_examples() {
        let tol = TIGHT;
        let n = n_matrix(mfpt_direct(&c1()).unwrap().m()).unwrap();
        assert!(matrix_eq(&n, &[[0.0, 4.0 / 3.0], [4.0 / 3.0, 0.0]], tol));
        let n = n_matrix(mfpt_direct(&c0()).unwrap().m()).unwrap();
        assert!(matrix_eq(&n, &[[0.0, 1.0], [1.0, 0.0]], tol));
        let c2 = StochasticChain::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        let n = n_matrix(mfpt_direct(&c2).unwrap().m()).unwrap();
        assert!(matrix_eq(&n, &[[0.0, 0.5], [0.5, 0.0]], tol));
    }

    fn matrix_eq(a: &Matrix, b: &[[f64; 2]; 2], tol: Tolerance) -> bool {
        crate::matrix::approx_eq(a, &Matrix::from_rows(b).unwrap(), tol).unwrap()
    }

    #[test]
    fn bound_examples() {
        let c = c1();
        let p = Perturbation::new(&c, &e1(), Tolerance::DEFAULT).unwrap();
        let b = kemeny_bound(&p).unwrap();
        assert!((b.lhs - 1.0 / 6.0).abs() < 1e-12);
        assert!((b.bound - 2.0 / 3.0).abs() < 1e-12);
        assert!(b.satisfied);
        let p = Perturbation::new(&c, &Matrix::zeros(2, 2), Tolerance::DEFAULT).unwrap();
        let b = kemeny_bound(&p).unwrap();
        assert!(b.lhs < 1e-15 && b.bound == 0.0 && b.satisfied);
        let c = c0();
        let e = Matrix::from_rows(&[[-0.25, 0.25], [0.25, -0.25]]).unwrap();
        let p = Perturbation::new(&c, &e, Tolerance::DEFAULT).unwrap();
        let b = kemeny_bound(&p).unwrap();
        assert!(b.lhs < 1e-15 && (b.bound - 0.5).abs() < 1e-12);
    }
}
