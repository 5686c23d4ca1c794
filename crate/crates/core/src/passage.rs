//! Mean first passage times.
//!
//! `mfpt_direct` solves the first-step equations column by column without any
//! g-inverse machinery and serves as the reference. The other routes build `M`
//! from an arbitrary g-inverse, and the `reconstruct_*` functions go the other
//! way: they rebuild the entries of a g-inverse from `π`, `M` and the
//! parameters `(α, β, γ)` alone.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chain::StochasticChain;
use crate::error::{Error, Result};
use crate::ginverse::{classify, condition1_residual, GInverse, GInverseParams, GINV_RESIDUAL_TOL};
use crate::matrix::{solve_linear, Matrix, Vector};

/// Relative tolerance for the residual of `(I − P)M = E − PM_d`.
pub const PASSAGE_RESIDUAL_TOL: f64 = 1e-9;

/// Mean first passage time matrix `M = [m_ij]`, in steps.
#[derive(Debug, Clone, PartialEq)]
pub struct PassageTimes {
    m: Matrix,
}

impl PassageTimes {
    /// Wraps a passage-time matrix computed elsewhere.
    pub fn from_matrix(m: Matrix) -> Result<Self> {
        m.check_square()?;
        Ok(PassageTimes { m })
    }

    pub fn m(&self) -> &Matrix {
        &self.m
    }

    pub fn into_matrix(self) -> Matrix {
        self.m
    }

    /// `N = (M − M_d) M_d⁻¹`.
    pub fn off_diagonal_scaled(&self) -> Matrix {
        let md = self.m.diag_part();
        let inv = Matrix::from_diag(&md.diagonal().map(|x| 1.0 / x));
        &(&self.m - &md) * &inv
    }
}

/// Column aggregates of `M`: `δ` (β-weighted), `η` (uniform), `τ` (π-weighted).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivedVectors {
    pub delta: Vector,
    pub eta: Vector,
    pub tau: Vector,
}

fn check_dims(pi: &[f64], m: &Matrix) -> Result<()> {
    m.check_square()?;
    if m.rows() != pi.len() {
        return Err(Error::ShapeMismatch {
            expected: format!("{0}x{0}", pi.len()),
            found: format!("{}x{}", m.rows(), m.cols()),
        });
    }
    Ok(())
}

fn require_ginverse(chain: &StochasticChain, g: &Matrix) -> Result<()> {
    check_dims(chain.pi(), g)?;
    let residual = condition1_residual(chain, g);
    if !(residual <= GINV_RESIDUAL_TOL) {
        return Err(Error::NotAGInverse { residual });
    }
    Ok(())
}

/// Max-abs residual of `(I − P)M − (E − P M_d)`, scaled by `max(1, max|M|)`.
pub fn passage_equation_residual(chain: &StochasticChain, m: &Matrix) -> f64 {
    let n = chain.size();
    let lhs = &chain.kernel() * m;
    let rhs = &Matrix::filled(n, n, 1.0) - &(chain.p() * &m.diag_part());
    lhs.max_abs_diff(&rhs).unwrap_or(f64::INFINITY) / m.max_abs().max(1.0)
}

/// Solves `m_ij = 1 + Σ_{k≠j} p_ik m_kj` for each target `j` and pins `m_jj = 1/π_j`.
pub fn mfpt_direct(chain: &StochasticChain) -> Result<PassageTimes> {
    let n = chain.size();
    let p = chain.p();
    let columns: Vec<Vector> = (0..n)
        .into_par_iter()
        .map(|j| {
            let rhs = Matrix::filled(n - 1, 1, 1.0);
            let col = pinned_column_solve(p, j, &rhs)?;
            Ok(col)
        })
        .collect::<Result<_>>()?;
    let mut m = Matrix::zeros(n, n);
    for (j, col) in columns.iter().enumerate() {
        let mut k = 0;
        for i in 0..n {
            if i == j {
                m[(i, j)] = 1.0 / chain.pi()[j];
            } else {
                m[(i, j)] = col[k];
                k += 1;
            }
        }
    }
    let residual = passage_equation_residual(chain, &m);
    if residual > PASSAGE_RESIDUAL_TOL {
        return Err(Error::RouteDisagreement {
            what: "first passage equation",
            left: "(I-P)M".into(),
            right: "E - P M_d".into(),
            diff: residual,
        });
    }
    Ok(PassageTimes { m })
}

/// Solves `(I − P)` restricted to the states other than `j` against `rhs`.
pub(crate) fn pinned_column_solve(p: &Matrix, j: usize, rhs: &Matrix) -> Result<Vector> {
    let n = p.rows();
    if n == 1 {
        return Ok(Vector::zeros(0));
    }
    let idx: Vec<usize> = (0..n).filter(|&i| i != j).collect();
    let a = Matrix::from_fn(n - 1, n - 1, |r, c| {
        let (i, k) = (idx[r], idx[c]);
        let delta = if i == k { 1.0 } else { 0.0 };
        delta - p[(i, k)]
    });
    Ok(solve_linear(&a, rhs)?.col(0))
}

/// `M = [GΠ − E(GΠ)_d + I − G + E G_d] D` for any g-inverse `G`.
pub fn mfpt_from_ginverse(chain: &StochasticChain, g: &Matrix) -> Result<PassageTimes> {
    require_ginverse(chain, g)?;
    let n = chain.size();
    let e = Matrix::filled(n, n, 1.0);
    let g_pi = g * &chain.pi_matrix();
    let inner = &(&(&(&g_pi - &(&e * &g_pi.diag_part())) + &Matrix::identity(n)) - g)
        + &(&e * &g.diag_part());
    Ok(PassageTimes {
        m: &inner * &chain.recurrence_diag(),
    })
}

/// `M = [I − H + E H_d] D` with `H = G(I − Π)`.
pub fn mfpt_from_deflated(chain: &StochasticChain, g: &Matrix) -> Result<PassageTimes> {
    require_ginverse(chain, g)?;
    let h = g * &chain.deflator();
    Ok(PassageTimes {
        m: simplified_formula(chain, &h),
    })
}

/// `[I − G + E G_d] D`, evaluated with no class check. Equals `M` exactly
/// when `G ∈ A{1,5a}`.
pub fn simplified_formula(chain: &StochasticChain, g: &Matrix) -> Matrix {
    let n = chain.size();
    let e = Matrix::filled(n, n, 1.0);
    let inner = &(&Matrix::identity(n) - g) + &(&e * &g.diag_part());
    &inner * &chain.recurrence_diag()
}

/// `m_ij = (g_jj − g_ij + δ_ij)/π_j` for `G ∈ A{1,5a}`.
pub fn mfpt_simplified_15a(chain: &StochasticChain, ginv: &GInverse) -> Result<PassageTimes> {
    if !classify(chain, ginv)?.cond5a {
        return Err(Error::NotIn15a);
    }
    let g = ginv.g();
    let pi = chain.pi();
    let n = chain.size();
    let m = Matrix::from_fn(n, n, |i, j| {
        let kron = if i == j { 1.0 } else { 0.0 };
        (g[(j, j)] - g[(i, j)] + kron) / pi[j]
    });
    Ok(PassageTimes { m })
}

/// `m_ij = (g_jj − g_ij + δ_ij)/π_j + (g_i· − g_j·)` for any g-inverse.
pub fn mfpt_elementwise_general(g: &Matrix, pi: &[f64]) -> Result<PassageTimes> {
    check_dims(pi, g)?;
    let n = pi.len();
    let rs = g.row_sums();
    let m = Matrix::from_fn(n, n, |i, j| {
        let kron = if i == j { 1.0 } else { 0.0 };
        (g[(j, j)] - g[(i, j)] + kron) / pi[j] + (rs[i] - rs[j])
    });
    Ok(PassageTimes { m })
}

/// `m_ij = (h_jj − h_ij + δ_ij)/π_j` for `H = G(I − Π)`.
pub fn mfpt_elementwise_deflated(h: &Matrix, pi: &[f64]) -> Result<PassageTimes> {
    check_dims(pi, h)?;
    let n = pi.len();
    let m = Matrix::from_fn(n, n, |i, j| {
        let kron = if i == j { 1.0 } else { 0.0 };
        (h[(j, j)] - h[(i, j)] + kron) / pi[j]
    });
    Ok(PassageTimes { m })
}

/// `δ_j = Σ_{k≠j} β_k m_kj`.
pub fn delta(m: &Matrix, beta: &[f64]) -> Vector {
    let n = m.rows();
    (0..n)
        .map(|j| {
            (0..n)
                .filter(|&k| k != j)
                .map(|k| beta[k] * m[(k, j)])
                .sum()
        })
        .collect()
}

/// `η_j = (Σ_{k≠j} m_kj)/m`.
pub fn eta(m: &Matrix) -> Vector {
    let n = m.rows();
    delta(m, &Vector::filled(n, 1.0 / n as f64))
}

/// `τ = Mᵀπ`, i.e. `τ_j = Σ_i π_i m_ij`.
pub fn tau(pi: &[f64], m: &Matrix) -> Vector {
    m.vec_mul(pi)
}

pub fn derived_vectors(pi: &[f64], m: &Matrix, beta: &[f64]) -> Result<DerivedVectors> {
    check_dims(pi, m)?;
    if beta.len() != pi.len() {
        return Err(Error::ShapeMismatch {
            expected: format!("beta of length {}", pi.len()),
            found: format!("length {}", beta.len()),
        });
    }
    let sum: f64 = beta.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::BadBeta { sum });
    }
    Ok(DerivedVectors {
        delta: delta(m, beta),
        eta: eta(m),
        tau: tau(pi, m),
    })
}

fn check_consistent(pi: &[f64], m: &Matrix) -> Result<()> {
    check_dims(pi, m)?;
    for (j, &p) in pi.iter().enumerate() {
        if (p * m[(j, j)] - 1.0).abs() > 1e-8 {
            return Err(Error::DegenerateParameters(format!(
                "M inconsistent with pi at state {j}: pi_j m_jj = {}",
                p * m[(j, j)]
            )));
        }
    }
    Ok(())
}

/// `H = G(I − Π)` from `(π, M, β)`: `h_jj = π_j δ_j`, `h_ij = π_j(δ_j − m_ij)`.
pub fn deflated_from_passage(pi: &[f64], m: &Matrix, beta: &[f64]) -> Result<Matrix> {
    check_dims(pi, m)?;
    let d = delta(m, beta);
    let n = pi.len();
    Ok(Matrix::from_fn(n, n, |i, j| {
        if i == j {
            pi[j] * d[j]
        } else {
            pi[j] * (d[j] - m[(i, j)])
        }
    }))
}

/// Row sums `g_i·` of `G(α, β, γ)` from `(π, M)`:
/// `1 + γ + Σ_{k≠i} π_k α_k m_ik − Σ_k π_k α_k δ_k`.
pub fn row_sums_formula(params: &GInverseParams, pi: &[f64], m: &Matrix) -> Result<Vector> {
    params.check_admissible(pi)?;
    check_consistent(pi, m)?;
    let n = pi.len();
    let d = delta(m, &params.beta);
    let w: Vec<f64> = (0..n).map(|k| pi[k] * params.alpha[k]).collect();
    let wd: f64 = (0..n).map(|k| w[k] * d[k]).sum();
    Ok((0..n)
        .map(|i| {
            let s: f64 = (0..n).filter(|&k| k != i).map(|k| w[k] * m[(i, k)]).sum();
            1.0 + params.gamma + s - wd
        })
        .collect())
}

/// Rebuilds every entry of `G(α, β, γ)` from `(π, M)` and the parameters.
pub fn reconstruct_ginverse(params: &GInverseParams, pi: &[f64], m: &Matrix) -> Result<Matrix> {
    params.check_admissible(pi)?;
    check_consistent(pi, m)?;
    let n = pi.len();
    let d = delta(m, &params.beta);
    let w: Vec<f64> = (0..n).map(|k| pi[k] * params.alpha[k]).collect();
    let wd: f64 = (0..n).map(|k| w[k] * d[k]).sum();
    let weighted_row: Vec<f64> = (0..n)
        .map(|i| (0..n).filter(|&k| k != i).map(|k| w[k] * m[(i, k)]).sum())
        .collect();
    let c = 1.0 + params.gamma;
    Ok(Matrix::from_fn(n, n, |i, j| {
        if i == j {
            (c + d[j] + weighted_row[j] - wd) * pi[j]
        } else {
            (c + d[j] - m[(i, j)] + weighted_row[i] - wd) * pi[j]
        }
    }))
}

/// Named sub-families with dedicated element formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpecialCase {
    /// `A{1,5a}`: `G(e, β, γ)`.
    A15a,
    /// `A{1,2,5a}`: `G(e, β, −1)`.
    A125a,
    /// `A{1,4,5a}`: `G(e, e/m, γ)`.
    A145a,
    /// `A{1,2,4,5a}`: `G(e, e/m, −1)`.
    A1245a,
    /// `A{1,5}`: `G(e, π, γ)`.
    A15,
    /// Fundamental matrix `Z = G(e, π, 0)`.
    Fundamental,
    /// Group inverse `A# = G(e, π, −1)`.
    Group,
    /// `A{1,3}`: `G(π/πᵀπ, β, γ)`.
    A13,
    /// Moore–Penrose: `G(π/πᵀπ, e/m, −1)`.
    MoorePenrose,
}

impl SpecialCase {
    pub const ALL: [SpecialCase; 9] = [
        SpecialCase::A15a,
        SpecialCase::A125a,
        SpecialCase::A145a,
        SpecialCase::A1245a,
        SpecialCase::A15,
        SpecialCase::Fundamental,
        SpecialCase::Group,
        SpecialCase::A13,
        SpecialCase::MoorePenrose,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            SpecialCase::A15a => "15a",
            SpecialCase::A125a => "125a",
            SpecialCase::A145a => "145a",
            SpecialCase::A1245a => "1245a",
            SpecialCase::A15 => "15",
            SpecialCase::Fundamental => "Z",
            SpecialCase::Group => "group",
            SpecialCase::A13 => "13",
            SpecialCase::MoorePenrose => "MP",
        }
    }

    pub fn needs_beta(&self) -> bool {
        matches!(
            self,
            SpecialCase::A15a | SpecialCase::A125a | SpecialCase::A13
        )
    }

    pub fn needs_gamma(&self) -> bool {
        matches!(
            self,
            SpecialCase::A15a | SpecialCase::A145a | SpecialCase::A15 | SpecialCase::A13
        )
    }

    /// The full `(α, β, γ)` this case denotes.
    pub fn full_params(&self, pi: &[f64], extra: &SpecialParams) -> Result<GInverseParams> {
        let n = pi.len();
        let pi_v = Vector::from(pi);
        let e = Vector::ones(n);
        let uniform = Vector::filled(n, 1.0 / n as f64);
        let mp_alpha = pi_v.scale(1.0 / pi_v.dot(pi));
        let beta = || {
            extra.beta.clone().ok_or_else(|| {
                Error::DegenerateParameters(format!("case {} requires beta", self.id()))
            })
        };
        let gamma = || {
            extra.gamma.ok_or_else(|| {
                Error::DegenerateParameters(format!("case {} requires gamma", self.id()))
            })
        };
        let (alpha, beta, gamma) = match self {
            SpecialCase::A15a => (e, beta()?, gamma()?),
            SpecialCase::A125a => (e, beta()?, -1.0),
            SpecialCase::A145a => (e, uniform, gamma()?),
            SpecialCase::A1245a => (e, uniform, -1.0),
            SpecialCase::A15 => (e, pi_v, gamma()?),
            SpecialCase::Fundamental => (e, pi_v, 0.0),
            SpecialCase::Group => (e, pi_v, -1.0),
            SpecialCase::A13 => (mp_alpha, beta()?, gamma()?),
            SpecialCase::MoorePenrose => (mp_alpha, uniform, -1.0),
        };
        let params = GInverseParams { alpha, beta, gamma };
        params.check_admissible(pi)?;
        Ok(params)
    }
}

impl fmt::Display for SpecialCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for SpecialCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SpecialCase::ALL
            .into_iter()
            .find(|c| c.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownCase(s.to_string()))
    }
}

/// Parameters a special case leaves free.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SpecialParams {
    pub beta: Option<Vector>,
    pub gamma: Option<f64>,
}

/// Element-wise construction of a special-case g-inverse from `(π, M)`.
pub fn reconstruct_special(
    case: SpecialCase,
    pi: &[f64],
    m: &Matrix,
    extra: &SpecialParams,
) -> Result<Matrix> {
    check_consistent(pi, m)?;
    let params = case.full_params(pi, extra)?;
    let n = pi.len();
    let gamma = params.gamma;

    // α = e: g_ij = π_j(c_j − m_ij) off the diagonal, π_j c_j on it.
    let class5a = |col: Vector| {
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                pi[j] * col[j]
            } else {
                pi[j] * (col[j] - m[(i, j)])
            }
        })
    };

    let out = match case {
        SpecialCase::A15a | SpecialCase::A125a => {
            let d = delta(m, &params.beta);
            class5a(d.map(|x| 1.0 + gamma + x))
        }
        SpecialCase::A145a | SpecialCase::A1245a => {
            let h = eta(m);
            class5a(h.map(|x| 1.0 + gamma + x))
        }
        SpecialCase::A15 | SpecialCase::Fundamental | SpecialCase::Group => {
            let t = tau(pi, m);
            class5a(t.map(|x| x + gamma))
        }
        SpecialCase::A13 | SpecialCase::MoorePenrose => {
            let d = if case == SpecialCase::MoorePenrose {
                eta(m)
            } else {
                delta(m, &params.beta)
            };
            let sq: Vec<f64> = pi.iter().map(|p| p * p).collect();
            let sq_sum: f64 = sq.iter().sum();
            let sq_d: f64 = (0..n).map(|k| sq[k] * d[k]).sum::<f64>() / sq_sum;
            let sq_row: Vec<f64> = (0..n)
                .map(|i| {
                    (0..n)
                        .filter(|&k| k != i)
                        .map(|k| sq[k] * m[(i, k)])
                        .sum::<f64>()
                        / sq_sum
                })
                .collect();
            let c = 1.0 + gamma;
            Matrix::from_fn(n, n, |i, j| {
                if i == j {
                    (c + d[j] + sq_row[j] - sq_d) * pi[j]
                } else {
                    (c + d[j] - m[(i, j)] + sq_row[i] - sq_d) * pi[j]
                }
            })
        }
    };
    Ok(out)
}
