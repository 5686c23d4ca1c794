//! Second moments of first passage and recurrence times, the `τ` vector, and
//! Kemeny's constant.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::chain::StochasticChain;
use crate::error::{Error, Result};
use crate::ginverse::{classify, fundamental_matrix, GInverse};
use crate::matrix::{Matrix, Vector};
use crate::passage::{self, mfpt_direct, pinned_column_solve};
use crate::routes::{check_agreement, RouteValue};

/// Relative tolerance between routes for moments and `τ`.
pub const MOMENT_ROUTE_TOL: f64 = 1e-8;
/// Relative tolerance for the row-constancy of `Σ_j π_j m_ij`.
pub const KEMENY_ROW_TOL: f64 = 1e-9;

/// Second moments of recurrence (and optionally first passage) times, in steps².
#[derive(Debug, Clone, PartialEq)]
pub struct SecondMoments {
    pub diag: Vector,
    pub full: Option<Matrix>,
}

/// `m_jj⁽²⁾ = (2τ_j − 1)/π_j`.
pub fn second_moment_diag_from_tau(pi: &[f64], tau: &[f64]) -> Vector {
    pi.iter()
        .zip(tau)
        .map(|(p, t)| (2.0 * t - 1.0) / p)
        .collect()
}

/// `M_d⁽²⁾ = 2D(ΠM)_d − D`, returned as its diagonal.
pub fn second_moment_diag_from_mfpt(chain: &StochasticChain, m: &Matrix) -> Vector {
    let d = chain.recurrence_diag();
    let pm = (&chain.pi_matrix() * m).diag_part();
    (&(&d * &pm).scale(2.0) - &d).diagonal()
}

/// Every applicable g-inverse route to `M_d⁽²⁾`, plus the `τ` route.
///
/// The general sandwich form `D + 2D{(I−Π)G(I−Π)}_d D` always runs; the
/// simplified forms run when `classify` admits them.
pub fn second_moment_diag_routes(
    chain: &StochasticChain,
    ginv: &GInverse,
) -> Result<Vec<RouteValue>> {
    let set = classify(chain, ginv)?;
    let g = ginv.g();
    let d = chain.recurrence_diag();
    let big_pi = chain.pi_matrix();
    let defl = chain.deflator();
    let dgd = |x: &Matrix| &(&d * &x.diag_part()) * &d;

    let mut routes = Vec::new();
    let sandwich = &(&defl * g) * &defl;
    routes.push(RouteValue::new(
        "D + 2D[(I-Pi)G(I-Pi)]_d D",
        (&d + &dgd(&sandwich).scale(2.0)).diagonal(),
    ));
    let base = &d + &dgd(g).scale(2.0);
    if set.cond5a {
        routes.push(RouteValue::new(
            "D + 2D G_d D - 2D(Pi G)_d D",
            (&base - &dgd(&(&big_pi * g)).scale(2.0)).diagonal(),
        ));
    }
    if set.cond5b {
        routes.push(RouteValue::new(
            "D + 2D G_d D - 2D(G Pi)_d D",
            (&base - &dgd(&(g * &big_pi)).scale(2.0)).diagonal(),
        ));
    }
    if set.cond5() {
        let gamma = ginv.params().gamma;
        routes.push(RouteValue::new(
            "2D G_d D - (1 + 2 gamma) D",
            (&dgd(g).scale(2.0) - &d.scale(1.0 + 2.0 * gamma)).diagonal(),
        ));
    }
    let m = mfpt_direct(chain)?;
    let tau = passage::tau(chain.pi(), m.m());
    routes.push(RouteValue::new(
        "(2 tau_j - 1)/pi_j",
        second_moment_diag_from_tau(chain.pi(), &tau),
    ));
    routes.push(RouteValue::new(
        "2D(Pi M)_d - D",
        second_moment_diag_from_mfpt(chain, m.m()),
    ));
    Ok(routes)
}

/// `M_d⁽²⁾` from a g-inverse; all applicable routes must agree.
pub fn second_moment_diag_from_ginverse(
    chain: &StochasticChain,
    ginv: &GInverse,
) -> Result<Vector> {
    let routes = second_moment_diag_routes(chain, ginv)?;
    check_agreement("recurrence second moments", &routes, MOMENT_ROUTE_TOL)?;
    Ok(routes.into_iter().next().expect("general route").value)
}

/// Full `M⁽²⁾` from `(I − P)M⁽²⁾ = E + 2P(M − M_d) − PM_d⁽²⁾`, solved column by
/// column with the diagonal pinned to `md2`.
pub fn second_moment_matrix(chain: &StochasticChain, m: &Matrix, md2: &[f64]) -> Result<Matrix> {
    let n = chain.size();
    if m.rows() != n || m.cols() != n || md2.len() != n {
        return Err(Error::ShapeMismatch {
            expected: format!("{n}x{n} M and {n} second moments"),
            found: format!(
                "{}x{} M and {} second moments",
                m.rows(),
                m.cols(),
                md2.len()
            ),
        });
    }
    let p = chain.p();
    let mut out = Matrix::zeros(n, n);
    for j in 0..n {
        let idx: Vec<usize> = (0..n).filter(|&i| i != j).collect();
        // row i ≠ j: m2_ij − Σ_{k≠j} p_ik m2_kj = 1 + 2 Σ_{k≠j} p_ik m_kj
        let rhs = Matrix::from_fn(n - 1, 1, |r, _| {
            let i = idx[r];
            1.0 + 2.0 * idx.iter().map(|&k| p[(i, k)] * m[(k, j)]).sum::<f64>()
        });
        let col = pinned_column_solve(p, j, &rhs)?;
        for (r, &i) in idx.iter().enumerate() {
            out[(i, j)] = col[r];
        }
        out[(j, j)] = md2[j];
    }
    let residual = second_moment_equation_residual(chain, m, &out);
    if residual > 1e-8 {
        return Err(Error::RouteDisagreement {
            what: "second moment equation",
            left: "(I-P)M2".into(),
            right: "E + 2P(M - M_d) - P M2_d".into(),
            diff: residual,
        });
    }
    Ok(out)
}

/// Max-abs residual of `(I−P)M⁽²⁾ − [E + 2P(M − M_d) − P M⁽²⁾_d]`, scaled by `max(1, max|M⁽²⁾|)`.
pub fn second_moment_equation_residual(chain: &StochasticChain, m: &Matrix, m2: &Matrix) -> f64 {
    let n = chain.size();
    let p = chain.p();
    let lhs = &chain.kernel() * m2;
    let rhs = &(&Matrix::filled(n, n, 1.0) + &(p * &(m - &m.diag_part())).scale(2.0))
        - &(p * &m2.diag_part());
    lhs.max_abs_diff(&rhs).unwrap_or(f64::INFINITY) / m2.max_abs().max(1.0)
}

/// Diagonal and full second-moment matrices for a chain.
pub fn second_moments(chain: &StochasticChain) -> Result<SecondMoments> {
    let m = mfpt_direct(chain)?;
    let tau = passage::tau(chain.pi(), m.m());
    let diag = second_moment_diag_from_tau(chain.pi(), &tau);
    let full = second_moment_matrix(chain, m.m(), &diag)?;
    Ok(SecondMoments {
        diag,
        full: Some(full),
    })
}

/// Every applicable g-inverse route to `τ`, plus `τ = Mᵀπ`.
pub fn tau_routes(chain: &StochasticChain, ginv: &GInverse) -> Result<Vec<RouteValue>> {
    let set = classify(chain, ginv)?;
    let n = chain.size();
    let g = ginv.g();
    let pi = chain.pi();
    let e = Vector::ones(n);
    let d = chain.recurrence_diag();
    let big_pi = chain.pi_matrix();
    let big_e = Matrix::filled(n, n, 1.0);
    let row_sums = g.row_sums();
    let pi_g = g.vec_mul(pi);
    let gd_de = (&g.diag_part() * &d).mul_vec(&e);
    let pig_de = (&(&big_pi * g).diag_part() * &d).mul_vec(&e);
    let ge_d_e = (g * &big_e).diag_part().mul_vec(&e);

    let mut routes = Vec::new();
    let pige = pi.dot(&row_sums);
    routes.push(RouteValue::new(
        "e + (pi'Ge)e - (Pi G)_d D e - (GE)_d e + G_d D e",
        &(&(&e.scale(1.0 + pige) - &pig_de) - &ge_d_e) + &gd_de,
    ));
    routes.push(RouteValue::new(
        "elementwise general",
        (0..n)
            .map(|j| 1.0 + pige - row_sums[j] + (g[(j, j)] - pi_g[j]) / pi[j])
            .collect(),
    ));
    if set.cond5a {
        routes.push(RouteValue::new(
            "e - (Pi G)_d D e + G_d D e",
            &(&e - &pig_de) + &gd_de,
        ));
        routes.push(RouteValue::new(
            "elementwise class 5a",
            (0..n)
                .map(|j| 1.0 + (g[(j, j)] - pi_g[j]) / pi[j])
                .collect(),
        ));
    }
    if set.cond5b {
        routes.push(RouteValue::new(
            "e - (GE)_d e + G_d D e",
            &(&e - &ge_d_e) + &gd_de,
        ));
        routes.push(RouteValue::new(
            "elementwise class 5b",
            (0..n)
                .map(|j| 1.0 - row_sums[j] + g[(j, j)] / pi[j])
                .collect(),
        ));
    }
    if set.cond5() {
        let gamma = ginv.params().gamma;
        routes.push(RouteValue::new(
            "G_d D e - gamma e",
            &gd_de - &e.scale(gamma),
        ));
    }
    let m = mfpt_direct(chain)?;
    routes.push(RouteValue::new("M'pi", passage::tau(pi, m.m())));
    Ok(routes)
}

/// `τ` from a g-inverse; all applicable routes must agree with `Mᵀπ`.
pub fn tau_from_ginverse(chain: &StochasticChain, ginv: &GInverse) -> Result<Vector> {
    let routes = tau_routes(chain, ginv)?;
    check_agreement("tau", &routes, MOMENT_ROUTE_TOL)?;
    Ok(routes.into_iter().next().expect("general route").value)
}

/// Elements of `G(e, π, γ)` from `π`, `M` and the recurrence second moments:
/// `g_ij = π_j(γ + (π_j m_jj⁽²⁾ + 1)/2 − m_ij)` off the diagonal.
pub fn ginverse_from_second_moments(
    pi: &[f64],
    gamma: f64,
    m: &Matrix,
    md2: &[f64],
) -> Result<Matrix> {
    let n = pi.len();
    if m.rows() != n || m.cols() != n || md2.len() != n {
        return Err(Error::ShapeMismatch {
            expected: format!("{n}x{n} M and {n} second moments"),
            found: format!(
                "{}x{} M and {} second moments",
                m.rows(),
                m.cols(),
                md2.len()
            ),
        });
    }
    Ok(Matrix::from_fn(n, n, |i, j| {
        let c = gamma + (pi[j] * md2[j] + 1.0) / 2.0;
        if i == j {
            pi[j] * c
        } else {
            pi[j] * (c - m[(i, j)])
        }
    }))
}

/// The group inverse in the form `½(m_jj⁽²⁾/m_jj² − 1/m_jj) − π_j m_ij`.
pub fn group_inverse_from_second_moments(pi: &[f64], m: &Matrix, md2: &[f64]) -> Result<Matrix> {
    let n = pi.len();
    if m.rows() != n || m.cols() != n || md2.len() != n {
        return Err(Error::ShapeMismatch {
            expected: format!("{n}x{n} M and {n} second moments"),
            found: format!(
                "{}x{} M and {} second moments",
                m.rows(),
                m.cols(),
                md2.len()
            ),
        });
    }
    Ok(Matrix::from_fn(n, n, |i, j| {
        let mjj = m[(j, j)];
        let c = 0.5 * (md2[j] / (mjj * mjj) - 1.0 / mjj);
        if i == j {
            c
        } else {
            c - pi[j] * m[(i, j)]
        }
    }))
}

/// How Kemeny's constant is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KemenyRoute {
    /// `Σ_j π_j m_ij`, checked to be the same for every `i`.
    Definition,
    /// `1 + Σ_j (g_jj − g_j· π_j)` for any g-inverse.
    GeneralG,
    /// `tr(G) − γ` for `G ∈ A{1,5a}`.
    Trace15a,
    /// `1 + Σ_k π_k δ_k`.
    DeltaSum,
}

impl KemenyRoute {
    pub const ALL: [KemenyRoute; 4] = [
        KemenyRoute::Definition,
        KemenyRoute::GeneralG,
        KemenyRoute::Trace15a,
        KemenyRoute::DeltaSum,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            KemenyRoute::Definition => "definition",
            KemenyRoute::GeneralG => "general_g",
            KemenyRoute::Trace15a => "trace_15a",
            KemenyRoute::DeltaSum => "delta_sum",
        }
    }
}

impl fmt::Display for KemenyRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KemenyRoute {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "definition" | "def" => Ok(KemenyRoute::Definition),
            "general_g" | "general" => Ok(KemenyRoute::GeneralG),
            "trace_15a" | "trace" => Ok(KemenyRoute::Trace15a),
            "delta_sum" | "delta" => Ok(KemenyRoute::DeltaSum),
            _ => Err(Error::UnknownCase(s.to_string())),
        }
    }
}

/// Kemeny's constant, in steps, with the route that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KemenyConstant {
    pub value: f64,
    pub route: KemenyRoute,
}

/// `Σ_j π_j m_ij` for each starting state `i`.
pub fn kemeny_row_values(pi: &[f64], m: &Matrix) -> Vector {
    m.mul_vec(pi)
}

/// Kemeny's constant by the requested route. Routes needing a g-inverse use
/// `ginv`, defaulting to the fundamental matrix.
pub fn kemeny_constant(
    chain: &StochasticChain,
    route: KemenyRoute,
    ginv: Option<&GInverse>,
) -> Result<KemenyConstant> {
    let owned;
    let ginv = match ginv {
        Some(g) => g,
        None => {
            owned = fundamental_matrix(chain)?;
            &owned
        }
    };
    let pi = chain.pi();
    let value = match route {
        KemenyRoute::Definition => {
            let m = mfpt_direct(chain)?;
            let rows = kemeny_row_values(pi, m.m());
            let k = rows[0];
            let spread = rows.iter().fold(0.0f64, |a, r| a.max((r - k).abs()));
            if spread > KEMENY_ROW_TOL * k.abs().max(1.0) {
                return Err(Error::RouteDisagreement {
                    what: "Kemeny row constancy",
                    left: "row 0".into(),
                    right: "other rows".into(),
                    diff: spread,
                });
            }
            k
        }
        KemenyRoute::GeneralG => {
            let g = ginv.g();
            let rs = g.row_sums();
            1.0 + (0..chain.size())
                .map(|j| g[(j, j)] - rs[j] * pi[j])
                .sum::<f64>()
        }
        KemenyRoute::Trace15a => {
            if !classify(chain, ginv)?.cond5a {
                return Err(Error::NotIn15a);
            }
            ginv.g().trace() - ginv.params().gamma
        }
        KemenyRoute::DeltaSum => {
            let m = mfpt_direct(chain)?;
            let delta = passage::delta(m.m(), &ginv.params().beta);
            1.0 + pi.dot(&delta)
        }
    };
    if chain.size() >= 2 && !(value > 1.0) {
        return Err(Error::OutOfRange(format!(
            "Kemeny constant {value} must exceed 1"
        )));
    }
    Ok(KemenyConstant { value, route })
}
