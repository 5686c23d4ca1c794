//! Generalized inverses of the Markovian kernel `I − P`.
//!
//! Every one-condition g-inverse `G` of `I − P` has a unique parametric form
//!
//! ```text
//! G(α, β, γ) = [I − P + αβᵀ]⁻¹ + γ eπᵀ,    πᵀα = 1,  βᵀe = 1,
//! ```
//!
//! and membership in the multi-condition classes `A{1,2}`, `A{1,3}`, `A{1,4}`,
//! `A{1,5a}`, `A{1,5b}` is decided by the parameters alone. This module builds
//! g-inverses, recovers `(α, β, γ)` from a matrix, and classifies them, checking
//! each parameter test against the corresponding matrix condition.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chain::{StochasticChain, NONSINGULAR_THRESHOLD};
use crate::error::{Error, Result};
use crate::matrix::{invert, scaled_diff, Matrix, Vector};

/// Admissibility tolerance for `πᵀα = 1` and `βᵀe = 1`.
pub const ADMISSIBLE_TOL: f64 = 1e-9;
/// Relative tolerance for parameter recovery and the three-way γ check.
pub const CHARACTERIZE_TOL: f64 = 1e-8;
/// Relative tolerance for vector tests in classification.
pub const CLASSIFY_TOL: f64 = 1e-8;
/// Relative tolerance on the condition-1 residual for accepting a matrix as a g-inverse.
pub const GINV_RESIDUAL_TOL: f64 = 1e-8;
/// Relative tolerance for the algebraic identities verified after construction.
pub const IDENTITY_TOL: f64 = 1e-9;

/// The parameters `(α, β, γ)` of a g-inverse.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GInverseParams {
    pub alpha: Vector,
    pub beta: Vector,
    pub gamma: f64,
}

impl GInverseParams {
    /// `(e, π, γ)`: the class `A{1,5}`.
    pub fn class5(chain: &StochasticChain, gamma: f64) -> Self {
        GInverseParams {
            alpha: Vector::ones(chain.size()),
            beta: chain.pi().clone(),
            gamma,
        }
    }

    /// Checks `πᵀα = 1` and `βᵀe = 1`.
    pub fn check_admissible(&self, pi: &[f64]) -> Result<()> {
        let m = pi.len();
        if self.alpha.len() != m || self.beta.len() != m {
            return Err(Error::ShapeMismatch {
                expected: format!("parameter vectors of length {m}"),
                found: format!("alpha {}, beta {}", self.alpha.len(), self.beta.len()),
            });
        }
        if !self.gamma.is_finite() || !self.alpha.is_finite() || !self.beta.is_finite() {
            return Err(Error::DegenerateParameters("non-finite parameter".into()));
        }
        let pa = self.alpha.dot(pi);
        if (pa - 1.0).abs() > ADMISSIBLE_TOL {
            return Err(Error::DegenerateParameters(format!(
                "πᵀα = {pa}, must equal 1"
            )));
        }
        let be = self.beta.sum();
        if (be - 1.0).abs() > ADMISSIBLE_TOL {
            return Err(Error::DegenerateParameters(format!(
                "βᵀe = {be}, must equal 1"
            )));
        }
        Ok(())
    }

    /// Largest relative discrepancy between two parameter sets.
    pub fn max_diff(&self, other: &GInverseParams) -> f64 {
        let a = rel_vec_diff(&self.alpha, &other.alpha);
        let b = rel_vec_diff(&self.beta, &other.beta);
        let g = (self.gamma - other.gamma).abs() / other.gamma.abs().max(1.0);
        a.max(b).max(g)
    }
}

/// A one-condition g-inverse of `I − P` together with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct GInverse {
    g: Matrix,
    params: GInverseParams,
}

impl GInverse {
    /// Wraps an arbitrary matrix, verifying condition 1 and recovering its parameters.
    pub fn from_matrix(chain: &StochasticChain, g: Matrix) -> Result<Self> {
        let params = characterize(chain, &g)?;
        Ok(GInverse { g, params })
    }

    pub fn g(&self) -> &Matrix {
        &self.g
    }

    pub fn params(&self) -> &GInverseParams {
        &self.params
    }

    pub fn into_matrix(self) -> Matrix {
        self.g
    }
}

/// Which of conditions 2–5 a g-inverse satisfies (condition 1 always holds).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConditionSet {
    pub cond2: bool,
    pub cond3: bool,
    pub cond4: bool,
    pub cond5a: bool,
    pub cond5b: bool,
}

impl ConditionSet {
    pub fn cond5(&self) -> bool {
        self.cond5a && self.cond5b
    }

    /// Satisfied conditions beyond condition 1, e.g. `["2", "5a", "5b", "5"]`.
    pub fn labels(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (on, l) in [
            (self.cond2, "2"),
            (self.cond3, "3"),
            (self.cond4, "4"),
            (self.cond5a, "5a"),
            (self.cond5b, "5b"),
            (self.cond5(), "5"),
        ] {
            if on {
                out.push(l);
            }
        }
        out
    }
}

impl fmt::Display for ConditionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{1")?;
        for l in self.labels() {
            write!(f, ",{l}")?;
        }
        write!(f, "}}")
    }
}

fn rel_vec_diff(x: &[f64], y: &[f64]) -> f64 {
    let scale = x
        .iter()
        .chain(y)
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    x.iter()
        .zip(y)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
        / scale
}

/// Max-abs residual of `(I−P) G (I−P) − (I−P)`, scaled by `max(1, max|G|)`.
pub fn condition1_residual(chain: &StochasticChain, g: &Matrix) -> f64 {
    let a = chain.kernel();
    let r = (&(&a * g) * &a).max_abs_diff(&a).unwrap_or(f64::INFINITY);
    r / g.max_abs().max(1.0)
}

fn require_ginverse(chain: &StochasticChain, g: &Matrix) -> Result<()> {
    g.check_square()?;
    if g.rows() != chain.size() {
        return Err(Error::ShapeMismatch {
            expected: format!("{0}x{0}", chain.size()),
            found: format!("{}x{}", g.rows(), g.cols()),
        });
    }
    let residual = condition1_residual(chain, g);
    if !(residual <= GINV_RESIDUAL_TOL) {
        return Err(Error::NotAGInverse { residual });
    }
    Ok(())
}

/// Raw max-abs residuals of the four Penrose conditions for `A = I − P`.
pub fn penrose_residuals(chain: &StochasticChain, g: &Matrix) -> [f64; 4] {
    let a = chain.kernel();
    let ag = &a * g;
    let ga = g * &a;
    let diff = |x: &Matrix, y: &Matrix| x.max_abs_diff(y).unwrap_or(f64::INFINITY);
    [
        diff(&(&ag * &a), &a),
        diff(&(&ga * g), g),
        diff(&ag.transpose(), &ag),
        diff(&ga.transpose(), &ga),
    ]
}

/// `[I − P + t uᵀ]⁻¹`, nonsingular iff `πᵀt ≠ 0` and `uᵀe ≠ 0`.
pub fn build_base_inverse(chain: &StochasticChain, t: &[f64], u: &[f64]) -> Result<Matrix> {
    let m = chain.size();
    if t.len() != m || u.len() != m {
        return Err(Error::ShapeMismatch {
            expected: format!("vectors of length {m}"),
            found: format!("t {}, u {}", t.len(), u.len()),
        });
    }
    let pi = chain.pi();
    let pt = pi.dot(t);
    if pt.abs() < NONSINGULAR_THRESHOLD {
        return Err(Error::DegenerateParameters(format!("πᵀt = {pt} is zero")));
    }
    let ue: f64 = u.iter().sum();
    if ue.abs() < NONSINGULAR_THRESHOLD {
        return Err(Error::DegenerateParameters(format!("uᵀe = {ue} is zero")));
    }
    let inv = invert(&(&chain.kernel() + &Matrix::outer(t, u)))?;

    let scale =
        inv.max_abs().max(1.0) * (1.0 + t.iter().chain(u).fold(0.0f64, |a, b| a.max(b.abs())));
    let right = inv.mul_vec(t);
    let d1 = right
        .iter()
        .fold(0.0f64, |a, x| a.max((x - 1.0 / ue).abs()));
    if d1 > IDENTITY_TOL * scale {
        return Err(Error::RouteDisagreement {
            what: "base inverse times t",
            left: "[I-P+tu']^-1 t".into(),
            right: "e/(u'e)".into(),
            diff: d1,
        });
    }
    let left = inv.vec_mul(u);
    let d2 = left.max_abs_diff(&pi.scale(1.0 / pt));
    if d2 > IDENTITY_TOL * scale {
        return Err(Error::RouteDisagreement {
            what: "u' times base inverse",
            left: "u'[I-P+tu']^-1".into(),
            right: "pi'/(pi't)".into(),
            diff: d2,
        });
    }
    Ok(inv)
}

/// `[I − P + t uᵀ]⁻¹ + e fᵀ + g πᵀ`: the general one-condition g-inverse.
pub fn build_one_condition(
    chain: &StochasticChain,
    t: &[f64],
    u: &[f64],
    f: &[f64],
    g: &[f64],
) -> Result<GInverse> {
    let m = chain.size();
    if f.len() != m || g.len() != m {
        return Err(Error::ShapeMismatch {
            expected: format!("vectors of length {m}"),
            found: format!("f {}, g {}", f.len(), g.len()),
        });
    }
    let base = build_base_inverse(chain, t, u)?;
    let e = Vector::ones(m);
    let mat = &(&base + &Matrix::outer(&e, f)) + &Matrix::outer(g, chain.pi());
    GInverse::from_matrix(chain, mat)
}

/// `G(α, β, γ) = [I − P + αβᵀ]⁻¹ + γ eπᵀ`.
pub fn build_parametric(chain: &StochasticChain, params: &GInverseParams) -> Result<GInverse> {
    params.check_admissible(chain.pi())?;
    let base = build_base_inverse(chain, &params.alpha, &params.beta)?;
    let g = &base + &chain.pi_matrix().scale(params.gamma);
    let recovered = characterize(chain, &g)?;
    let diff = recovered.max_diff(params);
    if diff > CHARACTERIZE_TOL {
        return Err(Error::RouteDisagreement {
            what: "parametric round-trip",
            left: "characterize(G)".into(),
            right: "(alpha, beta, gamma)".into(),
            diff,
        });
    }
    Ok(GInverse {
        g,
        params: params.clone(),
    })
}

/// Recovers `(α, β, γ)` from a g-inverse:
/// `α = (I − (I−P)G)e`, `βᵀ = πᵀ(I − G(I−P))`, `γ = βᵀGα − 1`.
///
/// `γ + 1` is also computed as `πᵀGα` and `βᵀGe`; all three must agree.
pub fn characterize(chain: &StochasticChain, g: &Matrix) -> Result<GInverseParams> {
    require_ginverse(chain, g)?;
    let m = chain.size();
    let a = chain.kernel();
    let id = Matrix::identity(m);
    let e = Vector::ones(m);
    let pi = chain.pi();

    let alpha = (&id - &(&a * g)).mul_vec(&e);
    let beta = (&id - &(g * &a)).vec_mul(pi);
    let g_alpha = g.mul_vec(&alpha);
    let via_beta_alpha = beta.dot(&g_alpha);
    let via_pi_alpha = pi.dot(&g_alpha);
    let via_beta_e = g.vec_mul(&beta).sum();

    let scale = via_beta_alpha.abs().max(1.0);
    for (name, v) in [("pi'G alpha", via_pi_alpha), ("beta'G e", via_beta_e)] {
        let diff = (v - via_beta_alpha).abs() / scale;
        if diff > CHARACTERIZE_TOL {
            return Err(Error::RouteDisagreement {
                what: "gamma + 1",
                left: "beta'G alpha".into(),
                right: name.into(),
                diff,
            });
        }
    }
    Ok(GInverseParams {
        alpha,
        beta,
        gamma: via_beta_alpha - 1.0,
    })
}

fn matrix_condition_holds(residual: f64, scale: f64) -> bool {
    residual <= 1e-7 * scale
}

/// Decides conditions 2–5 from the parameters and cross-checks each against
/// the matrix condition it encodes.
pub fn classify(chain: &StochasticChain, ginv: &GInverse) -> Result<ConditionSet> {
    let m = chain.size();
    let pi = chain.pi();
    let p = &ginv.params;
    let g = &ginv.g;

    let pi_norm2 = pi.dot(pi);
    let by_params = ConditionSet {
        cond2: (p.gamma + 1.0).abs() <= CLASSIFY_TOL * p.gamma.abs().max(1.0),
        cond3: rel_vec_diff(&p.alpha, &pi.scale(1.0 / pi_norm2)) <= CLASSIFY_TOL,
        cond4: rel_vec_diff(&p.beta, &Vector::filled(m, 1.0 / m as f64)) <= CLASSIFY_TOL,
        cond5a: rel_vec_diff(&p.alpha, &Vector::ones(m)) <= CLASSIFY_TOL,
        cond5b: rel_vec_diff(&p.beta, pi) <= CLASSIFY_TOL,
    };

    let a = chain.kernel();
    let ag = &a * g;
    let ga = g * &a;
    let gn = 1.0 + g.max_abs();
    let an = 1.0 + a.max_abs();
    let diff = |x: &Matrix, y: &Matrix| x.max_abs_diff(y).unwrap_or(f64::INFINITY);

    let row_sums = g.row_sums();
    let mean_row = row_sums.sum() / m as f64;
    let pi_g = g.vec_mul(pi);
    let h = pi_g.sum();

    let by_matrix = ConditionSet {
        cond2: matrix_condition_holds(diff(&(&ga * g), g), gn * gn * an),
        cond3: matrix_condition_holds(diff(&ag.transpose(), &ag), gn * an),
        cond4: matrix_condition_holds(diff(&ga.transpose(), &ga), gn * an),
        cond5a: matrix_condition_holds(
            row_sums
                .iter()
                .fold(0.0f64, |mx, s| mx.max((s - mean_row).abs())),
            gn,
        ),
        cond5b: matrix_condition_holds(pi_g.max_abs_diff(&pi.scale(h)), gn),
    };

    for (name, x, y) in [
        ("2", by_params.cond2, by_matrix.cond2),
        ("3", by_params.cond3, by_matrix.cond3),
        ("4", by_params.cond4, by_matrix.cond4),
        ("5a", by_params.cond5a, by_matrix.cond5a),
        ("5b", by_params.cond5b, by_matrix.cond5b),
    ] {
        if x != y {
            return Err(Error::ClassificationInconsistent {
                condition: name,
                by_params: x,
                by_matrix: y,
            });
        }
    }
    let commute = matrix_condition_holds(diff(&ag, &ga), gn * an);
    if commute != by_params.cond5() {
        return Err(Error::ClassificationInconsistent {
            condition: "5",
            by_params: by_params.cond5(),
            by_matrix: commute,
        });
    }
    Ok(by_params)
}

/// Kemeny and Snell's fundamental matrix `Z = [I − P + Π]⁻¹`, parameters `(e, π, 0)`.
pub fn fundamental_matrix(chain: &StochasticChain) -> Result<GInverse> {
    let m = chain.size();
    let e = Vector::ones(m);
    let pi = chain.pi();
    let z = build_base_inverse(chain, &e, pi)?;
    let scale = z.max_abs().max(1.0);
    let d_row = z.mul_vec(&e).max_abs_diff(&e);
    let d_col = z.vec_mul(pi).max_abs_diff(pi);
    let diff = d_row.max(d_col);
    if diff > IDENTITY_TOL * scale {
        return Err(Error::RouteDisagreement {
            what: "fundamental matrix",
            left: "Ze, pi'Z".into(),
            right: "e, pi'".into(),
            diff,
        });
    }
    Ok(GInverse {
        g: z,
        params: GInverseParams::class5(chain, 0.0),
    })
}

/// The group inverse `A# = Z − Π`, parameters `(e, π, −1)`.
pub fn group_inverse(chain: &StochasticChain) -> Result<GInverse> {
    let z = fundamental_matrix(chain)?;
    let g = z.g() - &chain.pi_matrix();
    let a = chain.kernel();
    let scale = g.max_abs().max(1.0);
    let m = chain.size();
    let checks = [
        ("A A# A = A", (&(&a * &g) * &a).max_abs_diff(&a)?),
        ("A# A A# = A#", (&(&g * &a) * &g).max_abs_diff(&g)?),
        ("A A# = A# A", (&a * &g).max_abs_diff(&(&g * &a))?),
        ("A# e = 0", g.mul_vec(&Vector::ones(m)).norm_inf()),
        ("pi'A# = 0", g.vec_mul(chain.pi()).norm_inf()),
    ];
    for (name, r) in checks {
        if r > IDENTITY_TOL * scale * scale {
            return Err(Error::RouteDisagreement {
                what: "group inverse conditions",
                left: name.into(),
                right: "exact".into(),
                diff: r,
            });
        }
    }
    Ok(GInverse {
        g,
        params: GInverseParams::class5(chain, -1.0),
    })
}

/// The Moore–Penrose inverse of `I − P`.
///
/// Both `[I − P + πeᵀ]⁻¹ − eπᵀ/(mπᵀπ)` and
/// `[I − P + a πeᵀ]⁻¹ − a eπᵀ` with `a = 1/√(mπᵀπ)` are evaluated and must
/// agree; the first is returned. The four Penrose conditions are verified.
pub fn moore_penrose(chain: &StochasticChain) -> Result<GInverse> {
    let (first, second) = moore_penrose_forms(chain)?;
    let diff = scaled_diff(&second, &first)?;
    if diff > IDENTITY_TOL {
        return Err(Error::MPFormsDisagree { diff });
    }
    let scale = first.max_abs().max(1.0);
    let r = penrose_residuals(chain, &first);
    if r[0] > IDENTITY_TOL * scale {
        return Err(Error::NotAGInverse { residual: r[0] });
    }
    for (k, name) in [(1, "2"), (2, "3"), (3, "4")] {
        if r[k] > IDENTITY_TOL * scale * scale {
            return Err(Error::ClassificationInconsistent {
                condition: name,
                by_params: true,
                by_matrix: false,
            });
        }
    }
    let m = chain.size();
    let pi = chain.pi();
    Ok(GInverse {
        g: first,
        params: GInverseParams {
            alpha: pi.scale(1.0 / pi.dot(pi)),
            beta: Vector::filled(m, 1.0 / m as f64),
            gamma: -1.0,
        },
    })
}

/// The two closed forms of the Moore–Penrose inverse, unverified.
pub fn moore_penrose_forms(chain: &StochasticChain) -> Result<(Matrix, Matrix)> {
    let m = chain.size();
    let pi = chain.pi();
    let e = Vector::ones(m);
    let pp = pi.dot(pi);
    let big_pi = chain.pi_matrix();
    let first = &build_base_inverse(chain, pi, &e)? - &big_pi.scale(1.0 / (m as f64 * pp));
    let a = 1.0 / (m as f64 * pp).sqrt();
    let second = &build_base_inverse(chain, &pi.scale(a), &e)? - &big_pi.scale(a);
    Ok((first, second))
}

/// `H = G(I − Π)`, which always has parameters `(e, β, −1)`.
pub fn deflate(chain: &StochasticChain, ginv: &GInverse) -> Result<GInverse> {
    let m = chain.size();
    let h = ginv.g() * &chain.deflator();
    let expected = GInverseParams {
        alpha: Vector::ones(m),
        beta: ginv.params.beta.clone(),
        gamma: -1.0,
    };
    let recovered = characterize(chain, &h)?;
    let diff = recovered.max_diff(&expected);
    if diff > CHARACTERIZE_TOL {
        return Err(Error::RouteDisagreement {
            what: "deflated parameters",
            left: "characterize(G(I-Pi))".into(),
            right: "(e, beta, -1)".into(),
            diff,
        });
    }
    let he = h.mul_vec(&Vector::ones(m)).norm_inf();
    if he > IDENTITY_TOL * h.max_abs().max(1.0) {
        return Err(Error::RouteDisagreement {
            what: "deflated row sums",
            left: "He".into(),
            right: "0".into(),
            diff: he,
        });
    }
    Ok(GInverse {
        g: h,
        params: expected,
    })
}

/// `(I − Π) G (I − Π)`, which equals the group inverse for every g-inverse `G`.
pub fn project_to_group_inverse(chain: &StochasticChain, g: &Matrix) -> Result<Matrix> {
    require_ginverse(chain, g)?;
    let d = chain.deflator();
    let projected = &(&d * g) * &d;
    let group = group_inverse(chain)?;
    let diff = scaled_diff(&projected, group.g())?;
    if diff > IDENTITY_TOL * g.max_abs().max(1.0) {
        return Err(Error::RouteDisagreement {
            what: "projection onto group inverse",
            left: "(I-Pi)G(I-Pi)".into(),
            right: "A#".into(),
            diff,
        });
    }
    Ok(projected)
}
