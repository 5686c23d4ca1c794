//! Bookkeeping for quantities computed by several independent formulas.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Vector;

/// One route's value for a vector-valued quantity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RouteValue {
    pub route: &'static str,
    pub value: Vector,
}

impl RouteValue {
    pub fn new(route: &'static str, value: Vector) -> Self {
        RouteValue { route, value }
    }
}

/// Checks that every route matches the first within `tol`, relative to
/// `max(1, ‖first‖∞)`. Returns the largest discrepancy seen.
pub fn check_agreement(what: &'static str, routes: &[RouteValue], tol: f64) -> Result<f64> {
    let Some(first) = routes.first() else {
        return Ok(0.0);
    };
    let scale = first.value.norm_inf().max(1.0);
    let mut worst = 0.0f64;
    for r in &routes[1..] {
        let diff = r.value.max_abs_diff(&first.value) / scale;
        if !(diff <= tol) {
            return Err(Error::RouteDisagreement {
                what,
                left: first.route.into(),
                right: r.route.into(),
                diff,
            });
        }
        worst = worst.max(diff);
    }
    Ok(worst)
}

/// Largest pairwise discrepancy among the routes, unscaled.
pub fn max_pairwise(routes: &[RouteValue]) -> f64 {
    let mut worst = 0.0f64;
    for (i, a) in routes.iter().enumerate() {
        for b in &routes[i + 1..] {
            worst = worst.max(a.value.max_abs_diff(&b.value));
        }
    }
    worst
}
