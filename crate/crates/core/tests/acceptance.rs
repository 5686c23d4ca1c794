//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use common::{c1, instance, mfpt_by_iteration, rel_diff, rng, two_state, vec_diff};
use markov_ginv::chain::{stationary_distribution, StochasticChain};
use markov_ginv::ginverse::{
    build_parametric, characterize, classify, condition1_residual, fundamental_matrix,
    group_inverse, moore_penrose, moore_penrose_forms, penrose_residuals, GInverse, GInverseParams,
};
use markov_ginv::matrix::scaled_diff;
use markov_ginv::moments::{
    ginverse_from_second_moments, group_inverse_from_second_moments, kemeny_constant,
    kemeny_row_values, second_moment_diag_from_ginverse, second_moment_diag_from_tau,
    second_moment_diag_routes, KemenyRoute,
};
use markov_ginv::oracle::{
    power_iteration_pi, simulate_first_passage, two_state_closed_form, SimConfig,
};
use markov_ginv::passage::{
    mfpt_direct, mfpt_from_deflated, mfpt_from_ginverse, mfpt_simplified_15a, reconstruct_ginverse,
    reconstruct_special, simplified_formula, tau, SpecialCase, SpecialParams,
};
use markov_ginv::perturbation::{delta_routes, identity_residual, Perturbation};
use markov_ginv::random::{random_chain, random_doubly_stochastic, random_perturbation};
use markov_ginv::routes::check_agreement;
use markov_ginv::{Error, Matrix, Tolerance, Vector};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const INSTANCES: u64 = 200;

fn instances() -> impl Iterator<Item = (u64, StochasticChain, GInverseParams, GInverse)> {
    (0..INSTANCES).map(|s| {
        let seed = 0xACCE_0000 + s;
        let (c, p, g) = instance(seed);
        (seed, c, p, g)
    })
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs().max(1.0)
}

fn two_state_grid() -> Outcome {
    let mut worst = 0.0f64;
    for ia in 1..=10 {
        for ib in 1..=10 {
            let (a, b) = (ia as f64 / 10.0, ib as f64 / 10.0);
            let chain = two_state(a, b);
            let cf = two_state_closed_form(a, b).map_err(|e| e.to_string())?;
            let m = mfpt_direct(&chain).map_err(|e| e.to_string())?;
            let pi = stationary_distribution(chain.p()).map_err(|e| e.to_string())?;
            let k = kemeny_constant(&chain, KemenyRoute::Definition, None)
                .map_err(|e| e.to_string())?;
            let z = fundamental_matrix(&chain).map_err(|e| e.to_string())?;
            let md2 = second_moment_diag_from_ginverse(&chain, &z).map_err(|e| e.to_string())?;
            let errs = [
                rel_diff(m.m(), &cf.m),
                vec_diff(&pi, &cf.pi),
                rel(k.value, cf.kemeny),
                vec_diff(&md2, &cf.md2) / cf.md2.norm_inf(),
            ];
            let e = errs.iter().cloned().fold(0.0, f64::max);
            ensure!(e <= 1e-10, "a={a} b={b}: error {e:e}");
            worst = worst.max(e);
        }
    }
    Ok(format!(
        "100 chains, worst relative error {worst:.1e} <= 1e-10"
    ))
}

fn c1_values() -> Outcome {
    let c = c1();
    let cf = two_state_closed_form(0.5, 0.25).unwrap();
    let third = 1.0 / 3.0;
    let pi_want = [third, 2.0 * third];
    let m_want = Matrix::from_rows(&[[3.0, 2.0], [4.0, 1.5]]).unwrap();
    let z_want = Matrix::from_rows(&[[11.0 / 9.0, -2.0 / 9.0], [-1.0 / 9.0, 10.0 / 9.0]]).unwrap();
    let a_want = Matrix::from_rows(&[[8.0 / 9.0, -8.0 / 9.0], [-4.0 / 9.0, 4.0 / 9.0]]).unwrap();
    let k_want = 7.0 / 3.0;
    let md2_want = [19.0, 3.5];

    let m = mfpt_direct(&c).unwrap().into_matrix();
    let z = fundamental_matrix(&c).unwrap();
    let a = group_inverse(&c).unwrap();
    let md2 = second_moment_diag_from_tau(c.pi(), &tau(c.pi(), &m));
    let checks: Vec<(&str, f64)> = vec![
        ("pi stationary", vec_diff(c.pi(), &pi_want)),
        (
            "pi power iteration",
            vec_diff(
                &power_iteration_pi(c.p(), 1e-15, 10_000, false).unwrap(),
                &pi_want,
            ),
        ),
        ("pi closed form", vec_diff(&cf.pi, &pi_want)),
        ("M direct", rel_diff(&m, &m_want)),
        (
            "M from Z",
            rel_diff(mfpt_from_ginverse(&c, z.g()).unwrap().m(), &m_want),
        ),
        (
            "M value iteration",
            rel_diff(&mfpt_by_iteration(c.p(), 1e-15), &m_want),
        ),
        (
            "K definition",
            rel(
                kemeny_constant(&c, KemenyRoute::Definition, None)
                    .unwrap()
                    .value,
                k_want,
            ),
        ),
        (
            "K trace",
            rel(
                kemeny_constant(&c, KemenyRoute::Trace15a, Some(&z))
                    .unwrap()
                    .value,
                k_want,
            ),
        ),
        ("K closed form", rel(cf.kemeny, k_want)),
        ("Z inverse", rel_diff(z.g(), &z_want)),
        (
            "Z second moments",
            rel_diff(
                &ginverse_from_second_moments(c.pi(), 0.0, &m, &md2).unwrap(),
                &z_want,
            ),
        ),
        ("Z adjugate", rel_diff(&cf.z, &z_want)),
        ("A# Z - Pi", rel_diff(a.g(), &a_want)),
        (
            "A# second moments",
            rel_diff(
                &group_inverse_from_second_moments(c.pi(), &m, &md2).unwrap(),
                &a_want,
            ),
        ),
        (
            "A# passage elements",
            rel_diff(
                &reconstruct_special(SpecialCase::Group, c.pi(), &m, &SpecialParams::default())
                    .unwrap(),
                &a_want,
            ),
        ),
        ("Md2 tau", vec_diff(&md2, &md2_want)),
        (
            "Md2 from Z",
            vec_diff(
                &second_moment_diag_from_ginverse(&c, &z).unwrap(),
                &md2_want,
            ),
        ),
        ("Md2 closed form", vec_diff(&cf.md2, &md2_want)),
    ];

    let worst = checks.iter().map(|c| c.1).fold(0.0, f64::max);
    for (name, e) in &checks {
        ensure!(*e <= 1e-10, "{name}: error {e:e}");
    }
    Ok(format!(
        "{} route checks, worst error {worst:.1e} <= 1e-10",
        checks.len()
    ))
}

fn parametric_round_trip() -> Outcome {
    let (mut worst_p, mut worst_r) = (0.0f64, 0.0f64);
    for (seed, c, p, g) in instances() {
        let back = characterize(&c, g.g()).map_err(|e| format!("seed {seed}: {e}"))?;
        let d = back.max_diff(&p);
        ensure!(d <= 1e-8, "seed {seed}: parameters differ by {d:e}");
        let k = 1.0 + p.gamma;
        let scale = g.g().max_abs().max(1.0);
        let r = vec_diff(&g.g().mul_vec(&p.alpha), &Vector::filled(c.size(), k))
            .max(vec_diff(&g.g().vec_mul(&p.beta), &c.pi().scale(k)))
            / scale;
        ensure!(r <= 1e-9, "seed {seed}: G alpha / beta' G residual {r:e}");
        ensure!(
            condition1_residual(&c, g.g()) <= 1e-9,
            "seed {seed}: not a g-inverse"
        );
        worst_p = worst_p.max(d);
        worst_r = worst_r.max(r);
    }
    Ok(format!(
        "{INSTANCES} instances, parameter error {worst_p:.1e} <= 1e-8, image residual {worst_r:.1e} <= 1e-9"
    ))
}

fn reconstruction() -> Outcome {
    let mut worst = 0.0f64;
    let mut special = 0;
    for (seed, c, p, g) in instances() {
        let m = mfpt_direct(&c).unwrap().into_matrix();
        let r = reconstruct_ginverse(&p, c.pi(), &m).map_err(|e| format!("seed {seed}: {e}"))?;
        let d = rel_diff(&r, g.g());
        ensure!(d <= 1e-8, "seed {seed}: general reconstruction error {d:e}");
        worst = worst.max(d);
        let extra = SpecialParams {
            beta: Some(p.beta.clone()),
            gamma: Some(p.gamma),
        };
        for case in SpecialCase::ALL {
            let full = case
                .full_params(c.pi(), &extra)
                .map_err(|e| format!("seed {seed} {case}: {e}"))?;
            let built =
                build_parametric(&c, &full).map_err(|e| format!("seed {seed} {case}: {e}"))?;
            let r = reconstruct_special(case, c.pi(), &m, &extra)
                .map_err(|e| format!("seed {seed} {case}: {e}"))?;
            let d = rel_diff(&r, built.g());
            ensure!(d <= 1e-8, "seed {seed}: case {case} error {d:e}");
            worst = worst.max(d);
            special += 1;
        }
    }
    Ok(format!(
        "{INSTANCES} general + {special} special-case reconstructions, worst {worst:.1e} <= 1e-8"
    ))
}

fn mfpt_routes() -> Outcome {
    let (mut agree, mut refuse) = (0, 0);
    let mut worst = 0.0f64;
    for (seed, c, mut p, _) in instances() {
        for force_5a in [false, true] {
            if force_5a {
                p.alpha = Vector::ones(c.size());
            }
            let g = build_parametric(&c, &p).unwrap();
            let m = mfpt_direct(&c).unwrap().into_matrix();
            let d1 = rel_diff(mfpt_from_ginverse(&c, g.g()).unwrap().m(), &m);
            let d2 = rel_diff(mfpt_from_deflated(&c, g.g()).unwrap().m(), &m);
            ensure!(
                d1.max(d2) <= 1e-8,
                "seed {seed}: routes differ by {:e}",
                d1.max(d2)
            );
            worst = worst.max(d1).max(d2);
            let five_a = classify(&c, &g).unwrap().cond5a;
            let simple_ok = rel_diff(&simplified_formula(&c, g.g()), &m) <= 1e-8;
            ensure!(
                simple_ok == five_a,
                "seed {seed}: simplified formula agrees={simple_ok}, 5a={five_a}"
            );
            match mfpt_simplified_15a(&c, &g) {
                Ok(_) if five_a => agree += 1,
                Err(Error::NotIn15a) if !five_a => refuse += 1,
                other => return Err(format!("seed {seed}: unexpected {other:?}")),
            }
        }
    }
    Ok(format!(
        "worst route difference {worst:.1e} <= 1e-8; simplified form exact on {agree} class-5a inverses, wrong on all {refuse} others"
    ))
}

fn moment_identities() -> Outcome {
    let mut worst = 0.0f64;
    let mut named = 0;
    for (seed, c, _, g) in instances() {
        let mut all = vec![g];
        all.push(fundamental_matrix(&c).unwrap());
        all.push(group_inverse(&c).unwrap());
        all.push(moore_penrose(&c).unwrap());
        for g in &all {
            let routes = second_moment_diag_routes(&c, g).unwrap();
            let d =
                check_agreement("md2", &routes, 1e-8).map_err(|e| format!("seed {seed}: {e}"))?;
            worst = worst.max(d);
            let md2 = &routes[0].value;
            let m = mfpt_direct(&c).unwrap().into_matrix();
            let t = tau(c.pi(), &m);
            for j in 0..c.size() {
                let r = (md2[j] + m[(j, j)] - 2.0 * m[(j, j)] * t[j]).abs() / md2[j];
                ensure!(
                    r <= 1e-8,
                    "seed {seed}: recurrence identity off by {r:e} at state {j}"
                );
            }
        }
        let m = mfpt_direct(&c).unwrap().into_matrix();
        let md2 = second_moment_diag_from_tau(c.pi(), &tau(c.pi(), &m));
        let z = ginverse_from_second_moments(c.pi(), 0.0, &m, &md2).unwrap();
        let a = ginverse_from_second_moments(c.pi(), -1.0, &m, &md2).unwrap();
        let dz = rel_diff(&z, all[1].g());
        let da = rel_diff(&a, all[2].g());
        ensure!(
            dz.max(da) <= 1e-8,
            "seed {seed}: second-moment Z/A# error {:e}",
            dz.max(da)
        );
        named += 2;
    }
    Ok(format!("all diagonal routes agree (worst {worst:.1e} <= 1e-8); {named} Z/A# rebuilt from second moments"))
}

fn kemeny() -> Outcome {
    let mut worst = 0.0f64;
    for (seed, c, _, g) in instances() {
        let m = mfpt_direct(&c).unwrap().into_matrix();
        let rows = kemeny_row_values(c.pi(), &m);
        let k = rows[0];
        let spread = rows.iter().map(|r| rel(*r, k)).fold(0.0, f64::max);
        ensure!(spread <= 1e-9, "seed {seed}: rows differ by {spread:e}");
        let z = fundamental_matrix(&c).unwrap();
        let a = group_inverse(&c).unwrap();
        let mut values = vec![
            kemeny_constant(&c, KemenyRoute::Definition, None)
                .unwrap()
                .value,
            kemeny_constant(&c, KemenyRoute::GeneralG, Some(&g))
                .unwrap()
                .value,
            kemeny_constant(&c, KemenyRoute::DeltaSum, Some(&g))
                .unwrap()
                .value,
            kemeny_constant(&c, KemenyRoute::Trace15a, Some(&z))
                .unwrap()
                .value,
            z.g().trace(),
            a.g().trace() + 1.0,
        ];
        if let Ok(t) = kemeny_constant(&c, KemenyRoute::Trace15a, Some(&g)) {
            values.push(t.value);
        }
        let d = values.iter().map(|v| rel(*v, k)).fold(0.0, f64::max);
        ensure!(d <= 1e-8, "seed {seed}: Kemeny routes differ by {d:e}");
        worst = worst.max(d).max(spread);
    }
    Ok(format!(
        "{INSTANCES} chains, rows constant and all routes agree (worst {worst:.1e})"
    ))
}

fn perturbation() -> Outcome {
    let mut r = rng(0x8888);
    let (mut worst, mut worst_id, mut tightest) = (0.0f64, 0.0f64, f64::INFINITY);
    for t in 0..1000 {
        let m = r.gen_range(2..=8);
        let c = random_chain(&mut r, m);
        let params = markov_ginv::random::random_params(&mut r, &c);
        let g = build_parametric(&c, &params).unwrap();
        let e = random_perturbation(&mut r, &c, 0.1);
        ensure!(e.inf_norm() <= 0.1, "trial {t}: |E| = {}", e.inf_norm());
        let pert =
            Perturbation::new(&c, &e, Tolerance::DEFAULT).map_err(|e| format!("trial {t}: {e}"))?;
        let report = delta_routes(&pert, &g).map_err(|e| format!("trial {t}: {e}"))?;
        let direct = stationary_distribution(&(c.p() + pert.e())).unwrap();
        let want: Vec<f64> = direct
            .iter()
            .zip(c.pi().iter())
            .map(|(a, b)| a - b)
            .collect();
        for route in &report.routes {
            let d = vec_diff(&route.value, &want);
            ensure!(d <= 1e-9, "trial {t}: route {} off by {d:e}", route.route);
            worst = worst.max(d);
        }
        let id = identity_residual(&pert, &report.pi_bar);
        ensure!(id <= 1e-9, "trial {t}: identity residual {id:e}");
        worst_id = worst_id.max(id);
        let b = report.bound;
        ensure!(
            b.lhs <= b.bound + 1e-12,
            "trial {t}: bound violated {} > {}",
            b.lhs,
            b.bound
        );
        if b.bound > 0.0 {
            tightest = tightest.min(b.bound / b.lhs.max(f64::MIN_POSITIVE));
        }
    }
    Ok(format!(
        "1000 perturbations: routes within {worst:.1e}, identity residual {worst_id:.1e}, bound held (tightest ratio {tightest:.2})"
    ))
}

fn monte_carlo() -> Outcome {
    let c = c1();
    let cfg = SimConfig::new(100_000, 20_240_601);
    let m12 = simulate_first_passage(&c, 0, 1, &cfg).map_err(|e| e.to_string())?;
    let m21 = simulate_first_passage(&c, 1, 0, &cfg).map_err(|e| e.to_string())?;
    let m11 = simulate_first_passage(&c, 0, 0, &cfg).map_err(|e| e.to_string())?;
    let z12 = (m12.mean - 2.0) / m12.stderr_mean;
    let z21 = (m21.mean - 4.0) / m21.stderr_mean;
    let z11 = (m11.second_moment - 19.0) / m11.stderr_second_moment;
    for (name, z) in [("m12", z12), ("m21", z21), ("m11(2)", z11)] {
        ensure!(z.abs() <= 4.0, "{name}: {z:.2} standard errors");
    }
    Ok(format!(
        "m12 {:.4} ({z12:+.2} se), m21 {:.4} ({z21:+.2} se), m11(2) {:.3} ({z11:+.2} se)",
        m12.mean, m21.mean, m11.second_moment
    ))
}

fn moore_penrose_checks() -> Outcome {
    let mut r = rng(0x3333);
    let (mut worst_f, mut worst_p, mut worst_d) = (0.0f64, 0.0f64, 0.0f64);
    for t in 0..100 {
        let m = r.gen_range(2..=8);
        let c = random_chain(&mut r, m);
        let (h, p) = moore_penrose_forms(&c).map_err(|e| format!("chain {t}: {e}"))?;
        let d = scaled_diff(&h, &p).unwrap();
        ensure!(d <= 1e-9, "chain {t}: forms differ by {d:e}");
        let mp = moore_penrose(&c).map_err(|e| format!("chain {t}: {e}"))?;
        let res = penrose_residuals(&c, mp.g())
            .into_iter()
            .fold(0.0, f64::max);
        ensure!(res <= 1e-9, "chain {t}: Penrose residual {res:e}");
        worst_f = worst_f.max(d);
        worst_p = worst_p.max(res);
    }
    for t in 0..100 {
        let m = r.gen_range(2..=8);
        let c = random_doubly_stochastic(&mut r, m);
        let d = rel_diff(
            moore_penrose(&c).unwrap().g(),
            group_inverse(&c).unwrap().g(),
        );
        ensure!(d <= 1e-9, "doubly stochastic chain {t}: MP - A# = {d:e}");
        worst_d = worst_d.max(d);
    }
    Ok(format!(
        "forms agree to {worst_f:.1e}, Penrose residuals {worst_p:.1e}, MP = A# on doubly stochastic to {worst_d:.1e}"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("two-state closed forms", two_state_grid),
        ("fixture C1 exact values", c1_values),
        ("parametric round trip", parametric_round_trip),
        ("element-wise reconstruction", reconstruction),
        ("passage time routes", mfpt_routes),
        ("moment identities", moment_identities),
        ("Kemeny invariance", kemeny),
        ("perturbation", perturbation),
        ("Monte Carlo consistency", monte_carlo),
        ("Moore-Penrose", moore_penrose_checks),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{}] {name}: {detail}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
