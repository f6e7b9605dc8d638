//! One line per acceptance criterion. Each criterion is run through
//! `drhp accept N`; the numbers in its report are re-checked here against
//! the tolerances below rather than trusting the report's own verdict.

use std::process::{Command, ExitCode};
use std::time::Instant;

use serde_json::Value;

const RESOLVENT_TOL: f64 = 1e-8;
const EXACT_TOL: f64 = 1e-9;
const MC_SIGMAS: f64 = 4.0;
const MC_SAMPLES: f64 = 2e5;
const DET_TOL: f64 = 1e-9;
const RESIDUE_TOL: f64 = 1e-8;
const GROWTH_LIMIT: f64 = 1.1;
const SOLVE_TOL: f64 = 1e-8;
const INVERSE_TOL: f64 = 1e-9;
const GAUGE_TOL: f64 = 1e-10;
const ODE_TOL: f64 = 1e-6;
const BETA_TOL: f64 = 1e-3;
const HAT_TOL: f64 = 1e-8;
const SLOPE: (f64, f64) = (-1.0, 0.3);

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap_or(f64::NAN)
}

fn reports(run: &Value) -> Vec<&Value> {
    run["steps"].as_array().map(|s| s.iter().map(|s| &s["report"]).collect()).unwrap_or_default()
}

fn max_over<'a>(rows: impl IntoIterator<Item = &'a Value>, f: impl Fn(&Value) -> f64) -> f64 {
    rows.into_iter().map(f).fold(0.0, |m, v| if v.is_nan() || m.is_nan() { f64::NAN } else { m.max(v) })
}

fn strictly_decreasing(v: &Value) -> bool {
    let e: Vec<f64> = v["errors"].as_array().map(|a| a.iter().map(num).collect()).unwrap_or_default();
    e.len() >= 2 && e.windows(2).all(|w| w[1] < w[0])
}

fn within_budget(elapsed: f64, limit: f64) -> (bool, String) {
    (elapsed < limit, format!("runtime {elapsed:.2} s (limit {limit} s)"))
}

/// `(pass, detail)` for criterion `n` from its report.
fn judge(n: u8, run: &Value, elapsed: f64) -> (bool, String) {
    let reps = reports(run);
    match n {
        1 => {
            let diff = max_over(reps.iter().copied(), |r| num(&r["max_abs_diff"]));
            let (t, note) = within_budget(elapsed, 5.0);
            (reps.len() == 3 && diff <= RESOLVENT_TOL && t, format!("max diff {diff:.1e} over 3 intensities, {note}"))
        }
        2 => {
            let diff = max_over(reps.iter().copied(), |r| num(&r["max_abs_diff"]));
            let windows = reps.iter().all(|r| r["n_max"] == 30);
            (reps.len() == 2 && windows && diff <= RESOLVENT_TOL, format!("max diff {diff:.1e} over 2 parameter sets"))
        }
        3 => {
            let rows: Vec<&Value> = reps.iter().flat_map(|r| r["rows"].as_array().into_iter().flatten()).collect();
            let diff = max_over(rows.iter().copied(), |r| (num(&r["exact"]) - num(&r["det"])).abs());
            let (t, note) = within_budget(elapsed, 60.0);
            (rows.len() == 42 && diff <= EXACT_TOL && t, format!("max |exact - det| {diff:.1e} over {} queries, {note}", rows.len()))
        }
        4 => {
            let rows: Vec<&Value> = reps.iter().flat_map(|r| r["rows"].as_array().into_iter().flatten()).collect();
            let z = max_over(rows.iter().copied(), |r| {
                let det = num(&r["det"]);
                let sigma = num(&r["mc_stderr"]).max((det * (1.0 - det) / MC_SAMPLES).sqrt());
                (num(&r["mc"]) - det).abs() / sigma
            });
            let (t, note) = within_budget(elapsed, 30.0);
            (rows.len() == 9 && z <= MC_SIGMAS && t, format!("worst deviation {z:.2} sigma over {} queries, {note}", rows.len()))
        }
        5 => {
            let det = max_over(reps.iter().copied(), |r| num(&r["det_residual"]));
            let res: Vec<&Value> = reps.iter().flat_map(|r| r["residue_residuals"].as_array().into_iter().flatten()).collect();
            let residual = max_over(res.iter().copied(), |r| num(&r["residual"]));
            let growth = max_over(res.iter().copied(), |r| num(&r["growth"]));
            let covers = reps.iter().all(|r| (-9..=9).step_by(2).all(|d| r["residue_residuals"].as_array().is_some_and(|a| a.iter().any(|x| x["x2"] == d))));
            (
                reps.len() == 2 && covers && det <= DET_TOL && residual <= RESIDUE_TOL && growth < GROWTH_LIMIT,
                format!("det {det:.1e}, residue {residual:.1e}, growth {growth:.3}"),
            )
        }
        6 => {
            let r = reps.first().copied().unwrap_or(&Value::Null);
            let m = num(&r["m_vs_closed_form"]);
            let inv = num(&r["m_times_m_tilde_t_minus_identity"]);
            let fg = num(&r["fg_linear_vs_resolvent"]).max(num(&r["fg_drhp_vs_resolvent"]));
            let kd = num(&r["k_diagonal_vs_resolvent"]);
            (
                m <= SOLVE_TOL && inv <= INVERSE_TOL && fg <= SOLVE_TOL && kd <= SOLVE_TOL,
                format!("m {m:.1e}, m m~t - I {inv:.1e}, F/G {fg:.1e}, K diag {kd:.1e}"),
            )
        }
        7 => {
            let r = reps.first().copied().unwrap_or(&Value::Null);
            let g = r["gauge_residuals"].as_array().cloned().unwrap_or_default();
            let of_kind = |k: &str| max_over(g.iter().filter(|x| x["kind"] == k), |x| num(&x["residual"]));
            let (shift, ode) = (of_kind("shift"), of_kind("eta_ode"));
            let eta = num(&r["theta"]).sqrt();
            let beta = |b: &str| {
                let v = &r["asymptotics"][b]["beta"];
                (num(&v[0]), num(&v[1]))
            };
            let (bm, bp) = (beta("minus"), beta("plus"));
            let beta_err = ((bm.0 + eta).hypot(bm.1)).max((bp.0 - eta).hypot(bp.1));
            let hat = num(&r["hat_kernel_two_route"]);
            (
                shift <= GAUGE_TOL && ode <= ODE_TOL && beta_err <= BETA_TOL && hat <= HAT_TOL,
                format!("shift {shift:.1e}, ODE {ode:.1e}, beta {:.4}/{:.4}, hat {hat:.1e}", bm.0, bp.0),
            )
        }
        8 => {
            let [deg, xi, f2w] = [0, 1, 2].map(|i| reps.get(i).copied().unwrap_or(&Value::Null));
            let slope = num(&deg["rate_estimate"]);
            let ok = strictly_decreasing(deg)
                && (slope - SLOPE.0).abs() <= SLOPE.1
                && strictly_decreasing(xi)
                && strictly_decreasing(f2w);
            (ok, format!("degeneration slope {slope:.3}, xi errors {}, f2w errors {}", xi["errors"], f2w["errors"]))
        }
        9 => {
            let r = reps.first().copied().unwrap_or(&Value::Null);
            let burnside = r["burnside"].as_array().is_some_and(|a| a.len() == 15 && a.iter().all(|x| x["pass"] == true));
            let frob = r["frobenius_and_conjugation"] == true;
            let lis = r["rsk_lis_failures"] == 0 && r["rsk_permutations"] == 10_000;
            (burnside && frob && lis, format!("burnside n <= 14 {burnside}, frobenius n <= 12 {frob}, rsk/lis {lis}"))
        }
        _ => (false, "unknown criterion".into()),
    }
}

fn main() -> ExitCode {
    let mut all = true;
    for n in 1..=9u8 {
        let start = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_drhp")).args(["accept", &n.to_string()]).env_remove("DRHP_TARGET_REL_ERROR").output().expect("run drhp");
        let wall = start.elapsed().as_secs_f64();
        let (pass, detail) = match serde_json::from_slice::<Value>(&out.stdout) {
            Ok(run) => {
                let elapsed = num(&run["elapsed_s"]);
                let (ok, detail) = judge(n, &run, elapsed);
                let agrees = (run["pass"] == true) == out.status.success();
                (ok && agrees && run["pass"] == true, detail)
            }
            Err(e) => (false, format!("no report ({e}): {}", String::from_utf8_lossy(&out.stderr).trim())),
        };
        all &= pass;
        println!("criterion {n}: {} {detail} [wall {wall:.2} s]", if pass { "PASS" } else { "FAIL" });
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
