use std::fmt::Write as _;

use drhp_core::correlations::{default_n_cut, rho_det, rho_exact, rho_mc, PointQuery, MAX_N_CUT};
use drhp_core::drhp::{
    compute_fg, default_u_grid, det_residual, eta_ode_residual, extract_asymptotics, gauge_n, gauge_p, lattice_relation_residual,
    m_bessel, m_hypergeometric, shift_relation_residual, solve_linear, verify_residue, zeta_grid, Branch, DiscreteRhp,
    MatrixFunction,
};
use drhp_core::kernels::{
    bessel_hat_kernel, discrete_bessel_k, h_bessel, h_zmeasure, hypergeometric_kernel_evaluator, kernel_matrix, l_kernel,
    LatticeKernel,
};
use drhp_core::partitions::{
    diagram_from_config, dimension, enumerate_partitions, factorial, frobenius, point_config, rsk_shape, sample_poissonized,
    stream, HalfInteger,
};
use drhp_core::resolvent::{build_l, check_integrable_structure, fit_window, hat_k, resolvent_k, IntegrableData, Window};
use drhp_core::scaling::{check_f_to_w, check_xi_limit, check_z_degeneration};
use drhp_core::{Cplx, LimitReport, Mat2, ThetaParams, WindowedOperator, ZParams};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use serde_json::{json, Value};

use crate::config::Format;
use crate::{
    CombinatoricsArgs, DegenerateArgs, DrhpFamily, DrhpSolveArgs, DrhpVerifyArgs, F2wArgs, Failure, KernelEvalArgs, KernelFamily, Method, Report,
    ResolventArgs, ResolventFamily, RhoCompareArgs, RhoQueryArgs, SampleArgs, XiArgs, ZArgs,
};

const DET_TOL: f64 = 1e-9;
const RESIDUE_TOL: f64 = 1e-8;
const GROWTH_LIMIT: f64 = 1.1;
const GAUGE_TOL: f64 = 1e-10;
const LATTICE_TOL: f64 = 1e-9;
const ODE_TOL: f64 = 1e-6;
const ODE_STEP: f64 = 1e-4;
const BETA_TOL: f64 = 1e-3;
const EXACT_TOL: f64 = 1e-9;
const MC_SIGMAS: f64 = 4.0;
const DEGENERATION_SLOPE: (f64, f64) = (-1.0, 0.3);
/// Residue conditions are checked on `|x| ≤ 9/2`.
const RESIDUE_RANGE: i64 = 9;
const HYPERGEOMETRIC_WINDOW_CAP: usize = 400;
const HAT_WINDOW: usize = 30;
const ZETA_POINTS: usize = 20;
const ASYMPTOTIC_RADII: [i64; 2] = [10, 20];

fn hi(d: i64) -> Result<HalfInteger, Failure> {
    Ok(HalfInteger::from_doubled(d)?)
}

fn theta_params(theta: f64) -> Result<ThetaParams, Failure> {
    Ok(ThetaParams::new(theta)?)
}

fn z_params(z: &ZArgs, default: (f64, f64, f64)) -> Result<ZParams, Failure> {
    let xi = z.xi.unwrap_or(default.2);
    let re = z.z.unwrap_or(default.0);
    match (z.z_im, z.z_prime) {
        (Some(_), Some(_)) => Err(Failure::Usage("--z-im and --z-prime are mutually exclusive".into())),
        (Some(im), None) => Ok(ZParams::principal(Cplx::new(re, im), xi)?),
        (None, zp) => Ok(ZParams::complementary(re, zp.unwrap_or(default.1), xi)?),
    }
}

fn to_json<S: serde::Serialize>(v: &S) -> Result<Value, Failure> {
    serde_json::to_value(v).map_err(|e| Failure::Run(e.to_string()))
}

fn kernel_csv(op: &WindowedOperator) -> String {
    let mut out = String::from("x2,y2,value\n");
    for (i, x) in op.window.points().enumerate() {
        for (j, y) in op.window.points().enumerate() {
            let _ = writeln!(out, "{},{},{:e}", x.doubled(), y.doubled(), op.entries[(i, j)]);
        }
    }
    out
}

fn tabulate<K: LatticeKernel<f64>>(k: &K, w: Window) -> Result<WindowedOperator, Failure> {
    let mut op = WindowedOperator::zeros(w);
    for (i, x) in w.points().enumerate() {
        for (j, y) in w.points().enumerate() {
            op.entries[(i, j)] = k.eval(x, y)?;
        }
    }
    Ok(op)
}

struct FnKernel<F>(F);

impl<F: Fn(HalfInteger, HalfInteger) -> drhp_core::Result<f64> + Send + Sync> LatticeKernel<f64> for FnKernel<F> {
    fn eval(&self, x: HalfInteger, y: HalfInteger) -> drhp_core::Result<f64> {
        (self.0)(x, y)
    }
}

pub fn kernel_eval(a: &KernelEvalArgs) -> Result<Report, Failure> {
    let w = Window::new(a.nmax)?;
    let op = match a.family {
        KernelFamily::L => {
            let p = theta_params(a.theta)?;
            tabulate(&FnKernel(move |x, y| l_kernel(x, y, p)), w)?
        }
        KernelFamily::Bessel => {
            let p = theta_params(a.theta)?;
            tabulate(&FnKernel(move |x, y| discrete_bessel_k(x, y, p)), w)?
        }
        KernelFamily::Hat => tabulate(&bessel_hat_kernel(theta_params(a.theta)?), w)?,
        KernelFamily::Hypergeometric => tabulate(&hypergeometric_kernel_evaluator(z_params(&a.z, (0.4, 0.6, 0.3))?)?, w)?,
    };
    let rows: Vec<Value> = op
        .window
        .points()
        .enumerate()
        .flat_map(|(i, x)| op.window.points().enumerate().map(move |(j, y)| (i, j, x, y)))
        .map(|(i, j, x, y)| json!({ "x2": x.doubled(), "y2": y.doubled(), "value": op.entries[(i, j)] }))
        .collect();
    Ok(Report { json: Value::Array(rows), csv: Some(kernel_csv(&op)), default_format: Format::Csv, pass: true })
}

/// Bessel: the window is the one requested. Hypergeometric: the tail decays
/// slowly, so `L` is built on a window grown until its boundary mass is
/// negligible and the comparison is made on the requested inner window.
pub fn verify_resolvent(a: &ResolventArgs) -> Result<Report, Failure> {
    let w = Window::new(a.nmax)?;
    let (l, r, closed, params) = match a.family {
        ResolventFamily::Bessel => {
            let p = theta_params(a.theta)?;
            let h = h_bessel(p);
            let l = build_l(&h, w)?;
            let r = resolvent_k(&l, &IntegrableData::from_h(&h, w)?)?;
            let closed = tabulate(&FnKernel(move |x, y| discrete_bessel_k(x, y, p)), w)?;
            (l, r, closed, json!({ "theta": a.theta }))
        }
        ResolventFamily::Hypergeometric => {
            let zp = z_params(&a.z, (0.4, 0.6, 0.3))?;
            let h = h_zmeasure(zp)?;
            let outer = fit_window(&h, a.nmax, HYPERGEOMETRIC_WINDOW_CAP)?;
            let l = build_l(&h, outer)?;
            let r = resolvent_k(&l, &IntegrableData::from_h(&h, outer)?)?;
            let closed = kernel_matrix(&m_hypergeometric(zp)?, &h, w)?;
            (l, r, closed, to_json(&zp)?)
        }
    };
    let diff = closed.entries.sub(&r.k.restrict(w)?.entries).max_abs();
    let s = check_integrable_structure(&l, &r);
    let pass = diff <= a.tol && s.off_diagonal <= a.tol && s.diagonal <= a.tol && s.orthogonality <= a.tol;
    let json = json!({
        "params": params,
        "n_max": a.nmax,
        "resolvent_n_max": l.window.n_max,
        "tol": a.tol,
        "max_abs_diff": diff,
        "residuals": to_json(&s)?,
        "condition": r.condition,
        "pass": pass,
    });
    Ok(Report { json, csv: None, default_format: Format::Json, pass })
}

/// Length of a longest increasing subsequence, by patience sorting.
fn lis_len(perm: &[usize]) -> usize {
    let mut tops: Vec<usize> = Vec::new();
    for &v in perm {
        let k = tops.partition_point(|&t| t < v);
        if k == tops.len() {
            tops.push(v);
        } else {
            tops[k] = v;
        }
    }
    tops.len()
}

pub fn verify_combinatorics(a: &CombinatoricsArgs, seed: u64) -> Result<Report, Failure> {
    let mut burnside = Vec::new();
    for n in 0..=a.burnside_max {
        let total = enumerate_partitions(n).iter().map(|l| dimension(l).pow(2)).sum::<BigUint>();
        burnside.push(json!({ "n": n, "pass": total == factorial(n) }));
    }
    let mut frobenius_ok = true;
    let mut checked = 0usize;
    for n in 0..=a.frobenius_max {
        for lambda in enumerate_partitions(n) {
            let fr = frobenius(&lambda);
            let conj = lambda.conjugate();
            let fc = frobenius(&conj);
            frobenius_ok &= fr.to_diagram()? == lambda
                && diagram_from_config(&point_config(&lambda))? == lambda
                && fc.p == fr.q
                && fc.q == fr.p
                && point_config(&conj) == point_config(&lambda).negated()
                && conj.conjugate() == lambda;
            checked += 1;
        }
    }
    let mut lis_failures = 0usize;
    for i in 0..a.permutations {
        let mut perm: Vec<usize> = (1..=a.length).collect();
        perm.shuffle(&mut stream(seed, i as u64));
        if rsk_shape(&perm)?.part(1) as usize != lis_len(&perm) {
            lis_failures += 1;
        }
    }
    let burnside_ok = burnside.iter().all(|b| b["pass"] == json!(true));
    let pass = burnside_ok && frobenius_ok && lis_failures == 0;
    let json = json!({
        "burnside": burnside,
        "frobenius_partitions_checked": checked,
        "frobenius_and_conjugation": frobenius_ok,
        "rsk_permutations": a.permutations,
        "rsk_length": a.length,
        "rsk_lis_failures": lis_failures,
        "pass": pass,
    });
    Ok(Report { json, csv: None, default_format: Format::Json, pass })
}

fn residue_scan<M: MatrixFunction<f64>>(m: &M, prob: &DiscreteRhp<'_, f64>) -> Result<(Vec<Value>, bool), Failure> {
    let mut rows = Vec::new();
    let mut ok = true;
    for d in (-RESIDUE_RANGE..=RESIDUE_RANGE).step_by(2) {
        let r = verify_residue(m, prob, hi(d)?)?;
        ok &= r.residual <= RESIDUE_TOL && r.regularity.growth < GROWTH_LIMIT;
        rows.push(json!({ "x2": r.x2, "residual": r.residual, "growth": r.regularity.growth }));
    }
    Ok((rows, ok))
}

pub fn drhp_verify(a: &DrhpVerifyArgs) -> Result<Report, Failure> {
    let zetas = zeta_grid::<f64>(ZETA_POINTS);
    let json;
    let pass;
    match a.family {
        DrhpFamily::Bessel => {
            let p = theta_params(a.theta)?;
            let h = h_bessel(p);
            let m = m_bessel(p, Branch::Minus);
            let det = det_residual(&m, &zetas)?;
            let (residues, res_ok) = residue_scan(&m, &DiscreteRhp::new(&h, vec![]))?;
            let gp = gauge_p(gauge_n(m, p));
            let mut gauge = Vec::new();
            for u in default_u_grid::<f64>() {
                // β/η = -1 on this branch
                let r = shift_relation_residual(&gp, -1.0, u)?;
                gauge.push(json!({ "kind": "shift", "u": [u.re, u.im], "residual": r, "pass": r <= GAUGE_TOL }));
                let r = eta_ode_residual(p.eta, u, ODE_STEP)?;
                gauge.push(json!({ "kind": "eta_ode", "u": [u.re, u.im], "residual": r, "pass": r <= ODE_TOL }));
            }
            let r = lattice_relation_residual(&gp, hi(3)?)?;
            gauge.push(json!({ "kind": "lattice", "x2": 3, "residual": r, "pass": r <= LATTICE_TOL }));
            let gauge_ok = gauge.iter().all(|g| g["pass"] == json!(true));
            let minus = extract_asymptotics(&m_bessel(p, Branch::Minus), &ASYMPTOTIC_RADII)?;
            let plus = extract_asymptotics(&m_bessel(p, Branch::Plus), &ASYMPTOTIC_RADII)?;
            let beta_ok = (minus.beta - Cplx::new(-p.eta, 0.0)).norm() <= BETA_TOL && (plus.beta - Cplx::new(p.eta, 0.0)).norm() <= BETA_TOL;
            let hw = Window::new(HAT_WINDOW)?;
            let hat_route = hat_k(&build_l(&h, hw)?)?;
            let hat = tabulate(&bessel_hat_kernel(p), hw)?.entries.sub(&hat_route.entries).max_abs();
            pass = det <= DET_TOL && res_ok && gauge_ok && beta_ok && hat <= RESIDUE_TOL;
            json = json!({
                "family": "bessel",
                "theta": a.theta,
                "det_residual": det,
                "residue_residuals": residues,
                "gauge_residuals": gauge,
                "hat_kernel_two_route": hat,
                "asymptotics": { "minus": to_json(&minus)?, "plus": to_json(&plus)? },
                "pass": pass,
            });
        }
        DrhpFamily::Hypergeometric => {
            let zp = z_params(&a.z, (0.4, 0.6, 0.3))?;
            let h = h_zmeasure(zp)?;
            let m = m_hypergeometric(zp)?;
            let det = det_residual(&m, &zetas)?;
            let (residues, res_ok) = residue_scan(&m, &DiscreteRhp::new(&h, vec![]))?;
            pass = det <= DET_TOL && res_ok;
            json = json!({
                "family": "hypergeometric",
                "params": to_json(&zp)?,
                "det_residual": det,
                "residue_residuals": residues,
                "gauge_residuals": [],
                "pass": pass,
            });
        }
    }
    Ok(Report { json, csv: None, default_format: Format::Json, pass })
}

pub fn drhp_solve(a: &DrhpSolveArgs) -> Result<Report, Failure> {
    let p = theta_params(a.theta)?;
    let w = Window::new(a.nmax)?;
    let h = h_bessel(p);
    let sol = solve_linear(&h, w)?;
    let closed = m_bessel(p, Branch::Minus);
    let mut m_diff = 0.0f64;
    let mut inverse = 0.0f64;
    for u in default_u_grid::<f64>().into_iter().take(5) {
        let lin = sol.m.eval(u)?;
        m_diff = m_diff.max(lin.sub(&closed.eval(u)?).max_abs());
        inverse = inverse.max(lin.mul(&sol.m_tilde.eval(u)?.transpose()).sub(&Mat2::identity()).max_abs());
    }
    let l = build_l(&h, w)?;
    let r = resolvent_k(&l, &IntegrableData::from_h(&h, w)?)?;
    let points: Vec<HalfInteger> = w.points().collect();
    let fg = compute_fg(&closed, &h, &points)?;
    let mut fg_diff = 0.0f64;
    let mut lin_diff = 0.0f64;
    let mut diag_diff = 0.0f64;
    for i in 0..w.len() {
        let (rf, rg) = (r.f_at(i), r.g_at(i));
        for c in 0..2 {
            fg_diff = fg_diff.max((fg.f[i][c] - rf[c]).abs()).max((fg.g[i][c] - rg[c]).abs());
            lin_diff = lin_diff.max((sol.f[i][c] - rf[c]).abs()).max((sol.g[i][c] - rg[c]).abs());
        }
        diag_diff = diag_diff.max((fg.k_diag[i] - r.k.entries[(i, i)]).abs());
    }
    let pass = m_diff <= a.tol && inverse <= DET_TOL && fg_diff <= a.tol && lin_diff <= a.tol && diag_diff <= a.tol && fg.orthogonality <= DET_TOL;
    let json = json!({
        "theta": a.theta,
        "n_max": a.nmax,
        "tol": a.tol,
        "m_vs_closed_form": m_diff,
        "m_times_m_tilde_t_minus_identity": inverse,
        "fg_drhp_vs_resolvent": fg_diff,
        "fg_linear_vs_resolvent": lin_diff,
        "k_diagonal_vs_resolvent": diag_diff,
        "orthogonality": fg.orthogonality,
        "pass": pass,
    });
    Ok(Report { json, csv: None, default_format: Format::Json, pass })
}

fn query(points: &[i64]) -> Result<PointQuery, Failure> {
    Ok(PointQuery::new(points.iter().map(|&d| hi(d)).collect::<Result<Vec<_>, _>>()?)?)
}

fn zero_kernel(q: &PointQuery) -> Result<WindowedOperator, Failure> {
    let reach = q.points().iter().map(|x| x.doubled().unsigned_abs() as usize / 2).max().unwrap_or(0);
    Ok(WindowedOperator::zeros(Window::new(reach + 1)?))
}

fn det_estimate(q: &PointQuery, theta: f64) -> Result<drhp_core::RhoEstimate, Failure> {
    if theta == 0.0 {
        return Ok(rho_det(q, &zero_kernel(q)?)?);
    }
    let p = theta_params(theta)?;
    Ok(rho_det(q, &FnKernel(move |x, y| discrete_bessel_k(x, y, p)))?)
}

fn n_cut_for(theta: f64, n_cut: Option<usize>) -> usize {
    n_cut.unwrap_or_else(|| if theta == 0.0 { 0 } else { default_n_cut(theta) })
}

pub fn rho(a: &RhoQueryArgs, seed: u64) -> Result<Report, Failure> {
    let theta = a.theta.expect("required by clap");
    let q = query(&a.points)?;
    let est = match a.method.expect("required by clap") {
        Method::Det => det_estimate(&q, theta)?,
        Method::Exact => rho_exact(&q, theta, n_cut_for(theta, a.n_cut))?,
        Method::Mc => rho_mc(&q, theta, a.samples, seed)?,
    };
    let json = json!({ "value": est.value, "stderr": est.stderr, "method": to_json(&est.method)? });
    let csv = format!("value,stderr,method\n{:e},{:e},{}\n", est.value, est.stderr, json["method"].as_str().unwrap_or(""));
    Ok(Report { json, csv: Some(csv), default_format: Format::Json, pass: true })
}

fn default_queries() -> Vec<Vec<i64>> {
    let pts = [-5i64, -3, -1, 1, 3, 5];
    let mut out: Vec<Vec<i64>> = pts.iter().map(|&x| vec![x]).collect();
    for (i, &x) in pts.iter().enumerate() {
        for &y in &pts[i + 1..] {
            out.push(vec![x, y]);
        }
    }
    out
}

fn parse_queries(s: &str) -> Result<Vec<Vec<i64>>, Failure> {
    s.split(';')
        .map(|q| {
            q.split(',')
                .map(|d| d.trim().parse::<i64>().map_err(|e| Failure::Usage(format!("bad point {d:?} in --queries: {e}"))))
                .collect()
        })
        .collect()
}

pub fn rho_compare(a: &RhoCompareArgs, seed: u64) -> Result<Report, Failure> {
    let queries = match &a.queries {
        Some(s) => parse_queries(s)?,
        None => default_queries(),
    };
    let n_cut = n_cut_for(a.theta, None);
    let exact_feasible = n_cut <= MAX_N_CUT;
    let mut rows = Vec::new();
    let mut csv = String::from("points,det,exact,mc,mc_stderr,exact_ok,mc_ok\n");
    let mut pass = true;
    for pts in &queries {
        let q = query(pts)?;
        let det = det_estimate(&q, a.theta)?.value;
        let exact = if exact_feasible { Some(rho_exact(&q, a.theta, n_cut)?.value) } else { None };
        let mc = if a.samples > 0 { Some(rho_mc(&q, a.theta, a.samples, seed)?) } else { None };
        let exact_ok = exact.map(|e| (e - det).abs() <= EXACT_TOL);
        // The plug-in stderr vanishes when no sample hits a rare query; the
        // binomial stderr at the reference value is used as a floor.
        let mc_ok = mc.map(|mc| {
            let sigma = mc.stderr.max((det.clamp(0.0, 1.0) * (1.0 - det.clamp(0.0, 1.0)) / a.samples as f64).sqrt());
            (mc.value - det).abs() <= MC_SIGMAS * sigma
        });
        pass &= exact_ok.unwrap_or(true) && mc_ok.unwrap_or(true);
        let label = pts.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ");
        let opt = |v: Option<String>| v.unwrap_or_default();
        let _ = writeln!(
            csv,
            "{label},{det:e},{},{},{},{},{}",
            opt(exact.map(|e| format!("{e:e}"))),
            opt(mc.map(|m| format!("{:e}", m.value))),
            opt(mc.map(|m| format!("{:e}", m.stderr))),
            opt(exact_ok.map(|b| b.to_string())),
            opt(mc_ok.map(|b| b.to_string())),
        );
        rows.push(json!({
            "points": pts,
            "det": det,
            "exact": exact,
            "mc": mc.map(|m| m.value),
            "mc_stderr": mc.map(|m| m.stderr),
            "exact_ok": exact_ok,
            "mc_ok": mc_ok,
        }));
    }
    let json = json!({
        "theta": a.theta,
        "samples": a.samples,
        "seed": seed,
        "n_cut": if exact_feasible { Some(n_cut) } else { None },
        "rows": rows,
        "pass": pass,
    });
    Ok(Report { json, csv: Some(csv), default_format: Format::Json, pass })
}

fn limit_report(r: &LimitReport, pass: bool) -> Result<Report, Failure> {
    let mut csv = String::from("scale,error\n");
    for (s, e) in r.parameter_grid.iter().zip(&r.errors) {
        let _ = writeln!(csv, "{s:e},{e:e}");
    }
    let mut json = to_json(r)?;
    json["pass"] = json!(pass);
    Ok(Report { json, csv: Some(csv), default_format: Format::Json, pass })
}

pub fn limits_degenerate(a: &DegenerateArgs) -> Result<Report, Failure> {
    let r = check_z_degeneration(a.theta, &a.s)?;
    let (target, slack) = DEGENERATION_SLOPE;
    let slope_ok = a.s.len() < 3 || r.rate_estimate.is_some_and(|s| (s - target).abs() <= slack);
    let pass = r.passes() && slope_ok;
    limit_report(&r, pass)
}

pub fn limits_xi(a: &XiArgs) -> Result<Report, Failure> {
    let base = z_params(&a.z, (0.3, 0.4, 0.5))?;
    let r = check_xi_limit(base, &a.xi_grid, &a.u)?;
    let pass = r.passes();
    limit_report(&r, pass)
}

pub fn limits_f2w(a: &F2wArgs) -> Result<Report, Failure> {
    let r = check_f_to_w(a.a, a.b, a.y, &a.x, a.flip_kappa)?;
    let pass = r.passes();
    limit_report(&r, pass)
}

pub fn sample(a: &SampleArgs, seed: u64) -> Result<Report, Failure> {
    let mut rows = Vec::with_capacity(a.n);
    let mut csv = String::from("index,n,lambda,config2x\n");
    for i in 0..a.n {
        let s = sample_poissonized(a.theta, &mut stream(seed, i as u64))?;
        let parts = s.lambda.parts().to_vec();
        let config: Vec<i64> = s.config.points().iter().map(|x| x.doubled()).collect();
        let join = |v: &[String]| v.join(" ");
        let _ = writeln!(
            csv,
            "{i},{},{},{}",
            s.n,
            join(&parts.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
            join(&config.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
        );
        rows.push(json!({ "n": s.n, "lambda": parts, "config2x": config }));
    }
    let json = json!({ "theta": a.theta, "seed": seed, "samples": rows });
    Ok(Report { json, csv: Some(csv), default_format: Format::Json, pass: true })
}
