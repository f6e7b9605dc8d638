//! Acceptance criteria as fixed bundles of the other subcommands.

use std::time::Instant;

use serde_json::json;

use crate::commands;
use crate::config::Format;
use crate::{
    CombinatoricsArgs, DegenerateArgs, DrhpFamily, DrhpSolveArgs, DrhpVerifyArgs, F2wArgs, Failure, Report, ResolventArgs,
    ResolventFamily, RhoCompareArgs, XiArgs, ZArgs,
};

/// The nine Monte Carlo queries: six single points and three pairs.
const MC_QUERIES: &str = "-5;-3;-1;1;3;5;1,3;-1,1;-3,3";

fn no_z() -> ZArgs {
    ZArgs { z: None, z_im: None, z_prime: None, xi: None }
}

fn bessel_resolvent(theta: f64) -> ResolventArgs {
    ResolventArgs { family: ResolventFamily::Bessel, theta, nmax: 40, tol: 1e-8, z: no_z() }
}

fn hypergeometric_resolvent(z: ZArgs) -> ResolventArgs {
    ResolventArgs { family: ResolventFamily::Hypergeometric, theta: 1.0, nmax: 30, tol: 1e-8, z }
}

fn drhp_verify(family: DrhpFamily) -> DrhpVerifyArgs {
    DrhpVerifyArgs { family, theta: 1.0, z: no_z() }
}

type Step = (String, Report);

fn steps(criterion: u8, seed: u64) -> Result<Vec<Step>, Failure> {
    let mut out = Vec::new();
    let mut push = |label: &str, r: Report| out.push((label.to_string(), r));
    match criterion {
        1 => {
            for t in [0.25, 1.0, 4.0] {
                push(&format!("verify resolvent --theta {t} --nmax 40"), commands::verify_resolvent(&bessel_resolvent(t))?);
            }
        }
        2 => {
            let comp = ZArgs { z: Some(0.4), z_im: None, z_prime: Some(0.6), xi: Some(0.3) };
            let princ = ZArgs { z: Some(1.0), z_im: Some(2.0), z_prime: None, xi: Some(0.5) };
            push("verify resolvent --family hypergeometric --z 0.4 --z-prime 0.6 --xi 0.3", commands::verify_resolvent(&hypergeometric_resolvent(comp))?);
            push("verify resolvent --family hypergeometric --z 1 --z-im 2 --xi 0.5", commands::verify_resolvent(&hypergeometric_resolvent(princ))?);
        }
        3 => {
            for t in [0.5, 1.0] {
                let a = RhoCompareArgs { theta: t, queries: None, samples: 0 };
                push(&format!("rho compare --theta {t} --samples 0"), commands::rho_compare(&a, seed)?);
            }
        }
        4 => {
            let a = RhoCompareArgs { theta: 4.0, queries: Some(MC_QUERIES.into()), samples: 200_000 };
            push(&format!("rho compare --theta 4 --queries \"{MC_QUERIES}\""), commands::rho_compare(&a, seed)?);
        }
        5 => {
            push("drhp verify --family bessel", commands::drhp_verify(&drhp_verify(DrhpFamily::Bessel))?);
            push("drhp verify --family hypergeometric", commands::drhp_verify(&drhp_verify(DrhpFamily::Hypergeometric))?);
        }
        6 => push("drhp solve", commands::drhp_solve(&DrhpSolveArgs { theta: 1.0, nmax: 30, tol: 1e-8 })?),
        7 => push("drhp verify --family bessel", commands::drhp_verify(&drhp_verify(DrhpFamily::Bessel))?),
        8 => {
            push("limits degenerate", commands::limits_degenerate(&DegenerateArgs { theta: 1.0, s: vec![1e2, 1e3, 1e4] })?);
            push("limits xi", commands::limits_xi(&XiArgs { z: no_z(), xi_grid: vec![0.9, 0.99], u: vec![3.3, 7.7] })?);
            let f2w = F2wArgs { a: 0.3, b: 0.7, y: 2.0, x: vec![50.0, 200.0, 800.0], flip_kappa: false };
            push("limits f2w", commands::limits_f2w(&f2w)?);
        }
        9 => {
            let a = CombinatoricsArgs { burnside_max: 14, frobenius_max: 12, permutations: 10_000, length: 50 };
            push("verify combinatorics", commands::verify_combinatorics(&a, seed)?);
        }
        n => return Err(Failure::Usage(format!("criterion must be 1..=9, got {n}"))),
    }
    Ok(out)
}

/// Wall-clock budget in seconds, where the criterion has one.
fn runtime_limit(criterion: u8) -> Option<f64> {
    match criterion {
        1 => Some(5.0),
        3 => Some(60.0),
        4 => Some(30.0),
        _ => None,
    }
}

pub fn accept(criterion: u8, seed: u64) -> Result<Report, Failure> {
    let start = Instant::now();
    let steps = steps(criterion, seed)?;
    let elapsed = start.elapsed().as_secs_f64();
    let limit = runtime_limit(criterion);
    let in_time = limit.is_none_or(|l| elapsed < l);
    let pass = in_time && steps.iter().all(|(_, r)| r.pass);
    let mut csv = String::from("criterion,step,pass\n");
    for (label, r) in &steps {
        csv.push_str(&format!("{criterion},\"{}\",{}\n", label.replace('"', "\"\""), r.pass));
    }
    let json = json!({
        "criterion": criterion,
        "seed": seed,
        "elapsed_s": elapsed,
        "runtime_limit_s": limit,
        "steps": steps.iter().map(|(label, r)| json!({ "command": label, "pass": r.pass, "report": r.json })).collect::<Vec<_>>(),
        "pass": pass,
    });
    Ok(Report { json, csv: Some(csv), default_format: Format::Json, pass })
}
