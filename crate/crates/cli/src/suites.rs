use serde::Serialize;
use translative::epigraph::{epi_direction, monotone_transfer_check, restriction_check};
use translative::props::{
    check_agreement, check_convex, check_monotone, check_pos_homog, check_sublevel_uniform,
    check_subadditive, check_translative, CheckReport, ConeSpec, FunctionalHandle, Sampler,
};

use crate::problem::{Problem, Target};
use crate::CliError;

pub const SUITES: [&str; 8] = [
    "translative",
    "sublevel",
    "monotone",
    "convex",
    "homog",
    "subadd",
    "oracle_equiv",
    "epi_identity",
];

const BOX: f64 = 10.0;
const SCALES: u32 = 6;
const CONVEX_WEIGHTS: [f64; 3] = [0.25, 0.5, 0.75];
const HOMOG_FACTORS: [f64; 3] = [0.5, 2.0, 3.0];
const MONOTONE_BASE: usize = 100;

#[derive(Debug, Serialize)]
pub struct Skipped {
    pub suite: &'static str,
    pub reason: String,
}

#[derive(Debug, Serialize)]
pub struct CheckOutput {
    pub suite: String,
    pub seed: u64,
    pub method: &'static str,
    pub reports: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<Skipped>,
    pub pass: bool,
}

enum Outcome {
    Ran(Vec<CheckReport>),
    Skip(String),
}

struct Context<'a> {
    problem: &'a Problem,
    phi: FunctionalHandle,
    seed: u64,
    tol: f64,
}

impl Context<'_> {
    fn sampler(&self, suite: usize) -> Sampler {
        Sampler::new(self.seed.wrapping_add(suite as u64))
    }

    /// Half uniform on the box, half concentrated near the origin.
    fn points(&self, sampler: &mut Sampler, dim: usize) -> Vec<Vec<f64>> {
        let n = self.problem.options.samples;
        let mut ys = sampler.box_points(dim, n / 2, BOX);
        ys.extend(sampler.multiscale_points(dim, n - n / 2, BOX, SCALES));
        ys
    }
}

/// Runs one suite, or every suite expected to hold for the problem when
/// `suite` is `"all"`.
pub fn check(problem: &Problem, suite: &str, seed: u64) -> Result<CheckOutput, CliError> {
    let run_all = suite == "all";
    let names: Vec<&'static str> = if run_all {
        SUITES.to_vec()
    } else {
        let name = SUITES
            .iter()
            .copied()
            .find(|s| *s == suite)
            .ok_or_else(|| CliError::UnknownSuite(suite.to_string()))?;
        vec![name]
    };
    let approximate = problem.is_approximate();
    let ctx = Context {
        problem,
        phi: problem.handle()?,
        seed,
        tol: if approximate { 4.0 * problem.options.tol } else { problem.options.tol },
    };
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for name in names {
        let index = SUITES.iter().position(|s| *s == name).expect("known suite");
        let outcome = if run_all {
            match expected_to_hold(problem, name) {
                Some(reason) => Outcome::Skip(reason),
                None => run_suite(&ctx, name, index)?,
            }
        } else {
            run_suite(&ctx, name, index)?
        };
        match outcome {
            Outcome::Ran(r) => reports.extend(r),
            Outcome::Skip(reason) if run_all => skipped.push(Skipped { suite: name, reason }),
            Outcome::Skip(reason) => return Err(CliError::NotApplicable(format!("{name}: {reason}"))),
        }
    }
    let pass = reports.iter().all(CheckReport::passed);
    Ok(CheckOutput {
        suite: suite.to_string(),
        seed,
        method: problem.method(),
        reports,
        skipped,
        pass,
    })
}

/// `None` when the suite's property is known to hold, else the reason it is
/// left out of `all`.
fn expected_to_hold(problem: &Problem, suite: &str) -> Option<String> {
    let property = match suite {
        "convex" | "homog" | "subadd" => suite,
        _ => return None,
    };
    let known = match &problem.target {
        Target::Polyhedral { system, .. } => match system.algebraic_flags(&problem.k) {
            Ok(flags) => (flags.convex, flags.sublinear, flags.subadditive),
            Err(_) => return Some("no algebraic flags for this direction".into()),
        },
        Target::Function { spec, .. } => {
            let p = spec.known_properties();
            (p.convex, p.positively_homogeneous, p.subadditive)
        }
        Target::Control { .. } => (true, true, true),
        Target::Oracle { .. } => return Some("property unknown for oracle sets".into()),
    };
    let holds = match property {
        "convex" => known.0,
        "homog" => known.1,
        _ => known.2,
    };
    (!holds).then(|| format!("{property} not guaranteed for this problem"))
}

fn run_suite(ctx: &Context<'_>, name: &str, index: usize) -> Result<Outcome, CliError> {
    let problem = ctx.problem;
    let dim = problem.dim();
    let mut sampler = ctx.sampler(index);
    let tol = ctx.tol;
    let phi = &ctx.phi;
    let k = &problem.k;
    let report = match name {
        "translative" | "sublevel" => {
            let ys = ctx.points(&mut sampler, dim);
            let ts = sampler.scalars(5, -5.0, 5.0);
            if name == "translative" {
                check_translative(phi, k, &ys, &ts, tol)?
            } else {
                check_sublevel_uniform(phi, k, &ys, &ts, tol)?
            }
        }
        "monotone" => return monotone(ctx, &mut sampler),
        "convex" => check_convex(phi, &ctx.points(&mut sampler, dim), &CONVEX_WEIGHTS, tol)?,
        "homog" => check_pos_homog(phi, &ctx.points(&mut sampler, dim), &HOMOG_FACTORS, tol)?,
        "subadd" => {
            check_subadditive(phi, &ctx.points(&mut sampler, dim), problem.options.pair_count, tol)?
        }
        "oracle_equiv" => {
            let Target::Polyhedral { system, oracle } = &problem.target else {
                return Ok(Outcome::Skip("needs a polyhedral set".into()));
            };
            let closed = FunctionalHandle::polyhedral(system.clone(), k)?;
            let approx = FunctionalHandle::oracle(oracle.clone(), k.clone(), problem.options.tol);
            let ys = ctx.points(&mut sampler, dim);
            check_agreement(&closed, &approx, &ys, 2.0 * problem.options.tol)?.renamed("oracle_equiv")
        }
        "epi_identity" => {
            let Target::Function { f, oracle, .. } = &problem.target else {
                return Ok(Outcome::Skip("needs a function".into()));
            };
            let approx = FunctionalHandle::oracle(oracle.clone(), epi_direction(f.dim()), problem.options.tol);
            let zs = ctx.points(&mut sampler, dim);
            let identity = check_agreement(phi, &approx, &zs, 2.0 * problem.options.tol)?
                .renamed("epi_identity");
            let ys: Vec<Vec<f64>> = zs.iter().map(|z| z[..dim - 1].to_vec()).collect();
            let restriction = restriction_check(f, &ys, problem.options.tol, true)?;
            return Ok(Outcome::Ran(vec![identity, restriction]));
        }
        other => unreachable!("unknown suite {other}"),
    };
    Ok(Outcome::Ran(vec![report]))
}

/// `B`-monotonicity on a base cloud plus displacements drawn from `B`.
fn monotone(ctx: &Context<'_>, sampler: &mut Sampler) -> Result<Outcome, CliError> {
    let problem = ctx.problem;
    let pairs = problem.options.pair_count;
    if let Target::Function { f, .. } = &problem.target {
        let Some(cone) = &problem.options.cone else {
            return Ok(Outcome::Skip("needs an ordering cone in options.cone".into()));
        };
        let base = sampler.box_points(f.dim(), MONOTONE_BASE, BOX);
        let cloud = sampler.displaced_cloud(&base, cone, 3, 3.0);
        let t = monotone_transfer_check(f, cone, &cloud, pairs, ctx.tol)?;
        let mut phi_side = t.phi_side;
        phi_side.notes.push(format!("transfer_agree={}", t.agree));
        return Ok(Outcome::Ran(vec![t.f_side, phi_side]));
    }
    let cone = match (&problem.options.cone, &problem.target) {
        (Some(c), _) => c.clone(),
        // −0⁺A = {d : Wd ≥ 0}
        (None, Target::Polyhedral { system, .. }) => {
            ConeSpec::halfspaces(system.rows().map(|r| r.iter().map(|x| -x).collect()).collect())?
        }
        (None, _) => return Ok(Outcome::Skip("needs an ordering cone in options.cone".into())),
    };
    let base = sampler.box_points(problem.dim(), MONOTONE_BASE, BOX);
    let cloud = sampler.displaced_cloud(&base, &cone, 3, 3.0);
    Ok(Outcome::Ran(vec![check_monotone(&ctx.phi, &cone, &cloud, pairs, ctx.tol)?]))
}
