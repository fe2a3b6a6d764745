use serde::Serialize;
use translative::oracle::{phi_oracle, sublevel_probe, ClosureGrid, SublevelReport};
use translative::props::FunctionalHandle;
use translative::{ExtReal, HalfspaceSystem};

use crate::problem::{Problem, Target};
use crate::CliError;

#[derive(Debug, Serialize)]
pub struct EvalOutput {
    pub method: &'static str,
    pub values: Vec<ExtReal>,
}

pub fn eval(problem: &Problem) -> Result<EvalOutput, CliError> {
    let phi = problem.handle()?;
    Ok(EvalOutput {
        method: problem.method(),
        values: evaluate_all(&phi, &problem.queries)?,
    })
}

// Query order is preserved regardless of how the batch is split.
fn evaluate_all(phi: &FunctionalHandle, ys: &[Vec<f64>]) -> Result<Vec<ExtReal>, CliError> {
    const CHUNK: usize = 256;
    if ys.len() <= CHUNK {
        return Ok(ys.iter().map(|y| phi.eval(y)).collect::<translative::Result<_>>()?);
    }
    let parts: Vec<translative::Result<Vec<ExtReal>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = ys
            .chunks(CHUNK)
            .map(|chunk| scope.spawn(move || chunk.iter().map(|y| phi.eval(y)).collect()))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("evaluation thread panicked"))
            .collect()
    });
    let mut out = Vec::with_capacity(ys.len());
    for part in parts {
        out.extend(part?);
    }
    Ok(out)
}

#[derive(Debug, Serialize)]
pub struct DomainOutput {
    pub method: &'static str,
    pub in_domain: Vec<bool>,
}

/// `φ(y) < +∞` per query.
pub fn domain(problem: &Problem) -> Result<DomainOutput, CliError> {
    let in_domain = match &problem.target {
        Target::Polyhedral { system, .. } if problem.method() == "closed_form" => problem
            .queries
            .iter()
            .map(|y| system.domain_contains(&problem.k, y))
            .collect::<translative::Result<_>>()?,
        _ => evaluate_all(&problem.handle()?, &problem.queries)?
            .into_iter()
            .map(|v| v < ExtReal::PosInf)
            .collect(),
    };
    Ok(DomainOutput {
        method: problem.method(),
        in_domain,
    })
}

#[derive(Debug, Serialize)]
pub struct ShiftOutput {
    pub kind: &'static str,
    pub system: HalfspaceSystem,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y0: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    /// `φ` of the shifted set at each query.
    pub values: Vec<ExtReal>,
}

/// Exactly one of the options `epsilon`, `y0` or `s` selects the shift.
pub fn shift(problem: &Problem) -> Result<ShiftOutput, CliError> {
    let Target::Polyhedral { system, .. } = &problem.target else {
        return Err(CliError::NotApplicable("shift needs a polyhedral set".into()));
    };
    let o = &problem.options;
    let chosen = [o.epsilon.is_some(), o.y0.is_some(), o.s.is_some()];
    if chosen.iter().filter(|&&c| c).count() != 1 {
        return Err(CliError::Parse(
            "shift needs exactly one of the options \"epsilon\", \"y0\" or \"s\"".into(),
        ));
    }
    let (kind, shifted, y0) = if let Some(eps) = o.epsilon {
        ("level", system.shift_level(&problem.k, eps)?, None)
    } else if let Some(y0) = &o.y0 {
        ("point", system.shift_point(y0)?, Some(y0.clone()))
    } else {
        let s = o.s.as_ref().expect("checked above");
        let y0 = system.solve_shift(s)?;
        ("rhs", system.shift_point(&y0)?, Some(y0))
    };
    let values = shifted.phi_batch(&problem.k, &problem.queries)?;
    Ok(ShiftOutput {
        kind,
        system: shifted,
        y0,
        epsilon: o.epsilon,
        values,
    })
}

pub fn sublevel(problem: &Problem) -> Result<SublevelReport, CliError> {
    let oracle = problem
        .oracle()
        .ok_or_else(|| CliError::NotApplicable("sublevel needs a set or a function".into()))?;
    let closure = ClosureGrid {
        lambda: problem.options.lambda,
        depth: problem.options.depth,
    };
    Ok(sublevel_probe(
        oracle,
        &problem.k,
        problem.options.t,
        &problem.grid()?,
        problem.options.tol,
        closure,
    )?)
}

#[derive(Debug, Serialize)]
pub struct ShiftedVariant {
    pub epsilon: f64,
    pub values: Vec<ExtReal>,
    pub argmin_set: Vec<usize>,
    pub identity_holds: bool,
}

#[derive(Debug, Serialize)]
pub struct ScalarizationResult {
    pub method: &'static str,
    pub values: Vec<ExtReal>,
    pub argmin_set: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub shifted_variants: Vec<ShiftedVariant>,
    pub argmin_invariant: bool,
}

impl ScalarizationResult {
    pub fn consistent(&self) -> bool {
        self.argmin_invariant && self.shifted_variants.iter().all(|v| v.identity_holds)
    }
}

/// Indices whose value lies within `tol` of the minimum.
pub fn argmin(values: &[ExtReal], tol: f64) -> Vec<usize> {
    let Some(&min) = values.iter().min() else {
        return Vec::new();
    };
    values
        .iter()
        .enumerate()
        .filter(|(_, &v)| match (v, min) {
            (ExtReal::Finite(a), ExtReal::Finite(m)) => a - m <= tol,
            _ => v == min,
        })
        .map(|(i, _)| i)
        .collect()
}

fn shift_tolerance(base: ExtReal, eps: f64, approximate: bool, tol: f64) -> f64 {
    if approximate {
        2.0 * tol
    } else {
        let scale = 1.0f64.max(base.as_finite().unwrap_or(0.0).abs()).max(eps.abs());
        4.0 * f64::EPSILON * scale
    }
}

/// `φ` over the query cloud, its argmin set, and for each `ε` of the sweep the
/// values of the level-shifted problem, which must equal `φ − ε`.
pub fn scalarize(problem: &Problem, sweep: &[f64]) -> Result<ScalarizationResult, CliError> {
    let tol = problem.options.tol;
    let values = evaluate_all(&problem.handle()?, &problem.queries)?;
    let argmin_set = argmin(&values, tol);
    let mut variants = Vec::with_capacity(sweep.len());
    for &eps in sweep {
        let (shifted, approximate): (Vec<ExtReal>, bool) = match &problem.target {
            Target::Polyhedral { system, .. } if !problem.is_approximate() => (
                system.shift_level(&problem.k, eps)?.phi_batch(&problem.k, &problem.queries)?,
                false,
            ),
            Target::Control { .. } => {
                return Err(CliError::NotApplicable(
                    "an epsilon sweep needs a set or a function".into(),
                ))
            }
            _ => {
                // A + εk has functional φ − ε
                let oracle = problem
                    .oracle()
                    .expect("non-control targets have an oracle")
                    .translated(&problem.k.iter().map(|ki| eps * ki).collect::<Vec<_>>())?;
                let values = problem
                    .queries
                    .iter()
                    .map(|y| phi_oracle(&oracle, &problem.k, y, tol))
                    .collect::<translative::Result<_>>()?;
                (values, true)
            }
        };
        let identity_holds = values.iter().zip(&shifted).all(|(&base, &got)| {
            let want = base.sub_finite(eps);
            got.approx_eq(want, shift_tolerance(base, eps, approximate, tol))
        });
        variants.push(ShiftedVariant {
            epsilon: eps,
            argmin_set: argmin(&shifted, tol),
            values: shifted,
            identity_holds,
        });
    }
    let argmin_invariant = variants.iter().all(|v| v.argmin_set == argmin_set);
    Ok(ScalarizationResult {
        method: problem.method(),
        values,
        argmin_set,
        shifted_variants: variants,
        argmin_invariant,
    })
}
