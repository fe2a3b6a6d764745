use serde::Deserialize;
use translative::epigraph::{epi_direction, epi_oracle, extend, ExtendedFunction, FunctionSpec};
use translative::oracle::{OracleSpec, DEFAULT_DEPTH, DEFAULT_LAMBDA, DEFAULT_TOL, DEFAULT_T_MAX};
use translative::props::{ConeSpec, FunctionalHandle, DEFAULT_COUNT, DEFAULT_SEED};
use translative::{HalfspaceSystem, SetOracle};

use crate::CliError;

/// A tensor grid with `steps` points per axis from `lo` to `hi` inclusive.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub steps: usize,
}

impl GridSpec {
    pub fn points(&self) -> Result<Vec<Vec<f64>>, CliError> {
        if self.lo.len() != self.hi.len() {
            return Err(CliError::Parse("grid lo and hi differ in length".into()));
        }
        if self.steps == 0 {
            return Ok(Vec::new());
        }
        let axis = |i: usize| -> Vec<f64> {
            if self.steps == 1 {
                return vec![self.lo[i]];
            }
            let n = (self.steps - 1) as f64;
            (0..self.steps)
                .map(|j| self.lo[i] + (self.hi[i] - self.lo[i]) * j as f64 / n)
                .collect()
        };
        let mut out: Vec<Vec<f64>> = vec![Vec::new()];
        for i in 0..self.lo.len() {
            let values = axis(i);
            out = out
                .into_iter()
                .flat_map(|p| {
                    values.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        Ok(out)
    }
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}
fn default_lambda() -> f64 {
    DEFAULT_LAMBDA
}
fn default_depth() -> u32 {
    DEFAULT_DEPTH
}
fn default_t_max() -> f64 {
    DEFAULT_T_MAX
}
fn default_samples() -> usize {
    DEFAULT_COUNT
}
fn default_pairs() -> usize {
    5000
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default = "default_lambda")]
    pub lambda: f64,
    #[serde(default = "default_depth")]
    pub depth: u32,
    #[serde(default = "default_t_max")]
    pub t_max: f64,
    /// Level for `sublevel`.
    #[serde(default)]
    pub t: f64,
    #[serde(default)]
    pub epsilon_sweep: Vec<f64>,
    #[serde(default)]
    pub grid: Option<GridSpec>,
    /// Sample count per check suite.
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_pairs")]
    pub pair_count: usize,
    /// Ordering cone for the `monotone` suite.
    #[serde(default)]
    pub cone: Option<ConeSpec>,
    /// `"bisection"` evaluates polyhedral sets through their membership oracle.
    #[serde(default)]
    pub method: Option<String>,
    /// Level shift for `shift`.
    #[serde(default)]
    pub epsilon: Option<f64>,
    /// Point shift for `shift`.
    #[serde(default)]
    pub y0: Option<Vec<f64>>,
    /// Right-hand-side shift for `shift`, solved for the matching point shift.
    #[serde(default)]
    pub s: Option<Vec<f64>>,
}

impl Default for Options {
    fn default() -> Self {
        serde_json::from_str("{}").expect("all option fields have defaults")
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ControlSpec {
    EuclideanNorm { dim: usize },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    #[serde(default)]
    set: Option<OracleSpec>,
    #[serde(default)]
    function: Option<FunctionSpec>,
    #[serde(default)]
    control: Option<ControlSpec>,
    #[serde(default)]
    k: Option<Vec<f64>>,
    #[serde(default)]
    queries: Vec<Vec<f64>>,
    #[serde(default)]
    options: Options,
}

/// What the problem evaluates.
#[derive(Debug, Clone)]
pub enum Target {
    Polyhedral {
        system: HalfspaceSystem,
        oracle: SetOracle,
    },
    Oracle {
        oracle: SetOracle,
    },
    /// The extension `(y, s) ↦ f(y) − s`.
    Function {
        f: ExtendedFunction,
        spec: FunctionSpec,
        oracle: SetOracle,
    },
    Control {
        dim: usize,
    },
}

#[derive(Debug, Clone)]
pub struct Problem {
    pub target: Target,
    pub k: Vec<f64>,
    pub queries: Vec<Vec<f64>>,
    pub options: Options,
}

impl Problem {
    pub fn from_json(text: &str) -> Result<Problem, CliError> {
        let raw: RawProblem =
            serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        let given = [raw.set.is_some(), raw.function.is_some(), raw.control.is_some()];
        if given.iter().filter(|&&g| g).count() != 1 {
            return Err(CliError::Parse(
                "exactly one of \"set\", \"function\" or \"control\" is required".into(),
            ));
        }
        let options = raw.options;
        if !(options.tol > 0.0) {
            return Err(translative::Error::NonPositiveTolerance(options.tol).into());
        }
        let (target, k) = if let Some(spec) = raw.set {
            let oracle = spec.build()?.with_t_max(options.t_max)?;
            let k = raw
                .k
                .ok_or_else(|| CliError::Parse("set problems need a direction \"k\"".into()))?;
            let target = match spec.halfspace_system()? {
                Some(system) => Target::Polyhedral { system, oracle },
                None => Target::Oracle { oracle },
            };
            (target, k)
        } else if let Some(spec) = raw.function {
            let f = ExtendedFunction::from_spec(spec.clone())?;
            let k = epi_direction(f.dim());
            if let Some(given) = raw.k {
                if given != k {
                    return Err(CliError::Parse(format!(
                        "function problems use k = {k:?}, got {given:?}"
                    )));
                }
            }
            let oracle = epi_oracle(&f).with_t_max(options.t_max)?;
            (Target::Function { f, spec, oracle }, k)
        } else {
            let ControlSpec::EuclideanNorm { dim } = raw.control.expect("checked above");
            let k = raw
                .k
                .ok_or_else(|| CliError::Parse("control problems need a direction \"k\"".into()))?;
            (Target::Control { dim }, k)
        };
        let problem = Problem {
            target,
            k,
            queries: raw.queries,
            options,
        };
        problem.check_dims()?;
        Ok(problem)
    }

    fn check_dims(&self) -> Result<(), CliError> {
        let dim = self.dim();
        let mismatch = |found: usize| translative::Error::DimensionMismatch {
            expected: dim,
            found,
        };
        if self.k.len() != dim {
            return Err(mismatch(self.k.len()).into());
        }
        if let Some(q) = self.queries.iter().find(|q| q.len() != dim) {
            return Err(mismatch(q.len()).into());
        }
        if let Some(g) = &self.options.grid {
            if g.lo.len() != dim {
                return Err(mismatch(g.lo.len()).into());
            }
        }
        Ok(())
    }

    /// Dimension of the space `φ` lives on.
    pub fn dim(&self) -> usize {
        match &self.target {
            Target::Polyhedral { system, .. } => system.dim(),
            Target::Oracle { oracle } => oracle.dim(),
            Target::Function { f, .. } => f.dim() + 1,
            Target::Control { dim } => *dim,
        }
    }

    pub fn seed(&self, flag: Option<u64>) -> u64 {
        flag.or(self.options.seed).unwrap_or(DEFAULT_SEED)
    }

    fn force_bisection(&self) -> bool {
        self.options.method.as_deref() == Some("bisection")
    }

    pub fn method(&self) -> &'static str {
        match &self.target {
            Target::Polyhedral { .. } if self.force_bisection() => "bisection",
            Target::Polyhedral { .. } => "closed_form",
            Target::Oracle { .. } => "bisection",
            Target::Function { .. } => "epigraph_identity",
            Target::Control { .. } => "direct",
        }
    }

    pub fn oracle(&self) -> Option<&SetOracle> {
        match &self.target {
            Target::Polyhedral { oracle, .. }
            | Target::Oracle { oracle }
            | Target::Function { oracle, .. } => Some(oracle),
            Target::Control { .. } => None,
        }
    }

    /// `φ` as evaluated by [`Problem::method`].
    pub fn handle(&self) -> Result<FunctionalHandle, CliError> {
        let tol = self.options.tol;
        Ok(match &self.target {
            Target::Polyhedral { oracle, .. } if self.force_bisection() => {
                FunctionalHandle::oracle(oracle.clone(), self.k.clone(), tol)
            }
            Target::Polyhedral { system, .. } => {
                FunctionalHandle::polyhedral(system.clone(), &self.k)?
            }
            Target::Oracle { oracle } => FunctionalHandle::oracle(oracle.clone(), self.k.clone(), tol),
            Target::Function { f, .. } => extend(f),
            Target::Control { dim } => FunctionalHandle::euclidean_norm(*dim),
        })
    }

    /// Whether values carry bisection error.
    pub fn is_approximate(&self) -> bool {
        self.method() == "bisection"
    }

    pub fn grid(&self) -> Result<Vec<Vec<f64>>, CliError> {
        match &self.options.grid {
            Some(g) => g.points(),
            None if !self.queries.is_empty() => Ok(self.queries.clone()),
            None => GridSpec {
                lo: vec![-5.0; self.dim()],
                hi: vec![5.0; self.dim()],
                steps: 21,
            }
            .points(),
        }
    }
}
