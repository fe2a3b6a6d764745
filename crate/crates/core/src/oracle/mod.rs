//! Translative functionals of sets known only through a membership predicate.
//!
//! For a set `A ⊆ ℝ^ℓ` with `A − ℝ₊k ⊆ A` (the recession contract for `k`), the
//! feasible set `{t : y − t·k ∈ A}` is an up-set in `t`, so `φ_{A,k}(y)` can be
//! located by expanding a bracket and bisecting. The same predicate drives the
//! directional closure test `cl_k(A) = {y : y − t·k ∈ A for all t > 0}`.

pub mod fixtures;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::extreal::ExtReal;
use crate::linalg::axpy;
use crate::polyhedral::HalfspaceSystem;

use fixtures::{BoxSet, BoxUnion, HalfspaceMembership, Interval, LexCone};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_T_MAX: f64 = 1e12;
pub const DEFAULT_BRACKET: (f64, f64) = (-1.0, 1.0);
pub const DEFAULT_LAMBDA: f64 = 1.0;
pub const DEFAULT_DEPTH: u32 = 40;

/// Whether `A − ℝ₊k ⊆ A` holds for a queried direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Contract {
    Holds,
    Violated,
    /// Asserted by whoever built the oracle; not checked.
    Declared,
}

/// A deterministic membership predicate over ℝ^ℓ.
pub trait Membership: Send + Sync {
    fn contains(&self, y: &[f64]) -> bool;

    fn dim(&self) -> usize;

    fn contract(&self, _k: &[f64]) -> Contract {
        Contract::Declared
    }

    /// Grid tests along `k` are exact for this set (closed polyhedra).
    fn exact(&self) -> bool {
        false
    }
}

struct FnMembership<F> {
    dim: usize,
    f: F,
}

impl<F> Membership for FnMembership<F>
where
    F: Fn(&[f64]) -> bool + Send + Sync,
{
    fn contains(&self, y: &[f64]) -> bool {
        (self.f)(y)
    }

    fn dim(&self) -> usize {
        self.dim
    }
}

struct Union(Vec<SetOracle>);

impl Membership for Union {
    fn contains(&self, y: &[f64]) -> bool {
        self.0.iter().any(|o| o.member(y))
    }

    fn dim(&self) -> usize {
        self.0[0].dim()
    }

    // A − ℝ₊k ⊆ A for every member carries over to the union
    fn contract(&self, k: &[f64]) -> Contract {
        let parts: Vec<Contract> = self.0.iter().map(|o| o.contract(k)).collect();
        if parts.iter().all(|c| *c == Contract::Holds) {
            Contract::Holds
        } else {
            Contract::Declared
        }
    }
}

struct Translated {
    inner: SetOracle,
    offset: Vec<f64>,
}

impl Membership for Translated {
    fn contains(&self, y: &[f64]) -> bool {
        let shifted: Vec<f64> = y.iter().zip(&self.offset).map(|(a, b)| a - b).collect();
        self.inner.member(&shifted)
    }

    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn contract(&self, k: &[f64]) -> Contract {
        self.inner.contract(k)
    }

    fn exact(&self) -> bool {
        self.inner.is_exact()
    }
}

/// A set given by its membership predicate, with search settings for bisection.
#[derive(Clone)]
pub struct SetOracle {
    member: Arc<dyn Membership>,
    pub bracket: (f64, f64),
    pub t_max: f64,
}

impl fmt::Debug for SetOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SetOracle")
            .field("dim", &self.dim())
            .field("bracket", &self.bracket)
            .field("t_max", &self.t_max)
            .finish()
    }
}

impl SetOracle {
    pub fn new(member: impl Membership + 'static) -> SetOracle {
        SetOracle {
            member: Arc::new(member),
            bracket: DEFAULT_BRACKET,
            t_max: DEFAULT_T_MAX,
        }
    }

    /// Oracle from a closure. The caller vouches for the recession contract.
    pub fn from_fn<F>(dim: usize, f: F) -> SetOracle
    where
        F: Fn(&[f64]) -> bool + Send + Sync + 'static,
    {
        SetOracle::new(FnMembership { dim, f })
    }

    pub fn from_halfspaces(h: HalfspaceSystem) -> SetOracle {
        SetOracle::new(HalfspaceMembership(h))
    }

    pub fn union(members: Vec<SetOracle>) -> Result<SetOracle> {
        let dim = members
            .first()
            .ok_or_else(|| Error::Invalid("union of zero sets".into()))?
            .dim();
        for m in &members {
            check_dim(dim, m.dim())?;
        }
        Ok(SetOracle::new(Union(members)))
    }

    /// The set `A + v`.
    pub fn translated(&self, v: &[f64]) -> Result<SetOracle> {
        check_dim(self.dim(), v.len())?;
        Ok(SetOracle {
            member: Arc::new(Translated {
                inner: self.clone(),
                offset: v.to_vec(),
            }),
            bracket: self.bracket,
            t_max: self.t_max,
        })
    }

    pub fn with_bracket(mut self, lo: f64, hi: f64) -> Result<SetOracle> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Invalid(format!("bracket ({lo}, {hi}) is not increasing")));
        }
        self.bracket = (lo, hi);
        Ok(self)
    }

    pub fn with_t_max(mut self, t_max: f64) -> Result<SetOracle> {
        if !(t_max > 0.0) || !t_max.is_finite() {
            return Err(Error::Invalid(format!("t_max must be positive, got {t_max}")));
        }
        self.t_max = t_max;
        Ok(self)
    }

    pub fn member(&self, y: &[f64]) -> bool {
        self.member.contains(y)
    }

    pub fn dim(&self) -> usize {
        self.member.dim()
    }

    pub fn contract(&self, k: &[f64]) -> Contract {
        self.member.contract(k)
    }

    pub fn is_exact(&self) -> bool {
        self.member.exact()
    }

    fn require_contract(&self, k: &[f64]) -> Result<()> {
        check_dim(self.dim(), k.len())?;
        if self.contract(k) == Contract::Violated {
            return Err(Error::DirectionOutsideContract);
        }
        Ok(())
    }
}

/// Three-valued membership answer for grid-limited tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TriState {
    In,
    Out,
    Undetermined,
}

// Records every feasibility probe and fails as soon as a feasible t is seen
// below an infeasible one.
struct Probe<'a> {
    oracle: &'a SetOracle,
    y: &'a [f64],
    k: &'a [f64],
    max_infeasible: f64,
    min_feasible: f64,
}

impl<'a> Probe<'a> {
    fn new(oracle: &'a SetOracle, y: &'a [f64], k: &'a [f64]) -> Self {
        Probe {
            oracle,
            y,
            k,
            max_infeasible: f64::NEG_INFINITY,
            min_feasible: f64::INFINITY,
        }
    }

    fn feasible(&mut self, t: f64) -> Result<bool> {
        let ok = self.oracle.member(&axpy(self.y, -t, self.k));
        if ok {
            self.min_feasible = self.min_feasible.min(t);
        } else {
            self.max_infeasible = self.max_infeasible.max(t);
        }
        if self.min_feasible < self.max_infeasible {
            return Err(Error::ContractViolation {
                feasible: self.min_feasible,
                infeasible: self.max_infeasible,
            });
        }
        Ok(ok)
    }
}

/// `φ_{A,k}(y) = inf{t : y − t·k ∈ A}` to absolute accuracy `tol`.
///
/// The bracket grows by doubling until it holds an infeasible and a feasible
/// `t`, then bisection shrinks it to width `tol` and the midpoint is returned.
/// No feasible `t ≤ t_max` gives `+∞`; feasibility at `−t_max` gives `−∞`.
pub fn phi_oracle(oracle: &SetOracle, k: &[f64], y: &[f64], tol: f64) -> Result<ExtReal> {
    if !(tol > 0.0) {
        return Err(Error::NonPositiveTolerance(tol));
    }
    oracle.require_contract(k)?;
    check_dim(oracle.dim(), y.len())?;

    let t_max = oracle.t_max;
    let (mut lo, mut hi) = oracle.bracket;
    let mut probe = Probe::new(oracle, y, k);

    let lo_feasible = probe.feasible(lo)?;
    probe.feasible(lo + 0.5 * (hi - lo))?;
    let hi_feasible = probe.feasible(hi)?;

    let mut width = hi - lo;
    if !hi_feasible {
        loop {
            lo = hi;
            hi += width;
            width *= 2.0;
            if hi >= t_max {
                hi = t_max;
                if !probe.feasible(t_max)? {
                    return Ok(ExtReal::PosInf);
                }
                break;
            }
            if probe.feasible(hi)? {
                break;
            }
        }
    } else if lo_feasible {
        loop {
            hi = lo;
            lo -= width;
            width *= 2.0;
            if lo <= -t_max {
                lo = -t_max;
                if probe.feasible(-t_max)? {
                    return Ok(ExtReal::NegInf);
                }
                break;
            }
            if !probe.feasible(lo)? {
                break;
            }
        }
    }

    // lo infeasible, hi feasible
    while hi - lo > tol {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        if probe.feasible(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(ExtReal::from(lo + 0.5 * (hi - lo)))
}

/// Grid test of `y ∈ cl_k(A)`: with the recession contract,
/// `cl_k(A) = {y : y − t·k ∈ A for all t > 0}`, probed at `t = Λ·2^{−j}`,
/// `j = 0..=depth`. `y` itself need not be in `A`.
///
/// Never returns `Undetermined`; for non-polyhedral oracles an `In` answer is
/// only as fine as the grid (see [`SetOracle::is_exact`]).
pub fn dir_closure_member(
    oracle: &SetOracle,
    k: &[f64],
    y: &[f64],
    lambda: f64,
    depth: u32,
) -> Result<TriState> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::Invalid(format!("grid scale must be positive, got {lambda}")));
    }
    oracle.require_contract(k)?;
    check_dim(oracle.dim(), y.len())?;
    let mut probe = Probe::new(oracle, y, k);
    let mut all_in = true;
    for j in 0..=depth {
        let t = lambda * 0.5f64.powi(j as i32);
        if !probe.feasible(t)? {
            all_in = false;
        }
    }
    Ok(if all_in { TriState::In } else { TriState::Out })
}

/// Membership in `Ã = sublev φ(0)`, the `k`-closure of `A − ℝ₊k`. Points with
/// `|φ(y)| < tol` are `Undetermined`.
pub fn tilde_member(oracle: &SetOracle, k: &[f64], y: &[f64], tol: f64) -> Result<TriState> {
    let phi = phi_oracle(oracle, k, y, tol)?;
    Ok(if phi <= ExtReal::finite(-tol) {
        TriState::In
    } else if phi >= ExtReal::finite(tol) {
        TriState::Out
    } else {
        TriState::Undetermined
    })
}

/// Sampled test of `u ∈ 0⁺A`: `p + s·u ∈ A` for every base point and step.
pub fn is_recession_dir(
    oracle: &SetOracle,
    u: &[f64],
    base_points: &[Vec<f64>],
    steps: &[f64],
) -> Result<bool> {
    check_dim(oracle.dim(), u.len())?;
    for (index, p) in base_points.iter().enumerate() {
        check_dim(oracle.dim(), p.len())?;
        if !oracle.member(p) {
            return Err(Error::BasePointNotInSet { index });
        }
    }
    Ok(base_points
        .iter()
        .all(|p| steps.iter().all(|&s| oracle.member(&axpy(p, s, u)))))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SublevelPoint {
    pub point: Vec<f64>,
    pub phi: ExtReal,
    /// `φ(y) ≤ t`, `Undetermined` within `2·tol` of `t`.
    pub in_sublevel: TriState,
    /// `y − t·k ∈ cl_k(A)`.
    pub in_shifted_closure: TriState,
    /// `None` when the sublevel side is undetermined.
    pub agree: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SublevelReport {
    pub t: f64,
    pub points: Vec<SublevelPoint>,
    pub agreements: usize,
    pub disagreements: usize,
    pub undetermined: usize,
}

/// Grid settings for [`dir_closure_member`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosureGrid {
    pub lambda: f64,
    pub depth: u32,
}

impl Default for ClosureGrid {
    fn default() -> Self {
        ClosureGrid {
            lambda: DEFAULT_LAMBDA,
            depth: DEFAULT_DEPTH,
        }
    }
}

/// Compares `sublev φ(t)` with `cl_k(A) + t·k` pointwise on `grid`.
pub fn sublevel_probe(
    oracle: &SetOracle,
    k: &[f64],
    t: f64,
    grid: &[Vec<f64>],
    tol: f64,
    closure: ClosureGrid,
) -> Result<SublevelReport> {
    let mut report = SublevelReport {
        t,
        points: Vec::with_capacity(grid.len()),
        agreements: 0,
        disagreements: 0,
        undetermined: 0,
    };
    for y in grid {
        let phi = phi_oracle(oracle, k, y, tol)?;
        let in_sublevel = match phi {
            ExtReal::Finite(v) if (v - t).abs() <= 2.0 * tol => TriState::Undetermined,
            v if v <= ExtReal::finite(t) => TriState::In,
            _ => TriState::Out,
        };
        let base = axpy(y, -t, k);
        let in_shifted_closure = dir_closure_member(oracle, k, &base, closure.lambda, closure.depth)?;
        let agree = match in_sublevel {
            TriState::Undetermined => None,
            s => Some(s == in_shifted_closure),
        };
        match agree {
            None => report.undetermined += 1,
            Some(true) => report.agreements += 1,
            Some(false) => report.disagreements += 1,
        }
        report.points.push(SublevelPoint {
            point: y.clone(),
            phi,
            in_sublevel,
            in_shifted_closure,
            agree,
        });
    }
    Ok(report)
}

/// JSON description of a built-in set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OracleSpec {
    Halfspaces {
        #[serde(rename = "W")]
        w: Vec<Vec<f64>>,
        b: Vec<f64>,
    },
    /// `b − ℝ^ℓ₊`
    Box { b: Vec<f64> },
    /// `(0,2] × [0,2] − ℝ₊(−1,−1)`; `with_corner` adds the point `(0,2)` first.
    HalfOpenBoxExample {
        #[serde(default)]
        with_corner: bool,
    },
    LexCone,
    /// Product of intervals, optionally replaced by its hull along `hull_direction`.
    IntervalBox {
        intervals: Vec<Interval>,
        #[serde(default)]
        hull_direction: Option<Vec<f64>>,
    },
    Union { members: Vec<OracleSpec> },
}

impl OracleSpec {
    /// The polyhedral representation, when the spec is one.
    pub fn halfspace_system(&self) -> Result<Option<HalfspaceSystem>> {
        match self {
            OracleSpec::Halfspaces { w, b } => Ok(Some(HalfspaceSystem::new(w.clone(), b.clone())?)),
            OracleSpec::Box { b } => Ok(Some(HalfspaceSystem::boxed(b.clone())?)),
            _ => Ok(None),
        }
    }

    pub fn build(&self) -> Result<SetOracle> {
        if let Some(h) = self.halfspace_system()? {
            return Ok(SetOracle::from_halfspaces(h));
        }
        match self {
            OracleSpec::HalfOpenBoxExample { with_corner } => {
                Ok(SetOracle::new(fixtures::half_open_box_example(*with_corner)))
            }
            OracleSpec::LexCone => Ok(SetOracle::new(LexCone)),
            OracleSpec::IntervalBox {
                intervals,
                hull_direction,
            } => Ok(SetOracle::new(BoxUnion::new(
                vec![BoxSet::new(intervals.clone())?],
                hull_direction.clone(),
            )?)),
            OracleSpec::Union { members } => {
                SetOracle::union(members.iter().map(OracleSpec::build).collect::<Result<_>>()?)
            }
            OracleSpec::Halfspaces { .. } | OracleSpec::Box { .. } => unreachable!(),
        }
    }
}
