//! The translative extension of an extended-real function.
//!
//! For `f : ℝⁿ → ℝ ∪ {±∞}`, take `A = epi f ⊆ ℝⁿ⁺¹` and `k = (0, …, 0, −1)`.
//! Then `φ_{A,k}((y, s)) = f(y) − s`, so `f` is the restriction of a
//! translative functional to the hyperplane `s = 0`. This module builds that
//! extension, the epigraph membership oracle, and checks that move properties
//! between `f` and its extension.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::extreal::ExtReal;
use crate::linalg::{axpy, dot};
use crate::oracle::{phi_oracle, Contract, Membership, SetOracle, TriState};
use crate::polyhedral::HalfspaceSystem;
use crate::props::{
    check_monotone, pairs_in_cone, require_tol, CheckReport, ConeSpec, FunctionalHandle, Sampler,
    Verdict, STRICT_MIN_DISPLACEMENT,
};

/// An affine piece `y ↦ c·y + c0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineTerm {
    pub c: Vec<f64>,
    pub c0: f64,
}

impl AffineTerm {
    fn eval(&self, y: &[f64]) -> f64 {
        dot(&self.c, y) + self.c0
    }
}

/// JSON form of the built-in function families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FunctionSpec {
    Affine {
        c: Vec<f64>,
        c0: f64,
    },
    MaxAffine {
        terms: Vec<AffineTerm>,
    },
    /// `Σ |yᵢ|`
    AbsSum {
        dim: usize,
    },
    /// `−minᵢ yᵢ`
    NegMin {
        dim: usize,
    },
    /// `g` on `set`, `+∞` elsewhere.
    IndicatorPlus {
        g: Box<FunctionSpec>,
        set: HalfspaceSystem,
    },
    Constant {
        dim: usize,
        value: ExtReal,
    },
}

impl FunctionSpec {
    pub fn dim(&self) -> usize {
        match self {
            FunctionSpec::Affine { c, .. } => c.len(),
            FunctionSpec::MaxAffine { terms } => terms.first().map_or(0, |t| t.c.len()),
            FunctionSpec::AbsSum { dim } | FunctionSpec::NegMin { dim } => *dim,
            FunctionSpec::IndicatorPlus { g, .. } => g.dim(),
            FunctionSpec::Constant { dim, .. } => *dim,
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            FunctionSpec::Affine { .. } => "affine",
            FunctionSpec::MaxAffine { .. } => "max_affine",
            FunctionSpec::AbsSum { .. } => "abs_sum",
            FunctionSpec::NegMin { .. } => "neg_min",
            FunctionSpec::IndicatorPlus { .. } => "indicator_plus",
            FunctionSpec::Constant { .. } => "constant",
        }
    }

    /// Properties the family is known to have from its parameters alone. A
    /// `false` entry means "not guaranteed", not "fails".
    pub fn known_properties(&self) -> KnownProperties {
        let all = KnownProperties {
            convex: true,
            positively_homogeneous: true,
            subadditive: true,
        };
        match self {
            FunctionSpec::Affine { c0, .. } => KnownProperties {
                positively_homogeneous: *c0 == 0.0,
                subadditive: *c0 >= 0.0,
                ..all
            },
            FunctionSpec::MaxAffine { terms } => KnownProperties {
                positively_homogeneous: terms.iter().all(|t| t.c0 == 0.0),
                subadditive: terms.iter().all(|t| t.c0 >= 0.0),
                ..all
            },
            FunctionSpec::AbsSum { .. } | FunctionSpec::NegMin { .. } => all,
            FunctionSpec::IndicatorPlus { g, set } => {
                let inner = g.known_properties();
                let cone = set.rhs().iter().all(|&b| b == 0.0);
                KnownProperties {
                    convex: inner.convex,
                    positively_homogeneous: inner.positively_homogeneous && cone,
                    subadditive: inner.subadditive && cone,
                }
            }
            FunctionSpec::Constant { value, .. } => KnownProperties {
                positively_homogeneous: !value.is_finite() || *value == ExtReal::ZERO,
                subadditive: !value.is_finite() || *value >= ExtReal::ZERO,
                ..all
            },
        }
    }

    fn validate(&self) -> Result<()> {
        let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        match self {
            FunctionSpec::Affine { c, c0 } => {
                if c.is_empty() || !finite(c) || !c0.is_finite() {
                    return Err(Error::Invalid("affine parameters must be finite".into()));
                }
            }
            FunctionSpec::MaxAffine { terms } => {
                let Some(first) = terms.first() else {
                    return Err(Error::Invalid("max_affine needs at least one term".into()));
                };
                for t in terms {
                    check_dim(first.c.len(), t.c.len())?;
                    if !finite(&t.c) || !t.c0.is_finite() {
                        return Err(Error::Invalid("max_affine parameters must be finite".into()));
                    }
                }
                if first.c.is_empty() {
                    return Err(Error::Invalid("max_affine terms need dimension ≥ 1".into()));
                }
            }
            FunctionSpec::AbsSum { dim } | FunctionSpec::NegMin { dim } | FunctionSpec::Constant { dim, .. } => {
                if *dim == 0 {
                    return Err(Error::Invalid("dimension must be at least 1".into()));
                }
            }
            FunctionSpec::IndicatorPlus { g, set } => {
                g.validate()?;
                check_dim(g.dim(), set.dim())?;
            }
        }
        Ok(())
    }

    fn eval(&self, y: &[f64]) -> ExtReal {
        match self {
            FunctionSpec::Affine { c, c0 } => ExtReal::from(dot(c, y) + c0),
            FunctionSpec::MaxAffine { terms } => ExtReal::from(
                terms
                    .iter()
                    .map(|t| t.eval(y))
                    .fold(f64::NEG_INFINITY, f64::max),
            ),
            FunctionSpec::AbsSum { .. } => ExtReal::from(y.iter().map(|v| v.abs()).sum::<f64>()),
            FunctionSpec::NegMin { .. } => {
                ExtReal::from(-y.iter().copied().fold(f64::INFINITY, f64::min))
            }
            FunctionSpec::IndicatorPlus { g, set } => {
                if set.contains_unchecked(y) {
                    g.eval(y)
                } else {
                    ExtReal::PosInf
                }
            }
            FunctionSpec::Constant { value, .. } => *value,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownProperties {
    pub convex: bool,
    pub positively_homogeneous: bool,
    pub subadditive: bool,
}

type Eval = dyn Fn(&[f64]) -> ExtReal + Send + Sync;

/// `f : ℝⁿ → ℝ ∪ {±∞}`, either a built-in family or a caller-supplied closure.
#[derive(Clone)]
pub struct ExtendedFunction {
    eval: Arc<Eval>,
    dim: usize,
    label: String,
    spec: Option<FunctionSpec>,
}

impl fmt::Debug for ExtendedFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtendedFunction")
            .field("label", &self.label)
            .field("dim", &self.dim)
            .field("spec", &self.spec)
            .finish()
    }
}

impl ExtendedFunction {
    pub fn from_spec(spec: FunctionSpec) -> Result<ExtendedFunction> {
        spec.validate()?;
        let dim = spec.dim();
        let label = spec.family().to_string();
        let inner = spec.clone();
        Ok(ExtendedFunction {
            eval: Arc::new(move |y| inner.eval(y)),
            dim,
            label,
            spec: Some(spec),
        })
    }

    pub fn from_fn<F>(dim: usize, label: impl Into<String>, f: F) -> ExtendedFunction
    where
        F: Fn(&[f64]) -> ExtReal + Send + Sync + 'static,
    {
        ExtendedFunction {
            eval: Arc::new(f),
            dim,
            label: label.into(),
            spec: None,
        }
    }

    pub fn affine(c: Vec<f64>, c0: f64) -> Result<ExtendedFunction> {
        ExtendedFunction::from_spec(FunctionSpec::Affine { c, c0 })
    }

    pub fn max_affine(terms: Vec<AffineTerm>) -> Result<ExtendedFunction> {
        ExtendedFunction::from_spec(FunctionSpec::MaxAffine { terms })
    }

    pub fn abs_sum(dim: usize) -> Result<ExtendedFunction> {
        ExtendedFunction::from_spec(FunctionSpec::AbsSum { dim })
    }

    pub fn neg_min(dim: usize) -> Result<ExtendedFunction> {
        ExtendedFunction::from_spec(FunctionSpec::NegMin { dim })
    }

    pub fn indicator_plus(g: FunctionSpec, set: HalfspaceSystem) -> Result<ExtendedFunction> {
        ExtendedFunction::from_spec(FunctionSpec::IndicatorPlus { g: Box::new(g), set })
    }

    pub fn constant(dim: usize, value: ExtReal) -> Result<ExtendedFunction> {
        ExtendedFunction::from_spec(FunctionSpec::Constant { dim, value })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn spec(&self) -> Option<&FunctionSpec> {
        self.spec.as_ref()
    }

    pub fn eval(&self, y: &[f64]) -> Result<ExtReal> {
        check_dim(self.dim, y.len())?;
        Ok((self.eval)(y))
    }

    /// `f` itself as a functional on ℝⁿ, for the `props` checkers.
    pub fn handle(&self) -> FunctionalHandle {
        let f = self.clone();
        FunctionalHandle::new(self.dim, self.label.clone(), move |y| f.eval(y))
    }
}

/// `(0, …, 0, −1) ∈ ℝⁿ⁺¹`
pub fn epi_direction(n: usize) -> Vec<f64> {
    let mut k = vec![0.0; n + 1];
    k[n] = -1.0;
    k
}

fn split_last(z: &[f64]) -> (&[f64], f64) {
    let (y, s) = z.split_at(z.len() - 1);
    (y, s[0])
}

/// `(y, s) ↦ f(y) − s` on ℝⁿ⁺¹.
pub fn extend(f: &ExtendedFunction) -> FunctionalHandle {
    let g = f.clone();
    FunctionalHandle::new(f.dim + 1, format!("extend({})", f.label), move |z| {
        check_dim(g.dim + 1, z.len())?;
        let (y, s) = split_last(z);
        Ok(g.eval(y)?.sub_finite(s))
    })
}

struct Epigraph(ExtendedFunction);

impl Membership for Epigraph {
    fn contains(&self, z: &[f64]) -> bool {
        let (y, t) = split_last(z);
        (self.0.eval)(y) <= ExtReal::finite(t)
    }

    fn dim(&self) -> usize {
        self.0.dim + 1
    }

    fn contract(&self, k: &[f64]) -> Contract {
        let (head, last) = split_last(k);
        if last < 0.0 && head.iter().all(|&v| v == 0.0) {
            Contract::Holds
        } else {
            Contract::Declared
        }
    }
}

/// Membership in `epi f = {(y, t) : f(y) ≤ t}`.
pub fn epi_oracle(f: &ExtendedFunction) -> SetOracle {
    SetOracle::new(Epigraph(f.clone()))
}

/// `extend(f)((y, 0)) = f(y)` exactly at every sample. With `oracle_path`, the
/// bisection value on `epi f` must also lie within `2·tol` of finite `f(y)` and
/// match infinite values.
pub fn restriction_check(
    f: &ExtendedFunction,
    ys: &[Vec<f64>],
    tol: f64,
    oracle_path: bool,
) -> Result<CheckReport> {
    require_tol(tol)?;
    let phi = extend(f);
    let oracle = epi_oracle(f);
    let k = epi_direction(f.dim);
    let mut report = CheckReport::new("restriction");
    for y in ys {
        let fy = f.eval(y)?;
        let mut z = y.clone();
        z.push(0.0);
        let lifted = phi.eval(&z)?;
        if lifted != fy {
            report.violate(vec![y.clone()], vec![], lifted, fy);
        }
        if oracle_path {
            let approx = phi_oracle(&oracle, &k, &z, tol)?;
            if !approx.approx_eq(fy, 2.0 * tol) {
                report.violate(vec![y.clone()], vec![], approx, fy);
            }
        }
        report.samples_tested += 1;
    }
    Ok(report.finish())
}

/// A violation of `f` paired with the violation it induces on the extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkedWitness {
    pub f_violation: usize,
    pub phi_violation: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransferReport {
    pub f_side: CheckReport,
    pub phi_side: CheckReport,
    pub agree: bool,
    pub linked: Vec<LinkedWitness>,
}

impl TransferReport {
    fn new(f_side: CheckReport, phi_side: CheckReport) -> TransferReport {
        let linked: Vec<LinkedWitness> = f_side
            .violations
            .iter()
            .enumerate()
            .filter_map(|(fi, v)| {
                phi_side
                    .violations
                    .iter()
                    .position(|w| {
                        w.input.len() == 2
                            && split_last(&w.input[0]).0 == v.input[0].as_slice()
                            && split_last(&w.input[1]).0 == v.input[1].as_slice()
                    })
                    .map(|pi| LinkedWitness {
                        f_violation: fi,
                        phi_violation: pi,
                    })
            })
            .collect();
        let agree = f_side.verdict == phi_side.verdict
            && (f_side.verdict == Verdict::Pass || !linked.is_empty());
        TransferReport {
            f_side,
            phi_side,
            agree,
            linked,
        }
    }
}

/// Levels `s` paired on the extension side; every pair has `s₂ ≤ s₁`.
const S_PAIRS: [(f64, f64); 6] = [
    (0.0, 0.0),
    (1.0, 1.0),
    (-1.0, -1.0),
    (1.0, 0.0),
    (0.0, -1.0),
    (1.0, -1.0),
];

fn lift(y: &[f64], s: f64) -> Vec<f64> {
    let mut z = y.to_vec();
    z.push(s);
    z
}

/// Compares `B`-monotonicity of `f` on `F` with `(B × (−ℝ₊))`-monotonicity of
/// `extend(f)` on `F × S`. The extension is tested on every pair the `f` side
/// tests, at several levels `s₂ ≤ s₁`, and on the pairs `(y, s₁), (y, s₂)`.
pub fn monotone_transfer_check(
    f: &ExtendedFunction,
    cone: &ConeSpec,
    samples: &[Vec<f64>],
    pair_count: usize,
    tol: f64,
) -> Result<TransferReport> {
    require_tol(tol)?;
    if samples.is_empty() {
        return Err(Error::EmptySampleSet);
    }
    check_dim(f.dim, cone.dim())?;
    let f_side = check_monotone(&f.handle(), cone, samples, pair_count, tol)?;
    let phi = extend(f);
    let mut phi_side = CheckReport::new("monotone_extension");
    let diagonal = (0..samples.len()).map(|i| (i, i));
    let pairs: Vec<(usize, usize)> = pairs_in_cone(cone, samples, 0.0)
        .take(pair_count)
        .map(|(i, j, _)| (i, j))
        .chain(diagonal)
        .collect();
    for (i, j) in pairs {
        for &(s1, s2) in &S_PAIRS {
            let (z1, z2) = (lift(&samples[i], s1), lift(&samples[j], s2));
            let (lo, hi) = (phi.eval(&z1)?, phi.eval(&z2)?);
            if !lo.le_tol(hi, tol) {
                phi_side.violate(vec![z1, z2], vec![], lo, hi);
            }
            phi_side.samples_tested += 1;
        }
    }
    Ok(TransferReport::new(f_side, phi_side.finish()))
}

/// Strict version of [`monotone_transfer_check`]. The extension side is tested
/// on `B × (−ℝ₊) \ {0}`, including `(y, s), (y, s − 1)`; displacements shorter
/// than [`STRICT_MIN_DISPLACEMENT`] are excluded on both sides.
pub fn strict_transfer_check(
    f: &ExtendedFunction,
    cone: &ConeSpec,
    samples: &[Vec<f64>],
    pair_count: usize,
) -> Result<TransferReport> {
    if samples.is_empty() {
        return Err(Error::EmptySampleSet);
    }
    check_dim(f.dim, cone.dim())?;
    let handle = f.handle();
    let f_side =
        crate::props::check_strict_monotone(&handle, cone, samples, pair_count, f64::MIN_POSITIVE)?;
    let phi = extend(f);
    let mut phi_side = CheckReport::new("strict_monotone_extension");
    let off_diagonal: Vec<(usize, usize)> = pairs_in_cone(cone, samples, STRICT_MIN_DISPLACEMENT)
        .take(pair_count)
        .map(|(i, j, _)| (i, j))
        .collect();
    let mut test = |i: usize, j: usize, s1: f64, s2: f64| -> Result<()> {
        let (z1, z2) = (lift(&samples[i], s1), lift(&samples[j], s2));
        let (lo, hi) = (phi.eval(&z1)?, phi.eval(&z2)?);
        if lo >= hi {
            phi_side.violate(vec![z1, z2], vec![], lo, hi);
        }
        phi_side.samples_tested += 1;
        Ok(())
    };
    for (i, j) in off_diagonal {
        for &(s1, s2) in &S_PAIRS {
            test(i, j, s1, s2)?;
        }
    }
    for i in 0..samples.len() {
        for &(s1, s2) in S_PAIRS.iter().filter(|(a, b)| a > b) {
            test(i, i, s1, s2)?;
        }
    }
    phi_side
        .notes
        .push(format!("min_displacement={STRICT_MIN_DISPLACEMENT:e}"));
    Ok(TransferReport::new(f_side, phi_side.finish()))
}

/// Step sizes for [`epi_continuity_probe`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeSchedule {
    /// Heights `δ > 0` above the graph at which interiority is probed.
    pub deltas: Vec<f64>,
    /// Largest ball radius; each further level halves it.
    pub radius: f64,
    pub levels: u32,
    /// Random ball points per level, in addition to the `2n + 2` axis points.
    pub random_points: usize,
    /// Steps `h` along each direction for the closedness probe, decreasing.
    pub steps: Vec<f64>,
    pub seed: u64,
    pub tol: f64,
}

impl Default for ProbeSchedule {
    fn default() -> Self {
        ProbeSchedule {
            deltas: vec![1.0, 1e-1, 1e-2],
            radius: 0.5,
            levels: 30,
            random_points: 8,
            steps: (0..30).map(|j| 0.5f64.powi(j)).collect(),
            seed: crate::props::DEFAULT_SEED,
            tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuityPoint {
    pub point: Vec<f64>,
    pub value: ExtReal,
    pub delta: f64,
    /// Some ball around `(y, f(y) + δ)` stays in `epi f`.
    pub interior: TriState,
    /// Limits of `f` along each direction are at least `f(y)`.
    pub closed: TriState,
    pub verdict: TriState,
}

/// Sampled interiority and closedness probes of `epi f` above each `y`.
///
/// `Out` is a counterexample at the sampled scales; `In` is evidence only.
/// Points where `f(y)` is infinite are `Undetermined`. An empty `directions`
/// list means `±eᵢ`.
pub fn epi_continuity_probe(
    f: &ExtendedFunction,
    ys: &[Vec<f64>],
    directions: &[Vec<f64>],
    schedule: &ProbeSchedule,
) -> Result<Vec<ContinuityPoint>> {
    let n = f.dim;
    let axes: Vec<Vec<f64>>;
    let directions = if directions.is_empty() {
        axes = (0..2 * n)
            .map(|i| {
                let mut d = vec![0.0; n];
                d[i / 2] = if i % 2 == 0 { 1.0 } else { -1.0 };
                d
            })
            .collect();
        &axes
    } else {
        directions
    };
    for d in directions {
        check_dim(n, d.len())?;
    }
    let oracle = epi_oracle(f);
    let mut sampler = Sampler::new(schedule.seed);
    let mut out = Vec::new();
    for y in ys {
        let value = f.eval(y)?;
        let closed = closedness(f, y, value, directions, schedule)?;
        for &delta in &schedule.deltas {
            let interior = match value {
                ExtReal::Finite(v) => interiority(&oracle, &lift(y, v + delta), schedule, &mut sampler),
                _ => TriState::Undetermined,
            };
            let verdict = match (interior, closed) {
                (TriState::Out, _) | (_, TriState::Out) => TriState::Out,
                (TriState::In, TriState::In) => TriState::In,
                _ => TriState::Undetermined,
            };
            out.push(ContinuityPoint {
                point: y.clone(),
                value,
                delta,
                interior,
                closed,
                verdict,
            });
        }
    }
    Ok(out)
}

fn interiority(oracle: &SetOracle, p: &[f64], schedule: &ProbeSchedule, sampler: &mut Sampler) -> TriState {
    let m = p.len();
    for level in 0..schedule.levels {
        let r = schedule.radius * 0.5f64.powi(level as i32);
        let axis = (0..2 * m).map(|i| {
            let mut e = vec![0.0; m];
            e[i / 2] = if i % 2 == 0 { r } else { -r };
            e
        });
        let random: Vec<Vec<f64>> = (0..schedule.random_points)
            .map(|_| {
                let v: Vec<f64> = (0..m).map(|_| sampler.rng().gen_range(-1.0..=1.0)).collect();
                let len = dot(&v, &v).sqrt().max(f64::MIN_POSITIVE);
                let rho = r * sampler.rng().gen_range(0.0..=1.0) / len;
                v.iter().map(|x| x * rho).collect()
            })
            .collect();
        if axis.chain(random).all(|e| oracle.member(&axpy(p, 1.0, &e))) {
            return TriState::In;
        }
    }
    TriState::Out
}

fn closedness(
    f: &ExtendedFunction,
    y: &[f64],
    value: ExtReal,
    directions: &[Vec<f64>],
    schedule: &ProbeSchedule,
) -> Result<TriState> {
    if !value.is_finite() || schedule.steps.len() < 2 {
        return Ok(TriState::Undetermined);
    }
    let mut settled = true;
    for d in directions {
        let tail: Vec<ExtReal> = schedule.steps[schedule.steps.len() - 2..]
            .iter()
            .map(|&h| f.eval(&axpy(y, h, d)))
            .collect::<Result<_>>()?;
        let (prev, last) = (tail[0], tail[1]);
        if last.is_pos_inf() {
            continue;
        }
        if !prev.approx_eq(last, schedule.tol) {
            settled = false;
            continue;
        }
        if !value.le_tol(last, schedule.tol) {
            return Ok(TriState::Out);
        }
    }
    Ok(if settled { TriState::In } else { TriState::Undetermined })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::dir_closure_member;

    fn abs1() -> ExtendedFunction {
        ExtendedFunction::abs_sum(1).unwrap()
    }

    fn max_xy() -> ExtendedFunction {
        ExtendedFunction::max_affine(vec![
            AffineTerm { c: vec![1.0, 0.0], c0: 0.0 },
            AffineTerm { c: vec![0.0, 1.0], c0: 0.0 },
        ])
        .unwrap()
    }

    #[test]
    fn extend_examples() {
        let phi = extend(&abs1());
        assert_eq!(phi.dim(), 2);
        assert_eq!(phi.eval(&[3.0, 1.0]).unwrap(), ExtReal::finite(2.0));
        assert_eq!(phi.eval(&[0.0, 0.0]).unwrap(), ExtReal::ZERO);
        let top = extend(&ExtendedFunction::constant(2, ExtReal::PosInf).unwrap());
        assert_eq!(top.eval(&[1.0, -4.0, 9.0]).unwrap(), ExtReal::PosInf);
        let v = phi_oracle(&epi_oracle(&abs1()), &epi_direction(1), &[3.0, 1.0], 1e-9).unwrap();
        assert!(v.approx_eq(ExtReal::finite(2.0), 2e-9), "{v}");
    }

    #[test]
    fn epi_oracle_examples() {
        let o = epi_oracle(&abs1());
        assert!(o.member(&[1.0, 2.0]));
        assert!(!o.member(&[1.0, 0.5]));
        assert_eq!(o.contract(&[0.0, -1.0]), Contract::Holds);
        let bottom = epi_oracle(&ExtendedFunction::constant(1, ExtReal::NegInf).unwrap());
        assert!(bottom.member(&[5.0, -1e300]));
    }

    #[test]
    fn restriction_examples() {
        let ys = Sampler::default().box_points(2, 50, 10.0);
        let r = restriction_check(&max_xy(), &ys, 1e-9, true).unwrap();
        assert!(r.passed(), "{r:?}");
        let bottom = ExtendedFunction::constant(2, ExtReal::NegInf).unwrap();
        let r = restriction_check(&bottom, &ys, 1e-9, true).unwrap();
        assert!(r.passed());
        assert!(ys.iter().all(|y| bottom.eval(y).unwrap() == ExtReal::NegInf));
    }

    #[test]
    fn monotone_transfer_examples() {
        let mut s = Sampler::default();
        let plus = ConeSpec::nonnegative_orthant(2);
        let base = s.box_points(2, 20, 5.0);
        let cloud = s.displaced_cloud(&base, &plus, 2, 2.0);
        let r = monotone_transfer_check(&max_xy(), &plus, &cloud, 500, 1e-9).unwrap();
        assert!(r.agree && r.f_side.passed() && r.phi_side.passed());

        let neg_y1 = ExtendedFunction::affine(vec![-1.0, 0.0], 0.0).unwrap();
        let r = monotone_transfer_check(&neg_y1, &plus, &cloud, 500, 1e-9).unwrap();
        assert!(r.agree && !r.f_side.passed() && !r.phi_side.passed());
        assert!(!r.linked.is_empty());

        let zero = ConeSpec::zero(2);
        let r = monotone_transfer_check(&neg_y1, &zero, &base, 500, 1e-9).unwrap();
        assert!(r.agree && r.phi_side.passed());
        assert_eq!(r.f_side.samples_tested, 0);
        assert!(r.phi_side.samples_tested > 0);
    }

    #[test]
    fn strict_transfer_with_infinite_values() {
        let plus = ConeSpec::nonnegative_orthant(1);
        let samples = vec![vec![0.0], vec![1.0], vec![3.0]];
        let id = ExtendedFunction::affine(vec![1.0], 0.0).unwrap();
        let r = strict_transfer_check(&id, &plus, &samples, 100).unwrap();
        assert!(r.agree && r.f_side.passed());
        let top = ExtendedFunction::constant(1, ExtReal::PosInf).unwrap();
        let r = strict_transfer_check(&top, &ConeSpec::zero(1), &samples, 100).unwrap();
        assert!(r.f_side.passed());
        assert!(!r.phi_side.passed());
        assert!(!r.agree);
    }

    #[test]
    fn continuity_probe_examples() {
        let ys = Sampler::default().box_points(2, 10, 3.0);
        let pts = epi_continuity_probe(&max_xy(), &ys, &[], &ProbeSchedule::default()).unwrap();
        assert!(pts.iter().all(|p| p.verdict != TriState::Out));
        assert!(pts.iter().all(|p| p.verdict == TriState::In));

        let half = HalfspaceSystem::halfspace(vec![1.0, 0.0], 0.0).unwrap();
        let ind = ExtendedFunction::indicator_plus(FunctionSpec::Constant { dim: 2, value: ExtReal::ZERO }, half)
            .unwrap();
        let pts = epi_continuity_probe(&ind, &[vec![0.0, 1.0]], &[], &ProbeSchedule::default()).unwrap();
        assert!(pts.iter().all(|p| p.interior == TriState::Out));
        let deep = ProbeSchedule {
            deltas: vec![1e6],
            ..ProbeSchedule::default()
        };
        let pts = epi_continuity_probe(&max_xy(), &[vec![1.0, 2.0]], &[], &deep).unwrap();
        assert_eq!(pts[0].interior, TriState::In);
    }

    #[test]
    fn epigraph_is_directionally_closed() {
        let f = max_xy();
        let o = epi_oracle(&f);
        let k = epi_direction(2);
        for (y, t) in [([1.0, 2.0], 2.0), ([1.0, 2.0], 1.999), ([-3.0, 0.5], 0.5)] {
            let z = lift(&y, t);
            let state = dir_closure_member(&o, &k, &z, 1.0, 40).unwrap();
            assert_eq!(state == TriState::In, o.member(&z));
        }
    }

    #[test]
    fn known_properties_hold_on_samples() {
        use crate::props::{check_convex, check_pos_homog, check_subadditive};
        let ys = Sampler::default().box_points(3, 200, 10.0);
        for f in crate::generate::builtin_functions(2) {
            let props = f.spec().unwrap().known_properties();
            let phi = extend(&f);
            if props.convex {
                assert!(check_convex(&phi, &ys, &[0.3], 1e-9).unwrap().passed(), "{}", f.label());
            }
            if props.positively_homogeneous {
                assert!(check_pos_homog(&phi, &ys, &[0.5, 3.0], 1e-9).unwrap().passed(), "{}", f.label());
            }
            if props.subadditive {
                assert!(check_subadditive(&phi, &ys, 3000, 1e-9).unwrap().passed(), "{}", f.label());
            }
        }
    }

    #[test]
    fn spec_json_roundtrip() {
        let json = r#"{"family":"max_affine","terms":[{"c":[1.0,0.0],"c0":0.0},{"c":[0.0,1.0],"c0":0.0}]}"#;
        let spec: FunctionSpec = serde_json::from_str(json).unwrap();
        let f = ExtendedFunction::from_spec(spec.clone()).unwrap();
        assert_eq!(f.eval(&[1.0, 2.0]).unwrap(), ExtReal::finite(2.0));
        assert_eq!(serde_json::to_string(&spec).unwrap(), json);
        let c: FunctionSpec = serde_json::from_str(r#"{"family":"constant","dim":1,"value":"-inf"}"#).unwrap();
        assert_eq!(c, FunctionSpec::Constant { dim: 1, value: ExtReal::NegInf });
        assert!(ExtendedFunction::max_affine(vec![]).is_err());
    }
}
