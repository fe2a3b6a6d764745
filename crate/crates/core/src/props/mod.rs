//! Sampled certification of structural properties of extended-real functionals.
//!
//! Every checker evaluates a [`FunctionalHandle`] on caller-supplied samples and
//! returns a [`CheckReport`] listing each violated instance in sample order.
//! A `pass` verdict is evidence on the samples, not a proof.

mod cone;

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use cone::{nnls, ConeSpec};

use crate::error::{check_dim, Error, Result};
use crate::extreal::ExtReal;
use crate::linalg::{add, axpy, norm2, scale, sub};
use crate::oracle::{phi_oracle, SetOracle};
use crate::polyhedral::{Classification, HalfspaceSystem, ACTIVE_TOL};

pub const DEFAULT_SEED: u64 = 0x5EED;
pub const DEFAULT_BOX: f64 = 10.0;
pub const DEFAULT_COUNT: usize = 1000;
/// Displacements shorter than this are excluded from strict monotonicity tests.
pub const STRICT_MIN_DISPLACEMENT: f64 = 1e-6;

type EvalFn = dyn Fn(&[f64]) -> Result<ExtReal> + Send + Sync;

/// A functional `ℝ^ℓ → ℝ ∪ {±∞}` under test.
#[derive(Clone)]
pub struct FunctionalHandle {
    eval: Arc<EvalFn>,
    dim: usize,
    pub label: String,
}

impl fmt::Debug for FunctionalHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionalHandle")
            .field("label", &self.label)
            .field("dim", &self.dim)
            .finish()
    }
}

impl FunctionalHandle {
    pub fn new<F>(dim: usize, label: impl Into<String>, eval: F) -> FunctionalHandle
    where
        F: Fn(&[f64]) -> Result<ExtReal> + Send + Sync + 'static,
    {
        FunctionalHandle {
            eval: Arc::new(eval),
            dim,
            label: label.into(),
        }
    }

    /// Closed-form `φ_{A,k}` for a polyhedral set.
    pub fn polyhedral(h: HalfspaceSystem, k: &[f64]) -> Result<FunctionalHandle> {
        let part = h.classify_direction(k, ACTIVE_TOL)?;
        if part.classification == Classification::NotRecession {
            // surfaces the offending row
            h.phi(k, &vec![0.0; h.dim()])?;
        }
        let dim = h.dim();
        Ok(FunctionalHandle::new(dim, "polyhedral", move |y| {
            check_dim(dim, y.len())?;
            Ok(h.phi_partitioned(&part, y))
        }))
    }

    /// Bisection `φ_{A,k}` through a membership oracle.
    pub fn oracle(o: SetOracle, k: Vec<f64>, tol: f64) -> FunctionalHandle {
        let dim = o.dim();
        FunctionalHandle::new(dim, "bisection", move |y| phi_oracle(&o, &k, y, tol))
    }

    /// `y ↦ ‖y‖₂`, a control that is not translative in any direction.
    pub fn euclidean_norm(dim: usize) -> FunctionalHandle {
        FunctionalHandle::new(dim, "euclidean_norm", move |y| {
            check_dim(dim, y.len())?;
            Ok(ExtReal::from(norm2(y)))
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, y: &[f64]) -> Result<ExtReal> {
        check_dim(self.dim, y.len())?;
        (self.eval)(y)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> FunctionalHandle {
        self.label = label.into();
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

/// One failed instance: the points involved, scalar parameters (`t`, `λ`),
/// both sides of the tested relation and the gap between them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub index: usize,
    pub input: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub params: Vec<f64>,
    pub lhs: ExtReal,
    pub rhs: ExtReal,
    pub gap: ExtReal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    #[serde(rename = "samples")]
    pub samples_tested: usize,
    #[serde(default)]
    pub skipped: usize,
    pub violations: Vec<Violation>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub(crate) fn new(name: &str) -> CheckReport {
        CheckReport {
            name: name.to_string(),
            samples_tested: 0,
            skipped: 0,
            violations: Vec::new(),
            verdict: Verdict::Pass,
            notes: Vec::new(),
        }
    }

    pub(crate) fn violate(&mut self, input: Vec<Vec<f64>>, params: Vec<f64>, lhs: ExtReal, rhs: ExtReal) {
        let gap = match (lhs, rhs) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::from((a - b).abs()),
            _ => ExtReal::PosInf,
        };
        self.violations.push(Violation {
            index: self.samples_tested,
            input,
            params,
            lhs,
            rhs,
            gap,
        });
    }

    pub(crate) fn finish(mut self) -> CheckReport {
        self.verdict = if self.violations.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn renamed(mut self, name: impl Into<String>) -> CheckReport {
        self.name = name.into();
        self
    }
}

pub(crate) fn require_tol(tol: f64) -> Result<()> {
    if tol > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveTolerance(tol))
    }
}

/// `φ(y + t·k) = φ(y) + t` on `ys × ts`; infinite `φ(y)` must reappear unchanged.
pub fn check_translative(
    phi: &FunctionalHandle,
    k: &[f64],
    ys: &[Vec<f64>],
    ts: &[f64],
    tol: f64,
) -> Result<CheckReport> {
    require_tol(tol)?;
    check_dim(phi.dim(), k.len())?;
    let mut report = CheckReport::new("translative");
    for y in ys {
        let base = phi.eval(y)?;
        for &t in ts {
            let moved = axpy(y, t, k);
            let lhs = phi.eval(&moved)?;
            let rhs = base.add_finite(t);
            if !lhs.approx_eq(rhs, tol) {
                report.violate(vec![y.clone()], vec![t], lhs, rhs);
            }
            report.samples_tested += 1;
        }
    }
    Ok(report.finish())
}

/// `sublev φ(t) = sublev φ(0) + t·k`, tested as `[φ(y) ≤ t] ⇔ [φ(y − t·k) ≤ 0]`.
/// Points with `|φ(y) − t| ≤ 2·tol` are skipped.
pub fn check_sublevel_uniform(
    phi: &FunctionalHandle,
    k: &[f64],
    ys: &[Vec<f64>],
    ts: &[f64],
    tol: f64,
) -> Result<CheckReport> {
    require_tol(tol)?;
    check_dim(phi.dim(), k.len())?;
    let mut report = CheckReport::new("sublevel");
    for y in ys {
        let here = phi.eval(y)?;
        for &t in ts {
            if let ExtReal::Finite(v) = here {
                if (v - t).abs() <= 2.0 * tol {
                    report.skipped += 1;
                    continue;
                }
            }
            let back = phi.eval(&axpy(y, -t, k))?;
            let in_t = here.le_tol(ExtReal::from(t), tol);
            let in_0 = back.le_tol(ExtReal::ZERO, tol);
            if in_t != in_0 {
                report.violate(vec![y.clone()], vec![t], here, back);
            }
            report.samples_tested += 1;
        }
    }
    Ok(report.finish())
}

/// `a(y) = b(y)` within `tol` at finite values, with identical infinite values.
pub fn check_agreement(
    a: &FunctionalHandle,
    b: &FunctionalHandle,
    ys: &[Vec<f64>],
    tol: f64,
) -> Result<CheckReport> {
    require_tol(tol)?;
    check_dim(a.dim(), b.dim())?;
    let mut report = CheckReport::new("agreement");
    for y in ys {
        let (lhs, rhs) = (a.eval(y)?, b.eval(y)?);
        if !lhs.approx_eq(rhs, tol) {
            report.violate(vec![y.clone()], vec![], lhs, rhs);
        }
        report.samples_tested += 1;
    }
    report.notes.push(format!("{} vs {}", a.label, b.label));
    Ok(report.finish())
}

// Ordered pairs (i, j), i ≠ j, visited by increasing offset so that a capped
// scan still covers every point.
fn ordered_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(move |gap| (0..n).map(move |i| (i, (i + gap) % n)))
}

pub(crate) fn pairs_in_cone<'a>(
    cone: &'a ConeSpec,
    f: &'a [Vec<f64>],
    min_norm: f64,
) -> impl Iterator<Item = (usize, usize, Vec<f64>)> + 'a {
    ordered_pairs(f.len()).filter_map(move |(i, j)| {
        let d = sub(&f[j], &f[i]);
        (norm2(&d) >= min_norm && cone.contains(&d)).then_some((i, j, d))
    })
}

/// `B`-monotonicity on the finite set `F`: for `y¹, y² ∈ F` with `y² − y¹ ∈ B`,
/// `φ(y¹) ≤ φ(y²) + tol`. At most `pair_count` qualifying pairs are tested.
pub fn check_monotone(
    phi: &FunctionalHandle,
    cone: &ConeSpec,
    f: &[Vec<f64>],
    pair_count: usize,
    tol: f64,
) -> Result<CheckReport> {
    require_tol(tol)?;
    if f.is_empty() {
        return Err(Error::EmptySampleSet);
    }
    check_dim(phi.dim(), cone.dim())?;
    let values = f.iter().map(|y| phi.eval(y)).collect::<Result<Vec<_>>>()?;
    let mut report = CheckReport::new("monotone");
    for (i, j, _) in pairs_in_cone(cone, f, 0.0).take(pair_count) {
        let (lo, hi) = (values[i], values[j]);
        if !lo.le_tol(hi, tol) {
            report.violate(vec![f[i].clone(), f[j].clone()], vec![], lo, hi);
        }
        report.samples_tested += 1;
    }
    Ok(report.finish())
}

/// Strict `B`-monotonicity on `F`: `φ(y¹) < φ(y²)` whenever `y² − y¹ ∈ B \ {0}`.
/// Displacements shorter than [`STRICT_MIN_DISPLACEMENT`] are not tested;
/// increases smaller than `gap` are counted in the notes as near-ties.
pub fn check_strict_monotone(
    phi: &FunctionalHandle,
    cone: &ConeSpec,
    f: &[Vec<f64>],
    pair_count: usize,
    gap: f64,
) -> Result<CheckReport> {
    if f.is_empty() {
        return Err(Error::EmptySampleSet);
    }
    check_dim(phi.dim(), cone.dim())?;
    let values = f.iter().map(|y| phi.eval(y)).collect::<Result<Vec<_>>>()?;
    let mut report = CheckReport::new("strict_monotone");
    let mut near_ties = 0usize;
    for (i, j, _) in pairs_in_cone(cone, f, STRICT_MIN_DISPLACEMENT).take(pair_count) {
        let (lo, hi) = (values[i], values[j]);
        if lo >= hi {
            report.violate(vec![f[i].clone(), f[j].clone()], vec![], lo, hi);
        } else if let (ExtReal::Finite(a), ExtReal::Finite(b)) = (lo, hi) {
            if b - a < gap {
                near_ties += 1;
            }
        }
        report.samples_tested += 1;
    }
    report
        .notes
        .push(format!("min_displacement={STRICT_MIN_DISPLACEMENT:e}"));
    report.notes.push(format!("near_ties_below_{gap:e}={near_ties}"));
    Ok(report.finish())
}

// Adjacent pairs (i, i+1 mod n).
fn adjacent_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..if n < 2 { 0 } else { n }).map(move |i| (i, (i + 1) % n))
}

/// Jensen's inequality on adjacent sample pairs for every `λ ∈ (0,1)` in `lambdas`.
/// Segments with an endpoint at `−∞` are skipped.
pub fn check_convex(
    phi: &FunctionalHandle,
    ys: &[Vec<f64>],
    lambdas: &[f64],
    tol: f64,
) -> Result<CheckReport> {
    require_tol(tol)?;
    if let Some(&l) = lambdas.iter().find(|&&l| !(l > 0.0 && l < 1.0)) {
        return Err(Error::Invalid(format!("convexity weights must lie in (0,1), got {l}")));
    }
    let values = ys.iter().map(|y| phi.eval(y)).collect::<Result<Vec<_>>>()?;
    let mut report = CheckReport::new("convex");
    for (i, j) in adjacent_pairs(ys.len()) {
        let (a, b) = (values[i], values[j]);
        if a.is_neg_inf() || b.is_neg_inf() {
            report.skipped += lambdas.len();
            continue;
        }
        for &lambda in lambdas {
            let mid = add(&scale(lambda, &ys[i]), &scale(1.0 - lambda, &ys[j]));
            let lhs = phi.eval(&mid)?;
            let rhs = a
                .scale_pos(lambda)
                .checked_add(b.scale_pos(1.0 - lambda))
                .expect("no −∞ terms");
            if !lhs.le_tol(rhs, tol) {
                report.violate(vec![ys[i].clone(), ys[j].clone()], vec![lambda], lhs, rhs);
            }
            report.samples_tested += 1;
        }
    }
    Ok(report.finish())
}

/// `φ(λy) = λ·φ(y)` for `λ > 0`, with tolerance `tol·(1 + λ)`.
pub fn check_pos_homog(
    phi: &FunctionalHandle,
    ys: &[Vec<f64>],
    lambdas: &[f64],
    tol: f64,
) -> Result<CheckReport> {
    require_tol(tol)?;
    if let Some(&l) = lambdas.iter().find(|&&l| !(l > 0.0) || !l.is_finite()) {
        return Err(Error::Invalid(format!("homogeneity factors must be positive, got {l}")));
    }
    let mut report = CheckReport::new("homog");
    for y in ys {
        let base = phi.eval(y)?;
        for &lambda in lambdas {
            let lhs = phi.eval(&scale(lambda, y))?;
            let rhs = base.scale_pos(lambda);
            if !lhs.approx_eq(rhs, tol * (1.0 + lambda)) {
                report.violate(vec![y.clone()], vec![lambda], lhs, rhs);
            }
            report.samples_tested += 1;
        }
    }
    Ok(report.finish())
}

/// `φ(y¹ + y²) ≤ φ(y¹) + φ(y²)` on up to `pair_count` pairs, starting with the
/// diagonal pairs `(y, y)`. Pairs whose right side is `+∞ + (−∞)` are skipped.
pub fn check_subadditive(
    phi: &FunctionalHandle,
    ys: &[Vec<f64>],
    pair_count: usize,
    tol: f64,
) -> Result<CheckReport> {
    require_tol(tol)?;
    let values = ys.iter().map(|y| phi.eval(y)).collect::<Result<Vec<_>>>()?;
    let n = ys.len();
    let mut report = CheckReport::new("subadd");
    let pairs = (0..n).map(|i| (i, i)).chain(ordered_pairs(n).filter(|(i, j)| i < j));
    for (i, j) in pairs.take(pair_count) {
        let rhs = match values[i].checked_add(values[j]) {
            Ok(r) => r,
            Err(_) => {
                report.skipped += 1;
                continue;
            }
        };
        let lhs = phi.eval(&add(&ys[i], &ys[j]))?;
        if !lhs.le_tol(rhs, tol) {
            report.violate(vec![ys[i].clone(), ys[j].clone()], vec![], lhs, rhs);
        }
        report.samples_tested += 1;
    }
    Ok(report.finish())
}

/// Seeded sample generator shared by the checkers and the command line.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Uniform points in `[−half_width, half_width]^dim`.
    pub fn box_points(&mut self, dim: usize, count: usize, half_width: f64) -> Vec<Vec<f64>> {
        (0..count)
            .map(|_| (0..dim).map(|_| self.rng.gen_range(-half_width..=half_width)).collect())
            .collect()
    }

    /// Uniform points in the box scaled by `10^{−m}` for `m` cycling through
    /// `0..levels`, so neighborhoods of the origin are sampled at several scales.
    pub fn multiscale_points(
        &mut self,
        dim: usize,
        count: usize,
        half_width: f64,
        levels: u32,
    ) -> Vec<Vec<f64>> {
        (0..count)
            .map(|i| {
                let r = half_width * 10f64.powi(-((i as u32 % levels.max(1)) as i32));
                (0..dim).map(|_| self.rng.gen_range(-r..=r)).collect()
            })
            .collect()
    }

    pub fn scalars(&mut self, count: usize, lo: f64, hi: f64) -> Vec<f64> {
        (0..count).map(|_| self.rng.gen_range(lo..hi)).collect()
    }

    /// `base` together with `base[i] + d` for displacements `d` drawn from the cone,
    /// so that pairs with differences in `B` occur in the set.
    pub fn displaced_cloud(
        &mut self,
        base: &[Vec<f64>],
        cone: &ConeSpec,
        per_point: usize,
        radius: f64,
    ) -> Vec<Vec<f64>> {
        let mut out = base.to_vec();
        for p in base {
            for _ in 0..per_point {
                if let Some(d) = cone.sample(&mut self.rng, radius) {
                    out.push(add(p, &d));
                }
            }
        }
        out
    }
}

impl Default for Sampler {
    fn default() -> Self {
        Sampler::new(DEFAULT_SEED)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::phi_box;

    fn box_phi(b: Vec<f64>, k: Vec<f64>) -> FunctionalHandle {
        let dim = b.len();
        FunctionalHandle::new(dim, "box", move |y| phi_box(&b, &k, y))
    }

    fn neg_norm(dim: usize) -> FunctionalHandle {
        FunctionalHandle::new(dim, "neg_norm", |y| Ok(ExtReal::from(-norm2(y))))
    }

    #[test]
    fn translative_examples() {
        let phi = box_phi(vec![0.0, 0.0], vec![1.0, 1.0]);
        let r = check_translative(&phi, &[1.0, 1.0], &[vec![2.0, -5.0]], &[1.5], 1e-9).unwrap();
        assert!(r.passed());
        assert_eq!(phi.eval(&[3.5, -3.5]).unwrap(), ExtReal::finite(3.5));

        let norm = FunctionalHandle::euclidean_norm(2);
        let r = check_translative(&norm, &[1.0, 1.0], &[vec![1.0, 0.0]], &[1.0], 1e-9).unwrap();
        assert!(!r.passed());
        let v = &r.violations[0];
        assert!((v.lhs.to_f64() - 5f64.sqrt()).abs() < 1e-15);
        assert_eq!(v.rhs, ExtReal::finite(2.0));

        let ys = Sampler::default().box_points(2, 50, 10.0);
        let r = check_translative(&norm, &[1.0, 1.0], &ys, &[0.0], 1e-9).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn translative_with_infinite_values() {
        let phi = box_phi(vec![0.0, 0.0], vec![1.0, 0.0]);
        let ys = vec![vec![5.0, 1.0], vec![5.0, -1.0]];
        let r = check_translative(&phi, &[1.0, 0.0], &ys, &[-3.0, 2.0], 1e-9).unwrap();
        assert!(r.passed());
        // a functional that turns +∞ into a finite value under translation
        let bad = FunctionalHandle::new(1, "bad", |y| {
            Ok(if y[0] > 0.0 { ExtReal::PosInf } else { ExtReal::from(y[0]) })
        });
        let r = check_translative(&bad, &[1.0], &[vec![0.5]], &[-1.0], 1e-9).unwrap();
        assert!(!r.passed());
        assert_eq!(r.violations[0].gap, ExtReal::PosInf);
    }

    #[test]
    fn sublevel_examples() {
        let phi = box_phi(vec![0.0, 0.0], vec![1.0, 1.0]);
        let mut s = Sampler::default();
        let ys = s.box_points(2, 200, 10.0);
        let ts = s.scalars(5, -5.0, 5.0);
        assert!(check_sublevel_uniform(&phi, &[1.0, 1.0], &ys, &ts, 1e-9).unwrap().passed());

        let norm = FunctionalHandle::euclidean_norm(2);
        let r = check_sublevel_uniform(&norm, &[1.0, 1.0], &[vec![0.0, 0.0]], &[1.0], 1e-9).unwrap();
        assert!(!r.passed());
        let r = check_sublevel_uniform(&norm, &[1.0, 1.0], &ys, &[0.0], 1e-9).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn monotone_examples() {
        let phi = box_phi(vec![0.0, 0.0], vec![1.0, 1.0]);
        let mut s = Sampler::default();
        let base = s.box_points(2, 40, 10.0);
        let plus = ConeSpec::nonnegative_orthant(2);
        let f = s.displaced_cloud(&base, &plus, 2, 3.0);
        let r = check_monotone(&phi, &plus, &f, 2000, 1e-9).unwrap();
        assert!(r.passed());
        assert!(r.samples_tested > 100);

        let minus = ConeSpec::nonpositive_orthant(2);
        let f = s.displaced_cloud(&base, &minus, 2, 3.0);
        let r = check_monotone(&phi, &minus, &f, 2000, 1e-9).unwrap();
        assert!(!r.passed());

        let zero = ConeSpec::zero(2);
        let r = check_monotone(&neg_norm(2), &zero, &base, 2000, 1e-9).unwrap();
        assert!(r.passed());

        assert!(matches!(
            check_monotone(&phi, &plus, &[], 10, 1e-9),
            Err(Error::EmptySampleSet)
        ));
    }

    #[test]
    fn strict_monotone_examples() {
        let plus = ConeSpec::nonnegative_orthant(2);
        let sum = FunctionalHandle::new(2, "sum", |y| {
            crate::polyhedral::phi_halfspace(&[1.0, 1.0], 0.0, &[0.5, 0.5], y)
        });
        assert_eq!(sum.eval(&[2.0, 3.0]).unwrap(), ExtReal::finite(5.0));
        let mut s = Sampler::default();
        let base = s.box_points(2, 40, 10.0);
        let f = s.displaced_cloud(&base, &plus, 2, 3.0);
        assert!(check_strict_monotone(&sum, &plus, &f, 2000, 1e-9).unwrap().passed());

        let phi = box_phi(vec![0.0, 0.0], vec![1.0, 1.0]);
        let f = vec![vec![0.0, 5.0], vec![1.0, 5.0]];
        let r = check_strict_monotone(&phi, &plus, &f, 10, 1e-9).unwrap();
        assert!(!r.passed());
        assert_eq!(r.violations[0].input, vec![vec![0.0, 5.0], vec![1.0, 5.0]]);

        let r = check_strict_monotone(&phi, &plus, &[vec![1.0, 1.0]], 10, 1e-9).unwrap();
        assert!(r.passed());
        assert_eq!(r.samples_tested, 0);
    }

    #[test]
    fn convex_examples() {
        let h = HalfspaceSystem::new(
            vec![vec![1.0, 2.0], vec![3.0, -1.0], vec![0.5, 0.5]],
            vec![1.0, -2.0, 0.0],
        )
        .unwrap();
        let phi = FunctionalHandle::polyhedral(h, &[1.0, 1.0]).unwrap();
        let mut s = Sampler::default();
        let ys = s.box_points(2, 300, 10.0);
        let lambdas = [0.1, 0.5, 0.9];
        assert!(check_convex(&phi, &ys, &lambdas, 1e-9).unwrap().passed());
        assert!(!check_convex(&neg_norm(2), &ys, &lambdas, 1e-9).unwrap().passed());
        let same = vec![vec![1.0, 2.0], vec![1.0, 2.0]];
        assert!(check_convex(&neg_norm(2), &same, &[0.5], 1e-9).unwrap().passed());
        assert!(check_convex(&phi, &ys, &[0.0], 1e-9).is_err());
    }

    #[test]
    fn convex_skips_neg_inf_segments() {
        let single = HalfspaceSystem::halfspace(vec![1.0, 0.0], 0.0).unwrap();
        let phi = FunctionalHandle::polyhedral(single, &[0.0, 1.0]).unwrap();
        let ys = vec![vec![-1.0, 0.0], vec![1.0, 0.0], vec![2.0, 0.0]];
        let r = check_convex(&phi, &ys, &[0.5], 1e-9).unwrap();
        assert!(r.passed());
        assert_eq!(r.skipped, 2);
        assert_eq!(r.samples_tested, 1);
    }

    #[test]
    fn homog_examples() {
        let mut s = Sampler::default();
        let ys = s.box_points(2, 100, 10.0);
        let lambdas = [0.5, 2.0, 7.0];
        let cone = box_phi(vec![0.0, 0.0], vec![1.0, 1.0]);
        assert!(check_pos_homog(&cone, &ys, &lambdas, 1e-9).unwrap().passed());
        let shifted = box_phi(vec![1.0, 1.0], vec![1.0, 1.0]);
        let r = check_pos_homog(&shifted, &[vec![0.0, 0.0]], &[2.0], 1e-9).unwrap();
        assert!(!r.passed());
        assert_eq!(r.violations[0].lhs, ExtReal::finite(-1.0));
        assert_eq!(r.violations[0].rhs, ExtReal::finite(-2.0));
        assert!(check_pos_homog(&shifted, &ys, &[1.0], 1e-9).unwrap().passed());
    }

    #[test]
    fn subadditive_examples() {
        let mut s = Sampler::default();
        let ys = s.box_points(2, 100, 10.0);
        let k = [1.0, 1.0];
        let good = FunctionalHandle::polyhedral(HalfspaceSystem::boxed(vec![-1.0, 0.0]).unwrap(), &k).unwrap();
        assert!(check_subadditive(&good, &ys, 5000, 1e-9).unwrap().passed());
        let bad = FunctionalHandle::polyhedral(HalfspaceSystem::boxed(vec![1.0, 1.0]).unwrap(), &k).unwrap();
        let r = check_subadditive(&bad, &ys, 5000, 1e-9).unwrap();
        assert!(!r.passed());
        // y² = 0 with φ(0) ≥ 0
        let zero_pair = vec![vec![3.0, -2.0], vec![0.0, 0.0]];
        assert!(check_subadditive(&good, &zero_pair, 10, 1e-9).unwrap().passed());
    }

    #[test]
    fn subadditive_skips_indeterminate() {
        let single = HalfspaceSystem::halfspace(vec![1.0, 0.0], 0.0).unwrap();
        let phi = FunctionalHandle::polyhedral(single, &[0.0, 1.0]).unwrap();
        let ys = vec![vec![-1.0, 0.0], vec![1.0, 0.0]];
        let r = check_subadditive(&phi, &ys, 10, 1e-9).unwrap();
        assert_eq!(r.skipped, 1);
        assert!(r.passed());
    }

    #[test]
    fn report_json_shape() {
        let norm = FunctionalHandle::euclidean_norm(2);
        let r = check_translative(&norm, &[1.0, 1.0], &[vec![1.0, 0.0]], &[1.0], 1e-9).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["name"], "translative");
        assert_eq!(v["samples"], 1);
        assert_eq!(v["verdict"], "fail");
        assert_eq!(v["violations"][0]["input"][0][0], 1.0);
    }

    #[test]
    fn agreement_examples() {
        let exact = box_phi(vec![0.0, 0.0], vec![1.0, 1.0]);
        let shifted = box_phi(vec![1e-12, 0.0], vec![1.0, 1.0]);
        let ys = Sampler::default().box_points(2, 50, 10.0);
        assert!(check_agreement(&exact, &shifted, &ys, 1e-9).unwrap().passed());
        let other = box_phi(vec![0.0, 0.0], vec![1.0, 0.0]);
        let r = check_agreement(&exact, &other, &ys, 1e-9).unwrap().renamed("oracle_equiv");
        assert!(!r.passed());
        assert_eq!(r.name, "oracle_equiv");
    }

    #[test]
    fn sampler_is_deterministic() {
        let a = Sampler::new(7).box_points(3, 10, 1.0);
        let b = Sampler::new(7).box_points(3, 10, 1.0);
        assert_eq!(a, b);
        assert_ne!(a, Sampler::new(8).box_points(3, 10, 1.0));
    }
}
