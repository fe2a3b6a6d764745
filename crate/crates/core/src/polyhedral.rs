//! Exact evaluation of `φ_{A,k}(y) = inf{t : y ∈ A + t·k}` for polyhedral
//! sets `A = {y : Wy ≤ b}`.
//!
//! With `Wk ≥ 0` the feasible set `{t : W(y − tk) ≤ b}` is an up-set and the
//! infimum has a closed form. Rows with `(wⁱ)ᵀk = 0` ("active" rows) never
//! become feasible by moving along `k`; they only restrict the domain. The
//! remaining rows each give a lower bound `((wⁱ)ᵀy − bᵢ)/((wⁱ)ᵀk)` on `t`:
//!
//! | classification | `Wk`                | value                                   |
//! |----------------|---------------------|-----------------------------------------|
//! | `AllActive`    | `Wk = 0`            | `−∞` on `A`, `+∞` elsewhere             |
//! | `Mixed`        | `Wk ≥ 0`, some zero | max of inactive ratios on the domain    |
//! | `NoneActive`   | `Wk > 0`            | max of all ratios, finite everywhere    |
//!
//! A direction with some `(wⁱ)ᵀk < 0` is rejected.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::extreal::ExtReal;
use crate::linalg::{dot, norm2};

/// Relative band under which `(wⁱ)ᵀk` counts as zero.
pub const ACTIVE_TOL: f64 = 1e-12;

/// Relative pivot threshold for [`HalfspaceSystem::solve_shift`].
pub const PIVOT_TOL: f64 = 1e-12;

/// A nonzero direction `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Direction(Vec<f64>);

impl Direction {
    pub fn new(k: Vec<f64>) -> Result<Direction> {
        if k.is_empty() {
            return Err(Error::Invalid("direction has dimension 0".into()));
        }
        if k.iter().any(|x| !x.is_finite()) {
            return Err(Error::Invalid("direction has non-finite entries".into()));
        }
        if k.iter().all(|&x| x == 0.0) {
            return Err(Error::Invalid("direction must be nonzero".into()));
        }
        Ok(Direction(k))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl TryFrom<Vec<f64>> for Direction {
    type Error = Error;

    fn try_from(k: Vec<f64>) -> Result<Direction> {
        Direction::new(k)
    }
}

impl From<Direction> for Vec<f64> {
    fn from(d: Direction) -> Vec<f64> {
        d.0
    }
}

impl std::ops::Deref for Direction {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// `A = {y ∈ ℝ^ℓ : Wy ≤ b}` with `r ≥ 1` nonzero rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSystem", into = "RawSystem")]
pub struct HalfspaceSystem {
    // row-major r×ℓ
    w: Vec<f64>,
    b: Vec<f64>,
    dim: usize,
}

#[derive(Serialize, Deserialize)]
struct RawSystem {
    #[serde(rename = "W")]
    w: Vec<Vec<f64>>,
    b: Vec<f64>,
}

impl TryFrom<RawSystem> for HalfspaceSystem {
    type Error = Error;

    fn try_from(raw: RawSystem) -> Result<Self> {
        HalfspaceSystem::new(raw.w, raw.b)
    }
}

impl From<HalfspaceSystem> for RawSystem {
    fn from(h: HalfspaceSystem) -> RawSystem {
        RawSystem {
            w: h.rows().map(<[f64]>::to_vec).collect(),
            b: h.b,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    /// `Wk = 0`
    AllActive,
    /// `Wk ≥ 0` with both zero and positive entries
    Mixed,
    /// `Wk > 0`
    NoneActive,
    /// some `(wⁱ)ᵀk < 0`
    NotRecession,
}

/// Split of the rows by the sign of `(wⁱ)ᵀk`.
#[derive(Debug, Clone, PartialEq)]
pub struct ActivePartition {
    pub active: Vec<usize>,
    pub inactive: Vec<usize>,
    pub classification: Classification,
    /// `(wⁱ)ᵀk` for every row.
    pub slopes: Vec<f64>,
}

impl ActivePartition {
    fn first_negative(&self, tol_act: f64, h: &HalfspaceSystem, k: &[f64]) -> Option<usize> {
        let kn = norm2(k);
        (0..h.rows_len()).find(|&i| self.slopes[i] < -tol_act * norm2(h.row(i)) * kn)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraicFlags {
    pub convex: bool,
    pub subadditive: bool,
    pub sublinear: bool,
}

impl HalfspaceSystem {
    pub fn new(rows: Vec<Vec<f64>>, b: Vec<f64>) -> Result<HalfspaceSystem> {
        if rows.is_empty() {
            return Err(Error::Invalid(
                "a halfspace system needs at least one row (A must be a proper subset)".into(),
            ));
        }
        if rows.len() != b.len() {
            return Err(Error::DimensionMismatch {
                expected: rows.len(),
                found: b.len(),
            });
        }
        let dim = rows[0].len();
        if dim == 0 {
            return Err(Error::Invalid("dimension must be at least 1".into()));
        }
        let mut w = Vec::with_capacity(rows.len() * dim);
        for (i, row) in rows.iter().enumerate() {
            check_dim(dim, row.len())?;
            if row.iter().any(|x| !x.is_finite()) || !b[i].is_finite() {
                return Err(Error::Invalid(format!("row {i} has non-finite entries")));
            }
            if row.iter().all(|&x| x == 0.0) {
                return Err(Error::Invalid(format!("row {i} is the zero vector")));
            }
            w.extend_from_slice(row);
        }
        Ok(HalfspaceSystem { w, b, dim })
    }

    /// `A = b − ℝ^ℓ₊`, i.e. `W = I`.
    pub fn boxed(b: Vec<f64>) -> Result<HalfspaceSystem> {
        let n = b.len();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        HalfspaceSystem::new(rows, b)
    }

    pub fn halfspace(w: Vec<f64>, b: f64) -> Result<HalfspaceSystem> {
        HalfspaceSystem::new(vec![w], vec![b])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows_len(&self) -> usize {
        self.b.len()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.w[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.w.chunks_exact(self.dim)
    }

    pub fn rhs(&self) -> &[f64] {
        &self.b
    }

    /// `Wy`
    pub fn apply(&self, y: &[f64]) -> Vec<f64> {
        self.rows().map(|row| dot(row, y)).collect()
    }

    fn with_rhs(&self, b: Vec<f64>) -> HalfspaceSystem {
        HalfspaceSystem {
            w: self.w.clone(),
            b,
            dim: self.dim,
        }
    }

    /// Exact test of `Wy ≤ b`.
    pub fn contains(&self, y: &[f64]) -> Result<bool> {
        check_dim(self.dim, y.len())?;
        Ok(self.contains_unchecked(y))
    }

    pub(crate) fn contains_unchecked(&self, y: &[f64]) -> bool {
        self.rows().zip(&self.b).all(|(row, &bi)| dot(row, y) <= bi)
    }

    /// `0⁺A = {y : Wy ≤ 0}`.
    pub fn recession_cone(&self) -> HalfspaceSystem {
        self.with_rhs(vec![0.0; self.rows_len()])
    }

    pub fn classify_direction(&self, k: &[f64], tol_act: f64) -> Result<ActivePartition> {
        check_dim(self.dim, k.len())?;
        let kn = norm2(k);
        let slopes = self.apply(k);
        let mut active = Vec::new();
        let mut inactive = Vec::new();
        let mut negative = false;
        for (i, &s) in slopes.iter().enumerate() {
            let band = tol_act * norm2(self.row(i)) * kn;
            if s.abs() <= band {
                active.push(i);
            } else {
                if s < 0.0 {
                    negative = true;
                }
                inactive.push(i);
            }
        }
        let classification = if negative {
            Classification::NotRecession
        } else if inactive.is_empty() {
            Classification::AllActive
        } else if active.is_empty() {
            Classification::NoneActive
        } else {
            Classification::Mixed
        };
        Ok(ActivePartition {
            active,
            inactive,
            classification,
            slopes,
        })
    }

    fn recession_partition(&self, k: &[f64]) -> Result<ActivePartition> {
        let part = self.classify_direction(k, ACTIVE_TOL)?;
        if part.classification == Classification::NotRecession {
            let row = part
                .first_negative(ACTIVE_TOL, self, k)
                .expect("NotRecession has a negative row");
            return Err(Error::NotRecessionDirection {
                row,
                value: part.slopes[row],
            });
        }
        Ok(part)
    }

    /// `φ_{A,k}(y)`.
    pub fn phi(&self, k: &[f64], y: &[f64]) -> Result<ExtReal> {
        check_dim(self.dim, y.len())?;
        let part = self.recession_partition(k)?;
        Ok(self.phi_partitioned(&part, y))
    }

    /// Evaluates many points against one direction, classifying `k` once.
    pub fn phi_batch(&self, k: &[f64], ys: &[Vec<f64>]) -> Result<Vec<ExtReal>> {
        let part = self.recession_partition(k)?;
        ys.iter()
            .map(|y| {
                check_dim(self.dim, y.len())?;
                Ok(self.phi_partitioned(&part, y))
            })
            .collect()
    }

    pub(crate) fn phi_partitioned(&self, part: &ActivePartition, y: &[f64]) -> ExtReal {
        let satisfied = |i: usize| dot(self.row(i), y) <= self.b[i];
        match part.classification {
            Classification::AllActive => {
                if part.active.iter().all(|&i| satisfied(i)) {
                    ExtReal::NegInf
                } else {
                    ExtReal::PosInf
                }
            }
            Classification::Mixed | Classification::NoneActive => {
                if !part.active.iter().all(|&i| satisfied(i)) {
                    return ExtReal::PosInf;
                }
                let best = part
                    .inactive
                    .iter()
                    .map(|&i| (dot(self.row(i), y) - self.b[i]) / part.slopes[i])
                    .fold(f64::NEG_INFINITY, f64::max);
                ExtReal::from(best)
            }
            Classification::NotRecession => unreachable!("rejected before evaluation"),
        }
    }

    /// `y ∈ dom φ_{A,k}`: every active row holds at `y`.
    pub fn domain_contains(&self, k: &[f64], y: &[f64]) -> Result<bool> {
        check_dim(self.dim, y.len())?;
        let part = self.recession_partition(k)?;
        Ok(part.active.iter().all(|&i| dot(self.row(i), y) <= self.b[i]))
    }

    /// `{y : Wy ≤ b + ε·Wk}`; its functional is `φ_{A,k} − ε`.
    pub fn shift_level(&self, k: &[f64], epsilon: f64) -> Result<HalfspaceSystem> {
        let part = self.recession_partition(k)?;
        let b = self
            .b
            .iter()
            .zip(&part.slopes)
            .map(|(bi, wk)| bi + epsilon * wk)
            .collect();
        Ok(self.with_rhs(b))
    }

    /// `{y : Wy ≤ b + W·y0} = A + y0`; its functional is `y ↦ φ_{A,k}(y − y0)`.
    pub fn shift_point(&self, y0: &[f64]) -> Result<HalfspaceSystem> {
        check_dim(self.dim, y0.len())?;
        let b = self
            .b
            .iter()
            .zip(self.apply(y0))
            .map(|(bi, wy)| bi + wy)
            .collect();
        Ok(self.with_rhs(b))
    }

    /// Solves `W·y0 = s` for square `W` by elimination with partial pivoting,
    /// so that shifting `b` by `s` equals shifting points by `y0`.
    pub fn solve_shift(&self, s: &[f64]) -> Result<Vec<f64>> {
        let n = self.dim;
        if self.rows_len() != n {
            return Err(Error::NotApplicable(format!(
                "solve_shift needs a square matrix, got {}x{}",
                self.rows_len(),
                n
            )));
        }
        check_dim(n, s.len())?;
        let threshold = PIVOT_TOL * self.rows().map(norm2).fold(0.0, f64::max);
        let mut a = self.w.clone();
        let mut rhs = s.to_vec();
        for col in 0..n {
            let (pivot_row, pivot) = (col..n)
                .map(|r| (r, a[r * n + col]))
                .max_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))
                .expect("nonempty range");
            if pivot.abs() <= threshold {
                return Err(Error::SingularMatrix {
                    pivot: pivot.abs(),
                    threshold,
                });
            }
            if pivot_row != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot_row * n + j);
                }
                rhs.swap(col, pivot_row);
            }
            for r in col + 1..n {
                let factor = a[r * n + col] / pivot;
                if factor == 0.0 {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] -= factor * a[col * n + j];
                }
                rhs[r] -= factor * rhs[col];
            }
        }
        let mut x = vec![0.0; n];
        for row in (0..n).rev() {
            let tail: f64 = (row + 1..n).map(|j| a[row * n + j] * x[j]).sum();
            x[row] = (rhs[row] - tail) / a[row * n + row];
        }
        Ok(x)
    }

    /// Convexity, subadditivity (`b ≤ 0`) and sublinearity (`b = 0`) of
    /// `φ_{A,k}`, valid when `Wk ≥ 0` and `Wk ≠ 0`.
    ///
    /// The `b`-sign tests assume every row is irredundant; a redundant row
    /// with positive right-hand side does not affect `A`.
    pub fn algebraic_flags(&self, k: &[f64]) -> Result<AlgebraicFlags> {
        let part = self.classify_direction(k, ACTIVE_TOL)?;
        match part.classification {
            Classification::Mixed | Classification::NoneActive => Ok(AlgebraicFlags {
                convex: true,
                subadditive: self.b.iter().all(|&bi| bi <= 0.0),
                sublinear: self.b.iter().all(|&bi| bi == 0.0),
            }),
            other => Err(Error::NotApplicable(format!(
                "algebraic flags need Wk >= 0 and Wk != 0, direction is {other:?}"
            ))),
        }
    }
}

fn box_partition(k: &[f64]) -> Result<(Vec<bool>, f64)> {
    let kn = norm2(k);
    let band = ACTIVE_TOL * kn;
    let mut active = Vec::with_capacity(k.len());
    for (i, &ki) in k.iter().enumerate() {
        if ki < -band {
            return Err(Error::NotRecessionDirection { row: i, value: ki });
        }
        active.push(ki.abs() <= band);
    }
    Ok((active, band))
}

/// `φ_{A,k}` for `A = b − ℝ^ℓ₊` and `k ≥ 0`: `max_i (yᵢ − bᵢ)/kᵢ` over `kᵢ > 0`,
/// with `yᵢ ≤ bᵢ` required where `kᵢ = 0`.
pub fn phi_box(b: &[f64], k: &[f64], y: &[f64]) -> Result<ExtReal> {
    check_dim(b.len(), k.len())?;
    check_dim(b.len(), y.len())?;
    if k.iter().all(|&x| x == 0.0) {
        return Err(Error::Invalid("direction must be nonzero".into()));
    }
    let (active, _) = box_partition(k)?;
    if active.iter().all(|&a| a) {
        return Ok(if y.iter().zip(b).all(|(yi, bi)| yi <= bi) {
            ExtReal::NegInf
        } else {
            ExtReal::PosInf
        });
    }
    let mut best = f64::NEG_INFINITY;
    for i in 0..b.len() {
        if active[i] {
            if y[i] > b[i] {
                return Ok(ExtReal::PosInf);
            }
        } else {
            best = best.max((y[i] - b[i]) / k[i]);
        }
    }
    Ok(ExtReal::from(best))
}

/// `φ_{A,k}` for a single halfspace `A = {y : wᵀy ≤ b}`.
pub fn phi_halfspace(w: &[f64], b: f64, k: &[f64], y: &[f64]) -> Result<ExtReal> {
    check_dim(w.len(), k.len())?;
    check_dim(w.len(), y.len())?;
    let wk = dot(w, k);
    let band = ACTIVE_TOL * norm2(w) * norm2(k);
    if wk < -band {
        return Err(Error::NotRecessionDirection { row: 0, value: wk });
    }
    let wy = dot(w, y);
    if wk.abs() <= band {
        return Ok(if wy <= b {
            ExtReal::NegInf
        } else {
            ExtReal::PosInf
        });
    }
    Ok(ExtReal::from((wy - b) / wk))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eye2(b: [f64; 2]) -> HalfspaceSystem {
        HalfspaceSystem::boxed(b.to_vec()).unwrap()
    }

    fn e(x: f64) -> ExtReal {
        ExtReal::finite(x)
    }

    #[test]
    fn rejects_degenerate_systems() {
        assert!(HalfspaceSystem::new(vec![], vec![]).is_err());
        assert!(HalfspaceSystem::new(vec![vec![0.0, 0.0]], vec![1.0]).is_err());
        assert!(HalfspaceSystem::new(vec![vec![1.0, f64::NAN]], vec![1.0]).is_err());
        assert!(matches!(
            HalfspaceSystem::new(vec![vec![1.0, 0.0], vec![1.0]], vec![1.0, 2.0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(Direction::new(vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn contains_is_exact() {
        let h = eye2([0.0, 0.0]);
        assert!(h.contains(&[0.0, 0.0]).unwrap());
        assert!(!h.contains(&[0.1, -1.0]).unwrap());
        assert!(h.contains(&[-3.0, -4.0]).unwrap());
        assert!(!h.contains(&[f64::MIN_POSITIVE, 0.0]).unwrap());
        assert!(matches!(h.contains(&[0.0]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn recession_cone_zeroes_rhs() {
        let h = eye2([5.0, 7.0]);
        let cone = h.recession_cone();
        assert_eq!(cone.rhs(), &[0.0, 0.0]);
        assert!(cone.contains(&[-1.0, -1.0]).unwrap());
        assert!(!cone.contains(&[1.0, 0.0]).unwrap());
    }

    #[test]
    fn classification_cases() {
        let h = eye2([0.0, 0.0]);
        let p = h.classify_direction(&[1.0, 1.0], ACTIVE_TOL).unwrap();
        assert_eq!(p.classification, Classification::NoneActive);
        assert!(p.active.is_empty());

        let p = h.classify_direction(&[0.0, 1.0], ACTIVE_TOL).unwrap();
        assert_eq!(p.classification, Classification::Mixed);
        assert_eq!(p.active, vec![0]);
        assert_eq!(p.inactive, vec![1]);

        let single = HalfspaceSystem::halfspace(vec![1.0, 0.0], 0.0).unwrap();
        let p = single.classify_direction(&[0.0, 1.0], ACTIVE_TOL).unwrap();
        assert_eq!(p.classification, Classification::AllActive);

        let p = h.classify_direction(&[-1.0, 1.0], ACTIVE_TOL).unwrap();
        assert_eq!(p.classification, Classification::NotRecession);
    }

    #[test]
    fn active_band_is_relative() {
        let h = HalfspaceSystem::halfspace(vec![1e6, 0.0], 0.0).unwrap();
        // 1e-20 · 1e6 = 1e-14 < 1e-12 · 1e6 · 1
        let p = h.classify_direction(&[1e-20, 1.0], ACTIVE_TOL).unwrap();
        assert_eq!(p.classification, Classification::AllActive);
        let p = h.classify_direction(&[-1e-20, 1.0], ACTIVE_TOL).unwrap();
        assert_eq!(p.classification, Classification::AllActive);
        let p = h.classify_direction(&[1e-9, 1.0], ACTIVE_TOL).unwrap();
        assert_eq!(p.classification, Classification::NoneActive);
    }

    #[test]
    fn phi_examples() {
        let h = eye2([0.0, 0.0]);
        assert_eq!(h.phi(&[1.0, 1.0], &[0.0, 0.0]).unwrap(), e(0.0));
        assert_eq!(h.phi(&[1.0, 1.0], &[2.0, -5.0]).unwrap(), e(2.0));

        let single = HalfspaceSystem::halfspace(vec![1.0, 0.0], 0.0).unwrap();
        assert_eq!(single.phi(&[0.0, 1.0], &[-1.0, 7.0]).unwrap(), ExtReal::NegInf);
        assert_eq!(single.phi(&[0.0, 1.0], &[1.0, 7.0]).unwrap(), ExtReal::PosInf);

        assert_eq!(h.phi(&[0.0, 1.0], &[1.0, 3.0]).unwrap(), ExtReal::PosInf);
        assert_eq!(h.phi(&[0.0, 1.0], &[-1.0, 3.0]).unwrap(), e(3.0));
    }

    #[test]
    fn phi_rejects_bad_direction() {
        let h = eye2([0.0, 0.0]);
        assert!(matches!(
            h.phi(&[-1.0, 1.0], &[0.0, 0.0]),
            Err(Error::NotRecessionDirection { row: 0, .. })
        ));
        assert!(matches!(
            h.phi(&[1.0, 1.0, 1.0], &[0.0, 0.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn box_examples() {
        assert_eq!(phi_box(&[0.0, 0.0], &[1.0, 1.0], &[2.0, 3.0]).unwrap(), e(3.0));
        assert_eq!(phi_box(&[1.0, 1.0], &[1.0, 1.0], &[1.0, 1.0]).unwrap(), e(0.0));
        assert_eq!(phi_box(&[0.0, 0.0], &[1.0, 0.0], &[5.0, 1.0]).unwrap(), ExtReal::PosInf);
        assert!(matches!(
            phi_box(&[0.0, 0.0], &[1.0, -0.5], &[5.0, 1.0]),
            Err(Error::NotRecessionDirection { row: 1, .. })
        ));
    }

    #[test]
    fn halfspace_examples() {
        assert_eq!(phi_halfspace(&[1.0, 2.0], 4.0, &[1.0, 1.0], &[1.0, 0.0]).unwrap(), e(-1.0));
        assert_eq!(
            phi_halfspace(&[1.0, 0.0], 0.0, &[0.0, 1.0], &[-1.0, 9.0]).unwrap(),
            ExtReal::NegInf
        );
        assert_eq!(phi_halfspace(&[1.0, 2.0], 4.0, &[1.0, 1.0], &[4.0, 0.0]).unwrap(), e(0.0));
        assert!(phi_halfspace(&[1.0, 2.0], 4.0, &[-1.0, 0.0], &[4.0, 0.0]).is_err());
    }

    #[test]
    fn domain_examples() {
        let h = eye2([0.0, 0.0]);
        assert!(h.domain_contains(&[0.0, 1.0], &[-1.0, 100.0]).unwrap());
        assert!(!h.domain_contains(&[0.0, 1.0], &[0.5, 0.0]).unwrap());
        assert!(h.domain_contains(&[1.0, 1.0], &[1e9, 1e9]).unwrap());
        let single = HalfspaceSystem::halfspace(vec![1.0, 0.0], 0.0).unwrap();
        assert!(single.domain_contains(&[0.0, 1.0], &[-1.0, 0.0]).unwrap());
        assert!(!single.domain_contains(&[0.0, 1.0], &[1.0, 0.0]).unwrap());
        assert!(h.domain_contains(&[-1.0, 0.0], &[0.0, 0.0]).is_err());
    }

    #[test]
    fn shift_level_examples() {
        let h = eye2([0.0, 0.0]);
        let k = [1.0, 1.0];
        let shifted = h.shift_level(&k, 2.0).unwrap();
        assert_eq!(shifted.rhs(), &[2.0, 2.0]);
        assert_eq!(shifted.phi(&k, &[2.0, -5.0]).unwrap(), e(0.0));
        assert_eq!(h.shift_level(&k, 0.0).unwrap(), h);

        let single = HalfspaceSystem::halfspace(vec![1.0, 0.0], 0.0).unwrap();
        let s = single.shift_level(&[0.0, 1.0], 3.0).unwrap();
        assert_eq!(s, single);
        assert_eq!(s.phi(&[0.0, 1.0], &[-1.0, 0.0]).unwrap().sub_finite(3.0), ExtReal::NegInf);
    }

    #[test]
    fn shift_point_examples() {
        let h = eye2([0.0, 0.0]);
        assert_eq!(h.shift_point(&[0.0, 0.0]).unwrap(), h);
        let shifted = h.shift_point(&[1.0, 1.0]).unwrap();
        let k = [1.0, 1.0];
        assert_eq!(shifted.phi(&k, &[3.0, 2.0]).unwrap(), e(2.0));
        assert_eq!(h.phi(&k, &[2.0, 1.0]).unwrap(), e(2.0));

        let single = HalfspaceSystem::halfspace(vec![1.0, 2.0], 4.0).unwrap();
        assert_eq!(single.shift_point(&[0.0, 1.0]).unwrap().rhs(), &[6.0]);
    }

    #[test]
    fn solve_shift_examples() {
        assert_eq!(eye2([0.0, 0.0]).solve_shift(&[3.0, 4.0]).unwrap(), vec![3.0, 4.0]);
        let diag =
            HalfspaceSystem::new(vec![vec![2.0, 0.0], vec![0.0, 4.0]], vec![0.0, 0.0]).unwrap();
        assert_eq!(diag.solve_shift(&[2.0, 2.0]).unwrap(), vec![1.0, 0.5]);
        let sing =
            HalfspaceSystem::new(vec![vec![1.0, 1.0], vec![1.0, 1.0]], vec![0.0, 0.0]).unwrap();
        assert!(matches!(sing.solve_shift(&[1.0, 2.0]), Err(Error::SingularMatrix { .. })));
        let tall = HalfspaceSystem::new(vec![vec![1.0], vec![2.0]], vec![0.0, 0.0]).unwrap();
        assert!(matches!(tall.solve_shift(&[1.0]), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn solve_shift_needs_pivoting() {
        let h = HalfspaceSystem::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]], vec![0.0, 0.0]).unwrap();
        assert_eq!(h.solve_shift(&[5.0, 7.0]).unwrap(), vec![7.0, 5.0]);
    }

    #[test]
    fn flags_examples() {
        let k = [1.0, 1.0];
        let f = eye2([-1.0, 0.0]).algebraic_flags(&k).unwrap();
        assert_eq!(
            f,
            AlgebraicFlags {
                convex: true,
                subadditive: true,
                sublinear: false
            }
        );
        assert!(eye2([0.0, 0.0]).algebraic_flags(&k).unwrap().sublinear);
        assert!(!eye2([1.0, -1.0]).algebraic_flags(&k).unwrap().subadditive);
        let single = HalfspaceSystem::halfspace(vec![1.0, 0.0], 0.0).unwrap();
        assert!(matches!(
            single.algebraic_flags(&[0.0, 1.0]),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn json_shape() {
        let h: HalfspaceSystem =
            serde_json::from_str(r#"{"W": [[1, 0], [0, 1]], "b": [0, 0.5]}"#).unwrap();
        assert_eq!(h.row(1), &[0.0, 1.0]);
        assert_eq!(h.rhs(), &[0.0, 0.5]);
        let back = serde_json::to_string(&h).unwrap();
        assert_eq!(back, r#"{"W":[[1.0,0.0],[0.0,1.0]],"b":[0.0,0.5]}"#);
        assert!(serde_json::from_str::<HalfspaceSystem>(r#"{"W": [], "b": []}"#).is_err());
    }
}
