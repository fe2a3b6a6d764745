//! Built-in membership predicates.
//!
//! Boxes with open or closed sides compare coordinates against their bounds
//! with a relative snap band of `SNAP_TOL`. A coordinate inside the band
//! counts as lying on the bound, so a grid point like `(i/5, j/5)` is classified
//! as the rational point it stands for.

use serde::{Deserialize, Serialize};

use super::{Contract, Membership};
use crate::error::{check_dim, Error, Result};
use crate::linalg::dot;
use crate::polyhedral::{Classification, HalfspaceSystem, ACTIVE_TOL};

pub const SNAP_TOL: f64 = 16.0 * f64::EPSILON;

#[derive(Debug, Clone)]
pub struct HalfspaceMembership(pub HalfspaceSystem);

impl Membership for HalfspaceMembership {
    fn contains(&self, y: &[f64]) -> bool {
        self.0.contains_unchecked(y)
    }

    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn contract(&self, k: &[f64]) -> Contract {
        match self.0.classify_direction(k, ACTIVE_TOL) {
            Ok(p) if p.classification != Classification::NotRecession => Contract::Holds,
            _ => Contract::Violated,
        }
    }

    fn exact(&self) -> bool {
        true
    }
}

/// One coordinate range of a box; infinite ends are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    #[serde(default)]
    pub lo_open: bool,
    #[serde(default)]
    pub hi_open: bool,
}

impl Interval {
    pub fn closed(lo: f64, hi: f64) -> Interval {
        Interval {
            lo,
            hi,
            lo_open: false,
            hi_open: false,
        }
    }

    pub fn left_open(lo: f64, hi: f64) -> Interval {
        Interval {
            lo,
            hi,
            lo_open: true,
            hi_open: false,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Bound {
    value: f64,
    strict: bool,
    err: f64,
}

fn snap_err(parts: &[f64]) -> f64 {
    SNAP_TOL * parts.iter().fold(1.0, |acc, x| acc + x.abs())
}

// Pairwise test that an intersection of 1-d intervals is nonempty, with
// bounds closer than their combined snap error treated as equal.
fn intervals_meet(lowers: &[Bound], uppers: &[Bound]) -> bool {
    lowers.iter().all(|l| {
        uppers.iter().all(|u| {
            let eps = l.err + u.err;
            if (l.value - u.value).abs() <= eps {
                !l.strict && !u.strict
            } else {
                l.value < u.value
            }
        })
    })
}

/// Product of intervals, `Π [loᵢ, hiᵢ]` with per-side openness.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxSet {
    pub intervals: Vec<Interval>,
}

impl BoxSet {
    pub fn new(intervals: Vec<Interval>) -> Result<BoxSet> {
        if intervals.is_empty() {
            return Err(Error::Invalid("box needs at least one interval".into()));
        }
        for (i, iv) in intervals.iter().enumerate() {
            if iv.lo.is_nan() || iv.hi.is_nan() || iv.lo > iv.hi {
                return Err(Error::Invalid(format!("interval {i} is malformed")));
            }
        }
        Ok(BoxSet { intervals })
    }

    /// The single point `p` as a degenerate box.
    pub fn point(p: &[f64]) -> BoxSet {
        BoxSet {
            intervals: p.iter().map(|&x| Interval::closed(x, x)).collect(),
        }
    }

    fn dim(&self) -> usize {
        self.intervals.len()
    }

    fn contains(&self, y: &[f64]) -> bool {
        self.hull_contains(y, None)
    }

    /// `y ∈ self − ℝ₊·k`, i.e. `y + s·k ∈ self` for some `s ≥ 0`.
    /// With `k = None` this is plain membership (`s = 0`).
    fn hull_contains(&self, y: &[f64], k: Option<&[f64]>) -> bool {
        let mut lowers = vec![Bound {
            value: 0.0,
            strict: false,
            err: 0.0,
        }];
        let mut uppers = Vec::new();
        if k.is_none() {
            uppers.push(Bound {
                value: 0.0,
                strict: false,
                err: 0.0,
            });
        }
        for (i, iv) in self.intervals.iter().enumerate() {
            let ki = k.map_or(0.0, |k| k[i]);
            let yi = y[i];
            if ki == 0.0 {
                // bound on y itself, expressed as 0 ⊲ hi − y and 0 ⊲ y − lo
                if iv.lo.is_finite() {
                    let lo = Bound { value: iv.lo, strict: iv.lo_open, err: 0.0 };
                    let at = Bound { value: yi, strict: iv.lo_open, err: snap_err(&[iv.lo, yi]) };
                    if !intervals_meet(&[lo], &[at]) {
                        return false;
                    }
                }
                if iv.hi.is_finite() {
                    let at = Bound { value: yi, strict: iv.hi_open, err: snap_err(&[iv.hi, yi]) };
                    let hi = Bound { value: iv.hi, strict: iv.hi_open, err: 0.0 };
                    if !intervals_meet(&[at], &[hi]) {
                        return false;
                    }
                }
                continue;
            }
            let scale = ki.abs();
            let mut push = |edge: f64, open: bool, is_lo_edge: bool| {
                let b = Bound {
                    value: (edge - yi) / ki,
                    strict: open,
                    err: snap_err(&[edge, yi]) / scale,
                };
                // lo ⊲ y + s·k: a lower bound on s when k > 0
                if is_lo_edge == (ki > 0.0) {
                    lowers.push(b);
                } else {
                    uppers.push(b);
                }
            };
            if iv.lo.is_finite() {
                push(iv.lo, iv.lo_open, true);
            } else if iv.lo == f64::INFINITY {
                return false;
            }
            if iv.hi.is_finite() {
                push(iv.hi, iv.hi_open, false);
            } else if iv.hi == f64::NEG_INFINITY {
                return false;
            }
        }
        intervals_meet(&lowers, &uppers)
    }
}

/// Union of boxes, optionally replaced by its hull `A − ℝ₊·k`.
///
/// `φ_{A,k} = φ_{A−ℝ₊k,k}` for every set `A`, and the hull always satisfies the
/// recession contract for `k`, so bisection applies to it even when `A` itself
/// is bounded.
#[derive(Debug, Clone)]
pub struct BoxUnion {
    pub boxes: Vec<BoxSet>,
    pub hull_direction: Option<Vec<f64>>,
}

impl BoxUnion {
    pub fn new(boxes: Vec<BoxSet>, hull_direction: Option<Vec<f64>>) -> Result<BoxUnion> {
        let dim = boxes
            .first()
            .ok_or_else(|| Error::Invalid("union of zero boxes".into()))?
            .dim();
        for b in &boxes {
            check_dim(dim, b.dim())?;
        }
        if let Some(k) = &hull_direction {
            check_dim(dim, k.len())?;
        }
        Ok(BoxUnion {
            boxes,
            hull_direction,
        })
    }
}

impl Membership for BoxUnion {
    fn contains(&self, y: &[f64]) -> bool {
        let k = self.hull_direction.as_deref();
        self.boxes.iter().any(|b| match k {
            Some(k) => b.hull_contains(y, Some(k)),
            None => b.contains(y),
        })
    }

    fn dim(&self) -> usize {
        self.boxes[0].dim()
    }

    fn contract(&self, k: &[f64]) -> Contract {
        match &self.hull_direction {
            Some(h) if parallel_positive(h, k) => Contract::Holds,
            _ => {
                // a box with every coordinate either unbounded below along k or
                // fixed by k = 0 is closed under −ℝ₊k
                let ok = self.boxes.iter().all(|b| {
                    b.intervals.iter().zip(k).all(|(iv, &ki)| {
                        ki == 0.0
                            || (ki > 0.0 && iv.lo == f64::NEG_INFINITY)
                            || (ki < 0.0 && iv.hi == f64::INFINITY)
                    })
                });
                if ok {
                    Contract::Holds
                } else {
                    Contract::Violated
                }
            }
        }
    }
}

fn parallel_positive(a: &[f64], b: &[f64]) -> bool {
    let ab = dot(a, b);
    let aa = dot(a, a);
    let bb = dot(b, b);
    ab > 0.0 && (ab * ab - aa * bb).abs() <= 1e-12 * aa * bb
}

/// `(0,2] × [0,2]`.
pub fn half_open_box() -> BoxSet {
    BoxSet {
        intervals: vec![Interval::left_open(0.0, 2.0), Interval::closed(0.0, 2.0)],
    }
}

/// The direction `(−1, −1)` used with [`half_open_box`].
pub const HALF_OPEN_BOX_DIRECTION: [f64; 2] = [-1.0, -1.0];

/// `(0,2] × [0,2] − ℝ₊k` with `k = (−1,−1)`; with `with_corner`, the corner
/// `(0,2)` is added to the box before taking the hull.
pub fn half_open_box_example(with_corner: bool) -> BoxUnion {
    let mut boxes = vec![half_open_box()];
    if with_corner {
        boxes.push(BoxSet::point(&[0.0, 2.0]));
    }
    BoxUnion {
        boxes,
        hull_direction: Some(HALF_OPEN_BOX_DIRECTION.to_vec()),
    }
}

/// The lexicographic cone `{y₁ > 0} ∪ {y₁ = 0, y₂ ≥ 0}` in ℝ².
#[derive(Debug, Clone, Copy, Default)]
pub struct LexCone;

impl LexCone {
    fn member(y: &[f64]) -> bool {
        y[0] > 0.0 || (y[0] == 0.0 && y[1] >= 0.0)
    }
}

impl Membership for LexCone {
    fn contains(&self, y: &[f64]) -> bool {
        Self::member(y)
    }

    fn dim(&self) -> usize {
        2
    }

    // the cone is its own recession cone, so the contract is −k ∈ A
    fn contract(&self, k: &[f64]) -> Contract {
        if Self::member(&[-k[0], -k[1]]) {
            Contract::Holds
        } else {
            Contract::Violated
        }
    }
}
