//! Seeded random instances for property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::epigraph::{AffineTerm, ExtendedFunction, FunctionSpec};
use crate::extreal::ExtReal;
use crate::linalg::{dot, norm2};
use crate::polyhedral::HalfspaceSystem;
use crate::props::Sampler;

/// Inactive rows keep `w·k` at least this fraction of `‖w‖‖k‖`.
pub const MIN_SLOPE: f64 = 1e-3;
pub const ENTRY_RANGE: f64 = 5.0;

/// Which rows of a generated system are orthogonal to `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Activity {
    NoneActive,
    Mixed,
    AllActive,
}

/// Sign pattern of `b` for systems with `Wk > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhsClass {
    Zero,
    /// `b ≤ 0` with at least one negative entry.
    NonPositive,
    /// Every row touches a ball `B(c, R)` and some `bᵢ ≥ 0.1`, so all rows
    /// define facets.
    SomePositive,
}

#[derive(Debug, Clone)]
pub struct SystemGenerator {
    sampler: Sampler,
}

impl SystemGenerator {
    pub fn new(seed: u64) -> SystemGenerator {
        SystemGenerator {
            sampler: Sampler::new(seed),
        }
    }

    fn uniform(&mut self, half_width: f64) -> f64 {
        self.sampler.rng().gen_range(-half_width..=half_width)
    }

    fn vector(&mut self, dim: usize) -> Vec<f64> {
        (0..dim).map(|_| self.uniform(ENTRY_RANGE)).collect()
    }

    /// A row with `w·k ≥ MIN_SLOPE·‖w‖‖k‖`; drawing then negating is the same
    /// as rejecting rows with `w·k < 0`.
    fn inactive_row(&mut self, k: &[f64]) -> Vec<f64> {
        loop {
            let w = self.vector(k.len());
            let s = dot(&w, k);
            if s.abs() >= MIN_SLOPE * norm2(&w) * norm2(k) {
                return if s > 0.0 { w } else { w.iter().map(|x| -x).collect() };
            }
        }
    }

    /// A nonzero row supported where `k` is exactly zero, so `w·k = 0` holds
    /// exactly in floating point.
    fn active_row(&mut self, k: &[f64]) -> Vec<f64> {
        loop {
            let w: Vec<f64> = k
                .iter()
                .map(|&ki| if ki == 0.0 { self.uniform(ENTRY_RANGE) } else { 0.0 })
                .collect();
            if w.iter().any(|&x| x != 0.0) {
                return w;
            }
        }
    }

    fn direction(&mut self, dim: usize, zeros: usize) -> Vec<f64> {
        let mut idx: Vec<usize> = (0..dim).collect();
        idx.shuffle(self.sampler.rng());
        loop {
            let mut k = self.vector(dim);
            for &i in &idx[..zeros] {
                k[i] = 0.0;
            }
            if k.iter().any(|&x| x != 0.0) {
                return k;
            }
        }
    }

    /// `(W, b, k)` with `Wk ≥ 0` and the requested activity pattern. Patterns
    /// that need zero coordinates of `k` fall back to `NoneActive` when
    /// `dim = 1` (and `Mixed` to `AllActive` or `NoneActive` when `rows = 1`).
    pub fn recession_system(
        &mut self,
        dim: usize,
        rows: usize,
        activity: Activity,
    ) -> (HalfspaceSystem, Vec<f64>) {
        let activity = match activity {
            _ if dim == 1 => Activity::NoneActive,
            Activity::Mixed if rows == 1 => Activity::NoneActive,
            a => a,
        };
        let zeros = match activity {
            Activity::NoneActive => self.sampler.rng().gen_range(0..dim),
            _ => self.sampler.rng().gen_range(1..dim),
        };
        let k = self.direction(dim, zeros);
        let n_active = match activity {
            Activity::NoneActive => 0,
            Activity::Mixed => self.sampler.rng().gen_range(1..rows),
            Activity::AllActive => rows,
        };
        let mut w: Vec<Vec<f64>> = (0..n_active).map(|_| self.active_row(&k)).collect();
        w.extend((n_active..rows).map(|_| self.inactive_row(&k)));
        w.shuffle(self.sampler.rng());
        let b = self.vector(rows);
        (HalfspaceSystem::new(w, b).expect("well-formed rows"), k)
    }

    /// `ℓ ∈ {1..5}`, `r ∈ {1..8}` and a random activity pattern.
    pub fn any_recession_system(&mut self) -> (HalfspaceSystem, Vec<f64>) {
        let dim = self.sampler.rng().gen_range(1..=5);
        let rows = self.sampler.rng().gen_range(1..=8);
        let activity = *[Activity::NoneActive, Activity::Mixed, Activity::AllActive]
            .choose(self.sampler.rng())
            .expect("nonempty");
        self.recession_system(dim, rows, activity)
    }

    /// `(W, b, k)` with `Wk > 0` componentwise and `b` in the given class.
    pub fn positive_system(&mut self, dim: usize, rows: usize, class: RhsClass) -> (HalfspaceSystem, Vec<f64>) {
        let k = self.direction(dim, 0);
        let w: Vec<Vec<f64>> = (0..rows).map(|_| self.inactive_row(&k)).collect();
        let b = match class {
            RhsClass::Zero => vec![0.0; rows],
            RhsClass::NonPositive => {
                let mut b: Vec<f64> = (0..rows)
                    .map(|_| if self.sampler.rng().gen_bool(0.5) { 0.0 } else { -self.uniform(ENTRY_RANGE).abs() })
                    .collect();
                let i = self.sampler.rng().gen_range(0..rows);
                b[i] = -self.sampler.rng().gen_range(0.1..=ENTRY_RANGE);
                b
            }
            RhsClass::SomePositive => loop {
                let c: Vec<f64> = (0..dim).map(|_| self.uniform(2.0)).collect();
                let r = self.sampler.rng().gen_range(0.5..=3.0);
                let b: Vec<f64> = w.iter().map(|wi| dot(wi, &c) + r * norm2(wi)).collect();
                if b.iter().any(|&bi| bi >= 0.1) {
                    break b;
                }
            },
        };
        (HalfspaceSystem::new(w, b).expect("well-formed rows"), k)
    }

    /// A square system whose matrix has all pivots above `1e-3·max‖wᵢ‖`.
    pub fn regular_square(&mut self, dim: usize) -> HalfspaceSystem {
        loop {
            let w: Vec<Vec<f64>> = (0..dim).map(|_| self.vector(dim)).collect();
            let b = self.vector(dim);
            let h = HalfspaceSystem::new(w.clone(), b).expect("well-formed rows");
            if min_pivot(&w) >= 1e-3 * w.iter().map(|r| norm2(r)).fold(0.0, f64::max) {
                return h;
            }
        }
    }

    pub fn points(&mut self, dim: usize, count: usize, half_width: f64) -> Vec<Vec<f64>> {
        self.sampler.box_points(dim, count, half_width)
    }

    pub fn scalar(&mut self, lo: f64, hi: f64) -> f64 {
        self.sampler.rng().gen_range(lo..hi)
    }

    pub fn sampler(&mut self) -> &mut Sampler {
        &mut self.sampler
    }
}

fn min_pivot(w: &[Vec<f64>]) -> f64 {
    let n = w.len();
    let mut a: Vec<Vec<f64>> = w.to_vec();
    let mut smallest = f64::INFINITY;
    for col in 0..n {
        let p = (col..n)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .expect("nonempty");
        a.swap(col, p);
        let pivot = a[col][col];
        smallest = smallest.min(pivot.abs());
        if pivot == 0.0 {
            return 0.0;
        }
        let (head, tail) = a.split_at_mut(col + 1);
        let pivot_row = &head[col];
        for row in tail.iter_mut() {
            let f = row[col] / pivot;
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= f * p;
            }
        }
    }
    smallest
}

/// One instance of every built-in function family on ℝⁿ, `n ≥ 2`.
pub fn builtin_functions(n: usize) -> Vec<ExtendedFunction> {
    assert!(n >= 2, "built-in fixtures need n >= 2");
    let e = |i: usize, v: f64| {
        let mut c = vec![0.0; n];
        c[i] = v;
        c
    };
    let max_terms = vec![
        AffineTerm { c: e(0, 1.0), c0: 0.5 },
        AffineTerm { c: e(1, -2.0), c0: -1.0 },
        AffineTerm { c: vec![0.25; n], c0: 0.0 },
    ];
    let mut half_w = vec![0.0; n];
    half_w[0] = 1.0;
    half_w[1] = 1.0;
    let half = HalfspaceSystem::halfspace(half_w, 1.0).expect("nonzero row");
    vec![
        ExtendedFunction::affine(e(1, 3.0), -2.0),
        ExtendedFunction::max_affine(max_terms.clone()),
        ExtendedFunction::abs_sum(n),
        ExtendedFunction::neg_min(n),
        ExtendedFunction::indicator_plus(FunctionSpec::MaxAffine { terms: max_terms }, half),
        ExtendedFunction::constant(n, ExtReal::finite(1.5)),
        ExtendedFunction::constant(n, ExtReal::PosInf),
        ExtendedFunction::constant(n, ExtReal::NegInf),
    ]
    .into_iter()
    .map(|f| f.expect("valid fixture"))
    .collect()
}
