use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{dot, norm2};
use crate::polyhedral::HalfspaceSystem;

/// A convex cone `B ⊆ ℝ^ℓ`, as `{d : Wd ≤ 0}` or as the nonnegative hull of
/// finitely many generators. An empty generator list is `{0}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum ConeSpec {
    Halfspaces {
        #[serde(rename = "W")]
        w: Vec<Vec<f64>>,
    },
    Generators {
        dim: usize,
        generators: Vec<Vec<f64>>,
    },
}

const MEMBER_TOL: f64 = 1e-10;

impl ConeSpec {
    pub fn halfspaces(w: Vec<Vec<f64>>) -> Result<ConeSpec> {
        // validates shape and nonzero rows
        let b = vec![0.0; w.len()];
        HalfspaceSystem::new(w.clone(), b)?;
        Ok(ConeSpec::Halfspaces { w })
    }

    pub fn generators(dim: usize, generators: Vec<Vec<f64>>) -> Result<ConeSpec> {
        if dim == 0 {
            return Err(Error::Invalid("cone dimension must be at least 1".into()));
        }
        for g in &generators {
            check_dim(dim, g.len())?;
            if g.iter().all(|&x| x == 0.0) || g.iter().any(|x| !x.is_finite()) {
                return Err(Error::Invalid("cone generators must be finite and nonzero".into()));
            }
        }
        Ok(ConeSpec::Generators { dim, generators })
    }

    /// `ℝ^ℓ₊`
    pub fn nonnegative_orthant(dim: usize) -> ConeSpec {
        ConeSpec::Generators {
            dim,
            generators: unit_vectors(dim, 1.0),
        }
    }

    /// `−ℝ^ℓ₊`
    pub fn nonpositive_orthant(dim: usize) -> ConeSpec {
        ConeSpec::Generators {
            dim,
            generators: unit_vectors(dim, -1.0),
        }
    }

    /// `{0}`
    pub fn zero(dim: usize) -> ConeSpec {
        ConeSpec::Generators {
            dim,
            generators: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            ConeSpec::Halfspaces { w } => w[0].len(),
            ConeSpec::Generators { dim, .. } => *dim,
        }
    }

    /// `B × (−ℝ₊)` in ℝ^{ℓ+1}.
    pub fn times_nonpositive_ray(&self) -> ConeSpec {
        match self {
            ConeSpec::Halfspaces { w } => {
                let n = self.dim();
                let mut rows: Vec<Vec<f64>> = w
                    .iter()
                    .map(|r| {
                        let mut r = r.clone();
                        r.push(0.0);
                        r
                    })
                    .collect();
                let mut last = vec![0.0; n + 1];
                last[n] = 1.0;
                rows.push(last);
                ConeSpec::Halfspaces { w: rows }
            }
            ConeSpec::Generators { dim, generators } => {
                let mut gens: Vec<Vec<f64>> = generators
                    .iter()
                    .map(|g| {
                        let mut g = g.clone();
                        g.push(0.0);
                        g
                    })
                    .collect();
                let mut last = vec![0.0; dim + 1];
                last[*dim] = -1.0;
                gens.push(last);
                ConeSpec::Generators {
                    dim: dim + 1,
                    generators: gens,
                }
            }
        }
    }

    /// `d ∈ B` up to a small relative residual.
    pub fn contains(&self, d: &[f64]) -> bool {
        if d.len() != self.dim() {
            return false;
        }
        let scale = 1.0 + norm2(d);
        match self {
            ConeSpec::Halfspaces { w } => w.iter().all(|r| dot(r, d) <= MEMBER_TOL * scale * norm2(r)),
            ConeSpec::Generators { generators, .. } => {
                if generators.is_empty() {
                    return d.iter().all(|&x| x.abs() <= MEMBER_TOL * scale);
                }
                let (_, residual) = nnls(generators, d);
                residual <= MEMBER_TOL * scale
            }
        }
    }

    /// A random element of `B` with norm at most about `radius`; `None` when
    /// rejection sampling of a halfspace cone finds nothing.
    pub fn sample<R: Rng>(&self, rng: &mut R, radius: f64) -> Option<Vec<f64>> {
        match self {
            ConeSpec::Generators { dim, generators } => {
                if generators.is_empty() {
                    return Some(vec![0.0; *dim]);
                }
                let mut d = vec![0.0; *dim];
                for g in generators {
                    // sparse nonnegative weights so faces get sampled too
                    if rng.gen_bool(0.5) {
                        let c: f64 = rng.gen_range(0.0..1.0);
                        for (di, gi) in d.iter_mut().zip(g) {
                            *di += c * gi;
                        }
                    }
                }
                let n = norm2(&d);
                if n == 0.0 {
                    let g = &generators[rng.gen_range(0..generators.len())];
                    let r = radius * rng.gen_range(0.0..1.0) / norm2(g);
                    return Some(g.iter().map(|x| r * x).collect());
                }
                let r = radius * rng.gen_range(0.0..1.0);
                Some(d.iter().map(|x| r * x / n).collect())
            }
            ConeSpec::Halfspaces { .. } => {
                let dim = self.dim();
                for _ in 0..1000 {
                    let d: Vec<f64> = (0..dim).map(|_| rng.gen_range(-radius..radius)).collect();
                    if self.contains(&d) {
                        return Some(d);
                    }
                }
                None
            }
        }
    }
}

fn unit_vectors(dim: usize, sign: f64) -> Vec<Vec<f64>> {
    (0..dim)
        .map(|i| {
            let mut e = vec![0.0; dim];
            e[i] = sign;
            e
        })
        .collect()
}

/// Lawson–Hanson nonnegative least squares `min ‖Σ λⱼ gⱼ − d‖, λ ≥ 0`.
/// Returns the coefficients and the residual norm.
pub fn nnls(generators: &[Vec<f64>], d: &[f64]) -> (Vec<f64>, f64) {
    let m = generators.len();
    let n = d.len();
    let residual_of = |x: &[f64]| -> Vec<f64> {
        let mut r = d.to_vec();
        for (g, &xj) in generators.iter().zip(x) {
            for (ri, gi) in r.iter_mut().zip(g) {
                *ri -= xj * gi;
            }
        }
        r
    };
    let mut x = vec![0.0; m];
    let mut passive = vec![false; m];
    let tol = 1e-12 * (1.0 + norm2(d)) * generators.iter().map(|g| norm2(g)).fold(1.0, f64::max);

    for _outer in 0..3 * m + 3 {
        let r = residual_of(&x);
        let grad: Vec<f64> = generators.iter().map(|g| dot(g, &r)).collect();
        let candidate = (0..m)
            .filter(|&j| !passive[j])
            .max_by(|&a, &b| grad[a].total_cmp(&grad[b]));
        match candidate {
            Some(j) if grad[j] > tol => passive[j] = true,
            _ => break,
        }
        // inner loop: keep the passive least-squares solution feasible
        loop {
            let idx: Vec<usize> = (0..m).filter(|&j| passive[j]).collect();
            let z_p = least_squares(&idx.iter().map(|&j| generators[j].as_slice()).collect::<Vec<_>>(), d, n);
            let mut z = vec![0.0; m];
            for (p, &j) in idx.iter().enumerate() {
                z[j] = z_p[p];
            }
            if idx.iter().all(|&j| z[j] > 0.0) {
                x = z;
                break;
            }
            let mut alpha = f64::INFINITY;
            for &j in &idx {
                if z[j] <= 0.0 {
                    let denom = x[j] - z[j];
                    if denom > 0.0 {
                        alpha = alpha.min(x[j] / denom);
                    }
                }
            }
            if !alpha.is_finite() {
                alpha = 0.0;
            }
            for j in 0..m {
                x[j] += alpha * (z[j] - x[j]);
            }
            for &j in &idx {
                if x[j] <= 1e-15 {
                    x[j] = 0.0;
                    passive[j] = false;
                }
            }
            if !passive.iter().any(|&p| p) {
                break;
            }
        }
    }
    let r = residual_of(&x);
    (x, norm2(&r))
}

// Unconstrained least squares via normal equations with a tiny ridge.
fn least_squares(cols: &[&[f64]], d: &[f64], n: usize) -> Vec<f64> {
    let p = cols.len();
    let mut a = vec![0.0; p * p];
    let mut rhs = vec![0.0; p];
    for i in 0..p {
        for j in 0..p {
            a[i * p + j] = dot(cols[i], cols[j]);
        }
        a[i * p + i] += 1e-14 * (1.0 + a[i * p + i]);
        rhs[i] = dot(cols[i], &d[..n]);
    }
    // Gaussian elimination with partial pivoting
    for c in 0..p {
        let piv = (c..p).max_by(|&x, &y| a[x * p + c].abs().total_cmp(&a[y * p + c].abs())).unwrap();
        if piv != c {
            for j in 0..p {
                a.swap(c * p + j, piv * p + j);
            }
            rhs.swap(c, piv);
        }
        let pv = a[c * p + c];
        if pv == 0.0 {
            continue;
        }
        for r in c + 1..p {
            let f = a[r * p + c] / pv;
            for j in c..p {
                a[r * p + j] -= f * a[c * p + j];
            }
            rhs[r] -= f * rhs[c];
        }
    }
    let mut x = vec![0.0; p];
    for r in (0..p).rev() {
        let tail: f64 = (r + 1..p).map(|j| a[r * p + j] * x[j]).sum();
        let pv = a[r * p + r];
        x[r] = if pv == 0.0 { 0.0 } else { (rhs[r] - tail) / pv };
    }
    x
}
