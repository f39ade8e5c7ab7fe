//! Principal `T^r` bundles over products of Fano Kähler–Einstein factors.
//!
//! Each factor `B_i` carries `Ric = q_i g_i`, has real dimension `n_i` and is
//! scaled to `ǧ_i = x_i g_i`. The bundle is classified by an integer `r × m`
//! matrix `b`, and the flat torus fiber carries the metric `ĝ`. With column Gram
//! matrix `C = bᵀĝb` the Einstein equations for this ansatz read
//!
//! ```text
//! q_i/x_i = E + C_ii/(2x_i²)                 (horizontal)
//! ¼·b·diag(n_i/x_i²)·bᵀ = E·ĝ⁻¹              (vertical)
//! E = (1/(4r)) Σ_j n_j C_jj/x_j²             (trace of the vertical equation)
//! ```
//!
//! On the span of `π*(ǧ_i/n_i − ǧ_{i+1}/n_{i+1})`, `i = 1..m−r`, after sorting
//! the factors by `n_i C_ii/x_i²`, the second variation is negative definite.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactnum::{inertia_default, newton_solve, Inertia, Matrix, NewtonOptions, Scalar, SymMatrix};
use crate::product_base::{BaseFactor, BaseFactorData};

/// Topological data of the bundle: dimensions, Fano constants, classifying matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusTopology<S> {
    pub n: Vec<usize>,
    pub q: Vec<S>,
    /// `r × m` integer matrix; row `β` holds the coefficients of `χ_β`.
    pub b: Vec<Vec<i64>>,
}

impl<S: Scalar> TorusTopology<S> {
    pub fn new(n: Vec<usize>, q: Vec<S>, b: Vec<Vec<i64>>) -> Result<Self> {
        let m = n.len();
        if m == 0 {
            return Err(Error::InvalidConfig("at least one base factor is required".into()));
        }
        if q.len() != m {
            return Err(Error::InvalidConfig(format!("q has {} entries, expected {m}", q.len())));
        }
        if let Some(&d) = n.iter().find(|&&d| d < 2 || d % 2 != 0) {
            return Err(Error::InvalidConfig(format!("factor dimension {d} must be even and >= 2")));
        }
        if q.iter().any(|v| *v <= S::zero()) {
            return Err(Error::InvalidConfig("Fano constants q_i must be positive".into()));
        }
        let r = b.len();
        if r == 0 || r > m {
            return Err(Error::InvalidConfig(format!("torus rank r = {r} must satisfy 1 <= r <= m = {m}")));
        }
        if b.iter().any(|row| row.len() != m) {
            return Err(Error::InvalidConfig(format!("rows of b must have length m = {m}")));
        }
        if (0..m).any(|j| b.iter().all(|row| row[j] == 0)) {
            return Err(Error::InvalidConfig("columns of b must be nonzero".into()));
        }
        let bm: Matrix<crate::exactnum::Rational> =
            Matrix::from_fn(r, m, |i, j| crate::exactnum::Rational::from_i64(b[i][j]));
        if bm.rank() != r {
            return Err(Error::InvalidConfig("b must have full rank r".into()));
        }
        Ok(TorusTopology { n, q, b })
    }

    pub fn m(&self) -> usize {
        self.n.len()
    }

    pub fn r(&self) -> usize {
        self.b.len()
    }

    fn b_matrix(&self) -> Matrix<S> {
        Matrix::from_fn(self.r(), self.m(), |i, j| S::from_i64(self.b[i][j]))
    }
}

/// Full configuration: topology plus scalings `x` and fiber metric `ĝ`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusBundleConfig<S> {
    pub topology: TorusTopology<S>,
    pub x: Vec<S>,
    pub ghat: SymMatrix<S>,
}

impl<S: Scalar> TorusBundleConfig<S> {
    pub fn new(topology: TorusTopology<S>, x: Vec<S>, ghat: SymMatrix<S>) -> Result<Self> {
        if x.len() != topology.m() {
            return Err(Error::InvalidConfig(format!("x has {} entries, expected {}", x.len(), topology.m())));
        }
        if x.iter().any(|v| *v <= S::zero()) {
            return Err(Error::InvalidConfig("scalings x_i must be positive".into()));
        }
        if ghat.dim() != topology.r() {
            return Err(Error::InvalidConfig(format!("ĝ must be {0}x{0}", topology.r())));
        }
        let signature = inertia_default(&ghat);
        if signature.n_pos != ghat.dim() {
            return Err(Error::InvalidConfig("ĝ must be positive definite".into()));
        }
        Ok(TorusBundleConfig { topology, x, ghat })
    }

    /// Einstein configuration with prescribed scalings and Einstein constant:
    /// `ĝ = E·(¼ b diag(n/x²) bᵀ)⁻¹` and `q_i = x_i E + C_ii/(2x_i)`.
    pub fn einstein_from_scalings(n: Vec<usize>, b: Vec<Vec<i64>>, x: Vec<S>, einstein: S) -> Result<Self> {
        let m = n.len();
        let placeholder = TorusTopology::new(n, vec![S::one(); m], b)?;
        let vertical = vertical_operator(&placeholder, &x);
        let inv = vertical
            .matrix()
            .inverse()
            .ok_or_else(|| Error::InvalidConfig("vertical operator is singular".into()))?;
        let ghat = SymMatrix::from_upper(placeholder.r(), |i, j| einstein.clone() * inv[(i, j)].clone());
        let c = gram(&placeholder.b_matrix(), &ghat);
        let q = (0..m)
            .map(|i| x[i].clone() * einstein.clone() + c[(i, i)].clone() / (S::from_i64(2) * x[i].clone()))
            .collect();
        let topology = TorusTopology { q, ..placeholder };
        TorusBundleConfig::new(topology, x, ghat)
    }

    pub fn m(&self) -> usize {
        self.topology.m()
    }

    pub fn r(&self) -> usize {
        self.topology.r()
    }

    /// Reorders the base factors; `perm[k]` is the original index of new factor `k`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let t = &self.topology;
        TorusBundleConfig {
            topology: TorusTopology {
                n: perm.iter().map(|&i| t.n[i]).collect(),
                q: perm.iter().map(|&i| t.q[i].clone()).collect(),
                b: t.b.iter().map(|row| perm.iter().map(|&i| row[i]).collect()).collect(),
            },
            x: perm.iter().map(|&i| self.x[i].clone()).collect(),
            ghat: self.ghat.clone(),
        }
    }
}

fn gram<S: Scalar>(b: &Matrix<S>, ghat: &SymMatrix<S>) -> SymMatrix<S> {
    let product = b
        .transpose()
        .mul(ghat.matrix())
        .and_then(|t| t.mul(b))
        .expect("dimensions checked at construction");
    SymMatrix::from_upper(product.rows(), |i, j| product[(i, j)].clone())
}

/// `¼·b·diag(n_i/x_i²)·bᵀ`.
fn vertical_operator<S: Scalar>(topology: &TorusTopology<S>, x: &[S]) -> SymMatrix<S> {
    let m = topology.m();
    let weights: Vec<S> = (0..m)
        .map(|i| S::from_usize(topology.n[i]) / (S::from_i64(4) * x[i].square()))
        .collect();
    SymMatrix::from_upper(topology.r(), |a, c| {
        (0..m).fold(S::zero(), |acc, i| {
            acc + S::from_i64(topology.b[a][i] * topology.b[c][i]) * weights[i].clone()
        })
    })
}

/// Column Gram matrix `C_jk = Σ_{αβ} b_{αj} ĝ_{αβ} b_{βk}`.
pub fn column_gram<S: Scalar>(config: &TorusBundleConfig<S>) -> SymMatrix<S> {
    gram(&config.topology.b_matrix(), &config.ghat)
}

/// `‖A^{(i)}‖² = n_i C_ii/(4x_i²)` for the 1-based factor `i`.
pub fn a_norm_sq<S: Scalar>(config: &TorusBundleConfig<S>, c: &SymMatrix<S>, i: usize) -> Result<S> {
    let m = config.m();
    if i < 1 || i > m {
        return Err(Error::IndexOutOfRange { index: i, len: m });
    }
    let k = i - 1;
    Ok(S::from_usize(config.topology.n[k]) * c[(k, k)].clone() / (S::from_i64(4) * config.x[k].square()))
}

/// Einstein constant from the trace formula `(1/(4r)) Σ_j n_j C_jj/x_j²`.
pub fn trace_einstein<S: Scalar>(config: &TorusBundleConfig<S>, c: &SymMatrix<S>) -> S {
    let sum = (0..config.m()).fold(S::zero(), |acc, j| {
        acc + S::from_usize(config.topology.n[j]) * c[(j, j)].clone() / config.x[j].square()
    });
    sum / S::from_usize(4 * config.r())
}

#[derive(Clone, Debug, PartialEq)]
pub struct EinsteinResidual<S> {
    pub horizontal: Vec<S>,
    pub vertical: SymMatrix<S>,
    pub einstein: S,
}

impl<S: Scalar> EinsteinResidual<S> {
    /// Largest absolute residual entry.
    pub fn max_abs(&self) -> S {
        let h = self.horizontal.iter().fold(S::zero(), |acc, v| S::max_of(acc, v.abs()));
        S::max_of(h, self.vertical.matrix().max_abs())
    }
}

fn residual_with<S: Scalar>(config: &TorusBundleConfig<S>, einstein: &S) -> (Vec<S>, SymMatrix<S>) {
    let c = column_gram(config);
    let horizontal = (0..config.m())
        .map(|i| {
            let x = config.x[i].clone();
            config.topology.q[i].clone() / x.clone()
                - c[(i, i)].clone() / (S::from_i64(2) * x.square())
                - einstein.clone()
        })
        .collect();
    let ginv = config.ghat.matrix().inverse().expect("ĝ is positive definite");
    let op = vertical_operator(&config.topology, &config.x);
    let vertical = SymMatrix::from_upper(config.r(), |a, b| op[(a, b)].clone() - einstein.clone() * ginv[(a, b)].clone());
    (horizontal, vertical)
}

/// Residuals of the horizontal and vertical Einstein equations with `E` taken
/// from the trace formula. A configuration is Einstein iff both vanish.
pub fn einstein_system_residual<S: Scalar>(config: &TorusBundleConfig<S>) -> EinsteinResidual<S> {
    let c = column_gram(config);
    let einstein = trace_einstein(config, &c);
    let (horizontal, vertical) = residual_with(config, &einstein);
    EinsteinResidual { horizontal, vertical, einstein }
}

/// Options for [`solve_einstein`].
#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Prescribed Einstein constant fixing the scaling gauge.
    pub gauge_einstein: f64,
    pub starts: usize,
    pub seed: u64,
    pub tol: f64,
    pub dedup_tol: f64,
    pub max_iter: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            gauge_einstein: 1.0,
            starts: 32,
            seed: 0,
            tol: 1e-10,
            dedup_tol: 1e-6,
            max_iter: 200,
        }
    }
}

/// A solved Einstein configuration in floating point.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusEinsteinSolution {
    pub config: TorusBundleConfig<f64>,
    pub einstein: f64,
    pub residual_norm: f64,
}

struct Unknowns {
    m: usize,
    r: usize,
}

impl Unknowns {
    fn len(&self) -> usize {
        self.m + self.r * (self.r + 1) / 2
    }

    /// `x = exp(u)`, `ĝ = L Lᵀ` with `L` lower triangular and `L_kk = exp(v_k)`.
    fn decode(&self, y: &[f64]) -> (Vec<f64>, Matrix<f64>) {
        let x = y[..self.m].iter().map(|u| u.exp()).collect();
        let mut l = Matrix::zeros(self.r, self.r);
        let mut k = self.m;
        for i in 0..self.r {
            for j in 0..=i {
                l[(i, j)] = if i == j { y[k].exp() } else { y[k] };
                k += 1;
            }
        }
        let g = l.mul(&l.transpose()).expect("square");
        (x, g)
    }

    fn encode(&self, x: &[f64], ghat: &Matrix<f64>) -> Option<Vec<f64>> {
        let l = cholesky(ghat)?;
        let mut y: Vec<f64> = x.iter().map(|v| v.ln()).collect();
        for i in 0..self.r {
            for j in 0..=i {
                y.push(if i == j { l[(i, i)].ln() } else { l[(i, j)] });
            }
        }
        Some(y)
    }
}

fn cholesky(a: &Matrix<f64>) -> Option<Matrix<f64>> {
    let n = a.rows();
    let mut l = Matrix::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if d <= 0.0 {
            return None;
        }
        l[(j, j)] = d.sqrt();
        for i in j + 1..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / l[(j, j)];
        }
    }
    Some(l)
}

fn gauge_residual(topology: &TorusTopology<f64>, unknowns: &Unknowns, gauge: f64, y: &[f64]) -> Vec<f64> {
    let (x, g) = unknowns.decode(y);
    if x.iter().any(|v| !v.is_finite() || *v <= 0.0) || g.max_abs().is_nan() {
        return vec![f64::NAN; unknowns.len()];
    }
    let ghat = SymMatrix::from_upper(unknowns.r, |i, j| g[(i, j)]);
    if ghat.matrix().inverse().is_none() {
        return vec![f64::NAN; unknowns.len()];
    }
    let config = TorusBundleConfig { topology: topology.clone(), x, ghat };
    let (horizontal, vertical) = residual_with(&config, &gauge);
    let mut out = horizontal;
    for i in 0..unknowns.r {
        for j in i..unknowns.r {
            out.push(vertical[(i, j)]);
        }
    }
    out
}

/// Multi-start damped Newton solve for `x` and `ĝ` with the Einstein constant
/// fixed to `opts.gauge_einstein`.
///
/// Every converged start whose trace-formula residual is within `opts.tol` is
/// kept; solutions closer than `opts.dedup_tol` are merged. The result is sorted
/// by residual, then lexicographically by `x`.
pub fn solve_einstein(topology: &TorusTopology<f64>, opts: &SolveOptions) -> Result<Vec<TorusEinsteinSolution>> {
    if opts.gauge_einstein <= 0.0 || !opts.gauge_einstein.is_finite() {
        return Err(Error::InvalidParams("gauge Einstein constant must be positive".into()));
    }
    let unknowns = Unknowns { m: topology.m(), r: topology.r() };
    let gauge = opts.gauge_einstein;
    let residual = |y: &[f64]| gauge_residual(topology, &unknowns, gauge, y);
    let newton = NewtonOptions {
        tol: opts.tol * 1e-2,
        max_iter: opts.max_iter,
        ..NewtonOptions::default()
    };

    let mut found: Vec<TorusEinsteinSolution> = Vec::new();
    let mut best_residual = f64::INFINITY;
    for start in 0..opts.starts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(start as u64));
        let Some(y0) = starting_point(topology, &unknowns, gauge, &mut rng) else {
            continue;
        };
        let y = match newton_solve(&residual, None, &y0, newton) {
            Ok(y) => y,
            Err(Error::MaxIterationsExceeded { residual_norm, .. }) => {
                best_residual = best_residual.min(residual_norm);
                continue;
            }
            Err(_) => continue,
        };
        let (x, g) = unknowns.decode(&y);
        let ghat = SymMatrix::from_upper(unknowns.r, |i, j| g[(i, j)]);
        let Ok(config) = TorusBundleConfig::new(topology.clone(), x, ghat) else {
            continue;
        };
        let check = einstein_system_residual(&config);
        let residual_norm = check.max_abs();
        best_residual = best_residual.min(residual_norm);
        if residual_norm > opts.tol {
            continue;
        }
        let candidate = TorusEinsteinSolution { config, einstein: check.einstein, residual_norm };
        if !found.iter().any(|s| same_solution(s, &candidate, opts.dedup_tol)) {
            found.push(candidate);
        }
    }
    if found.is_empty() {
        return Err(Error::NoSolutionFound { best_residual });
    }
    found.sort_by(|a, b| {
        a.residual_norm
            .total_cmp(&b.residual_norm)
            .then_with(|| lexicographic(&a.config.x, &b.config.x))
    });
    Ok(found)
}

fn lexicographic(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(p, q)| p.total_cmp(q))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

fn same_solution(a: &TorusEinsteinSolution, b: &TorusEinsteinSolution, tol: f64) -> bool {
    let dx = a.config.x.iter().zip(&b.config.x).all(|(p, q)| (p - q).abs() <= tol);
    let dg = a.config.ghat.matrix().to_rows().iter().flatten()
        .zip(b.config.ghat.matrix().to_rows().iter().flatten())
        .all(|(p, q)| (p - q).abs() <= tol);
    dx && dg
}

/// Random start: `x_i = (q_i/E)·e^{-t}` with `t ~ U(0, 2)`; `ĝ` solves the
/// vertical equation at that `x`, with its Cholesky factor jittered.
fn starting_point(topology: &TorusTopology<f64>, unknowns: &Unknowns, gauge: f64, rng: &mut ChaCha8Rng) -> Option<Vec<f64>> {
    let x: Vec<f64> = topology
        .q
        .iter()
        .map(|q| q / gauge * (-rng.gen_range(0.0..2.0f64)).exp())
        .collect();
    let op = vertical_operator(topology, &x);
    let ginv = op.matrix().inverse()?;
    let g = ginv.scale(&gauge);
    let mut y = unknowns.encode(&x, &g)?;
    for v in y.iter_mut().skip(unknowns.m) {
        *v += rng.gen_range(-0.25..0.25);
    }
    Some(y)
}

fn require_einstein<S: Scalar>(config: &TorusBundleConfig<S>, tol: &S) -> Result<EinsteinResidual<S>> {
    let res = einstein_system_residual(config);
    let norm = res.max_abs();
    if norm > *tol {
        return Err(Error::NotEinstein { residual: norm.to_f64(), tol: tol.to_f64() });
    }
    Ok(res)
}

/// Per-term weights `w_i = (C_ii/x_i² − 2E)/n_i` of the telescoped form.
fn telescoped_weights<S: Scalar>(config: &TorusBundleConfig<S>, einstein: &S) -> Vec<S> {
    let c = column_gram(config);
    (0..config.m())
        .map(|i| {
            (c[(i, i)].clone() / config.x[i].square() - S::from_i64(2) * einstein.clone())
                / S::from_usize(config.topology.n[i])
        })
        .collect()
}

/// `Δμ_i = μ_i − μ_{i−1}` for `i = 1..len+1` with `μ_0 = μ_{len+1} = 0`.
pub fn telescope<S: Scalar>(mu: &[S]) -> Vec<S> {
    let k = mu.len();
    (0..=k)
        .map(|i| {
            let cur = if i < k { mu[i].clone() } else { S::zero() };
            let prev = if i > 0 { mu[i - 1].clone() } else { S::zero() };
            cur - prev
        })
        .collect()
}

/// Second variation along `h = Σ_{i=1}^{m−r} μ_i π*(ǧ_i/n_i − ǧ_{i+1}/n_{i+1})`,
/// i.e. `Σ_{i=1}^{m−r+1} (Δμ_i)² (C_ii/x_i² − 2E)/n_i`, in the given factor order.
pub fn mu_form_value<S: Scalar>(config: &TorusBundleConfig<S>, mu: &[S], tol: &S) -> Result<S> {
    let k = config.m() - config.r();
    if mu.len() != k {
        return Err(Error::DimensionMismatch(format!("μ has {} entries, expected m − r = {k}", mu.len())));
    }
    let res = require_einstein(config, tol)?;
    let w = telescoped_weights(config, &res.einstein);
    Ok(telescope(mu)
        .iter()
        .zip(&w)
        .fold(S::zero(), |acc, (d, wi)| acc + d.square() * wi.clone()))
}

/// Upper bound `−μ₁² C₁₁/(2r x₁²) − Σ_{i=2}^{m−r} (Δμ_i)² C_ii/(2r x_i²)`
/// valid for sorted Einstein configurations.
pub fn proof_bound<S: Scalar>(config: &TorusBundleConfig<S>, mu: &[S]) -> S {
    let c = column_gram(config);
    let two_r = S::from_usize(2 * config.r());
    telescope(mu)
        .iter()
        .take(mu.len())
        .enumerate()
        .fold(S::zero(), |acc, (i, d)| {
            acc - d.square() * c[(i, i)].clone() / (two_r.clone() * config.x[i].square())
        })
}

/// Product-base data `s_i = n_i q_i/x_i`, `‖A^{(i)}‖² = n_i C_ii/(4x_i²)`.
pub fn base_factor_data<S: Scalar>(config: &TorusBundleConfig<S>) -> Result<BaseFactorData<S>> {
    let c = column_gram(config);
    let factors = (0..config.m())
        .map(|i| {
            let n = config.topology.n[i];
            Ok(BaseFactor {
                dim: n,
                scal: S::from_usize(n) * config.topology.q[i].clone() / config.x[i].clone(),
                a_norm_sq: a_norm_sq(config, &c, i + 1)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    BaseFactorData::new(factors)
}

/// Stable ordering of the factors by `n_i C_ii/x_i²`, ties by original index.
pub fn ordering_permutation<S: Scalar>(config: &TorusBundleConfig<S>) -> Vec<usize> {
    let c = column_gram(config);
    let keys: Vec<S> = (0..config.m())
        .map(|i| S::from_usize(config.topology.n[i]) * c[(i, i)].clone() / config.x[i].square())
        .collect();
    let mut perm: Vec<usize> = (0..config.m()).collect();
    perm.sort_by(|&a, &b| keys[a].partial_cmp(&keys[b]).unwrap_or(std::cmp::Ordering::Equal));
    perm
}

#[derive(Clone, Copy, Debug)]
pub struct AnalyzeOptions {
    pub bound_samples: usize,
    pub seed: u64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions { bound_samples: 100, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoindexAnalysis<S> {
    /// `permutation[k]` is the original index of sorted factor `k`.
    pub permutation: Vec<usize>,
    pub einstein: S,
    /// Matrix of the μ-form on the first `m − r` sorted differences.
    pub q: SymMatrix<S>,
    pub inertia: Inertia,
    pub proof_bound_ok: bool,
    pub note: Option<String>,
}

impl<S> CoindexAnalysis<S> {
    pub fn coindex_lower_bound(&self) -> usize {
        self.inertia.n_neg
    }
}

/// Sorts the factors, builds the `(m−r)`-dimensional μ-form matrix, counts its
/// negative directions and checks the upper bound on random μ.
pub fn analyze_coindex<S: Scalar>(config: &TorusBundleConfig<S>, tol: &S, opts: &AnalyzeOptions) -> Result<CoindexAnalysis<S>> {
    let permutation = ordering_permutation(config);
    let sorted = config.permuted(&permutation);
    let res = require_einstein(&sorted, tol)?;
    let k = sorted.m() - sorted.r();
    let w = telescoped_weights(&sorted, &res.einstein);
    // Σ w_i (μ_i − μ_{i−1})² is tridiagonal in μ.
    let q = SymMatrix::from_upper(k, |a, b| {
        if a == b {
            w[a].clone() + w[a + 1].clone()
        } else if b == a + 1 {
            -w[a + 1].clone()
        } else {
            S::zero()
        }
    });
    let inertia = inertia_default(&q);

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let slack = if S::EXACT { S::zero() } else { S::from_f64(1e-9).unwrap() };
    let c = column_gram(&sorted);
    let two_r = S::from_usize(2 * sorted.r());
    let bound_weights: Vec<S> = (0..k)
        .map(|i| c[(i, i)].clone() / (two_r.clone() * sorted.x[i].square()))
        .collect();
    let mut proof_bound_ok = true;
    for _ in 0..if k == 0 { 0 } else { opts.bound_samples } {
        let mu: Vec<S> = (0..k)
            .map(|_| S::ratio(rng.gen_range(-1000..=1000), rng.gen_range(1..=97)))
            .collect();
        let delta = telescope(&mu);
        let value = delta.iter().zip(&w).fold(S::zero(), |acc, (d, wi)| acc + d.square() * wi.clone());
        let bound = delta
            .iter()
            .zip(&bound_weights)
            .fold(S::zero(), |acc, (d, bi)| acc - d.square() * bi.clone());
        let scale = S::max_of(S::one(), bound.abs());
        if value > bound + slack.clone() * scale {
            proof_bound_ok = false;
        }
    }

    let note = if k == 0 {
        Some(if sorted.m() >= 2 {
            "r = m: the Einstein metric is a product metric, unstable by the product criterion; no μ-form is computed".to_string()
        } else {
            "single base factor: no difference directions are available".to_string()
        })
    } else {
        None
    };
    Ok(CoindexAnalysis {
        permutation,
        einstein: res.einstein,
        q,
        inertia,
        proof_bound_ok,
        note,
    })
}
