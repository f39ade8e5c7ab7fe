//! Seeded randomized identity suites.
//!
//! Each suite draws its inputs from a ChaCha stream derived from the run seed
//! and the suite name, so results depend only on `(seed, cases)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::rational::Ratio;
use num::traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circle_bundle::{
    f_value, kahler_bound_value, lemma_corrections_index_sum, lemma_corrections_matrix, prop46_index_sum,
    prop46_trace, simplex_scan, theorem15_from_spectrum, OmegaSpectrum, PointwiseTensorPair,
};
use crate::exactnum::{inertia_default, Matrix, Rational, Scalar, SymMatrix};
use crate::homogeneous_sp::{sp_invariants, sp_quantity, sp_scan, SpFamilyParams};
use crate::oracle::inertia_by_sign_count;
use crate::product_base::{diagonal_coefficients, pairwise_value, BaseFactor, BaseFactorData};
use crate::qk_bundle::{qk_mu_form_value, qk_pairwise_value, QkConfig, QkFactor};
use crate::submersion::{check_einstein_invariants, second_variation_long_form, theorem1_value};
use crate::torus_bundle::{
    analyze_coindex, base_factor_data, mu_form_value, solve_einstein, telescope, AnalyzeOptions, SolveOptions,
    TorusBundleConfig, TorusTopology,
};

/// Outcome of one suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

struct Tally {
    name: &'static str,
    cases: usize,
    failures: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, cases: 0, failures: 0, first_failure: None }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult { name: self.name, cases: self.cases, failures: self.failures, first_failure: self.first_failure }
    }
}

/// Exact rational on `i128` that panics on overflow instead of wrapping.
///
/// The index-sum suite has small denominators and is allocation-bound with
/// arbitrary-precision rationals; machine-word rationals keep it exact and fast.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
struct SmallRational(Ratio<i128>);

macro_rules! checked_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for SmallRational {
            type Output = SmallRational;
            fn $method(self, rhs: SmallRational) -> SmallRational {
                SmallRational(self.0.$checked(&rhs.0).expect("i128 rational overflow"))
            }
        }
    };
}

checked_op!(Add, add, checked_add);
checked_op!(Sub, sub, checked_sub);
checked_op!(Mul, mul, checked_mul);
checked_op!(Div, div, checked_div);

impl Neg for SmallRational {
    type Output = SmallRational;
    fn neg(self) -> SmallRational {
        SmallRational(-self.0)
    }
}

impl fmt::Display for SmallRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Scalar for SmallRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        SmallRational(Ratio::from_integer(0))
    }
    fn one() -> Self {
        SmallRational(Ratio::from_integer(1))
    }
    fn from_i64(v: i64) -> Self {
        SmallRational(Ratio::from_integer(i128::from(v)))
    }
    fn ratio(num: i64, den: i64) -> Self {
        SmallRational(Ratio::new(i128::from(num), i128::from(den)))
    }
    fn to_f64(&self) -> f64 {
        num::ToPrimitive::to_f64(&self.0).unwrap_or(f64::NAN)
    }
    fn from_f64(_: f64) -> Option<Self> {
        None
    }
    fn default_tol() -> Self {
        Self::zero()
    }
    fn parse(text: &str) -> Option<Self> {
        let (p, q) = text.split_once('/').unwrap_or((text, "1"));
        let (p, q): (i128, i128) = (p.trim().parse().ok()?, q.trim().parse().ok()?);
        (q != 0).then(|| SmallRational(Ratio::new(p, q)))
    }
}

/// Deterministic generator of small random rationals and integers.
pub struct Gen(ChaCha8Rng);

impl Gen {
    pub fn new(seed: u64, stream: &str) -> Self {
        let salt = stream.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3));
        Gen(ChaCha8Rng::seed_from_u64(seed ^ salt))
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.0.gen_range(lo..=hi)
    }

    pub fn index(&mut self, lo: usize, hi: usize) -> usize {
        self.0.gen_range(lo..=hi)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.0.gen_bool(p)
    }

    pub fn seed(&mut self) -> u64 {
        self.0.gen()
    }

    /// `a/b` with `a ∈ [lo, hi]`, `b ∈ [1, max_den]`.
    pub fn rational(&mut self, lo: i64, hi: i64, max_den: i64) -> Rational {
        let num = self.int(lo, hi);
        let den = self.int(1, max_den);
        Rational::ratio(num, den)
    }

    pub fn positive(&mut self, hi: i64, max_den: i64) -> Rational {
        self.rational(1, hi, max_den)
    }

    pub fn symmetric<S: Scalar>(&mut self, dim: usize, lo: i64, hi: i64, max_den: i64) -> SymMatrix<S> {
        SymMatrix::from_upper(dim, |_, _| S::ratio(self.int(lo, hi), self.int(1, max_den)))
    }

    pub fn skew<S: Scalar>(&mut self, dim: usize, lo: i64, hi: i64, max_den: i64) -> Matrix<S> {
        let mut w = Matrix::zeros(dim, dim);
        for i in 0..dim {
            for j in i + 1..dim {
                let v = S::ratio(self.int(lo, hi), self.int(1, max_den));
                w[(j, i)] = -v.clone();
                w[(i, j)] = v;
            }
        }
        w
    }

    /// Symmetric matrix that is singular with positive probability.
    pub fn symmetric_maybe_singular(&mut self, dim: usize) -> SymMatrix<Rational> {
        if dim >= 2 && self.chance(0.35) {
            let rank = self.index(0, dim - 1);
            let b = Matrix::from_fn(rank, dim, |_, _| Rational::from_i64(self.int(-3, 3)));
            let d: Vec<Rational> = (0..rank).map(|_| Rational::from_i64(self.int(-3, 3))).collect();
            SymMatrix::diagonal(&d).congruent(&b).expect("shapes match")
        } else {
            self.symmetric(dim, -6, 6, 3)
        }
    }

    pub fn invertible(&mut self, dim: usize) -> Matrix<Rational> {
        loop {
            let p = Matrix::from_fn(dim, dim, |_, _| Rational::from_i64(self.int(-3, 3)));
            if p.rank() == dim {
                return p;
            }
        }
    }

    /// Random exact Einstein torus configuration with `m <= max_m`, `r < m`.
    pub fn torus_config(&mut self, max_m: usize) -> TorusBundleConfig<Rational> {
        loop {
            let m = self.index(2, max_m);
            let r = self.index(1, m - 1);
            let n: Vec<usize> = (0..m).map(|_| 2 * self.index(1, 4)).collect();
            let b: Vec<Vec<i64>> = (0..r).map(|_| (0..m).map(|_| self.int(-2, 2)).collect()).collect();
            let x: Vec<Rational> = (0..m).map(|_| self.positive(9, 5)).collect();
            let e = self.positive(6, 4);
            if let Ok(cfg) = TorusBundleConfig::einstein_from_scalings(n, b, x, e) {
                return cfg;
            }
        }
    }

    pub fn qk_config(&mut self, max_m: usize) -> QkConfig<Rational> {
        let m = self.index(3, max_m);
        let factors = (0..m)
            .map(|_| QkFactor {
                quat_dim: self.index(2, 6),
                einstein: self.positive(12, 3),
                x: self.positive(8, 4),
                lambda: self.positive(6, 3),
            })
            .collect();
        QkConfig::new(factors).expect("generated data is admissible")
    }

    /// Simplex point with denominators from integer weights; some coordinates may vanish.
    pub fn simplex_point(&mut self, m: usize) -> Vec<Rational> {
        loop {
            let w: Vec<i64> = (0..m).map(|_| if self.chance(0.15) { 0 } else { self.int(1, 40) }).collect();
            let total: i64 = w.iter().sum();
            if total > 0 {
                return w.iter().map(|&v| Rational::ratio(v, total)).collect();
            }
        }
    }
}

pub const SUITES: [&str; 10] = [
    "submersion_identity",
    "sp_family",
    "torus_end_to_end",
    "torus_coindex",
    "qk_signs",
    "prop46_oracle",
    "simplex_identities",
    "kahler_bound",
    "inertia_oracle",
    "product_base_identities",
];

/// Default case count of a suite.
pub fn default_cases(name: &str) -> usize {
    match name {
        "torus_coindex" => 100,
        "qk_signs" | "prop46_oracle" => 500,
        "sp_family" | "torus_end_to_end" => 1,
        _ => 1000,
    }
}

/// Runs one suite by name; `None` for an unknown name.
pub fn run_suite(name: &str, seed: u64, cases: usize) -> Option<SuiteResult> {
    let result = match name {
        "submersion_identity" => submersion_identity(seed, cases),
        "sp_family" => sp_family(),
        "torus_end_to_end" => torus_end_to_end(seed),
        "torus_coindex" => torus_coindex(seed, cases, 100),
        "qk_signs" => qk_signs(seed, cases),
        "prop46_oracle" => prop46_oracle(seed, cases),
        "simplex_identities" => simplex_identities(seed, cases),
        "kahler_bound" => kahler_bound(seed, cases),
        "inertia_oracle" => inertia_oracle(seed, cases, cases / 5),
        "product_base_identities" => product_base_identities(seed, cases),
        _ => return None,
    };
    Some(result)
}

/// Every suite; `cases` overrides each suite's default count when given.
pub fn run_all(seed: u64, cases: Option<usize>) -> Vec<SuiteResult> {
    SUITES
        .iter()
        .map(|name| run_suite(name, seed, cases.unwrap_or_else(|| default_cases(name))).expect("known suite"))
        .collect()
}

/// Long form of the second variation equals `(2(n+r)/n²)(rš − 2nŝ)`.
pub fn submersion_identity(seed: u64, cases: usize) -> SuiteResult {
    let mut g = Gen::new(seed, "submersion_identity");
    let mut t = Tally::new("submersion_identity");
    for _ in 0..cases {
        let n = g.index(1, 16);
        let r = g.index(1, 16);
        let e = g.rational(-20, 20, 7);
        let a = g.rational(0, 20, 7);
        let fs = e.clone() * Rational::from_usize(r) - a.clone();
        let bs = e.clone() * Rational::from_usize(n) + Rational::from_i64(2) * a.clone();
        match check_einstein_invariants(n, r, e, fs, bs, a, &Rational::zero()) {
            Ok(inv) => {
                let long = second_variation_long_form(&inv);
                let short = theorem1_value(&inv).value;
                t.check(long == short, || format!("n={n} r={r}: long form {long} vs {short}"));
            }
            Err(err) => t.check(false, || format!("valid invariants rejected: {err}")),
        }
    }
    t.finish()
}

/// Direct and factored forms agree, and the stated thresholds hold, for `m <= 12`, `q <= 8`.
pub fn sp_family() -> SuiteResult {
    let mut t = Tally::new("sp_family");
    match sp_scan(12, 8) {
        Ok(scan) => {
            for row in &scan.rows {
                let inv = sp_invariants(row.params);
                t.check(
                    inv.base_scal == crate::homogeneous_sp::base_scal_from_eigenvalues(row.params, &inv),
                    || format!("{:?}: eigenvalue sum differs from š", row.params),
                );
            }
            t.check(scan.violations_near_top.is_empty(), || format!("m − 3 <= k not unstable: {:?}", scan.violations_near_top));
            t.check(scan.violations_k_m_minus_4.is_empty(), || format!("k = m − 4 threshold: {:?}", scan.violations_k_m_minus_4));
        }
        Err(err) => t.check(false, || err.to_string()),
    }
    let spot = sp_quantity(SpFamilyParams { m: 3, q: 1, k: 2 }).value;
    t.check(spot == Rational::from_i64(-8), || format!("(3,1,2) gave {spot}"));
    t.finish()
}

/// Two-factor torus example: solve, compare two routes for the μ-form, coindex.
pub fn torus_end_to_end(seed: u64) -> SuiteResult {
    let mut t = Tally::new("torus_end_to_end");
    let topology = TorusTopology::new(vec![2, 2], vec![2.0, 2.0], vec![vec![1, 1]]).expect("valid topology");
    let sols = match solve_einstein(&topology, &SolveOptions { seed, ..SolveOptions::default() }) {
        Ok(s) => s,
        Err(err) => {
            t.check(false, || err.to_string());
            return t.finish();
        }
    };
    let s = &sols[0];
    t.check(s.residual_norm <= 1e-10, || format!("residual {}", s.residual_norm));
    let x_ok = s.config.x.iter().all(|v| (v - 4.0 / 3.0).abs() <= 1e-8);
    t.check(x_ok && (s.config.ghat[(0, 0)] - 16.0 / 9.0).abs() <= 1e-8, || format!("solution {:?}", s.config));
    let mu = [1.0];
    let direct = mu_form_value(&s.config, &mu, &1e-10);
    let via_base = base_factor_data(&s.config).map(|data| {
        let d = diagonal_coefficients(&data).d;
        telescope(&mu).iter().zip(&d).map(|(c, di)| c * c * di).sum::<f64>()
    });
    match (direct, via_base) {
        (Ok(a), Ok(b)) => {
            t.check((a + 1.0).abs() <= 1e-9, || format!("μ-form {a}"));
            t.check((b + 1.0).abs() <= 1e-9, || format!("product-base form {b}"));
        }
        (a, b) => t.check(false, || format!("{a:?} / {b:?}")),
    }
    match analyze_coindex(&s.config, &1e-10, &AnalyzeOptions { seed, ..AnalyzeOptions::default() }) {
        Ok(out) => t.check(out.inertia.n_neg == 1 && out.proof_bound_ok, || format!("{out:?}")),
        Err(err) => t.check(false, || err.to_string()),
    }
    t.finish()
}

/// Random exact Einstein torus configurations: `n_neg = m − r` and the bound chain.
pub fn torus_coindex(seed: u64, cases: usize, mu_samples: usize) -> SuiteResult {
    let mut g = Gen::new(seed, "torus_coindex");
    let mut t = Tally::new("torus_coindex");
    for _ in 0..cases {
        let cfg = g.torus_config(6);
        let opts = AnalyzeOptions { bound_samples: mu_samples, seed: g.seed() };
        match analyze_coindex(&cfg, &Rational::zero(), &opts) {
            Ok(out) => {
                let expected = cfg.m() - cfg.r();
                t.check(out.inertia.n_neg == expected && out.proof_bound_ok, || {
                    format!("m={} r={} inertia {:?} bound_ok={}", cfg.m(), cfg.r(), out.inertia, out.proof_bound_ok)
                });
                let mu: Vec<Rational> = (0..expected).map(|_| g.rational(-9, 9, 4)).collect();
                let sorted = cfg.permuted(&out.permutation);
                let via_base = base_factor_data(&sorted).map(|data| {
                    let d = diagonal_coefficients(&data).d;
                    telescope(&mu).iter().zip(&d).fold(Rational::zero(), |acc, (c, di)| acc + c.square() * di.clone())
                });
                let direct = mu_form_value(&sorted, &mu, &Rational::zero());
                t.check(matches!((&direct, &via_base), (Ok(a), Ok(b)) if a == b), || format!("{direct:?} vs {via_base:?}"));
            }
            Err(err) => t.check(false, || err.to_string()),
        }
    }
    t.finish()
}

/// Pairwise values are negative; the μ-form is negative when `λ > 2λ_i` for all `i`.
pub fn qk_signs(seed: u64, cases: usize) -> SuiteResult {
    let mut g = Gen::new(seed, "qk_signs");
    let mut t = Tally::new("qk_signs");
    for _ in 0..cases {
        let cfg = g.qk_config(6);
        let i = g.index(1, cfg.m());
        let j = loop {
            let j = g.index(1, cfg.m());
            if j != i {
                break j;
            }
        };
        match qk_pairwise_value(&cfg, i, j) {
            Ok(v) => t.check(v.value < Rational::zero(), || format!("pairwise ({i},{j}) = {}", v.value)),
            Err(err) => t.check(false, || err.to_string()),
        }
        let lam = cfg.lambda_total().clone();
        if cfg.factors().iter().all(|f| lam > Rational::from_i64(2) * f.lambda.clone()) {
            let mu: Vec<Rational> = loop {
                let mu: Vec<Rational> = (0..cfg.m() - 1).map(|_| g.rational(-9, 9, 4)).collect();
                if mu.iter().any(|v| !v.is_zero()) {
                    break mu;
                }
            };
            match qk_mu_form_value(&cfg, &mu) {
                Ok(v) => t.check(v < Rational::zero(), || format!("μ-form {v} at {mu:?}")),
                Err(err) => t.check(false, || err.to_string()),
            }
        }
    }
    let equal = QkConfig::new(
        (0..3)
            .map(|_| QkFactor { quat_dim: 2, einstein: Rational::one(), x: Rational::one(), lambda: Rational::one() })
            .collect(),
    )
    .expect("admissible");
    let pair = qk_pairwise_value(&equal, 1, 2).map(|v| v.value);
    t.check(pair == Ok(Rational::ratio(-13, 48)), || format!("all-equal pairwise {pair:?}"));
    let mu = qk_mu_form_value(&equal, &[Rational::one(), Rational::zero()]);
    t.check(mu == Ok(Rational::ratio(-1, 12)), || format!("all-equal μ-form {mu:?}"));
    t.finish()
}

/// Index sums against matrix forms, and the assembly of the correction.
pub fn prop46_oracle(seed: u64, cases: usize) -> SuiteResult {
    let mut g = Gen::new(seed, "prop46_oracle");
    let mut t = Tally::new("prop46_oracle");
    for _ in 0..cases {
        let n = g.index(2, 8);
        let omega = g.skew::<SmallRational>(n, -4, 4, 3);
        let h = g.symmetric::<SmallRational>(n, -4, 4, 3);
        let p = PointwiseTensorPair::new(omega, h).expect("skew and symmetric by construction");
        let fast = lemma_corrections_matrix(&p);
        let slow = lemma_corrections_index_sum(&p);
        let correction = prop46_trace(&p);
        let assembled = fast
            .lap_corr
            .matrix()
            .add(&fast.curv_corr.matrix().scale(&SmallRational::from_i64(-2)))
            .dot(p.hcheck().matrix());
        t.check(
            fast == slow && correction == prop46_index_sum(&p) && assembled == correction,
            || format!("n={n}: forms disagree"),
        );
    }
    t.finish()
}

/// Factorizations of `f` per parity, the reduction of the algebraic part to `f`,
/// and the three reference grid scans.
pub fn simplex_identities(seed: u64, cases: usize) -> SuiteResult {
    let mut g = Gen::new(seed, "simplex_identities");
    let mut t = Tally::new("simplex_identities");
    let zero = Rational::zero();
    for parity in [0usize, 1] {
        for _ in 0..cases {
            let n = 2 * g.index(1, 6 - parity) + parity;
            let pt = g.simplex_point(n / 2);
            match f_value(&pt, n, &zero) {
                Ok(v) => t.check(v.factorization_residual.is_zero(), || format!("n={n} t={pt:?}: residual {}", v.factorization_residual)),
                Err(err) => t.check(false, || err.to_string()),
            }
        }
    }
    for _ in 0..cases {
        let n = g.index(2, 12);
        let b: Vec<Rational> = loop {
            let b: Vec<Rational> = (0..n / 2).map(|_| if g.chance(0.2) { Rational::zero() } else { g.positive(20, 5) }).collect();
            if b.iter().any(|v| !v.is_zero()) {
                break b;
            }
        };
        let spec = OmegaSpectrum::new(n, b).expect("valid spectrum");
        let e = spec.omega_norm_sq() / Rational::from_i64(4);
        let t_pt = spec.simplex_point().expect("non-zero spectrum");
        let lhs = theorem15_from_spectrum(&spec, &zero, &zero);
        let rhs = f_value(&t_pt, n, &zero).map(|f| Rational::from_i64(2) * (Rational::from_i64(2) * e).powi(3) * f.value);
        t.check(rhs.as_ref() == Ok(&lhs), || format!("n={n}: {lhs} vs {rhs:?}"));
    }
    let half = Rational::ratio(1, 2);
    for (n, max, argmax) in [
        (4, Rational::zero(), vec![half.clone(), half.clone()]),
        (3, Rational::ratio(-2, 9), vec![Rational::one()]),
        (5, Rational::ratio(-9, 100), vec![half.clone(), half.clone()]),
    ] {
        match simplex_scan::<Rational>(n, 100) {
            Ok(s) => t.check(s.max_value == max && s.argmax == argmax && s.equality_case_ok, || {
                format!("n={n}: max {} at {:?}", s.max_value, s.argmax)
            }),
            Err(err) => t.check(false, || err.to_string()),
        }
    }
    t.finish()
}

/// `value <= bound` with equality exactly for `J`-invariant `ȟ`.
pub fn kahler_bound(seed: u64, cases: usize) -> SuiteResult {
    let mut g = Gen::new(seed, "kahler_bound");
    let mut t = Tally::new("kahler_bound");
    for _ in 0..cases {
        let n = g.index(2, 16);
        let w = g.positive(30, 7);
        let h = g.positive(30, 7);
        let s = if g.chance(0.25) { Rational::one() } else { Rational::ratio(g.int(-12, 12), 12) };
        let hj = h.clone() * s;
        match kahler_bound_value(n, &w, &h, &hj) {
            Ok(out) => {
                let tight = hj == h;
                let n2_ok = n != 2 || !tight || out.value.is_zero();
                t.check(out.value <= out.bound && (out.value == out.bound) == tight && n2_ok, || {
                    format!("n={n}: value {} bound {}", out.value, out.bound)
                });
            }
            Err(err) => t.check(false, || err.to_string()),
        }
    }
    t.finish()
}

/// LDLᵀ inertia against the sign-count oracle, float inertia on nonsingular
/// cases, and congruence invariance.
pub fn inertia_oracle(seed: u64, cases: usize, congruences: usize) -> SuiteResult {
    let mut g = Gen::new(seed, "inertia_oracle");
    let mut t = Tally::new("inertia_oracle");
    for _ in 0..cases {
        let dim = g.index(1, 4);
        let m = g.symmetric_maybe_singular(dim);
        let exact = inertia_default(&m);
        let oracle = inertia_by_sign_count(&m);
        let float = inertia_default(&m.map(|v| v.to_f64()));
        let float_ok = exact.n_zero > 0 || float == exact;
        t.check(exact == oracle && float_ok, || format!("{m:?}: ldl {exact:?}, oracle {oracle:?}, float {float:?}"));
    }
    for _ in 0..congruences {
        let dim = g.index(1, 4);
        let m = g.symmetric_maybe_singular(dim);
        let p = g.invertible(dim);
        let before = inertia_default(&m);
        let after = m.congruent(&p).map(|c| inertia_default(&c));
        t.check(after.as_ref() == Ok(&before), || format!("{m:?} under {p:?}: {before:?} vs {after:?}"));
    }
    t.finish()
}

/// Pairwise value equals `d_p + d_q` and is symmetric in `(p, q)`.
pub fn product_base_identities(seed: u64, cases: usize) -> SuiteResult {
    let mut g = Gen::new(seed, "product_base_identities");
    let mut t = Tally::new("product_base_identities");
    for _ in 0..cases {
        let m = g.index(2, 6);
        let factors = (0..m)
            .map(|_| BaseFactor { dim: g.index(2, 12), scal: g.rational(-20, 40, 5), a_norm_sq: g.rational(0, 20, 5) })
            .collect();
        let data = BaseFactorData::new(factors).expect("valid factors");
        let d = diagonal_coefficients(&data).d;
        let p = g.index(1, m);
        let q = loop {
            let q = g.index(1, m);
            if q != p {
                break q;
            }
        };
        let pq = pairwise_value(&data, p, q).map(|v| v.value);
        let qp = pairwise_value(&data, q, p).map(|v| v.value);
        let sum = d[p - 1].clone() + d[q - 1].clone();
        t.check(pq.as_ref() == Ok(&sum) && pq == qp, || format!("({p},{q}): {pq:?} vs {sum}"));
    }
    t.finish()
}
