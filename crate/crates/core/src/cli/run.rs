//! Dispatch from a validated configuration to the analyses, and report assembly.

use serde_json::{Map, Value};

use super::config::{AnalysisConfig, Field, Kind, Mode};
use super::report::{inertia, num, nums, sym, Report, Witness};
use crate::circle_bundle::{
    agree, circle_einstein_check, f_value, kahler_bound_value, lemma_corrections_index_sum, lemma_corrections_matrix,
    prop46_index_sum, prop46_trace, simplex_scan, theorem15_from_pair, theorem15_from_spectrum, OmegaSpectrum,
    PointwiseTensorPair,
};
use crate::error::{Error, Result};
use crate::exactnum::{negative_direction, Matrix, Rational, Scalar, SymMatrix};
use crate::homogeneous_sp::{base_scal_from_eigenvalues, dimensions, sp_invariants, sp_prefactor, sp_scan, SpFamilyParams, SIBLING_THRESHOLDS};
use crate::product_base::{coindex_lower_bound, diagonal_coefficients, difference_basis, pairwise_value, BaseFactor, BaseFactorData};
use crate::qk_bundle::{qk_a_norm_sq, qk_analyze, qk_mu_form_value, qk_pairwise_value, QkConfig, QkFactor};
use crate::submersion::{canonical_variation_value, check_einstein_invariants, second_variation_long_form, theorem1_value, SUBMERSION_DIRECTION};
use crate::torus_bundle::{
    a_norm_sq, analyze_coindex, base_factor_data, column_gram, einstein_system_residual, mu_form_value, solve_einstein,
    telescope, AnalyzeOptions, SolveOptions, TorusBundleConfig, TorusTopology,
};
use crate::verdict::{Verdict, FLOAT_MARGIN};
use crate::verify;

/// What to compute. `Check` runs the default analysis for the config's kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Task {
    Check,
    Theorem1,
    Canonical,
    ProductBase,
    TorusSolve,
    TorusAnalyze,
    QkAnalyze,
    HomogSp,
    CircleSpectrum,
    CircleFScan,
    CirclePointwise,
    CircleKahlerBound,
}

impl Task {
    pub fn command(&self) -> &'static str {
        match self {
            Task::Check => "check",
            Task::Theorem1 => "theorem1",
            Task::Canonical => "canonical",
            Task::ProductBase => "product-base",
            Task::TorusSolve => "torus solve",
            Task::TorusAnalyze => "torus analyze",
            Task::QkAnalyze => "qk analyze",
            Task::HomogSp => "homog sp",
            Task::CircleSpectrum => "circle spectrum",
            Task::CircleFScan => "circle f-scan",
            Task::CirclePointwise => "circle pointwise",
            Task::CircleKahlerBound => "circle kahler-bound",
        }
    }

    fn kind(&self) -> Option<Kind> {
        Some(match self {
            Task::Check => return None,
            Task::Theorem1 => Kind::Submersion,
            Task::Canonical => Kind::Canonical,
            Task::ProductBase => Kind::ProductBase,
            Task::TorusSolve | Task::TorusAnalyze => Kind::Torus,
            Task::QkAnalyze => Kind::Qk,
            Task::HomogSp => Kind::HomogSp,
            Task::CircleSpectrum | Task::CircleFScan | Task::CirclePointwise | Task::CircleKahlerBound => Kind::Circle,
        })
    }

    fn circle_task_name(&self) -> Option<&'static str> {
        match self {
            Task::CircleSpectrum => Some("spectrum"),
            Task::CircleFScan => Some("f-scan"),
            Task::CirclePointwise => Some("pointwise"),
            Task::CircleKahlerBound => Some("kahler-bound"),
            _ => None,
        }
    }
}

/// Constructor-level invariant violations surface as schema errors.
fn schema(err: Error) -> Error {
    match err {
        Error::InvalidConfig(m) | Error::InvalidParams(m) | Error::DimensionMismatch(m) => Error::Schema(m),
        Error::NotSymmetric { row, col } => Error::Schema(format!("matrix is not symmetric at ({row}, {col})")),
        other => other,
    }
}

fn resolve(config: &AnalysisConfig, task: Task) -> Result<Task> {
    if let Some(kind) = task.kind() {
        if kind != config.kind {
            return Err(Error::Schema(format!(
                "`{}` needs a config of kind {kind}, got kind {}",
                task.command(),
                config.kind
            )));
        }
    }
    let payload = Field::named(&config.payload, "payload");
    let resolved = match config.kind {
        Kind::Submersion => Task::Theorem1,
        Kind::Canonical => Task::Canonical,
        Kind::ProductBase => Task::ProductBase,
        Kind::Torus if task == Task::TorusSolve => Task::TorusSolve,
        Kind::Torus => Task::TorusAnalyze,
        Kind::Qk => Task::QkAnalyze,
        Kind::HomogSp => Task::HomogSp,
        Kind::Circle => {
            let named = match payload.opt("task") {
                Some(f) => Some((f.string()?, f)),
                None => None,
            };
            let from_payload = match named {
                Some((name, f)) => Some(match name {
                    "spectrum" => Task::CircleSpectrum,
                    "f-scan" => Task::CircleFScan,
                    "pointwise" => Task::CirclePointwise,
                    "kahler-bound" => Task::CircleKahlerBound,
                    other => {
                        return Err(f.error(format!(
                            "unknown circle task `{other}`; expected spectrum, f-scan, pointwise or kahler-bound"
                        )))
                    }
                }),
                None => None,
            };
            let inferred = if payload.has("omega") {
                Task::CirclePointwise
            } else if payload.has("omega_sq") {
                Task::CircleKahlerBound
            } else if payload.has("b") {
                Task::CircleSpectrum
            } else {
                Task::CircleFScan
            };
            match (task.circle_task_name(), from_payload) {
                (Some(_), Some(p)) if p != task => {
                    return Err(Error::Schema(format!(
                        "payload.task selects `{}` but the command is `{}`",
                        p.command(),
                        task.command()
                    )))
                }
                (Some(_), _) => task,
                (None, Some(p)) => p,
                (None, None) => inferred,
            }
        }
    };
    Ok(resolved)
}

/// Validates the payload and runs the analysis.
pub fn run(config: &AnalysisConfig, task: Task) -> Result<Report> {
    let task = resolve(config, task)?;
    let mut rep = Report::new(task.command(), config.echo());
    match config.mode {
        Mode::Exact => dispatch::<Rational>(config, task, &mut rep)?,
        Mode::Float => dispatch::<f64>(config, task, &mut rep)?,
    }
    Ok(rep)
}

/// Payload validation without computing anything heavy.
pub fn validate(config: &AnalysisConfig, task: Task) -> Result<()> {
    let task = resolve(config, task)?;
    match config.mode {
        Mode::Exact => validate_payload::<Rational>(config, task),
        Mode::Float => validate_payload::<f64>(config, task),
    }
}

fn validate_payload<S: Scalar>(config: &AnalysisConfig, task: Task) -> Result<()> {
    let p = Field::named(&config.payload, "payload");
    match task {
        Task::Theorem1 | Task::Check => submersion_input::<S>(&p).map(drop),
        Task::Canonical => canonical_input::<S>(&p).map(drop),
        Task::ProductBase => product_base_input::<S>(&p).map(drop),
        Task::TorusSolve | Task::TorusAnalyze => torus_input::<S>(&p).map(drop),
        Task::QkAnalyze => qk_input::<S>(&p).map(drop),
        Task::HomogSp => sp_input(&p).map(drop),
        Task::CircleSpectrum => spectrum_input::<S>(&p).map(drop),
        Task::CircleFScan => fscan_input(&p).map(drop),
        Task::CirclePointwise => pointwise_input::<S>(&p).map(drop),
        Task::CircleKahlerBound => kahler_input::<S>(&p).map(drop),
    }
}

fn dispatch<S: Scalar>(config: &AnalysisConfig, task: Task, rep: &mut Report) -> Result<()> {
    match task {
        Task::Theorem1 | Task::Check => run_submersion::<S>(config, rep),
        Task::Canonical => run_canonical::<S>(config, rep),
        Task::ProductBase => run_product_base::<S>(config, rep),
        Task::TorusSolve => run_torus_solve(config, rep),
        Task::TorusAnalyze => run_torus_analyze::<S>(config, rep),
        Task::QkAnalyze => run_qk::<S>(config, rep),
        Task::HomogSp => run_sp(config, rep),
        Task::CircleSpectrum => run_spectrum::<S>(config, rep),
        Task::CircleFScan => run_fscan::<S>(config, rep),
        Task::CirclePointwise => run_pointwise::<S>(config, rep),
        Task::CircleKahlerBound => run_kahler::<S>(config, rep),
    }
}

/// Sign verdict with the float margin; values in `(−10·tol, 0)` add a warning.
fn classify<S: Scalar>(rep: &mut Report, label: &str, value: &S, tol: &S) -> Verdict {
    let c = Verdict::classify(value, tol);
    if c.near_zero {
        rep.warnings.push(format!(
            "{label} = {value} is negative but within {FLOAT_MARGIN}·tol of zero; reported Inconclusive"
        ));
    }
    c.verdict
}

fn opt_scalar<S: Scalar>(p: &Field, key: &str) -> Result<S> {
    p.opt(key).map_or_else(|| Ok(S::zero()), |f| f.scalar())
}

// ---------------------------------------------------------------- submersion

struct SubmersionInput<S> {
    n: usize,
    r: usize,
    einstein: S,
    fiber_scal: S,
    base_scal: S,
    a_norm_sq: S,
}

fn submersion_input<S: Scalar>(p: &Field) -> Result<SubmersionInput<S>> {
    p.expect_keys(&["n", "r", "einstein", "fiber_scal", "base_scal", "a_norm_sq"])?;
    Ok(SubmersionInput {
        n: p.get("n")?.usize()?,
        r: p.get("r")?.usize()?,
        einstein: p.get("einstein")?.scalar()?,
        fiber_scal: p.get("fiber_scal")?.scalar()?,
        base_scal: p.get("base_scal")?.scalar()?,
        a_norm_sq: p.get("a_norm_sq")?.scalar()?,
    })
}

fn run_submersion<S: Scalar>(config: &AnalysisConfig, rep: &mut Report) -> Result<()> {
    let input = submersion_input::<S>(&Field::named(&config.payload, "payload"))?;
    let tol = config.tol::<S>();
    let inv = check_einstein_invariants(
        input.n,
        input.r,
        input.einstein,
        input.fiber_scal,
        input.base_scal,
        input.a_norm_sq,
        &tol,
    )
    .map_err(schema)?;
    let out = theorem1_value(&inv);
    let long = second_variation_long_form(&inv);
    let n = S::from_usize(inv.n);
    let r = S::from_usize(inv.r);
    rep.set("n", inv.n.into());
    rep.set("r", inv.r.into());
    rep.set("E", num(&inv.einstein));
    rep.set("ŝ", num(&inv.fiber_scal));
    rep.set("š", num(&inv.base_scal));
    rep.set("‖A‖²", num(&inv.a_norm_sq));
    rep.set("s", num(&inv.total_scal()));
    rep.set("ŝ + ‖A‖² − E·r", num(&inv.fiber_residual()));
    rep.set("š − 2‖A‖² − E·n", num(&inv.base_residual()));
    rep.set("r·š − 2n·ŝ", num(&(r * inv.base_scal.clone() - S::from_i64(2) * n * inv.fiber_scal.clone())));
    rep.set("(2(n+r)/n²)(r·š − 2n·ŝ)", num(&out.value));
    rep.set("second variation, term by term", num(&long));
    rep.check("closed form equals term-by-term expansion", agree(&out.value, &long));
    let verdict = classify(rep, "second variation", &out.value, &tol);
    rep.verdict = Some(verdict);
    if verdict == Verdict::Unstable {
        rep.witness = Some(Witness { value: Some(num(&out.value)), ..Witness::named(out.direction) });
    }
    rep.cite("Einstein constraints for totally geodesic fibers: ŝ + ‖A‖² = E·r and š − 2‖A‖² = E·n");
    rep.cite("second variation along g − ((n+r)/n)π*ǧ equals (2(n+r)/n²)(r·š − 2n·ŝ)");
    rep.cite("term-by-term form: −2s + 4(n+r)E + c²·2‖A‖² − 2c²(š − 3‖A‖²), c = (n+r)/n");
    Ok(())
}

fn canonical_input<S: Scalar>(p: &Field) -> Result<(usize, usize, S, S)> {
    p.expect_keys(&["n", "r", "fiber_einstein", "base_einstein"])?;
    Ok((
        p.get("n")?.usize()?,
        p.get("r")?.usize()?,
        p.get("fiber_einstein")?.scalar()?,
        p.get("base_einstein")?.scalar()?,
    ))
}

fn run_canonical<S: Scalar>(config: &AnalysisConfig, rep: &mut Report) -> Result<()> {
    let (n, r, fe, be) = canonical_input::<S>(&Field::named(&config.payload, "payload"))?;
    let (value, _) = canonical_variation_value(n, r, &fe, &be).map_err(schema)?;
    let tol = config.tol::<S>();
    rep.set("n", n.into());
    rep.set("r", r.into());
    rep.set("Ê", num(&fe));
    rep.set("Ě", num(&be));
    rep.set("r·n·(Ě − 2Ê)", num(&value));
    rep.check("Ě < 2Ê agrees with the sign of the value", (be < S::from_i64(2) * fe.clone()) == (value < S::zero()));
    let verdict = classify(rep, "r·n·(Ě − 2Ê)", &value, &tol);
    rep.verdict = Some(verdict);
    if verdict == Verdict::Unstable {
        rep.witness = Some(Witness { value: Some(num(&value)), ..Witness::named(SUBMERSION_DIRECTION) });
    }
    rep.cite("canonical variation with Einstein fiber and base: value r·n·(Ě − 2Ê), negative iff Ě < 2Ê");
    Ok(())
}

// -------------------------------------------------------------- product base

/// Factors and the optional user span.
type ProductBaseInput<S> = (BaseFactorData<S>, Option<Vec<Vec<S>>>);

fn product_base_input<S: Scalar>(p: &Field) -> Result<ProductBaseInput<S>> {
    p.expect_keys(&["factors", "span"])?;
    let factors = p
        .get("factors")?
        .items()?
        .iter()
        .map(|f| {
            f.expect_keys(&["dim", "scal", "a_norm_sq"])?;
            Ok(BaseFactor { dim: f.get("dim")?.usize()?, scal: f.get("scal")?.scalar()?, a_norm_sq: f.get("a_norm_sq")?.scalar()? })
        })
        .collect::<Result<Vec<_>>>()?;
    let data = BaseFactorData::new(factors).map_err(schema)?;
    let span = p.opt("span").map(|f| f.matrix::<S>()).transpose()?;
    Ok((data, span))
}

fn run_product_base<S: Scalar>(config: &AnalysisConfig, rep: &mut Report) -> Result<()> {
    let (data, span) = product_base_input::<S>(&Field::named(&config.payload, "payload"))?;
    let tol = config.tol::<S>();
    let m = data.len();
    let span = match span {
        Some(s) => s,
        None => {
            rep.notes.push("span defaults to the consecutive differences e_p − e_{p+1}, p = 1..m−1".into());
            difference_basis(m, m - 1)
        }
    };
    let d = diagonal_coefficients(&data);
    let bound = coindex_lower_bound(&d, &span).map_err(schema)?;
    let mut pairs = Vec::new();
    for p in 1..=m {
        for q in p + 1..=m {
            let pv = pairwise_value(&data, p, q)?;
            let mut row = Map::new();
            row.insert("p".into(), p.into());
            row.insert("q".into(), q.into());
            row.insert("value".into(), num(&pv.value));
            row.insert("direction".into(), pv.direction.into());
            row.insert("verdict".into(), pv.verdict.as_str().into());
            pairs.push(Value::Object(row));
        }
    }
    rep.set("d_p", nums(&d.d));
    rep.set("pairwise", Value::Array(pairs));
    rep.set("span", Value::Array(span.iter().map(|v| nums(v)).collect()));
    rep.set("Q", sym(&bound.q));
    rep.set("inertia", inertia(&bound.inertia));
    rep.coindex_lower_bound = Some(bound.inertia.n_neg);
    rep.verdict = Some(Verdict::Inconclusive);
    if let Some(v) = negative_direction(&bound.q) {
        let c: Vec<S> = (0..m)
            .map(|i| v.iter().zip(&span).fold(S::zero(), |acc, (va, sa)| acc + va.clone() * sa[i].clone()))
            .collect();
        let value = c.iter().zip(&d.d).fold(S::zero(), |acc, (ci, di)| acc + ci.square() * di.clone());
        rep.check("witness value matches Q", agree(&value, &bound.q.quadratic_form(&v)));
        let verdict = classify(rep, "diagonal form at the witness", &value, &tol);
        rep.verdict = Some(verdict);
        if verdict == Verdict::Unstable {
            rep.witness = Some(Witness {
                description: format!("Σ_p c_p π*(ǧ_p/n_p), c = {}", vec_text(&c)),
                coefficients: Some(nums(&c)),
                value: Some(num(&value)),
            });
        }
    }
    rep.cite("diagonal form Σ c_p² d_p with d_p = (8‖A^(p)‖² − 2s_p)/n_p² on trace-free Σ c_p π*(ǧ_p/n_p)");
    rep.cite("pairwise value along π*(ǧ_p/n_p − ǧ_q/n_q): d_p + d_q");
    rep.cite("coindex ≥ number of negative eigenvalues of the form restricted to the span");
    Ok(())
}

fn vec_text<S: Scalar>(v: &[S]) -> String {
    format!("({})", v.iter().map(|x| if S::EXACT { x.to_string() } else { format!("{}", x.to_f64()) }).collect::<Vec<_>>().join(", "))
}

// --------------------------------------------------------------------- torus

struct TorusInput<S> {
    n: Vec<usize>,
    q: Vec<S>,
    b: Vec<Vec<i64>>,
    metric: Option<(Vec<S>, Vec<Vec<S>>)>,
    mu: Option<Vec<S>>,
}

fn torus_input<S: Scalar>(p: &Field) -> Result<TorusInput<S>> {
    p.expect_keys(&["n", "q", "b", "x", "ghat", "mu"])?;
    let n = p.get("n")?.usizes()?;
    let q = p.get("q")?.scalars::<S>()?;
    let b = p.get("b")?.int_matrix()?;
    let metric = match (p.opt("x"), p.opt("ghat")) {
        (Some(x), Some(g)) => Some((x.scalars::<S>()?, g.matrix::<S>()?)),
        (None, None) => None,
        (Some(f), None) | (None, Some(f)) => return Err(f.error("x and ghat must be given together")),
    };
    let mu = p.opt("mu").map(|f| f.scalars::<S>()).transpose()?;
    TorusTopology::new(n.clone(), q.clone(), b.clone()).map_err(schema)?;
    if let Some((x, g)) = &metric {
        let ghat = SymMatrix::from_rows(g.clone()).map_err(schema)?;
        let topology = TorusTopology::new(n.clone(), q.clone(), b.clone()).map_err(schema)?;
        TorusBundleConfig::new(topology, x.clone(), ghat).map_err(schema)?;
    }
    Ok(TorusInput { n, q, b, metric, mu })
}

fn solve_options(config: &AnalysisConfig) -> SolveOptions {
    SolveOptions {
        gauge_einstein: config.solver.gauge_einstein,
        starts: config.solver.starts,
        seed: config.solver.seed,
        ..SolveOptions::default()
    }
}

fn float_topology<S: Scalar>(input: &TorusInput<S>) -> Result<TorusTopology<f64>> {
    TorusTopology::new(input.n.clone(), input.q.iter().map(Scalar::to_f64).collect(), input.b.clone()).map_err(schema)
}

fn run_torus_solve(config: &AnalysisConfig, rep: &mut Report) -> Result<()> {
    let input = torus_input::<f64>(&Field::named(&config.payload, "payload"))?;
    let sols = solve_einstein(&float_topology(&input)?, &solve_options(config))?;
    if config.mode == Mode::Exact {
        rep.notes.push("the Einstein system is solved in floating point".into());
    }
    let rows = sols
        .iter()
        .map(|s| {
            let mut row = Map::new();
            row.insert("E".into(), num(&s.einstein));
            row.insert("x".into(), nums(&s.config.x));
            row.insert("ĝ".into(), sym(&s.config.ghat));
            row.insert("residual_norm".into(), num(&s.residual_norm));
            Value::Object(row)
        })
        .collect();
    rep.set("solutions", Value::Array(rows));
    rep.set("solutions_found", sols.len().into());
    rep.check("all residuals within solver tolerance", sols.iter().all(|s| s.residual_norm <= SolveOptions::default().tol));
    cite_torus(rep);
    Ok(())
}

struct TorusOutcome {
    fields: Map<String, Value>,
    verdict: Verdict,
    witness: Option<Witness>,
    bound: usize,
}

fn analyze_torus<S: Scalar>(
    cfg: &TorusBundleConfig<S>,
    tol: &S,
    seed: u64,
    mu: Option<&[S]>,
    rep: &mut Report,
) -> Result<TorusOutcome> {
    let mut f = Map::new();
    let res = einstein_system_residual(cfg);
    let c = column_gram(cfg);
    let a: Vec<S> = (1..=cfg.m()).map(|i| a_norm_sq(cfg, &c, i)).collect::<Result<_>>()?;
    f.insert("E".into(), num(&res.einstein));
    f.insert("x".into(), nums(&cfg.x));
    f.insert("ĝ".into(), sym(&cfg.ghat));
    f.insert("C".into(), sym(&c));
    f.insert("‖A^(i)‖²".into(), nums(&a));
    f.insert("Einstein residual (max abs)".into(), num(&res.max_abs()));
    let out = analyze_coindex(cfg, tol, &AnalyzeOptions { seed, ..AnalyzeOptions::default() })?;
    let perm: Vec<usize> = out.permutation.iter().map(|i| i + 1).collect();
    f.insert("permutation".into(), perm.clone().into());
    f.insert("Q".into(), sym(&out.q));
    f.insert("inertia".into(), inertia(&out.inertia));
    f.insert("m − r".into(), (cfg.m() - cfg.r()).into());
    f.insert("proof_bound_ok".into(), out.proof_bound_ok.into());
    rep.check("bound chain holds on random μ", out.proof_bound_ok);
    if let Some(note) = &out.note {
        rep.notes.push(note.clone());
    }
    if let Some(mu) = mu {
        let v = mu_form_value(cfg, mu, tol)?;
        f.insert("μ-form at supplied μ".into(), num(&v));
    }
    let sorted = cfg.permuted(&out.permutation);
    let mut verdict = Verdict::Inconclusive;
    let mut witness = None;
    if let Some(w) = negative_direction(&out.q) {
        let direct = mu_form_value(&sorted, &w, tol)?;
        let d = diagonal_coefficients(&base_factor_data(&sorted)?).d;
        let via_base = telescope(&w).iter().zip(&d).fold(S::zero(), |acc, (ci, di)| acc + ci.square() * di.clone());
        f.insert("μ-form at witness".into(), num(&direct));
        f.insert("product-base form at witness".into(), num(&via_base));
        rep.check("μ-form equals product-base diagonal form", agree(&direct, &via_base));
        verdict = classify(rep, "μ-form at the witness", &direct, tol);
        if verdict == Verdict::Unstable {
            let terms: Vec<String> = w
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| {
                    let (p, q) = (perm[i], perm[i + 1]);
                    let coeff = if S::EXACT { c.to_string() } else { format!("{}", c.to_f64()) };
                    format!("{coeff}·π*(ǧ_{p}/n_{p} − ǧ_{q}/n_{q})")
                })
                .collect();
            witness = Some(Witness {
                description: terms.join(" + "),
                coefficients: Some(nums(&w)),
                value: Some(num(&direct)),
            });
        }
    }
    f.insert("verdict".into(), verdict.as_str().into());
    f.insert("coindex_lower_bound".into(), out.inertia.n_neg.into());
    Ok(TorusOutcome { fields: f, verdict, witness, bound: out.inertia.n_neg })
}

fn cite_torus(rep: &mut Report) {
    rep.cite("Gram matrix C = bᵀ·ĝ·b of the classifying classes");
    rep.cite("‖A^(i)‖² = n_i·C_ii/(4x_i²); E = (1/(4r))·Σ_j n_j·C_jj/x_j²");
    rep.cite("horizontal Einstein equations q_i/x_i = E + C_ii/(2x_i²)");
    rep.cite("vertical Einstein equations ¼·b·diag(n_i/x_i²)·bᵀ = E·ĝ⁻¹ (flat torus fiber)");
}

fn run_torus_analyze<S: Scalar>(config: &AnalysisConfig, rep: &mut Report) -> Result<()> {
    let input = torus_input::<S>(&Field::named(&config.payload, "payload"))?;
    cite_torus(rep);
    rep.cite("μ-form Σ_i (μ_i − μ_{i−1})²·(C_ii/x_i² − 2E)/n_i with factors ordered by n_i·C_ii/x_i²");
    rep.cite("bound chain: μ-form ≤ −Σ_i (μ_i − μ_{i−1})²·C_ii/(2r·x_i²) over i = 1..m−r");
    rep.cite("coindex ≥ m − r for torus bundles over products of Fano Kähler–Einstein factors");
    if let Some((x, g)) = &input.metric {
        let topology = TorusTopology::new(input.n.clone(), input.q.clone(), input.b.clone()).map_err(schema)?;
        let cfg = TorusBundleConfig::new(topology, x.clone(), SymMatrix::from_rows(g.clone()).map_err(schema)?).map_err(schema)?;
        let tol = config.tol::<S>();
        let out = analyze_torus(&cfg, &tol, config.solver.seed, input.mu.as_deref(), rep)?;
        rep.quantities.extend(out.fields);
        rep.verdict = Some(out.verdict);
        rep.witness = out.witness;
        rep.coindex_lower_bound = Some(out.bound);
        return Ok(());
    }
    if config.mode == Mode::Exact {
        rep.notes.push("x and ĝ not given: the Einstein system is solved and analyzed in floating point".into());
    }
    let opts = solve_options(config);
    let sols = solve_einstein(&float_topology(&input)?, &opts)?;
    let tol = config.tolerance.max(opts.tol);
    let mu: Option<Vec<f64>> = input.mu.as_ref().map(|m| m.iter().map(Scalar::to_f64).collect());
    let mut rows = Vec::new();
    let mut outcomes = Vec::new();
    for s in &sols {
        let mut out = analyze_torus(&s.config, &tol, config.solver.seed, mu.as_deref(), rep)?;
        out.fields.insert("residual_norm".into(), num(&s.residual_norm));
        rows.push(Value::Object(out.fields.clone()));
        outcomes.push(out);
    }
    let best = &outcomes[0];
    if sols.len() == 1 {
        rep.quantities.extend(best.fields.clone());
    }
    rep.set("solutions", Value::Array(rows));
    rep.set("solutions_found", sols.len().into());
    let all_unstable = outcomes.iter().all(|o| o.verdict == Verdict::Unstable);
    rep.verdict = Some(if all_unstable { Verdict::Unstable } else { Verdict::Inconclusive });
    rep.coindex_lower_bound = outcomes.iter().map(|o| o.bound).min();
    rep.witness = if all_unstable { best.witness.clone() } else { None };
    if sols.len() > 1 {
        rep.notes.push(format!(
            "{} Einstein solutions found; the verdict holds for all of them and the witness is that of the first",
            sols.len()
        ));
    }
    Ok(())
}

// ------------------------------------------------------------------------ qk

fn qk_input<S: Scalar>(p: &Field) -> Result<(QkConfig<S>, Option<Vec<S>>)> {
    p.expect_keys(&["factors", "mu"])?;
    let factors = p
        .get("factors")?
        .items()?
        .iter()
        .map(|f| {
            f.expect_keys(&["quat_dim", "einstein", "x", "lambda"])?;
            Ok(QkFactor {
                quat_dim: f.get("quat_dim")?.usize()?,
                einstein: f.get("einstein")?.scalar()?,
                x: f.get("x")?.scalar()?,
                lambda: f.get("lambda")?.scalar()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let cfg = QkConfig::new(factors).map_err(schema)?;
    let mu = p.opt("mu").map(|f| f.scalars::<S>()).transpose()?;
    Ok((cfg, mu))
}

fn run_qk<S: Scalar>(config: &AnalysisConfig, rep: &mut Report) -> Result<()> {
    let (cfg, mu) = qk_input::<S>(&Field::named(&config.payload, "payload"))?;
    let tol = config.tol::<S>();
    let m = cfg.m();
    rep.cite("‖A^(i)‖² = (3/2)·4N_i·E_i²/((N_i+2)²x_i²)·λ_i(1 − λ_i/λ)");
    rep.cite("pairwise second variation along π*(ǧ_i/4N_i − ǧ_j/4N_j), m ≥ 3");
    rep.cite("μ-form along Σ μ_i π*(ǧ_i/4N_i − ǧ_{i+1}/4N_{i+1}); negative definite when λ > 2λ_i for all i");
    let a: Vec<S> = (1..=m).map(|i| qk_a_norm_sq(&cfg, i)).collect::<Result<_>>()?;
    rep.set("λ", num(cfg.lambda_total()));
    rep.set("‖A^(i)‖²", nums(&a));
    let analysis = qk_analyze(&cfg)?;
    let mut pairs = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            let pv = qk_pairwise_value(&cfg, i, j)?;
            let mut row = Map::new();
            row.insert("i".into(), i.into());
            row.insert("j".into(), j.into());
            row.insert("value".into(), num(&pv.value));
            row.insert("direction".into(), pv.direction.into());
            row.insert("verdict".into(), pv.verdict.as_str().into());
            pairs.push(Value::Object(row));
        }
    }
    rep.set("pairwise", Value::Array(pairs));
    rep.set("Q", sym(&analysis.q));
    rep.set("inertia", inertia(&analysis.inertia));
    rep.set("definite_by_sign", analysis.definite_by_sign.into());
    if let Some(mu) = &mu {
        rep.set("μ-form at supplied μ", num(&qk_mu_form_value(&cfg, mu)?));
    }
    if let Some(note) = &analysis.note {
        rep.notes.push(note.clone());
    }
    rep.coindex_lower_bound = Some(analysis.inertia.n_neg);
    rep.verdict = Some(Verdict::Inconclusive);
    if let Some(w) = negative_direction(&analysis.q) {
        let value = qk_mu_form_value(&cfg, &w)?;
        rep.check("μ-form equals matrix form at witness", agree(&value, &analysis.q.quadratic_form(&w)));
        let verdict = classify(rep, "μ-form at the witness", &value, &tol);
        rep.verdict = Some(verdict);
        if verdict == Verdict::Unstable {
            let terms: Vec<String> = w
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| {
                    let coeff = if S::EXACT { c.to_string() } else { format!("{}", c.to_f64()) };
                    format!("{coeff}·π*(ǧ_{}/4N_{} − ǧ_{}/4N_{})", i + 1, i + 1, i + 2, i + 2)
                })
                .collect();
            rep.witness = Some(Witness { description: terms.join(" + "), coefficients: Some(nums(&w)), value: Some(num(&value)) });
        }
    }
    Ok(())
}

// --------------------------------------------------------------------- sp(mq)

enum SpInput {
    Single(SpFamilyParams),
    Scan { m_max: u32, q_max: u32 },
}

fn sp_input(p: &Field) -> Result<SpInput> {
    p.expect_keys(&["m", "q", "k", "m_max", "q_max"])?;
    if p.has("m_max") || p.has("q_max") {
        return Ok(SpInput::Scan { m_max: p.get("m_max")?.u32()?, q_max: p.get("q_max")?.u32()? });
    }
    let params = SpFamilyParams::new(p.get("m")?.u32()?, p.get("q")?.u32()?, p.get("k")?.u32()?).map_err(schema)?;
    Ok(SpInput::Single(params))
}

fn run_sp(config: &AnalysisConfig, rep: &mut Report) -> Result<()> {
    let input = sp_input(&Field::named(&config.payload, "payload"))?;
    if config.mode == Mode::Float {
        rep.notes.push("family invariants are rational and are computed exactly in either mode".into());
    }
    rep.cite("normal homogeneous Einstein fibration Sp(mq)/(Sp(q)×…×Sp(q)) → Sp(mq)/(Sp(kq)×Sp(q)×…×Sp(q))");
    rep.cite("r·š − 2n·ŝ = (2k(k−1)(m−k)q⁴/(mq+1))·½(qm(m−k−3) − 2q(k−1) − 2m − 2(k−1))");
    match input {
        SpInput::Single(p) => {
            let inv = sp_invariants(p);
            let prefactor = sp_prefactor(p);
            let factored = prefactor.clone() * inv.bracket.clone();
            let eig_sum = base_scal_from_eigenvalues(p, &inv);
            let (n, r) = (Rational::from_integer(inv.n.clone()), Rational::from_integer(inv.r.clone()));
            let second = Rational::from_i64(2) * (n.clone() + r.clone()) / n.square() * inv.quantity.clone();
            rep.set("m", p.m.into());
            rep.set("q", p.q.into());
            rep.set("k", p.k.into());
            let (fiber_dim, base_dim) = dimensions(&inv);
            rep.set("r", fiber_dim.into());
            rep.set("n", base_dim.into());
            rep.set("ŝ", num(&inv.fiber_scal));
            rep.set("š", num(&inv.base_scal));
            rep.set("Ê", num(&inv.fiber_einstein));
            rep.set("Ricci eigenvalues of ǧ", nums(&[inv.ricci_eigs.0.clone(), inv.ricci_eigs.1.clone()]));
            rep.set("r·š − 2n·ŝ", num(&inv.quantity));
            rep.set("prefactor", num(&prefactor));
            rep.set("bracket", num(&inv.bracket));
            rep.set("second variation", num(&second));
            rep.check("direct and factored forms agree", factored == inv.quantity);
            rep.check("š equals the eigenvalue-weighted sum", eig_sum == inv.base_scal);
            rep.check("fiber is Einstein: ŝ = r·Ê", inv.fiber_scal == r * inv.fiber_einstein.clone());
            let verdict = Verdict::of(&inv.quantity);
            rep.verdict = Some(verdict);
            if verdict == Verdict::Unstable {
                rep.witness = Some(Witness { value: Some(num(&second)), ..Witness::named(SUBMERSION_DIRECTION) });
            }
        }
        SpInput::Scan { m_max, q_max } => {
            let scan = sp_scan(m_max, q_max).map_err(schema)?;
            let rows: Vec<Value> = scan
                .rows
                .iter()
                .map(|row| {
                    let mut o = Map::new();
                    o.insert("m".into(), row.params.m.into());
                    o.insert("q".into(), row.params.q.into());
                    o.insert("k".into(), row.params.k.into());
                    o.insert("value".into(), num(&row.value));
                    o.insert("verdict".into(), row.verdict.as_str().into());
                    Value::Object(o)
                })
                .collect();
            let unstable = scan.rows.iter().filter(|r| r.verdict == Verdict::Unstable).count();
            rep.set("rows", Value::Array(rows));
            rep.set("row_count", scan.rows.len().into());
            rep.set("unstable_count", unstable.into());
            rep.check("m − 3 ≤ k implies Unstable", scan.violations_near_top.is_empty());
            rep.check("k = m − 4: Unstable iff 10(q+1)/(q+4) < m", scan.violations_k_m_minus_4.is_empty());
            for t in SIBLING_THRESHOLDS {
                rep.notes.push(format!(
                    "{} → {}: destabilizing when {} ({}); recorded, not computed",
                    t.total_space, t.base, t.destabilizing_when, t.assumptions
                ));
            }
        }
    }
    Ok(())
}

// -------------------------------------------------------------------- circle

const CIRCLE_DIRECTION: &str = "π*(ȟ − (‖ω‖²/n)ǧ), ȟ = 2Ric_ǧ − 2Eǧ";

fn cite_circle(rep: &mut Report) {
    rep.cite("full tensor norm: ‖ω‖² = Σ_ij ω_ij²; ‖ω‖² = 4E on an Einstein circle bundle");
    rep.cite("algebraic part tr ȟ³ − ½‖ω‖²‖ȟ‖² − (2/n)‖ω‖²‖ȟ‖² + ‖ω‖⁶/(2n) + ‖ω‖⁶/n², plus 2D1 − D2");
}

struct SpectrumInput<S> {
    spectrum: OmegaSpectrum<S>,
    einstein: Option<S>,
    d1: S,
    d2: S,
}

fn spectrum_input<S: Scalar>(p: &Field) -> Result<SpectrumInput<S>> {
    p.expect_keys(&["task", "n", "b", "E", "D1", "D2"])?;
    let spectrum = OmegaSpectrum::new(p.get("n")?.usize()?, p.get("b")?.scalars()?).map_err(schema)?;
    let einstein = p.opt("E").map(|f| f.scalar()).transpose()?;
    Ok(SpectrumInput { spectrum, einstein, d1: opt_scalar(p, "D1")?, d2: opt_scalar(p, "D2")? })
}

fn run_spectrum<S: Scalar>(config: &AnalysisConfig, rep: &mut Report) -> Result<()> {
    let input = spectrum_input::<S>(&Field::named(&config.payload, "payload"))?;
    let tol = config.tol::<S>();
    let n = input.spectrum.n();
    let omega_sq = input.spectrum.omega_norm_sq();
    let einstein = input.einstein.clone().unwrap_or_else(|| omega_sq.clone() / S::from_i64(4));
    if input.einstein.is_none() {
        rep.notes.push("E not given; taken as ‖ω‖²/4".into());
    }
    let data = circle_einstein_check(n, einstein.clone(), input.spectrum.clone(), &tol).map_err(schema)?;
    let t = input.spectrum.simplex_point().ok_or_else(|| Error::Schema("spectrum must not vanish".into()))?;
    let f = f_value(&t, n, &S::default_tol())?;
    let algebraic = theorem15_from_spectrum(&input.spectrum, &S::zero(), &S::zero());
    let full = theorem15_from_spectrum(&input.spectrum, &input.d1, &input.d2);
    let reduced = S::from_i64(2) * (S::from_i64(2) * einstein.clone()).powi(3) * f.value.clone();
    rep.set("n", n.into());
    rep.set("b", nums(input.spectrum.b()));
    rep.set("E", num(&einstein));
    rep.set("‖ω‖²", num(&omega_sq));
    rep.set("‖ȟ‖²", num(&input.spectrum.h_norm_sq()));
    rep.set("tr ȟ³", num(&input.spectrum.tr_h_cubed()));
    rep.set("š", num(&data.base_scal));
    rep.set("Ricci eigenvalues of ǧ", nums(&data.ricci_eigenvalues()));
    rep.set("t", nums(&t));
    rep.set("f(t)", num(&f.value));
    rep.set("f − factorized form", num(&f.factorization_residual));
    rep.set("D1", num(&input.d1));
    rep.set("D2", num(&input.d2));
    rep.set("algebraic part", num(&algebraic));
    rep.set("2(2E)³f(t)", num(&reduced));
    rep.set("second variation bound", num(&full));
    rep.check("algebraic part equals 2(2E)³f(t)", agree(&algebraic, &reduced));
    rep.check("factorization identity", agree(&f.factorization_residual, &S::zero()));
    let verdict = classify(rep, "second variation bound", &full, &tol);
    rep.verdict = Some(verdict);
    if verdict == Verdict::Unstable {
        rep.witness = Some(Witness { value: Some(num(&full)), ..Witness::named(CIRCLE_DIRECTION) });
    }
    cite_circle(rep);
    rep.cite("f(t) = Σt_i³ − (1 + 4/n)Σt_i² + 2/n + 4/n² with t_i = b_i/(2E)");
    rep.cite("š = (n/4 + 1/2)‖ω‖²; Ricci eigenvalues of ǧ are E + b_i/2");
    Ok(())
}

fn fscan_input(p: &Field) -> Result<(usize, usize)> {
    p.expect_keys(&["task", "n", "denominator"])?;
    let n = p.get("n")?.usize()?;
    let den = p.opt("denominator").map_or(Ok(100), |f| f.usize())?;
    if n < 2 || den == 0 {
        return Err(Error::Schema(format!("need n >= 2 and a positive denominator, got n = {n}, denominator = {den}")));
    }
    Ok((n, den))
}

fn run_fscan<S: Scalar>(config: &AnalysisConfig, rep: &mut Report) -> Result<()> {
    let (n, den) = fscan_input(&Field::named(&config.payload, "payload"))?;
    let scan = simplex_scan::<S>(n, den)?;
    rep.set("n", n.into());
    rep.set("grid step", format!("1/{den}").into());
    rep.set("max f", num(&scan.max_value));
    rep.set("argmax", nums(&scan.argmax));
    rep.set("zeros", Value::Array(scan.zeros.iter().map(|z| nums(z)).collect()));
    rep.check("max f ≤ 0", scan.max_nonpositive);
    rep.check(
        if n % 2 == 0 { "f vanishes only at the barycenter" } else { "f has no zeros" },
        scan.equality_case_ok,
    );
    rep.verdict = Some(scan.verdict);
    if scan.verdict == Verdict::Unstable {
        rep.witness = Some(Witness { value: Some(num(&scan.max_value)), ..Witness::named(CIRCLE_DIRECTION) });
    }
    rep.cite("f(t) = Σt_i³ − (1 + 4/n)Σt_i² + 2/n + 4/n² on the simplex Σt_i = 1, m = ⌊n/2⌋");
    rep.cite("n = 2m: f = Σ(t_i − 1/m)²(t_i − 1); n = 2m+1: f = Σ(t_i − 2/(2m+1))²(t_i − 1) − (2+4m)/(2m+1)³");
    Ok(())
}

fn pointwise_input<S: Scalar>(p: &Field) -> Result<(PointwiseTensorPair<S>, S, S)> {
    p.expect_keys(&["task", "omega", "hcheck", "D1", "D2"])?;
    let omega = Matrix::from_rows(p.get("omega")?.matrix()?).map_err(schema)?;
    let hcheck = SymMatrix::from_rows(p.get("hcheck")?.matrix()?).map_err(schema)?;
    let pair = PointwiseTensorPair::new(omega, hcheck).map_err(schema)?;
    Ok((pair, opt_scalar(p, "D1")?, opt_scalar(p, "D2")?))
}

fn run_pointwise<S: Scalar>(config: &AnalysisConfig, rep: &mut Report) -> Result<()> {
    let (pair, d1, d2) = pointwise_input::<S>(&Field::named(&config.payload, "payload"))?;
    let tol = config.tol::<S>();
    let fast = lemma_corrections_matrix(&pair);
    let slow = lemma_corrections_index_sum(&pair);
    let trace = prop46_trace(&pair);
    let index = prop46_index_sum(&pair);
    let assembled = fast
        .lap_corr
        .matrix()
        .add(&fast.curv_corr.matrix().scale(&S::from_i64(-2)))
        .dot(pair.hcheck().matrix());
    let lap_ok = (0..pair.n()).all(|i| (0..pair.n()).all(|j| agree(&fast.lap_corr[(i, j)], &slow.lap_corr[(i, j)])));
    let curv_ok = (0..pair.n()).all(|i| (0..pair.n()).all(|j| agree(&fast.curv_corr[(i, j)], &slow.curv_corr[(i, j)])));
    rep.set("n", pair.n().into());
    rep.set("‖ω‖²", num(&pair.omega().frobenius_sq()));
    rep.set("lap_corr", sym(&fast.lap_corr));
    rep.set("curv_corr", sym(&fast.curv_corr));
    rep.set("⟨lap_corr − 2·curv_corr, ȟ⟩", num(&assembled));
    rep.set("correction (trace form)", num(&trace));
    rep.set("correction (index sum)", num(&index));
    rep.check("lap_corr: matrix form equals index sum", lap_ok);
    rep.check("curv_corr: matrix form equals index sum", curv_ok);
    rep.check("correction: trace form equals index sum", agree(&trace, &index));
    rep.check("⟨lap_corr − 2·curv_corr, ȟ⟩ equals the correction", agree(&assembled, &trace));
    rep.cite("lap_corr_ij = Σ_kl ½ω_ki ω_kl ȟ_lj + ½ω_kj ω_kl ȟ_li − ½ω_ik ω_jl ȟ_kl");
    rep.cite("curv_corr_ij = Σ_kl −½ω_ik ω_jl ȟ_kl + ¼ω_kj ω_il ȟ_kl");
    rep.cite("correction Σ_ijkl ω_ki ω_kl ȟ_lj ȟ_ij + ω_ik ω_jl ȟ_kl ȟ_ij = tr(ωᵀωȟ²) + tr(ωȟωᵀȟ)");
    let w = pair.omega();
    let h_from_omega = w.mul(&w.transpose()).expect("square");
    let is_curvature_square = (0..pair.n()).all(|i| (0..pair.n()).all(|j| agree(&h_from_omega[(i, j)], &pair.hcheck()[(i, j)])));
    if is_curvature_square {
        let value = theorem15_from_pair(&pair, &d1, &d2);
        rep.set("D1", num(&d1));
        rep.set("D2", num(&d2));
        rep.set("second variation bound", num(&value));
        let verdict = classify(rep, "second variation bound", &value, &tol);
        rep.verdict = Some(verdict);
        if verdict == Verdict::Unstable {
            rep.witness = Some(Witness { value: Some(num(&value)), ..Witness::named(CIRCLE_DIRECTION) });
        }
        cite_circle(rep);
    } else {
        rep.notes.push("ȟ is not ω·ωᵀ, so the second-variation bound does not apply; only the tensor algebra is reported".into());
    }
    Ok(())
}

fn kahler_input<S: Scalar>(p: &Field) -> Result<(usize, S, S, S)> {
    p.expect_keys(&["task", "n", "omega_sq", "h_sq", "hJ"])?;
    Ok((p.get("n")?.usize()?, p.get("omega_sq")?.scalar()?, p.get("h_sq")?.scalar()?, p.get("hJ")?.scalar()?))
}

fn run_kahler<S: Scalar>(config: &AnalysisConfig, rep: &mut Report) -> Result<()> {
    let (n, omega_sq, h_sq, hj) = kahler_input::<S>(&Field::named(&config.payload, "payload"))?;
    let tol = config.tol::<S>();
    let out = kahler_bound_value(n, &omega_sq, &h_sq, &hj)?;
    rep.set("n", n.into());
    rep.set("‖ω‖²", num(&omega_sq));
    rep.set("‖ȟ‖²", num(&h_sq));
    rep.set("⟨ȟ(J·,J·), ȟ⟩", num(&hj));
    rep.set("value", num(&out.value));
    rep.set("bound", num(&out.bound));
    let slack = out.bound.clone() - out.value.clone();
    rep.check("value ≤ bound", slack >= -tol.clone());
    let verdict = classify(rep, "value", &out.value, &tol);
    rep.verdict = Some(verdict);
    if verdict == Verdict::Unstable {
        rep.witness = Some(Witness {
            value: Some(num(&out.value)),
            ..Witness::named("π*ȟ, ȟ = η(J′·,·) for a harmonic (1,1)-form η orthogonal to the Kähler form")
        });
    }
    rep.cite("value −((n+2)/(2n))‖ω‖²‖ȟ‖² + (‖ω‖²/n)(‖ȟ‖² + ⟨ȟ(J·,J·), ȟ⟩)");
    rep.cite("bound −(½ − 1/n)‖ω‖²‖ȟ‖², attained when ȟ is J-invariant");
    Ok(())
}

// -------------------------------------------------------------------- verify

/// Runs every identity suite. The report has no timings, so it is a pure
/// function of `seed` and `cases`.
pub fn run_verify(seed: u64, cases: Option<usize>) -> Report {
    let mut input = Map::new();
    input.insert("seed".into(), seed.into());
    input.insert("cases".into(), cases.map_or(Value::Null, Value::from));
    let mut rep = Report::new("verify", Value::Object(input));
    let mut suites = Map::new();
    for r in verify::run_all(seed, cases) {
        let mut o = Map::new();
        o.insert("cases".into(), r.cases.into());
        o.insert("failures".into(), r.failures.into());
        o.insert("first_failure".into(), r.first_failure.clone().map_or(Value::Null, Value::from));
        suites.insert(r.name.into(), Value::Object(o));
        rep.check(r.name, r.passed());
    }
    rep.set("suites", Value::Object(suites));
    rep.cite("identity suites compare each closed form with an independent evaluation on seeded random inputs");
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::config::parse_config;

    fn report(text: &str, task: Task) -> Report {
        run(&parse_config(text).unwrap(), task).unwrap()
    }

    #[test]
    fn sp_spot_value() {
        let r = report(r#"{"kind": "homog-sp", "payload": {"m": 3, "q": 1, "k": 2}}"#, Task::Check);
        assert_eq!(r.quantities["r·š − 2n·ŝ"], Value::String("-8".into()));
        assert_eq!(r.verdict, Some(Verdict::Unstable));
        assert_eq!(r.witness.as_ref().unwrap().description, "g − ((n+r)/n)π*ǧ");
        assert!(r.all_checks_pass());
    }

    #[test]
    fn circle_equality_case() {
        let r = report(r#"{"kind": "circle", "payload": {"n": 4, "b": [1, 1]}}"#, Task::Check);
        assert_eq!(r.quantities["f(t)"], Value::String("0".into()));
        assert_eq!(r.verdict, Some(Verdict::Inconclusive));
        assert!(r.witness.is_none());
    }

    #[test]
    fn torus_solve_and_analyze() {
        let r = report(
            r#"{"kind": "torus", "payload": {"n": [2, 2], "q": [2, 2], "b": [[1, 1]]}}"#,
            Task::TorusAnalyze,
        );
        let e = r.quantities["E"].as_f64().unwrap();
        assert!((e - 1.0).abs() < 1e-10);
        let x = r.quantities["x"].as_array().unwrap();
        assert!(x.iter().all(|v| (v.as_f64().unwrap() - 4.0 / 3.0).abs() < 1e-8));
        assert!((r.quantities["ĝ"][0][0].as_f64().unwrap() - 16.0 / 9.0).abs() < 1e-8);
        assert_eq!(r.coindex_lower_bound, Some(1));
        assert_eq!(r.verdict, Some(Verdict::Unstable));
        assert!(r.all_checks_pass());
    }

    #[test]
    fn zero_column_is_a_schema_error() {
        let cfg = parse_config(r#"{"kind": "torus", "payload": {"n": [2, 2], "q": [2, 2], "b": [[1, 0]]}}"#).unwrap();
        assert_eq!(validate(&cfg, Task::Check).unwrap_err(), Error::Schema("columns of b must be nonzero".into()));
    }

    #[test]
    fn subcommand_kind_mismatch() {
        let cfg = parse_config(r#"{"kind": "qk", "payload": {}}"#).unwrap();
        assert!(matches!(run(&cfg, Task::TorusSolve), Err(Error::Schema(_))));
    }

    #[test]
    fn exact_torus_config() {
        let r = report(
            r#"{"kind": "torus", "payload": {"n": [2, 2, 2], "q": ["4/5", "4/5", "4/5"], "b": [[1, 1, 1]],
                "x": [1, 1, 1], "ghat": [["2/5"]], "mu": [1, 1]}}"#,
            Task::TorusAnalyze,
        );
        assert_eq!(r.quantities["E"], Value::String("3/5".into()));
        assert_eq!(r.quantities["μ-form at supplied μ"], Value::String("-4/5".into()));
        assert_eq!(r.coindex_lower_bound, Some(2));
        assert!(r.all_checks_pass());
    }
}
