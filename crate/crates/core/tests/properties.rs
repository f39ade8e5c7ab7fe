use einstein_stability::circle_bundle::{
    f_value, kahler_bound_value, lemma_corrections_index_sum, lemma_corrections_matrix, prop46_correction,
    prop46_index_sum, theorem15_from_spectrum, OmegaSpectrum, PointwiseTensorPair,
};
use einstein_stability::exactnum::{inertia_default, newton_solve, Matrix, NewtonOptions};
use einstein_stability::homogeneous_sp::{base_scal_from_eigenvalues, sp_invariants, sp_prefactor, SpFamilyParams};
use einstein_stability::oracle::inertia_by_sign_count;
use einstein_stability::product_base::{
    coindex_lower_bound, diagonal_coefficients, difference_basis, pairwise_value, BaseFactor, BaseFactorData,
};
use einstein_stability::qk_bundle::{qk_mu_form_value, qk_pairwise_value, QkConfig, QkFactor};
use einstein_stability::submersion::{
    canonical_variation_value, check_einstein_invariants, second_variation_long_form, theorem1_value,
    SubmersionInvariants,
};
use einstein_stability::torus_bundle::{
    a_norm_sq, analyze_coindex, base_factor_data, column_gram, einstein_system_residual, mu_form_value,
    ordering_permutation, telescope, AnalyzeOptions, TorusBundleConfig,
};
use einstein_stability::{Rational, Scalar, SymMatrix};
use proptest::prelude::*;

fn rat(lo: i64, hi: i64, max_den: i64) -> impl Strategy<Value = Rational> {
    (lo..=hi, 1..=max_den).prop_map(|(p, q)| Rational::ratio(p, q))
}

fn pos(hi: i64, max_den: i64) -> impl Strategy<Value = Rational> {
    rat(1, hi, max_den)
}

fn sym(dim: usize) -> impl Strategy<Value = SymMatrix<Rational>> {
    prop::collection::vec(rat(-6, 6, 4), dim * dim).prop_map(move |v| SymMatrix::from_upper(dim, |i, j| v[i * dim + j].clone()))
}

fn invertible(dim: usize) -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(-3i64..=3, dim * dim)
        .prop_map(move |v| Matrix::from_fn(dim, dim, |i, j| Rational::from_i64(v[i * dim + j])))
        .prop_filter("invertible", move |p| p.rank() == dim)
}

fn sym_and_invertible() -> impl Strategy<Value = (SymMatrix<Rational>, Matrix<Rational>)> {
    (1usize..=4).prop_flat_map(|d| (sym(d), invertible(d)))
}

fn skew(dim: usize) -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(rat(-4, 4, 3), dim * dim).prop_map(move |v| {
        Matrix::from_fn(dim, dim, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Less => v[i * dim + j].clone(),
            std::cmp::Ordering::Greater => -v[j * dim + i].clone(),
            std::cmp::Ordering::Equal => Rational::zero(),
        })
    })
}

fn pair(max_n: usize) -> impl Strategy<Value = PointwiseTensorPair<Rational>> {
    (2..=max_n).prop_flat_map(|n| (skew(n), sym(n))).prop_map(|(w, h)| PointwiseTensorPair::new(w, h).unwrap())
}

fn torus_config() -> impl Strategy<Value = TorusBundleConfig<Rational>> {
    (2usize..=5)
        .prop_flat_map(|m| (Just(m), 1..m))
        .prop_flat_map(|(m, r)| {
            (
                prop::collection::vec(1usize..=4, m),
                prop::collection::vec(prop::collection::vec(-2i64..=2, m), r),
                prop::collection::vec(pos(9, 5), m),
                pos(6, 4),
            )
        })
        .prop_filter_map("Einstein config exists", |(n, b, x, e)| {
            TorusBundleConfig::einstein_from_scalings(n.iter().map(|k| 2 * k).collect(), b, x, e).ok()
        })
}

fn qk_config() -> impl Strategy<Value = QkConfig<Rational>> {
    prop::collection::vec((2usize..=6, pos(12, 3), pos(8, 4), pos(6, 3)), 3..=6).prop_map(|fs| {
        QkConfig::new(fs.into_iter().map(|(quat_dim, einstein, x, lambda)| QkFactor { quat_dim, einstein, x, lambda }).collect())
            .unwrap()
    })
}

fn base_data() -> impl Strategy<Value = BaseFactorData<Rational>> {
    prop::collection::vec((2usize..=12, rat(-20, 40, 5), rat(0, 20, 5)), 2..=6).prop_map(|fs| {
        BaseFactorData::new(fs.into_iter().map(|(dim, scal, a_norm_sq)| BaseFactor { dim, scal, a_norm_sq }).collect())
            .unwrap()
    })
}

fn simplex_point(m: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(0i64..=30, m).prop_filter_map("nonzero weights", |w| {
        let total: i64 = w.iter().sum();
        (total > 0).then(|| w.iter().map(|&v| Rational::ratio(v, total)).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn inertia_is_congruence_invariant((m, p) in sym_and_invertible()) {
        prop_assert_eq!(inertia_default(&m.congruent(&p).unwrap()), inertia_default(&m));
    }

    #[test]
    fn inertia_matches_sign_count_oracle(m in (1usize..=4).prop_flat_map(sym)) {
        prop_assert_eq!(inertia_default(&m), inertia_by_sign_count(&m));
    }

    #[test]
    fn newton_result_meets_its_tolerance(a in 1.0f64..4.0, c in -3.0f64..3.0, x0 in 0.5f64..5.0) {
        // x² = a, y = c·x
        let residual = move |x: &[f64]| vec![x[0] * x[0] - a, x[1] - c * x[0]];
        let opts = NewtonOptions::default();
        if let Ok(root) = newton_solve(&residual, None, &[x0, 0.0], opts) {
            prop_assert!(residual(&root).iter().all(|r| r.abs() <= opts.tol));
        }
    }

    #[test]
    fn submersion_long_form_matches(n in 1usize..=16, r in 1usize..=16, e in rat(-20, 20, 7), a in rat(0, 20, 7)) {
        let fiber = e.clone() * Rational::from_usize(r) - a.clone();
        let base = e.clone() * Rational::from_usize(n) + Rational::from_i64(2) * a.clone();
        let inv = check_einstein_invariants(n, r, e, fiber, base, a, &Rational::zero()).unwrap();
        prop_assert_eq!(second_variation_long_form(&inv), theorem1_value(&inv).value);
    }

    #[test]
    fn flat_family_value(n in 1usize..=16, r in 1usize..=16, e in rat(-20, 20, 7)) {
        let (nq, rq) = (Rational::from_usize(n), Rational::from_usize(r));
        let inv = check_einstein_invariants(n, r, e.clone(), e.clone() * rq.clone(), e.clone() * nq.clone(), Rational::zero(), &Rational::zero()).unwrap();
        let expected = Rational::from_i64(2) * Rational::from_usize(n + r) / nq.square() * -(nq * rq * e);
        prop_assert_eq!(theorem1_value(&inv).value, expected);
    }

    #[test]
    fn canonical_variation_is_the_bracket(n in 1usize..=12, r in 1usize..=12, fe in rat(-9, 9, 5), be in rat(-9, 9, 5)) {
        let (value, _) = canonical_variation_value(n, r, &fe, &be).unwrap();
        let inv = SubmersionInvariants {
            n,
            r,
            einstein: Rational::zero(),
            fiber_scal: Rational::from_usize(r) * fe.clone(),
            base_scal: Rational::from_usize(n) * be.clone(),
            a_norm_sq: Rational::zero(),
        };
        let bracket = theorem1_value(&inv).value * Rational::from_usize(n * n) / Rational::from_usize(2 * (n + r));
        prop_assert_eq!(value.clone(), bracket);
        prop_assert_eq!(value, Rational::from_usize(r * n) * (be - Rational::from_i64(2) * fe));
    }

    #[test]
    fn pairwise_is_symmetric_sum_of_diagonal(data in base_data(), seed in any::<(usize, usize)>()) {
        let m = data.len();
        let p = seed.0 % m + 1;
        let q = (p + seed.1 % (m - 1)) % m + 1;
        let d = diagonal_coefficients(&data).d;
        let pq = pairwise_value(&data, p, q).unwrap().value;
        prop_assert_eq!(pq.clone(), pairwise_value(&data, q, p).unwrap().value);
        prop_assert_eq!(pq, d[p - 1].clone() + d[q - 1].clone());
    }

    #[test]
    fn coindex_bound_is_basis_independent(
        (data, p) in base_data().prop_flat_map(|d| { let k = d.len() - 1; (Just(d), invertible(k)) })
    ) {
        let d = diagonal_coefficients(&data);
        let basis = difference_basis::<Rational>(data.len(), data.len() - 1);
        let k = basis.len();
        let changed: Vec<Vec<Rational>> = (0..k)
            .map(|a| (0..data.len()).map(|j| (0..k).fold(Rational::zero(), |acc, b| acc + p[(a, b)].clone() * basis[b][j].clone())).collect())
            .collect();
        prop_assert_eq!(
            coindex_lower_bound(&d, &basis).unwrap().inertia,
            coindex_lower_bound(&d, &changed).unwrap().inertia
        );
    }

    #[test]
    fn qk_pairwise_is_negative(cfg in qk_config(), seed in any::<(usize, usize)>()) {
        let m = cfg.m();
        let i = seed.0 % m + 1;
        let j = (i + seed.1 % (m - 1)) % m + 1;
        prop_assert!(qk_pairwise_value(&cfg, i, j).unwrap().value < Rational::zero());
    }

    #[test]
    fn qk_mu_form_is_negative_under_lambda_condition(
        (cfg, mu) in qk_config().prop_flat_map(|c| { let k = c.m() - 1; (Just(c), prop::collection::vec(rat(-9, 9, 4), k)) })
    ) {
        let lam = cfg.lambda_total().clone();
        prop_assume!(cfg.factors().iter().all(|f| lam > Rational::from_i64(2) * f.lambda.clone()));
        prop_assume!(mu.iter().any(|v| !v.is_zero()));
        prop_assert!(qk_mu_form_value(&cfg, &mu).unwrap() < Rational::zero());
    }

    #[test]
    fn qk_single_pair_signs_agree(fs in prop::collection::vec((2usize..=6, pos(12, 3), pos(8, 4), pos(6, 3)), 3)) {
        let cfg = QkConfig::new(fs.into_iter().map(|(quat_dim, einstein, x, lambda)| QkFactor { quat_dim, einstein, x, lambda }).collect()).unwrap();
        let lam = cfg.lambda_total().clone();
        prop_assume!(cfg.factors().iter().all(|f| lam > Rational::from_i64(2) * f.lambda.clone()));
        let mu = qk_mu_form_value(&cfg, &[Rational::one(), Rational::zero()]).unwrap();
        let pair = qk_pairwise_value(&cfg, 1, 2).unwrap().value;
        prop_assert!(mu < Rational::zero() && pair < Rational::zero());
    }

    #[test]
    fn sp_forms_agree(m in 3u32..=16, q in 1u32..=10, k_seed in any::<u32>()) {
        let k = 2 + k_seed % (m - 2);
        let p = SpFamilyParams::new(m, q, k).unwrap();
        let inv = sp_invariants(p);
        prop_assert_eq!(inv.quantity.clone(), sp_prefactor(p) * inv.bracket.clone());
        prop_assert_eq!(inv.base_scal.clone(), base_scal_from_eigenvalues(p, &inv));
        prop_assert_eq!(inv.fiber_scal.clone(), Rational::from_integer(inv.r.clone()) * inv.fiber_einstein.clone());
    }

    #[test]
    fn simplex_factorization_is_exact((n, t) in (2usize..=12).prop_flat_map(|n| (Just(n), simplex_point(n / 2)))) {
        prop_assert!(f_value(&t, n, &Rational::zero()).unwrap().factorization_residual.is_zero());
    }

    #[test]
    fn spectrum_value_reduces_to_f((n, b) in (2usize..=12).prop_flat_map(|n| (Just(n), prop::collection::vec(rat(0, 20, 5), n / 2)))) {
        prop_assume!(b.iter().any(|v| !v.is_zero()));
        let zero = Rational::zero();
        let spec = OmegaSpectrum::new(n, b).unwrap();
        let e = spec.omega_norm_sq() / Rational::from_i64(4);
        let t = spec.simplex_point().unwrap();
        let f = f_value(&t, n, &zero).unwrap().value;
        prop_assert_eq!(
            theorem15_from_spectrum(&spec, &zero, &zero),
            Rational::from_i64(2) * (Rational::from_i64(2) * e).powi(3) * f
        );
    }

    #[test]
    fn kahler_bound_holds(n in 2usize..=16, w in pos(30, 7), h in pos(30, 7), s in -12i64..=12) {
        let hj = h.clone() * Rational::ratio(s, 12);
        let out = kahler_bound_value(n, &w, &h, &hj).unwrap();
        prop_assert!(out.value <= out.bound);
        prop_assert_eq!(out.value == out.bound, s == 12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn corrections_index_sum_matches_matrix_form(p in pair(5)) {
        let fast = lemma_corrections_matrix(&p);
        prop_assert_eq!(&fast, &lemma_corrections_index_sum(&p));
        let assembled = fast.lap_corr.matrix().add(&fast.curv_corr.matrix().scale(&Rational::from_i64(-2))).dot(p.hcheck().matrix());
        prop_assert_eq!(assembled, prop46_correction(&p));
        prop_assert_eq!(prop46_correction(&p), prop46_index_sum(&p));
    }

    #[test]
    fn float_corrections_agree_to_rounding(p in pair(5)) {
        let fp = PointwiseTensorPair::new(p.omega().map(|v| v.to_f64()), p.hcheck().map(|v| v.to_f64())).unwrap();
        let (fast, slow) = (lemma_corrections_matrix(&fp), lemma_corrections_index_sum(&fp));
        for (a, b) in [(&fast.lap_corr, &slow.lap_corr), (&fast.curv_corr, &slow.curv_corr)] {
            for i in 0..fp.n() {
                for j in 0..fp.n() {
                    prop_assert!((a[(i, j)] - b[(i, j)]).abs() <= 1e-12 * a[(i, j)].abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn torus_mu_form_matches_product_base(
        (cfg, mu) in torus_config().prop_flat_map(|c| { let k = c.m() - c.r(); (Just(c), prop::collection::vec(rat(-9, 9, 4), k)) })
    ) {
        let sorted = cfg.permuted(&ordering_permutation(&cfg));
        let d = diagonal_coefficients(&base_factor_data(&sorted).unwrap()).d;
        let via_base = telescope(&mu).iter().zip(&d).fold(Rational::zero(), |acc, (c, di)| acc + c.square() * di.clone());
        prop_assert_eq!(mu_form_value(&sorted, &mu, &Rational::zero()).unwrap(), via_base);
    }

    #[test]
    fn torus_a_norms_sum_to_er(cfg in torus_config()) {
        let c = column_gram(&cfg);
        let total = (1..=cfg.m()).fold(Rational::zero(), |acc, i| acc + a_norm_sq(&cfg, &c, i).unwrap());
        let res = einstein_system_residual(&cfg);
        prop_assert!(res.max_abs().is_zero());
        prop_assert_eq!(total, res.einstein * Rational::from_usize(cfg.r()));
    }

    #[test]
    fn torus_coindex_at_least_m_minus_r(cfg in torus_config(), seed in any::<u64>()) {
        let out = analyze_coindex(&cfg, &Rational::zero(), &AnalyzeOptions { bound_samples: 20, seed }).unwrap();
        prop_assert!(out.inertia.n_neg >= cfg.m() - cfg.r());
        prop_assert!(out.proof_bound_ok);
    }

    #[test]
    fn torus_scaling_gauge(cfg in torus_config()) {
        let c = Rational::ratio(4, 3);
        let e = einstein_system_residual(&cfg).einstein;
        let x: Vec<Rational> = cfg.x.iter().map(|v| v.clone() * c.clone()).collect();
        let scaled = TorusBundleConfig::einstein_from_scalings(cfg.topology.n.clone(), cfg.topology.b.clone(), x, e / c.clone()).unwrap();
        prop_assert_eq!(&scaled.topology.q, &cfg.topology.q);
        prop_assert_eq!(scaled.ghat, cfg.ghat.map(|v| v.clone() * c.clone()));
    }
}
