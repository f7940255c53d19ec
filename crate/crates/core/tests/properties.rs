//! Invariants checked on seeded random inputs.

use proptest::prelude::*;

use spd_means::kantorovich::kantorovich;
use spd_means::means::{alm_mean, alm_mean_traced, geo_mean, power_mean, SpdTuple, WeightVector};
use spd_means::posmaps::MapKind;
use spd_means::symmat::{format_matrix, loewner_geq, parse_matrix};
use spd_means::verify::gen_spd;
use spd_means::verify::generate::{random_map, random_orthogonal, rng_from_seed};
use spd_means::{thompson, Matrix, NumericConfig, SpdMatrix, SymMatrix};

fn cfg() -> NumericConfig {
    NumericConfig::default()
}

fn spd(m: Matrix) -> SpdMatrix {
    SpdMatrix::new(SymMatrix::new(m.symmetrized(), &cfg()).unwrap(), &cfg()).unwrap()
}

/// `M·A·Mᵀ`.
fn congruent(m: &Matrix, a: &SpdMatrix) -> SpdMatrix {
    spd(m
        .matmul(a.as_matrix())
        .unwrap()
        .matmul(&m.transpose())
        .unwrap())
}

/// Random invertible matrix `Q·diag(d)` with `d ∈ [0.5, 2]`.
fn invertible(seed: u64, dim: usize) -> Matrix {
    let q = random_orthogonal(&mut rng_from_seed(seed), dim);
    let d: Vec<f64> = (0..dim)
        .map(|i| 0.5 + 1.5 * ((seed >> (i % 60)) & 1) as f64)
        .collect();
    q.matmul(&Matrix::from_diag(&d)).unwrap()
}

fn tuple(seed: u64, n: usize, dim: usize) -> SpdTuple {
    SpdTuple::new(
        (0..n as u64)
            .map(|i| gen_spd(dim, 10.0, seed.wrapping_add(i)))
            .collect(),
    )
    .unwrap()
}

fn rel_close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * 1f64.max(x.abs()).max(y.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn thompson_is_a_metric(seed in any::<u64>(), dim in 2usize..6) {
        let (a, b, c) = (gen_spd(dim, 10.0, seed), gen_spd(dim, 10.0, seed ^ 1), gen_spd(dim, 10.0, seed ^ 2));
        let d = |x: &SpdMatrix, y: &SpdMatrix| thompson::distance(x, y).unwrap();
        prop_assert!(d(&a, &a) < 1e-12);
        prop_assert!(rel_close(d(&a, &b), d(&b, &a), 1e-12));
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c) + 1e-12);
        prop_assert!(d(&a, &b) > 0.0);
    }

    #[test]
    fn thompson_scale_and_congruence_invariant(seed in any::<u64>(), dim in 2usize..6, c in 0.1f64..10.0) {
        let (a, b) = (gen_spd(dim, 10.0, seed), gen_spd(dim, 10.0, !seed));
        let base = thompson::distance(&a, &b).unwrap();
        let scaled = thompson::distance(&a.scale(c).unwrap(), &b.scale(c).unwrap()).unwrap();
        let m = invertible(seed, dim);
        let moved = thompson::distance(&congruent(&m, &a), &congruent(&m, &b)).unwrap();
        prop_assert!(rel_close(scaled, base, 1e-10));
        prop_assert!(rel_close(moved, base, 1e-9));
    }

    #[test]
    fn geo_mean_symmetries(seed in any::<u64>(), dim in 2usize..6, nu in 0.0f64..=1.0) {
        let (a, b) = (gen_spd(dim, 10.0, seed), gen_spd(dim, 10.0, !seed));
        let g = geo_mean(&a, &b, nu).unwrap();
        let swapped = geo_mean(&b, &a, 1.0 - nu).unwrap();
        prop_assert!(thompson::distance(&g, &swapped).unwrap() < 1e-10);
        // inversion and congruence
        let inv = geo_mean(&a.inverse().unwrap(), &b.inverse().unwrap(), nu).unwrap();
        prop_assert!(thompson::distance(&inv, &g.inverse().unwrap()).unwrap() < 1e-10);
        let m = invertible(seed, dim);
        let moved = geo_mean(&congruent(&m, &a), &congruent(&m, &b), nu).unwrap();
        prop_assert!(thompson::distance(&moved, &congruent(&m, &g)).unwrap() < 1e-9);
        // the geodesic splits the distance
        let d = thompson::distance(&a, &b).unwrap();
        prop_assert!((thompson::distance(&a, &g).unwrap() - nu * d).abs() < 1e-9);
    }

    #[test]
    fn kantorovich_symmetric_with_minimum_at_half(h in 1.0f64..1e4, nu in 0.0f64..=1.0) {
        let k = kantorovich(h, nu).unwrap();
        prop_assert!(rel_close(k, kantorovich(h, 1.0 - nu).unwrap(), 1e-12));
        prop_assert!(k >= kantorovich(h, 0.5).unwrap() - 1e-15);
        prop_assert!(k <= 1.0 + 1e-15);
        prop_assert!(kantorovich(h, 2.0).unwrap() >= 1.0);
    }

    #[test]
    fn maps_are_linear_unital_positive(seed in any::<u64>(), dim in 1usize..6, kind in 0usize..5, c in -3.0f64..3.0) {
        let phi = random_map(&mut rng_from_seed(seed), MapKind::ALL[kind], dim).unwrap();
        let (a, b) = (gen_spd(dim, 10.0, seed), gen_spd(dim, 10.0, !seed));
        let x = a.as_sym().scale(c).add(b.as_sym()).unwrap();
        let lhs = phi.apply(&x).unwrap();
        let rhs = phi.apply(a.as_sym()).unwrap().scale(c).add(&phi.apply(b.as_sym()).unwrap()).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12 * (1.0 + c.abs()) * 10.0);
        let unit = phi.apply(&SymMatrix::identity(dim)).unwrap();
        prop_assert!(unit.max_abs_diff(&SymMatrix::identity(phi.output_dim())) < 1e-12);
        prop_assert!(phi.apply_spd(&a).is_ok());
    }

    #[test]
    fn kadison_schwarz(seed in any::<u64>(), dim in 2usize..6, kind in 0usize..5) {
        let phi = random_map(&mut rng_from_seed(seed), MapKind::ALL[kind], dim).unwrap();
        let a = gen_spd(dim, 10.0, seed);
        let pa = phi.apply_spd(&a).unwrap();
        let p_sq = phi.apply(&a.as_sym().square()).unwrap();
        prop_assert!(loewner_geq(&p_sq, &pa.as_sym().square(), &cfg()).unwrap());
        let p_inv = phi.apply(a.inverse().unwrap().as_sym()).unwrap();
        prop_assert!(loewner_geq(&p_inv, pa.inverse().unwrap().as_sym(), &cfg()).unwrap());
    }

    #[test]
    fn power_mean_is_monotone(seed in any::<u64>(), dim in 2usize..5, t in prop::sample::select(vec![-1.0, -0.5, 0.25, 0.5, 1.0])) {
        let small = tuple(seed, 3, dim);
        let bump = gen_spd(dim, 10.0, !seed).scale(0.1).unwrap();
        let big = SpdTuple::new(small.iter().map(|a| spd(a.as_matrix().add(bump.as_matrix()).unwrap())).collect()).unwrap();
        let w = WeightVector::uniform(3).unwrap();
        let lo = power_mean(t, &w, &small, &cfg()).unwrap().value;
        let hi = power_mean(t, &w, &big, &cfg()).unwrap().value;
        prop_assert!(loewner_geq(hi.as_sym(), lo.as_sym(), &cfg()).unwrap());
    }

    #[test]
    fn matrix_text_round_trip(seed in any::<u64>(), dim in 1usize..8) {
        let a = gen_spd(dim, 1e3, seed);
        let back = parse_matrix(&format_matrix(a.as_matrix()), &cfg()).unwrap();
        for (x, y) in a.as_matrix().as_slice().iter().zip(back.as_matrix().as_slice()) {
            prop_assert!(x == y, "{x} != {y}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn alm_rounds_contract(seed in any::<u64>(), dim in 2usize..5, n in 3usize..5) {
        let (_, trace) = alm_mean_traced(&tuple(seed, n, dim), &cfg()).unwrap();
        for w in trace.windows(2) {
            prop_assert!(w[1] <= w[0].powf(1.0 / (n as f64 - 1.0)) + 1e-9);
        }
    }

    #[test]
    fn alm_contraction_and_norm_bound(seed in any::<u64>(), dim in 2usize..5, n in 2usize..5) {
        let (xs, ys) = (tuple(seed, n, dim), tuple(!seed, n, dim));
        let gx = alm_mean(&xs, &cfg()).unwrap().value;
        let gy = alm_mean(&ys, &cfg()).unwrap().value;
        let rhs: f64 = xs.iter().zip(ys.iter()).map(|(a, b)| thompson::ratio(a, b).unwrap().ln()).sum::<f64>() / n as f64;
        prop_assert!(thompson::distance(&gx, &gy).unwrap() <= rhs + 1e-9);
        let norm_bound = xs.iter().map(|a| a.op_norm().ln()).sum::<f64>() / n as f64;
        prop_assert!(gx.op_norm().ln() <= norm_bound + 1e-9);
    }

    #[test]
    fn alm_is_symmetric_and_scales(seed in any::<u64>(), dim in 2usize..5, c in 0.2f64..5.0) {
        let xs = tuple(seed, 3, dim);
        let g = alm_mean(&xs, &cfg()).unwrap().value;
        let mut rev = xs.clone().into_vec();
        rev.rotate_left(1);
        let g_rot = alm_mean(&SpdTuple::new(rev).unwrap(), &cfg()).unwrap().value;
        prop_assert!(thompson::distance(&g, &g_rot).unwrap() < 1e-10);
        let scaled = SpdTuple::new(xs.iter().map(|a| a.scale(c).unwrap()).collect()).unwrap();
        let g_scaled = alm_mean(&scaled, &cfg()).unwrap().value;
        prop_assert!(thompson::distance(&g_scaled, &g.scale(c).unwrap()).unwrap() < 1e-10);
    }
}
