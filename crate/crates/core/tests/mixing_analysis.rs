mod common;

use matchkit_core::gadgets::{ladder, mobius_ladder, slow_gk};
use matchkit_core::mixing::*;
use matchkit_core::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

const B: Budget = Budget::DEFAULT;

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn tg_of(g: &Graph) -> TransitionGraph {
    build_transition_graph(g, B).unwrap()
}

fn start(g: &Graph) -> PerfectMatching {
    find_perfect_matching(g, B).unwrap().unwrap()
}

#[test]
fn transition_matrix_examples() {
    let c4 = transition_matrix(&tg_of(&Graph::cycle(4))).unwrap();
    assert_eq!(c4.entry(0, 1), q(1, 8));
    let k4 = transition_matrix(&tg_of(&Graph::complete(4))).unwrap();
    for i in 0..3 {
        assert_eq!(k4.diagonal(i), q(3, 4));
        assert_eq!(k4.row_sum(i), BigRational::one());
        for j in 0..3 {
            if i != j {
                assert_eq!(k4.entry(i, j), q(1, 8));
            }
        }
    }
    assert!(transition_matrix(&tg_of(&Graph::empty(4))).is_err());
}

#[test]
fn cut_flow_examples() {
    let (tg, s) = gk_cut(2, B).unwrap();
    let r = cut_flow(&tg, &s).unwrap();
    assert_eq!(s.len(), 8);
    assert_eq!(r.crossing_edges, 4);
    assert_eq!(r.conductance, q(1, 100));
    assert_eq!(r.conductance, gk_cut_conductance(2));
    let complement: Vec<usize> = (0..tg.len()).filter(|i| !s.contains(i)).collect();
    assert_eq!(cut_flow(&tg, &complement).unwrap(), r);
    let c6 = tg_of(&Graph::cycle(6));
    assert!(cut_flow(&c6, &[0]).unwrap().flow.is_zero());
    assert!(cut_flow(&c6, &[]).is_err());
}

#[test]
fn conductance_examples() {
    assert_eq!(conductance_exact(&tg_of(&Graph::cycle(4))).unwrap(), q(1, 8));
    assert!(conductance_exact(&tg_of(&Graph::cycle(6))).unwrap().is_zero());
    assert_eq!(conductance_exact(&tg_of(&Graph::complete(4))).unwrap(), q(1, 4));
    assert!(matches!(conductance_exact(&tg_of(&Graph::complete(8))), Err(Error::TooLarge { .. })));
}

#[test]
fn gk_bound_examples() {
    let b2 = gk_bounds(2);
    assert_eq!(b2.phi_upper, q(1, 136));
    assert_eq!(b2.tmix_lower, q(34, 1));
    let b3 = gk_bounds(3);
    assert_eq!(b3.tmix_lower, q(159, 1));
    assert!(b3.tmix_lower > q(81, 1));
    for k in 1..=3usize {
        let (tg, s) = gk_cut(k, B).unwrap();
        let cut = cut_flow(&tg, &s).unwrap();
        assert_eq!(cut.crossing_edges, 2 * k, "k={k}");
        assert_eq!(cut.conductance, gk_cut_conductance(k as u32), "k={k}");
        if k <= 2 {
            assert!(conductance_exact(&tg).unwrap() <= cut.conductance);
        }
    }
    // The one-cut value stays exponentially small: 1/(4Φ) > 3^{k+1} from k = 3 on.
    for k in 3..=10u32 {
        let tmix = gk_cut_conductance(k).recip() / BigInt::from(4);
        assert!(tmix > q(3i64.pow(k + 1), 1), "k={k}");
    }
}

#[test]
fn spectral_examples() {
    let c6 = transition_matrix(&tg_of(&Graph::cycle(6))).unwrap();
    assert!(spectral_gap(&c6).unwrap().abs() < 1e-9);
    let c4 = transition_matrix(&tg_of(&Graph::cycle(4))).unwrap();
    assert!((spectral_gap(&c4).unwrap() - 0.25).abs() < 1e-9);
    let tg = tg_of(&slow_gk(2).unwrap());
    let gap = spectral_gap(&transition_matrix(&tg).unwrap()).unwrap();
    let phi = conductance_exact(&tg).unwrap().to_f64().unwrap();
    assert!(gap <= 2.0 * phi + 1e-9);
    assert!(gap <= 1.0 / 68.0);
}

#[test]
fn tv_at_time_zero() {
    let g = mobius_ladder(8).unwrap();
    let m0 = start(&g);
    let total = enumerate_perfect_matchings(&g, B).unwrap().len() as f64;
    let pts = tv_curve(&g, &m0, &[0], 100, 0, B).unwrap();
    assert!((pts[0].tv - (1.0 - 1.0 / total)).abs() < 1e-12);
}

#[test]
fn tv_on_k4_is_small() {
    let g = Graph::complete(4);
    let pts = tv_curve(&g, &start(&g), &[200], 100_000, 3, B).unwrap();
    let p = pts[0];
    assert!(p.tv < 0.02, "{p:?}");
    assert!(0.02 - p.tv >= 5.0 * p.std_err, "{p:?}");
}

#[test]
fn tv_on_monotone_ladder() {
    let g = ladder(5);
    assert_eq!(g.n(), 10);
    assert!(recognition::is_monotone(&g, B).unwrap().member);
    let pts = tv_curve(&g, &start(&g), &[0, 100, 2000], 20_000, 5, B).unwrap();
    assert!(pts[0].tv > 0.8);
    let last = pts[2];
    assert!(last.tv < 0.05, "{last:?}");
    assert!(0.05 - last.tv >= 5.0 * last.std_err, "{last:?}");
}

#[test]
fn chi_square_accepts_uniform_and_rejects_skew() {
    let g = Graph::complete(4);
    let support = enumerate_perfect_matchings(&g, B).unwrap();
    let mut even = Histogram::default();
    let mut skew = Histogram::default();
    for i in 0..3000 {
        even.add(support[i % 3].clone());
        skew.add(support[usize::from(i % 5 == 0)].clone());
    }
    assert!(chi_square_uniform(&even, &support).unwrap().p_value > 0.99);
    assert!(chi_square_uniform(&skew, &support).unwrap().p_value < 1e-6);
}

fn ergodic_case() -> impl Strategy<Value = TransitionGraph> {
    (2usize..=4, any::<u64>(), 0.3f64..0.95).prop_filter_map("small nontrivial chain", |(h, seed, p)| {
        let mut rng = ChainRng::from_seed(seed);
        let g = common::random_graph(2 * h, p, &mut rng);
        let tg = build_transition_graph(&g, B).ok()?;
        (tg.len() >= 2 && tg.len() <= MAX_EXACT_CUT_NODES).then_some(tg)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_is_lazy_symmetric_stochastic(tg in ergodic_case()) {
        let tm = transition_matrix(&tg).unwrap();
        prop_assert!(tm.is_symmetric());
        prop_assert!(tm.uniform_is_stationary());
        let lazy = q(1, tm.host_n() as i64);
        for i in 0..tm.size() {
            prop_assert_eq!(tm.row_sum(i), BigRational::one());
            prop_assert!(tm.diagonal(i) >= lazy);
        }
    }

    #[test]
    fn cheeger_sandwich(tg in ergodic_case()) {
        let tm = transition_matrix(&tg).unwrap();
        let gap = spectral_gap(&tm).unwrap();
        let phi = conductance_exact(&tg).unwrap().to_f64().unwrap();
        prop_assert!(phi * phi / 2.0 <= gap + 1e-9, "phi={} gap={}", phi, gap);
        prop_assert!(gap <= 2.0 * phi + 1e-9, "phi={} gap={}", phi, gap);
    }

    #[test]
    fn exact_conductance_is_minimum_over_cuts(tg in ergodic_case(), masks in proptest::collection::vec(any::<u32>(), 1..8)) {
        let cuts: Vec<Vec<usize>> = masks
            .iter()
            .map(|m| (0..tg.len()).filter(|&i| m >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|c| !c.is_empty() && c.len() < tg.len())
            .collect();
        prop_assume!(!cuts.is_empty());
        let phi = conductance_exact(&tg).unwrap();
        prop_assert!(phi <= conductance_over_cuts(&tg, &cuts).unwrap());
        for c in &cuts {
            let r = cut_flow(&tg, c).unwrap();
            prop_assert!(r.pi_set <= q(1, 2));
        }
    }
}
