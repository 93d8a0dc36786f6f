use num_rational::BigRational;
use pachner::complexes::builders::{genus_surface, horizontal_strip, torus_grid, vertical_strip, Cell};
use pachner::complexes::random::{random_surface_move, random_tri3_move};
use pachner::complexes::{dehn_twist, Triangulation3};
use pachner::groups::FiniteGroup;
use pachner::scalars::{rat, FibScalar, QuadScalar, Scalar};
use pachner::tensornet::{Endpoint, Tensor, TensorNetwork, DEFAULT_BUDGET, DEFAULT_MEMORY};
use pachner::{tlft2d, turaevviro};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_rat() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn quad() -> impl Strategy<Value = QuadScalar> {
    (small_rat(), small_rat()).prop_map(|(a, b)| QuadScalar::new(a, b, 6))
}

fn fib() -> impl Strategy<Value = FibScalar> {
    [small_rat(), small_rat(), small_rat(), small_rat()].prop_map(FibScalar::new)
}

proptest! {
    #[test]
    fn quad_field_axioms(a in quad(), b in quad(), c in quad()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.try_inv().unwrap(), QuadScalar::one());
        }
    }

    #[test]
    fn fib_field_axioms(a in fib(), b in fib(), c in fib()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv(), FibScalar::one());
        }
    }

    #[test]
    fn to_f64_is_multiplicative(xs in prop::collection::vec(fib(), 1..=8), ys in prop::collection::vec(quad(), 1..=8)) {
        let scale = |v: f64| v.abs().max(1.0);
        let p = xs.iter().fold(FibScalar::one(), |acc, x| acc.mul_ref(x));
        let pf: f64 = xs.iter().map(Scalar::to_f64).product();
        prop_assert!((p.to_f64() - pf).abs() <= 1e-10 * scale(pf));
        let q = ys.iter().fold(QuadScalar::one(), |acc, y| acc.mul_ref(y));
        let qf: f64 = ys.iter().map(Scalar::to_f64).product();
        prop_assert!((q.to_f64() - qf).abs() <= 1e-10 * scale(qf));
    }
}

/// Random closed network: `edges` as (vertex, vertex, dimension), entries drawn from `seed`.
fn random_network(nv: usize, edges: &[(usize, usize, usize)], seed: u64) -> TensorNetwork<QuadScalar> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut axes: Vec<Vec<usize>> = vec![Vec::new(); nv];
    let mut ends = Vec::new();
    for &(a, b, d) in edges {
        let (a, b) = (a % nv, b % nv);
        axes[a].push(d);
        let ia = axes[a].len() - 1;
        axes[b].push(d);
        let ib = axes[b].len() - 1;
        ends.push((a, ia, b, ib));
    }
    let mut net = TensorNetwork::new();
    for dims in &axes {
        net.add_tensor(Tensor::from_fn(dims, |_| {
            let n = rng.gen_range(-3i64..=3);
            QuadScalar::rational(rat(n, rng.gen_range(1..=3)), 2)
        }));
    }
    for (a, ia, b, ib) in ends {
        net.connect(Endpoint { vertex: a, axis: ia }, Endpoint { vertex: b, axis: ib }).unwrap();
    }
    net
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]
    #[test]
    fn contraction_equals_state_sum(
        nv in 1usize..=4,
        edges in prop::collection::vec((0usize..4, 0usize..4, 1usize..=3), 0..=6),
        seed in any::<u64>(),
        perm_seed in any::<u64>(),
    ) {
        let net = random_network(nv, &edges, seed);
        let want = net.state_sum(DEFAULT_BUDGET).unwrap();
        let mut plan: Vec<usize> = (0..nv).collect();
        plan.shuffle(&mut ChaCha8Rng::seed_from_u64(perm_seed));
        let r = net.contract(&plan, DEFAULT_MEMORY).unwrap();
        prop_assert_eq!(&r.value, &want);
        let rev: Vec<usize> = plan.iter().rev().copied().collect();
        prop_assert_eq!(&net.contract(&rev, DEFAULT_MEMORY).unwrap().value, &want);
        let prod: f64 = r.steps.iter().map(|s| s.norm).product();
        prop_assert!((prod - r.delta).abs() <= 1e-9 * r.delta.max(1e-300));
        for t in net.tensors() {
            let hs = t.l2_norm_squared().to_f64().sqrt();
            for k in 0..=t.rank() {
                prop_assert!(t.operator_norm(k) <= hs + 1e-9);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn euler_characteristic_survives_pachner_moves(genus in 0usize..=2, seed in any::<u64>(), steps in 1usize..=12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = genus_surface(genus).unwrap();
        let chi = s.euler_characteristic();
        for _ in 0..steps {
            s = random_surface_move(&s, &mut rng, 16).unwrap().0;
            prop_assert_eq!(s.euler_characteristic(), chi);
            prop_assert!(s.is_closed());
        }
    }

    #[test]
    fn three_dimensional_moves_stay_valid(seed in any::<u64>(), steps in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = Triangulation3::five_tet_sphere();
        for _ in 0..steps {
            m = random_tri3_move(&m, &mut rng, 11).unwrap().0;
            let r = m.report();
            prop_assert!(r.closed && r.manifold && r.orientable);
        }
    }

    #[test]
    fn caps_at_least_two(k in 1usize..=3, seed in any::<u64>()) {
        let s = torus_grid(k).unwrap();
        let mut cells: Vec<Cell> = (0..s.triangle_count()).map(Cell::Triangle).chain((0..s.edge_count()).map(Cell::Edge)).collect();
        cells.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(tlft2d::cap_count(&s, &cells).unwrap() >= 2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn tlft_invariant_under_moves(g in prop::sample::select(vec!["cyclic:2", "cyclic:3", "symmetric:3"]), genus in 0usize..=2, seed in any::<u64>()) {
        let g = FiniteGroup::named(g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = genus_surface(genus).unwrap();
        let want = tlft2d::invariant_exact(&g, &base, DEFAULT_BUDGET).unwrap();
        let mut s = base;
        for _ in 0..3 {
            s = random_surface_move(&s, &mut rng, 10).unwrap().0;
        }
        prop_assert_eq!(tlft2d::invariant_exact(&g, &s, DEFAULT_BUDGET).unwrap(), want);
    }

    #[test]
    fn tv_invariant_under_moves(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = Triangulation3::two_tet_sphere();
        let want = turaevviro::tv_exact(&m, DEFAULT_BUDGET).unwrap();
        for _ in 0..4 {
            m = random_tri3_move(&m, &mut rng, 9).unwrap().0;
        }
        prop_assert_eq!(turaevviro::tv_exact(&m, DEFAULT_BUDGET).unwrap(), want);
    }
}

#[test]
fn every_grid_strip_twists_isomorphically() {
    for k in 3..=4 {
        let s = torus_grid(k).unwrap();
        let strips = std::iter::once(horizontal_strip(k)).chain((0..k).map(|c| vertical_strip(k, c)));
        for strip in strips {
            for dir in [1, -1] {
                let tw = dehn_twist(&s, &strip, dir).unwrap();
                assert_eq!(tw.flips.len(), 2 * strip.len());
                assert_eq!(tw.surface.incidence_matrix(), s.incidence_matrix());
            }
        }
    }
}
