//! Worked examples checked against independent oracles written here, not in the library.

use num_rational::BigRational;
use pachner::complexes::builders::{genus_surface, insert_cap_disk, torus_grid, Cell};
use pachner::complexes::io::{parse_surface, parse_tri3};
use pachner::complexes::Triangulation3;
use pachner::groups::{FiniteGroup, DEFAULT_HOM_CAP};
use pachner::scalars::{int, rat, FibScalar, QuadScalar, Scalar};
use pachner::tensornet::{Endpoint, Tensor, TensorNetwork, DEFAULT_BUDGET, DEFAULT_MEMORY};
use pachner::{tlft2d, turaevviro};

const PHI: f64 = 1.618_033_988_749_895;

fn data(name: &str) -> String {
    std::fs::read_to_string(format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

/// Symbol from the case table on Σj, in floats.
fn symbol_f64(j: [u8; 6]) -> f64 {
    let faces = [[j[0], j[1], j[2]], [j[2], j[3], j[4]], [j[4], j[5], j[0]], [j[1], j[3], j[5]]];
    if faces.iter().any(|f| f.iter().filter(|&&x| x == 1).count() == 1) {
        return 0.0;
    }
    match j.iter().map(|&x| x as u32).sum::<u32>() {
        0 => 1.0,
        3 => (2.0 / (1.0 + 5f64.sqrt())).sqrt(),
        4 | 5 => 2.0 / (1.0 + 5f64.sqrt()),
        6 => -2.0 / (3.0 + 5f64.sqrt()),
        _ => unreachable!(),
    }
}

/// Brute-force TV over all 2^E labelings, in floats.
fn tv_f64(m: &Triangulation3) -> f64 {
    let ne = m.edge_count();
    let dims = [1.0, PHI];
    let mut total = 0.0;
    for lab in 0..1u64 << ne {
        let l = |e: usize| (lab >> e & 1) as u8;
        let mut w: f64 = (0..ne).map(|e| dims[l(e) as usize]).product();
        for t in 0..m.tet_count() {
            w *= symbol_f64(std::array::from_fn(|k| l(m.edge_of(t, k))));
        }
        total += w;
    }
    total * (1.0 + PHI * PHI).powi(-(m.vertex_count() as i32))
}

#[test]
fn field_examples() {
    let s5 = QuadScalar::sqrt_of(5);
    assert_eq!(&s5 * &s5, QuadScalar::rational(int(5), 5));
    let phi = &(&QuadScalar::rational(int(1), 5) + &s5) * &QuadScalar::rational(rat(1, 2), 5);
    assert_eq!(&phi * &phi, QuadScalar::new(rat(3, 2), rat(1, 2), 5));
    let t2 = &FibScalar::t() * &FibScalar::t();
    assert_eq!(&t2 * &t2, &t2 + &FibScalar::one());
    assert!((FibScalar::phi().to_f64() - 1.618_033_988_7).abs() < 1e-10);
    assert!((QuadScalar::sqrt_of(6).to_f64() - 2.449_489_742_8).abs() < 1e-10);
    assert_eq!(FibScalar::zero().to_f64(), 0.0);
}

#[test]
fn surface_files() {
    let torus = parse_surface(&data("torus.srf")).unwrap();
    assert_eq!((torus.triangle_count(), torus.edge_count(), torus.vertex_count()), (2, 3, 1));
    assert_eq!(torus.euler_characteristic(), 0);
    assert_eq!(parse_surface(&data("sphere.srf")).unwrap().euler_characteristic(), 2);
    assert_eq!(parse_surface(&data("genus2.srf")).unwrap().euler_characteristic(), -2);
    let dangling = "surface 2\ntri 0: 1.1+ 7.2+ 1.0+\ntri 1: 0.2+ 0.0+ 0.1+\n";
    assert!(parse_surface(dangling).is_err());
    assert_eq!(genus_surface(3).unwrap().euler_characteristic(), -4);
}

#[test]
fn three_manifold_files() {
    let m = parse_tri3(&data("s3_2tet.t3m")).unwrap();
    assert!(m.is_closed());
    assert_eq!((m.vertex_count(), m.edge_count()), (4, 6));
    assert!((0..6).all(|e| m.edge_degree(e) == 2));
    let m5 = parse_tri3(&data("s3_5tet.t3m")).unwrap();
    assert_eq!((m5.vertex_count(), m5.edge_count()), (5, 10));
    assert!((0..10).all(|e| m5.edge_degree(e) == 3));
    let m8 = m5.pachner14(0).unwrap();
    assert_eq!((m8.tet_count(), m8.vertex_count()), (8, 6));
    let single = parse_tri3(&data("single_tet.t3m")).unwrap();
    assert_eq!(single.report().boundary_faces, 4);
}

#[test]
fn regular_character_and_classes() {
    let s3 = FiniteGroup::named("symmetric:3").unwrap();
    assert_eq!(s3.chi_reg(s3.identity()), 6);
    let transposition = (0..6).find(|&x| x != s3.identity() && s3.mul(x, x) == s3.identity()).unwrap();
    assert_eq!(s3.chi_reg(transposition), 0);
    assert_eq!(FiniteGroup::named("cyclic:5").unwrap().chi_reg(0), 5);
    assert_eq!(s3.conjugacy_class_count(), 3);
    assert_eq!(FiniteGroup::named("quaternion8").unwrap().conjugacy_class_count(), 5);
}

/// Burnside: commuting pairs number Σ_x |C(x)|, computed here by scanning pairs.
#[test]
fn hom_count_matches_pair_scan() {
    for name in ["cyclic:4", "symmetric:3", "dihedral:4", "quaternion8", "dihedral:6"] {
        let g = FiniteGroup::named(name).unwrap();
        let n = g.order();
        let commuting = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| g.mul(a, b) == g.mul(b, a)).count();
        assert_eq!(g.hom_count(1, DEFAULT_HOM_CAP).unwrap(), commuting as u64, "{name}");
        let dims = g.irrep_dims().unwrap();
        assert_eq!(dims.iter().map(|d| d * d).sum::<u32>() as usize, n);
        assert_eq!(dims.len(), g.conjugacy_class_count());
    }
    assert_eq!(FiniteGroup::named("symmetric:3").unwrap().hom_count(2, DEFAULT_HOM_CAP).unwrap(), 486);
}

#[test]
fn tlft_values() {
    let s3 = FiniteGroup::named("symmetric:3").unwrap();
    let c2 = FiniteGroup::named("cyclic:2").unwrap();
    let sphere = parse_surface(&data("sphere.srf")).unwrap();
    let torus = parse_surface(&data("torus.srf")).unwrap();
    let genus2 = parse_surface(&data("genus2.srf")).unwrap();
    assert_eq!(tlft2d::invariant_exact(&s3, &sphere, DEFAULT_BUDGET).unwrap(), int(6));
    assert_eq!(tlft2d::invariant_exact(&s3, &torus, DEFAULT_BUDGET).unwrap(), int(3));
    assert_eq!(tlft2d::invariant_exact(&s3, &genus2, DEFAULT_BUDGET).unwrap(), rat(9, 4));
    assert_eq!(tlft2d::mednykh_rhs(&s3, &torus, DEFAULT_HOM_CAP).unwrap(), int(3));
    assert_eq!(tlft2d::invariant_exact(&c2, &torus, DEFAULT_BUDGET).unwrap(), int(2));
    let count = tlft2d::valid_labeling_count(&c2, &torus, DEFAULT_BUDGET).unwrap();
    assert_eq!(tlft2d::labeling_identity(&c2, &torus, count), int(2));
    let count = tlft2d::valid_labeling_count(&s3, &sphere, DEFAULT_BUDGET).unwrap();
    assert_eq!(tlft2d::labeling_identity(&s3, &sphere, count), int(6));
}

/// Greedy and reversed greedy plans on a four-triangle torus give the same value.
#[test]
fn contraction_plans_agree() {
    let g = FiniteGroup::named("symmetric:3").unwrap();
    let s = torus_grid(2).unwrap();
    let net = tlft2d::build_network(&g, &s).unwrap();
    let greedy = net.network.greedy_plan();
    let reversed: Vec<usize> = greedy.iter().rev().copied().collect();
    let a = net.network.contract(&greedy, DEFAULT_MEMORY).unwrap();
    let b = net.network.contract(&reversed, DEFAULT_MEMORY).unwrap();
    assert_eq!(a.value, b.value);
    assert_eq!(a.value.to_rational(), Some(int(3)), "{}", a.value);
    for r in [&a, &b] {
        let prod: f64 = r.steps.iter().map(|s| s.norm).product();
        assert!((prod - r.delta).abs() <= 1e-9 * r.delta);
    }
}

#[test]
fn operator_norms_of_tlft_tensors() {
    for name in ["cyclic:2", "cyclic:3", "symmetric:3"] {
        let g = FiniteGroup::named(name).unwrap();
        let root = (g.order() as f64).sqrt();
        let c = tlft2d::triangle_tensor(&g);
        let gl = tlft2d::gluing_tensor(&g);
        assert!((c.operator_norm(0) - root).abs() < 1e-9);
        assert!((c.operator_norm(3) - root).abs() < 1e-9);
        assert!((c.operator_norm(1) - 1.0).abs() < 1e-9);
        assert!((c.operator_norm(2) - 1.0).abs() < 1e-9);
        assert!((gl.operator_norm(0) - root).abs() < 1e-9);
        assert!((gl.operator_norm(1) - 1.0).abs() < 1e-9);
    }
}

#[test]
fn l2_constants() {
    let sq5 = FibScalar::sqrt5();
    let want = &FibScalar::from_ints([16, 0, 0, 0]) - &(&FibScalar::from_ints([4, 0, 0, 0]) * &sq5);
    assert_eq!(turaevviro::symbol_tensor().l2_norm_squared(), want);
    let glue = turaevviro::diagonal_tensor(2, turaevviro::d);
    let d2 = &(&FibScalar::from_ints([5, 0, 0, 0]) + &sq5) / &FibScalar::from_ints([2, 0, 0, 0]);
    assert_eq!(glue.l2_norm_squared(), d2);
    assert!(Tensor::<FibScalar>::zeros(&[2, 2]).l2_norm_squared().is_zero());
}

#[test]
fn symbol_table_matches_case_formula() {
    for x in 0..64u32 {
        let j: [u8; 6] = std::array::from_fn(|k| (x >> k & 1) as u8);
        assert!((turaevviro::symbol(&j).to_f64() - symbol_f64(j)).abs() < 1e-14, "{j:?}");
    }
    assert_eq!(turaevviro::symbol(&[0; 6]), FibScalar::one());
    let all_one = &FibScalar::from_ints([-2, 0, 0, 0]) / &(&FibScalar::from_ints([3, 0, 0, 0]) + &FibScalar::sqrt5());
    assert_eq!(turaevviro::symbol(&[1; 6]), all_one);
    assert!(turaevviro::symbol(&[1, 0, 0, 0, 0, 0]).is_zero());
}

#[test]
fn tv_matches_brute_force() {
    let d_inv2 = (2.0 / (5.0 + 5f64.sqrt())).to_owned();
    for m in [Triangulation3::two_tet_sphere(), Triangulation3::five_tet_sphere(), Triangulation3::five_tet_sphere().pachner14(2).unwrap()] {
        let exact = turaevviro::tv_exact(&m, DEFAULT_BUDGET).unwrap();
        assert!((exact.to_f64() - tv_f64(&m)).abs() < 1e-12);
        assert!((exact.to_f64() - d_inv2).abs() < 1e-12);
        let c = turaevviro::tv_contract(&m, None, DEFAULT_MEMORY).unwrap();
        assert_eq!(c.value, exact);
    }
}

/// Cutting the two-tet sphere into two tetrahedra and pairing their boundary tensors.
#[test]
fn boundary_tensors_compose() {
    let (edges, t) = turaevviro::tqft_boundary(&Triangulation3::single_tetrahedron(), DEFAULT_BUDGET).unwrap();
    assert_eq!(t.dims(), &[2; 6]);
    assert_eq!(edges.len(), 6);
    let paired = t.data().iter().fold(FibScalar::zero(), |acc, x| acc.add_ref(&x.mul_ref(x)));
    let m = Triangulation3::two_tet_sphere();
    let closed = turaevviro::tv_exact(&m, DEFAULT_BUDGET).unwrap();
    assert_eq!(paired.mul_ref(&turaevviro::vertex_factor(4)), closed);
    let (_, whole) = turaevviro::tqft_boundary(&m, DEFAULT_BUDGET).unwrap();
    assert_eq!(whole.data()[0], paired);
}

#[test]
fn single_tet_scale_floor() {
    let want = &(&FibScalar::from_ints([3, 0, 0, 0]) + &FibScalar::sqrt5()) / &FibScalar::from_ints([50, 0, 0, 0]);
    assert_eq!(turaevviro::delta_prime_floor(&Triangulation3::single_tetrahedron()), want);
    // d₁⁶/D⁸ by hand.
    assert!((want.to_f64() - PHI.powi(6) / (1.0 + PHI * PHI).powi(4)).abs() < 1e-14);
}

#[test]
fn f_moves() {
    let f = turaevviro::f_move_matrix(0, 0, 0, 0);
    assert_eq!((f.rows.len(), f.cols.len()), (1, 1));
    assert_eq!(f.entries[0][0], FibScalar::one());
    let f = turaevviro::f_move_matrix(1, 1, 1, 1);
    assert_eq!((f.rows.len(), f.cols.len()), (2, 2));
    assert!(f.is_unitary());
    for x in 0..16u8 {
        let f = turaevviro::f_move_matrix(x & 1, x >> 1 & 1, x >> 2 & 1, x >> 3 & 1);
        assert_eq!(f.rows.len(), f.cols.len());
        assert!(f.is_unitary());
    }
}

#[test]
fn cap_examples() {
    let torus = parse_surface(&data("torus.srf")).unwrap();
    let ordering = [Cell::Triangle(0), Cell::Edge(0), Cell::Edge(1), Cell::Edge(2), Cell::Triangle(1)];
    assert_eq!(tlft2d::cap_count(&torus, &ordering).unwrap(), 2);
    assert!(tlft2d::cap_count(&torus, &ordering[..4]).is_err());
    let (s1, disk) = insert_cap_disk(&torus, 0).unwrap();
    assert_eq!(s1.euler_characteristic(), 0);
    let before = tlft2d::min_cap_count(&torus, &[]).unwrap().unwrap().0;
    let (after, witness) = tlft2d::min_cap_count(&s1, &disk).unwrap().unwrap();
    assert_eq!((before, after), (2, 3));
    assert_eq!(tlft2d::cap_count(&s1, &witness).unwrap(), 3);
}

/// Hand-built network: A·B traced, with A = [[1,2],[3,4]], B = [[0,1],[1,1/2]].
#[test]
fn matrix_product_trace() {
    let q = |n: i64, d: i64| QuadScalar::rational(rat(n, d), 2);
    let mut net = TensorNetwork::new();
    let a = net.add_tensor(Tensor::new(vec![2, 2], vec![q(1, 1), q(2, 1), q(3, 1), q(4, 1)]).unwrap());
    let b = net.add_tensor(Tensor::new(vec![2, 2], vec![q(0, 1), q(1, 1), q(1, 1), q(1, 2)]).unwrap());
    net.connect(Endpoint { vertex: a, axis: 1 }, Endpoint { vertex: b, axis: 0 }).unwrap();
    net.connect(Endpoint { vertex: b, axis: 1 }, Endpoint { vertex: a, axis: 0 }).unwrap();
    // tr(AB) = 1·0 + 2·1 + 3·1 + 4·(1/2) = 7
    let want: BigRational = int(7);
    assert_eq!(net.state_sum(DEFAULT_BUDGET).unwrap().to_rational().unwrap(), want);
    assert_eq!(net.contract(&[1, 0], DEFAULT_MEMORY).unwrap().value.to_rational().unwrap(), want);
}
