use pachner::complexes::builders::torus_grid;
use pachner::complexes::tri3::Triangulation3;
use pachner::groups::FiniteGroup;
use pachner::qsim::{compile, dilate, hadamard_estimate, unitarity_error, DEFAULT_MAX_QUBITS};
use pachner::scalars::Scalar;
use pachner::tensornet::DEFAULT_BUDGET;
use pachner::{tlft2d, turaevviro};

#[test]
fn triangle_tensor_block_is_itself() {
    let g = FiniteGroup::named("cyclic:3").unwrap();
    let m = tlft2d::triangle_tensor(&g).matricize(&[0, 1], &[2]);
    let u = dilate(&m).unwrap();
    assert!(unitarity_error(&u) < 1e-9);
    assert!((u.view((0, 0), m.shape()) - &m).abs().max() < 1e-9);
}

#[test]
fn torus_entry_matches_state_sum() {
    let g = FiniteGroup::named("cyclic:2").unwrap();
    let net = tlft2d::build_network(&g, &torus_grid(1).unwrap()).unwrap();
    let plan = net.network.greedy_plan();
    let c = compile(&net.network, &plan, DEFAULT_MAX_QUBITS).unwrap();
    assert!(c.unitarity_error() < 1e-9 && c.block_error() < 1e-9);
    assert!((c.entry() - 2.0 / c.delta).abs() < 1e-7, "{} vs {}", c.entry(), 2.0 / c.delta);
    let hits = (0..200).filter(|&s| (hadamard_estimate(&c, 0.2, s).unwrap().x.re - 2.0).abs() < 0.2 * c.delta).count();
    assert!(hits >= 150, "{hits}");
}

#[test]
fn two_tet_sphere_entry_matches_tqft_value() {
    let m = Triangulation3::two_tet_sphere();
    let net = turaevviro::build_network(&m).unwrap();
    let plan = net.network.greedy_plan();
    let c = compile(&net.network, &plan, DEFAULT_MAX_QUBITS).unwrap();
    let raw = net.network.state_sum(DEFAULT_BUDGET).unwrap().to_f64();
    let tv = turaevviro::tv_exact(&m, DEFAULT_BUDGET).unwrap().to_f64();
    assert!((raw * turaevviro::vertex_factor(m.vertex_count()).to_f64() - tv).abs() < 1e-9);
    assert!(c.unitarity_error() < 1e-9 && c.block_error() < 1e-9);
    assert!((c.entry() - raw / c.delta).abs() < 1e-7, "{} qubits", c.qubits());
}
