use pyo3::ffi::c_str;
use pyo3::prelude::*;

fn with_module(code: &std::ffi::CStr) {
    Python::initialize();
    Python::attach(|py| {
        let m = PyModule::new(py, "pachner_py")?;
        pachner_py::pachner_py(&m)?;
        py.import("sys")?.getattr("modules")?.set_item("pachner_py", m)?;
        py.run(code, None, None)
    })
    .unwrap_or_else(|e| panic!("{e}"));
}

#[test]
fn bindings_round_trip() {
    with_module(c_str!(
        r#"
import pachner_py as p
from fractions import Fraction
s3 = p.Group("symmetric:3")
assert s3.order == 6 and sorted(s3.irrep_dims()) == [1, 1, 2]
g2 = p.Surface.of_genus(2)
assert p.tlft_invariant(s3, g2) == Fraction(9, 4)
assert p.mednykh(s3, g2) == p.closed_form(s3, g2) == Fraction(9, 4)
t = p.Surface.torus(1)
assert p.tlft_contract(p.Group("cyclic:2"), t)[0] == 2
assert p.Surface.parse(t.serialize()).incidence_matrix() == t.incidence_matrix()
a, _ = p.tv_exact(p.Triangulation.two_tet_sphere())
b, dec = p.tv_exact(p.Triangulation.five_tet_sphere().pachner14(0))
assert a == b and abs(dec - 0.2763932022500210) < 1e-12
q = p.qsim_estimate(p.Group("cyclic:2"), t, eps=0.2, seed=1)
assert abs(q["entry"] * q["delta"] - 2) < 1e-9
try:
    p.Group("nonsense")
    raise AssertionError
except ValueError:
    pass
"#
    ));
}
