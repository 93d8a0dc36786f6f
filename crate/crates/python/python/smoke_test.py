"""Smoke test for the compiled extension: python smoke_test.py"""

from fractions import Fraction

import pachner_py as p


def main():
    s3 = p.Group("symmetric:3")
    for genus, want in [(0, Fraction(6)), (1, Fraction(3)), (2, Fraction(9, 4))]:
        s = p.Surface.of_genus(genus)
        got = p.tlft_invariant(s3, s)
        assert got == p.mednykh(s3, s) == want, (genus, got)
        print(f"S3 genus {genus}: {got}")

    torus = p.Surface.torus(1)
    moved = torus.pachner13(0).pachner22(0, 0)
    assert p.tlft_invariant(s3, moved) == 3
    est, se = p.monte_carlo(p.Group("cyclic:2"), torus, samples=200_000, seed=3)
    assert abs(est - 2) <= 4 * se, (est, se)
    print(f"cyclic:2 torus Monte Carlo: {est:.4f} ± {se:.4f}")

    coeffs, dec = p.tv_exact(p.Triangulation.two_tet_sphere())
    _, dec5 = p.tv_exact(p.Triangulation.five_tet_sphere())
    assert abs(dec - dec5) < 1e-12 and abs(dec - 0.27639320225) < 1e-9
    print(f"TV(S^3) = {[str(c) for c in coeffs]} ~ {dec:.10f}")

    t3 = p.Triangulation.mapping_torus("", 3)
    assert t3.is_closed
    print(f"T^3: {t3}, TV ~ {p.tv_exact(t3)[1]:.6f}")

    q = p.qsim_estimate(p.Group("cyclic:2"), torus, eps=0.2, seed=0)
    assert abs(q["estimate"] - 2) < 0.2 * q["delta"]
    print(f"qsim: {q['qubits']} qubits, estimate {q['estimate']:.4f}")
    print("ok")


if __name__ == "__main__":
    main()
