"""Smoke test for the pyjcfrob extension module.

Build and install first, e.g. `pip install maturin && maturin develop -m crates/python/Cargo.toml`.
"""

from fractions import Fraction

import pyjcfrob
from pyjcfrob import Matrix


def frac_rows(m):
    return [[Fraction(x) for x in row] for row in m.rows()]


def main():
    m = Matrix([[2, 1, 0], [0, 2, 0], [0, 0, -1]])
    h, v, n = m.complete_jordan_chevalley()
    assert h + v + n == m
    assert n.is_nilpotent()
    assert v.is_zero()
    assert m.minimal_polynomial() == ["4", "0", "-3", "1"]

    rot = Matrix([["0", "-1"], ["1", "0"]])
    h, v, n = rot.complete_jordan_chevalley()
    assert h.is_zero() and v == rot and n.is_zero()

    fine = Matrix([[1, 2], [-3, 1]]).fine_frobenius()
    assert fine["quadratic"][0]["n"] == "6"
    norm = Matrix([[1, 2], [-3, 1]]).normalized_frobenius()
    assert norm["quadratic"][0]["im"] == {"a": "0", "b": "1", "d": "6"}

    fac = pyjcfrob.factor(["-1", "0", "0", "0", "1"], field="Fp:5")
    assert [f["multiplicity"] for f in fac["factors"]] == [1, 1, 1, 1]

    cos = rot.apply_series("cos")
    entry = cos["value"]["matrix"]["entries"][0][0]
    assert abs(float(entry["value"]) - 1.5430806348152437) < 1e-12

    three = Matrix([[3, 0], [0, 3]])
    assert three.in_omega_hat("exp", "padic:3")
    assert not Matrix.identity(2).in_omega_hat("exp", "padic:3")
    padic = three.apply_series("exp", abs="padic:3")
    assert padic["value"]["matrix"]["valuation_bound"] >= 10

    try:
        Matrix([[1, 1], [0, 1]]).fine_frobenius()
    except pyjcfrob.JcfrobError as e:
        assert str(e).startswith("NotSemisimple")
    else:
        raise AssertionError("expected NotSemisimple")

    print("pyjcfrob smoke test passed")


if __name__ == "__main__":
    main()
