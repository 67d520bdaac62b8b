"""Birational maps, monomial maps, and exact Jacobians."""

import random
from fractions import Fraction

import mpmath as mp
import pytest

from cluster_reduce import (
    BirationalMap,
    MonomialMap,
    positive_point,
    random_positive_point,
    rng_substream,
)

LYNESS = ["x2", "(x2 + 1)/x1"]


class TestBirationalMap:
    def test_identity(self):
        ident = BirationalMap.identity(3)
        assert ident.is_identity()
        assert ident.evaluate((Fraction(1), Fraction(2), Fraction(3))) == (
            Fraction(1),
            Fraction(2),
            Fraction(3),
        )

    def test_from_to_strings(self):
        f = BirationalMap.from_strings(LYNESS)
        assert f.dim_in == 2
        assert f.to_strings() == LYNESS
        assert f.to_strings(names=["u", "v"]) == ["v", "(v + 1)/u"]

    def test_evaluate(self):
        f = BirationalMap.from_strings(LYNESS)
        assert f.evaluate((Fraction(1), Fraction(1))) == (Fraction(1), Fraction(2))
        assert f.evaluate((Fraction(1), Fraction(2))) == (Fraction(2), Fraction(3))

    def test_compose_vs_pointwise(self):
        rng = random.Random(31)
        f = BirationalMap.from_strings(LYNESS)
        g = f.compose(f)
        for i in range(10):
            p = random_positive_point(2, rng_substream(31, i))
            assert g.evaluate(p) == f.evaluate(f.evaluate(p))

    def test_iterate_lyness_period_five(self):
        f = BirationalMap.from_strings(LYNESS)
        assert not f.is_identity()
        assert not f.iterate(2).is_identity()
        assert not f.iterate(3).is_identity()
        assert not f.iterate(4).is_identity()
        assert f.iterate(5).is_identity()
        assert f.iterate(10).is_identity()

    def test_iterate_zero_is_identity(self):
        f = BirationalMap.from_strings(LYNESS)
        assert f.iterate(0).is_identity()
        assert f.iterate(1) == f

    def test_evaluate_mp(self):
        f = BirationalMap.from_strings(LYNESS)
        with mp.workdps(50):
            out = f.evaluate_mp([mp.mpf(1), mp.mpf(1)])
            assert abs(out[1] - 2) < mp.mpf("1e-45")

    def test_jacobian_against_finite_differences(self):
        f = BirationalMap.from_strings(
            ["x2", "x3", "(x2*x3 + 1)/(x1*x3)"]
        )
        rng = random.Random(32)
        for i in range(5):
            p = random_positive_point(3, rng_substream(32, i))
            jac = f.jacobian(p)
            with mp.workdps(64):
                h = mp.mpf("1e-21")
                base = [mp.mpf(v.numerator) / v.denominator for v in p]
                for col in range(3):
                    up, down = list(base), list(base)
                    up[col] += h
                    down[col] -= h
                    fu = f.evaluate_mp(up)
                    fd = f.evaluate_mp(down)
                    for row in range(3):
                        exact = jac[row][col]
                        approx = (fu[row] - fd[row]) / (2 * h)
                        target = mp.mpf(exact.numerator) / exact.denominator
                        assert abs(approx - target) < mp.mpf("1e-30")

    def test_jacobian_mp_matches_exact(self):
        f = BirationalMap.from_strings(LYNESS)
        p = (Fraction(3, 2), Fraction(5, 3))
        exact = f.jacobian(p)
        with mp.workdps(40):
            approx = f.jacobian_mp([mp.mpf(3) / 2, mp.mpf(5) / 3])
            for i in range(2):
                for j in range(2):
                    target = mp.mpf(exact[i][j].numerator) / exact[i][j].denominator
                    assert abs(approx[i][j] - target) < mp.mpf("1e-35")

    def test_json_round_trip(self):
        f = BirationalMap.from_strings(LYNESS)
        doc = f.to_json_dict()
        assert doc["schema"] == "v1"
        assert BirationalMap.from_json_dict(doc) == f

    def test_dimension_mismatch_rejected(self):
        f = BirationalMap.from_strings(LYNESS)
        with pytest.raises(ValueError):
            f.evaluate((Fraction(1),))


class TestMonomialMap:
    def test_components(self):
        m = MonomialMap.from_rows([(1, -1, 0), (0, 1, -2)], 3)
        assert (m.dim_in, m.dim_out) == (3, 2)
        assert m.as_birational().to_strings() == ["x1/x2", "x2/x3^2"]

    def test_evaluate(self):
        m = MonomialMap.from_rows([(2, -1)], 2)
        assert m.evaluate((Fraction(3), Fraction(2))) == (Fraction(9, 2),)

    def test_after_birational(self):
        m = MonomialMap.from_rows([(1, 1)], 2)
        f = BirationalMap.from_strings(LYNESS)
        pulled = m.after(f)
        assert pulled.to_strings() == ["(x2^2 + x2)/x1"]

    def test_after_monomial_multiplies_exponents(self):
        outer = MonomialMap.from_rows([(1, -1)], 2)
        inner = MonomialMap.from_rows([(1, 0, 1), (0, 2, 0)], 3)
        combined = outer.after_monomial(inner)
        assert combined.exponents.entries == ((1, -2, 1),)

    def test_lattice(self):
        m = MonomialMap.from_rows([(2, 0), (0, 2)], 2)
        assert m.lattice().dim == 2

    def test_json_round_trip(self):
        m = MonomialMap.from_rows([(1, -2, 1)], 3)
        doc = m.to_json_dict()
        assert MonomialMap.from_json_dict(doc) == m


class TestPoints:
    def test_positive_point_validation(self):
        with pytest.raises(ValueError):
            positive_point((Fraction(0), Fraction(1)))
        with pytest.raises(ValueError):
            positive_point((Fraction(-1),))

    def test_substream_determinism(self):
        a = random_positive_point(4, rng_substream(5, 0))
        b = random_positive_point(4, rng_substream(5, 0))
        c = random_positive_point(4, rng_substream(5, 1))
        assert a == b
        assert a != c
        assert all(v > 0 for v in a)
