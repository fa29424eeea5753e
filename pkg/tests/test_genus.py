from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from thetaperm.combinatorics import eulerian_row, stirling2
from thetaperm.errors import PreconditionError
from thetaperm.genus import (
    CHI_Y,
    EULER,
    TODD,
    TODD_ST,
    chi_p,
    chi_y_gf,
    chi_y_poly,
    f_gf,
    formal_group_tables,
    genus_eval,
    gf_value,
    h_gf,
    td_intersections,
    td_theta_gf,
)
from thetaperm.permutohedron import f_poly, h_poly
from thetaperm.polyring import MPoly, theta, var

s, t, b, y = var("s"), var("t"), var("b"), var("y")
XPI3 = Fraction(1, 2) * theta(1) ** 3 - Fraction(2, 3) * theta(1) * theta(2) - Fraction(5, 6) * theta(3)


@st.composite
def theta_polys(draw):
    out = MPoly()
    for _ in range(draw(st.integers(min_value=0, max_value=3))):
        c = draw(st.fractions(min_value=-3, max_value=3, max_denominator=6))
        mono = MPoly.const(c)
        for m in draw(st.lists(st.integers(min_value=1, max_value=4), max_size=3)):
            mono = mono * theta(m)
        out = out + mono
    return out


class TestSeries:
    def test_td_theta_low_orders(self):
        series = td_theta_gf(6)
        assert gf_value(series, 0) == 1
        assert gf_value(series, 1) == -b + 2 * t

    @pytest.mark.parametrize("n", range(0, 8))
    def test_td_theta_top_intersection(self, n):
        value = gf_value(td_theta_gf(10), n)
        assert value.coefficient(t=n) == factorial(n + 1)

    def test_f_gf(self):
        series = f_gf(6)
        assert gf_value(series, 1) == s + 2 * t
        assert gf_value(series, 3) == s**3 + 14 * s**2 * t + 36 * s * t**2 + 24 * t**3

    def test_face_relation(self):
        assert f_gf(12).subs({"s": -b}) == td_theta_gf(12)

    def test_h_gf(self):
        series = h_gf(6)
        assert gf_value(series, 0) == 1
        assert gf_value(series, 2) == s**2 + 4 * s * t + t**2

    @pytest.mark.parametrize("n", range(0, 11))
    def test_h_gf_matches_polytope(self, n):
        assert gf_value(h_gf(12), n) == h_poly(n)

    @pytest.mark.parametrize("n", range(0, 11))
    def test_f_gf_matches_polytope(self, n):
        assert gf_value(f_gf(12), n) == f_poly(n)

    @pytest.mark.parametrize("n", range(0, 9))
    def test_chi_y_specialisations(self, n):
        value = gf_value(chi_y_gf(10), n)
        assert value == gf_value(h_gf(10), n).subs({"s": y, "t": -1})
        assert value.evaluate({"y": 0}) == (-1) ** n
        assert value.evaluate({"y": -1}) == (-1) ** n * factorial(n + 1)
        # (-1)^n A_{n+1}(-y)
        row = eulerian_row(n + 1)
        assert value == sum(((-1) ** n * a * (-y) ** k for k, a in enumerate(row)), MPoly())

    def test_chi_y_two(self):
        assert gf_value(chi_y_gf(6), 2) == 1 - 4 * y + y**2

    def test_notes_record_cancellation(self):
        assert "cancelled" in h_gf(6).note
        assert "cancelled" in td_theta_gf(6).note

    def test_truncation_coherence(self):
        assert h_gf(12).truncate(7) == h_gf(8).truncate(7)
        assert chi_y_gf(12).truncate(7) == chi_y_gf(8).truncate(7)

    def test_order_precondition(self):
        with pytest.raises(PreconditionError):
            h_gf(0)


class TestChiP:
    def test_examples(self):
        assert chi_p(2, 1) == -4
        assert chi_p(4, 2) == 66
        assert all(chi_p(n, n) == 1 for n in range(10))

    @pytest.mark.parametrize("n", range(0, 9))
    def test_sum_matches_series(self, n):
        assert sum((chi_p(n, p) * y**p for p in range(n + 1)), MPoly()) == gf_value(chi_y_gf(10), n)
        assert chi_y_poly(n) == gf_value(chi_y_gf(10), n)


class TestGenusEval:
    def test_todd_of_theta(self):
        assert all(genus_eval(theta(n), TODD) == (-1) ** n for n in range(1, 8))

    def test_todd_of_xpi3(self):
        assert genus_eval(XPI3, TODD) == 1

    def test_two_parameter_todd_of_xpi3(self):
        h1, h2, h3 = s + t, s**2 + 4 * s * t + t**2, s**3 + 11 * s**2 * t + 11 * s * t**2 + t**3
        expected = Fraction(1, 2) * h1**3 - Fraction(2, 3) * h1 * h2 - Fraction(5, 6) * h3
        assert expected == -h3
        assert genus_eval(XPI3, TODD_ST) == expected

    def test_euler_and_chi_y(self):
        assert genus_eval(theta(2), EULER) == 6
        assert genus_eval(theta(2), CHI_Y) == 1 - 4 * y + y**2
        assert genus_eval(MPoly.const(5), TODD) == 5

    @settings(max_examples=40, deadline=None)
    @given(theta_polys(), theta_polys())
    def test_ring_homomorphism(self, p, q):
        for g in (TODD, TODD_ST, EULER):
            assert genus_eval(p * q, g) == genus_eval(p, g) * genus_eval(q, g)
            assert genus_eval(p + q, g) == genus_eval(p, g) + genus_eval(q, g)


class TestIntersections:
    @pytest.mark.parametrize("n", range(0, 9))
    def test_todd_from_series(self, n):
        values = td_intersections(n)
        for k in range(n + 1):
            assert values[k] == (-1) ** (n - k) * factorial(k + 1) * stirling2(n + 1, k + 1)

    def test_n3(self):
        assert td_intersections(3) == {0: -1, 1: 14, 2: -36, 3: 24}


class TestFormalGroup:
    def test_order_six(self):
        lhs, rhs = formal_group_tables(6)
        assert lhs == rhs
        assert lhs[(1, 0)] == 1 and lhs[(0, 1)] == 1
        # beta(u+v) = u + v + (s+t)(u+v)^2/2 + ... so the uv coefficient is s+t
        assert lhs[(1, 1)] == s + t

    def test_order_eight(self):
        lhs, rhs = formal_group_tables(8)
        assert lhs == rhs
        assert all(i + j <= 8 for i, j in lhs)
