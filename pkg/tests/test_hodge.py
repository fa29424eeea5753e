from math import comb, factorial

import pytest

from thetaperm.combinatorics import eulerian_row
from thetaperm.errors import PreconditionError
from thetaperm.hodge import (
    duality_report,
    euler_char_theta,
    hodge_diamond,
    hodge_number,
    hodge_xpi,
    s_correction_closed,
    s_correction_oracle,
    signature_bernoulli,
    signature_theta,
    signature_xpi,
)

# printed diamonds, read row by row from the top
PRINTED = {
    2: [[1], [3, 3], [3, 10, 3], [3, 3], [1]],
    3: [[1], [4, 4], [6, 16, 6], [4, 29, 29, 4], [6, 16, 6], [4, 4], [1]],
    4: [
        [1], [5, 5], [10, 25, 10], [10, 50, 50, 10], [5, 66, 146, 66, 5],
        [10, 50, 50, 10], [10, 25, 10], [5, 5], [1],
    ],
}
PRINTED_BETTI = {
    2: (1, 6, 16, 6, 1),
    3: (1, 8, 28, 66, 28, 8, 1),
    4: (1, 10, 45, 120, 288, 120, 45, 10, 1),
}


def brute_middle_correction(n, p):
    """Euler characteristic bookkeeping: the row sum of (-1)^q h^{p,q} must be
    (-1)^(n-p) A_{n+1,p}; solve for the middle entry and compare."""
    off = 0
    for q in range(n + 1):
        if p + q <= n - 1:
            off += (-1) ** q * comb(n + 1, p) * comb(n + 1, q)
        elif p + q >= n + 1:
            off += (-1) ** q * comb(n + 1, p + 1) * comb(n + 1, q + 1)
    middle = ((-1) ** (n - p) * eulerian_row(n + 1)[p] - off) * (-1) ** (n - p)
    return eulerian_row(n + 1)[p] - middle


class TestCorrection:
    def test_examples(self):
        assert s_correction_closed(2, 0) == s_correction_oracle(2, 0) == -2
        assert s_correction_closed(2, 1) == s_correction_oracle(2, 1) == -6
        assert s_correction_closed(4, 2) == s_correction_oracle(4, 2) == -80

    @pytest.mark.parametrize("n", range(0, 13))
    def test_closed_equals_oracle_and_symmetric(self, n):
        for p in range(n + 1):
            closed = s_correction_closed(n, p)
            assert closed == s_correction_oracle(n, p)
            assert closed == brute_middle_correction(n, p)
            assert closed == s_correction_closed(n, n - p)

    def test_range(self):
        with pytest.raises(PreconditionError):
            s_correction_closed(3, 4)


class TestHodgeNumbers:
    def test_examples(self):
        assert hodge_number(3, 1, 2) == 29
        assert hodge_number(4, 1, 3) == 66 == 2**5 - 6 + 16 * 5 // 2
        assert all(hodge_number(n, 0, n) == n + 1 for n in range(12))

    @pytest.mark.parametrize("n", range(0, 13))
    def test_closed_forms_and_positivity(self, n):
        if n >= 1:
            assert hodge_number(n, 1, n - 1) == 2 ** (n + 1) - (n + 2) + n * n * (n + 1) // 2
        if n >= 2:
            expected = 3 ** (n + 1) - 2 ** (n + 1) * (n + 2) + (n + 1) * (n + 2) // 2 + n**3 * (n * n - 1) // 12
            assert hodge_number(n, 2, n - 2) == expected
        for p in range(n + 1):
            for q in range(n + 1):
                assert hodge_number(n, p, q) >= 0
                assert hodge_number(n, p, q) == hodge_number(n, p, q, oracle=True)

    @pytest.mark.parametrize("n", range(0, 11))
    def test_rows_give_chi_p(self, n):
        for p in range(n + 1):
            alt = sum((-1) ** q * hodge_number(n, p, q) for q in range(n + 1))
            assert alt == (-1) ** (n - p) * eulerian_row(n + 1)[p]


class TestDiamond:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_printed(self, n):
        diamond = hodge_diamond(n)
        assert [diamond.row(m) for m in range(2 * n + 1)] == PRINTED[n]
        assert tuple(diamond.betti) == PRINTED_BETTI[n]

    def test_point(self):
        diamond = hodge_diamond(0)
        assert diamond.h == ((1,),)
        assert tuple(diamond.betti) == (1,)

    @pytest.mark.parametrize("n", range(0, 11))
    def test_invariants(self, n):
        diamond = hodge_diamond(n)
        assert diamond.violations() == []
        assert diamond.euler_characteristic() == (-1) ** n * factorial(n + 1)
        assert hodge_diamond(n, oracle=True).h == diamond.h

    def test_text_layout(self):
        lines = hodge_diamond(2).to_text().splitlines()
        assert len(lines) == 5
        assert [int(x) for x in lines[2].split()] == [3, 10, 3, 16]

    def test_dict(self):
        d = hodge_diamond(2).to_dict()
        assert d["n"] == 2
        assert d["betti"] == [1, 6, 16, 6, 1]
        assert d["h"][1][1] == 10

    def test_latex(self):
        assert "tikzcd" in hodge_diamond(2).to_latex()


class TestCharacteristics:
    def test_euler(self):
        assert euler_char_theta(2) == 6
        assert euler_char_theta(0) == 1
        assert euler_char_theta(3) == -24 == 1 - 8 + 28 - 66 + 28 - 8 + 1

    def test_signature(self):
        assert signature_theta(0) == 1
        assert signature_theta(2) == -2
        assert signature_theta(4) == 16

    @pytest.mark.parametrize("n", range(0, 11, 2))
    def test_signature_routes(self, n):
        alt = sum((-1) ** k * a for k, a in enumerate(eulerian_row(n + 1)))
        assert signature_theta(n) == signature_bernoulli(n) == alt == signature_xpi(n)

    def test_odd_rejected(self):
        with pytest.raises(PreconditionError):
            signature_theta(3)

    def test_hodge_xpi(self):
        assert hodge_xpi(2, 1, 1) == 4
        assert hodge_xpi(3, 0, 2) == 0
        assert hodge_xpi(4, 2, 2) == 66


class TestDualityReport:
    @pytest.mark.parametrize("n", range(0, 11))
    def test_all_equal(self, n):
        report = duality_report(n)
        assert report.all_equal, report.to_text()

    def test_signature_pairing(self):
        for n, tau in ((0, 1), (2, -2), (4, 16)):
            report = duality_report(n)
            assert report.extras["tau"] == tau
            assert [p.rhs for p in report.pairings if p.label.startswith("tau")] == [tau]
