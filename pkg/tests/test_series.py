import json
from fractions import Fraction

import pytest

from vpvlab.series import (APPROX, Caps, EXACT, Series, SeriesError, first_mismatch,
                           geometric_factor, max_rel_error, polylog, to_approx,
                           unit_binomial, unit_binomial_pow)


def sser(names, caps, mode=EXACT):
    return Series.one(tuple(names), Caps.of(caps), mode)


class TestConstruction:
    def test_constant_identity_case(self):
        s = Series.from_terms([(((0, 0)), 1)], ("y", "z"), Caps.of([8, 8]))
        assert s == Series.one(("y", "z"), Caps.of([8, 8]))

    def test_cancellation_yields_zero(self):
        s = Series.from_terms([((1, 1), 1), ((1, 1), -1)], ("y", "z"),
                              Caps.of([8, 8]))
        assert s.is_zero()

    def test_over_cap_terms_dropped(self):
        s = Series.from_terms([((9, 0), 5)], ("y", "z"), Caps.of([8, 8]))
        assert s.is_zero()

    def test_arity_mismatch_rejected(self):
        with pytest.raises(SeriesError):
            Series.from_terms([((1, 2, 3), 1)], ("y", "z"), Caps.of([8, 8]))

    def test_mode_mixing_rejected(self):
        with pytest.raises(SeriesError):
            Series.from_terms([((1, 0), 0.5)], ("y", "z"), Caps.of([4, 4]))

    def test_total_degree_cap(self):
        caps = Caps.of([4, 4], total=3)
        s = Series.from_terms([((2, 2), 1), ((2, 1), 1)], ("y", "z"), caps)
        assert (2, 2) not in s.terms and (2, 1) in s.terms


class TestArithmetic:
    def test_two_term_product(self):
        caps = Caps.of([4, 4])
        y = Series.variable("y", ("y", "z"), caps)
        z = Series.variable("z", ("y", "z"), caps)
        one = Series.one(("y", "z"), caps)
        assert (one + y) * (one + z) == one + y + z + y * z

    def test_inverse_roundtrip(self):
        caps = Caps.of([6])
        z = Series.variable("z", ("z",), caps)
        one = Series.one(("z",), caps)
        assert (one - z) * (one - z).inverse() == one

    def test_binary_chain_telescopes(self):
        # (1+x)(1+x^2)(1+x^4)(1+x^8) at cap 15 is the full geometric sum
        caps = Caps.of([15])
        out = Series.one(("x",), caps)
        for p in (1, 2, 4, 8):
            out = out * unit_binomial((p,), ("x",), caps, sign=1)
        assert out == geometric_factor((1,), ("x",), caps)

    def test_incompatible_series_rejected(self):
        a = Series.one(("y",), Caps.of([3]))
        b = Series.one(("z",), Caps.of([3]))
        with pytest.raises(SeriesError):
            a * b

    def test_division_by_nonunit_rejected(self):
        caps = Caps.of([3])
        z = Series.variable("z", ("z",), caps)
        with pytest.raises(SeriesError):
            z.inverse()


class TestExpLog:
    def test_exp_zero(self):
        caps = Caps.of([5])
        assert Series.zero(("z",), caps).exp() == Series.one(("z",), caps)

    def test_exp_taylor(self):
        caps = Caps.of([4])
        z = Series.variable("z", ("z",), caps)
        e = z.exp()
        assert e.coefficient((2,)) == Fraction(1, 2)
        assert e.coefficient((3,)) == Fraction(1, 6)
        assert e.coefficient((4,)) == Fraction(1, 24)

    def test_exp_of_truncated_totient_log(self):
        # exp(-z-z^2-z^3) at cap 3; frozen from the brute-force product
        # (1-z)(1-z^2)^(1/2)(1-z^3)^(2/3) expanded to the same cap
        caps = Caps.of([3])
        z = Series.variable("z", ("z",), caps)
        got = (-z - z * z - z * z * z).exp()
        brute = Series.one(("z",), caps)
        for k, w in ((1, Fraction(1)), (2, Fraction(1, 2)), (3, Fraction(2, 3))):
            brute = brute * unit_binomial_pow((k,), w, ("z",), caps, sign=-1)
        assert got == brute
        assert got.coefficient((3,)) == Fraction(-1, 6)

    def test_exp_nonzero_constant_rejected(self):
        with pytest.raises(SeriesError):
            Series.one(("z",), Caps.of([3])).exp()

    def test_log_one(self):
        caps = Caps.of([5])
        assert Series.one(("z",), caps).log().is_zero()

    def test_log_mercator(self):
        caps = Caps.of([4])
        z = Series.variable("z", ("z",), caps)
        got = (Series.one(("z",), caps) - z).log()
        assert dict(got.terms) == {(1,): Fraction(-1), (2,): Fraction(-1, 2),
                                   (3,): Fraction(-1, 3), (4,): Fraction(-1, 4)}

    def test_log_quotient(self):
        caps = Caps.of([3, 3])
        names = ("y", "z")
        one = Series.one(names, caps)
        y = Series.variable("y", names, caps)
        z = Series.variable("z", names, caps)
        got = ((one - y * z) * (one - z).inverse()).log()
        assert got.coefficient((0, 1)) == 1
        assert got.coefficient((1, 1)) == -1
        assert got.coefficient((0, 2)) == Fraction(1, 2)
        assert got.coefficient((2, 2)) == Fraction(-1, 2)

    def test_log_requires_unit_constant(self):
        caps = Caps.of([3])
        z = Series.variable("z", ("z",), caps)
        with pytest.raises(SeriesError):
            z.log()


class TestPow:
    def test_integer_power(self):
        caps = Caps.of([4])
        z = Series.variable("z", ("z",), caps)
        one = Series.one(("z",), caps)
        got = (one - z).pow(2)
        assert dict(got.terms) == {(0,): 1, (1,): -2, (2,): 1}

    def test_series_exponent_grid_values(self):
        # (1-z)^(y/(1-y)): the y^1 z^2 cell is binom(w,2)|_(y^1) = -1/2!
        # (the displayed grid rows 1-2 lost their signs; row 3 kept them and
        # matches the direct binomial expansion used here)
        caps = Caps.of([9, 10])
        names = ("y", "z")
        one = Series.one(names, caps)
        y = Series.variable("y", names, caps)
        z = Series.variable("z", names, caps)
        s = (one - z).pow(y * (one - y).inverse())
        assert s.coefficient((1, 2)) == Fraction(-1, 2)
        assert s.coefficient((2, 2)) == 0
        assert s.coefficient((1, 1)) == -1
        # row z^3 of the displayed grid: -2, 1, 3, 4, 4, 3, 1, -2, -6 over 3!
        row3 = [-2, 1, 3, 4, 4, 3, 1, -2, -6]
        for a, num in enumerate(row3, start=1):
            assert s.coefficient((a, 3)) == Fraction(num, 6)
        # and the reciprocal-direction grid keeps its printed signs
        r = (one - z).inverse().pow(y * (one - y).inverse())
        for a in range(1, 10):
            assert r.coefficient((a, 2)) == Fraction(a, 2)

    def test_pow_matches_repeated_multiplication(self):
        caps = Caps.of([5, 5])
        names = ("y", "z")
        one = Series.one(names, caps)
        u = one + Series.variable("y", names, caps) * 2 \
            - Series.variable("z", names, caps) * 3
        direct = one
        for _ in range(3):
            direct = direct * u
        assert u.pow(3) == direct == u.pow(Fraction(3))


class TestDisplayedCoefficientTables:
    """The two 9x8 coefficient tables displayed with the quadrant identities.

    All 144 cells are frozen from the computed expansions; they agree with
    the displayed tables except one typo cell in the minus table at (3,5),
    which prints 42 for the computed 41 (the lattice product adjudicates).
    """

    RECIP = {
        3: [2, 5, 9, 14, 20, 27, 35, 44, 54],
        4: [6, 17, 34, 58, 90, 131, 182, 244, 318],
        5: [24, 74, 159, 289, 475, 729, 1064, 1494, 2034],
        6: [120, 394, 893, 1702, 2921, 4666, 7070, 10284, 14478],
        7: [720, 2484, 5872, 11619, 20635, 34026, 53116, 79470, 114918],
        8: [5040, 18108, 44308, 90409, 165140, 279512, 447168, 684762,
            1012368],
        9: [40320, 149904, 377612, 790728, 1478985, 2559101, 4179861,
            6527781, 9833391],
        10: [362880, 1389456, 3588732, 7684388, 14669429, 25869458,
             43015399, 68326540, 104604811],
    }
    MINUS = {
        3: [-2, 1, 3, 4, 4, 3, 1, -2, -6],
        4: [-6, 5, 10, 10, 6, -1, -10, -20, -30],
        5: [-24, 26, 41, 31, 5, -29, -64, -94, -114],
        6: [-120, 154, 203, 112, -49, -224, -370, -456, -462],
        7: [-720, 1044, 1184, 435, -643, -1644, -2296, -2442, -2022],
        8: [-5040, 8028, 7964, 1537, -6444, -12808, -15728, -14454, -9072],
        9: [-40320, 69264, 60724, 1344, -64041, -108509, -119061, -93141,
            -35631],
        10: [-362880, 663696, 517572, -77572, -667381, -1003552, -990011,
             -637670, -26939],
    }

    def test_tables(self):
        import math
        caps = Caps.of([9, 10])
        names = ("y", "z")
        one = Series.one(names, caps)
        y = Series.variable("y", names, caps)
        z = Series.variable("z", names, caps)
        exponent = y * (one - y).inverse()
        recip = (one - z).inverse().pow(exponent)
        minus = (one - z).pow(exponent)
        for series, table in ((recip, self.RECIP), (minus, self.MINUS)):
            for b, row in table.items():
                fact = math.factorial(b)
                for a, num in enumerate(row, start=1):
                    assert series.coefficient((a, b)) * fact == num, (a, b)


class TestPolylog:
    def test_li1(self):
        caps = Caps.of([4])
        got = polylog(1, (1,), ("z",), caps)
        assert dict(got.terms) == {(1,): 1, (2,): Fraction(1, 2),
                                   (3,): Fraction(1, 3), (4,): Fraction(1, 4)}

    def test_negative_orders_match_closed_forms(self):
        caps = Caps.of([8])
        names = ("z",)
        for s in (0, -1, -2, -3, -4):
            closed = polylog(s, (1,), names, caps)
            direct = Series(names, caps, EXACT,
                            {(k,): Fraction(k ** (-s)) for k in range(1, 9)})
            assert closed == direct

    def test_li_minus3_structure(self):
        # z(1+4z+z^2)/(1-z)^4
        caps = Caps.of([6])
        names = ("z",)
        z = Series.variable("z", names, caps)
        one = Series.one(names, caps)
        expected = z * (one + z.scale(4) + z * z) * (one - z).inverse().pow(4)
        assert polylog(-3, (1,), names, caps) == expected

    def test_rational_order_needs_approx(self):
        caps = Caps.of([4])
        with pytest.raises(SeriesError):
            polylog(Fraction(1, 2), (1,), ("z",), caps, EXACT)
        got = polylog(Fraction(1, 2), (1,), ("z",), caps, APPROX)
        assert got.coefficient((2,)) == pytest.approx(2 ** -0.5, abs=1e-12)

    def test_derivative_recurrence(self):
        caps = Caps.of([7])
        names = ("z",)
        z = Series.variable("z", names, caps)
        for s in range(-3, 5):
            lhs = polylog(s - 1, (1,), names, caps)
            rhs = z * polylog(s, (1,), names, caps).derivative("z")
            assert lhs == rhs, s


class TestSubstitution:
    def test_diagonal(self):
        caps = Caps.of([4, 4])
        names = ("y", "z")
        s = Series.from_terms([((0, 0), 1), ((1, 1), 1)], names, caps)
        got = s.substitute({"y": (1, {"z": 1}), "z": (1, {"z": 1})}, ("z",),
                           Caps.of([4]))
        assert dict(got.terms) == {(0,): 1, (2,): 1}

    def test_scalar_substitution(self):
        caps = Caps.of([3, 3])
        names = ("y", "z")
        s = Series.from_terms([((2, 1), 3)], names, caps)
        got = s.substitute({"y": (Fraction(1, 2), {}), "z": (1, {"z": 1})},
                           ("z",), Caps.of([3]))
        assert got.coefficient((1,)) == Fraction(3, 4)

    def test_missing_assignment_rejected(self):
        caps = Caps.of([2, 2])
        s = Series.one(("y", "z"), caps)
        with pytest.raises(SeriesError):
            s.substitute({"y": (1, {"z": 1})}, ("z",), Caps.of([2]))

    def test_evaluate_var(self):
        caps = Caps.of([3, 3])
        names = ("y", "z")
        one = Series.one(names, caps)
        s = one + Series.from_terms([((1, 1), 1)], names, caps)
        got = s.evaluate_var("y", 1)
        assert got.names == ("z",)
        assert got.coefficient((1,)) == 1

    def test_evaluate_unknown_var(self):
        with pytest.raises(SeriesError):
            Series.one(("z",), Caps.of([2])).evaluate_var("q", 1)


class TestCoefficientQueries:
    def test_simple(self):
        caps = Caps.of([3, 3])
        s = Series.from_terms([((0, 0), 1), ((1, 1), 2)], ("y", "z"), caps)
        assert s.coefficient((1, 1)) == 2
        assert s.coefficient((2, 2)) == 0

    def test_outside_caps_is_error(self):
        caps = Caps.of([3, 3])
        s = Series.one(("y", "z"), caps)
        with pytest.raises(SeriesError):
            s.coefficient((4, 0))


class TestSerialization:
    def test_canonical_roundtrip(self):
        caps = Caps.of([4, 4])
        s = Series.from_terms([((0, 0), 1), ((2, 3), Fraction(5, 6)),
                               ((1, 0), -2)], ("y", "z"), caps)
        doc = s.to_json()
        assert doc["mode"] == "exact"
        assert [t["e"] for t in doc["terms"]] == sorted(t["e"] for t in doc["terms"])
        assert {"e": [2, 3], "n": "5", "d": "6"} in doc["terms"]
        assert Series.from_json(json.loads(s.dumps())) == s

    def test_approx_roundtrip(self):
        caps = Caps.of([3])
        s = Series(("z",), caps, APPROX, {(1,): 0.5, (2,): 2 ** -0.5})
        assert Series.from_json(s.to_json()) == s


class TestModeAgreement:
    def test_exact_vs_approx_on_shared_identity(self):
        # the 13.02 closed form evaluated in both modes agrees to 1e-12
        caps = Caps.of([6, 6])
        names = ("y", "z")

        def build(mode):
            one = Series.one(names, caps, mode)
            y = Series.variable("y", names, caps, mode)
            z = Series.variable("z", names, caps, mode)
            return (one - z).inverse().pow(y * (one - y).inverse())

        exact = build(EXACT)
        approx = build(APPROX)
        assert max_rel_error(to_approx(exact), approx) <= 1e-12

    def test_first_mismatch_reports_lex_first(self):
        caps = Caps.of([3, 3])
        a = Series.from_terms([((1, 0), 1), ((2, 0), 5)], ("y", "z"), caps)
        b = Series.from_terms([((1, 0), 1), ((2, 0), 7)], ("y", "z"), caps)
        expo, ca, cb = first_mismatch(a, b)
        assert expo == (2, 0) and ca == 5 and cb == 7
