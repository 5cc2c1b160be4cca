import random

import pytest

from projdyn.coeff import GF, QQ
from projdyn.dynamics import (Endomorphism, ProjectivePoint,
                              endomorphism_from_strings)
from projdyn.errors import (InvalidInputError, RingMismatchError,
                            UnsupportedScopeError, VerificationError)
from projdyn.mpoly import Polynomial, Ring, format_polynomial
from projdyn.sympow import (CriticalLocusReport, PeriodPolynomial, PointTuple,
                            SymForm, admissible_periods, bicritical_wanderer,
                            check_fhp, collision_locus_member,
                            critical_locus_structure_check,
                            find_pcf_parameter, hyperplane_of_point,
                            period_polynomial, periodic_critical_form,
                            reciprocal_power_map, symmetric_power, vieta)


def squaring(fld=QQ):
    ring = Ring(2, fld)
    return Endomorphism([ring.var(0) ** 2, ring.var(1) ** 2])


def random_self_map(fld, d, rng):
    ring = Ring(2, fld)
    while True:
        forms = []
        for _ in range(2):
            terms = {}
            for k in range(d + 1):
                c = fld.coerce(rng.randint(-5, 5))
                if not fld.is_zero(c):
                    terms[(k, d - k)] = c
            if not terms:
                terms[(d, 0)] = fld.one()
            forms.append(Polynomial(ring, terms))
        try:
            return Endomorphism(forms)
        except Exception:
            continue


class TestSymForm:
    def test_rational_normalization(self):
        phi = SymForm(QQ, ("1/2", "-3/2", 1))
        assert phi.coefficients == (QQ.coerce(1), QQ.coerce(-3), QQ.coerce(2))
        assert phi.degree == 2

    def test_sign_convention(self):
        assert SymForm(QQ, (-2, 4)).coefficients == (QQ.coerce(1), QQ.coerce(-2))
        assert SymForm(QQ, (0, -3, 6)).coefficients[1] == QQ.coerce(1)

    def test_prime_field_normalization(self):
        F7 = GF(7)
        phi = SymForm(F7, (3, 5, 1))
        assert phi.coefficients[0] == F7.one()

    def test_zero_rejected(self):
        with pytest.raises(InvalidInputError):
            SymForm(QQ, (0, 0, 0))

    def test_multiplication_is_convolution(self):
        a = SymForm(QQ, (1, -1))   # x - y
        b = SymForm(QQ, (1, -2))   # x - 2y
        assert (a * b).coefficients == SymForm(QQ, (1, -3, 2)).coefficients

    def test_evaluate_vanishes_on_roots(self):
        phi = vieta([(1, 1), (2, 1)], QQ)
        assert phi.vanishes_at((1, 1))
        assert phi.vanishes_at((2, 1))
        assert not phi.vanishes_at((3, 1))

    def test_as_polynomial_round_trip(self):
        phi = SymForm(QQ, (1, -3, 2))
        poly = phi.as_polynomial(Ring(2, QQ))
        assert format_polynomial(poly) == "x0^2-3*x0*x1+2*x1^2"

    def test_point_chart(self):
        phi = SymForm(QQ, (2, -6, 4))
        assert phi.point() == ProjectivePoint((1, -3, 2), QQ)


class TestPointTuple:
    def test_field_inferred_from_member(self):
        p = ProjectivePoint((2, 1), QQ)
        tup = PointTuple([p, (3, 1)])
        assert tup.field == QQ and len(tup) == 2

    def test_explicit_field(self):
        tup = PointTuple([(0, 1), (1, 0)], QQ)
        assert tup[1] == ProjectivePoint((1, 0), QQ)

    def test_bare_pairs_need_field(self):
        with pytest.raises(InvalidInputError):
            PointTuple([(1, 2), (3, 4)])

    def test_mixed_fields_rejected(self):
        with pytest.raises(RingMismatchError):
            PointTuple([ProjectivePoint((1, 1), QQ),
                        ProjectivePoint((1, 1), GF(5))])

    def test_empty_rejected(self):
        with pytest.raises(InvalidInputError):
            PointTuple([], QQ)


class TestVieta:
    def test_two_affine_roots(self):
        assert vieta([(1, 1), (2, 1)], QQ).coefficients == \
            SymForm(QQ, (1, -3, 2)).coefficients

    def test_root_at_infinity_drops_lead(self):
        phi = vieta([(0, 1), (1, 0)], QQ)
        assert phi.coefficients == (QQ.zero(), QQ.one(), QQ.zero())

    def test_symmetric_in_arguments(self):
        pts = [(1, 1), (-2, 1), (1, 0)]
        assert vieta(pts, QQ) == vieta(list(reversed(pts)), QQ)

    def test_multiplicative_over_concatenation(self):
        a, b = [(1, 1), (3, 1)], [(0, 1), (1, 2)]
        assert vieta(a + b, QQ) == vieta(a, QQ) * vieta(b, QQ)

    def test_vanishes_exactly_on_roots(self):
        rng = random.Random(5)
        for _ in range(10):
            pts = [(rng.randint(-9, 9), 1) for _ in range(3)]
            phi = vieta(pts, QQ)
            for p in pts:
                assert phi.vanishes_at(p)


class TestSymmetricPower:
    def test_squaring_quadratic_power(self):
        # coordinates of the induced map on root pairs of binary quadrics
        big = symmetric_power(squaring(), 2)
        rendered = [format_polynomial(g) for g in big.forms]
        assert rendered == ["x0^2", "2*x0*x2-x1^2", "x2^2"]

    def test_degree_preserved(self):
        rng = random.Random(3)
        f = random_self_map(QQ, 3, rng)
        assert symmetric_power(f, 2).d == 3
        assert symmetric_power(f, 3).n == 3

    def test_image_compatibility_with_vieta(self):
        rng = random.Random(17)
        for trial in range(4):
            fld = QQ if trial % 2 == 0 else GF(10007)
            d = rng.choice([2, 3])
            n = rng.choice([1, 2, 3])
            f = random_self_map(fld, d, rng)
            big = symmetric_power(f, n)
            for _ in range(20):
                pts = [ProjectivePoint((fld.coerce(rng.randint(-20, 20)), 1), fld)
                       for _ in range(n)]
                lhs = vieta(pts, fld).image_under(big)
                assert lhs == vieta([f.apply(p) for p in pts], fld)

    def test_repeated_roots_allowed(self):
        f = squaring()
        big = symmetric_power(f, 2)
        phi = vieta([(2, 1), (2, 1)], QQ)
        assert phi.image_under(big) == vieta([(4, 1), (4, 1)], QQ)

    def test_commutes_with_iteration(self):
        # induced map of the second iterate equals the induced map, squared
        rng = random.Random(29)
        done = 0
        while done < 6:
            fld = QQ if done % 2 == 0 else GF(10007)
            f = random_self_map(fld, 2, rng)
            if not f.is_morphism():
                continue
            for n in (2, 3):
                assert (symmetric_power(f, n).iterate(2)
                        == symmetric_power(f.iterate(2), n))
            done += 1

    def test_rejects_higher_dimension(self):
        g = endomorphism_from_strings(["x0^2", "x1^2", "x2^2"], QQ)
        with pytest.raises(UnsupportedScopeError):
            symmetric_power(g, 2)

    def test_rejects_bad_power(self):
        with pytest.raises(InvalidInputError):
            symmetric_power(squaring(), 0)


class TestHyperplanePairing:
    def test_linear_form_oracle(self):
        h = hyperplane_of_point(ProjectivePoint((2, 1), QQ), 2)
        assert format_polynomial(h) == "4*x0+2*x1+x2"

    def test_pairing_vanishes_iff_point_is_root(self):
        h = hyperplane_of_point(ProjectivePoint((2, 1), QQ), 2)
        through = vieta([(2, 1), (5, 1)], QQ)
        missing = vieta([(3, 1), (5, 1)], QQ)
        assert h.evaluate(through.coefficients) == QQ.zero()
        assert h.evaluate(missing.coefficients) != QQ.zero()

    def test_fhp_for_squaring(self):
        f = squaring()
        assert check_fhp(f, (3, 1), 2, samples=40, seed=1)
        assert check_fhp(f, (1, 0), 2, samples=40, seed=2)

    def test_fhp_over_prime_field(self):
        F5 = GF(5)
        ring = Ring(2, F5)
        f = Endomorphism([ring.var(0) ** 2, ring.var(1) ** 2])
        assert check_fhp(f, (2, 1), 3, samples=30, seed=3)

    def test_fhp_negative_control(self):
        # pairing against the wrong induced map must be caught
        f = squaring()
        other = endomorphism_from_strings(["x0^2+x1^2", "x1^2"], QQ)
        wrong = symmetric_power(other, 2)
        assert not check_fhp(f, (3, 1), power=wrong, samples=20, seed=4)


class TestCollisions:
    def test_squaring_identifies_sign_pairs(self):
        f = squaring()
        assert collision_locus_member(f, [(2, 1), (-2, 1)], QQ)
        assert not collision_locus_member(f, [(2, 1), (3, 1)], QQ)

    def test_repeated_point_is_not_a_collision(self):
        f = squaring()
        assert not collision_locus_member(f, [(2, 1), (2, 1)], QQ)

    def test_collision_hidden_in_larger_tuple(self):
        f = squaring()
        assert collision_locus_member(f, [(5, 1), (1, 0), (-5, 1)], QQ)


class TestCriticalLocusStructure:
    def test_squaring_quadratic_report(self):
        rep = critical_locus_structure_check(squaring(), 2, samples=50, seed=0)
        assert isinstance(rep, CriticalLocusReport)
        assert rep.hyperplane_ok and rep.collision_ok
        assert rep.generic_ok and rep.discriminant_ok
        assert rep.passed
        assert set(rep.critical_points) == {ProjectivePoint((0, 1), QQ),
                                            ProjectivePoint((1, 0), QQ)}

    def test_squaring_cubic_power(self):
        rep = critical_locus_structure_check(squaring(), 3, samples=15, seed=2)
        assert rep.passed

    def test_chebyshev_like_map(self):
        # z^2 - 2 has affine critical point 0 besides infinity
        f = endomorphism_from_strings(["x0^2-2*x1^2", "x1^2"], QQ)
        rep = critical_locus_structure_check(f, 2, samples=20, seed=5)
        assert rep.passed

    def test_irrational_critical_points_rejected(self):
        f = endomorphism_from_strings(["x0^3+x0*x1^2", "x1^3"], QQ)
        with pytest.raises(UnsupportedScopeError):
            critical_locus_structure_check(f, 2, samples=5, seed=0)

    def test_rejects_linear_map(self):
        f = endomorphism_from_strings(["x0+x1", "x1"], QQ)
        with pytest.raises(InvalidInputError):
            critical_locus_structure_check(f, 2)


class TestAdmissiblePeriods:
    def test_small_tables(self):
        assert admissible_periods(1, 2) == {1, 2}
        assert admissible_periods(2, 2) == {1, 2, 4}
        assert admissible_periods(3, 3) == {1, 2, 3, 6, 9}

    def test_contains_divisors_of_s(self):
        for s in range(1, 12):
            adm = admissible_periods(s, 3)
            assert all(t in adm for t in range(1, s + 1) if s % t == 0)

    def test_monotone_in_n(self):
        for s in range(1, 8):
            for n in range(1, 5):
                assert admissible_periods(s, n) <= admissible_periods(s, n + 1)

    def test_rejects_nonpositive(self):
        with pytest.raises(InvalidInputError):
            admissible_periods(0, 2)


class TestPeriodicCriticalForm:
    def test_squaring_fixed_critical_point(self):
        phi = periodic_critical_form(squaring(), (0, 1), (1, 1), 1, 1, 2)
        assert phi.coefficients == SymForm(QQ, (1, -1, 0)).coefficients

    def test_period_three_over_f5(self):
        F5 = GF(5)
        f = endomorphism_from_strings(["x1^2-x0^2", "x0^2"], F5)
        rec = f.orbit(ProjectivePoint((0, 1), F5))
        assert rec.tail == 0 and rec.period == 3
        phi = periodic_critical_form(f, (0, 1), (3, 1), 3, 1, 2)
        assert phi.vanishes_at((0, 1)) and phi.vanishes_at((3, 1))

    def test_noncritical_point_rejected(self):
        with pytest.raises(InvalidInputError):
            periodic_critical_form(squaring(), (2, 1), (1, 1), 1, 1, 2)

    def test_unfixed_padding_rejected(self):
        with pytest.raises(InvalidInputError):
            periodic_critical_form(squaring(), (0, 1), (2, 1), 1, 1, 2)

    def test_bad_multiplicity_rejected(self):
        with pytest.raises(InvalidInputError):
            periodic_critical_form(squaring(), (0, 1), (1, 1), 1, 3, 2)


class TestPeriodPolynomial:
    def test_quadratic_small_periods(self):
        assert period_polynomial(2, 2).to_list() == [0, 1]
        assert period_polynomial(2, 3).to_list() == [1, 0, 0, 1]
        assert period_polynomial(2, 4).to_list() == [0, 1, 0, 0, 3, 0, 0, 1]

    def test_degree_closed_form(self):
        for d in (2, 3):
            for s in (2, 3, 4, 5):
                poly = period_polynomial(d, s)
                assert poly.degree == (d ** (s - 1) - 1) // (d - 1)

    def test_content_is_one(self):
        import math
        coeffs = period_polynomial(3, 4).coefficients
        assert math.gcd(*[c for c in coeffs if c] or [1]) == 1

    def test_evaluate_matches_orbit(self):
        poly = period_polynomial(2, 3)
        assert poly.evaluate(QQ, -1) == QQ.zero()
        assert poly.evaluate(QQ, 2) == QQ.coerce(9)

    def test_rejects_degenerate_parameters(self):
        with pytest.raises(InvalidInputError):
            period_polynomial(1, 3)
        with pytest.raises(InvalidInputError):
            period_polynomial(2, 1)


class TestFindPcfParameter:
    def test_period_three_over_rationals(self):
        c = find_pcf_parameter(2, 3, QQ)
        assert c == QQ.coerce(-1)
        f = reciprocal_power_map(2, c, QQ)
        rec = f.orbit(ProjectivePoint((0, 1), QQ))
        assert rec.tail == 0 and rec.period == 3

    def test_period_two_is_pure_reciprocal(self):
        assert find_pcf_parameter(2, 2, QQ) == QQ.zero()

    def test_period_five_absent_over_rationals(self):
        assert find_pcf_parameter(2, 5, QQ) is None

    def test_period_five_over_f17(self):
        F17 = GF(17)
        c = find_pcf_parameter(2, 5, F17)
        assert c == 8
        f = reciprocal_power_map(2, c, F17)
        rec = f.orbit(ProjectivePoint((0, 1), F17))
        assert rec.tail == 0 and rec.period == 5

    def test_composite_period_rejected(self):
        with pytest.raises(InvalidInputError):
            find_pcf_parameter(2, 4, QQ)


class TestBicriticalWanderer:
    def test_quadratic_with_minus_one(self):
        f = bicritical_wanderer(2, -1, QQ)
        assert [format_polynomial(g) for g in f.forms] == \
            ["x0^2-2*x1^2", "x0^2"]
        zero = ProjectivePoint((0, 1), QQ)
        rec = f.orbit(zero)
        assert rec.tail == 3 and rec.period == 1

    def test_cubic_over_f7(self):
        F7 = GF(7)
        f = bicritical_wanderer(3, 2, F7)
        seen = f.apply(ProjectivePoint((0, 1), F7))
        assert seen == ProjectivePoint((1, 0), F7)

    def test_rejects_trivial_root(self):
        with pytest.raises(InvalidInputError):
            bicritical_wanderer(2, 1, QQ)

    def test_rejects_non_root(self):
        with pytest.raises(InvalidInputError):
            bicritical_wanderer(2, 3, QQ)

    def test_rejects_inseparable_degree(self):
        with pytest.raises(InvalidInputError):
            bicritical_wanderer(5, 2, GF(5))
