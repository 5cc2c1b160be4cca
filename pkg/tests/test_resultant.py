"""Resultant layer: Sylvester, Macaulay, strategies, degeneracy handling."""
from fractions import Fraction
from random import Random

import pytest

from projdyn.coeff import DEFAULT_MODULAR_PRIME, GF, QQ
from projdyn.errors import DegeneracyError, InvalidInputError
from projdyn.extfield import SmallExtField, evaluate_poly, projective_points
from projdyn.mpoly import Polynomial, Ring, parse_polynomial
from projdyn.resultant import (MacaulaySystem, discriminant_binary,
                               gradient_resultant, macaulay_critical_degree,
                               macaulay_resultant, map_resultant,
                               resultant_degrees, sylvester_matrix,
                               sylvester_resultant)

RNG_SEED = 20260816


def P(text, ring, aliases=None):
    return parse_polynomial(text, ring, aliases)


def random_form(ring, block, degree, rng, density=0.8):
    """Random form homogeneous in `block`, numeric coefficients."""
    from projdyn.mpoly import monomials_of_degree
    fld = ring.field
    terms = {}
    for mb in monomials_of_degree(len(block), degree):
        if rng.random() > density:
            continue
        c = fld.coerce(rng.randint(-9, 9)) if fld == QQ else fld.random(rng)
        if not fld.is_zero(c):
            m = [0] * ring.nvars
            for v, e in zip(block, mb):
                m[v] = e
            terms[tuple(m)] = c
    p = Polynomial(ring, terms)
    return p if not p.is_zero() else random_form(ring, block, degree, rng, density)


# -- sylvester ---------------------------------------------------------------------

def test_sylvester_linear_forms_symbolic():
    # Res(a x0 + b x1, c x0 + d x1) = ad - bc with symbolic a..d
    ring = Ring(6, QQ)
    al = {"a": 2, "b": 3, "c": 4, "d": 5}
    p = P("a*x0+b*x1", ring, al)
    q = P("c*x0+d*x1", ring, al)
    assert sylvester_resultant(p, q) == P("a*d-b*c", ring, al)


def test_sylvester_numeric_known_value():
    ring = Ring(2, QQ)
    p = P("x0-2*x1", ring)
    q = P("x0^2+x1^2", ring)
    # root (2:1) of p, lc(p)=1: resultant = q(2,1) = 5
    assert sylvester_resultant(p, q) == ring.const(5)


def test_sylvester_matrix_shape_and_formal_degrees():
    ring = Ring(2, QQ)
    p = P("x0^2+x1^2", ring)
    q = P("x0^3-x1^3", ring)
    rows = sylvester_matrix(p, q)
    assert len(rows) == 5 and all(len(r) == 5 for r in rows)
    # formal degrees let a zero form through (resultant 0)
    z = ring.zero()
    assert sylvester_resultant(z, q, degrees=(2, 3)).is_zero()


def test_sylvester_mixed_degree_rejected():
    ring = Ring(2, QQ)
    with pytest.raises(InvalidInputError):
        sylvester_resultant(P("x0^2+x1", ring), P("x0-x1", ring))


# -- macaulay layout ---------------------------------------------------------------

def test_resultant_degrees_product_rule():
    assert resultant_degrees([1, 2, 4]) == [8, 4, 2]
    assert resultant_degrees([3]) == [1]
    assert macaulay_critical_degree([2, 2, 2]) == 4
    assert macaulay_critical_degree([1, 4, 4]) == 7


def test_macaulay_layout_sizes():
    rng = Random(RNG_SEED)
    ring = Ring(3, QQ)
    block = (0, 1, 2)
    sys1 = MacaulaySystem([random_form(ring, block, 2, rng) for _ in range(3)])
    assert (sys1.critical_degree, sys1.size, sys1.minor_size) == (4, 15, 3)
    forms = [random_form(ring, block, d, rng) for d in (1, 4, 4)]
    sys2 = MacaulaySystem(forms)
    assert (sys2.critical_degree, sys2.size, sys2.minor_size) == (7, 36, 12)
    sys3 = MacaulaySystem([random_form(ring, block, d, rng) for d in (1, 2, 4)])
    assert (sys3.critical_degree, sys3.size) == (5, 21)


def test_macaulay_pure_power_normalization():
    ring = Ring(3, QQ)
    forms = [P("x0^2", ring), P("x1^3", ring), P("x2^5", ring)]
    assert macaulay_resultant(forms) == ring.one()


def test_macaulay_linear_system_is_determinant():
    rng = Random(RNG_SEED)
    ring = Ring(3, QQ)
    for _ in range(5):
        a = [[Fraction(rng.randint(-9, 9)) for _ in range(3)] for _ in range(3)]
        forms = []
        for i in range(3):
            f = ring.zero()
            for j in range(3):
                f = f + ring.var(j).scale(a[i][j])
            forms.append(f)
        if any(f.is_zero() for f in forms):
            continue
        det = (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
               - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
               + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))
        assert macaulay_resultant(forms) == ring.const(det)


def test_macaulay_zero_form_shortcut():
    ring = Ring(3, QQ)
    forms = [P("x0^2", ring), ring.zero(), P("x2^2", ring)]
    assert macaulay_resultant(forms).is_zero()


def test_macaulay_matches_sylvester_for_pairs():
    rng = Random(RNG_SEED)
    for fld in (QQ, GF(101)):
        ring = Ring(2, fld)
        for _ in range(8):
            p = random_form(ring, (0, 1), rng.randint(1, 3), rng)
            q = random_form(ring, (0, 1), rng.randint(1, 3), rng)
            assert macaulay_resultant([p, q]) == sylvester_resultant(p, q)


def test_macaulay_multihomogeneity():
    rng = Random(RNG_SEED)
    for fld in (QQ, GF(101)):
        ring = Ring(3, fld)
        degrees = (1, 2, 2)
        forms = [random_form(ring, (0, 1, 2), d, rng) for d in degrees]
        base = macaulay_resultant(forms)
        e = resultant_degrees(list(degrees))
        lam = fld.coerce(3)
        for i in range(3):
            scaled = list(forms)
            scaled[i] = scaled[i].scale(lam)
            assert macaulay_resultant(scaled) == base.scale(fld.pw(lam, e[i]))


def test_macaulay_coordinate_change_covariance():
    rng = Random(RNG_SEED)
    ring = Ring(3, QQ)
    degrees = (2, 2, 1)
    forms = [random_form(ring, (0, 1, 2), d, rng) for d in degrees]
    base = macaulay_resultant(forms).constant_value()
    a = [[Fraction(1), Fraction(2), Fraction(0)],
         [Fraction(0), Fraction(1), Fraction(1)],
         [Fraction(1), Fraction(0), Fraction(1)]]
    det_a = Fraction(3)  # det of the matrix above
    images = []
    for j in range(3):
        img = ring.zero()
        for k in range(3):
            img = img + ring.var(k).scale(a[j][k])
        images.append(img)
    moved = [f.substitute(images) for f in forms]
    lhs = macaulay_resultant(moved).constant_value()
    assert lhs == det_a ** (2 * 2 * 1) * base


def test_macaulay_common_zero_means_zero():
    ring = Ring(3, QQ)
    # all three vanish at (1:0:0)
    forms = [P("x0*x1", ring), P("x1*x2", ring), P("x0*x2", ring)]
    assert map_resultant(forms).is_zero()
    # morphism forms: nonzero
    forms = [P("x0^2", ring), P("x1^2", ring), P("x2^2", ring)]
    assert not map_resultant(forms).is_zero()


def test_macaulay_numeric_big_prime_field():
    fld = GF(DEFAULT_MODULAR_PRIME)
    ring = Ring(2, fld)
    p = parse_polynomial("x0^2+x1^2", ring)
    q = parse_polynomial("x0-2*x1", ring)
    assert macaulay_resultant([q, p]) == ring.const(fld.coerce(5))


# -- parametric strategies ----------------------------------------------------------

def test_parametric_ratio_known_value():
    # Res_x(x0 - t x1, x0^2 + x1^2) = t^2 + 1 with t = x2
    ring = Ring(3, QQ)
    p = P("x0-x2*x1", ring, {"t": 2})
    q = P("x0^2+x1^2", ring)
    res = macaulay_resultant([p, q], block_size=2, strategy="ratio")
    assert res == P("x2^2+1", ring)


def test_parametric_modular_matches_ratio():
    ring = Ring(8, QQ)
    al = {"a": 2, "b": 3, "c": 4, "u": 5, "v": 6, "w": 7}
    f0 = P("a*x0^2+b*x0*x1+c*x1^2", ring, al)
    f1 = P("u*x0^2+v*x0*x1+w*x1^2", ring, al)
    ratio = macaulay_resultant([f0, f1], block_size=2, strategy="ratio")
    modular = macaulay_resultant([f0, f1], block_size=2, strategy="modular",
                                 blocks=[[2, 3, 4], [5, 6, 7]])
    assert ratio == modular
    # classical closed form: (aw - cu)^2 - (av - bu)(bw - cv)
    closed = ((P("a*w", ring, al) - P("c*u", ring, al)) ** 2
              - (P("a*v", ring, al) - P("b*u", ring, al))
              * (P("b*w", ring, al) - P("c*v", ring, al)))
    assert ratio == closed


def test_parametric_modular_no_blocks():
    # same system, inhomogeneous parameter use: no homogeneity blocks given
    ring = Ring(3, QQ)
    p = P("x0-x2*x1", ring)
    q = P("x0^2+x1^2", ring)
    res = macaulay_resultant([p, q], block_size=2, strategy="modular")
    assert res == P("x2^2+1", ring)


def test_parametric_specialization_consistency():
    rng = Random(RNG_SEED)
    ring = Ring(4, QQ)
    # one symbolic parameter x3 inside two conics in (x0, x1, x2)? keep n=1:
    f0 = P("x0^2-x3*x1^2", ring)
    f1 = P("x0^3+x3*x0*x1^2+x1^3", ring)
    res = macaulay_resultant([f0, f1], block_size=2)
    for _ in range(5):
        t = Fraction(rng.randint(-20, 20))
        point = [Fraction(0), Fraction(0), Fraction(0), t]
        spec0 = f0.substitute([ring.var(0), ring.var(1), ring.var(2), ring.const(t)])
        spec1 = f1.substitute([ring.var(0), ring.var(1), ring.var(2), ring.const(t)])
        direct = macaulay_resultant([spec0, spec1], block_size=2).constant_value()
        assert res.evaluate(point) == direct


def test_parametric_prime_field_in_field_interpolation():
    fld = GF(101)
    ring = Ring(3, fld)
    p = parse_polynomial("x0-x2*x1", ring)
    q = parse_polynomial("x0^2+x1^2", ring)
    res = macaulay_resultant([p, q], block_size=2, strategy="modular")
    assert res == parse_polynomial("x2^2+1", ring)


def test_parametric_field_too_small_for_grid():
    fld = GF(3)
    ring = Ring(3, fld)
    p = parse_polynomial("x0^3+x2*x1^3", ring)
    q = parse_polynomial("x0^3+2*x0*x1^2+x1^3", ring)
    with pytest.raises(DegeneracyError) as err:
        macaulay_resultant([p, q], block_size=2, strategy="modular")
    assert err.value.code == "interpolation-underdetermined"


# -- degeneracy and validation ------------------------------------------------------

def test_macaulay_rejects_inhomogeneous_and_wrong_count():
    ring = Ring(3, QQ)
    with pytest.raises(InvalidInputError):
        macaulay_resultant([P("x0^2+x1", ring), P("x1^2", ring), P("x2^2", ring)])
    with pytest.raises(InvalidInputError):
        macaulay_resultant([P("x0", ring), P("x1", ring)])


def test_macaulay_unknown_strategy():
    ring = Ring(2, QQ)
    with pytest.raises(InvalidInputError):
        macaulay_resultant([P("x0", ring), P("x1", ring)], strategy="guess")


# -- gradient resultants and discriminants ------------------------------------------

def test_gradient_resultant_smooth_and_singular():
    ring = Ring(3, QQ)
    smooth = P("x0^2+x1^2+x2^2", ring)
    assert gradient_resultant(smooth) == ring.const(8)
    cone = P("x0*x1", ring)  # singular at (0:0:1)
    assert gradient_resultant(cone).is_zero()
    with pytest.raises(InvalidInputError):
        gradient_resultant(P("x0+x1+x2", ring))


def test_discriminant_binary_quadratic_symbolic():
    ring = Ring(5, QQ)
    al = {"a": 2, "b": 3, "c": 4}
    phi = P("a*x0^2+b*x0*x1+c*x1^2", ring, al)
    assert discriminant_binary(phi) == P("b^2-4*a*c", ring, al)


def test_discriminant_binary_cubic_frozen():
    # x0^3 + p x0 x1^2 + q x1^3: this normalization returns -12p^3 - 81q^2,
    # i.e. 3 * (-4p^3 - 27q^2); vanishing locus matches the classical one
    ring = Ring(4, QQ)
    al = {"p": 2, "q": 3}
    phi = P("x0^3+p*x0*x1^2+q*x1^3", ring, al)
    assert discriminant_binary(phi) == P("-12*p^3-81*q^2", ring, al)


def test_discriminant_detects_repeated_root():
    ring = Ring(2, QQ)
    assert discriminant_binary(P("x0^2-2*x0*x1+x1^2", ring)).is_zero()
    assert not discriminant_binary(P("x0^2-x1^2", ring)).is_zero()


# -- closure oracle -----------------------------------------------------------------

def _common_projective_zero_exists(forms, ext, n):
    for pt in projective_points(ext, n):
        if all(evaluate_poly(ext, f, pt) == ext.zero() for f in forms):
            return True
    return False


def test_resultant_zero_iff_closure_zero_binary():
    fld = GF(7)
    ring = Ring(2, fld)
    # 3 is not a square mod 7: x0^2 - 3 x1^2 has roots only over GF(49)
    f0 = parse_polynomial("x0^2-3*x1^2", ring)
    f1 = f0 * parse_polynomial("x0+x1", ring)
    ext = SmallExtField(7, 2)
    assert macaulay_resultant([f0, f1]).is_zero()
    assert _common_projective_zero_exists([f0, f1], ext, 1)
    g1 = parse_polynomial("x0^3+x0*x1^2+x1^3", ring)
    res = macaulay_resultant([f0, g1])
    shared = _common_projective_zero_exists([f0, g1], ext, 1)
    assert res.is_zero() == shared


def test_resultant_zero_iff_closure_zero_ternary():
    fld = GF(5)
    ring = Ring(3, fld)
    # 2 is not a square mod 5; common zero (sqrt2 : 1 : sqrt2) lives in GF(25)
    f0 = parse_polynomial("x0^2-2*x1^2", ring)
    f1 = parse_polynomial("x2^2-2*x1^2", ring)
    f2 = parse_polynomial("x0*x2-2*x1^2", ring)
    assert macaulay_resultant([f0, f1, f2]).is_zero()
    ext = SmallExtField(5, 2)
    assert _common_projective_zero_exists([f0, f1, f2], ext, 2)
    g2 = parse_polynomial("x0*x2+x1^2", ring)
    res = macaulay_resultant([f0, f1, g2])
    shared = _common_projective_zero_exists([f0, f1, g2], ext, 2)
    assert res.is_zero() == shared
