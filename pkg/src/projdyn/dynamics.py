"""Endomorphisms of projective space and their hypersurface dynamics.

An endomorphism is a tuple of n+1 forms of a common degree d in the first
n+1 ring variables; trailing ring variables are free parameters carried
along symbolically.  Built on top of this: iteration, orbits, Jacobians,
pushforward of hypersurfaces (image computation via elimination), resultant
certificates for improper intersection of iterated images, fixed-point
forms, and counting helpers for the relevant moduli dimensions.

Conventions for n = 1: the affine chart is z = x0/x1, so infinity is (1:0)
and the origin is (0:1).
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Optional, Sequence, Union

from .coeff import GF, PrimeField, RationalField, parse_field
from .errors import (DegeneracyError, InvalidInputError, NotDivisibleError,
                     RingMismatchError, UnsupportedScopeError)
from .mpoly import (Polynomial, Ring, determinant, divexact, embed,
                    equal_up_to_scalar, format_polynomial, parse_polynomial,
                    poly_gcd, primitive_part, squarefree_part,
                    strip_monomial_content)
from .resultant import macaulay_resultant, sylvester_resultant

_CERT_PRIMES = (10007, 10009, 10037, 10039, 10061)
_SCAN_LIMIT = 1_000_000      # largest prime field swept exhaustively
_FACTOR_LIMIT = 10 ** 12     # largest integer factored for rational roots
_PARSE_VARS = 64             # probe ring width when inferring variable counts
_XYZ = {"x": 0, "y": 1, "z": 2}


# -- points -------------------------------------------------------------------------

class ProjectivePoint:
    """Point of P^n with coordinates normalized so the last nonzero one is 1."""

    __slots__ = ("field", "coords")

    def __init__(self, coords: Sequence, fld):
        vals = [fld.coerce(c) for c in coords]
        last = None
        for i in range(len(vals) - 1, -1, -1):
            if not fld.is_zero(vals[i]):
                last = i
                break
        if last is None:
            raise InvalidInputError("projective points need a nonzero coordinate")
        inv = fld.inv(vals[last])
        self.field = fld
        self.coords = tuple(fld.mul(v, inv) for v in vals)

    def __eq__(self, other):
        return (isinstance(other, ProjectivePoint)
                and self.field == other.field and self.coords == other.coords)

    def __hash__(self):
        return hash((self.field.spec(), self.coords))

    def __repr__(self):
        return "(" + " : ".join(str(c) for c in self.coords) + ")"


@dataclass
class OrbitRecord:
    """Forward orbit until first repetition: tail length and exact period."""
    points: list
    tail: Optional[int]
    period: Optional[int]

    @property
    def terminated(self) -> bool:
        return self.period is not None


@dataclass
class PCFSearchReport:
    """Outcome of a periodic-critical-point search, with its proof scope."""
    found: bool
    period: Optional[int]
    scope: str


# -- hypersurfaces ------------------------------------------------------------------

class HypersurfaceForm:
    """Primitive defining form of a hypersurface in the projective block."""

    __slots__ = ("poly", "block_size", "degree")

    def __init__(self, poly: Polynomial, block_size: Optional[int] = None):
        bs = poly.ring.nvars if block_size is None else block_size
        block = tuple(range(bs))
        d = poly.homogeneous_degree_in_block(block)
        if poly.is_zero() or d is None or d < 1:
            raise InvalidInputError(
                "a hypersurface needs a nonzero block-homogeneous form of degree >= 1")
        self.poly = primitive_part(poly)
        self.block_size = bs
        self.degree = d

    def contains(self, point: ProjectivePoint) -> bool:
        fld = self.poly.ring.field
        if self.poly.ring.nvars != self.block_size:
            raise InvalidInputError("containment needs a parameter-free form")
        return fld.is_zero(self.poly.evaluate(point.coords))

    def __eq__(self, other):
        return (isinstance(other, HypersurfaceForm)
                and self.block_size == other.block_size and self.poly == other.poly)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self):
        return f"V({format_polynomial(self.poly)})"


def _as_form(phi, block_size: int) -> HypersurfaceForm:
    if isinstance(phi, HypersurfaceForm):
        if phi.block_size != block_size:
            raise InvalidInputError("hypersurface block does not match the map")
        return phi
    return HypersurfaceForm(phi, block_size)


# -- endomorphisms -------------------------------------------------------------------

def _joint_primitive(forms: Sequence[Polynomial]) -> tuple[Polynomial, ...]:
    """Scale the tuple by one constant: joint content out, canonical sign/monic."""
    ring = forms[0].ring
    fld = ring.field
    if isinstance(fld, RationalField):
        num = 0
        den = 1
        for f in forms:
            for c in f.terms.values():
                num = math.gcd(num, c.numerator)
                den = den * c.denominator // math.gcd(den, c.denominator)
        scale = Fraction(den, num) if num else Fraction(1)
        lead = None
        for f in forms:
            if not f.is_zero():
                lead = f.leading()[1] * scale
                break
        if lead is not None and lead < 0:
            scale = -scale
    else:
        lead = None
        for f in forms:
            if not f.is_zero():
                lead = f.leading()[1]
                break
        scale = fld.inv(lead) if lead is not None else fld.one()
    return tuple(f.scale(scale) for f in forms)


class Endomorphism:
    """Self-map of P^n given by n+1 forms of one degree in the leading block."""

    def __init__(self, forms: Sequence[Polynomial]):
        if not forms:
            raise InvalidInputError("no coordinate forms given")
        ring = forms[0].ring
        for f in forms[1:]:
            if f.ring != ring:
                raise RingMismatchError("coordinate forms live in different rings")
        n1 = len(forms)
        if ring.nvars < n1:
            raise InvalidInputError("ring has fewer variables than coordinates")
        block = tuple(range(n1))
        degrees = set()
        for f in forms:
            if f.is_zero():
                raise InvalidInputError("zero coordinate form")
            d = f.homogeneous_degree_in_block(block)
            if d is None or d < 1:
                raise InvalidInputError(
                    "coordinate forms must be block-homogeneous of degree >= 1")
            degrees.add(d)
        if len(degrees) != 1:
            raise InvalidInputError("coordinate forms have mixed degrees")
        self.ring = ring
        self.n = n1 - 1
        self.d = degrees.pop()
        self.forms = _joint_primitive(forms)
        self._iterates: dict[int, "Endomorphism"] = {1: self}
        self._is_morphism: Optional[bool] = None

    @property
    def field(self):
        return self.ring.field

    @property
    def nparams(self) -> int:
        return self.ring.nvars - (self.n + 1)

    def __eq__(self, other):
        return (isinstance(other, Endomorphism) and self.ring == other.ring
                and self.forms == other.forms)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self):
        inner = ", ".join(format_polynomial(f) for f in self.forms)
        return f"({inner})"

    # -- morphism test -------------------------------------------------------

    def is_morphism(self) -> bool:
        """True iff the coordinate forms share no zero over the closure."""
        if self._is_morphism is None:
            res = macaulay_resultant(list(self.forms), self.n + 1)
            self._is_morphism = not res.is_zero()
        return self._is_morphism

    # -- iteration and evaluation ---------------------------------------------

    def iterate(self, k: int) -> "Endomorphism":
        if k < 1:
            raise InvalidInputError("iterate count must be >= 1")
        if k not in self._iterates:
            prev = self.iterate(k - 1)
            images = list(prev.forms) + [self.ring.var(j)
                                         for j in range(self.n + 1, self.ring.nvars)]
            comps = [f.substitute(images) for f in self.forms]
            self._iterates[k] = Endomorphism(comps)
        return self._iterates[k]

    def apply(self, point: ProjectivePoint) -> ProjectivePoint:
        if self.nparams:
            raise InvalidInputError("point evaluation needs a parameter-free map")
        vals = [f.evaluate(point.coords) for f in self.forms]
        if all(self.field.is_zero(v) for v in vals):
            raise DegeneracyError("indeterminate-point",
                                  "the map is undefined at this point")
        return ProjectivePoint(vals, self.field)

    def orbit(self, point: ProjectivePoint, max_steps: int = 64) -> OrbitRecord:
        seen = {point: 0}
        points = [point]
        current = point
        for step in range(1, max_steps + 1):
            current = self.apply(current)
            if current in seen:
                j = seen[current]
                return OrbitRecord(points, tail=j, period=step - j)
            seen[current] = step
            points.append(current)
        return OrbitRecord(points, tail=None, period=None)

    def conjugate(self, matrix: Sequence[Sequence]) -> "Endomorphism":
        """A^(-1) o f o A for an invertible matrix over the coefficient field."""
        fld = self.field
        n1 = self.n + 1
        a = [[fld.coerce(x) for x in row] for row in matrix]
        if len(a) != n1 or any(len(r) != n1 for r in a):
            raise InvalidInputError("conjugation matrix has the wrong shape")
        inv = _matrix_inverse(a, fld)
        images = []
        for j in range(self.ring.nvars):
            if j < n1:
                img = self.ring.zero()
                for k in range(n1):
                    img = img + self.ring.var(k).scale(a[j][k])
                images.append(img)
            else:
                images.append(self.ring.var(j))
        moved = [f.substitute(images) for f in self.forms]
        out = []
        for j in range(n1):
            g = self.ring.zero()
            for k in range(n1):
                g = g + moved[k].scale(inv[j][k])
            out.append(g)
        return Endomorphism(out)

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.d, "field": self.field.spec(),
                "forms": [format_polynomial(f) for f in self.forms]}

    @classmethod
    def from_json(cls, data: Union[str, dict]) -> "Endomorphism":
        if isinstance(data, str):
            data = json.loads(data)
        fld = parse_field(data["field"])
        n = int(data["n"])
        texts = list(data["forms"])
        if len(texts) != n + 1:
            raise InvalidInputError("form count does not match n")
        f = endomorphism_from_strings(texts, fld)
        if f.d != int(data["d"]) or f.n != n:
            raise InvalidInputError("declared shape does not match the forms")
        return f


def endomorphism_from_strings(texts: Sequence[str], fld,
                              nvars: Optional[int] = None) -> Endomorphism:
    """Build a map from polynomial strings; ring size is inferred if omitted.

    The x/y/z shorthand is always understood; extra variables are x3, x4, ...
    """
    probe = Ring(_PARSE_VARS, fld)
    parsed = [parse_polynomial(t, probe, aliases=_XYZ) for t in texts]
    width = len(texts)
    for p in parsed:
        vs = p.variables()
        if vs:
            width = max(width, max(vs) + 1)
    if nvars is None:
        nvars = width
    elif nvars < width:
        raise InvalidInputError("declared variable count is too small")
    ring = Ring(nvars, fld)
    return Endomorphism([_shrink(p, ring) for p in parsed])


def _shrink(p: Polynomial, ring: Ring) -> Polynomial:
    """Recast into another ring width; only zero-exponent variables may drop."""
    w = ring.nvars
    out = {}
    for m, c in p.terms.items():
        if any(m[w:]):
            raise InvalidInputError("form uses a variable outside the ring")
        out[(m + (0,) * w)[:w]] = c
    return Polynomial(ring, out)


def _matrix_inverse(a, fld):
    k = len(a)
    m = [list(row) + [fld.one() if c == r else fld.zero() for c in range(k)]
         for r, row in enumerate(a)]
    for i in range(k):
        piv = None
        for r in range(i, k):
            if not fld.is_zero(m[r][i]):
                piv = r
                break
        if piv is None:
            raise InvalidInputError("conjugation matrix is singular")
        m[i], m[piv] = m[piv], m[i]
        inv = fld.inv(m[i][i])
        m[i] = [fld.mul(x, inv) for x in m[i]]
        for r in range(k):
            if r != i and not fld.is_zero(m[r][i]):
                f = m[r][i]
                m[r] = [fld.sub(x, fld.mul(f, y)) for x, y in zip(m[r], m[i])]
    return [row[k:] for row in m]


# -- jacobians -----------------------------------------------------------------------

def jacobian_polynomial(f: Endomorphism) -> Polynomial:
    """det of the (n+1)x(n+1) matrix of partials, rows by component, unreduced."""
    n1 = f.n + 1
    rows = [[f.forms[i].derivative(j) for j in range(n1)] for i in range(n1)]
    return determinant(rows)


def jacobian(f: Endomorphism) -> HypersurfaceForm:
    """Critical hypersurface of the map, as a primitive form."""
    if f.d == 1:
        raise InvalidInputError("degree-1 maps have a constant Jacobian")
    j = jacobian_polynomial(f)
    if j.is_zero():
        raise DegeneracyError("jacobian-degenerate",
                              "the Jacobian determinant vanishes identically")
    return HypersurfaceForm(j, f.n + 1)


# -- pushforward of hypersurfaces -----------------------------------------------------

def _extended_ring(ring: Ring, n: int):
    """[x-block | y-block | params] with maps in and out of the base ring."""
    n1 = n + 1
    nparams = ring.nvars - n1
    ext = Ring(2 * n1 + nparams, ring.field)
    into = list(range(n1)) + list(range(2 * n1, ext.nvars))
    # x-slots of the reverse map are placeholders: embed only reads an entry
    # when its exponent is nonzero, and x-degrees are checked to be 0 first.
    back = [0] * ext.nvars
    for i in range(n1):
        back[n1 + i] = i
    for j in range(nparams):
        back[2 * n1 + j] = n1 + j
    return ext, into, back


def _joint_degrees(g: Polynomial, blk) -> set:
    return {sum(m[v] for v in blk) for m in g.terms}


def _graph_blocks(forms: Sequence[Polynomial], n1: int):
    """Homogeneity blocks of graph-ring forms: y block, then parameters.

    A block is usable for interpolation only when every form is jointly
    homogeneous in it (one block degree per form).
    """
    ext = forms[0].ring
    blocks = []
    for blk in (list(range(n1, 2 * n1)), list(range(2 * n1, ext.nvars))):
        if blk and all(len(_joint_degrees(g, blk)) <= 1 for g in forms):
            blocks.append(blk)
    return blocks or None


def _strip_param_content(g: Polynomial, block_size: int) -> Polynomial:
    """Remove any factor free of the block variables (never a hypersurface)."""
    ring = g.ring
    if g.is_zero() or ring.nvars == block_size:
        return g
    groups: dict[tuple, dict] = {}
    for m, c in g.terms.items():
        mb = m[:block_size]
        mp = (0,) * block_size + m[block_size:]
        groups.setdefault(mb, {})[mp] = c
    content = None
    for mp_terms in groups.values():
        coeff = Polynomial(ring, dict(mp_terms))
        content = coeff if content is None else poly_gcd(content, coeff)
        if content.degree() == 0:
            return g
    return divexact(g, content)


def _reduce_poly_mod(g: Polynomial, target: Ring, q: int, images) -> Polynomial:
    """Map coefficients into F_q and substitute variable images in one pass."""
    out = target.zero()
    for m, c in g.terms.items():
        if isinstance(c, Fraction):
            den = c.denominator % q
            if den == 0:
                raise InvalidInputError("bad prime for this reduction")
            cv = c.numerator % q * pow(den, q - 2, q) % q
        else:
            cv = c % q
        term = target.const(cv)
        if term.is_zero():
            continue
        for i, e in enumerate(m):
            if e:
                term = term * images[i] ** e
        out = out + term
    return out


def _probably_squarefree(g: Polynomial, seed: int = 0) -> bool:
    """Restrict to a random line mod a small prime and test there.

    True is a proof (a square factor survives any degree-preserving
    restriction); False only means the cheap filter was inconclusive.
    """
    if g.is_zero() or not isinstance(g.ring.field, RationalField):
        return False
    for q in _CERT_PRIMES:
        rng = Random(seed ^ q)
        line = Ring(1, GF(q))
        t = line.var(0)
        images = [line.const(rng.randrange(q)) + t.scale(rng.randrange(1, q))
                  for _ in range(g.ring.nvars)]
        try:
            gm = _reduce_poly_mod(g, line, q, images)
        except InvalidInputError:
            continue
        if gm.is_zero() or gm.degree() < g.degree():
            continue  # unlucky line or bad prime
        der = gm.derivative(0)
        if der.is_zero():
            continue
        if poly_gcd(gm, der).degree() == 0:
            return True
        return False
    return False


def _certify_pushforward(f: Endomorphism, phi_poly: Polynomial, phi_degree: int,
                         candidate: Polynomial, seed: int) -> bool:
    """Test that the candidate vanishes on the image of V(phi).

    Criterion: the squarefree part of phi divides candidate(f(x)).  Checked
    after reducing mod a small prime and fixing parameters at random values,
    so a passing candidate misses no component (up to reduction accidents);
    rejection takes two independent failures.
    """
    ring = f.ring
    n1 = f.n + 1
    fld = ring.field
    if isinstance(fld, PrimeField):
        trials = [(fld.p, t) for t in range(3)]
    else:
        trials = [(q, t) for q in _CERT_PRIMES[:3] for t in range(2)]
    failures = 0
    for q, t in trials:
        rng = Random((seed << 8) ^ (q << 3) ^ t)
        point_ring = Ring(n1, GF(q))
        images = [point_ring.var(i) for i in range(n1)] + \
                 [point_ring.const(rng.randrange(q))
                  for _ in range(ring.nvars - n1)]
        try:
            fs = [_reduce_poly_mod(g, point_ring, q, images) for g in f.forms]
            ps = _reduce_poly_mod(phi_poly, point_ring, q, images)
            cs = _reduce_poly_mod(candidate, point_ring, q, images)
        except InvalidInputError:
            continue
        if ps.is_zero() or cs.is_zero() or any(g.is_zero() for g in fs):
            continue
        if ps.degree() < phi_degree:
            continue  # this parameter point degenerates the hypersurface
        composed = cs.substitute(fs)
        if composed.is_zero():
            return True
        try:
            divexact(composed, squarefree_part(ps))
            return True
        except NotDivisibleError:
            failures += 1
            if failures >= 2:
                return False
    return failures == 0


def _image_form(f: Endomorphism, phi_poly: Polynomial, *, seed: int,
                strategy: str, rescale: bool) -> tuple[Polynomial, Polynomial]:
    """Reduced defining form of f(V(phi)) plus the first raw elimination.

    With rescale=True every intermediate is primitive-normalized.  With
    rescale=False no coefficient-dependent normalization is applied: every
    scalar in the output comes from a Macaulay quotient, an exact division,
    or a monomial strip, so on parameter-free input the result is a fixed
    polynomial function of the input coefficients and specializing the
    coefficients commutes with the computation.
    """
    n = f.n
    n1 = n + 1
    ring = f.ring
    phi_degree = phi_poly.homogeneous_degree_in_block(tuple(range(n1)))
    if phi_poly.is_zero() or phi_degree is None or phi_degree < 1:
        raise InvalidInputError(
            "a hypersurface needs a nonzero block-homogeneous form of degree >= 1")
    norm = primitive_part if rescale else (lambda g: g)
    ext, into, back = _extended_ring(ring, n)
    fx = [embed(g, ext, into) for g in f.forms]
    px = embed(phi_poly, ext, into)
    y = [ext.var(n1 + i) for i in range(n1)]

    if n == 1:
        raw_ext = sylvester_resultant(px, y[1] * fx[0] - y[0] * fx[1], pair=(0, 1))
        combined = raw_ext
    else:
        minors = {}
        for j in range(n1):
            for k in range(j + 1, n1):
                minors[(j, k)] = y[j] * fx[k] - y[k] * fx[j]
        choice_a = [minors[(0, k)] for k in range(1, n1)]
        choice_b = [minors[(0, 1)]] + [minors[(k, k + 1)] for k in range(1, n)]
        results = [macaulay_resultant([px] + choice, n1, strategy=strategy,
                                      seed=seed,
                                      blocks=_graph_blocks([px] + choice, n1))
                   for choice in (choice_a, choice_b)]
        raw_ext = results[0]
        if any(r.is_zero() for r in results):
            raise DegeneracyError("pushforward-degenerate",
                                  "an elimination resultant vanished identically")
        if rescale:
            reduced = [_strip_param_content(primitive_part(r), 2 * n1)
                       for r in results]
        else:
            # each choice differs only by its extraneous coordinate monomial
            reduced = [strip_monomial_content(r) for r in results]
        if equal_up_to_scalar(reduced[0], reduced[1]):
            combined = reduced[0]
        else:
            combined = poly_gcd(reduced[0], reduced[1])

    if combined.is_zero():
        raise DegeneracyError("pushforward-degenerate",
                              "elimination produced the zero form")
    combined = _strip_param_content(norm(combined), 2 * n1)
    stripped = strip_monomial_content(combined)
    variants = [stripped, combined] if stripped != combined else [combined]
    candidates = []
    for g in variants:
        if not _probably_squarefree(g, seed):
            sf = squarefree_part(g)
            # equal degree means g was already squarefree: keep its scalars
            if rescale or sf.degree() != g.degree():
                g = sf
        candidates.append(g)

    y_block = tuple(range(n1, 2 * n1))
    degree_cap = phi_degree * f.d ** (n - 1)
    final = None
    for g in candidates:
        if not 1 <= g.degree_in_block(y_block) <= degree_cap:
            continue
        for v in range(n1):
            if g.degree_in(v) != 0:
                raise DegeneracyError("pushforward-degenerate",
                                      "x variables survived elimination")
        g_base = norm(embed(g, ring, back))
        if _certify_pushforward(f, phi_poly, phi_degree, g_base, seed):
            final = g_base
            break
    if final is None:
        if not rescale:
            # when the image form divides the coordinate-monomial junk the
            # scalar-stable reduction collapses to a constant; only the
            # normalized route can separate the two
            return _image_form(f, phi_poly, seed=seed, strategy=strategy,
                               rescale=True)
        raise DegeneracyError("pushforward-unreduced",
                              "no candidate passed the degree and vanishing checks")
    return final, raw_ext


def pushforward(f: Endomorphism, phi, *, raw: bool = False, seed: int = 0,
                strategy: str = "auto"):
    """Image of the hypersurface V(phi) under f, as a reduced primitive form.

    Elimination on the graph ring [x | y | params]: for n = 1 a single
    Sylvester resultant of phi and y1*f0 - y0*f1 is the exact product of
    image point forms; for n >= 2 the Macaulay resultant of phi with n of
    the minors y_j*f_k - y_k*f_j is taken for two choices of minors (each
    choice contributes its own extraneous coordinate factor), combined by
    gcd.  Parameter content is stripped, candidate monomial factors are
    arbitrated by an independent vanishing check, and the result is made
    squarefree.  With raw=True the first unreduced resultant is returned
    alongside.  The map should be a morphism; degenerate eliminations raise.
    """
    phi = _as_form(phi, f.n + 1)
    if phi.poly.ring != f.ring:
        raise RingMismatchError("hypersurface and map live in different rings")
    n1 = f.n + 1
    final, raw_ext = _image_form(f, phi.poly, seed=seed, strategy=strategy,
                                 rescale=True)
    if raw:
        for v in range(n1):
            if raw_ext.degree_in(v) != 0:
                raise DegeneracyError("pushforward-degenerate",
                                      "x variables survived elimination")
        _, _, back = _extended_ring(f.ring, f.n)
        return HypersurfaceForm(final, n1), embed(raw_ext, f.ring, back)
    return HypersurfaceForm(final, n1)


def pushforward_iterated(f: Endomorphism, phi, k: int, *, mode: str = "steps",
                         seed: int = 0, strategy: str = "auto") -> HypersurfaceForm:
    """k-fold image: repeated single steps (default) or one pass with f^k."""
    phi = _as_form(phi, f.n + 1)
    if k < 0:
        raise InvalidInputError("iteration count must be >= 0")
    if k == 0:
        return phi
    if mode == "direct":
        return pushforward(f.iterate(k), phi, seed=seed, strategy=strategy)
    if mode != "steps":
        raise InvalidInputError(f"unknown mode {mode!r}")
    current = phi
    for _ in range(k):
        current = pushforward(f, current, seed=seed, strategy=strategy)
    return current


# -- improperness certificates --------------------------------------------------------

def improper_certificate(f: Endomorphism, phi, indices: Sequence[int], *,
                         strategy: str = "auto", seed: int = 0,
                         blocks=None) -> Polynomial:
    """Resultant of the n+1 iterated images f^i_* V(phi) for i in `indices`.

    Zero exactly when those images fail to intersect properly (share a common
    point over the closure).  Constant for parameter-free input; otherwise a
    polynomial in the parameters.  Parameter-free values carry no
    normalization-dependent scalars: they are a fixed polynomial function of
    the coefficients of f and phi, so evaluating a parametric certificate at
    a point agrees with certifying the specialized system directly.
    """
    idx = list(indices)
    if len(idx) != f.n + 1 or sorted(set(idx)) != idx or min(idx) < 0:
        raise InvalidInputError(
            "indices must be strictly increasing, nonnegative, length n+1")
    pushes = _pushforward_chain(f, phi, max(idx), seed=seed, strategy=strategy)
    forms = [pushes[i] for i in idx]
    if blocks is None:
        blocks = _detect_joint_block(forms, f.n + 1)
    return macaulay_resultant(forms, f.n + 1, strategy=strategy, seed=seed,
                              blocks=blocks)


def _pushforward_chain(f: Endomorphism, phi, top: int, *, seed: int,
                       strategy: str) -> list[Polynomial]:
    """Iterated image forms of V(phi), starting from phi itself.

    Certificates compare resultants of these forms across coefficient
    specializations, so for parameter-free systems no step may rescale by a
    coefficient-dependent factor: the given form is used verbatim and the
    images stay unnormalized.  Parametric systems keep the primitive
    convention of `pushforward` (the symbolic output is the object itself).
    """
    n1 = f.n + 1
    if isinstance(phi, HypersurfaceForm):
        if phi.block_size != n1:
            raise InvalidInputError("hypersurface block does not match the map")
        poly = phi.poly
    else:
        poly = phi
    if poly.ring != f.ring:
        raise RingMismatchError("hypersurface and map live in different rings")
    rescale = f.ring.nvars > n1
    chain = [primitive_part(poly) if rescale else poly]
    for _ in range(top):
        nxt, _ = _image_form(f, chain[-1], seed=seed, strategy=strategy,
                             rescale=rescale)
        chain.append(nxt)
    return chain


def _detect_joint_block(forms: Sequence[Polynomial], block_size: int):
    """[all parameters] if every form is jointly homogeneous there."""
    ring = forms[0].ring
    params = list(range(block_size, ring.nvars))
    if not params:
        return None
    if any(len(_joint_degrees(g, params)) > 1 for g in forms):
        return None
    return [params]


def search_improper_witness(f: Endomorphism, phi, bound: int, *,
                            strategy: str = "auto", seed: int = 0
                            ) -> Optional[tuple[int, ...]]:
    """Lexicographically least index tuple in [0, bound] whose certificate
    vanishes, or None when every tuple intersects properly."""
    if bound < f.n:
        raise InvalidInputError("bound leaves too few indices to choose")
    pushes = _pushforward_chain(f, phi, bound, seed=seed, strategy=strategy)
    for combo in itertools.combinations(range(bound + 1), f.n + 1):
        forms = [pushes[i] for i in combo]
        blocks = _detect_joint_block(forms, f.n + 1)
        res = macaulay_resultant(forms, f.n + 1, strategy=strategy, seed=seed,
                                 blocks=blocks)
        if res.is_zero():
            return combo
    return None


# -- periodic points on the line -------------------------------------------------------

def fixed_form(f: Endomorphism, s: int = 1) -> Polynomial:
    """x0 * (f^s)_1 - x1 * (f^s)_0: vanishes at points of period dividing s."""
    if f.n != 1:
        raise UnsupportedScopeError("fixed-point forms are implemented for n = 1")
    if s < 1:
        raise InvalidInputError("period must be >= 1")
    g = f.iterate(s)
    return f.ring.var(0) * g.forms[1] - f.ring.var(1) * g.forms[0]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        return []
    if n > _FACTOR_LIMIT:
        raise UnsupportedScopeError("coefficient too large for rational root search")
    out = set()
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.add(i)
            out.add(n // i)
        i += 1
    return sorted(out)


def _rational_projective_roots(form: Polynomial) -> list[ProjectivePoint]:
    """Distinct rational points of P^1 where a binary form over Q vanishes."""
    ring = form.ring
    fld = ring.field
    prim = primitive_part(form)
    deg = prim.homogeneous_degree_in_block((0, 1))
    if deg is None or prim.is_zero():
        raise InvalidInputError("not a binary form")
    coeffs = [0] * (deg + 1)  # coeffs[i] multiplies x0^i x1^(deg-i)
    for m, c in prim.terms.items():
        coeffs[m[0]] = int(c)
    roots = []
    if coeffs[deg] == 0:
        roots.append(ProjectivePoint((1, 0), fld))
    low = 0
    while low <= deg and coeffs[low] == 0:
        low += 1
    if low > 0:
        roots.append(ProjectivePoint((0, 1), fld))
    high = deg
    while high >= low and coeffs[high] == 0:
        high -= 1
    poly = coeffs[low:high + 1]
    if len(poly) > 1:
        for a in _divisors(poly[0]):
            for b in _divisors(poly[-1]):
                if math.gcd(a, b) != 1:
                    continue
                for num in (a, -a):
                    z = Fraction(num, b)
                    if sum(Fraction(cf) * z ** i for i, cf in enumerate(poly)) == 0:
                        pt = ProjectivePoint((z, 1), fld)
                        if pt not in roots:
                            roots.append(pt)
    return roots


def periodic_points(f: Endomorphism, s: int, *, exact: bool = False
                    ) -> list[ProjectivePoint]:
    """Points of P^1 with period dividing s (exact=True: period exactly s).

    Over Q only rational points are found (rational root search); over a
    prime field the projective line is swept exhaustively.
    """
    if f.n != 1:
        raise UnsupportedScopeError("periodic point search is implemented for n = 1")
    if f.nparams:
        raise InvalidInputError("periodic points need a parameter-free map")
    form = fixed_form(f, s)
    fld = f.field
    if isinstance(fld, RationalField):
        pts = _rational_projective_roots(form)
    else:
        if fld.p > _SCAN_LIMIT:
            raise UnsupportedScopeError("prime field too large for exhaustive sweep")
        pts = [ProjectivePoint((t, 1), fld) for t in range(fld.p)
               if fld.is_zero(form.evaluate((t, 1)))]
        if fld.is_zero(form.evaluate((1, 0))):
            pts.append(ProjectivePoint((1, 0), fld))
    if exact:
        pts = [p for p in pts if f.orbit(p, max_steps=s + 1).period == s]
    return pts


def binary_form_roots(form: Polynomial) -> list[ProjectivePoint]:
    """Points of P^1(k) where a nonzero binary form vanishes, k-rational only.

    Over Q this is a rational root search on the primitive integer model;
    over a prime field the projective line is swept exhaustively.
    """
    fld = form.ring.field
    if isinstance(fld, RationalField):
        return _rational_projective_roots(form)
    if fld.p > _SCAN_LIMIT:
        raise UnsupportedScopeError("prime field too large for exhaustive sweep")
    pts = [ProjectivePoint((t, 1), fld) for t in range(fld.p)
           if fld.is_zero(form.evaluate((t, 1)))]
    if fld.is_zero(form.evaluate((1, 0))):
        pts.append(ProjectivePoint((1, 0), fld))
    return pts


def critical_points(f: Endomorphism) -> list[ProjectivePoint]:
    """Rational critical points of a self-map of the line.

    Roots of the Jacobian form found over the working field; points over
    extensions are not reported.
    """
    if f.n != 1:
        raise UnsupportedScopeError("critical point search is implemented for n = 1")
    if f.nparams:
        raise InvalidInputError("critical points need a parameter-free map")
    return binary_form_roots(jacobian(f).poly)


def has_periodic_critical_point(f: Endomorphism, max_period: int,
                                *, seed: int = 0) -> PCFSearchReport:
    """Does some critical point (over the closure) have period <= max_period?

    Decided exactly for n = 1 via resultants of the Jacobian form with the
    fixed-point forms; the report records the proof scope.  Larger n is out
    of scope and raises.
    """
    if f.n != 1:
        raise UnsupportedScopeError("periodic critical points: only n = 1 is decided")
    if f.nparams:
        raise InvalidInputError("needs a parameter-free map")
    if max_period < 1:
        raise InvalidInputError("max_period must be >= 1")
    jf = jacobian(f).poly
    deg_j = jf.homogeneous_degree_in_block((0, 1))
    fld = f.field
    for s in range(1, max_period + 1):
        phi_s = fixed_form(f, s)
        deg_s = phi_s.homogeneous_degree_in_block((0, 1))
        if isinstance(fld, RationalField):
            vanished = _resultant_is_zero_exact(jf, phi_s, deg_j, deg_s)
        else:
            vanished = sylvester_resultant(
                jf, phi_s, degrees=(deg_j, deg_s)).is_zero()
        if vanished:
            return PCFSearchReport(True, s, "closure-exact")
    return PCFSearchReport(False, None, "closure-exact")


def _resultant_is_zero_exact(p: Polynomial, q: Polynomial, dp: int, dq: int) -> bool:
    """Zero test for a Sylvester resultant over Q: modular filter, exact confirm.

    The formal degrees are pinned, so the matrix mod a prime is the entrywise
    reduction of the rational matrix; a nonzero determinant mod the prime
    proves the rational determinant nonzero.
    """
    for qp in _CERT_PRIMES:
        try:
            target = Ring(p.ring.nvars, GF(qp))
            pm = _reduce_poly_mod(p, target, qp, target.gens())
            qm = _reduce_poly_mod(q, target, qp, target.gens())
        except InvalidInputError:
            continue
        if not sylvester_resultant(pm, qm, degrees=(dp, dq)).is_zero():
            return False
        break
    return sylvester_resultant(p, q, degrees=(dp, dq)).is_zero()


# -- dimension counts ------------------------------------------------------------------

def dim_forms(n: int, m: int) -> int:
    """Projective dimension of the space of degree-m forms on P^n."""
    return math.comb(n + m, m) - 1


def dim_end(n: int, d: int) -> int:
    """Projective dimension of the space of degree-d self-map tuples on P^n."""
    return (n + 1) * math.comb(n + d, d) - 1


def generic_cert_degree(n: int, m: int, d: int, indices: Sequence[int]) -> int:
    """Coefficient-space degree of the certificate for generic data."""
    idx = list(indices)
    if len(idx) != n + 1:
        raise InvalidInputError("need n+1 indices")
    return (m ** n) * (d ** ((n - 1) * sum(idx))) * sum(d ** i for i in idx)
