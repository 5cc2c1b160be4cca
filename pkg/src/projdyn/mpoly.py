"""Sparse exact multivariate polynomials over QQ or F_p.

Representation: a term dict mapping exponent tuples to nonzero field values.
The canonical term order everywhere (printing, leading terms, primitive-part
sign) is graded lexicographic with x0 > x1 > ... .

Variables are named x0..xN in the text grammar; the single-letter aliases
x, y, z are accepted on input for rings with at most three variables and are
normalized to x0, x1, x2 on output.  Round-tripping print -> parse is
bit-exact.

Algorithms here stay at desk scale on purpose: primitive-PRS gcd, cofactor /
fraction-free Bareiss determinants, dense interpolation.  No factorization, no
Groebner machinery.
"""

from __future__ import annotations

import itertools
import math
import re
from fractions import Fraction
from random import Random
from typing import Callable, Iterable, Optional, Sequence

from .coeff import Field, PrimeField, QQ, RationalField, Value, random_element
from .errors import (DegeneracyError, InvalidInputError, NotDivisibleError,
                     RingMismatchError)

NEG_INF = float("-inf")  # degree of the zero polynomial

Monomial = tuple[int, ...]


def grlex_key(m: Monomial):
    return (sum(m), m)


class Ring:
    """A polynomial ring: a variable count over a coefficient field."""

    __slots__ = ("nvars", "field")

    def __init__(self, nvars: int, field: Field):
        if nvars < 1:
            raise InvalidInputError("ring needs at least one variable")
        self.nvars = nvars
        self.field = field

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(self.field.one())

    def const(self, c) -> "Polynomial":
        c = self.field.coerce(c)
        if self.field.is_zero(c):
            return Polynomial(self, {})
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, i: int) -> "Polynomial":
        if not 0 <= i < self.nvars:
            raise InvalidInputError(f"variable index {i} out of range for {self}")
        m = [0] * self.nvars
        m[i] = 1
        return Polynomial(self, {tuple(m): self.field.one()})

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def __eq__(self, other):
        return (isinstance(other, Ring) and other.nvars == self.nvars
                and other.field == self.field)

    def __hash__(self):
        return hash((self.nvars, self.field))

    def __repr__(self):
        return f"Ring({self.nvars} vars over {self.field!r})"


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms  # exponent tuple -> nonzero coefficient

    # -- basic structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        """Total degree; NEG_INF for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(sum(m) for m in self.terms)

    def degree_in(self, var: int) -> int:
        if not self.terms:
            return 0
        return max(m[var] for m in self.terms)

    def degree_in_block(self, block: Sequence[int]):
        if not self.terms:
            return NEG_INF
        return max(sum(m[v] for v in block) for m in self.terms)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        degs = {sum(m) for m in self.terms}
        return len(degs) == 1

    def homogeneous_degree_in_block(self, block: Sequence[int]) -> Optional[int]:
        """Common block-degree of every term, or None if mixed.  Zero -> 0."""
        if not self.terms:
            return 0
        degs = {sum(m[v] for v in block) for m in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def variables(self) -> list[int]:
        """Indices of variables that actually occur."""
        seen = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    seen.add(i)
        return sorted(seen)

    def leading(self) -> tuple[Monomial, Value]:
        """Graded-lex leading (monomial, coefficient).  Error on zero."""
        if not self.terms:
            raise InvalidInputError("zero polynomial has no leading term")
        m = max(self.terms, key=grlex_key)
        return m, self.terms[m]

    def coefficient(self, mono: Monomial) -> Value:
        return self.terms.get(tuple(mono), self.ring.field.zero())

    def constant_value(self) -> Value:
        """The field value of a constant polynomial (error otherwise)."""
        if not self.terms:
            return self.ring.field.zero()
        if len(self.terms) == 1:
            (m, c), = self.terms.items()
            if not any(m):
                return c
        raise InvalidInputError("polynomial is not constant")

    def sorted_terms(self) -> list[tuple[Monomial, Value]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    # -- ring operations ---------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        self._check(other)
        fld = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = fld.add(out.get(m, fld.zero()), c)
            if fld.is_zero(s):
                out.pop(m, None)
            else:
                out[m] = s
        return Polynomial(self.ring, out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        fld = self.ring.field
        return Polynomial(self.ring, {m: fld.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return self.__add__(other.__neg__())

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        fld = self.ring.field
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(e1 + e2 for e1, e2 in zip(m1, m2))
                s = fld.add(out.get(m, fld.zero()), fld.mul(c1, c2))
                if fld.is_zero(s):
                    out.pop(m, None)
                else:
                    out[m] = s
        return Polynomial(self.ring, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def scale(self, c) -> "Polynomial":
        fld = self.ring.field
        c = fld.coerce(c)
        if fld.is_zero(c):
            return self.ring.zero()
        return Polynomial(self.ring, {m: fld.mul(v, c) for m, v in self.terms.items()})

    def __pow__(self, e: int):
        if e < 0:
            raise InvalidInputError("negative polynomial power")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self):
        return f"<poly {format_polynomial(self)}>"

    # -- calculus / evaluation ----------------------------------------------

    def derivative(self, var: int) -> "Polynomial":
        fld = self.ring.field
        out: dict = {}
        for m, c in self.terms.items():
            e = m[var]
            if e == 0:
                continue
            c2 = fld.mul(c, fld.coerce(e))
            if fld.is_zero(c2):
                continue
            m2 = list(m)
            m2[var] = e - 1
            out[tuple(m2)] = c2
        return Polynomial(self.ring, out)

    def evaluate(self, point: Sequence) -> Value:
        """Exact value at a tuple of field elements."""
        fld = self.ring.field
        if len(point) != self.ring.nvars:
            raise InvalidInputError("point length does not match ring")
        pt = [fld.coerce(x) for x in point]
        total = fld.zero()
        for m, c in self.terms.items():
            v = c
            for i, e in enumerate(m):
                if e:
                    v = fld.mul(v, fld.pw(pt[i], e))
            total = fld.add(total, v)
        return total

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Map variable i to images[i] (all in one target ring)."""
        if len(images) != self.ring.nvars:
            raise InvalidInputError("need one image per variable")
        target = images[0].ring
        for g in images:
            if g.ring != target:
                raise RingMismatchError("substitution images live in different rings")
        if target.field != self.ring.field:
            raise RingMismatchError("substitution cannot change coefficient field")
        cache: dict[tuple[int, int], Polynomial] = {}

        def power(i: int, e: int) -> Polynomial:
            key = (i, e)
            if key not in cache:
                cache[key] = images[i] ** e
            return cache[key]

        total = target.zero()
        for m, c in self.terms.items():
            part = target.const(c)
            for i, e in enumerate(m):
                if e:
                    part = part * power(i, e)
            total = total + part
        return total

    def map_coefficients(self, fn: Callable, new_field: Field) -> "Polynomial":
        """Apply fn to every coefficient, landing in new_field (zeros dropped)."""
        ring = Ring(self.ring.nvars, new_field)
        out: dict = {}
        for m, c in self.terms.items():
            v = fn(c)
            if not new_field.is_zero(v):
                out[m] = v
        return Polynomial(ring, out)


# -- construction helpers ----------------------------------------------------

def embed(p: Polynomial, new_ring: Ring, var_map: Optional[Sequence[int]] = None) -> Polynomial:
    """Recast p into new_ring, sending old variable i to new index var_map[i].

    Default map is the identity on indices (new ring just has more variables).
    """
    if new_ring.field != p.ring.field:
        raise RingMismatchError("embed cannot change coefficient field")
    if var_map is None:
        var_map = list(range(p.ring.nvars))
    if len(var_map) != p.ring.nvars:
        raise InvalidInputError("var_map length must equal source variable count")
    out: dict = {}
    for m, c in p.terms.items():
        m2 = [0] * new_ring.nvars
        for i, e in enumerate(m):
            if e:
                m2[var_map[i]] += e
        out[tuple(m2)] = c
    return Polynomial(new_ring, out)


def monomials_of_degree(nvars: int, degree: int) -> list[Monomial]:
    """All exponent tuples of exact total degree, graded-lex descending."""
    if degree < 0:
        return []
    out = []
    for bars in itertools.combinations(range(degree + nvars - 1), nvars - 1):
        prev = -1
        mono = []
        for b in bars:
            mono.append(b - prev - 1)
            prev = b
        mono.append(degree + nvars - 2 - prev)
        out.append(tuple(mono))
    out.sort(key=grlex_key, reverse=True)
    return out


def monomials_up_to_degree(nvars: int, bound: int) -> list[Monomial]:
    out = []
    for d in range(bound + 1):
        out.extend(monomials_of_degree(nvars, d))
    out.sort(key=grlex_key, reverse=True)
    return out


# -- normalization ------------------------------------------------------------

def content_primitive(p: Polynomial) -> tuple[Value, Polynomial]:
    """Split p = content * primitive.

    Over QQ the primitive part has coprime integer coefficients and positive
    graded-lex leading coefficient; over F_p it is monic.  content(0) = 0.
    """
    fld = p.ring.field
    if p.is_zero():
        return fld.zero(), p
    if isinstance(fld, PrimeField):
        _, lc = p.leading()
        inv = fld.inv(lc)
        return lc, p.scale(inv)
    g = 0
    l = 1
    for c in p.terms.values():
        g = math.gcd(g, abs(c.numerator))
        l = l * c.denominator // math.gcd(l, c.denominator)
    content = Fraction(g, l)
    _, lc = p.leading()
    if lc < 0:
        content = -content
    return content, p.scale(1 / content)


def primitive_part(p: Polynomial) -> Polynomial:
    return content_primitive(p)[1]


def equal_up_to_scalar(p: Polynomial, q: Polynomial) -> bool:
    """True iff p = c*q for a nonzero field constant c (or both are zero)."""
    if p.ring != q.ring:
        raise RingMismatchError("comparing polynomials from different rings")
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    a = primitive_part(p)
    b = primitive_part(q)
    return a == b or a == -b


def strip_monomial_content(p: Polynomial) -> Polynomial:
    """Divide out the largest monomial dividing every term."""
    if p.is_zero():
        return p
    n = p.ring.nvars
    mins = [min(m[i] for m in p.terms) for i in range(n)]
    if not any(mins):
        return p
    out = {tuple(e - lo for e, lo in zip(m, mins)): c for m, c in p.terms.items()}
    return Polynomial(p.ring, out)


# -- exact division ------------------------------------------------------------

def divexact(num: Polynomial, den: Polynomial) -> Polynomial:
    """Exact quotient num/den; raises NotDivisibleError if the division fails."""
    if num.ring != den.ring:
        raise RingMismatchError("division across rings")
    if den.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    ring, fld = num.ring, num.ring.field
    if not num.terms:
        return ring.zero()
    dm, dc = den.leading()
    dc_inv = fld.inv(dc)
    rem = dict(num.terms)
    quo: dict = {}
    while rem:
        m = max(rem, key=grlex_key)
        c = rem[m]
        qm = tuple(a - b for a, b in zip(m, dm))
        if any(e < 0 for e in qm):
            raise NotDivisibleError("leading monomial not divisible")
        qc = fld.mul(c, dc_inv)
        quo[qm] = qc
        # rem -= qc * x^qm * den
        for m2, c2 in den.terms.items():
            mm = tuple(a + b for a, b in zip(qm, m2))
            s = fld.sub(rem.get(mm, fld.zero()), fld.mul(qc, c2))
            if fld.is_zero(s):
                rem.pop(mm, None)
            else:
                rem[mm] = s
    return Polynomial(ring, quo)


# -- gcd / squarefree ----------------------------------------------------------

def _coeffs_in_var(p: Polynomial, v: int) -> dict[int, Polynomial]:
    """View p as univariate in x_v: degree -> coefficient polynomial (v-free)."""
    ring = p.ring
    out: dict[int, dict] = {}
    for m, c in p.terms.items():
        e = m[v]
        m2 = list(m)
        m2[v] = 0
        out.setdefault(e, {})[tuple(m2)] = c
    return {e: Polynomial(ring, t) for e, t in out.items()}


def _from_coeffs_in_var(coeffs: dict[int, Polynomial], v: int, ring: Ring) -> Polynomial:
    out: dict = {}
    for e, poly in coeffs.items():
        for m, c in poly.terms.items():
            m2 = list(m)
            m2[v] += e
            out[tuple(m2)] = c
    return Polynomial(ring, out)


def _content_in_var(p: Polynomial, v: int) -> Polynomial:
    cs = list(_coeffs_in_var(p, v).values())
    g = cs[0]
    for c in cs[1:]:
        g = poly_gcd(g, c)
        if g.degree() == 0:
            break
    return g


def _prem(f: Polynomial, g: Polynomial, v: int) -> Polynomial:
    """Pseudo-remainder of f by g with respect to x_v."""
    ring = f.ring
    dg = g.degree_in(v)
    lc_g = _coeffs_in_var(g, v)[dg]
    r = f
    d = f.degree_in(v) - dg + 1
    xv = ring.var(v)
    while not r.is_zero() and r.degree_in(v) >= dg:
        dr = r.degree_in(v)
        lc_r = _coeffs_in_var(r, v)[dr]
        r = lc_g * r - lc_r * (xv ** (dr - dg)) * g
        d -= 1
    for _ in range(max(d, 0)):
        r = lc_g * r
    return r


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Primitive-PRS gcd; result is primitive-normalized.

    Recurses on the most frequent variable (ties to the lowest index).  Desk
    scale: a handful of variables, moderate degrees.
    """
    if p.ring != q.ring:
        raise RingMismatchError("gcd across rings")
    if p.is_zero():
        return primitive_part(q)
    if q.is_zero():
        return primitive_part(p)
    vars_p, vars_q = p.variables(), q.variables()
    common = set(vars_p) | set(vars_q)
    if not common:
        return p.ring.one()
    counts = {v: 0 for v in common}
    for poly in (p, q):
        for m in poly.terms:
            for v in common:
                if m[v]:
                    counts[v] += 1
    v = min(common, key=lambda w: (-counts[w], w))
    if v not in set(vars_p) & set(vars_q):
        # variable missing from one side: gcd divides the content there
        pc = _content_in_var(p, v) if v in vars_p else primitive_part(p)
        qc = _content_in_var(q, v) if v in vars_q else primitive_part(q)
        return poly_gcd(pc, qc)
    cont_p = _content_in_var(p, v)
    cont_q = _content_in_var(q, v)
    cont = poly_gcd(cont_p, cont_q)
    f = divexact(p, cont_p)
    g = divexact(q, cont_q)
    if f.degree_in(v) < g.degree_in(v):
        f, g = g, f
    while not g.is_zero():
        r = _prem(f, g, v)
        if r.is_zero():
            f, g = g, r
            break
        r = divexact(r, _content_in_var(r, v))
        if r.degree_in(v) == 0:
            f, g = r, r.ring.zero()
            break
        f, g = g, r
    if f.degree_in(v) == 0:
        return primitive_part(cont)
    return primitive_part(cont * divexact(f, _content_in_var(f, v)))


def _pth_root(p: Polynomial) -> Polynomial:
    """p-th root of a perfect p-th power over F_p (Frobenius is identity)."""
    fld = p.ring.field
    ch = fld.characteristic
    out = {}
    for m, c in p.terms.items():
        out[tuple(e // ch for e in m)] = c
    return Polynomial(p.ring, out)


def squarefree_part(p: Polynomial) -> Polynomial:
    """Largest squarefree divisor.

    Core step is p / gcd(p, partials), recursing into the gcd so factors of
    multiplicity >= 2 (and characteristic-p powers, handled by an exact p-th
    root) are recovered exactly once; duplicates are merged by a gcd join.
    """
    if p.is_zero():
        return p
    work = primitive_part(p)
    if not work.variables():
        return work.ring.one()
    derivs = [work.derivative(v) for v in work.variables()]
    live = [d for d in derivs if not d.is_zero()]
    if not live:
        # every exponent divisible by the characteristic: exact p-th root
        return squarefree_part(_pth_root(work))
    g = work
    for d in live:
        g = poly_gcd(g, d)
        if g.degree() == 0:
            break
    if g.degree() == 0:
        return work  # gcd with own gradient is constant: already squarefree
    w = primitive_part(divexact(work, g))
    rest = squarefree_part(g)
    return primitive_part(w * divexact(rest, poly_gcd(rest, w)))


# -- determinants ---------------------------------------------------------------

def _det_cofactor(rows: list[list[Polynomial]], ring: Ring) -> Polynomial:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = ring.zero()
    for j, top in enumerate(rows[0]):
        if top.is_zero():
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in rows[1:]]
        sub = _det_cofactor(minor, ring)
        term = top * sub
        total = total + (term if j % 2 == 0 else -term)
    return total


def determinant(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Exact determinant of a square matrix of polynomials.

    Cofactor expansion up to 4x4; fraction-free Bareiss elimination (row
    pivoting, exact divisions) beyond that.
    """
    n = len(rows)
    if n == 0:
        raise InvalidInputError("empty matrix")
    ring = rows[0][0].ring
    for row in rows:
        if len(row) != n:
            raise InvalidInputError("matrix is not square")
        for e in row:
            if e.ring != ring:
                raise RingMismatchError("matrix entries from different rings")
    if n <= 4:
        return _det_cofactor([list(r) for r in rows], ring)
    m = [list(r) for r in rows]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        piv = None
        for r in range(k, n):
            if not m[r][k].is_zero():
                piv = r
                break
        if piv is None:
            return ring.zero()
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pk = m[k][k]
        for i in range(k + 1, n):
            mi = m[i]
            mik = mi[k]
            if mik.is_zero():
                for j in range(k + 1, n):
                    if not mi[j].is_zero():
                        mi[j] = divexact(pk * mi[j], prev)
            else:
                mk = m[k]
                for j in range(k + 1, n):
                    mi[j] = divexact(pk * mi[j] - mik * mk[j], prev)
            mi[k] = ring.zero()
        prev = pk
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


# -- interpolation ----------------------------------------------------------------

def _solve_dense(matrix: list[list[Value]], rhs: list[Value], fld: Field) -> Optional[list[Value]]:
    """Gaussian elimination over a field; None if singular."""
    n = len(matrix)
    m = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for k in range(n):
        piv = None
        for r in range(k, n):
            if not fld.is_zero(m[r][k]):
                piv = r
                break
        if piv is None:
            return None
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
        inv = fld.inv(m[k][k])
        m[k] = [fld.mul(x, inv) for x in m[k]]
        for r in range(n):
            if r != k and not fld.is_zero(m[r][k]):
                f = m[r][k]
                m[r] = [fld.sub(a, fld.mul(f, b)) for a, b in zip(m[r], m[k])]
    return [m[i][n] for i in range(n)]


def interpolate(evaluations: Sequence[tuple[Sequence, Value]], bound: int,
                ring: Ring) -> Polynomial:
    """Unique polynomial of total degree <= bound matching the evaluations.

    Solves the dense monomial system from the first len(monomials) samples and
    verifies the remainder.  Degenerate point sets and inconsistent data raise
    DegeneracyError with a machine-readable code.
    """
    fld = ring.field
    monos = monomials_up_to_degree(ring.nvars, bound)
    k = len(monos)
    if len(evaluations) < k:
        raise DegeneracyError("interpolation-underdetermined",
                              f"need {k} samples, got {len(evaluations)}")
    pts = [[fld.coerce(x) for x in pt] for pt, _ in evaluations]
    vals = [fld.coerce(v) for _, v in evaluations]

    def mono_at(pt, m):
        v = fld.one()
        for i, e in enumerate(m):
            if e:
                v = fld.mul(v, fld.pw(pt[i], e))
        return v

    matrix = [[mono_at(pts[i], m) for m in monos] for i in range(k)]
    sol = _solve_dense(matrix, vals[:k], fld)
    if sol is None:
        raise DegeneracyError("interpolation-singular", "degenerate sample points")
    p = Polynomial(ring, {m: c for m, c in zip(monos, sol) if not fld.is_zero(c)})
    for pt, v in zip(pts[k:], vals[k:]):
        if p.evaluate(pt) != v:
            raise DegeneracyError("interpolation-inconsistent",
                                  "extra samples do not match the interpolant")
    return p


def interpolate_oracle(oracle: Callable[[Sequence[Value]], Value], bound: int,
                       ring: Ring, rng: Random, extra: int = 2,
                       retries: int = 5) -> Polynomial:
    """Interpolate from a black-box evaluator at seeded random points."""
    last = None
    for _ in range(retries):
        monos_needed = len(monomials_up_to_degree(ring.nvars, bound)) + extra
        pts = []
        seen = set()
        while len(pts) < monos_needed:
            pt = tuple(random_element(ring.field, rng) for _ in range(ring.nvars))
            if pt not in seen:
                seen.add(pt)
                pts.append(pt)
        try:
            return interpolate([(pt, oracle(pt)) for pt in pts], bound, ring)
        except DegeneracyError as exc:
            last = exc
    raise last  # type: ignore[misc]


# -- text grammar -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(x\d+)|([a-wyz]|x(?![\d]))|(\^)|(\*)|(/)|(\+)|(-))")


def default_aliases(nvars: int) -> dict[str, int]:
    return {"x": 0, "y": 1, "z": 2} if nvars <= 3 else {}


def parse_polynomial(text: str, ring: Ring,
                     aliases: Optional[dict[str, int]] = None) -> Polynomial:
    """Parse the +/- term grammar: optional rational coefficient, '*'-joined
    power products, '^' exponents, '/'-division by integer atoms."""
    if aliases is None:
        aliases = default_aliases(ring.nvars)
    fld = ring.field
    s = text.strip()
    if not s:
        raise InvalidInputError("empty polynomial text")
    pos = 0
    tokens: list[tuple[str, str]] = []
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise InvalidInputError(f"bad character at {pos} in {text!r}")
        pos = m.end()
        num, xvar, alias, caret, star, slash, plus, minus = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif xvar is not None:
            tokens.append(("var", xvar))
        elif alias is not None:
            tokens.append(("alias", alias))
        elif caret:
            tokens.append(("^", "^"))
        elif star:
            tokens.append(("*", "*"))
        elif slash:
            tokens.append(("/", "/"))
        elif plus:
            tokens.append(("+", "+"))
        else:
            tokens.append(("-", "-"))

    def var_index(tok) -> int:
        kind, val = tok
        if kind == "var":
            idx = int(val[1:])
        else:
            if val not in aliases:
                raise InvalidInputError(f"unknown variable {val!r}")
            idx = aliases[val]
        if idx >= ring.nvars:
            raise InvalidInputError(f"variable index {idx} out of range (nvars={ring.nvars})")
        return idx

    total = ring.zero()
    i = 0
    nt = len(tokens)
    while i < nt:
        sign = 1
        while i < nt and tokens[i][0] in "+-":
            if tokens[i][0] == "-":
                sign = -sign
            i += 1
        if i >= nt:
            raise InvalidInputError(f"dangling sign in {text!r}")
        coeff = Fraction(sign)
        mono = [0] * ring.nvars
        expect_atom = True
        divide_next = False
        saw_atom = False
        while i < nt:
            kind, val = tokens[i]
            if kind in "+-" and not expect_atom:
                break
            if kind == "num":
                if not expect_atom:
                    raise InvalidInputError(f"unexpected number in {text!r}")
                n = int(val)
                if divide_next:
                    if n == 0:
                        raise InvalidInputError("division by zero in polynomial text")
                    coeff /= n
                else:
                    coeff *= n
                i += 1
                saw_atom = True
                expect_atom = False
                divide_next = False
            elif kind in ("var", "alias"):
                if not expect_atom:
                    raise InvalidInputError(f"missing '*' before variable in {text!r}")
                if divide_next:
                    raise InvalidInputError("division by a variable is not in the grammar")
                idx = var_index(tokens[i])
                i += 1
                e = 1
                if i < nt and tokens[i][0] == "^":
                    i += 1
                    if i >= nt or tokens[i][0] != "num":
                        raise InvalidInputError(f"'^' needs an integer exponent in {text!r}")
                    e = int(tokens[i][1])
                    i += 1
                mono[idx] += e
                saw_atom = True
                expect_atom = False
                divide_next = False
            elif kind == "*":
                if expect_atom:
                    raise InvalidInputError(f"misplaced '*' in {text!r}")
                expect_atom = True
                i += 1
            elif kind == "/":
                if expect_atom:
                    raise InvalidInputError(f"misplaced '/' in {text!r}")
                expect_atom = True
                divide_next = True
                i += 1
            else:
                break
        if not saw_atom:
            raise InvalidInputError(f"empty term in {text!r}")
        if expect_atom:
            raise InvalidInputError(f"dangling operator in {text!r}")
        c = fld.coerce(coeff)
        if not fld.is_zero(c):
            total = total + Polynomial(ring, {tuple(mono): c})
    return total


def _format_coeff(c: Value) -> str:
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def format_polynomial(p: Polynomial) -> str:
    """Canonical text form: graded-lex descending, compact (no spaces)."""
    if p.is_zero():
        return "0"
    fld = p.ring.field
    rational = isinstance(fld, RationalField)
    chunks = []
    for m, c in p.sorted_terms():
        parts = []
        for i, e in enumerate(m):
            if e == 1:
                parts.append(f"x{i}")
            elif e > 1:
                parts.append(f"x{i}^{e}")
        negative = rational and c < 0
        mag = -c if negative else c
        if not parts:
            body = _format_coeff(mag)
        elif (isinstance(mag, Fraction) and mag == 1) or (not rational and mag == 1):
            body = "*".join(parts)
        else:
            body = _format_coeff(mag) + "*" + "*".join(parts)
        if not chunks:
            chunks.append(("-" if negative else "") + body)
        else:
            chunks.append(("-" if negative else "+") + body)
    return "".join(chunks)
