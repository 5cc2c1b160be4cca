"""Exact coefficient arithmetic: the rationals and odd prime fields.

Field objects carry the operations; values themselves stay plain
(`fractions.Fraction` over QQ, `int` in [0, p) over F_p) so inner loops do not
pay for a wrapper class.  Text form of a field is ``QQ`` or ``Fp:<prime>``.

Also home to the CRT / rational-reconstruction kernel used by the modular
resultant strategy.
"""

from __future__ import annotations

import math
from fractions import Fraction
from random import Random
from typing import Iterable, Optional, Union

from .errors import InvalidInputError

Value = Union[Fraction, int]

# Fixed working prime for modular runs (62-bit).  2**62 - 57.
DEFAULT_MODULAR_PRIME = 4611686018427387847

# Documented bounds for random_element over QQ: numerator in [-RAND_NUM_BOUND,
# RAND_NUM_BOUND], denominator in [1, RAND_DEN_BOUND] before reduction.
RAND_NUM_BOUND = 100
RAND_DEN_BOUND = 100

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24 with these bases."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class RationalField:
    """The field QQ.  Values are Fraction (lowest terms, positive denominator)."""

    kind = "rationals"
    characteristic: Optional[int] = None

    def spec(self) -> str:
        return "QQ"

    def coerce(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise InvalidInputError(f"cannot coerce {x!r} into QQ")

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in QQ")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by 0 in QQ")
        return a / b

    def pw(self, a, e: int):
        return a ** e

    def is_zero(self, a) -> bool:
        return a == 0

    def random(self, rng: Random) -> Fraction:
        return Fraction(rng.randint(-RAND_NUM_BOUND, RAND_NUM_BOUND),
                        rng.randint(1, RAND_DEN_BOUND))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """F_p for an odd prime p >= 3.  Values are int in [0, p)."""

    kind = "prime-field"

    def __init__(self, p: int):
        if not isinstance(p, int) or p < 3 or not is_prime(p):
            raise InvalidInputError(f"prime field modulus must be an odd prime >= 3, got {p}")
        self.p = p
        self.characteristic = p

    def spec(self) -> str:
        return f"Fp:{self.p}"

    def coerce(self, x) -> int:
        p = self.p
        if isinstance(x, int):
            return x % p
        if isinstance(x, Fraction):
            den = x.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
            return x.numerator * pow(den, p - 2, p) % p
        if isinstance(x, str):
            return self.coerce(Fraction(x))
        raise InvalidInputError(f"cannot coerce {x!r} into F_{p}")

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of 0 in F_{self.p}")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def pw(self, a, e: int):
        return pow(a, e, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def symmetric_lift(self, a: int) -> int:
        """Representative in (-p/2, p/2]."""
        a %= self.p
        return a if 2 * a <= self.p else a - self.p

    def random(self, rng: Random) -> int:
        return rng.randrange(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


Field = Union[RationalField, PrimeField]

QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(spec: str) -> Field:
    """Parse ``QQ`` or ``Fp:<prime>``."""
    s = spec.strip()
    if s == "QQ":
        return QQ
    if s.startswith("Fp:"):
        try:
            p = int(s[3:])
        except ValueError:
            raise InvalidInputError(f"bad prime in field spec {spec!r}")
        return PrimeField(p)
    raise InvalidInputError(f"unrecognized field spec {spec!r} (want 'QQ' or 'Fp:<prime>')")


def random_element(field: Field, rng: Random) -> Value:
    """Seeded random field element; bounds documented at module top for QQ."""
    return field.random(rng)


def crt_combine(residues: Iterable[tuple[int, int]]) -> tuple[int, int]:
    """Combine residue/modulus pairs; return (symmetric representative, modulus).

    Moduli must be pairwise coprime; duplicates are rejected.  The
    representative lies in (-M/2, M/2] for M the product of the moduli.
    """
    pairs = list(residues)
    if not pairs:
        raise InvalidInputError("crt_combine needs at least one residue")
    mods = [m for _, m in pairs]
    if len(set(mods)) != len(mods):
        raise InvalidInputError("duplicate moduli in crt_combine")
    for i in range(len(mods)):
        for j in range(i + 1, len(mods)):
            if math.gcd(mods[i], mods[j]) != 1:
                raise InvalidInputError(
                    f"moduli {mods[i]} and {mods[j]} are not coprime")
    x, m = 0, 1
    for (r, q) in pairs:
        if q < 2:
            raise InvalidInputError(f"modulus {q} < 2 in crt_combine")
        # solve x' = x mod m, x' = r mod q
        t = (r - x) * pow(m, -1, q) % q
        x += m * t
        m *= q
    x %= m
    if 2 * x > m:
        x -= m
    return x, m


def rational_reconstruct(value: int, modulus: int) -> Optional[Fraction]:
    """Recover a/b with |a|, b <= sqrt(modulus/2) from a residue, or None.

    Half-extended Euclid; the returned fraction satisfies a = b*value (mod m),
    gcd(b, m) = 1.
    """
    if modulus <= 1:
        raise InvalidInputError(f"modulus must exceed 1, got {modulus}")
    v = value % modulus
    bound_sq = modulus  # compare 2*r*r against modulus: |r| <= sqrt(m/2)
    r0, r1 = modulus, v
    t0, t1 = 0, 1
    while 2 * r1 * r1 >= bound_sq:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if r1 == 0:  # value was 0 mod m handled by loop? only if v==0
        return Fraction(0) if v == 0 else None
    if 2 * t1 * t1 >= bound_sq:
        return None
    if math.gcd(t1, modulus) != 1:
        return None
    if t1 < 0:
        r1, t1 = -r1, -t1
    if math.gcd(abs(r1), t1) != 1:
        return None
    return Fraction(r1, t1)


def internal_primes(start_below: int = 1 << 28):
    """Deterministic descending stream of primes below start_below.

    Used by the modular-interpolation strategy; 28-bit keeps int64 products safe
    in the vectorized kernel.
    """
    c = start_below - 1
    if c % 2 == 0:
        c -= 1
    while c > 3:
        if is_prime(c):
            yield c
        c -= 2
