"""Lattice points under and near the dilated parabola y = x^2 / a.

All thresholds are exact: ``delta`` is a :class:`fractions.Fraction` and the
closeness test ``||x^2/a|| <= delta`` is decided on the integer residue
``x^2 mod a`` against ``J = floor(delta * a)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .arith import crt_product, divisor_count, factor, square_split

BRUTE = "brute"
FAST = "fast"

# Largest modulus whose square-residue period table is stored.
TABLE_CAP = 10**7


def as_fraction(value) -> Fraction:
    """Exact rational from an int, Fraction, or decimal/fraction string.

    Floats are refused: they carry binary rounding into the threshold.
    """
    if isinstance(value, float):
        raise TypeError("pass delta as a Fraction or a string, not a float")
    return Fraction(value)


@dataclass(frozen=True)
class CountQuery:
    a: int
    b: int
    delta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "delta", as_fraction(self.delta))
        if self.a < 1 or self.b < 1:
            raise ValueError("a and b must be positive")
        if not 0 <= self.delta < Fraction(1, 2):
            raise ValueError(f"delta must lie in [0, 1/2), got {self.delta}")

    @property
    def J(self) -> int:
        return self.delta.numerator * self.a // self.delta.denominator


@dataclass(frozen=True)
class CountResult:
    count: int
    method: str
    J_used: int


# Floor sums

def floor_sum_brute(a: int, b: int) -> int:
    """Sum of floor(x^2 / a) for 1 <= x <= b."""
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    return sum(x * x // a for x in range(1, b + 1))


@lru_cache(maxsize=64)
def _square_residue_prefix(a: int) -> tuple[int, ...]:
    """prefix[k] = sum of (x^2 mod a) for 1 <= x <= k, k in [0, a]."""
    prefix = [0] * (a + 1)
    acc = 0
    for x in range(1, a + 1):
        acc += x * x % a
        prefix[x] = acc
    return tuple(prefix)


def square_residue_sum(a: int, b: int, table_cap: int = TABLE_CAP) -> int:
    """R(a, b) = sum of (x^2 mod a) over 1 <= x <= b, using one period."""
    full, rest = divmod(b, a)
    if a <= table_cap:
        prefix = _square_residue_prefix(a)
        return full * prefix[a] + prefix[rest]
    # Streamed: no table stored, two passes over one period at most.
    period = sum(x * x % a for x in range(1, a + 1)) if full else 0
    head = sum(x * x % a for x in range(1, rest + 1))
    return full * period + head


def floor_sum_fast(a: int, b: int, table_cap: int = TABLE_CAP) -> int:
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    squares = b * (b + 1) * (2 * b + 1) // 6
    return (squares - square_residue_sum(a, b, table_cap)) // a


floor_sum = floor_sum_fast


def smooth_main_term(a: int, b: int) -> Fraction:
    """Sum of (x^2/a - 1/2) for 1 <= x <= b, exactly."""
    return Fraction(b * (b + 1) * (2 * b + 1), 6 * a) - Fraction(b, 2)


def frac_discrepancy(a: int, b: int) -> Fraction:
    """Sum of (1/2 - {x^2/a}) for 1 <= x <= b, exactly."""
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    return Fraction(b, 2) - Fraction(square_residue_sum(a, b), a)


# Counting near the curve

def _near_mask_count(a: int, b: int, J: int) -> int:
    if a < 2**31:
        x = np.arange(1, b + 1, dtype=np.int64) % a
        r = x * x % a
        return int(np.count_nonzero((r <= J) | (r >= a - J)))
    n = 0
    for x in range(1, b + 1):
        r = x * x % a
        if r <= J or r >= a - J:
            n += 1
    return n


def count_near_brute(q: CountQuery) -> CountResult:
    """A(a, b, delta) by testing every x <= b."""
    J = q.J
    return CountResult(_near_mask_count(q.a, q.b, J), BRUTE, J)


def _hensel_odd(u: int, p: int, m: int) -> list[int]:
    """Square roots of the unit u modulo p**m, p odd."""
    u0 = u % p
    if pow(u0, (p - 1) // 2, p) != 1:
        return []
    y = tonelli_shanks(u0, p)
    mod = p
    while mod < p**m:
        mod = min(mod * mod, p**m)
        # Newton step: y <- y - (y^2 - u) / (2y)
        y = (y - (y * y - u) * pow(2 * y, -1, mod)) % mod
    return sorted({y, (-y) % mod})


def _roots_unit_pow2(u: int, m: int) -> list[int]:
    """Square roots of the odd u modulo 2**m."""
    if m == 1:
        return [1]
    if m == 2:
        return [1, 3] if u % 4 == 1 else []
    if u % 8 != 1:
        return []
    y = 1
    for e in range(3, m):
        # y^2 = u mod 2^e; fix the next bit so that y^2 = u mod 2^(e+1)
        if (y * y - u) % (1 << (e + 1)):
            y += 1 << (e - 1)
    mod = 1 << m
    half = mod >> 1
    return sorted({y % mod, -y % mod, (y + half) % mod, (-y + half) % mod})


def tonelli_shanks(n: int, p: int) -> int:
    """One square root of the quadratic residue n modulo the odd prime p."""
    n %= p
    if n == 0:
        return 0
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    c = pow(z, q, p)
    r = pow(n, (q + 1) // 2, p)
    t = pow(n, q, p)
    m = s
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        r = r * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return r


@lru_cache(maxsize=1 << 18)
def roots_prime_power(j: int, p: int, k: int) -> tuple[int, ...]:
    """All x in [0, p**k) with x^2 = j (mod p**k)."""
    pk = p**k
    j %= pk
    if j == 0:
        step = p ** ((k + 1) // 2)
        return tuple(range(0, pk, step))
    v = 0
    while j % p == 0:
        j //= p
        v += 1
    if v % 2:
        return ()
    w = v // 2
    m = k - v  # unit part lives modulo p^m
    base = _roots_unit_pow2(j, m) if p == 2 else _hensel_odd(j, p, m)
    if not base:
        return ()
    pm, pw = p**m, p**w
    # y is only pinned down mod p^m, but x = p^w y is read mod p^k,
    # so y ranges over its p^w lifts modulo p^(m+w).
    out = {pw * (y + t * pm) % pk for y in base for t in range(pw)}
    return tuple(sorted(out))


def roots_mod(j: int, a: int) -> list[int]:
    """Sorted residues x in [0, a) with x^2 = j (mod a)."""
    if a < 1:
        raise ValueError("a must be positive")
    if a == 1:
        return [0]
    fac = factor(a).factors
    sets = [list(roots_prime_power(j, p, e)) for p, e in fac]
    return crt_product(sets, [p**e for p, e in fac])


def count_near_fast(q: CountQuery) -> CountResult:
    """A(a, b, delta) by summing residue classes of the roots of x^2 = j."""
    a, b, J = q.a, q.b, q.J
    if 2 * J + 1 >= a:
        return CountResult(b, FAST, J)
    count = 0
    for j in range(-J, J + 1):
        for x0 in roots_mod(j, a):
            rep = x0 if x0 else a
            if rep <= b:
                count += (b - rep) // a + 1
    return CountResult(count, FAST, J)


def choose_method(q: CountQuery) -> str:
    J = q.J
    if 2 * J + 1 >= q.a:
        return FAST
    cost = (2 * J + 1) * divisor_count(q.a) * math.log(max(q.a, 2))
    return FAST if cost < q.b else BRUTE


def count_near(a: int, b: int, delta, method: str | None = None) -> CountResult:
    q = CountQuery(a, b, as_fraction(delta))
    method = method or choose_method(q)
    if method == FAST:
        return count_near_fast(q)
    if method == BRUTE:
        return count_near_brute(q)
    raise ValueError(f"unknown method {method!r}")


def on_curve_points(a: int) -> list[tuple[int, int]]:
    """The lattice points (r s l, s l^2), l = 1..r, lying on y = x^2/a."""
    sp = square_split(a)
    return [(sp.r * sp.s * l, sp.s * l * l) for l in range(1, sp.r + 1)]
