"""Integer substrate: factorization, gcd, Jacobi symbol and divisor functions.

Everything divisor-indexed is driven by :func:`factor`, so no routine here
scans ``1..n``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

TRIAL_LIMIT = 10**6
MAX_INPUT = 2**63 - 1

# Deterministic Miller-Rabin witnesses for n < 3.3e24 (covers 64 bits).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        prev = 1
        for p, e in self.factors:
            if p <= prev or e < 1:
                raise ValueError(f"malformed factor list {self.factors!r}")
            prev = p
            prod *= p**e
        if prod != self.n:
            raise ValueError(f"factors multiply to {prod}, not {self.n}")

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def divisors(self) -> list[int]:
        """All positive divisors, ascending."""
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**k for d in divs for k in range(e + 1)]
        return sorted(divs)


@dataclass(frozen=True)
class SquareSplit:
    a: int
    r: int
    s: int


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    sieve = bytearray([1]) * (TRIAL_LIMIT + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(TRIAL_LIMIT) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, TRIAL_LIMIT + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 2**64."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in _MR_BASES:
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, rng: random.Random) -> int:
    """Return a nontrivial factor of the odd composite n."""
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split_large(n: int, out: dict[int, int], rng: random.Random) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _split_large(r, out, rng)
        _split_large(r, out, rng)
        return
    d = _pollard_brent(n, rng)
    _split_large(d, out, rng)
    _split_large(n // d, out, rng)


@lru_cache(maxsize=65536)
def factor(n: int) -> Factorization:
    """Prime-power decomposition of ``1 <= n <= 2**63 - 1``."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"factor expects a positive integer, got {n!r}")
    if n > MAX_INPUT:
        raise ValueError(f"{n} exceeds the 63-bit input range")
    found: dict[int, int] = {}
    m = n
    for p in _small_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
    if m > 1:
        if m <= TRIAL_LIMIT**2 or is_prime(m):
            # Below 10^12 any cofactor that survived trial division is prime.
            found[m] = found.get(m, 0) + 1
        else:
            # Fixed seed keeps the result (and its timing) reproducible.
            _split_large(m, found, random.Random(m))
    return Factorization(n, tuple(sorted(found.items())))


def gcd(m: int, n: int) -> int:
    if m < 0 or n < 0:
        raise ValueError("gcd expects nonnegative integers")
    if m == 0 and n == 0:
        raise ValueError("gcd(0, 0) is undefined")
    return math.gcd(m, n)


def jacobi(h: int, m: int) -> int:
    """Jacobi symbol (h|m) for odd positive m."""
    if m < 1 or m % 2 == 0:
        raise ValueError(f"Jacobi symbol needs an odd positive modulus, got {m}")
    h %= m
    result = 1
    while h:
        while h % 2 == 0:
            h //= 2
            if m % 8 in (3, 5):
                result = -result
        h, m = m, h
        if h % 4 == 3 and m % 4 == 3:
            result = -result
        h %= m
    return result if m == 1 else 0


def divisor_count(n: int) -> int:
    return math.prod(e + 1 for _, e in factor(n).factors)


def sigma(n: int) -> int:
    """Sum of the positive divisors of n."""
    return math.prod((p ** (e + 1) - 1) // (p - 1) for p, e in factor(n).factors)


def sigma_half_inv(n: int) -> float:
    """Sum of d**-0.5 over divisors d of n, accumulated in ascending order."""
    total = 0.0
    for d in factor(n).divisors():
        total += 1.0 / math.sqrt(d)
    return total


def square_split(a: int) -> SquareSplit:
    """Write a = r**2 * s with s squarefree."""
    r = s = 1
    for p, e in factor(a).factors:
        r *= p ** (e // 2)
        s *= p ** (e % 2)
    return SquareSplit(a, r, s)


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """Combine x = r1 (mod m1), x = r2 (mod m2) for coprime moduli."""
    t = (r2 - r1) * pow(m1, -1, m2) % m2
    return r1 + m1 * t


def crt_product(residue_sets: list[list[int]], moduli: list[int]) -> list[int]:
    """All CRT combinations of per-modulus residue choices, sorted."""
    if any(not rs for rs in residue_sets):
        return []
    n = math.prod(moduli)
    # Precompute the idempotent basis: e_i = 1 mod m_i, 0 mod m_j.
    basis = []
    for m in moduli:
        rest = n // m
        basis.append(rest * pow(rest, -1, m) % n)
    out = []
    for choice in product(*residue_sets):
        out.append(sum(c * e for c, e in zip(choice, basis)) % n)
    out.sort()
    return out
