"""Quadratic Gauss sums and the Dirichlet characters they decompose into.

Two independent routes are kept side by side: direct summation of
``e(h x^2 / a)`` (``incomplete_gauss`` / ``complete_gauss_brute`` and their
numpy batch forms) and the exact closed form (``complete_gauss_closed``).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .arith import gcd, is_square, jacobi

_UNIT_NAMES = {
    (0, 0): "0",
    (1, 0): "1",
    (-1, 0): "-1",
    (0, 1): "i",
    (0, -1): "-i",
    (1, 1): "(1+i)",
    (1, -1): "(1-i)",
    (-1, 1): "(-1+i)",
    (-1, -1): "(-1-i)",
}


@dataclass(frozen=True)
class AlgebraicGaussValue:
    """The exact number ``multiplier * (unit_re + i*unit_im) * sqrt(radicand)``."""

    multiplier: int
    radicand: int
    unit_re: int
    unit_im: int

    def __post_init__(self):
        if self.unit_re not in (-1, 0, 1) or self.unit_im not in (-1, 0, 1):
            raise ValueError("unit components must lie in {-1, 0, 1}")
        if self.multiplier < 0 or self.radicand < 1:
            raise ValueError("multiplier must be >= 0 and radicand >= 1")

    @property
    def is_zero(self) -> bool:
        return self.multiplier == 0 or (self.unit_re, self.unit_im) == (0, 0)

    def sqrt_radicand(self) -> float:
        root = math.isqrt(self.radicand)
        if root * root == self.radicand:
            return float(root)
        return math.sqrt(self.radicand)

    def to_complex(self) -> complex:
        scale = self.multiplier * self.sqrt_radicand()
        return complex(self.unit_re * scale, self.unit_im * scale)

    def __complex__(self) -> complex:
        return self.to_complex()

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        unit = _UNIT_NAMES[(self.unit_re, self.unit_im)]
        sign = ""
        if unit in ("1", "-1"):
            sign, unit = ("-" if unit == "-1" else ""), ""
        parts = [str(self.multiplier)] if self.multiplier != 1 else []
        if unit:
            parts.append(unit)
        parts.append(f"√{self.radicand}")
        return sign + "·".join(parts)


JACOBI_TOP = "jacobi_top"
BOTTOM_CHI0 = "jacobi_bottom_chi0"
BOTTOM_CHI1 = "jacobi_bottom_chi1"
CHARACTER_KINDS = (JACOBI_TOP, BOTTOM_CHI0, BOTTOM_CHI1)


@dataclass(frozen=True)
class CharacterSpec:
    """One of the characters met when summing complete Gauss sums over h.

    ``jacobi_top``: n -> (n | a1), a1 odd, modulus a1.
    ``jacobi_bottom_chi0`` / ``jacobi_bottom_chi1``: n -> chi(n) * (a1 | n)
    with chi the principal / nontrivial character mod 4, a1 even, modulus 4*a1.
    """

    kind: str
    a1: int

    def __post_init__(self):
        if self.kind not in CHARACTER_KINDS:
            raise ValueError(f"unknown character kind {self.kind!r}")
        if self.a1 < 1:
            raise ValueError("a1 must be positive")
        if (self.kind == JACOBI_TOP) != (self.a1 % 2 == 1):
            raise ValueError(f"{self.kind} is incompatible with a1 = {self.a1}")

    @property
    def modulus_bound(self) -> int:
        return self.a1 if self.kind == JACOBI_TOP else 4 * self.a1

    def __str__(self) -> str:
        return f"{self.kind}({self.a1})"


def characters_for(a1: int) -> list[CharacterSpec]:
    """The characters attached to modulus a1 (one if odd, two if even)."""
    if a1 % 2:
        return [CharacterSpec(JACOBI_TOP, a1)]
    return [CharacterSpec(BOTTOM_CHI0, a1), CharacterSpec(BOTTOM_CHI1, a1)]


def chi4(n: int) -> int:
    """The nontrivial character mod 4."""
    return (0, 1, 0, -1)[n % 4]


def chi_eval(spec: CharacterSpec, n: int) -> int:
    if spec.kind == JACOBI_TOP:
        return jacobi(n, spec.a1)
    n %= spec.modulus_bound
    if n % 2 == 0:
        return 0
    value = jacobi(spec.a1, n)
    if spec.kind == BOTTOM_CHI1:
        value *= chi4(n)
    return value


def character_period(spec: CharacterSpec) -> list[int]:
    """Values chi(1), ..., chi(q) for q the modulus bound."""
    return [chi_eval(spec, n) for n in range(1, spec.modulus_bound + 1)]


def is_principal(spec: CharacterSpec) -> bool:
    return all(v in (0, 1) for v in character_period(spec))


def char_partial_sum(spec: CharacterSpec, M: int, N: int) -> int:
    """Sum of chi(n) over M < n <= M + N."""
    if N < 1:
        raise ValueError("N must be positive")
    q = spec.modulus_bound
    period = character_period(spec)
    full, rest = divmod(N, q)
    total = full * sum(period)
    start = M % q  # chi(M + k) = period[(M + k - 1) % q]
    for k in range(1, rest + 1):
        total += period[(start + k - 1) % q]
    return total


def e_frac(numerator: int, denominator: int) -> complex:
    """e(numerator / denominator) with the argument reduced mod 1 first."""
    if denominator < 1:
        raise ValueError("denominator must be positive")
    k = numerator % denominator
    if k == 0:
        return 1 + 0j
    if 4 * k == denominator:
        return 1j
    if 2 * k == denominator:
        return -1 + 0j
    if 4 * k == 3 * denominator:
        return -1j
    return cmath.exp(2j * math.pi * k / denominator)


def incomplete_gauss(h: int, a: int, b: int) -> complex:
    """S(h, a, b): sum over 1 <= x <= b of e(h x^2 / a), term by term."""
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    total = 0j
    hr = h % a
    for x in range(1, b + 1):
        total += e_frac(hr * (x * x % a), a)
    return total


def complete_gauss_brute(h: int, a: int) -> complex:
    return incomplete_gauss(h, a, a)


def _roots_of_unity(a: int) -> np.ndarray:
    k = np.arange(a)
    return np.exp(2j * np.pi * k / a)


def complete_gauss_table(a: int, chunk: int = 1 << 22) -> np.ndarray:
    """Brute-force S(h, a) for every h in [0, a), as a complex array.

    Terms are grouped by the residue x^2 mod a (a multiset count), which is
    still direct summation of the a terms of each sum.
    """
    x = np.arange(1, a + 1, dtype=np.int64)
    counts = np.bincount(x * x % a, minlength=a)
    residues = np.nonzero(counts)[0].astype(np.int64)
    weights = counts[residues].astype(np.float64)
    roots = _roots_of_unity(a)
    out = np.empty(a, dtype=np.complex128)
    rows = max(1, chunk // max(1, len(residues)))
    for lo in range(0, a, rows):
        hs = np.arange(lo, min(a, lo + rows), dtype=np.int64)
        out[lo : lo + len(hs)] = roots[hs[:, None] * residues[None, :] % a] @ weights
    return out


def incomplete_gauss_prefix(hs, a: int) -> np.ndarray:
    """Brute-force S(h, a, b) for the given h values and every b in [1, a].

    Row i, column b-1 holds S(hs[i], a, b).
    """
    hs = np.asarray(hs, dtype=np.int64) % a
    x = np.arange(1, a + 1, dtype=np.int64)
    sq = x * x % a
    roots = _roots_of_unity(a)
    return np.cumsum(roots[hs[:, None] * sq[None, :] % a], axis=1)


def epsilon(m: int) -> complex:
    if m % 2 == 0:
        raise ValueError(f"epsilon needs odd m, got {m}")
    return 1 + 0j if m % 4 == 1 else 1j


def epsilon_inv_decomposition_check(m: int) -> bool:
    """Does 1/eps_m == (1-i)/2 chi0(m) + (1+i)/2 chi1(m) hold exactly?"""
    inverse = 1 / epsilon(m)
    chi0 = m % 2
    rhs = (1 - 1j) / 2 * chi0 + (1 + 1j) / 2 * chi4(m)
    return inverse == rhs


def complete_gauss_closed(h: int, a: int) -> AlgebraicGaussValue:
    """Exact S(h, a) from the three-case evaluation after removing (h, a)."""
    if a < 1:
        raise ValueError("a must be positive")
    hr = h % a
    d = a if hr == 0 else gcd(hr, a)
    h1, a1 = hr // d, a // d
    if a1 == 1:
        return AlgebraicGaussValue(d, 1, 1, 0)
    if a1 % 4 == 2:
        return AlgebraicGaussValue(d, a1, 0, 0)
    if a1 % 2 == 1:
        sym = jacobi(h1, a1)
        if a1 % 4 == 1:
            return AlgebraicGaussValue(d, a1, sym, 0)
        return AlgebraicGaussValue(d, a1, 0, sym)
    if h1 % 2 == 0 or gcd(h1, a1) != 1:
        raise ValueError(f"reduced pair ({h1}, {a1}) is not coprime with odd h")
    sym = jacobi(a1, h1)
    # (1+i) / eps_h: 1+i when h = 1 mod 4, (1+i)(-i) = 1-i when h = 3 mod 4
    if h1 % 4 == 1:
        return AlgebraicGaussValue(d, a1, sym, sym)
    return AlgebraicGaussValue(d, a1, sym, -sym)


def gauss_partial_sum(N: int, a1: int) -> complex:
    """Sum of S(h, a1) over 1 <= h <= N with (h, a1) = 1, via the closed form."""
    if N < 1 or a1 < 1:
        raise ValueError("N and a1 must be positive")
    total = 0j
    for h in range(1, N + 1):
        if math.gcd(h, a1) == 1:
            total += complete_gauss_closed(h, a1).to_complex()
    return total


def gauss_partial_sums(N: int, a1: int) -> list[complex]:
    """Running values of :func:`gauss_partial_sum` for 1..N."""
    out = []
    total = 0j
    for h in range(1, N + 1):
        if math.gcd(h, a1) == 1:
            total += complete_gauss_closed(h, a1).to_complex()
        out.append(total)
    return out


def lemma4_scale(N: int, a1: int) -> float:
    """Reference size of S(N): N sqrt(a1) for square a1, a1 log a1 otherwise."""
    if is_square(a1):
        return N * math.sqrt(a1)
    return a1 * math.log(a1)
