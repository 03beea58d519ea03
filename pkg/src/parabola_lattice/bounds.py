"""Fejér kernel and the closed-form envelopes that measured quantities are divided by.

Every envelope uses natural logarithms, implied constants equal to 1 and
``o(1)`` terms equal to 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .arith import divisor_count, gcd, sigma, square_split

KOROLEV_CONSTANT = 3.9071
FEJER_FLOOR = 4 / math.pi**2


@dataclass(frozen=True)
class EnvelopeValue:
    value: float
    formula_id: str
    inputs: dict = field(default_factory=dict, compare=False)

    def __float__(self) -> float:
        return self.value


def _check_positive(value: float, formula_id: str, inputs: dict) -> EnvelopeValue:
    if not value > 0 or math.isinf(value):
        raise ValueError(f"{formula_id} is not positive and finite at {inputs}")
    return EnvelopeValue(value, formula_id, inputs)


def fejer(H: int, t):
    """F_H(t) = (1/H^2) (sin(pi H t) / sin(pi t))^2, equal to 1 at integers.

    ``t`` may be a float or a numpy array.
    """
    if H < 1:
        raise ValueError("H must be positive")
    u = np.asarray(t, dtype=np.float64)
    u = u - np.rint(u)
    den = np.sin(np.pi * u)
    at_integer = den == 0
    safe = np.where(at_integer, 1.0, den)
    val = (np.sin(np.pi * H * u) / safe) ** 2 / (H * H)
    val = np.where(at_integer, 1.0, val)
    return float(val) if val.ndim == 0 else val


def fejer_sum(H: int, t):
    """F_H(t) from its cosine expansion sum_{|h|<=H} (H-|h|)/H^2 e(ht)."""
    if H < 1:
        raise ValueError("H must be positive")
    u = np.asarray(t, dtype=np.float64)
    total = np.ones_like(u) * (1.0 / H)
    for h in range(1, H):
        total = total + 2.0 * (H - h) / (H * H) * np.cos(2 * np.pi * h * u)
    return float(total) if total.ndim == 0 else total


def fejer_degree(delta) -> int:
    """H = floor(1 / (2 delta)) for 0 < delta < 1/2."""
    delta = Fraction(delta)
    if not 0 < delta < Fraction(1, 2):
        raise ValueError("delta must lie in (0, 1/2)")
    return math.floor(1 / (2 * delta))


def _divisor_growth(a: int) -> float:
    # a^(2 / (sqrt(log a) log log a)) = exp(2 sqrt(log a) / log log a)
    la = math.log(a)
    return math.exp(2 * math.sqrt(la) / math.log(la))


def envelope_theorem1(a: int, b: int) -> EnvelopeValue:
    if a < 3:
        raise ValueError("envelope needs a >= 3 (log log a must be positive)")
    if b < 1:
        raise ValueError("b must be positive")
    value = math.sqrt(a) * math.log(a) + b / math.sqrt(a) * _divisor_growth(a)
    return _check_positive(value, "theorem1", {"a": a, "b": b})


def envelope_theorem2(a: int, b: int) -> EnvelopeValue:
    env = envelope_theorem1(a, b)
    return EnvelopeValue(env.value, "theorem2", env.inputs)


def _on_curve_term(a: int) -> int:
    return sigma(square_split(a).r)


def envelope_theorem3(a: int, delta) -> EnvelopeValue:
    delta = Fraction(delta)
    if a < 2:
        raise ValueError("envelope needs a >= 2")
    if not 0 <= delta < Fraction(1, 2):
        raise ValueError("delta must lie in [0, 1/2)")
    value = float(delta) * a * math.log(a) * divisor_count(a) + _on_curve_term(a)
    return _check_positive(value, "theorem3", {"a": a, "delta": str(delta)})


def envelope_theorem4(a: int, delta) -> EnvelopeValue:
    delta = Fraction(delta)
    if a < 2:
        raise ValueError("envelope needs a >= 2")
    if not 0 <= delta < Fraction(1, 2):
        raise ValueError("delta must lie in [0, 1/2)")
    loglog = math.log(math.log(3 * a))
    value = float(delta) * a * loglog * divisor_count(a) + _on_curve_term(a)
    return _check_positive(value, "theorem4", {"a": a, "delta": str(delta)})


def envelope_korolev(a: int) -> EnvelopeValue:
    if a < 1:
        raise ValueError("a must be positive")
    return EnvelopeValue(KOROLEV_CONSTANT * math.sqrt(a), "korolev", {"a": a})


def envelope_incomplete(h: int, a: int, b: int) -> EnvelopeValue:
    """(b / sqrt a) sqrt((a, h)) + sqrt(a / (a, h))."""
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    d = gcd(a, h % a) if h % a else a
    value = b / math.sqrt(a) * math.sqrt(d) + math.sqrt(a // d)
    return _check_positive(value, "incomplete", {"h": h, "a": a, "b": b})


def envelope_pv(q: int) -> EnvelopeValue:
    if q < 2:
        raise ValueError("Pólya–Vinogradov envelope needs q >= 2")
    return EnvelopeValue(math.sqrt(q) * math.log(q), "pv", {"q": q})


def envelope_grh(q: int) -> EnvelopeValue:
    if q < 1:
        raise ValueError("q must be positive")
    value = math.sqrt(q) * math.log(math.log(3 * q))
    return _check_positive(value, "grh", {"q": q})


def envelope_omega(a: int, eps: float) -> EnvelopeValue:
    """a^(1/2) exp((sqrt 2 - eps) sqrt(log a) / log log a); illustrative only."""
    if a < 3:
        raise ValueError("envelope needs a >= 3")
    if not 0 < eps < math.sqrt(2):
        raise ValueError("eps must lie in (0, sqrt 2)")
    la = math.log(a)
    value = math.sqrt(a) * math.exp((math.sqrt(2) - eps) * math.sqrt(la) / math.log(la))
    return _check_positive(value, "omega", {"a": a, "eps": eps})
