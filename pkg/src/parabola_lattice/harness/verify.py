"""Checks of the proven ingredients: Gauss sums, Korolev, Pólya–Vinogradov, Fejér.

Violations of proven statements raise :class:`VerificationError`; the
asymptotic quantities (Lemma-4 constants, incomplete-sum ratios) are only
recorded.
"""

from __future__ import annotations

import math
import random
import time
from fractions import Fraction

import numpy as np

from .. import bounds, expsums, lattice
from ..arith import is_square, jacobi, square_split
from .config import SweepConfig, fmt_float
from .report import Report, VerificationError

CLOSED_TOL = 1e-6
FEJER_GRID = 10_000
FEJER_SLACK = 1e-12
LEMMA4_CONSTANT = 5.0
ORACLE_DELTAS = ("0", "1/a2", "1/2a", "1/a", "1/100", "1/10", "49/100")
# Bounds the cumulative-sum block held in memory (complex entries).
_BLOCK = 1 << 21


def _gauss_row(a: int):
    brute = expsums.complete_gauss_table(a)
    closed = np.array([expsums.complete_gauss_closed(h, a).to_complex() for h in range(a)])
    err = float(np.max(np.abs(brute - closed)))
    tol = CLOSED_TOL * (1 + math.sqrt(a))
    if not err < tol:
        h = int(np.argmax(np.abs(brute - closed)))
        raise VerificationError(f"closed form off by {err} at h={h}, a={a}")

    kor_env = bounds.KOROLEV_CONSTANT * math.sqrt(a)
    kor_best, kor_h, kor_b = 0.0, 0, 0
    inc_best = 0.0
    hs = np.arange(1, a, dtype=np.int64)
    if len(hs):
        g = np.gcd(hs, a)
        bvals = np.arange(1, a + 1, dtype=np.float64)
        rows = max(1, _BLOCK // a)
        for lo in range(0, len(hs), rows):
            hb, gb = hs[lo:lo + rows], g[lo:lo + rows]
            mags = np.abs(expsums.incomplete_gauss_prefix(hb, a))
            env = (bvals[None, :] / math.sqrt(a) * np.sqrt(gb)[:, None]
                   + np.sqrt(a / gb)[:, None])
            inc_best = max(inc_best, float(np.max(mags / env)))
            cop = mags[gb == 1]
            if cop.size:
                i, j = np.unravel_index(int(np.argmax(cop)), cop.shape)
                ratio = float(cop[i, j]) / kor_env
                if ratio > kor_best:
                    kor_best, kor_h, kor_b = ratio, int(hb[gb == 1][i]), int(j) + 1
    if kor_best >= 1:
        raise VerificationError(
            f"Korolev bound fails at h={kor_h}, a={a}, b={kor_b}: ratio {kor_best}")
    return (str(a), fmt_float(err), fmt_float(err / tol), fmt_float(kor_best),
            str(kor_h), str(kor_b), fmt_float(inc_best))


def verify_gauss(cfg: SweepConfig) -> Report:
    """Closed vs brute complete sums, Korolev at every 1 <= b <= a, incomplete envelope."""
    start = time.perf_counter()
    rows = [_gauss_row(a) for a in cfg.a_values()]
    return Report(
        kind="gauss",
        config=cfg.echo(),
        columns=("a", "closed_max_err", "closed_err_over_tol", "korolev_ratio",
                 "korolev_h", "korolev_b", "incomplete_ratio"),
        rows=rows,
        max_columns=("closed_err_over_tol", "korolev_ratio", "incomplete_ratio"),
        runtime=time.perf_counter() - start,
    )


def _bottom_symbols(a1: int) -> np.ndarray:
    """(a1 | n) for odd n and 0 for even n, n = 1..4*a1."""
    q = 4 * a1
    vals = np.zeros(q, dtype=np.int64)
    for n in range(1, q + 1, 2):
        vals[n - 1] = jacobi(a1, n)
    return vals


def _character_periods(a1: int):
    """(spec, chi(1..q)) pairs for a1, built without re-evaluating shared symbols."""
    if a1 % 2:
        spec = expsums.CharacterSpec(expsums.JACOBI_TOP, a1)
        vals = np.array([jacobi(n, a1) for n in range(1, a1 + 1)], dtype=np.int64)
        return [(spec, vals)]
    base = _bottom_symbols(a1)
    n = np.arange(1, 4 * a1 + 1)
    chi1 = np.where(n % 4 == 1, 1, np.where(n % 4 == 3, -1, 0))
    return [(expsums.CharacterSpec(expsums.BOTTOM_CHI0, a1), base),
            (expsums.CharacterSpec(expsums.BOTTOM_CHI1, a1), base * chi1)]


def verify_pv(cfg: SweepConfig, periods: int = 3) -> Report:
    """Scan partial sums up to ``periods`` * q for every non-principal character."""
    start = time.perf_counter()
    rows, skipped = [], []
    for a1 in cfg.a_values():
        if a1 == 1:
            skipped.append({"a1": 1, "reason": "principal"})
            continue
        for spec, vals in _character_periods(a1):
            if np.all((vals == 0) | (vals == 1)):
                skipped.append({"a1": a1, "kind": spec.kind, "reason": "principal"})
                continue
            q = spec.modulus_bound
            partial = np.cumsum(np.tile(vals, periods))
            peak = int(np.max(np.abs(partial)))
            pv = peak / bounds.envelope_pv(q).value
            grh = peak / bounds.envelope_grh(q).value
            if q >= 3 and pv > 1:
                raise VerificationError(f"Pólya–Vinogradov fails for {spec}: ratio {pv}")
            rows.append((str(a1), spec.kind, str(q), str(peak), fmt_float(pv), fmt_float(grh)))
    return Report(
        kind="pv",
        config=cfg.echo(),
        columns=("a1", "kind", "q", "max_abs_partial", "pv_ratio", "grh_ratio"),
        rows=rows,
        key_columns=("a1", "kind"),
        max_columns=("pv_ratio", "grh_ratio"),
        skipped=skipped,
        runtime=time.perf_counter() - start,
    )


def verify_fejer(cfg: SweepConfig, grid: int = FEJER_GRID) -> Report:
    """Minimum of F_H on ||t|| <= delta and on [0, 1) for H = floor(1/(2 delta))."""
    start = time.perf_counter()
    rows, skipped = [], []
    for delta in cfg.fixed_deltas():
        if delta == 0:
            skipped.append({"delta": "0", "reason": "H undefined at delta = 0"})
            continue
        H = bounds.fejer_degree(delta)
        near = np.linspace(-float(delta), float(delta), grid)
        min_near = float(np.min(bounds.fejer(H, near)))
        min_all = float(np.min(bounds.fejer(H, np.arange(grid) / grid)))
        if min_near < bounds.FEJER_FLOOR - FEJER_SLACK:
            raise VerificationError(f"Fejér floor fails at delta={delta}, H={H}: {min_near}")
        if min_all < 0:
            raise VerificationError(f"Fejér kernel negative at H={H}: {min_all}")
        rows.append((str(delta.numerator), str(delta.denominator), str(H),
                     fmt_float(min_near), fmt_float(min_near - bounds.FEJER_FLOOR),
                     fmt_float(min_all)))
    return Report(
        kind="fejer",
        config=cfg.echo(),
        columns=("delta_num", "delta_den", "H", "min_near", "margin", "min_all"),
        rows=rows,
        key_columns=("delta_num", "delta_den", "H"),
        max_columns=(),
        min_columns=("min_near", "margin", "min_all"),
        skipped=skipped,
        runtime=time.perf_counter() - start,
    )


def verify_lemma4(cfg: SweepConfig, constant: float = LEMMA4_CONSTANT) -> Report:
    """Observed constants in |S(N)| << N sqrt(a1) (squares) or a1 log a1 (others)."""
    start = time.perf_counter()
    rows, skipped = [], []
    for a1 in cfg.a_values():
        square = is_square(a1)
        sums = expsums.gauss_partial_sums(4 * a1, a1)
        worst = 0.0
        for N, s in enumerate(sums, 1):
            worst = max(worst, abs(s) / expsums.lemma4_scale(N, a1))
        if worst > constant:
            raise VerificationError(f"Lemma 4 constant {worst} exceeds {constant} at a1={a1}")
        c_sq, c_ns = (fmt_float(worst), "NA") if square else ("NA", fmt_float(worst))
        rows.append((str(a1), "square" if square else "nonsquare", c_sq, c_ns))
    return Report(
        kind="lemma4",
        config=cfg.echo(),
        columns=("a1", "class", "c_square", "c_nonsquare"),
        rows=rows,
        key_columns=("a1",),
        max_columns=("c_square", "c_nonsquare"),
        threshold=constant,
        skipped=skipped,
        runtime=time.perf_counter() - start,
    )


def oracle_delta(token: str, a: int) -> Fraction:
    per_a = {"1/a2": Fraction(1, a * a), "1/2a": Fraction(1, 2 * a), "1/a": Fraction(1, a)}
    return per_a.get(token) or Fraction(token)


def oracle_queries(n: int, a_max: int, seed: int):
    """Seeded random (a, b, delta) queries with b <= 10a."""
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        a = rng.randint(1, a_max)
        b = rng.randint(1, 10 * a)
        delta = oracle_delta(rng.choice(ORACLE_DELTAS), a)
        if delta >= Fraction(1, 2):
            delta = Fraction(0)
        out.append((a, b, delta))
    return out


def verify_oracle(cfg: SweepConfig, n_queries: int = 10_000) -> Report:
    """count_near_fast against count_near_brute on seeded random queries."""
    start = time.perf_counter()
    rows = []
    for a, b, delta in oracle_queries(n_queries, cfg.a_end, cfg.seed):
        q = lattice.CountQuery(a, b, delta)
        fast = lattice.count_near_fast(q).count
        brute = lattice.count_near_brute(q).count
        if fast != brute:
            raise VerificationError(f"fast {fast} != brute {brute} at a={a}, b={b}, delta={delta}")
        rows.append((str(a), str(b), str(delta.numerator), str(delta.denominator), str(fast)))
    return Report(
        kind="oracle",
        config=cfg.echo(),
        columns=("a", "b", "delta_num", "delta_den", "count"),
        rows=rows,
        key_columns=("a", "b", "delta_num", "delta_den"),
        max_columns=(),
        runtime=time.perf_counter() - start,
    )


def verify_oncurve(cfg: SweepConfig) -> Report:
    """A(a, a, 0) = r and every on-curve point satisfies a y = x^2."""
    start = time.perf_counter()
    rows = []
    for a in cfg.a_values():
        r = square_split(a).r
        count = lattice.count_near(a, a, 0).count
        pts = lattice.on_curve_points(a)
        if count != r or len(pts) != r or any(a * y != x * x for x, y in pts):
            raise VerificationError(f"on-curve structure broken at a={a}: count {count}, r {r}")
        rows.append((str(a), str(r), str(count)))
    return Report(
        kind="oncurve",
        config=cfg.echo(),
        columns=("a", "r", "count"),
        rows=rows,
        max_columns=(),
        runtime=time.perf_counter() - start,
    )


SUITES = {
    "gauss": verify_gauss,
    "korolev": verify_gauss,
    "gauss_closed": verify_gauss,
    "pv": verify_pv,
    "fejer": verify_fejer,
    "lemma4": verify_lemma4,
    "oracle": verify_oracle,
    "oncurve": verify_oncurve,
}
