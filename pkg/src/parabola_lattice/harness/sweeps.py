"""Discrepancy sweeps: exact lattice counts ratioed against theorem envelopes."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .. import bounds, lattice
from .config import SweepConfig, fmt_float
from .report import NA, SWEEP_COLUMNS, Report, VerificationError

# Every point below this a is cross-checked fast vs brute.
FULL_CHECK_BELOW = 2000
SUBSAMPLE_RATE = 0.01
DEFAULT_THRESHOLD = 10.0


def _cross_check(seed: int, kind: str, a: int, b: int, delta) -> bool:
    if a < FULL_CHECK_BELOW:
        return True
    # str seeds hash through sha512: stable across processes and runs
    return random.Random(f"{seed}:{kind}:{a}:{b}:{delta}").random() < SUBSAMPLE_RATE


def _row(a, b, delta, measured: Fraction, envelope: float, method: str):
    measured = Fraction(measured)
    ratio = abs(measured) / envelope
    dn, dd = (NA, NA) if delta is None else (str(delta.numerator), str(delta.denominator))
    return (
        str(a), str(b), dn, dd,
        str(measured.numerator), str(measured.denominator),
        fmt_float(envelope), fmt_float(float(ratio)), method, "true",
    )


def _point_theorem1(args):
    a, b, _delta, seed = args
    if a < 3:
        return None, "envelope needs a >= 3"
    measured = lattice.frac_discrepancy(a, b)
    method = "fast"
    if _cross_check(seed, "1", a, b, None):
        fast = lattice.floor_sum_fast(a, b)
        brute = lattice.floor_sum_brute(a, b)
        if fast != brute:
            raise VerificationError(f"floor sum mismatch at a={a}, b={b}: {fast} != {brute}")
        if fast - lattice.smooth_main_term(a, b) != measured:
            raise VerificationError(f"floor-sum identity broken at a={a}, b={b}")
        method = "both"
    env = bounds.envelope_theorem1(a, b).value
    return _row(a, b, None, measured, env, method), None


def _checked_count(kind, a, b, delta, seed):
    q = lattice.CountQuery(a, b, delta)
    primary = lattice.choose_method(q)
    res = lattice.count_near_fast(q) if primary == lattice.FAST else lattice.count_near_brute(q)
    method = res.method
    if _cross_check(seed, kind, a, b, delta):
        other = lattice.count_near_brute(q) if primary == lattice.FAST else lattice.count_near_fast(q)
        if other.count != res.count:
            raise VerificationError(
                f"near-count mismatch at a={a}, b={b}, delta={delta}: "
                f"{res.method}={res.count}, {other.method}={other.count}")
        method = "both"
    return res.count, method


def _point_theorem2(args):
    a, b, delta, seed = args
    if a < 3:
        return None, "envelope needs a >= 3"
    if not 0 <= delta < Fraction(1, 2):
        return None, f"delta {delta} outside [0, 1/2)"
    count, method = _checked_count("2", a, b, delta, seed)
    measured = count - 2 * delta * b
    env = bounds.envelope_theorem2(a, b).value
    return _row(a, b, delta, measured, env, method), None


def _point_near_a(args, kind, envelope):
    a, _b, delta, seed = args
    if a < 2:
        return None, "envelope needs a >= 2"
    if not 0 <= delta < Fraction(1, 2):
        return None, f"delta {delta} outside [0, 1/2)"
    count, method = _checked_count(kind, a, a, delta, seed)
    env = envelope(a, delta).value
    return _row(a, a, delta, Fraction(count), env, method), None


def _point_theorem3(args):
    return _point_near_a(args, "3", bounds.envelope_theorem3)


def _point_theorem4(args):
    return _point_near_a(args, "4", bounds.envelope_theorem4)


_POINT_FUNCS = {
    "1": _point_theorem1,
    "2": _point_theorem2,
    "3": _point_theorem3,
    "4": _point_theorem4,
}


def _points(cfg: SweepConfig, theorem: str):
    pts = []
    for a in cfg.a_values():
        if theorem == "1":
            pts.append((a, cfg.b_for(a), None, cfg.seed))
            continue
        b = a if theorem in ("3", "4") else cfg.b_for(a)
        for spec in cfg.delta_list:
            pts.append((a, b, spec.at(a), cfg.seed))
    # canonical (a, b, delta) order, duplicates removed
    uniq = {(p[0], p[1], p[2]): p for p in pts}
    return [uniq[k] for k in sorted(uniq, key=lambda k: (k[0], k[1], k[2] or 0))]


def run_points(func, points, workers: int):
    if workers <= 1 or len(points) < 2:
        return [func(p) for p in points]
    chunk = max(1, len(points) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, points, chunksize=chunk))


def run_sweep(cfg: SweepConfig, theorem: str, threshold: float = DEFAULT_THRESHOLD,
              workers: int | None = None) -> Report:
    if theorem not in _POINT_FUNCS:
        raise ValueError(f"no sweep for theorem {theorem!r}")
    if theorem != "1" and not cfg.delta_list:
        raise ValueError(f"theorem {theorem} sweep needs a delta_list")
    start = time.perf_counter()
    points = _points(cfg, theorem)
    results = run_points(_POINT_FUNCS[theorem], points, workers or cfg.workers)
    rows, skipped = [], []
    for p, (row, reason) in zip(points, results):
        if row is None:
            skipped.append({"a": p[0], "b": p[1],
                            "delta": None if p[2] is None else str(p[2]),
                            "reason": reason})
        else:
            rows.append(row)
    return Report(
        kind=f"theorem{theorem}",
        config=cfg.echo(),
        columns=SWEEP_COLUMNS,
        rows=rows,
        key_columns=("a", "b", "delta_num", "delta_den"),
        max_columns=("ratio",),
        threshold=threshold,
        skipped=skipped,
        runtime=time.perf_counter() - start,
    )


def sweep_theorem1(cfg, **kw) -> Report:
    return run_sweep(cfg, "1", **kw)


def sweep_theorem2(cfg, **kw) -> Report:
    return run_sweep(cfg, "2", **kw)


def sweep_theorem3(cfg, **kw) -> Report:
    return run_sweep(cfg, "3", **kw)


def sweep_theorem4(cfg, **kw) -> Report:
    return run_sweep(cfg, "4", **kw)
