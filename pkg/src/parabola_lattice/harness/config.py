"""Sweep configuration and its line-oriented ``key = value`` file format."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from ..arith import is_prime, is_square

SWEEP_THEOREMS = ("1", "2", "3", "4")
VERIFY_SUITES = ("korolev", "gauss_closed", "pv", "fejer", "lemma4", "oracle", "oncurve")
THEOREM_IDS = SWEEP_THEOREMS + VERIFY_SUITES
A_FILTERS = ("all", "primes", "squares")

_PER_A = re.compile(r"^\s*(\d+)\s*/\s*a\s*$")
_B_RULE = re.compile(r"^(equal_a|fixed\((\d+)\)|multiple\((\d+)\))$")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class DeltaSpec:
    """A threshold that is either a fixed rational or ``k/a`` for each a."""

    value: Fraction | None = None
    per_a: int | None = None

    def at(self, a: int) -> Fraction:
        if self.per_a is not None:
            return Fraction(self.per_a, a)
        return self.value

    def __str__(self) -> str:
        return f"{self.per_a}/a" if self.per_a is not None else str(self.value)


def parse_delta(token: str) -> DeltaSpec:
    token = token.strip()
    m = _PER_A.match(token)
    if m:
        return DeltaSpec(per_a=int(m.group(1)))
    try:
        value = Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad delta {token!r}") from exc
    if not 0 <= value < Fraction(1, 2):
        raise ConfigError(f"delta {token} outside [0, 1/2)")
    return DeltaSpec(value=value)


@dataclass(frozen=True)
class SweepConfig:
    a_start: int = 3
    a_end: int = 100
    a_step: int = 1
    a_filter: str = "all"
    b_rule: str = "equal_a"
    delta_list: tuple[DeltaSpec, ...] = field(default_factory=tuple)
    theorems: tuple[str, ...] = ("1",)
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.a_start < 1 or self.a_end < self.a_start:
            raise ConfigError(f"empty a range [{self.a_start}, {self.a_end}]")
        if self.a_step < 1:
            raise ConfigError("a_step must be >= 1")
        if self.a_filter not in A_FILTERS:
            raise ConfigError(f"a_filter must be one of {A_FILTERS}")
        if not _B_RULE.match(self.b_rule):
            raise ConfigError(f"bad b_rule {self.b_rule!r}")
        if self.b_for(1) < 1:
            raise ConfigError("b_rule must produce b >= 1")
        for t in self.theorems:
            if t not in THEOREM_IDS:
                raise ConfigError(f"unknown theorem {t!r}")
        if not self.theorems:
            raise ConfigError("no theorems selected")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if not self.a_values():
            raise ConfigError("a range is empty after filtering")

    def a_values(self) -> list[int]:
        values = range(self.a_start, self.a_end + 1, self.a_step)
        if self.a_filter == "primes":
            return [a for a in values if is_prime(a)]
        if self.a_filter == "squares":
            return [a for a in values if is_square(a)]
        return list(values)

    def b_for(self, a: int) -> int:
        m = _B_RULE.match(self.b_rule)
        if m.group(2):
            return int(m.group(2))
        if m.group(3):
            return int(m.group(3)) * a
        return a

    def fixed_deltas(self) -> list[Fraction]:
        return [d.value for d in self.delta_list if d.per_a is None]

    def echo(self) -> dict:
        return {
            "a_start": self.a_start,
            "a_end": self.a_end,
            "a_step": self.a_step,
            "a_filter": self.a_filter,
            "b_rule": self.b_rule,
            "delta_list": [str(d) for d in self.delta_list],
            "theorems": list(self.theorems),
            "seed": self.seed,
            "workers": self.workers,
        }

    def to_text(self) -> str:
        lines = []
        for key, value in self.echo().items():
            if isinstance(value, list):
                value = ", ".join(value)
            lines.append(f"{key} = {value}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SweepConfig":
        kwargs = {}
        ints = {"a_start", "a_end", "a_step", "seed", "workers"}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected 'key = value'")
            key, value = (s.strip() for s in line.split("=", 1))
            if key in kwargs:
                raise ConfigError(f"line {lineno}: duplicate key {key!r}")
            if key in ints:
                try:
                    kwargs[key] = int(value)
                except ValueError as exc:
                    raise ConfigError(f"line {lineno}: {key} must be an integer") from exc
            elif key in ("a_filter", "b_rule"):
                kwargs[key] = value.replace(" ", "")
            elif key == "delta_list":
                kwargs[key] = tuple(parse_delta(t) for t in value.split(",") if t.strip())
            elif key == "theorems":
                kwargs[key] = tuple(t.strip() for t in value.split(",") if t.strip())
            else:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
        return cls(**kwargs)

    @classmethod
    def load(cls, path) -> "SweepConfig":
        return cls.from_text(Path(path).read_text(encoding="utf-8"))


def fmt_float(x: float) -> str:
    """Shortest round-tripping text for a float."""
    if math.isnan(x):
        raise ValueError("NaN has no place in a report")
    return repr(float(x))
