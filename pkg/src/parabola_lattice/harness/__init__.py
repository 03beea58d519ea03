"""Parameter sweeps, verification suites, reports and the CLI."""

from .config import ConfigError, DeltaSpec, SweepConfig, parse_delta
from .report import Report, VerificationError
from .sweeps import run_sweep, sweep_theorem1, sweep_theorem2, sweep_theorem3, sweep_theorem4
from .verify import (
    verify_fejer,
    verify_gauss,
    verify_lemma4,
    verify_oncurve,
    verify_oracle,
    verify_pv,
)
