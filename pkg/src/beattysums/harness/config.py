"""Experiment configuration and the real-number descriptor grammar."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from pathlib import Path

from ..exact import ExactReal, QuadraticReal

DEFAULT_BETA_GRID = ["0", "rat:1/7", "rat:1/3", "quad:0,1,2,2", "quad:-1,1,5,2",
                     "rat:9/10", "rat:5/2", "rat:-6/5"]


def parse_real(text: str) -> ExactReal:
    """Parse 'sqrt:2', 'golden', 'quad:p,q,d,r', 'rat:p/q' or a plain rational."""
    s = text.strip()
    kind, _, arg = s.partition(":")
    if kind == "golden" and not arg:
        return QuadraticReal.golden()
    if kind == "sqrt":
        return QuadraticReal.sqrt(int(arg))
    if kind == "quad":
        parts = [int(v) for v in arg.split(",")]
        if len(parts) != 4:
            raise ValueError(f"quad: expects p,q,d,r, got {arg!r}")
        return QuadraticReal(*parts)
    if kind == "rat":
        return QuadraticReal.coerce(Fraction(arg))
    try:
        return QuadraticReal.coerce(Fraction(s))
    except ValueError:
        raise ValueError(f"cannot parse real number {text!r}") from None


@dataclass
class ExperimentConfig:
    kind: str = "charsum"                  # charsum | expsum
    moduli: list[int] | None = None
    prime_range: list[int] | None = None   # [lo, hi, count], log-spaced primes
    eps: float = 0.05
    alpha: str = "sqrt:2"
    beta_grid: list[str] = field(default_factory=lambda: list(DEFAULT_BETA_GRID))
    chi_policy: str = "quadratic"          # all | quadratic | random
    chi_sample: int = 4
    n_policy: str | int = "burgess"        # 'burgess' -> ceil(B_eps(k)), or a fixed N
    delta: str | float | None = None       # None, a number, or 'auto' (N^((eta-1)/2))
    fourier_j: int | None = None
    a_samples: int = 16
    seed: int = 0
    output: str | None = None
    format: str = "csv"
    threads: int = 1
    record_timings: bool = False

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.kind not in ("charsum", "expsum"):
            raise ValueError(f"unknown experiment kind {self.kind!r}")
        if self.eps <= 0:
            raise ValueError("eps must be positive")
        if not self.beta_grid:
            raise ValueError("beta_grid must not be empty")
        if self.moduli is None and self.prime_range is None:
            raise ValueError("give moduli or prime_range")
        if self.moduli is not None and any(k < 3 for k in self.moduli):
            raise ValueError("all moduli must be at least 3")
        if self.prime_range is not None and (len(self.prime_range) != 3 or self.prime_range[0] < 3):
            raise ValueError("prime_range is [lo, hi, count] with lo >= 3")
        if self.chi_policy not in ("all", "quadratic", "random"):
            raise ValueError(f"unknown chi_policy {self.chi_policy!r}")
        if self.format not in ("csv", "json"):
            raise ValueError("format must be csv or json")
        parse_real(self.alpha)
        for b in self.beta_grid:
            parse_real(b)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def load(cls, path: str | Path) -> "ExperimentConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        return asdict(self)
