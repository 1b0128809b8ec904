"""Run configuration."""
from __future__ import annotations

from dataclasses import dataclass, field, asdict
from fractions import Fraction

PROBE_GROUPS = ("Z2", "Z3", "S3", "S4")


@dataclass(frozen=True)
class Config:
    depth: int = 14                      # branch-and-prune generations
    precision: int = 53                  # interval bits; 128/256 on escalation
    escalation: tuple = (128, 256)
    tangency_eps: Fraction = Fraction(1, 2 ** 20)
    touch_eps: Fraction = Fraction(1, 2 ** 10)
    k_range: int = 3
    spot_k: tuple = (-10, 10)
    probes: tuple = ("Z2", "Z3", "S3")
    samples: int = 1000
    seed: int = 20240101
    fmt: str = "json"

    def __post_init__(self):
        if self.depth < 4:
            raise ValueError("depth must be >= 4")
        if self.precision not in (53, 128, 256):
            raise ValueError("precision must be one of 53, 128, 256")
        if self.k_range < 1:
            raise ValueError("k-range must be >= 1")
        bad = [p for p in self.probes if p not in PROBE_GROUPS]
        if bad:
            raise ValueError(f"unknown probe groups {bad}")
        if self.fmt not in ("json", "text"):
            raise ValueError("format must be json or text")

    def snapshot(self) -> dict:
        d = asdict(self)
        d["tangency_eps"] = str(self.tangency_eps)
        d["touch_eps"] = str(self.touch_eps)
        d["escalation"] = list(self.escalation)
        d["spot_k"] = list(self.spot_k)
        d["probes"] = list(self.probes)
        return d
