"""Run configuration shared by the CLI and the experiment scripts."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

from .molien import Parity

FORMATS = ("json", "table", "latex")


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    action: str | None = None
    kind: str | None = None
    n: int | None = None
    max_n: int | None = None
    primes: tuple[int, ...] = ()
    min_deg: int = -12
    max_deg: int = 30
    parity: str = Parity.SHIFTED.value
    seed: int | None = None
    samples: int | None = None
    file: str | None = None
    format: str = "json"
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ValueError(f"unknown output format {self.format!r}")
        Parity.parse(self.parity)
        if self.min_deg > self.max_deg:
            raise ValueError(f"empty degree window [{self.min_deg}, {self.max_deg}]")

    @property
    def window(self) -> tuple[int, int]:
        return (self.min_deg, self.max_deg)

    def require_seed(self) -> int:
        if self.seed is None:
            raise ValueError("this randomized computation needs an explicit --seed")
        return self.seed

    def to_json(self) -> dict:
        out = asdict(self)
        out["primes"] = list(self.primes)
        return out
