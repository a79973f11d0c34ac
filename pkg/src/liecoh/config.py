"""Runtime limits and output settings."""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import CapExceeded, PreconditionError

DEFAULT_MAX_DIM = 12
ENV_MAX_DIM = "LIE_COH_MAX_DIM"
FORMATS = ("json", "text", "both")


def default_max_dim() -> int:
    raw = os.environ.get(ENV_MAX_DIM)
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_DIM
    try:
        cap = int(raw)
    except ValueError:
        raise PreconditionError(f"{ENV_MAX_DIM} must be an integer, got {raw!r}") from None
    if cap <= 0:
        raise PreconditionError(f"{ENV_MAX_DIM} must be positive")
    return cap


def enforce_dim_cap(dim: int, cap: int | None = None) -> None:
    cap = default_max_dim() if cap is None else cap
    if dim > cap:
        raise CapExceeded(
            f"algebra dimension {dim} exceeds max_dim {cap} (raise it with --max-dim or {ENV_MAX_DIM})",
            cap=cap,
            value=dim,
        )


@dataclass(frozen=True)
class Config:
    max_dim: int = DEFAULT_MAX_DIM
    max_page: int | None = None  # None: total degree + 2
    output: str | None = None  # None: stdout
    format: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.max_dim <= 0:
            raise PreconditionError("max_dim must be positive")
        if self.max_page is not None and self.max_page < 0:
            raise PreconditionError("max_page must be nonnegative")
        if self.format not in FORMATS:
            raise PreconditionError(f"format must be one of {', '.join(FORMATS)}")

    @classmethod
    def from_env(cls, **overrides) -> "Config":
        overrides = {k: v for k, v in overrides.items() if v is not None}
        overrides.setdefault("max_dim", default_max_dim())
        return cls(**overrides)
