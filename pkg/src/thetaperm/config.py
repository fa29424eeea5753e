"""Run configuration shared by the CLI and the verification suite."""

from __future__ import annotations

import os
import random
from dataclasses import asdict, dataclass, replace

from .cobordism import CLASS_CAP, DEFAULT_SEED
from .combinatorics import PERMUTATION_CAP
from .errors import PreconditionError
from .genus import DEFAULT_ORDER
from .permutohedron import FACE_CAP

FORMATS = ("text", "json", "latex")

_ENV = {
    "order": "THETAPERM_ORDER",
    "face_cap": "THETAPERM_FACE_CAP",
    "perm_cap": "THETAPERM_PERM_CAP",
    "class_cap": "THETAPERM_CLASS_CAP",
    "grade_cap": "THETAPERM_GRADE_CAP",
    "seed": "THETAPERM_SEED",
}


@dataclass(frozen=True)
class Config:
    order: int = DEFAULT_ORDER
    face_cap: int = FACE_CAP
    perm_cap: int = PERMUTATION_CAP
    class_cap: int = CLASS_CAP
    grade_cap: int | None = None  # None: use the dimension being computed
    seed: int = DEFAULT_SEED
    format: str = "text"

    def __post_init__(self):
        for name in ("order", "face_cap", "perm_cap", "class_cap"):
            if getattr(self, name) < 1:
                raise PreconditionError(f"{name} must be positive")
        if self.grade_cap is not None and self.grade_cap < 1:
            raise PreconditionError("grade_cap must be positive")
        if self.format not in FORMATS:
            raise PreconditionError(f"unknown format {self.format!r}")

    @classmethod
    def from_env(cls, environ=None, **overrides) -> "Config":
        environ = os.environ if environ is None else environ
        values = {}
        for field_name, key in _ENV.items():
            if key in environ:
                try:
                    values[field_name] = int(environ[key])
                except ValueError:
                    raise PreconditionError(f"{key}={environ[key]!r} is not an integer") from None
        values.update({k: v for k, v in overrides.items() if v is not None})
        cfg = cls(**values)
        if cfg.seed == 0:
            cfg = replace(cfg, seed=random.SystemRandom().randrange(1, 2**31))
        return cfg

    def to_dict(self) -> dict:
        return asdict(self)
