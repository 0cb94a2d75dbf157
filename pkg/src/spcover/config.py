"""Run configuration: tolerances, quadrature orders, grid sizes and the seed.

A config file is a flat JSON object whose keys are field names of
:class:`Config`; command-line flags override file values.
"""
from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping, Optional


@dataclass(frozen=True)
class Config:
    tol_sp: float = 1e-10
    tol_cover: float = 1e-8
    tol_det: float = 1e-12
    tol_m4r0: float = 1e-10
    tol_su: float = 1e-10
    haar_order: int = 24
    circle_order: int = 24
    path_steps: int = 256
    path_max_depth: int = 12
    holder_grid: int = 512
    disc_grid: int = 256
    ctilde: Optional[float] = None
    seed: int = 20130717

    def __post_init__(self):
        for name in ("tol_sp", "tol_cover", "tol_det", "tol_m4r0", "tol_su"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        for name in ("haar_order", "circle_order", "path_steps", "holder_grid", "disc_grid"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be a positive integer")
        if self.ctilde is not None and not self.ctilde > 0:
            raise ValueError("ctilde must be positive")

    def replace(self, **changes: Any) -> "Config":
        changes = {k: v for k, v in changes.items() if v is not None}
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


DEFAULT = Config()


def load_config(path: Optional[str | Path] = None, overrides: Optional[Mapping[str, Any]] = None) -> Config:
    data: dict = {}
    if path is not None:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        if not isinstance(data, dict):
            raise ValueError("config file must hold a JSON object")
        known = {f.name for f in dataclasses.fields(Config)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
    cfg = Config(**data)
    if overrides:
        cfg = cfg.replace(**overrides)
    return cfg
