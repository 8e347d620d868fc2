"""Runtime configuration and data-directory layout."""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Config:
    data_dir: str = "data"
    inherit_threshold: int = 5          # ancestor count needed to inherit
    count_floor: float = 0.5            # estimate when nothing qualifies
    rule_smoothing: float = 0.5
    interpretation_margin: float = math.log(100.0)
    review_depth: int = 10              # N-best depth shown to the monitor
    oracle_cap: int = 10                # max tokens for exhaustive parsing
    unknown_roots: tuple[str, ...] = ("equipment-1", "person-1", "place-1")
    default_unknown_category: str = "equipment-1"
    unknown_candidate_cap: int = 6
    code_categories: tuple[str, ...] = ("aircraft-id-1", "date-1",
                                        "person-name-1", "number-1",
                                        "fraction-1")
    ancestor_depth_cap: int = 0         # 0 = unlimited
    max_interpretations: int = 4

    def __post_init__(self):
        for name in ("inherit_threshold", "count_floor", "rule_smoothing",
                     "interpretation_margin", "review_depth", "oracle_cap",
                     "unknown_candidate_cap", "max_interpretations"):
            if getattr(self, name) <= 0:
                raise ValueError(f"config parameter {name} must be positive")


_LIST_FIELDS = {"unknown_roots", "code_categories"}
_INT_FIELDS = {"inherit_threshold", "review_depth", "oracle_cap",
               "unknown_candidate_cap", "ancestor_depth_cap",
               "max_interpretations"}
_FLOAT_FIELDS = {"count_floor", "rule_smoothing", "interpretation_margin"}


def load_config(text: str, base: Config | None = None) -> Config:
    """Parse key=value lines over the defaults (or `base`)."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in _LIST_FIELDS:
            values[key] = tuple(v for v in value.split(",") if v)
        elif key in _INT_FIELDS:
            values[key] = int(value)
        elif key in _FLOAT_FIELDS:
            values[key] = float(value)
        elif key == "data_dir":
            values[key] = value
        else:
            raise ValueError(f"line {lineno}: unknown config key {key!r}")
    return replace(base or Config(), **values)


def save_config(config: Config) -> str:
    lines = []
    for f in fields(config):
        value = getattr(config, f.name)
        if isinstance(value, tuple):
            value = ",".join(value)
        lines.append(f"{f.name}={value}")
    return "\n".join(lines) + "\n"


def resolve_data_dir(explicit: str | None = None) -> str:
    """CLI flag wins, then CAPTION_IR_DATA, then ./data."""
    if explicit:
        return explicit
    return os.environ.get("CAPTION_IR_DATA", "data")
