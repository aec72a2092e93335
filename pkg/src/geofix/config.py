"""Configurable size caps.

Defaults can be overridden per process with the ``GEOFIX_CAPS`` environment
variable (``"group_order=48,hom_candidates=2000000"``) or locally with
:func:`using_caps`.
"""

from __future__ import annotations

import contextlib
import dataclasses
import os
from dataclasses import dataclass

from .errors import ValidationError

ENV_VAR = "GEOFIX_CAPS"


@dataclass(frozen=True)
class Caps:
    group_order: int = 24           # subgroup lattices
    hom_candidates: int = 1_000_000  # generator-image assignments tried
    materialize: int = 200_000      # elements of a materialized group
    linear_size: int = 512          # unknowns in the brute-force linear oracle
    bundle_points: int = 200_000    # base plus total points of a built bundle
    shadow_k: int = 2               # largest k in the faithfulness shadow
    qmax: int = 6                   # default truncation of splitting catalogs

    def replace(self, **kw) -> "Caps":
        return dataclasses.replace(self, **kw)


def parse_caps(text: str, base: Caps | None = None) -> Caps:
    base = base or Caps()
    fields = {f.name for f in dataclasses.fields(Caps)}
    kw = {}
    for item in filter(None, (t.strip() for t in text.split(","))):
        key, _, val = item.partition("=")
        key = key.strip().replace("-", "_")
        if key not in fields:
            raise ValidationError(f"unknown cap {key!r}")
        try:
            kw[key] = int(val)
        except ValueError:
            raise ValidationError(f"cap {key} needs an integer, got {val!r}") from None
    return base.replace(**kw)


_current: Caps | None = None


def caps() -> Caps:
    """The active caps; the environment variable is read on first use."""
    global _current
    if _current is None:
        _current = parse_caps(os.environ.get(ENV_VAR, ""))
    return _current


@contextlib.contextmanager
def using_caps(**kw):
    global _current
    old = caps()
    _current = old.replace(**kw)
    try:
        yield _current
    finally:
        _current = old
