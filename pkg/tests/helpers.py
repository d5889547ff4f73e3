"""Shared test helpers."""

import math


def ulps_apart(x: float, y: float, scale: float | None = None) -> float:
    """|x - y| measured in ulps of `scale`.

    The default scale max(|x|, |y|, 1.0) treats sub-unit values at the
    unit spacing: identities verified through logs carry absolute errors
    of a few machine epsilons, which no tolerance finer than ulp(1.0)
    can meaningfully resolve.
    """
    if scale is None:
        scale = max(abs(x), abs(y), 1.0)
    return abs(x - y) / math.ulp(scale)


def rel_err(x: float, y: float) -> float:
    """|x - y| / max(|x|, |y|)."""
    denom = max(abs(x), abs(y))
    if denom == 0.0:
        return 0.0
    return abs(x - y) / denom
