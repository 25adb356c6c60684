"""Sampled sequences on dyadic grids and boundary handling.

Entry ``k`` of a curve at refinement level ``j`` with integer origin ``n0``
and base spacing ``h`` sits at

    x_k = (n0 + k - 1/2) * h * 2**-j

With this convention the two children ``2n`` and ``2n + 1`` of parent ``n``
land on the quarter and three-quarter points of the parent interval
``[x_n, x_{n+1}]``, so refined values can be compared with a sampled
function at every level without re-alignment.
"""

from dataclasses import dataclass
import enum

import numpy as np

from .errors import LengthError, PolicyError


class BoundaryPolicy(enum.Enum):
    SHRINK = "shrink"
    CONSTANT = "constant"
    LINEAR_EXTRAPOLATE = "linext"
    PERIODIC = "periodic"

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).lower())
        except ValueError:
            choices = ", ".join(p.value for p in cls)
            raise PolicyError(f"unknown boundary policy {name!r} (choose from {choices})") from None


@dataclass(frozen=True, eq=False)
class SampledCurve:
    values: np.ndarray
    level: int = 0
    base_spacing: float = 1.0
    origin: int = 0

    def __post_init__(self):
        values = np.array(self.values, dtype=float).ravel()
        if values.size == 0:
            raise LengthError("a curve needs at least one value")
        if not np.all(np.isfinite(values)):
            raise ValueError("curve values must be finite")
        if not self.base_spacing > 0:
            raise ValueError(f"base spacing must be positive, got {self.base_spacing}")
        if self.level < 0:
            raise ValueError(f"level must be nonnegative, got {self.level}")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "level", int(self.level))
        object.__setattr__(self, "origin", int(self.origin))
        object.__setattr__(self, "base_spacing", float(self.base_spacing))

    def __len__(self):
        return self.values.size

    @property
    def spacing(self):
        """Grid spacing at the current level."""
        return self.base_spacing * 2.0 ** (-self.level)

    @property
    def indices(self):
        return np.arange(self.origin, self.origin + self.values.size)

    def replace(self, **changes):
        fields = dict(values=self.values, level=self.level,
                      base_spacing=self.base_spacing, origin=self.origin)
        fields.update(changes)
        return SampledCurve(**fields)


def abscissae(curve):
    # computed from integers every call so nothing drifts across levels
    return (curve.indices - 0.5) * curve.spacing


def sample(g, h, start, count):
    """Sample ``g`` at ``(n - 1/2) h`` for ``n = start, ..., start + count - 1``."""
    curve_x = (np.arange(start, start + count) - 0.5) * h
    return SampledCurve(np.asarray(g(curve_x), dtype=float) * np.ones(count),
                        level=0, base_spacing=h, origin=start)


def extend(curve, policy=BoundaryPolicy.SHRINK, left=0, right=0):
    """Pad ``curve`` with ``left``/``right`` synthetic values according to ``policy``.

    The origin moves by ``left`` so the abscissae of the existing entries
    do not change.  ``SHRINK`` never invents data and returns the curve
    as is.
    """
    policy = BoundaryPolicy.parse(policy)
    if left < 0 or right < 0:
        raise ValueError("extension counts must be nonnegative")
    if policy is BoundaryPolicy.SHRINK or (left == 0 and right == 0):
        return curve

    f = curve.values
    n = f.size
    if policy is BoundaryPolicy.CONSTANT:
        padded = np.pad(f, (left, right), mode="edge")
    elif policy is BoundaryPolicy.LINEAR_EXTRAPOLATE:
        if n == 1:
            padded = np.pad(f, (left, right), mode="edge")
        else:
            lo = f[0] - (f[1] - f[0]) * np.arange(left, 0, -1)
            hi = f[-1] + (f[-1] - f[-2]) * np.arange(1, right + 1)
            padded = np.concatenate([lo, f, hi])
    else:
        if n < 2:
            raise PolicyError("periodic extension needs at least 2 values")
        padded = np.pad(f, (left, right), mode="wrap")
    return curve.replace(values=padded, origin=curve.origin - left)
