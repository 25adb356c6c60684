"""Built-in test functions sampled on the midpoint grid."""

from dataclasses import dataclass
import re
from typing import Callable, Optional

import numpy as np

from .analysis import delta_sequence, grid_window
from .grid import sample


def step(x):
    """Heaviside step: 0 below the jump at 0, 1 at and above it."""
    return np.where(np.asarray(x, dtype=float) >= 0.0, 1.0, 0.0)


def eq21(x):
    """sin(pi x) on [0, 0.5], -sin(pi x) on (0.5, 1]."""
    x = np.asarray(x, dtype=float)
    s = np.sin(np.pi * x)
    return np.where(x <= 0.5, s, -s)


def sinpi(x):
    return np.sin(np.pi * np.asarray(x, dtype=float))


def quadratic(a, b, c):
    def g(x):
        x = np.asarray(x, dtype=float)
        return (a * x + b) * x + c
    return g


@dataclass(frozen=True)
class BuiltinSampler:
    name: str
    func: Optional[Callable]
    domain: tuple
    default_h: float

    def curve(self, h=None, margin=8):
        h = self.default_h if h is None else h
        if self.name == "delta":
            return delta_sequence(margin, base_spacing=h)
        start, count = grid_window(self.domain, h)
        return sample(self.func, h, start, count)


_SAMPLERS = {
    "step": BuiltinSampler("step", step, (-1.0, 1.0), 1 / 8),
    "eq21": BuiltinSampler("eq21", eq21, (0.0, 1.0), 1 / 32),
    "exp": BuiltinSampler("exp", np.exp, (0.0, 1.0), 1 / 32),
    # domain crosses the inflection at x = 1
    "sinpi": BuiltinSampler("sinpi", sinpi, (0.0, 2.0), 1 / 32),
    "delta": BuiltinSampler("delta", None, (0.0, 0.0), 1.0),
}

_QUADRATIC = re.compile(r"^quadratic\(([^,()]+),([^,()]+),([^,()]+)\)$")

BUILTIN_NAMES = ("step", "eq21", "exp", "sinpi", "delta", "quadratic(a,b,c)", "custom-table")


def get_sampler(name):
    """Look up a builtin by name; ``quadratic(a,b,c)`` is ``a x^2 + b x + c`` on [0, 1]."""
    key = name.replace(" ", "").lower()
    if key in _SAMPLERS:
        return _SAMPLERS[key]
    m = _QUADRATIC.match(key)
    if m:
        try:
            a, b, c = (float(v) for v in m.groups())
        except ValueError:
            raise KeyError(name) from None
        return BuiltinSampler(key, quadratic(a, b, c), (0.0, 1.0), 1 / 16)
    raise KeyError(name)
