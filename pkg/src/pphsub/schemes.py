"""One-step refinement rules and multi-level driving.

All raw rules map a 1-D array ``f`` to the children of every parent that
has a complete stencil.  For the four-point rules (parents ``n - 1 .. n + 2``)
an input of length ``N`` yields ``2 (N - 3)`` children, the first of which
belongs to input index 1.  Chaikin only needs ``n, n + 1`` and yields
``2 (N - 1)`` children starting at input index 0.
"""

import enum

import numpy as np

from .errors import InvariantError, LengthError
from .grid import BoundaryPolicy, SampledCurve, extend
from .pph_core import arithmetic_mean, pph, second_difference


class SchemeKind(enum.Enum):
    LINEAR_SHIFTED_4PT = "linear4"
    CHAIKIN = "chaikin"
    PPHA = "ppha"
    PPHA_ARITHMETIC = "ppha-arith"

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).lower())
        except ValueError:
            choices = ", ".join(s.value for s in cls)
            raise ValueError(f"unknown scheme {name!r} (choose from {choices})") from None

    @property
    def reach(self):
        """Number of parents needed to the (left, right) of parent ``n``."""
        return (0, 1) if self is SchemeKind.CHAIKIN else (1, 2)


class StencilCase(enum.Enum):
    FIRST_FORM = "first"
    SECOND_FORM = "second"

    @classmethod
    def classify(cls, d2_n, d2_n1):
        # ties go to the first form
        return cls.FIRST_FORM if abs(d2_n) >= abs(d2_n1) else cls.SECOND_FORM


def _stencil(f, minimum):
    f = np.asarray(f, dtype=float)
    if f.ndim != 1 or f.size < minimum:
        raise LengthError(f"stencil needs at least {minimum} values, got {f.size}")
    return f


def _interleave(even, odd):
    out = np.empty(2 * even.size)
    out[0::2] = even
    out[1::2] = odd
    return out


def refine_linear_shifted(f):
    """Cubic interpolation of ``f[n-1..n+2]`` evaluated at ``n + 1/4`` and ``n + 3/4``."""
    f = _stencil(f, 4)
    fm, f0, f1, f2 = f[:-3], f[1:-2], f[2:-1], f[3:]
    even = (-7.0 * fm + 105.0 * f0 + 35.0 * f1 - 5.0 * f2) / 128.0
    odd = (-5.0 * fm + 35.0 * f0 + 105.0 * f1 - 7.0 * f2) / 128.0
    return _interleave(even, odd)


def refine_chaikin(f):
    f = _stencil(f, 2)
    f0, f1 = f[:-1], f[1:]
    return _interleave((3.0 * f0 + f1) / 4.0, (f0 + 3.0 * f1) / 4.0)


def refine_ppha(f, mean=pph):
    """Nonlinear four-point step with the limiter ``mean`` on ``(d2f_n, d2f_n+1)``.

    With ``mean=arithmetic_mean`` both branches collapse onto
    :func:`refine_linear_shifted`.
    """
    f = _stencil(f, 4)
    d2 = second_difference(f)
    dn, dn1 = d2[:-1], d2[1:]
    fm, f0, f1, f2 = f[:-3], f[1:-2], f[2:-1], f[3:]
    m = mean(dn, dn1)
    first = np.abs(dn) >= np.abs(dn1)

    even = np.where(
        first,
        (49.0 * f0 + 14.0 * f1 + f2) / 64.0 - 7.0 / 64.0 * m,
        (-fm + 50.0 * f0 + 15.0 * f1) / 64.0 - 5.0 / 64.0 * m,
    )
    odd = np.where(
        first,
        (15.0 * f0 + 50.0 * f1 - f2) / 64.0 - 5.0 / 64.0 * m,
        (fm + 14.0 * f0 + 49.0 * f1) / 64.0 - 7.0 / 64.0 * m,
    )
    return _interleave(even, odd)


def ppha_perturbation(d2):
    """Perturbation ``F`` such that PPHA = Chaikin + ``F(d2f)``.

    ``d2[k]`` is the second difference at parent ``k``; the output holds
    the two children of every parent with a successor, ``2 (len(d2) - 1)``
    values.
    """
    d2 = _stencil(d2, 2)
    dn, dn1 = d2[:-1], d2[1:]
    p = pph(dn, dn1)
    first = np.abs(dn) >= np.abs(dn1)
    even = np.where(first, dn1 / 64.0 - 7.0 / 64.0 * p, -dn / 64.0 - 5.0 / 64.0 * p)
    odd = np.where(first, -dn1 / 64.0 - 5.0 / 64.0 * p, dn / 64.0 - 7.0 / 64.0 * p)
    return _interleave(even, odd)


def refine_ppha_via_chaikin(f):
    """PPHA computed as Chaikin plus the perturbation, on the four-point window."""
    f = _stencil(f, 4)
    return refine_chaikin(f)[2:-2] + ppha_perturbation(second_difference(f))


_RULES = {
    SchemeKind.LINEAR_SHIFTED_4PT: refine_linear_shifted,
    SchemeKind.CHAIKIN: refine_chaikin,
    SchemeKind.PPHA: refine_ppha,
    SchemeKind.PPHA_ARITHMETIC: lambda f: refine_ppha(f, mean=arithmetic_mean),
}


def refine_values(f, scheme):
    return _RULES[SchemeKind.parse(scheme)](f)


def refine(curve, scheme, policy=BoundaryPolicy.SHRINK):
    """One refinement step of ``curve``; returns a new curve one level finer."""
    scheme = SchemeKind.parse(scheme)
    left, right = scheme.reach
    ext = extend(curve, policy, left, right)
    values = _RULES[scheme](ext.values)
    if not np.all(np.isfinite(values)):
        raise InvariantError(f"{scheme.value} produced non-finite values")
    return SampledCurve(values, level=curve.level + 1,
                        base_spacing=curve.base_spacing,
                        origin=2 * (ext.origin + left))


def refine_to_level(curve, scheme, policy=BoundaryPolicy.SHRINK, levels=1, keep=False):
    """Apply :func:`refine` ``levels`` times.

    With ``keep=True`` the list of all intermediate curves (including the
    input) is returned instead of the last one.
    """
    if levels < 0:
        raise ValueError("levels must be nonnegative")
    history = [curve]
    for step in range(levels):
        try:
            history.append(refine(history[-1], scheme, policy))
        except LengthError as exc:
            raise LengthError(
                f"curve exhausted after {step} of {levels} levels "
                f"({len(history[-1])} values left): {exc}"
            ) from exc
    return history if keep else history[-1]
