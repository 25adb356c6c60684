"""Experiment harnesses: regularity, contraction, order, Gibbs and stability.

Every metric is taken over Shrink-valid entries only, so no synthetic
boundary data enters a number reported here.
"""

from dataclasses import asdict, dataclass, field
import math
from typing import NamedTuple, Optional

import numpy as np

from .errors import LengthError, SubdivisionError
from .grid import BoundaryPolicy, SampledCurve, abscissae, sample
from .pph_core import difference, second_difference
from .schemes import SchemeKind, refine, refine_to_level, refine_values

# radius (in units of h) around a jump outside which errors must be O(h^3)
GIBBS_RADIUS = 4.5


class UndefinedRatio(SubdivisionError, ArithmeticError):
    """A ratio of norms whose denominator vanishes."""


def sup_norm(a):
    a = np.asarray(a, dtype=float)
    return float(np.max(np.abs(a))) if a.size else 0.0


def delta_sequence(margin=8, base_spacing=1.0):
    """Unit impulse with ``margin`` zeros on each side, centred at index 0.

    Eight zeros are enough for the whole limit support to stay inside the
    Shrink window at every level, so wider windows change nothing.
    """
    values = np.zeros(2 * margin + 1)
    values[margin] = 1.0
    return SampledCurve(values, base_spacing=base_spacing, origin=-margin)


# --------------------------------------------------------------------------
# regularity


@dataclass
class RegularityReport:
    scheme: str
    levels: list
    beta1: dict = field(default_factory=dict)
    beta2: dict = field(default_factory=dict)
    initial_data: str = "delta"
    protocol: dict = field(default_factory=dict)

    def to_dict(self):
        d = asdict(self)
        # JSON object keys are strings
        d["beta1"] = {str(j): v for j, v in self.beta1.items()}
        d["beta2"] = {str(j): v for j, v in self.beta2.items()}
        return d


def _regularity_from_history(history, k, j):
    num = sup_norm(difference(history[j + 1].values, k + 1))
    den = sup_norm(difference(history[j].values, k + 1))
    if den == 0.0 or num == 0.0:
        return None
    return -math.log2(2.0 ** k * num / den)


def estimate_regularity(f0, scheme, k, j, policy=BoundaryPolicy.SHRINK):
    """Hölder exponent estimate from the decay of ``(k+1)``-th differences.

    Returns ``-log2(2**k * |D^{k+1} S^{j+1} f| / |D^{k+1} S^j f|)`` with
    undivided differences and sup norms, or ``None`` when either norm
    vanishes.
    """
    if k not in (1, 2):
        raise ValueError(f"k must be 1 or 2, got {k}")
    history = refine_to_level(f0, scheme, policy, levels=j + 1, keep=True)
    return _regularity_from_history(history, k, j)


def regularity_report(f0, scheme, jmin, jmax, ks=(1, 2),
                      policy=BoundaryPolicy.SHRINK, initial_data="delta"):
    scheme = SchemeKind.parse(scheme)
    if not 0 <= jmin <= jmax:
        raise ValueError(f"need 0 <= jmin <= jmax, got {jmin}, {jmax}")
    history = refine_to_level(f0, scheme, policy, levels=jmax + 1, keep=True)
    report = RegularityReport(
        scheme=scheme.value,
        levels=list(range(jmin, jmax + 1)),
        initial_data=initial_data,
        protocol={
            "initial_length": len(f0),
            "initial_origin": f0.origin,
            "base_spacing": f0.base_spacing,
            "boundary": BoundaryPolicy.parse(policy).value,
            "norm": "sup over all Shrink-valid undivided (k+1)-th differences",
            "orders": list(ks),
        },
    )
    for j in report.levels:
        if 1 in ks:
            report.beta1[j] = _regularity_from_history(history, 1, j)
        if 2 in ks:
            report.beta2[j] = _regularity_from_history(history, 2, j)
    return report


# --------------------------------------------------------------------------
# contraction


def measure_contraction(f, scheme=SchemeKind.PPHA):
    """``|d2(S f)| / |d2 f|`` in the sup norm for one Shrink step."""
    f = np.asarray(f, dtype=float)
    if f.size < 5:
        raise LengthError(f"contraction needs at least 5 values, got {f.size}")
    den = sup_norm(second_difference(f))
    if den == 0.0:
        raise UndefinedRatio("second differences of the input vanish")
    return sup_norm(second_difference(refine_values(f, scheme))) / den


# --------------------------------------------------------------------------
# approximation order


@dataclass
class OrderReport:
    scheme: str
    spacings: list
    errors: list
    orders: Optional[list] = None
    domain: tuple = (0.0, 1.0)

    def to_dict(self):
        d = asdict(self)
        d["domain"] = list(self.domain)
        if self.orders is None:
            del d["orders"]
        return d


def grid_window(domain, h):
    """``(start, count)`` of the midpoint samples covering ``domain`` at spacing ``h``."""
    a, b = domain
    start = round(a / h) + 1
    count = round((b - a) / h)
    if abs(start - 1 - a / h) > 1e-9 or abs(count - (b - a) / h) > 1e-9:
        raise ValueError(f"spacing {h} does not divide the domain {domain}")
    return start, count


def approximation_order(g, scheme, spacings, domain=(0.0, 1.0)):
    """One-step error against ``g`` at the child abscissae for each spacing."""
    scheme = SchemeKind.parse(scheme)
    errors = []
    for h in spacings:
        start, count = grid_window(domain, h)
        fine = refine(sample(g, h, start, count), scheme)
        errors.append(sup_norm(fine.values - g(abscissae(fine))))
    orders = None
    if len(spacings) >= 2:
        orders = []
        for (h1, e1), (h2, e2) in zip(zip(spacings, errors), zip(spacings[1:], errors[1:])):
            if e1 == 0.0 or e2 == 0.0:
                orders.append(None)
            else:
                orders.append(math.log(e1 / e2) / math.log(h1 / h2))
    return OrderReport(scheme.value, list(spacings), errors, orders, tuple(domain))


# --------------------------------------------------------------------------
# Gibbs phenomenon


@dataclass
class GibbsReport:
    scheme: str
    h: float
    levels: int
    jump_detected: bool
    jump_location: Optional[float]
    overshoot: float
    far_error: Optional[float]
    near_band: Optional[list]
    near_excess: Optional[float]
    data_min: float
    data_max: float

    def to_dict(self):
        return asdict(self)


def locate_jump(curve, ratio=4.0):
    """Midpoint between the two samples straddling the largest jump.

    Returns ``None`` unless the largest ``|f[k+1] - f[k]|`` exceeds
    ``ratio`` times every first difference not adjacent to it.
    """
    if len(curve) < 2:
        return None
    df = np.abs(np.diff(curve.values))
    k = int(np.argmax(df))
    if df[k] == 0.0:
        return None
    rest = np.delete(df, [i for i in (k - 1, k, k + 1) if 0 <= i < df.size])
    if rest.size and df[k] <= ratio * rest.max():
        return None
    x = abscissae(curve)
    return 0.5 * (x[k] + x[k + 1])


def gibbs_report(f, h, scheme, levels, domain=(0.0, 1.0), curve=None):
    """Overshoot and far-field error of ``levels`` refinements of sampled ``f``.

    Pass ``curve`` to reuse already sampled data.  Refined values at
    abscissa ``x`` are compared with ``f(x)``: the abscissa convention
    already carries the half-cell shift between samples and limit.
    """
    scheme = SchemeKind.parse(scheme)
    if curve is None:
        start, count = grid_window(domain, h)
        curve = sample(f, h, start, count)
    fine = refine_to_level(curve, scheme, levels=levels)
    lo, hi = float(curve.values.min()), float(curve.values.max())
    v = fine.values
    overshoot = max(0.0, float(v.max()) - hi, lo - float(v.min()))

    xi = locate_jump(curve)
    report = GibbsReport(scheme.value, float(h), int(levels), xi is not None, xi,
                         overshoot, None, None, None, lo, hi)
    if xi is None:
        return report

    x = abscissae(fine)
    radius = GIBBS_RADIUS * h
    far = np.abs(x - xi) >= radius
    if np.any(far):
        report.far_error = sup_norm(v[far] - f(x[far]))
    report.near_band = [xi - radius, xi + radius]
    # near the jump, values should stay within the local data range
    xd = abscissae(curve)
    local = curve.values[np.abs(xd - xi) <= radius + h]
    near = v[~far]
    if near.size:
        report.near_excess = max(0.0, float(near.max() - local.max()),
                                 float(local.min() - near.min()))
    return report


# --------------------------------------------------------------------------
# stability


@dataclass
class StabilityReport:
    scheme: str
    eps: float
    levels: int
    trials: int
    seed: int
    ratios: list
    per_level_max: list
    c_emp: float
    drift: float

    def to_dict(self):
        return asdict(self)


def stability_probe(f, eps, scheme, levels, trials, seed=0,
                    policy=BoundaryPolicy.SHRINK, drift_from=5):
    """Empirical amplification of uniform perturbations of size ``eps``.

    ``ratios[t][j-1] = |S^j f - S^j g_t| / |f - g_t|`` for ``j = 1..levels``,
    where ``g_t = f + U(-eps, eps)``; zero numerators give ratio 0.
    ``drift`` is the largest relative change of a trial's ratio between
    level ``drift_from`` and the last level (0 when ``levels`` is smaller).
    """
    scheme = SchemeKind.parse(scheme)
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    curve = f if isinstance(f, SampledCurve) else SampledCurve(f)
    rng = np.random.default_rng(seed)
    base = refine_to_level(curve, scheme, policy, levels=levels, keep=True)[1:]

    ratios = []
    for _ in range(trials):
        noise = rng.uniform(-eps, eps, size=len(curve)) if eps > 0 else np.zeros(len(curve))
        den = sup_norm(noise)
        other = refine_to_level(curve.replace(values=curve.values + noise),
                                scheme, policy, levels=levels, keep=True)[1:]
        row = []
        for a, b in zip(base, other):
            num = sup_norm(a.values - b.values)
            row.append(num / den if num > 0.0 else 0.0)
        ratios.append(row)

    arr = np.array(ratios).reshape(trials, levels)
    per_level = arr.max(axis=0).tolist() if levels else []
    drift = 0.0
    if levels > drift_from:
        ref, last = arr[:, drift_from - 1], arr[:, -1]
        ok = ref > 0
        if np.any(ok):
            drift = float(np.max((last[ok] - ref[ok]) / ref[ok]))
    return StabilityReport(scheme.value, float(eps), int(levels), int(trials), int(seed),
                           arr.tolist(), per_level, float(arr.max()) if arr.size else 0.0,
                           drift)


# --------------------------------------------------------------------------
# polynomial reproduction


class ReproductionCheck(NamedTuple):
    ok: bool
    max_deviation: float


def check_polynomial_reproduction(coeffs, window=12, seed=0, levels=1):
    """Compare PPHA with the linear four-point scheme on quadratic samples.

    ``coeffs`` are ``(c0, c1, c2)`` of ``c0 + c1 n + c2 n^2`` (shorter
    tuples are zero-padded).  The samples sit at ``window`` consecutive
    integers starting at a seeded random offset in ``[-50, 50]``.
    """
    if window < 4:
        raise LengthError(f"window must hold at least 4 samples, got {window}")
    c = list(coeffs) + [0.0] * (3 - len(coeffs))
    if len(c) > 3:
        raise ValueError("only polynomials of degree <= 2 are reproduced")
    start = int(np.random.default_rng(seed).integers(-50, 51))
    n = np.arange(start, start + window, dtype=float)
    p = c[0] + c[1] * n + c[2] * n * n
    curve = SampledCurve(p, origin=start)
    a = refine_to_level(curve, SchemeKind.PPHA, levels=levels).values
    b = refine_to_level(curve, SchemeKind.LINEAR_SHIFTED_4PT, levels=levels).values
    dev = sup_norm(a - b)
    return ReproductionCheck(dev <= 1e-12 * (1.0 + sup_norm(p)), dev)
