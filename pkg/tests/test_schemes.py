from fractions import Fraction as Fr

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pphsub.errors import LengthError
from pphsub.grid import BoundaryPolicy, SampledCurve, abscissae
from pphsub.pph_core import pph, second_difference
from pphsub.schemes import (
    SchemeKind,
    StencilCase,
    ppha_perturbation,
    refine,
    refine_chaikin,
    refine_linear_shifted,
    refine_ppha,
    refine_ppha_via_chaikin,
    refine_to_level,
)

import oracles

values = st.lists(st.floats(-100, 100, allow_nan=False), min_size=4, max_size=24)
small_ints = st.lists(st.integers(-20, 20), min_size=4, max_size=16)


# --- linear shifted four-point -------------------------------------------

@given(small_ints)
def test_linear_matches_cubic_interpolation_oracle(f):
    expected = [float(v) for v in oracles.linear_shifted(f)]
    np.testing.assert_allclose(refine_linear_shifted(f), expected, rtol=1e-14, atol=1e-13)


def test_linear_examples():
    np.testing.assert_array_equal(refine_linear_shifted([2.5] * 6), [2.5] * 6)
    n = np.arange(8.0)
    out = refine_linear_shifted(n)
    np.testing.assert_array_equal(out[0::2], n[1:-2] + 0.25)
    np.testing.assert_array_equal(out[1::2], n[1:-2] + 0.75)
    step = refine_linear_shifted([0, 0, 0, 1, 1, 1])
    # child 2n of the stencil (0, 0, 0, 1)
    assert step[0] == -5 / 128


# --- Chaikin --------------------------------------------------------------

def test_chaikin_examples():
    np.testing.assert_array_equal(refine_chaikin([0, 1]), [0.25, 0.75])
    np.testing.assert_array_equal(refine_chaikin([3.0] * 4), [3.0] * 6)
    n = np.arange(5.0)
    out = refine_chaikin(n)
    np.testing.assert_array_equal(out[0::2], n[:-1] + 0.25)
    np.testing.assert_array_equal(out[1::2], n[:-1] + 0.75)


def test_length_errors():
    with pytest.raises(LengthError):
        refine_chaikin([1.0])
    for rule in (refine_linear_shifted, refine_ppha):
        with pytest.raises(LengthError):
            rule([1.0, 2.0, 3.0])
    with pytest.raises(LengthError):
        ppha_perturbation([1.0])


# --- PPHA -----------------------------------------------------------------

@given(small_ints)
def test_ppha_matches_exact_oracle(f):
    expected = [float(v) for v in oracles.ppha(f)]
    np.testing.assert_allclose(refine_ppha(f), expected, rtol=1e-13, atol=1e-13)


def test_ppha_on_squares():
    n = np.arange(-3.0, 9.0)
    out = refine_ppha(n ** 2)
    parents = n[1:-2]
    np.testing.assert_array_equal(out[0::2], (parents + 0.25) ** 2)
    np.testing.assert_array_equal(out[1::2], (parents + 0.75) ** 2)


def test_ppha_jump_stencil():
    out = refine_ppha([0, 0, 1, 1])
    np.testing.assert_array_equal(out, [15 / 64, 49 / 64])


def test_ppha_constant():
    np.testing.assert_array_equal(refine_ppha([-1.5] * 7), [-1.5] * 8)


def test_tie_routes_to_first_form():
    assert StencilCase.classify(2.0, -2.0) is StencilCase.FIRST_FORM
    assert StencilCase.classify(2.0, 2.0) is StencilCase.FIRST_FORM
    assert StencilCase.classify(1.0, -2.0) is StencilCase.SECOND_FORM


@pytest.mark.parametrize("f", [
    [0.0, 0.0, 1.0, 1.0],      # d2 = (1, -1)
    [0.0, 1.0, 4.0, 9.0],      # d2 = (2, 2)
    [3.0, -1.0, 2.0, 1.0],     # d2 = (7, -4)
    [0.0, 1.0, 0.0, -3.0],     # d2 = (-2, -2)
])
def test_forms_agree_at_ties(f):
    # the forms differ by (2/64)(mean - pph), which vanishes when |d2_n| = |d2_n+1|
    fm, f0, f1, f2 = f
    dn, dn1 = f1 - 2 * f0 + fm, f2 - 2 * f1 + f0
    p = pph(dn, dn1)
    first = ((49 * f0 + 14 * f1 + f2) / 64 - 7 / 64 * p, (15 * f0 + 50 * f1 - f2) / 64 - 5 / 64 * p)
    second = ((-fm + 50 * f0 + 15 * f1) / 64 - 5 / 64 * p, (fm + 14 * f0 + 49 * f1) / 64 - 7 / 64 * p)
    if abs(dn) == abs(dn1):
        np.testing.assert_allclose(first, second, rtol=1e-15)
    else:
        assert not np.allclose(first, second)
    expected = first if abs(dn) >= abs(dn1) else second
    np.testing.assert_allclose(refine_ppha(f), expected, rtol=1e-15)


def test_perturbation_examples():
    assert ppha_perturbation([2.0, 2.0])[0] == -3 / 16
    assert ppha_perturbation([1.0, -1.0])[0] == -1 / 64
    np.testing.assert_array_equal(ppha_perturbation(np.zeros(6)), np.zeros(10))


def test_perturbation_cross_check_on_squares():
    n = np.arange(0.0, 10.0)
    f = n ** 2
    chaikin_interior = refine_chaikin(f)[2:-2]
    np.testing.assert_allclose(chaikin_interior - refine_ppha(f), 3 / 16, rtol=1e-14)


@given(values)
def test_decomposition(f):
    np.testing.assert_allclose(refine_ppha_via_chaikin(f), refine_ppha(f),
                               rtol=1e-12, atol=1e-12 * (1 + np.max(np.abs(f))))


@given(values)
def test_contraction_of_second_differences(f):
    d_in = np.max(np.abs(second_difference(f)))
    d_out = np.max(np.abs(second_difference(refine_ppha(f)))) if len(f) >= 5 else 0.0
    assert d_out <= 7 / 16 * d_in + 1e-12 * (1 + np.max(np.abs(f)))


@given(st.lists(st.floats(-10, 10), min_size=2, max_size=20))
def test_perturbation_bound(d):
    assert np.max(np.abs(ppha_perturbation(d))) <= 7 / 64 * np.max(np.abs(d)) + 1e-14


@given(st.lists(st.tuples(st.floats(-10, 10), st.floats(-1, 1)), min_size=2, max_size=20))
def test_perturbation_lipschitz(pairs):
    d1 = np.array([p[0] for p in pairs])
    d2 = d1 + np.array([p[1] for p in pairs])
    lhs = np.max(np.abs(ppha_perturbation(d1) - ppha_perturbation(d2)))
    assert lhs <= 15 / 64 * np.max(np.abs(d1 - d2)) + 1e-12


@given(values, st.floats(-50, 50), st.floats(0.01, 10))
def test_offset_scaling_and_sign_covariance(f, c, lam):
    f = np.array(f)
    base = refine_ppha(f)
    tol = 1e-10 * (1 + np.max(np.abs(f)) + abs(c))
    np.testing.assert_allclose(refine_ppha(f + c), base + c, atol=tol)
    np.testing.assert_array_equal(refine_ppha(-f), -base)
    np.testing.assert_allclose(refine_ppha(lam * f), lam * base, rtol=1e-12, atol=tol * lam)


@given(values)
def test_translation_covariance(f):
    f = np.array(f)
    if f.size < 5:
        return
    np.testing.assert_array_equal(refine_ppha(f[1:]), refine_ppha(f)[2:])


@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5), st.integers(-20, 20))
def test_quadratic_reproduction(a, b, c, start):
    n = np.arange(start, start + 10, dtype=float)
    f = a * n * n + b * n + c
    scale = 1 + np.max(np.abs(f))
    np.testing.assert_allclose(refine_ppha(f), refine_linear_shifted(f), atol=1e-12 * scale)


@settings(max_examples=50)
@given(values, values)
def test_lemma_one(fv, gv):
    m = min(len(fv), len(gv))
    d2f = second_difference(fv[:m])
    d2g = second_difference(gv[:m])
    norm = np.max(np.abs(d2f - d2g))
    for n in range(d2f.size - 1):
        if abs(d2f[n]) >= abs(d2f[n + 1]) and abs(d2g[n + 1]) >= abs(d2g[n]):
            lhs = abs(d2f[n + 1] + d2g[n] - 2 * pph(d2g[n], d2g[n + 1]))
            assert lhs <= 3 * norm + 1e-9


def test_lemma_one_filtered_fuzz():
    rng = np.random.default_rng(11)
    hits = 0
    for _ in range(5000):
        df = rng.uniform(-1, 1, 2)
        dg = df + rng.uniform(-0.3, 0.3, 2) * rng.choice([1e-3, 1.0])
        if abs(df[0]) >= abs(df[1]) and abs(dg[1]) >= abs(dg[0]):
            hits += 1
            lhs = abs(df[1] + dg[0] - 2 * pph(dg[0], dg[1]))
            assert lhs <= 3 * np.max(np.abs(df - dg)) + 1e-15
    assert hits > 100


# --- arithmetic variant and dispatch -------------------------------------

@given(values)
def test_arithmetic_variant_equals_linear(f):
    c = SampledCurve(f)
    a = refine(c, SchemeKind.PPHA_ARITHMETIC).values
    b = refine(c, SchemeKind.LINEAR_SHIFTED_4PT).values
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-12 * (1 + np.max(np.abs(f))))


@pytest.mark.parametrize("scheme", list(SchemeKind))
@pytest.mark.parametrize("policy", list(BoundaryPolicy))
def test_constant_curve_stays_constant(scheme, policy):
    c = SampledCurve([4.25] * 9, origin=-2)
    r = refine(c, scheme, policy)
    np.testing.assert_array_equal(r.values, 4.25)
    assert r.level == 1


def test_refine_bookkeeping():
    c = SampledCurve(np.arange(10.0), level=2, base_spacing=0.5, origin=7)
    r = refine(c, "ppha")
    assert (r.level, r.origin, len(r)) == (3, 16, 14)
    r = refine(c, "chaikin")
    assert (r.level, r.origin, len(r)) == (3, 14, 18)
    r = refine(c, "linear4", "periodic")
    assert (r.origin, len(r)) == (14, 20)


def test_periodic_refinement_is_periodic():
    x = np.arange(12) / 12
    c = SampledCurve(np.sin(2 * np.pi * x))
    r = refine(c, "ppha", "periodic")
    # rolling the input by one sample rolls the output by two
    r2 = refine(SampledCurve(np.roll(c.values, -1)), "ppha", "periodic")
    np.testing.assert_allclose(np.roll(r.values, -2), r2.values, atol=1e-15)


def test_refine_to_level():
    c = SampledCurve(np.arange(12.0) ** 2, base_spacing=0.25)
    assert refine_to_level(c, "ppha", levels=0) is c
    history = refine_to_level(c, "ppha", levels=3, keep=True)
    assert [h.level for h in history] == [0, 1, 2, 3]
    assert [len(h) for h in history] == [12, 18, 30, 54]


def test_refine_to_level_names_exhausted_level():
    c = SampledCurve(np.arange(5.0))
    with pytest.raises(LengthError, match="after 2 of 3 levels"):
        refine_to_level(c, "ppha", levels=3)


def test_quadratic_three_levels_are_exact_samples():
    def p(x):
        return 1.5 * x * x - 2.0 * x + 0.25
    c = SampledCurve(np.zeros(14), base_spacing=0.5, origin=-3)
    c = c.replace(values=p(abscissae(c)))
    a = refine_to_level(c, "ppha", levels=3)
    b = refine_to_level(c, "linear4", levels=3)
    np.testing.assert_allclose(a.values, p(abscissae(a)), atol=1e-12)
    np.testing.assert_allclose(a.values, b.values, atol=1e-12)


def test_step_refinement_stays_monotone_in_unit_interval():
    c = SampledCurve(np.r_[np.zeros(6), np.ones(6)])
    for level in refine_to_level(c, "ppha", levels=8, keep=True):
        v = level.values
        assert v.min() >= 0.0 and v.max() <= 1.0
        assert np.all(np.diff(v) >= 0.0)
