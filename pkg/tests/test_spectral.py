import io
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from logmeans.analysis import random_trig_polynomial
from logmeans.kernels import log_weight
from logmeans.io import read_coefficients, read_field, write_coefficients, write_field
from logmeans.spectral import (
    AxisPlan,
    CoefficientGrid,
    SampledField,
    Treatment,
    analyze,
    apply_mixed_means,
    brute_force_means,
    field_means,
    l1_norm,
    multiplier,
    norlund_multiplier,
    partial_sum,
    riesz_multiplier,
    synthesize,
)


def partial_sum_weights(n, kind):
    """Weight of frequency j in the literal average of S_0..S_n, exact arithmetic."""
    l_n = sum(Fraction(1, k + 1) for k in range(n + 1))
    out = []
    for j in range(n + 1):
        if kind == "norlund":
            total = sum(Fraction(1, k + 1) for k in range(n + 1) if n - k >= j)
        else:
            total = sum(Fraction(1, k + 1) for k in range(n + 1) if k >= j)
        out.append(float(total / l_n))
    return np.array(out)


def random_grid(rng, degrees, real=False):
    shape = tuple(2 * n + 1 for n in degrees)
    raw = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    if real:
        raw = (raw + np.conj(raw[(slice(None, None, -1),) * raw.ndim])) / 2
    return CoefficientGrid(raw, real=real)


def test_multiplier_examples():
    np.testing.assert_array_equal(norlund_multiplier(0), [1.0])
    np.testing.assert_array_equal(riesz_multiplier(0), [1.0])
    np.testing.assert_allclose(norlund_multiplier(1), [1, 2 / 3], atol=1e-15)
    np.testing.assert_allclose(riesz_multiplier(1), [1, 1 / 3], atol=1e-15)


@pytest.mark.parametrize("n", [2, 5, 32])
def test_multipliers_match_partial_sum_oracle(n):
    np.testing.assert_allclose(norlund_multiplier(n), partial_sum_weights(n, "norlund"), rtol=0, atol=1e-13)
    np.testing.assert_allclose(riesz_multiplier(n), partial_sum_weights(n, "riesz"), rtol=0, atol=1e-13)


@pytest.mark.parametrize("n", [0, 1, 7, 64, 1000])
def test_multiplier_shape(n):
    for w in (norlund_multiplier(n), riesz_multiplier(n)):
        assert w.shape == (n + 1,)
        assert w[0] == 1.0
        assert np.all((w >= 0) & (w <= 1))
        assert np.all(np.diff(w) <= 0)
    assert norlund_multiplier(n)[-1] == pytest.approx(1 / log_weight(n), rel=1e-15)


def test_multiplier_vanishes_above_order():
    freqs = np.arange(-6, 7)
    for t in Treatment:
        w = multiplier(t, 3, freqs)
        assert np.all(w[np.abs(freqs) > 3] == 0)
        np.testing.assert_array_equal(w, w[::-1])


def test_multipliers_converge_to_one_monotonically():
    orders = np.arange(10, 10_001, 10)
    for j in (1, 2, 5):
        lam = np.array([multiplier(Treatment.NORLUND, int(n), [j])[0] for n in orders])
        r = np.array([multiplier(Treatment.RIESZ, int(n), [j])[0] for n in orders])
        assert np.all(np.diff(lam) >= 0) and np.all(np.diff(r) >= 0)
        assert 1 - lam[-1] < 1e-3
        # Riesz weights approach 1 only like 1 / log n
        assert 1 - r[-1] < 0.25


def test_huge_order_multipliers():
    n = 2**80
    freqs = np.arange(0, 5)
    lam = multiplier(Treatment.NORLUND, n, freqs)
    r = multiplier(Treatment.RIESZ, n, freqs)
    np.testing.assert_allclose(lam, 1.0, atol=1e-15)
    l_n = float(np.log(2.0**80)) + np.euler_gamma
    expected = 1 - np.array([0, 1, 1.5, 11 / 6, 25 / 12]) / l_n
    np.testing.assert_allclose(r, expected, rtol=1e-12)


def test_partial_sum_examples():
    rng = np.random.default_rng(1)
    c = random_grid(rng, (3, 3))
    assert np.array_equal(partial_sum(c, (3, 3)).coeffs, c.coeffs)
    only_const = partial_sum(c, 0).coeffs
    assert np.count_nonzero(only_const) == 1 and only_const[3, 3] == c.coeffs[3, 3]
    s = partial_sum(c, (1, 2)).coeffs
    j1, j2 = np.meshgrid(np.arange(-3, 4), np.arange(-3, 4), indexing="ij")
    inside = (np.abs(j1) <= 1) & (np.abs(j2) <= 2)
    assert np.array_equal(s[inside], c.coeffs[inside])
    assert np.all(s[~inside] == 0)
    with pytest.raises(ValueError):
        partial_sum(c, (4, 0))


def test_means_of_constant_and_cosine():
    const = CoefficientGrid(np.full((1, 1), 3.0), real=True)
    plan = AxisPlan.from_string("LR", (5, 9))
    assert np.array_equal(apply_mixed_means(const, plan).coeffs, const.coeffs)

    cos = CoefficientGrid([0.5, 0, 0.5], real=True)
    out = apply_mixed_means(cos, AxisPlan.from_string("L", 1))
    np.testing.assert_allclose(out.coeffs, [1 / 3, 0, 1 / 3], atol=1e-15)


def test_means_are_separable():
    rng = np.random.default_rng(2)
    a, b = random_grid(rng, (4,)), random_grid(rng, (3,))
    joint = apply_mixed_means(CoefficientGrid.tensor([a.coeffs, b.coeffs]), AxisPlan.from_string("LR", (3, 2)))
    one = apply_mixed_means(a, AxisPlan.from_string("L", 3)).coeffs
    two = apply_mixed_means(b, AxisPlan.from_string("R", 2)).coeffs
    np.testing.assert_allclose(joint.coeffs, np.multiply.outer(one, two), atol=1e-14)


def test_brute_force_examples():
    rng = np.random.default_rng(3)
    c = random_grid(rng, (2, 2))
    zero = brute_force_means(c, AxisPlan.from_string("LR", 0))
    np.testing.assert_allclose(zero.coeffs, partial_sum(c, 0).coeffs, atol=1e-15)

    c1 = random_grid(rng, (3,))
    plan = AxisPlan.from_string("L", 1)
    np.testing.assert_allclose(brute_force_means(c1, plan).coeffs, apply_mixed_means(c1, plan).coeffs, atol=1e-13)

    c2 = random_grid(rng, (4, 4))
    plan = AxisPlan.from_string("LR", (3, 2))
    np.testing.assert_allclose(brute_force_means(c2, plan).coeffs, apply_mixed_means(c2, plan).coeffs, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(
    axes=st.sampled_from(["L", "R", "LL", "LR", "RL", "RR"]),
    data=st.data(),
)
def test_closed_form_equals_brute_force(axes, data):
    d = len(axes)
    top = 64 if d == 1 else 12
    orders = tuple(data.draw(st.integers(0, top)) for _ in range(d))
    degrees = tuple(data.draw(st.integers(0, 10)) for _ in range(d))
    seed = data.draw(st.integers(0, 2**32 - 1))
    c = random_grid(np.random.default_rng(seed), degrees)
    plan = AxisPlan.from_string(axes, orders)
    np.testing.assert_allclose(
        apply_mixed_means(c, plan).coeffs, brute_force_means(c, plan).coeffs, rtol=0, atol=1e-12
    )


def test_means_linear_and_axis_order_independent():
    rng = np.random.default_rng(4)
    f, g = random_grid(rng, (6, 5)), random_grid(rng, (6, 5))
    plan = AxisPlan.from_string("RL", (7, 4))
    alpha, beta = 1.7 - 0.3j, -0.4
    lhs = apply_mixed_means(f.with_coeffs(alpha * f.coeffs + beta * g.coeffs), plan).coeffs
    rhs = alpha * apply_mixed_means(f, plan).coeffs + beta * apply_mixed_means(g, plan).coeffs
    np.testing.assert_allclose(lhs, rhs, rtol=0, atol=1e-12)
    forward = apply_mixed_means(f, plan, axis_order=(0, 1)).coeffs
    backward = apply_mixed_means(f, plan, axis_order=(1, 0)).coeffs
    assert np.array_equal(forward, backward)


def test_hermitian_symmetry_preserved():
    c = random_trig_polynomial((5, 3), seed=9)
    out = apply_mixed_means(c, AxisPlan.from_string("LR", (4, 6)))
    assert out.real
    CoefficientGrid(out.coeffs, real=True)
    assert partial_sum(c, (2, 1)).real


def test_mismatched_plan_rejected():
    with pytest.raises(ValueError):
        apply_mixed_means(CoefficientGrid.zeros((2, 2)), AxisPlan.from_string("L", 3))
    with pytest.raises(ValueError):
        AxisPlan.from_string("LX", 3)


def test_grid_validation():
    with pytest.raises(ValueError):
        CoefficientGrid(np.zeros(4))
    with pytest.raises(ValueError):
        CoefficientGrid([0, 1.0, 1j], real=True)
    c = CoefficientGrid([1j, 2.0, -1j], real=True)
    assert c.coeff(1) == -1j and c.coeff(5) == 0
    with pytest.raises(ValueError):
        c.coeffs[0] = 3


def test_synthesize_examples():
    const = synthesize(CoefficientGrid([2.5], real=True), (8,))
    np.testing.assert_allclose(const.samples, 2.5)
    cos = synthesize(CoefficientGrid([0.5, 0, 0.5], real=True), (16,))
    np.testing.assert_allclose(cos.samples, np.cos(cos.grid(0)), atol=1e-15)


def test_synthesize_matches_direct_double_sum():
    rng = np.random.default_rng(5)
    c = random_grid(rng, (4, 3))
    field = synthesize(c, (11, 9))
    x1, x2 = field.grid(0), field.grid(1)
    expected = np.zeros((11, 9), dtype=complex)
    for a, j1 in enumerate(range(-4, 5)):
        for b, j2 in enumerate(range(-3, 4)):
            expected += c.coeffs[a, b] * np.exp(1j * np.add.outer(j1 * x1, j2 * x2))
    np.testing.assert_allclose(field.samples, expected, atol=1e-11)
    np.testing.assert_allclose(synthesize(c, (11, 9), method="direct").samples, field.samples, atol=1e-10)


def test_synthesize_rejects_under_resolved_grid():
    with pytest.raises(ValueError):
        synthesize(CoefficientGrid.zeros((4,)), (8,))
    assert synthesize(CoefficientGrid.zeros((4,))).resolution == (32,)


def test_analyze_cosine():
    field = SampledField.from_function(np.cos, (16,))
    c = analyze(field, 2)
    np.testing.assert_allclose(c.coeffs, [0, 0.5, 0, 0.5, 0], atol=1e-12)
    with pytest.raises(ValueError):
        analyze(field, 8)


@settings(max_examples=25, deadline=None)
@given(d1=st.integers(0, 6), d2=st.integers(0, 6), seed=st.integers(0, 1000), real=st.booleans())
def test_round_trip(d1, d2, seed, real):
    c = random_grid(np.random.default_rng(seed), (d1, d2), real=real)
    back = analyze(synthesize(c), (d1, d2))
    np.testing.assert_allclose(back.coeffs, c.coeffs, atol=1e-12)


def test_analyze_step_function_against_analytic_coefficients():
    a, b = -1.0, 0.5
    errors = []
    for g in (1024, 4096):
        field = SampledField.from_function(lambda x: ((x >= a) & (x < b)).astype(float), (g,))
        c = analyze(field, 5)
        j = np.arange(-5, 6)
        exact = np.where(
            j == 0,
            (b - a) / (2 * np.pi),
            (np.exp(-1j * np.where(j == 0, 1, j) * a) - np.exp(-1j * np.where(j == 0, 1, j) * b))
            / (2j * np.pi * np.where(j == 0, 1, j)),
        )
        errors.append(np.abs(c.coeffs - exact).max())
    assert errors[0] < 2.0 / 1024
    assert errors[1] < errors[0] / 2


def test_l1_norm_examples():
    assert l1_norm(SampledField(np.ones(64))) == pytest.approx(2 * np.pi, rel=1e-15)
    assert l1_norm(SampledField.from_function(np.cos, (4096,))) == pytest.approx(4.0, abs=1e-6)
    g = SampledField.from_function(lambda x: np.sin(x) + 0.3, (512,))
    h = SampledField.from_function(lambda x: np.cos(2 * x) - 0.1, (256,))
    product = SampledField(np.multiply.outer(g.samples, h.samples))
    assert l1_norm(product) == pytest.approx(l1_norm(g) * l1_norm(h), rel=1e-8)


def test_field_grid_metadata():
    field = SampledField(np.zeros((8, 6)))
    assert field.spacing(0) == 2 * np.pi / 8 and field.spacing(1) == 2 * np.pi / 6
    assert field.grid(1)[0] == -np.pi
    assert field.samples.size == 48


def test_field_means_reproduces_multiplier_path():
    c = random_trig_polynomial((6,), seed=3)
    plan = AxisPlan.from_string("R", 4)
    direct = synthesize(apply_mixed_means(c, plan), (64,))
    via_field = field_means(synthesize(c, (64,)), plan)
    np.testing.assert_allclose(via_field.samples, direct.samples, atol=1e-12)


def test_csv_round_trip():
    c = random_grid(np.random.default_rng(6), (2, 1))
    buf = io.StringIO()
    write_coefficients(c, buf)
    text = buf.getvalue()
    assert text.splitlines()[0] == "j1,j2,real,imag"
    assert text.splitlines()[1].startswith("-2,-1,")
    back = read_coefficients(io.StringIO(text))
    assert np.array_equal(back.coeffs, c.coeffs)

    field = synthesize(random_trig_polynomial((3,), seed=2), (9,))
    buf = io.StringIO()
    write_field(field, buf)
    assert buf.getvalue().splitlines()[0] == "k1,real,imag"
    assert np.array_equal(read_field(io.StringIO(buf.getvalue())).samples, field.samples)
