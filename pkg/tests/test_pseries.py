import pytest

from app.core.utils.errors import AmbiguousBranch, NonzeroConstantTerm, ZeroConstantTerm, ZeroLinearTerm
from app.models.series import ComplexSeries
from app.services.pseries import SeriesEngine

TOL = 1e-50


def series(ctx, *coefficients):
    return ComplexSeries(ctx, coefficients)


def assert_coefficients(ctx, result, expected):
    assert result.order == len(expected)
    for got, want in zip(result, expected):
        assert abs(got - ctx.mpc(want)) < TOL


def test_mul_truncates_to_common_order(ctx):
    a = series(ctx, 1, 1, 0, 0)
    b = series(ctx, 1, -1, 0)
    assert_coefficients(ctx, SeriesEngine.mul(a, b), [1, 0, -1])


def test_add_and_scale(ctx):
    a = series(ctx, 1, 2, 3)
    b = series(ctx, 0, 1j, 0)
    assert_coefficients(ctx, SeriesEngine.add(a, b), [1, 2 + 1j, 3])
    assert_coefficients(ctx, SeriesEngine.scale(a, 2), [2, 4, 6])


def test_div_geometric(ctx):
    one = ComplexSeries.constant(ctx, 1, 8)
    q = SeriesEngine.div(one, series(ctx, 1, -1, 0, 0, 0, 0, 0, 0))
    assert_coefficients(ctx, q, [1] * 8)


def test_div_by_zero_constant(ctx):
    with pytest.raises(ZeroConstantTerm):
        SeriesEngine.div(series(ctx, 1, 0), series(ctx, 0, 1))


def test_log1p_compose(ctx):
    result = SeriesEngine.log1p_compose(ComplexSeries.variable(ctx, 7))
    assert_coefficients(ctx, result, [0] + [ctx.mpf((-1) ** (k - 1)) / k for k in range(1, 7)])


def test_log1p_needs_zero_constant(ctx):
    with pytest.raises(NonzeroConstantTerm):
        SeriesEngine.log1p_compose(series(ctx, 1, 1, 0))


def test_compose_identity(ctx):
    # exp(log(1 + t)) - 1 = t
    order = 10
    result = SeriesEngine.compose(SeriesEngine.exp_minus_one(ctx, order),
                                  SeriesEngine.log1p_compose(ComplexSeries.variable(ctx, order)))
    assert_coefficients(ctx, result, [0, 1] + [0] * (order - 2))


@pytest.mark.parametrize(
    "target,expected",
    [
        (1, [1, 0.5, -0.125, 0.0625]),
        (-1, [-1, -0.5, 0.125, -0.0625]),
    ],
)
def test_sqrt_series_branch(ctx, target, expected):
    assert_coefficients(ctx, SeriesEngine.sqrt_series(series(ctx, 1, 1, 0, 0), target), expected)


def test_sqrt_series_squares_back(ctx):
    a = series(ctx, 2 + 1j, 3, -1j, 0.5, 4, 0)
    root = SeriesEngine.sqrt_series(a, 1)
    assert SeriesEngine.max_residual(root * root, a) < TOL


def test_sqrt_series_refuses_equidistant_target(ctx):
    with pytest.raises(AmbiguousBranch):
        SeriesEngine.sqrt_series(series(ctx, 1, 1), 1j)


def test_sqrt_series_zero_constant(ctx):
    with pytest.raises(ZeroConstantTerm):
        SeriesEngine.sqrt_series(series(ctx, 0, 1), 1)


@pytest.mark.parametrize("order", [2, 5, 12, 33])
def test_revert_exp_gives_log(ctx, order):
    u = SeriesEngine.revert(SeriesEngine.exp_minus_one(ctx, order))
    assert_coefficients(ctx, u, [0] + [ctx.mpf((-1) ** (k - 1)) / k for k in range(1, order)])


def test_revert_is_compositional_inverse(ctx):
    w = series(ctx, 0, 2 - 1j, 0.25, 1j, -3, 0.5, 0, 1, 0, 0)
    u = SeriesEngine.revert(w)
    assert SeriesEngine.max_residual(SeriesEngine.compose(w, u), ComplexSeries.variable(ctx, w.order)) < TOL


@pytest.mark.parametrize(
    "coefficients,error",
    [
        ([1, 1, 0], NonzeroConstantTerm),
        ([0, 0, 1], ZeroLinearTerm),
    ],
)
def test_revert_errors(ctx, coefficients, error):
    with pytest.raises(error):
        SeriesEngine.revert(series(ctx, *coefficients))


def test_deriv_and_truncate(ctx):
    a = series(ctx, 5, 1, 2, 3)
    assert_coefficients(ctx, a.deriv(), [1, 4, 9])
    assert_coefficients(ctx, a.truncate(2), [5, 1])
