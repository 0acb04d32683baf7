import pytest

from app.config import PrecisionConfig
from app.core.utils.errors import PoleArgument
from app.core.utils.helpers import matches_printed
from app.models.rational import ComplexRational
from app.services.saddle import SaddleEngine
from tests.conftest import close

GRID = [
    ("2", 0), ("3", 0), ("3/2", 0), ("5/4", 0),
    ("1/2", -1), ("3/4", -1), ("3/5", -1), ("9/10", -1),
    ("2,1", 0), ("3/4,1", 0), ("2/3,1/4", 0), ("1,1", 0),
]

# A_k at z = 2/3 + i/4, saddle s_0
PRINTED_A = {
    1: ("-1.0029378942e-1", "-1.8804724469e-2"),
    2: ("-3.7372334426e-3", "-5.5650719166e-4"),
    3: ("1.8095948417e-5", "1.5684946154e-4"),
    4: ("5.9175620462e-5", "1.3608152444e-4"),
    5: ("5.6624929259e-6", "5.2629558202e-6"),
    # printed with exponent -3
    6: ("3.2408350155e-6", "-2.4032813980e-6"),
    7: ("8.6041310199e-8", "-2.5286915962e-7"),
    8: ("-1.0224648657e-7", "-8.6048696324e-8"),
    # printed as -3.2178913880e-10
    9: ("-8.4341941837e-9", "-3.2178913877e-10"),
}


def context(z, k, config):
    return SaddleEngine.make_context(ComplexRational.parse(z), k, config)


def test_saddle_point_real(ctx, config):
    assert close(ctx, SaddleEngine.saddle_point(2, 0, config), ctx.log(2), 1e-55)


def test_saddle_point_unit_interval(ctx, config):
    s = SaddleEngine.saddle_point(ComplexRational.parse("3/4"), -1, config)
    assert close(ctx, s, ctx.mpc(ctx.log(3), -ctx.pi), 1e-55)


@pytest.mark.parametrize("z", [0, 1])
def test_saddle_point_pole(config, z):
    with pytest.raises(PoleArgument):
        SaddleEngine.saddle_point(z, 0, config)


def test_context_real_pair(ctx, config):
    sctx = context("3/4", -1, config)
    assert close(ctx, sctx.L * ctx.expj(-sctx.omega), sctx.s, 1e-55)
    assert context("2", 0, config).L is None


def test_half_has_omega_pi_over_two(ctx, config):
    assert close(ctx, context("1/2", -1, config).omega, ctx.pi / 2, 1e-55)


@pytest.mark.parametrize("z,k", GRID)
def test_phase_series_starts_at_second_order(ctx, config, z, k):
    sctx = context(z, k, config)
    phase = SaddleEngine.phase_series(sctx, 6)
    assert phase[0] == 0
    assert abs(phase[1]) < 1e-50
    assert close(ctx, phase[2], sctx.psi2 / 2, 1e-50)


@pytest.mark.parametrize("z,k", GRID)
def test_engine_matches_closed_forms(config, z, k):
    coefficients = SaddleEngine.expansion_coefficients(context(z, k, config), 3, config)
    assert coefficients[0] == 1
    assert sorted(coefficients.closed_form_deltas) == [1, 2, 3]
    assert all(delta < 1e-40 for delta in coefficients.closed_form_deltas.values())


def test_a1_at_two(ctx, config):
    a1 = SaddleEngine.expansion_coefficients(context("2", 0, config), 1, config)[1]
    assert abs(a1.imag) < 1e-50
    assert abs(a1.real + 0.08366) < 1e-4


@pytest.mark.parametrize("z,k", [("2", 0), ("2/3,1/4", 0), ("3/4", -1)])
def test_g0_matches_prefactor_identity(ctx, config, z, k):
    sctx = context(z, k, config)
    g0 = SaddleEngine.expansion_coefficients(sctx, 1, config).g0
    identity = SaddleEngine.prefactor_identity(sctx)
    assert min(abs(g0 - identity), abs(g0 + identity)) < 1e-50 * abs(identity)


def test_branch_verification_passes(config):
    checked = PrecisionConfig(dps=config.dps, verify_branches=True)
    values = SaddleEngine.expansion_coefficients(context("2/3,1/4", 0, checked), 6, checked).values
    plain = SaddleEngine.expansion_coefficients(context("2/3,1/4", 0, config), 6, config).values
    assert all(abs(a - b) < 1e-45 for a, b in zip(values, plain))


@pytest.mark.parametrize("k", sorted(PRINTED_A))
def test_printed_coefficients(config, k):
    a = SaddleEngine.expansion_coefficients(context("2/3,1/4", 0, config), 9, config)[k]
    re, im = PRINTED_A[k]
    assert matches_printed(a.real, re)
    assert matches_printed(a.imag, im)


def test_ninth_coefficient_beyond_printed_digits(config):
    a = SaddleEngine.expansion_coefficients(context("2/3,1/4", 0, config), 9, config)[9]
    assert matches_printed(a.imag, "-3.21789138766e-10")
    assert not matches_printed(a.imag, "-3.2178913880e-10")


@pytest.mark.parametrize("x", ["3/4", "3/5", "1/3", "9/10"])
def test_conjugate_saddles_have_conjugate_coefficients(ctx, config, x):
    upper, lower = context(x, 0, config), context(x, -1, config)
    assert close(ctx, upper.s, ctx.conj(lower.s), 1e-55)
    a = SaddleEngine.expansion_coefficients(upper, 10, config).values
    b = SaddleEngine.expansion_coefficients(lower, 10, config).values
    for k in range(11):
        assert abs(a[k] - ctx.conj(b[k])) <= 1e-40 * abs(a[k]), k


@pytest.mark.parametrize("x", ["3/4", "3/5", "9/10", "1/3"])
def test_a1_split_at_lower_saddle(ctx, config, x):
    sctx = context(x, -1, config)
    a1 = SaddleEngine.expansion_coefficients(sctx, 1, config)[1]
    re, im = SaddleEngine.closed_form_A1_parts(sctx)
    assert close(ctx, a1, ctx.mpc(re, im), 1e-45)


def test_a1_split_at_half_is_real(ctx, config):
    sctx = context("1/2", -1, config)
    re, im = SaddleEngine.closed_form_A1_parts(sctx)
    assert abs(im) < 1e-55
    assert close(ctx, re, -SaddleEngine.closed_form_C(1, ctx), 1e-50)


def test_a1_split_needs_lower_real_saddle(config):
    with pytest.raises(ValueError):
        SaddleEngine.closed_form_A1_parts(context("2", 0, config))
    with pytest.raises(ValueError):
        SaddleEngine.closed_form_A1_parts(context("3/4", 0, config))


@pytest.mark.parametrize("x", ["2", "3", "5/4", "3/2", "11/10"])
def test_coefficients_real_beyond_one(config, x):
    values = SaddleEngine.expansion_coefficients(context(x, 0, config), 10, config).values
    for k, a in enumerate(values):
        assert abs(a.imag) <= 1e-40 * abs(a), k


def test_midpoint_coefficients_match_closed_forms(ctx, config):
    engine = SaddleEngine.midpoint_coefficients(5, config)
    for k in range(6):
        closed = SaddleEngine.closed_form_C(k, ctx)
        assert abs(engine[k] - closed) <= 1e-40 * abs(closed)


def test_closed_form_c1(ctx):
    assert close(ctx, SaddleEngine.closed_form_C(1, ctx), (16 - ctx.pi ** 2) / (4 * ctx.pi ** 2), 1e-55)


@pytest.mark.parametrize("k", [0, 4])
def test_closed_form_limits(ctx, k):
    with pytest.raises(ValueError):
        SaddleEngine.closed_form_A(2, ctx.log(2), k, ctx)
    with pytest.raises(ValueError):
        SaddleEngine.closed_form_C(k + 6, ctx)


def test_upsilon_is_palindromic(ctx):
    h = ctx.mpc(2, 1)
    assert close(ctx, SaddleEngine.upsilon(h, ctx), h ** 6 * SaddleEngine.upsilon(1 / h, ctx), 1e-55)
