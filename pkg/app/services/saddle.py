"""
saddle.py

Saddle-point geometry of psi(s) = log(e^s - 1) - s z and the expansion-coefficient engine.

The engine produces A_k for any k by
    1/2 w^2 = psi(s_k + u) - psi(s_k)      (defines w(u), via a square root)
    u(w) = reversion of w(u)
    g(w) = u'(w) / (s_k + u(w))
    A_k = g_{2k} / g_0
Only even coefficients of g enter, so A_k does not depend on the sign chosen for w.
"""
import logging

from app.config import PrecisionConfig
from app.core.utils.errors import PoleArgument, PrecisionFailure
from app.models.rational import to_bigcomplex
from app.models.saddle import CoefficientSet, SaddleContext
from app.models.series import ComplexSeries
from app.services.pseries import SeriesEngine

logger = logging.getLogger(__name__)


class SaddleEngine:

    @classmethod
    def saddle_point(cls, z, k: int, config: PrecisionConfig | None = None):
        """ s_k = Log(z/(z-1)) + 2 pi i k, principal logarithm """
        config = config or PrecisionConfig()
        ctx = config.context
        z = to_bigcomplex(z, ctx)
        if z == 0 or z == 1:
            raise PoleArgument(f"no saddle for z = {ctx.nstr(z, 8)}", z=z)
        return ctx.log(z / (z - 1)) + 2 * ctx.pi * ctx.j * k

    @classmethod
    def make_context(cls, z, k: int, config: PrecisionConfig | None = None) -> SaddleContext:
        config = config or PrecisionConfig()
        ctx = config.context
        z = to_bigcomplex(z, ctx)
        s = cls.saddle_point(z, k, config)
        h = z / (z - 1)
        L = omega = None
        if z.imag == 0 and 0 < z.real < 1:
            # with h_r = x/(1-x) > 0 the pair of saddles is log h_r -/+ pi i = L e^{-/+ i omega}
            log_hr = ctx.log(z.real / (1 - z.real))
            L = ctx.sqrt(log_hr ** 2 + ctx.pi ** 2)
            omega = ctx.atan2(ctx.pi, log_hr)
        return SaddleContext(z=z, h=h, k_index=k, s=s, L=L, omega=omega, dps=config.dps)

    @classmethod
    def phase_series(cls, sctx: SaddleContext, order: int) -> ComplexSeries:
        """
        psi(s_k + u) - psi(s_k) in powers of u.

        Since e^{s_k} = h and h/(h-1) = z,
            (e^{s_k+u} - 1)/(e^{s_k} - 1) = (h e^u - 1)/(h - 1) = 1 + z(e^u - 1),
        so the series is log(1 + z(e^u - 1)) - z u, independent of k.
        """
        if order < 3:
            raise ValueError("order must be at least 3")
        ctx = sctx.ctx
        z = sctx.z
        inner = SeriesEngine.exp_minus_one(ctx, order).scale(z)
        series = SeriesEngine.log1p_compose(inner) - ComplexSeries.variable(ctx, order).scale(z)

        tolerance = ctx.mpf(10) ** (10 - ctx.dps)
        scale = max(1, abs(z))
        if abs(series[0]) > tolerance * scale or abs(series[1]) > tolerance * scale:
            raise PrecisionFailure("phase series does not vanish to second order at the saddle",
                                   constant=series[0], linear=series[1])
        return series.with_constant(0).truncate(order)

    @classmethod
    def _branch_target(cls, ctx, psi2):
        """
        Root of psi'' fixing w(u): the one with negative imaginary part (positive real part if it is real). For the
        s_0 saddle with x > 1 this makes the linear coefficient of u(w) positive imaginary.
        """
        root = ctx.sqrt(psi2)
        if root.imag > 0 or (root.imag == 0 and root.real < 0):
            root = -root
        return root

    @classmethod
    def _g_series(cls, sctx: SaddleContext, order: int, flip_branch: bool = False) -> ComplexSeries:
        ctx = sctx.ctx
        phase = cls.phase_series(sctx, order + 1)
        # 1/2 w^2 = u^2 phi(u)  =>  w = u sqrt(2 phi(u))
        two_phi = phase.shifted_down(2).scale(2)
        target = cls._branch_target(ctx, two_phi[0])
        root = SeriesEngine.sqrt_series(two_phi, -target if flip_branch else target)
        w = ComplexSeries._wrap(ctx, (ctx.mpc(0),) + root.coefficients)
        u = SeriesEngine.revert(w)
        du = u.deriv()
        return SeriesEngine.div(du, u.with_constant(sctx.s).truncate(du.order))

    @classmethod
    def expansion_coefficients(cls, sctx: SaddleContext, K: int,
                               config: PrecisionConfig | None = None) -> CoefficientSet:
        """ A_0..A_K at the saddle of `sctx`, with engine-vs-closed-form deltas for k <= 3 """
        if K < 0:
            raise ValueError("K must be non-negative")
        config = config or PrecisionConfig(dps=sctx.dps)
        ctx = sctx.ctx
        g = cls._g_series(sctx, config.series_order(K))
        g0 = g[0]
        values = [g[2 * k] / g0 for k in range(K + 1)]
        values[0] = ctx.mpc(1)

        if config.verify_branches:
            g_other = cls._g_series(sctx, config.series_order(K), flip_branch=True)
            spread = max((abs(g_other[2 * k] / g_other[0] - values[k]) for k in range(K + 1)), default=0)
            logger.debug("branch verification at z=%s k=%d: max |dA| = %s", ctx.nstr(sctx.z, 10), sctx.k_index,
                         ctx.nstr(spread, 5))
            if spread > config.tolerance(slack=20):
                raise PrecisionFailure("A_k depends on the square-root branch", spread=spread)

        deltas = {}
        for k in range(1, min(K, 3) + 1):
            closed = cls.closed_form_A(sctx.h, sctx.s, k, ctx)
            deltas[k] = abs(values[k] - closed) / abs(closed)
        if deltas:
            logger.debug("closed-form deltas at z=%s k=%d: %s", ctx.nstr(sctx.z, 10), sctx.k_index,
                         {k: ctx.nstr(v, 3) for k, v in deltas.items()})
        return CoefficientSet(values=values, g0=g0, saddle=sctx, closed_form_deltas=deltas)

    @classmethod
    def prefactor_identity(cls, sctx: SaddleContext):
        """ Closed form of g0 up to sign: i (h - 1) / (s h^(1/2)) """
        ctx = sctx.ctx
        return ctx.j * (sctx.h - 1) / (sctx.s * ctx.sqrt(sctx.h))

    @classmethod
    def closed_form_A(cls, h, lam, k: int, ctx):
        """ The printed closed forms of A_1, A_2, A_3 as functions of h = e^s and lambda = s """
        h = ctx.mpc(h)
        r = 1 / ctx.mpc(lam)
        hm1, hp1 = h - 1, h + 1
        if k == 1:
            return (-(1 - h + h ** 2) + 6 * (h ** 2 - 1) * r - 12 * hm1 ** 2 * r ** 2) / (12 * h)
        if k == 2:
            total = ((1 - h + h ** 2) ** 2
                     - 12 * r * (h ** 2 - 1) * (3 - 5 * h + 3 * h ** 2)
                     + 120 * r ** 2 * hm1 ** 2 * (2 + h + 2 * h ** 2)
                     - 720 * r ** 3 * hp1 * hm1 ** 3
                     + 864 * r ** 4 * hm1 ** 4)
            return total / (864 * h ** 2)
        if k == 3:
            total = (cls.upsilon(h, ctx)
                     + 90 * r * (h ** 2 - 1) * (1 - h + h ** 2) * (5 - 9 * h + 5 * h ** 2)
                     - 1260 * r ** 2 * hm1 ** 2 * ctx.polyval([13, -8, -3, -8, 13], h)
                     + 15120 * r ** 3 * hm1 ** 3 * hp1 * (8 - 5 * h + 8 * h ** 2)
                     - 453600 * r ** 4 * hm1 ** 4 * (1 + h + h ** 2)
                     + 907200 * r ** 5 * hm1 ** 5 * hp1
                     - 777600 * r ** 6 * hm1 ** 6)
            return total / (777600 * h ** 3)
        raise ValueError("closed forms exist for k = 1, 2, 3 only")

    @classmethod
    def closed_form_A1_parts(cls, sctx: SaddleContext) -> tuple:
        """
        (Re, Im) of A_1 at the lower saddle s_{-1} = L e^{-i omega} of a real 0 < x < 1, written with
        h_r = x/(1-x) > 0:
            Re = (1 + h_r + h_r^2 - 6(h_r^2 - 1) cos(omega)/L + 12(h_r + 1)^2 cos(2 omega)/L^2) / (12 h_r)
            Im = (-6(h_r^2 - 1) sin(omega)/L + 12(h_r + 1)^2 sin(2 omega)/L^2) / (12 h_r)
        """
        if sctx.L is None or sctx.k_index != -1:
            raise ValueError("the A_1 split is defined at s_{-1} for real 0 < x < 1")
        ctx = sctx.ctx
        x = sctx.z.real
        hr = x / (1 - x)
        L, omega = sctx.L, sctx.omega
        linear, quadratic = 6 * (hr ** 2 - 1) / L, 12 * (hr + 1) ** 2 / L ** 2
        re = (1 + hr + hr ** 2 - linear * ctx.cos(omega) + quadratic * ctx.cos(2 * omega)) / (12 * hr)
        im = (-linear * ctx.sin(omega) + quadratic * ctx.sin(2 * omega)) / (12 * hr)
        return re, im

    @classmethod
    def upsilon(cls, h, ctx):
        """ 139 - 417h + 402h^2 - 109h^3 + 402h^4 - 417h^5 + 139h^6, by Horner """
        return ctx.polyval([139, -417, 402, -109, 402, -417, 139], h)

    @classmethod
    def closed_form_C(cls, k: int, ctx):
        """ Midpoint coefficients C_0..C_5, C_k = (-1)^k Re A_k(-1, -pi i) """
        p2 = ctx.pi ** 2
        numerators = {
            0: lambda: ctx.mpf(1),
            1: lambda: (16 - p2) / (4 * p2),
            2: lambda: ctx.polyval([1, -160, 1536], p2) / (96 * p2 ** 2),
            3: lambda: ctx.polyval([15, 1456, -53760, 368640], p2) / (5760 * p2 ** 3),
            4: lambda: ctx.polyval([-63, -3904, 1483776, -30965760, 165150720], p2) / (645120 * p2 ** 4),
            5: lambda: ctx.polyval([-1995, -92048, -10081280, 624476160, -9083289600, 39636172800], p2)
            / (38707200 * p2 ** 5),
        }
        if k not in numerators:
            raise ValueError("closed forms exist for C_0..C_5 only")
        return numerators[k]()

    @classmethod
    def midpoint_coefficients(cls, K: int, config: PrecisionConfig | None = None) -> list:
        """ C_0..C_K from the engine at z = 1/2, saddle s_{-1} = -pi i """
        config = config or PrecisionConfig()
        sctx = cls.make_context(config.context.mpf(1) / 2, -1, config)
        return [(-1) ** j * a.real for j, a in enumerate(cls.expansion_coefficients(sctx, K, config).values)]
