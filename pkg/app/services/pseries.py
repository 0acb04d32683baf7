"""
pseries.py

Truncated power-series algebra over extended-precision complex numbers: the engine room of the coefficient
generator. Precision travels with the series (its mpmath context); nothing here touches global state.
"""
import logging

from app.core.utils.errors import AmbiguousBranch, NonzeroConstantTerm, ZeroConstantTerm, ZeroLinearTerm
from app.models.series import ComplexSeries

logger = logging.getLogger(__name__)


def _threshold(ctx, slack: int = 5):
    return ctx.mpf(10) ** (slack - ctx.dps)


class SeriesEngine:

    @classmethod
    def mul(cls, a: ComplexSeries, b: ComplexSeries) -> ComplexSeries:
        return a * b

    @classmethod
    def add(cls, a: ComplexSeries, b: ComplexSeries) -> ComplexSeries:
        return a + b

    @classmethod
    def scale(cls, a: ComplexSeries, factor) -> ComplexSeries:
        return a.scale(factor)

    @classmethod
    def div(cls, a: ComplexSeries, b: ComplexSeries) -> ComplexSeries:
        """ q with a = b q to the common order """
        ctx = a.ctx
        if abs(b[0]) <= _threshold(ctx):
            raise ZeroConstantTerm(f"|b0| = {ctx.nstr(abs(b[0]), 5)} is below the working threshold")
        order = min(a.order, b.order)
        inverse_b0 = 1 / b[0]
        q: list = []
        for k in range(order):
            acc = a[k] - ctx.fdot(b.coefficients[1:k + 1], q[::-1]) if k else a[k]
            q.append(acc * inverse_b0)
        return ComplexSeries._wrap(ctx, q)

    @classmethod
    def compose(cls, outer: ComplexSeries, inner: ComplexSeries) -> ComplexSeries:
        """ outer(inner(t)) by Horner; `inner` must have zero constant term """
        ctx = inner.ctx
        if abs(inner[0]) > _threshold(ctx):
            raise NonzeroConstantTerm(f"inner constant term {ctx.nstr(inner[0], 5)} is not zero")
        order = min(outer.order, inner.order)
        inner = inner.truncate(order).with_constant(0)
        result = ComplexSeries.constant(ctx, outer[order - 1], order)
        for k in range(order - 2, -1, -1):
            result = result * inner
            result = result.with_constant(result[0] + outer[k])
        return result

    @classmethod
    def log1p_compose(cls, x: ComplexSeries) -> ComplexSeries:
        """ log(1 + x(t)) = sum_{m>=1} (-1)^(m-1) x^m / m, composed Horner-style """
        ctx = x.ctx
        if abs(x[0]) > _threshold(ctx):
            raise NonzeroConstantTerm(f"log1p needs a zero constant term, got {ctx.nstr(x[0], 5)}")
        log1p = ComplexSeries(ctx, [0] + [ctx.mpf((-1) ** (m - 1)) / m for m in range(1, x.order)])
        return cls.compose(log1p, x)

    @classmethod
    def exp_minus_one(cls, ctx, order: int) -> ComplexSeries:
        """ e^t - 1 """
        coefficients = [ctx.mpc(0)]
        term = ctx.mpf(1)
        for k in range(1, order):
            term = term / k
            coefficients.append(ctx.mpc(term))
        return ComplexSeries._wrap(ctx, coefficients[:order])

    @classmethod
    def sqrt_series(cls, a: ComplexSeries, branch_target) -> ComplexSeries:
        """
        s with s^2 = a. The constant term is the square root of a0 closer to `branch_target`; equidistant roots
        are refused rather than guessed.
        """
        ctx = a.ctx
        if abs(a[0]) <= _threshold(ctx):
            raise ZeroConstantTerm("square root of a series with zero constant term")
        root = ctx.sqrt(a[0])
        target = ctx.mpc(branch_target)
        d_plus, d_minus = abs(root - target), abs(-root - target)
        if abs(d_plus - d_minus) <= _threshold(ctx, slack=10) * max(1, abs(target)):
            raise AmbiguousBranch(f"both roots ±{ctx.nstr(root, 8)} are equidistant from {ctx.nstr(target, 8)}")
        s0 = root if d_plus < d_minus else -root

        inverse = 1 / (2 * s0)
        s = [s0]
        for k in range(1, a.order):
            acc = a[k] - ctx.fdot(s[1:k], s[k - 1:0:-1]) if k > 1 else a[k]
            s.append(acc * inverse)
        return ComplexSeries._wrap(ctx, s)

    @classmethod
    def revert(cls, w: ComplexSeries) -> ComplexSeries:
        """
        Compositional inverse u(t) with w(u(t)) = t, by Newton iteration on series:
            u <- u - (w(u) - t) / w'(u)
        Each step doubles the number of correct coefficients.
        """
        ctx = w.ctx
        if abs(w[0]) > _threshold(ctx):
            raise NonzeroConstantTerm(f"reversion needs w(0) = 0, got {ctx.nstr(w[0], 5)}")
        if w.order < 2 or abs(w[1]) <= _threshold(ctx):
            raise ZeroLinearTerm("reversion needs a nonzero linear coefficient")
        order = w.order
        w = w.with_constant(0)
        # w' is known to order-1; its top coefficient only meets terms of the residual that are already zero
        dw = w.deriv().padded(order)

        u = ComplexSeries._wrap(ctx, [ctx.mpc(0), 1 / w[1]] + [ctx.mpc(0)] * (order - 2))
        correct = 2
        while correct < order:
            correct = min(2 * correct, order)
            u_p = u.truncate(correct)
            t = ComplexSeries.variable(ctx, correct)
            residual = cls.compose(w.truncate(correct), u_p) - t
            slope = cls.compose(dw.truncate(correct), u_p)
            u_p = u_p - cls.div(residual, slope)
            u = u_p.with_constant(0).padded(order)
        return u

    @classmethod
    def max_residual(cls, a: ComplexSeries, b: ComplexSeries):
        """ max_k |a_k - b_k| over the common order """
        order = min(a.order, b.order)
        return max(abs(a[k] - b[k]) for k in range(order))
