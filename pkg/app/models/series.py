"""
series.py

Truncated power series over extended-precision complex numbers. A series of order m holds the coefficients of
t^0 .. t^(m-1); higher coefficients are unknown, not zero, so binary operations return the smaller order.
"""
from typing import Iterable, Sequence


class ComplexSeries:
    """
    Immutable truncated series bound to an mpmath context. Arithmetic operators follow the usual rules: the
    order of the result is the minimum of the operand orders.
    """
    __slots__ = ("ctx", "coefficients")

    def __init__(self, ctx, coefficients: Iterable):
        coefficients = tuple(ctx.mpc(c) for c in coefficients)
        if not coefficients:
            raise ValueError("a series needs at least one coefficient")
        self.ctx = ctx
        self.coefficients = coefficients

    @classmethod
    def _wrap(cls, ctx, coefficients: Sequence) -> "ComplexSeries":
        # coefficients are already mpc values of ctx
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.coefficients = tuple(coefficients)
        return obj

    @classmethod
    def zeros(cls, ctx, order: int) -> "ComplexSeries":
        return cls._wrap(ctx, [ctx.mpc(0)] * order)

    @classmethod
    def constant(cls, ctx, value, order: int) -> "ComplexSeries":
        return cls._wrap(ctx, [ctx.mpc(value)] + [ctx.mpc(0)] * (order - 1))

    @classmethod
    def variable(cls, ctx, order: int) -> "ComplexSeries":
        """ The series t """
        coefficients = [ctx.mpc(0)] * order
        if order > 1:
            coefficients[1] = ctx.mpc(1)
        return cls._wrap(ctx, coefficients)

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def __len__(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, k):
        return self.coefficients[k]

    def __iter__(self):
        return iter(self.coefficients)

    def __repr__(self):
        return f"ComplexSeries(order={self.order}, coefficients={[self.ctx.nstr(c, 8) for c in self.coefficients]})"

    def truncate(self, order: int) -> "ComplexSeries":
        return ComplexSeries._wrap(self.ctx, self.coefficients[:order])

    def padded(self, order: int) -> "ComplexSeries":
        """ Extend with explicit zeros up to `order` (used where the dropped coefficients provably do not matter) """
        missing = order - self.order
        if missing <= 0:
            return self
        return ComplexSeries._wrap(self.ctx, self.coefficients + (self.ctx.mpc(0),) * missing)

    def shifted_down(self, m: int) -> "ComplexSeries":
        """ Divide by t^m; the dropped low coefficients must be zero and are not checked here """
        return ComplexSeries._wrap(self.ctx, self.coefficients[m:])

    def with_constant(self, value) -> "ComplexSeries":
        return ComplexSeries._wrap(self.ctx, (self.ctx.mpc(value),) + self.coefficients[1:])

    def __add__(self, other: "ComplexSeries") -> "ComplexSeries":
        order = min(self.order, other.order)
        return ComplexSeries._wrap(self.ctx, [self.coefficients[k] + other.coefficients[k] for k in range(order)])

    def __sub__(self, other: "ComplexSeries") -> "ComplexSeries":
        order = min(self.order, other.order)
        return ComplexSeries._wrap(self.ctx, [self.coefficients[k] - other.coefficients[k] for k in range(order)])

    def __neg__(self) -> "ComplexSeries":
        return ComplexSeries._wrap(self.ctx, [-c for c in self.coefficients])

    def __mul__(self, other: "ComplexSeries") -> "ComplexSeries":
        order = min(self.order, other.order)
        a, b = self.coefficients, other.coefficients
        fdot = self.ctx.fdot
        return ComplexSeries._wrap(self.ctx, [fdot(a[:k + 1], b[k::-1]) for k in range(order)])

    def scale(self, factor) -> "ComplexSeries":
        factor = self.ctx.mpc(factor)
        return ComplexSeries._wrap(self.ctx, [factor * c for c in self.coefficients])

    def deriv(self) -> "ComplexSeries":
        """ Formal derivative; the order drops by one (a constant stays a zero constant) """
        if self.order == 1:
            return ComplexSeries.zeros(self.ctx, 1)
        return ComplexSeries._wrap(self.ctx, [k * self.coefficients[k] for k in range(1, self.order)])

    def even_part(self) -> list:
        """ Coefficients of t^0, t^2, t^4, ... """
        return list(self.coefficients[::2])
