"""
ratcore.py

Exact reference computation of B_n^(n)(z) and of the second-kind polynomials b_n(z), plus the exact structural
checks (reflection, interlacing, second-kind identity, odd-n midpoint zero).
"""
import logging
from fractions import Fraction
from functools import lru_cache
from math import factorial

from app.models.rational import ComplexRational, InterlacingReport, RationalPolynomial, RationalSeries

logger = logging.getLogger(__name__)


class NorlundExact:

    @classmethod
    @lru_cache(maxsize=None)
    def base_series(cls, order: int) -> RationalSeries:
        """ t/(e^t - 1) to `order` terms: coefficient k is B_k/k! """
        if order < 1:
            raise ValueError("order must be at least 1")
        # t/(e^t - 1) = 1 / sum_{k>=0} t^k/(k+1)!  (the common factor t cancels)
        one = RationalSeries((Fraction(1),) + (Fraction(0),) * (order - 1))
        denominator = RationalSeries(tuple(Fraction(1, factorial(k + 1)) for k in range(order)))
        return one / denominator

    @classmethod
    @lru_cache(maxsize=None)
    def norlund_polynomial(cls, n: int) -> RationalPolynomial:
        """
        B_n^(n)(z) = n! [t^n] (t/(e^t - 1))^n e^{zt}
                   = n! sum_{m=0}^{n} a_m z^{n-m}/(n-m)!,   a = coefficients of (t/(e^t - 1))^n
        """
        if n < 0:
            raise ValueError("n must be non-negative")
        a = cls.base_series(n + 1) ** n
        n_fact = factorial(n)
        return RationalPolynomial(tuple(Fraction(n_fact, factorial(j)) * a[n - j] for j in range(n + 1)))

    @classmethod
    @lru_cache(maxsize=None)
    def second_kind_polynomial(cls, n: int) -> RationalPolynomial:
        """
        b_n(z) from its own generating function t(1+t)^z / log(1+t):
        b_n(z) = n! sum_{m=0}^{n} c_{n-m} binom(z, m),   c = coefficients of t/log(1+t)
        """
        if n < 0:
            raise ValueError("n must be non-negative")
        order = n + 1
        one = RationalSeries((Fraction(1),) + (Fraction(0),) * (order - 1))
        log_ratio = RationalSeries(tuple(Fraction((-1) ** k, k + 1) for k in range(order)))  # log(1+t)/t
        c = one / log_ratio

        result = RationalPolynomial()
        binomial = RationalPolynomial((Fraction(1),))  # binom(z, 0)
        for m in range(order):
            if m > 0:
                # binom(z, m) = binom(z, m-1) (z - m + 1)/m
                binomial = binomial * RationalPolynomial((Fraction(1 - m, m), Fraction(1, m)))
            result = result + binomial.scale(c[n - m])
        return result.scale(factorial(n))

    @classmethod
    def eval_exact(cls, n: int, z: ComplexRational | Fraction | int | str) -> ComplexRational:
        """ B_n^(n)(n z), exactly; the scaling of the argument by n happens here """
        z = ComplexRational.coerce(z)
        value = cls.norlund_polynomial(n)(z * n)
        return ComplexRational.coerce(value)

    @classmethod
    def reflection_check(cls, n: int, z: ComplexRational | Fraction | int | str) -> bool:
        """ B_n^(n)(nz) == (-1)^n B_n^(n)(n(1-z)) """
        z = ComplexRational.coerce(z)
        return cls.eval_exact(n, z) == cls.eval_exact(n, 1 - z) * (-1) ** n

    @classmethod
    def second_kind_identity(cls, n: int) -> bool:
        """ b_n(z) == B_n^(n)(z + 1) as polynomials """
        return (cls.second_kind_polynomial(n) - cls.norlund_polynomial(n).shift(1)).is_zero()

    @classmethod
    def midpoint_zero_check(cls, n: int) -> bool:
        """ For odd n, B_n^(n)(n/2) vanishes """
        return n % 2 == 0 or cls.eval_exact(n, Fraction(1, 2)).is_zero()

    @classmethod
    def interlacing_check(cls, n: int) -> InterlacingReport:
        """
        Signs of the unscaled B_n^(n)(x) at x = 0, 1, ..., n. Passes iff consecutive values have strictly opposite
        signs, i.e. one simple zero in every integer gap.
        """
        if n < 1:
            raise ValueError("n must be at least 1")
        polynomial = cls.norlund_polynomial(n)
        values = [polynomial(Fraction(x)) for x in range(n + 1)]
        signs = [(v > 0) - (v < 0) for v in values]
        failing = [(x, x + 1) for x in range(n) if signs[x] * signs[x + 1] >= 0]
        if failing:
            logger.warning("interlacing fails for n=%d at integer pairs %s", n, failing)
        return InterlacingReport(n=n, values=values, signs=signs, passed=not failing, failing_pairs=failing)
