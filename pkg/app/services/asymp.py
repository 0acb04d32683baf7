"""
asymp.py

Large-n expansions of B_n^(n)(nz): the real-axis theorems (x > 1, 1/2 <= x < 1, x = 1/2), the complex sums S0 and
S1, the regime dispatcher, optimal truncation and the Stokes probe.

Every saddle contributes

    n!/sqrt(2 pi n) * (z-1)^(n-1)/s_k * exp((nz - 1/2) s_k) * sum_k 2^k (1/2)_k A_k / n^k

and the individual expansions are this shape evaluated at the right saddle (or its real part, doubled).
"""
import logging
from fractions import Fraction
from math import factorial

from app.config import PrecisionConfig, settings
from app.core.utils.enums import Regime
from app.core.utils.errors import ExclusionBand, RegimeViolation
from app.models.asymptotic import AsymptoticResult, StokesProbe, TruncationChoice
from app.models.rational import ComplexRational, to_bigcomplex
from app.models.saddle import SaddleContext
from app.services.ratcore import NorlundExact
from app.services.saddle import SaddleEngine

logger = logging.getLogger(__name__)

STOKES_WARNING = ("z lies on the Stokes line Re z = 1: returning S0 only, the subdominant contribution there "
                  "is not modelled")


class AsymptoticService:

    # helpers

    @classmethod
    def term_weights(cls, ctx, n: int, K: int) -> list:
        """ 2^k (1/2)_k / n^k for k = 0..K, built multiplicatively """
        weights = [ctx.mpf(1)]
        for k in range(1, K + 1):
            weights.append(weights[-1] * (2 * k - 1) / n)
        return weights

    @classmethod
    def _n_factor(cls, ctx, n: int):
        # n! exactly, then rounded once
        return ctx.mpf(factorial(n)) / ctx.sqrt(2 * ctx.pi * n)

    @classmethod
    def segment_distance(cls, z) -> float:
        """ Distance from z to the segment [0, 1] """
        x, y = float(z.real), float(z.imag)
        dx = -x if x < 0 else (x - 1 if x > 1 else 0.0)
        return (dx * dx + y * y) ** 0.5

    @classmethod
    def exclusion_distance(cls, z) -> float:
        """
        Distance used by the dispatcher. Real points inside (0, 1) are served by the two-saddle formula, so for
        them only the endpoints count; everywhere else it is the distance to the segment.
        """
        if z.imag == 0 and 0 < z.real < 1:
            return float(min(z.real, 1 - z.real))
        return cls.segment_distance(z)

    @classmethod
    def _dominant_sum(cls, n: int, sctx: SaddleContext, K: int, regime: Regime,
                      config: PrecisionConfig) -> AsymptoticResult:
        ctx = sctx.ctx
        z, s = sctx.z, sctx.s
        coefficients = SaddleEngine.expansion_coefficients(sctx, K + 1, config).values
        weights = cls.term_weights(ctx, n, K + 1)
        prefactor = cls._n_factor(ctx, n) * (z - 1) ** (n - 1) / s * ctx.exp((n * z - ctx.mpf(1) / 2) * s)
        summands = [w * a for w, a in zip(weights, coefficients)]
        terms, omitted = summands[:K + 1], summands[K + 1]
        return AsymptoticResult(n=n, z=z, regime=regime, prefactor=prefactor, terms=terms, omitted_term=omitted,
                                truncation_k=K, value=prefactor * ctx.fsum(terms),
                                error_estimate=abs(prefactor * omitted), dps=ctx.dps)

    # real axis

    @classmethod
    def theorem1(cls, n: int, x, K: int, config: PrecisionConfig | None = None) -> AsymptoticResult:
        """ x > 1: a single real saddle s_0 = log(x/(x-1)) """
        config = config or PrecisionConfig()
        ctx = config.context
        x = to_bigcomplex(x, ctx)
        if x.imag != 0 or x.real <= 1 + config.exclusion_eps:
            raise RegimeViolation(f"theorem1 needs real x > 1 + {config.exclusion_eps}", x=x)
        if n < 1 or K < 0:
            raise ValueError("need n >= 1 and K >= 0")
        sctx = SaddleEngine.make_context(x, 0, config)
        return cls._dominant_sum(n, sctx, K, Regime.REAL_GREATER_ONE, config)

    @classmethod
    def theorem2(cls, n: int, x, K: int, config: PrecisionConfig | None = None) -> AsymptoticResult:
        """
        1/2 <= x < 1: the conjugate saddles log h -/+ pi i (h = x/(1-x)) combine into

            2(-1)^n n!/sqrt(2 pi n) (1-x)^(n-1)/L h^(nx-1/2) sum_k c_k (cos T Re A_k + sin T Im A_k),
            T = pi n x - omega + pi/2,

        with A_k taken at s_{-1} = L e^{-i omega}.
        """
        config = config or PrecisionConfig()
        ctx = config.context
        x = to_bigcomplex(x, ctx)
        if x.imag != 0 or not (ctx.mpf(1) / 2 <= x.real < 1 - config.exclusion_eps):
            raise RegimeViolation(f"theorem2 needs real 1/2 <= x < 1 - {config.exclusion_eps}", x=x)
        if n < 1 or K < 0:
            raise ValueError("need n >= 1 and K >= 0")
        sctx = SaddleEngine.make_context(x, -1, config)
        xr = x.real
        coefficients = SaddleEngine.expansion_coefficients(sctx, K + 1, config).values
        weights = cls.term_weights(ctx, n, K + 1)

        theta = ctx.pi * n * xr - sctx.omega + ctx.pi / 2
        cos_t, sin_t = ctx.cos(theta), ctx.sin(theta)
        h = xr / (1 - xr)
        prefactor = (2 * (-1) ** n * cls._n_factor(ctx, n) * (1 - xr) ** (n - 1) / sctx.L
                     * ctx.power(h, n * xr - ctx.mpf(1) / 2))
        summands = [ctx.mpc(w * (cos_t * a.real + sin_t * a.imag)) for w, a in zip(weights, coefficients)]
        terms, omitted = summands[:K + 1], summands[K + 1]
        prefactor = ctx.mpc(prefactor)
        return AsymptoticResult(n=n, z=x, regime=Regime.REAL_UNIT_INTERVAL, prefactor=prefactor, terms=terms,
                                omitted_term=omitted, truncation_k=K, value=prefactor * ctx.fsum(terms),
                                error_estimate=abs(prefactor * omitted), dps=ctx.dps)

    @classmethod
    def half_case(cls, n: int, K: int, config: PrecisionConfig | None = None) -> AsymptoticResult:
        """
        x = 1/2: 2^(2-n) n!/sqrt(2 pi n) cos(pi n/2)/pi sum_k (-2)^k (1/2)_k C_k / n^k.
        Odd n gives exactly zero. C_0..C_5 come from their closed forms, higher ones from the engine.
        """
        config = config or PrecisionConfig()
        ctx = config.context
        if n < 1 or K < 0:
            raise ValueError("need n >= 1 and K >= 0")
        half = ctx.mpc(ctx.mpf(1) / 2)
        zero = ctx.mpc(0)
        if n % 2:
            return AsymptoticResult(n=n, z=half, regime=Regime.REAL_HALF, prefactor=zero, terms=[zero] * (K + 1),
                                    omitted_term=zero, truncation_k=K, value=zero, error_estimate=ctx.mpf(0),
                                    dps=ctx.dps)

        cos_half = (-1) ** (n // 2)
        prefactor = ctx.mpc(ctx.ldexp(ctx.mpf(1), 2 - n) * cls._n_factor(ctx, n) * cos_half / ctx.pi)
        if K + 1 <= 5:
            c_values = [SaddleEngine.closed_form_C(k, ctx) for k in range(K + 2)]
        else:
            engine = SaddleEngine.midpoint_coefficients(K + 1, config)
            c_values = [SaddleEngine.closed_form_C(k, ctx) for k in range(6)] + engine[6:]
        weights = cls.term_weights(ctx, n, K + 1)
        summands = [ctx.mpc((-1) ** k * w * c) for k, (w, c) in enumerate(zip(weights, c_values))]
        terms, omitted = summands[:K + 1], summands[K + 1]
        return AsymptoticResult(n=n, z=half, regime=Regime.REAL_HALF, prefactor=prefactor, terms=terms,
                                omitted_term=omitted, truncation_k=K, value=prefactor * ctx.fsum(terms),
                                error_estimate=abs(prefactor * omitted), dps=ctx.dps)

    # complex plane

    @classmethod
    def _complex_regime(cls, z, config: PrecisionConfig) -> Regime:
        if z.imag == 0:
            return Regime.REAL_GREATER_ONE
        if abs(z.real - 1) < config.stokes_eps:
            return Regime.STOKES_LINE
        return Regime.COMPLEX_S0_ONLY if z.real >= 1 else Regime.COMPLEX_WITH_S1

    @classmethod
    def S0(cls, n: int, z, K: int, config: PrecisionConfig | None = None) -> AsymptoticResult:
        """ The dominant sum at s_0 = Log(z/(z-1)); z in the canonical quadrant Re z >= 1/2, Im z >= 0 """
        config = config or PrecisionConfig()
        ctx = config.context
        z = to_bigcomplex(z, ctx)
        distance = cls.segment_distance(z)
        if distance <= config.exclusion_eps:
            raise ExclusionBand(f"z is {distance:.3g} from [0, 1], inside the exclusion band", distance=distance)
        if z.real < ctx.mpf(1) / 2 or z.imag < 0:
            raise RegimeViolation("S0 expects z in the quadrant Re z >= 1/2, Im z >= 0", z=z)
        if n < 1 or K < 0:
            raise ValueError("need n >= 1 and K >= 0")
        sctx = SaddleEngine.make_context(z, 0, config)
        return cls._dominant_sum(n, sctx, K, cls._complex_regime(z, config), config)

    @classmethod
    def S1(cls, n: int, z, K: int, config: PrecisionConfig | None = None, force: bool = False) -> AsymptoticResult:
        """
        The subdominant sum at s_1 = s_0 + 2 pi i. Its prefactor simplifies to
            -n!/sqrt(2 pi n) e^{-2 pi n i (1-z)} (z-1)^(n-1)/(s_0 + 2 pi i) exp((nz - 1/2) s_0),
        which is of relative size e^{-2 pi n Im z}. Valid for 1/2 <= Re z < 1, Im z > 0; `force` computes it
        elsewhere as well.
        """
        config = config or PrecisionConfig()
        ctx = config.context
        z = to_bigcomplex(z, ctx)
        if not force and not (ctx.mpf(1) / 2 <= z.real < 1 and z.imag > 0):
            raise RegimeViolation("S1 is only present for 1/2 <= Re z < 1, Im z > 0", z=z)
        if n < 1 or K < 0:
            raise ValueError("need n >= 1 and K >= 0")
        sctx = SaddleEngine.make_context(z, 1, config)
        return cls._dominant_sum(n, sctx, K, Regime.COMPLEX_WITH_S1, config)

    @classmethod
    def classify(cls, w, config: PrecisionConfig) -> Regime:
        """ Regime of a canonical argument (Re w >= 1/2, Im w >= 0) """
        if w.imag == 0:
            if w.real > 1:
                return Regime.REAL_GREATER_ONE
            if w.real * 2 == 1:
                return Regime.REAL_HALF
            return Regime.REAL_UNIT_INTERVAL
        return cls._complex_regime(w, config)

    @classmethod
    def dispatch(cls, n: int, z, K: int, config: PrecisionConfig | None = None,
                 regime_override: Regime | None = None) -> AsymptoticResult:
        """
        Map z into the quadrant Re z >= 1/2, Im z >= 0 (reflection z -> 1-z, then conjugation), evaluate the
        expansion of its regime and map the result back.
        """
        config = config or PrecisionConfig()
        ctx = config.context
        z = to_bigcomplex(z, ctx)
        distance = cls.exclusion_distance(z)
        if distance <= config.exclusion_eps:
            raise ExclusionBand(f"z is {distance:.3g} from [0, 1] (exclusion band {config.exclusion_eps})",
                                distance=distance)

        reflect = z.real < ctx.mpf(1) / 2
        w = 1 - z if reflect else z
        conjugate = w.imag < 0
        w = w.conjugate() if conjugate else w

        regime = regime_override or cls.classify(w, config)
        result = cls._evaluate(n, w, K, regime, config, forced=regime_override is not None)
        if reflect or conjugate:
            result = result.mapped(z, conjugate, reflect)
        return result

    @classmethod
    def _evaluate(cls, n: int, w, K: int, regime: Regime, config: PrecisionConfig, forced: bool) -> AsymptoticResult:
        if regime is Regime.REAL_GREATER_ONE:
            return cls.theorem1(n, w, K, config)
        if regime is Regime.REAL_HALF:
            if w.imag != 0 or w.real * 2 != 1:
                raise RegimeViolation("the midpoint expansion only holds at z = 1/2",
                                      z=config.context.nstr(w, 10))
            return cls.half_case(n, K, config)
        if regime is Regime.REAL_UNIT_INTERVAL:
            return cls.theorem2(n, w, K, config)

        s0 = cls.S0(n, w, K, config)
        if regime is Regime.COMPLEX_S0_ONLY:
            return s0.model_copy(update=dict(regime=regime))
        if regime is Regime.STOKES_LINE:
            logger.warning("%s (z = %s)", STOKES_WARNING, config.context.nstr(w, 10))
            return s0.model_copy(update=dict(regime=regime, warnings=[*s0.warnings, STOKES_WARNING]))

        s1 = cls.S1(n, w, K, config, force=forced)
        return s0.model_copy(update=dict(regime=Regime.COMPLEX_WITH_S1, subdominant=s1, value=s0.value + s1.value))

    # truncation and Stokes

    @classmethod
    def smallest_term(cls, magnitudes: list) -> TruncationChoice:
        """
        Truncation just before the least term. The least term is the first local minimum of `magnitudes` that is
        followed by growth; the sum keeps terms 0..m-1 and the least term itself is the first one dropped. The
        magnitudes zigzag once the two neighbouring saddles start to interfere, so the first such minimum is taken,
        not the global one. `magnitudes` runs over k = 0..k_max+1; without a minimum the cut is k_max.
        """
        k_max = len(magnitudes) - 2
        for m in range(k_max + 1):
            falling = m == 0 or magnitudes[m] < magnitudes[m - 1]
            if falling and magnitudes[m + 1] > magnitudes[m]:
                return TruncationChoice(k=max(m - 1, 0), minimum_found=True, magnitudes=magnitudes)
        logger.warning("terms still decrease at k_max = %d: no optimal truncation point found", k_max)
        return TruncationChoice(k=k_max, minimum_found=False, magnitudes=magnitudes)

    @classmethod
    def optimal_truncation(cls, n: int, z, k_max: int, config: PrecisionConfig | None = None) -> TruncationChoice:
        """ Cut of the dominant expansion just before its least term, searched over k <= k_max """
        if k_max < 1:
            raise ValueError("k_max must be at least 1")
        result = cls.dispatch(n, z, k_max, config)
        return cls.smallest_term(result.term_magnitudes())

    @classmethod
    def stokes_probe(cls, n: int, z, config: PrecisionConfig | None = None, k_max: int | None = None,
                     force: bool = False) -> StokesProbe:
        """
        exact - S0 with S0 cut just before its least term, against S1 with K <= 3. Where S1 is really present the
        ratio |S1| / |exact - S0| is of order one; beyond the Stokes line it is large.
        """
        config = config or PrecisionConfig()
        k_max = k_max or settings.STOKES_KMAX
        exact_z = ComplexRational.coerce(z)
        ref = config.reference_context

        s0 = cls.S0(n, exact_z, k_max, config)
        choice = cls.smallest_term(s0.term_magnitudes())
        exact = NorlundExact.eval_exact(n, exact_z).to_mpc(ref)
        difference = exact - ref.mpc(s0.partial_value(choice.k))

        s1 = cls.S1(n, exact_z, min(3, k_max), config, force=force)
        s1_value = ref.mpc(s1.value)
        return StokesProbe(n=n, z=exact_z.to_mpc(config.context), exact_minus_S0=difference, S1_value=s1_value,
                           optimal_k=choice.k, minimum_found=choice.minimum_found,
                           ratio=abs(s1_value) / abs(difference), forced=force)

    @classmethod
    def relative_errors(cls, result: AsymptoticResult, exact: ComplexRational | Fraction | int,
                        config: PrecisionConfig | None = None) -> list:
        """ |exact - partial_k| / |exact| for every truncation index, computed at twice the working precision """
        config = config or PrecisionConfig(dps=result.dps)
        ref = config.reference_context
        exact = ComplexRational.coerce(exact).to_mpc(ref)
        return [abs(exact - ref.mpc(p)) / abs(exact) for p in result.partial_sums()]
