"""
descent.py

Predictor-corrector tracing of the curves Im psi(s) = Im psi(s_k) through a saddle, in double precision.

The integrand is e^{-n psi}, so descent means Re psi increasing. Predictor steps go along +conj(psi')/|psi'|
(descent) or -conj(psi')/|psi'| (ascent); the corrector is a Newton iteration that moves perpendicular to the
level set,
    delta = -i (Im psi - T) / psi',
which changes Im psi to first order and leaves Re psi alone.
"""
import logging

import numpy as np

from app.config import PrecisionConfig, settings
from app.core.utils.enums import BranchLabel, Termination
from app.core.utils.errors import CorrectionDiverged, DegenerateSaddle
from app.models.paths import PathPolyline
from app.models.saddle import SaddleContext
from app.services.saddle import SaddleEngine

logger = logging.getLogger(__name__)

TWO_PI = 2 * np.pi
BLOWUP = 1e8
MAX_NEWTON = 25
MAX_FAILURES = 3


def _complex(value) -> complex:
    return complex(float(value.real), float(value.imag))


class PathTracer:

    @classmethod
    def psi(cls, s: complex, z: complex) -> complex:
        """ log(e^s - 1) - s z with the principal logarithm """
        return complex(np.log(np.exp(s) - 1) - s * z)

    @classmethod
    def psi_prime(cls, s: complex, z: complex) -> complex:
        e = np.exp(s)
        return complex(e / (e - 1) - z)

    @classmethod
    def descent_direction(cls, sctx: SaddleContext) -> float:
        """ pi/2 - arg(psi''(s_k))/2 with psi'' = z(1 - z) """
        psi2 = _complex(sctx.psi2)
        if abs(psi2) < 1e-12:
            raise DegenerateSaddle("psi'' vanishes at the saddle", z=sctx.z)
        return float(np.pi / 2 - np.angle(psi2) / 2)

    @classmethod
    def descent_tangent(cls, sctx: SaddleContext) -> complex:
        """ Unit tangent of the descent+ branch; psi'' * tangent^2 is real positive """
        return complex(1j * np.exp(1j * cls.descent_direction(sctx)))

    @classmethod
    def _unwrap(cls, im: float, ref: float) -> float:
        return im + TWO_PI * round((ref - im) / TWO_PI)

    @classmethod
    def _correct(cls, p: complex, z: complex, target: float, tol: float) -> tuple[complex, complex] | None:
        for _ in range(MAX_NEWTON):
            value = cls.psi(p, z)
            if not np.isfinite(value):
                return None
            error = cls._unwrap(value.imag, target) - target
            if abs(error) <= max(tol, 1e-14 * max(1.0, abs(value))):
                return p, complex(value.real, target + error)
            slope = cls.psi_prime(p, z)
            if slope == 0:
                return None
            p = p - 1j * error / slope
        return None

    @classmethod
    def _stop_reason(cls, p: complex, value: complex, length: float, step: float, max_len: float,
                     others: list[complex]) -> Termination | None:
        if not np.isfinite(value) or abs(value) > BLOWUP:
            return Termination.BLOWUP
        pole = 1j * TWO_PI * round(p.imag / TWO_PI)
        if abs(p - pole) <= step:
            return Termination.POLE
        if any(abs(p - s) <= 2 * step for s in others):
            return Termination.SADDLE
        if length >= max_len:
            return Termination.MAX_LEN
        return None

    @classmethod
    def _trace_branch(cls, sctx: SaddleContext, label: BranchLabel, step: float, max_len: float, tol: float,
                      others: list[complex]) -> PathPolyline:
        z, s0 = _complex(sctx.z), _complex(sctx.s)
        target = cls.psi(s0, z).imag
        tangent = cls.descent_tangent(sctx)
        sign = 1 if label in (BranchLabel.DESCENT_PLUS, BranchLabel.ASCENT_PLUS) else -1
        first = sign * tangent * (1 if label.is_descent else 1j)
        orientation = 1 if label.is_descent else -1

        points = [s0]
        values = [complex(cls.psi(s0, z).real, target)]
        length, h, failures = 0.0, step, 0
        termination = None
        while termination is None:
            p = points[-1]
            if len(points) == 1:
                direction = first
            else:
                slope = cls.psi_prime(p, z)
                direction = orientation * slope.conjugate() / abs(slope)
            corrected = cls._correct(p + h * direction, z, target, tol)
            # a step that does not move Re psi the right way jumped to another level curve
            if corrected is None or orientation * (corrected[1].real - values[-1].real) <= 0:
                failures += 1
                if failures >= MAX_FAILURES:
                    raise CorrectionDiverged(f"corrector failed {MAX_FAILURES} times in a row on {label.value}",
                                             z=z, point=p, step=h)
                h /= 2
                continue
            q, value = corrected
            failures, h = 0, min(2 * h, step)
            length += abs(q - p)
            points.append(q)
            values.append(value)
            termination = cls._stop_reason(q, value, length, step, max_len, others)

        logger.debug("%s from s_%d stopped (%s) after %d points, length %.3f", label.value, sctx.k_index,
                     termination.value, len(points), length)
        return PathPolyline(direction_label=label, termination=termination,
                            points=[(p.real, p.imag) for p in points],
                            re_psi=[v.real for v in values], im_psi=[v.imag for v in values],
                            arc_length=length, saddle=sctx)

    @classmethod
    def trace_paths(cls, z, saddle_index: int = 0, step: float | None = None, max_len: float | None = None,
                    tol: float | None = None, config: PrecisionConfig | None = None) -> list[PathPolyline]:
        """ The four branches descent+, descent-, ascent+, ascent- leaving the saddle s_k """
        step = step or settings.PATH_STEP
        max_len = max_len or settings.PATH_MAX_LEN
        tol = tol or settings.PATH_TOL
        if step <= 0 or max_len <= 0:
            raise ValueError("step and max_len must be positive")
        sctx = SaddleEngine.make_context(z, saddle_index, config)
        cls.descent_direction(sctx)

        others = [_complex(SaddleEngine.saddle_point(sctx.z, j, config))
                  for j in range(saddle_index - 2, saddle_index + 3) if j != saddle_index]
        # the corrector tolerance is a tenth of the requested conservation bound
        return [cls._trace_branch(sctx, label, step, max_len, tol / 10, others) for label in BranchLabel]
