from typing import Optional

from pydantic import BaseModel, ConfigDict, computed_field

from app.config import working_context
from app.core.utils.custom_fields import BigComplex, BigFloat
from app.core.utils.enums import Regime


class AsymptoticResult(BaseModel):
    """
    One evaluated expansion. `terms` are the per-k summands without the prefactor (terms[0] belongs to A_0 = 1);
    `omitted_term` is the k = truncation_k + 1 summand, used for the error estimate. The invariant is

        value = prefactor * sum(terms[0..truncation_k]) + (subdominant.value if present)
    """
    model_config = ConfigDict(frozen=True)

    n: int
    z: BigComplex
    regime: Regime
    reflected: bool = False
    conjugated: bool = False
    prefactor: BigComplex
    terms: list[BigComplex]
    omitted_term: BigComplex
    truncation_k: int
    value: BigComplex
    error_estimate: BigFloat
    subdominant: Optional["AsymptoticResult"] = None
    warnings: list[str] = []
    dps: int

    @property
    def ctx(self):
        return working_context(self.dps)

    @computed_field
    @property
    def regime_label(self) -> str:
        if self.reflected or self.conjugated:
            return f"ReflectedOrConjugated({self.regime.value})"
        return self.regime.value

    def partial_value(self, k: int):
        """ prefactor * sum(terms[0..k]), plus the subdominant contribution when one is attached """
        if not 0 <= k <= self.truncation_k:
            raise IndexError(f"truncation index {k} outside 0..{self.truncation_k}")
        total = self.prefactor * self.ctx.fsum(self.terms[:k + 1])
        if self.subdominant is not None:
            total += self.subdominant.value
        return total

    def partial_sums(self) -> list:
        return [self.partial_value(k) for k in range(self.truncation_k + 1)]

    def term_magnitudes(self) -> list:
        """ |prefactor * term_k| for k = 0..truncation_k+1 (the last one is the omitted term) """
        scale = abs(self.prefactor)
        return [scale * abs(t) for t in self.terms + [self.omitted_term]]

    def mapped(self, z, conjugate: bool, reflect: bool) -> "AsymptoticResult":
        """
        Undo a canonicalization of the argument: conjugate when the input had Im z < 0, multiply by (-1)^n when
        it was reflected z -> 1 - z. `z` is the original argument.
        """
        sign = (-1) ** self.n if reflect else 1

        def transform(v):
            return (v.conjugate() if conjugate else v) * sign

        sub = self.subdominant.mapped(z, conjugate, reflect) if self.subdominant is not None else None
        return self.model_copy(update=dict(
            z=z,
            reflected=reflect,
            conjugated=conjugate,
            prefactor=transform(self.prefactor),
            terms=[t.conjugate() if conjugate else t for t in self.terms],
            omitted_term=self.omitted_term.conjugate() if conjugate else self.omitted_term,
            value=transform(self.value),
            subdominant=sub,
        ))


AsymptoticResult.model_rebuild()


class TruncationChoice(BaseModel):
    """ Smallest-term truncation index; minimum_found is False when terms still decrease at k_max """
    model_config = ConfigDict(frozen=True)

    k: int
    minimum_found: bool
    magnitudes: list[BigFloat]


class StokesProbe(BaseModel):
    """ exact - S0 (optimally truncated) against the subdominant sum S1 """
    model_config = ConfigDict(frozen=True)

    n: int
    z: BigComplex
    exact_minus_S0: BigComplex
    S1_value: BigComplex
    optimal_k: int
    minimum_found: bool
    ratio: BigFloat
    forced: bool = False
