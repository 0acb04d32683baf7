from pydantic import BaseModel, ConfigDict, computed_field

from app.config import working_context
from app.core.utils.custom_fields import BigComplex, BigFloat


class SaddleContext(BaseModel):
    """
    A saddle s_k = Log(z/(z-1)) + 2 pi i k of psi(s) = log(e^s - 1) - s z together with h = z/(z-1).
    L and omega are only populated for real 0 < z < 1, where s_{-1} = L e^{-i omega}.
    """
    model_config = ConfigDict(frozen=True)

    z: BigComplex
    h: BigComplex
    k_index: int
    s: BigComplex
    L: BigFloat = None
    omega: BigFloat = None
    dps: int

    @property
    def ctx(self):
        return working_context(self.dps)

    @property
    def is_real(self) -> bool:
        return self.z.imag == 0

    @computed_field
    @property
    def psi2(self) -> BigComplex:
        """ psi''(s_k) = z(1 - z) = -h/(h - 1)^2, the same at every saddle """
        return self.z * (1 - self.z)


class CoefficientSet(BaseModel):
    """ A_0..A_K at one saddle; A_0 = 1 and g0 is the leading coefficient of (1/s) ds/dw """
    model_config = ConfigDict(frozen=True)

    values: list[BigComplex]
    g0: BigComplex
    saddle: SaddleContext
    closed_form_deltas: dict[int, BigFloat] = {}

    @property
    def K(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, k: int):
        return self.values[k]
