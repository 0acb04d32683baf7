import numpy as np
from pydantic import BaseModel, ConfigDict

from app.core.utils.enums import BranchLabel, Termination
from app.models.saddle import SaddleContext

PATH_HEADERS = ("branch_label", "xi", "eta", "re_psi")


class PathPolyline(BaseModel):
    """
    One branch of a steepest descent or ascent path, s = xi + i eta, starting at the saddle. Im psi is held at
    its saddle value; `im_psi` records the unwrapped value actually reached at every point.
    """
    model_config = ConfigDict(frozen=True)

    direction_label: BranchLabel
    termination: Termination
    points: list[tuple[float, float]]
    re_psi: list[float]
    im_psi: list[float]
    arc_length: float
    saddle: SaddleContext

    @property
    def xi(self) -> np.ndarray:
        return np.array([p[0] for p in self.points])

    @property
    def eta(self) -> np.ndarray:
        return np.array([p[1] for p in self.points])

    @property
    def as_complex(self) -> np.ndarray:
        return self.xi + 1j * self.eta

    def im_psi_spread(self) -> float:
        """ max |Im psi - Im psi(saddle)| along the branch """
        values = np.array(self.im_psi)
        return float(np.max(np.abs(values - values[0])))

    def eta_at(self, xi: float) -> float:
        """ eta linearly interpolated at the first crossing of `xi` """
        xs, ys = self.xi, self.eta
        for j in range(1, len(xs)):
            lo, hi = sorted((xs[j - 1], xs[j]))
            if lo <= xi <= hi and hi > lo:
                t = (xi - xs[j - 1]) / (xs[j] - xs[j - 1])
                return float(ys[j - 1] + t * (ys[j] - ys[j - 1]))
        raise ValueError(f"branch {self.direction_label.value} never reaches xi = {xi}")

    def to_rows(self) -> list[tuple]:
        return [(self.direction_label.value, xi, eta, re) for (xi, eta), re in zip(self.points, self.re_psi)]
