"""Log-log slope fitting shared by the experiment drivers and the CLI."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InsufficientData


@dataclass(frozen=True)
class SlopeFit:
    """Least-squares fit of ``log y`` against ``log x``."""

    slope: float
    intercept: float
    r_squared: float
    n_points: int


def fit_slope(x, y) -> SlopeFit:
    """Fit ``y ~ C * x**slope`` by least squares in log-log coordinates.

    Requires at least three strictly positive points with distinct abscissae.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise InsufficientData("x and y must be 1-d arrays of equal length")
    if len(x) < 3:
        raise InsufficientData(f"need at least 3 points, got {len(x)}")
    if np.any(x <= 0) or np.any(y <= 0):
        raise InsufficientData("log-log fit needs strictly positive data")
    lx, ly = np.log(x), np.log(y)
    if np.ptp(lx) == 0.0:
        raise InsufficientData("all abscissae coincide; slope is undefined")
    mx, my = lx.mean(), ly.mean()
    sxx = float(((lx - mx) ** 2).sum())
    sxy = float(((lx - mx) * (ly - my)).sum())
    slope = sxy / sxx
    intercept = my - slope * mx
    resid = ly - (slope * lx + intercept)
    syy = float(((ly - my) ** 2).sum())
    r2 = 1.0 if syy == 0.0 else 1.0 - float((resid**2).sum()) / syy
    return SlopeFit(slope=slope, intercept=intercept, r_squared=r2, n_points=len(x))
