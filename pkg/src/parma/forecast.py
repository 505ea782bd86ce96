"""Optimal multi-step predictors, forecast-error weights and mean-square errors.

The h-step-ahead conditional mean from origin ``tau`` is the general
solution with future innovations set to zero, plus (for MA orders above
zero) the weighted pre-origin innovations that remain in the information
set:

    point(h) = sum_{r<h} g[r] drift(t-r) + g[h] y_tau
               + sum_{m=1..p-1} sum_{i=1..p-m} phi_{m+i}(tau+i) g[h-i] y_{tau-m}
               + sum_{r=h..h-1+q} w'[r] eps_{t-r},        t = tau + h.

The forecast error is ``sum_{r<h} w[r] eps_{t-r}`` with ``w`` the
error-weight sequence (the Green coefficients themselves when q = 0), so

    mse(h) = sum_{r<h} w[r]^2 sigma2(t - r).

Because the innovation variance is periodic, mse(h) need not be monotone
in h.  All weights anchor at the *target* time, not the origin; the report
records each target season to make that explicit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .greens import GreenTable, error_weights, green_coefficients, known_innovation_weights
from .model import PeriodicModel, validate

__all__ = [
    "ForecastOrigin",
    "ForecastReport",
    "MissingInnovationTailError",
    "predict",
    "forecast_error_coeffs",
    "mse_profile",
]


class MissingInnovationTailError(ValueError):
    """An MA model was asked to forecast without its pre-origin innovations."""


@dataclass(frozen=True)
class ForecastOrigin:
    """Conditioning information for a forecast.

    Parameters
    ----------
    time : int
        Origin ``tau``; forecasts target ``tau + h``.
    tail : array_like, shape (p,)
        Observed ``y_tau, y_{tau-1}, ..., y_{tau-p+1}`` (newest first).
    innovations : array_like, shape (q,), optional
        Known ``eps_tau, ..., eps_{tau-q+1}`` (newest first).  Required
        exactly when ``q >= 1``.
    """

    time: int
    tail: np.ndarray = ()
    innovations: np.ndarray | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "tail", np.asarray(self.tail, dtype=float).ravel())
        if self.innovations is not None:
            object.__setattr__(
                self, "innovations",
                np.asarray(self.innovations, dtype=float).ravel())


def _check_origin(model: PeriodicModel, origin: ForecastOrigin) -> None:
    validate(model)
    if origin.tail.shape != (model.p,):
        raise ValueError(
            f"origin tail must hold exactly p={model.p} values, "
            f"got {origin.tail.shape}")
    if model.q >= 1:
        if origin.innovations is None:
            raise MissingInnovationTailError(
                f"model has q={model.q}; the last {model.q} innovations at "
                f"the origin are required")
        if origin.innovations.shape != (model.q,):
            raise ValueError(
                f"origin innovations must hold exactly q={model.q} values, "
                f"got {origin.innovations.shape}")


@dataclass(frozen=True)
class ForecastReport:
    """Per-horizon point forecasts, error weights and mean-square errors.

    ``error_weights[h-1]`` holds the weights on ``eps_{t}, ..., eps_{t-h+1}``
    (lag order, anchored at the target ``t = origin + h``), and
    ``known_adjustments[h-1]`` the contribution of pre-origin innovations
    to the point forecast (zero when q = 0).
    """

    origin: int
    points: np.ndarray
    mses: np.ndarray
    error_weights: tuple
    known_adjustments: np.ndarray
    target_seasons: np.ndarray

    @property
    def horizons(self) -> np.ndarray:
        return np.arange(1, len(self.points) + 1)

    def interval(self, h: int, z: float) -> tuple[float, float]:
        """Gaussian-innovation interval ``point +- z * sqrt(mse)`` at horizon h.

        Only the first two moments back this band; no stronger
        distributional claim is made.
        """
        half = z * float(np.sqrt(self.mses[h - 1]))
        point = float(self.points[h - 1])
        return point - half, point + half


def _season_tables(model: PeriodicModel, origin: int, max_h: int) -> dict[int, GreenTable]:
    """Green tables keyed by season for every target ``origin+1 .. origin+max_h``."""
    tables: dict[int, GreenTable] = {}
    for h in range(1, max_h + 1):
        s = model.season(origin + h)
        if s not in tables:
            tables[s] = green_coefficients(model, origin + h, max_h)
        if len(tables) == model.l:
            break
    return tables


def _sigma2_backwards(model: PeriodicModel, t: int, n: int) -> np.ndarray:
    """``sigma2`` at times ``t, t-1, ..., t-n+1``."""
    s0 = model.clock.season0(t)
    idx = (s0 - np.arange(n)) % model.l
    return model.sigma2[idx]


def _drift_backwards(model: PeriodicModel, t: int, n: int) -> np.ndarray:
    s0 = model.clock.season0(t)
    idx = (s0 - np.arange(n)) % model.l
    return model.drift[idx]


def predict(model: PeriodicModel, origin: ForecastOrigin, max_horizon: int) -> ForecastReport:
    """Optimal (least-squares) linear predictions for horizons ``1..max_horizon``.

    Raises
    ------
    MissingInnovationTailError
        When ``q >= 1`` and the origin carries no innovation tail.
    """
    _check_origin(model, origin)
    if max_horizon < 1:
        raise ValueError(f"max_horizon must be >= 1, got {max_horizon}")
    tau = origin.time
    view = model.view()
    tables = _season_tables(model, tau, max_horizon)

    points = np.zeros(max_horizon)
    mses = np.zeros(max_horizon)
    adjustments = np.zeros(max_horizon)
    weights: list[np.ndarray] = []
    seasons = np.zeros(max_horizon, dtype=int)

    for h in range(1, max_horizon + 1):
        t = tau + h
        seasons[h - 1] = model.season(t)
        table = tables[model.season(t)]
        g = table.nonnegative

        point = float(np.dot(g[:h], _drift_backwards(model, t, h)))
        if model.p:
            point += table.value(h) * origin.tail[0]
            for m in range(1, model.p):
                acc = 0.0
                for i in range(1, model.p - m + 1):
                    acc += view.ar(m + i, tau + i) * table.value(h - i)
                point += acc * origin.tail[m]
        if model.q:
            w_known = known_innovation_weights(model, t, h, table=table)
            adj = float(np.dot(w_known, origin.innovations))
            adjustments[h - 1] = adj
            point += adj

        w = error_weights(model, t, h, table=table)
        weights.append(w)
        mses[h - 1] = float(np.dot(w * w, _sigma2_backwards(model, t, h)))
        points[h - 1] = point

    return ForecastReport(origin=tau, points=points, mses=mses,
                          error_weights=tuple(weights),
                          known_adjustments=adjustments,
                          target_seasons=seasons)


def forecast_error_coeffs(model: PeriodicModel, target: int, horizon: int) -> np.ndarray:
    """Weights of ``eps_target, ..., eps_{target-horizon+1}`` in the forecast error.

    Pure AR models return the Green coefficients; MA orders fold in the
    theta terms.  Weights anchor at the target time.
    """
    validate(model)
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    return error_weights(model, target, horizon)


def mse_profile(model: PeriodicModel, origin_time: int, max_horizon: int) -> np.ndarray:
    """Forecast-error variances for horizons ``1..max_horizon`` from an origin.

    Independent of the observed values: only the coefficient tables and
    the periodic variance schedule enter.
    """
    validate(model)
    if max_horizon < 1:
        raise ValueError(f"max_horizon must be >= 1, got {max_horizon}")
    out = np.zeros(max_horizon)
    tables = _season_tables(model, origin_time, max_horizon)
    for h in range(1, max_horizon + 1):
        t = origin_time + h
        w = error_weights(model, t, h, table=tables[model.season(t)])
        out[h - 1] = float(np.dot(w * w, _sigma2_backwards(model, t, h)))
    return out
