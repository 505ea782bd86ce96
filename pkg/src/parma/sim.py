"""Sample-path generation and Monte Carlo validation experiments.

Simulation is deterministic given the plan's seed: replication streams are
split off a single ``numpy.random.SeedSequence`` (one child per path), so
any subset of paths can be reproduced independently.  Stored paths carry
the ``p`` values and ``q`` innovations immediately before their first
point, which makes every stored observation exactly replayable from the
recursion.

Stationary models are burned in from a zero start; models failing the
convergence diagnostic are simulated conditionally from exact zero initial
values with no burn-in (their unconditional moments do not exist, so there
is nothing to converge to).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .forecast import ForecastOrigin, predict
from .model import PeriodicModel, validate
from .moments import check_convergence

__all__ = [
    "SimPlan",
    "SamplePath",
    "McForecastRow",
    "simulate",
    "replay",
    "mc_forecast_experiment",
]

_DISTS = ("gaussian", "student-t", "custom")


@dataclass(frozen=True)
class SimPlan:
    """Everything needed to generate one batch of sample paths.

    Parameters
    ----------
    model : PeriodicModel
    length : int
        Points kept per path; the first kept point sits in season 1.
    n_paths : int
        Replication count.
    burn_in : int, optional
        Pre-sample steps discarded before the kept window.  Defaults to a
        length at which the initial state has decayed below 1e-10 (at
        least ten periods) for stationary models and to zero otherwise.
        Stationary models require at least ten periods; models failing
        the convergence diagnostic must use zero.
    seed : int
        Seed for the replication stream splitter.
    dist : str
        "gaussian", "student-t" (variance-normalized, needs ``df > 2``)
        or "custom" (standardized draws supplied in ``custom``).
    custom : ndarray, optional
        Standardized innovations, shape ``(n_paths, burn_in + length)``;
        scaled by the model's periodic variance schedule.
    """

    model: PeriodicModel
    length: int
    n_paths: int = 1
    burn_in: int | None = None
    seed: int = 0
    dist: str = "gaussian"
    df: float | None = None
    custom: np.ndarray | None = None

    def __post_init__(self) -> None:
        validate(self.model)
        if self.length < 1:
            raise ValueError(f"length must be >= 1, got {self.length}")
        if self.n_paths < 1:
            raise ValueError(f"n_paths must be >= 1, got {self.n_paths}")
        if self.dist not in _DISTS:
            raise ValueError(f"dist must be one of {_DISTS}, got {self.dist!r}")
        if self.dist == "student-t" and (self.df is None or self.df <= 2):
            raise ValueError("student-t innovations need df > 2")
        if self.dist == "custom" and self.custom is None:
            raise ValueError("dist='custom' needs the draws in `custom`")


@dataclass(frozen=True)
class SamplePath:
    """One realized path plus the short pre-history that makes it replayable.

    ``y[i]`` and ``eps[i]`` belong to absolute time ``start + i`` (whose
    season is ``seasons[i]``); ``pre_y``/``pre_eps`` hold the ``p`` values
    and ``q`` innovations at times ``start-1, start-2, ...`` (newest
    first).
    """

    start: int
    seasons: np.ndarray
    y: np.ndarray
    eps: np.ndarray
    pre_y: np.ndarray
    pre_eps: np.ndarray

    def __len__(self) -> int:
        return len(self.y)

    @property
    def times(self) -> np.ndarray:
        return self.start + np.arange(len(self.y))


def _recurse(model: PeriodicModel, eps: np.ndarray, pre_y, pre_eps,
             t0: int) -> np.ndarray:
    """Run the difference equation over ``eps``; shared by simulate and replay.

    Both callers must flow through this exact loop so replayed values are
    bit-identical to generated ones.
    """
    p, q, l = model.p, model.q, model.l
    drift = model.drift.tolist()
    ar = model.ar.tolist()
    ma = model.ma.tolist()
    state = list(pre_y)
    hist = list(pre_eps)
    eps_list = eps.tolist()
    out = [0.0] * len(eps_list)
    s0 = (t0 - 1) % l
    for i, e in enumerate(eps_list):
        v = drift[s0] + e
        for j in range(q):
            v += ma[j][s0] * hist[j]
        for m in range(p):
            v += ar[m][s0] * state[m]
        out[i] = v
        if p:
            state = [v] + state[:-1]
        if q:
            hist = [e] + hist[:-1]
        s0 = s0 + 1 if s0 + 1 < l else 0
    return np.asarray(out)


def _resolve_burn_in(plan: SimPlan) -> int:
    model = plan.model
    l = model.l
    diag = check_convergence(model)
    if diag.passed:
        floor = 10 * l
        if plan.burn_in is not None:
            if plan.burn_in < floor:
                raise ValueError(
                    f"stationary models need burn_in >= 10*l = {floor}, "
                    f"got {plan.burn_in}")
            return plan.burn_in
        burn = floor
        if 0.0 < diag.rho_hat < 1.0:
            need = int(np.ceil(np.log(1e-10) / np.log(diag.rho_hat)))
            burn = max(burn, need + (-need) % l)
        return min(burn, 1000 * l)
    if plan.burn_in not in (None, 0):
        raise ValueError(
            "models failing the convergence diagnostic are simulated "
            "conditionally from zero initial values; burn_in must be 0")
    return 0


def _standardized_draws(plan: SimPlan, rng: np.random.Generator,
                        n: int, path_index: int) -> np.ndarray:
    if plan.dist == "gaussian":
        return rng.standard_normal(n)
    if plan.dist == "student-t":
        return rng.standard_t(plan.df, size=n) / np.sqrt(plan.df / (plan.df - 2.0))
    draws = np.asarray(plan.custom, dtype=float)
    if draws.ndim == 1:
        draws = draws[None, :]
    if draws.shape != (plan.n_paths, n):
        raise ValueError(
            f"custom draws must have shape ({plan.n_paths}, {n}), "
            f"got {draws.shape}")
    return draws[path_index]


def simulate(plan: SimPlan):
    """Generate the plan's paths; a single path unless ``n_paths > 1``.

    The kept window starts at absolute time 1 (season 1); the discarded
    burn-in occupies times ``1 - burn_in .. 0``.
    """
    model = plan.model
    p, q, l = model.p, model.q, model.l
    burn = _resolve_burn_in(plan)
    n_total = burn + plan.length
    t0 = 1 - burn
    sig = np.sqrt(model.sigma2[(np.arange(t0, t0 + n_total) - 1) % l])
    seasons = (np.arange(1, plan.length + 1) - 1) % l + 1

    paths = []
    for idx, child in enumerate(np.random.SeedSequence(plan.seed).spawn(plan.n_paths)):
        rng = np.random.default_rng(child)
        eps = _standardized_draws(plan, rng, n_total, idx) * sig
        y = _recurse(model, eps, np.zeros(p), np.zeros(q), t0)
        pre_y = y[burn - 1::-1][:p] if burn else np.zeros(p)
        if burn and p > burn:
            pre_y = np.concatenate([pre_y, np.zeros(p - burn)])
        pre_eps = eps[burn - 1::-1][:q] if burn else np.zeros(q)
        if burn and q > burn:
            pre_eps = np.concatenate([pre_eps, np.zeros(q - burn)])
        paths.append(SamplePath(start=1, seasons=seasons.copy(),
                                y=y[burn:], eps=eps[burn:],
                                pre_y=pre_y, pre_eps=pre_eps))
    return paths[0] if plan.n_paths == 1 else paths


def replay(model: PeriodicModel, path: SamplePath) -> np.ndarray:
    """Recompute the path's values from its innovations and pre-history.

    Bit-identical to the stored values: the same recursion kernel runs on
    the same floats.
    """
    return _recurse(model, path.eps, path.pre_y, path.pre_eps, path.start)


@dataclass(frozen=True)
class McForecastRow:
    """One horizon of a forecast-validation experiment."""

    horizon: int
    bias: float
    bias_limit: float
    empirical_mse: float
    theoretical_mse: float
    std_error: float
    z_score: float
    passed: bool


def mc_forecast_experiment(model: PeriodicModel, origin: ForecastOrigin,
                           max_horizon: int, n_paths: int, seed: int = 0,
                           dist: str = "gaussian",
                           df: float | None = None) -> list[McForecastRow]:
    """Compare empirical forecast-error variances against the closed form.

    Simulates ``n_paths`` futures from the fixed origin (the experiment is
    conditional, so no stationarity is needed), measures the mean squared
    error of the optimal predictor per horizon, and flags agreement within
    three standard errors of the squared-error mean.
    """
    validate(model)
    report = predict(model, origin, max_horizon)
    p, q, l = model.p, model.q, model.l
    tau = origin.time

    rng = np.random.default_rng(np.random.SeedSequence(seed))
    if dist == "gaussian":
        raw = rng.standard_normal((n_paths, max_horizon))
    elif dist == "student-t":
        if df is None or df <= 2:
            raise ValueError("student-t innovations need df > 2")
        raw = rng.standard_t(df, size=(n_paths, max_horizon))
        raw /= np.sqrt(df / (df - 2.0))
    else:
        raise ValueError(f"dist must be 'gaussian' or 'student-t', got {dist!r}")
    sig = np.sqrt(model.sigma2[(np.arange(tau + 1, tau + max_horizon + 1) - 1) % l])
    eps = raw * sig[None, :]

    state = [np.full(n_paths, origin.tail[m]) for m in range(p)]
    hist = [np.full(n_paths, origin.innovations[j]) for j in range(q)] if q else []
    errors = np.zeros((n_paths, max_horizon))
    for h in range(1, max_horizon + 1):
        s0 = model.clock.season0(tau + h)
        y = model.drift[s0] + eps[:, h - 1]
        for j in range(q):
            y = y + model.ma[j, s0] * hist[j]
        for m in range(p):
            y = y + model.ar[m, s0] * state[m]
        errors[:, h - 1] = y - report.points[h - 1]
        if p:
            state = [y] + state[:-1]
        if q:
            hist = [eps[:, h - 1]] + hist[:-1]

    rows = []
    for h in range(1, max_horizon + 1):
        err = errors[:, h - 1]
        sq = err * err
        emp = float(sq.mean())
        se = float(sq.std(ddof=1) / np.sqrt(n_paths))
        theo = float(report.mses[h - 1])
        z = (emp - theo) / se if se > 0 else 0.0
        rows.append(McForecastRow(
            horizon=h,
            bias=float(err.mean()),
            bias_limit=4.0 * float(np.sqrt(theo / n_paths)),
            empirical_mse=emp,
            theoretical_mse=theo,
            std_error=se,
            z_score=float(z),
            passed=bool(abs(z) <= 3.0),
        ))
    return rows
