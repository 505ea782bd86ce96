"""Exact solution of the periodic difference equation.

Anchored at an origin ``tau`` with ``p`` initial values, the value ``nl``
steps later splits into a homogeneous part (what the initial conditions
propagate to) and a particular part (accumulated drift plus accumulated
innovations), each a linear combination with Green-coefficient weights:

    hom   = g[nl] * y_tau
            + sum_{m=1..p-1} sum_{i=1..p-m} phi_{m+i}(tau+i) g[nl-i] y_{tau-m}
    par   = sum_{r=0..nl-1} g[r] * drift(t-r) + sum_{r=0..nl-1} g[r] * u_{t-r}

with ``u_s = eps_s + sum_j theta_j(s) eps_{s-j}`` (plain ``eps`` when
``q = 0``) and ``g`` the Green table anchored at ``t = tau + nl``.  The
``m = 0`` inner sum equals ``g[nl]`` by the first-column expansion, so it
is taken straight from the table.

:func:`direct_recursion` iterates the difference equation step by step and
serves as the independent oracle for :func:`general_solution`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .greens import GreenTable, green_coefficients
from .model import PeriodicModel, validate

__all__ = ["SolutionInput", "SolutionDecomposition", "general_solution",
           "direct_recursion"]


@dataclass(frozen=True)
class SolutionInput:
    """Origin data for one evaluation of the solution formulas.

    Parameters
    ----------
    model : PeriodicModel
    origin : int
        Anchor time ``tau``; the solution is evaluated at ``tau + steps``.
    steps : int
        Number of steps ``nl >= 0``.
    initial : array_like, shape (p,)
        ``y_tau, y_{tau-1}, ..., y_{tau-p+1}`` (newest first).
    innovations : array_like, shape (steps + q,)
        ``eps_{tau-q+1}, ..., eps_{tau+steps}`` in chronological order.
        The ``q`` pre-origin values are required inputs, not assumed zero;
        pass explicit zeros if that is what you mean.
    """

    model: PeriodicModel
    origin: int
    steps: int
    initial: np.ndarray
    innovations: np.ndarray

    def __post_init__(self) -> None:
        validate(self.model)
        object.__setattr__(self, "initial",
                           np.asarray(self.initial, dtype=float).ravel())
        object.__setattr__(self, "innovations",
                           np.asarray(self.innovations, dtype=float).ravel())
        if self.steps < 0:
            raise ValueError(f"steps must be >= 0, got {self.steps}")
        if self.initial.shape != (self.model.p,):
            raise ValueError(
                f"need exactly p={self.model.p} initial values, "
                f"got {self.initial.shape}")
        need = self.steps + self.model.q
        if self.innovations.shape != (need,):
            raise ValueError(
                f"need steps+q={need} innovations, got {self.innovations.shape}")

    def eps(self, t: int) -> float:
        """Innovation at absolute time ``t`` (within the stored window)."""
        idx = t - (self.origin - self.model.q + 1)
        return float(self.innovations[idx])


@dataclass(frozen=True)
class SolutionDecomposition:
    """Homogeneous / particular split; ``total`` is their exact float sum."""

    hom: float
    par_drift: float
    par_noise: float

    @property
    def total(self) -> float:
        return self.hom + self.par_drift + self.par_noise


def _forcing(inp: SolutionInput, t: int) -> float:
    """``u_t``: the innovation plus its MA tail at time ``t``."""
    model = inp.model
    u = inp.eps(t)
    if model.q:
        s0 = model.clock.season0(t)
        lo = t - (inp.origin - model.q + 1)
        for j in range(1, model.q + 1):
            u += model.ma[j - 1, s0] * inp.innovations[lo - j]
    return u


def general_solution(inp: SolutionInput,
                     table: GreenTable | None = None) -> SolutionDecomposition:
    """Closed-form value ``steps`` ahead of the origin, split into parts.

    ``steps = 0`` returns the identity (``total == y_tau``); ``steps = 1``
    reproduces one step of the difference equation.  ``p > steps`` is
    allowed: the seed values of the Green table keep every sum total.
    """
    model = inp.model
    t = inp.origin + inp.steps
    if table is None or table.max_lag < inp.steps:
        table = green_coefficients(model, t, inp.steps)

    hom = table.value(inp.steps) * inp.initial[0] if model.p else 0.0
    view = model.view()
    for m in range(1, model.p):
        acc = 0.0
        for i in range(1, model.p - m + 1):
            acc += view.ar(m + i, inp.origin + i) * table.value(inp.steps - i)
        hom += acc * inp.initial[m]

    g = table.nonnegative
    par_drift = 0.0
    par_noise = 0.0
    for r in range(inp.steps):
        par_drift += g[r] * view.drift(t - r)
        par_noise += g[r] * _forcing(inp, t - r)
    return SolutionDecomposition(hom=hom, par_drift=par_drift,
                                 par_noise=par_noise)


def direct_recursion(inp: SolutionInput) -> float:
    """Iterate the difference equation forward ``steps`` times (oracle path)."""
    model = inp.model
    p = model.p
    # state[m] = y_{u-1-m} while computing time u
    state = list(inp.initial)
    view = model.view()
    y = inp.initial[0] if p else 0.0
    for u in range(inp.origin + 1, inp.origin + inp.steps + 1):
        y = view.drift(u) + _forcing(inp, u)
        for m in range(1, p + 1):
            y += view.ar(m, u) * state[m - 1]
        if p:
            state = [y] + state[:-1]
    return float(y)
