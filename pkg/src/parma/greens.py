"""Green-function coefficients of periodic AR models.

The exact solution of the periodic difference equation writes ``y_t`` as a
weighted sum of past innovations; the weight on ``eps_{t-r}`` equals the
determinant of an ``r x r`` banded lower Hessenberg matrix (a generalized
continuant of bandwidth ``p + 1``) carrying the periodic AR coefficients.
Expanding that determinant along its first column collapses it to the
``p``-term recurrence

    g[k] = sum_{i=1..min(p,k)} phi_i(t - k + i) * g[k - i],

seeded with ``g[0] = 1`` and ``g[-m] = 0`` for ``m = 1..p-1``.  The
recurrence is exact algebra, costs ``O(p * H)`` for a table of length
``H``, and is the only production path; the determinant evaluators in this
module exist to verify it.

Tables depend on the anchor time ``t`` only through its season, so ``l``
tables cover all anchors.

For PARMA models two derived weight sequences appear:

* ``error_weights`` -- weights of the post-origin innovations in the
  forecast error, equal to the moving-average-infinity (psi) weights;
* ``known_innovation_weights`` -- weights multiplying the ``q`` pre-origin
  innovations in the optimal predictor.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .model import PeriodicModel, validate

__all__ = [
    "GreenTable",
    "FundamentalMatrix",
    "green_coefficients",
    "season_tables",
    "error_weights",
    "known_innovation_weights",
    "build_fundamental",
    "laplace_determinant",
    "lu_determinant",
]

#: |g| beyond this is reported as-is but flagged as overflowing; explosive
#: models are legitimate (the solution theory needs no stationarity), the
#: flag only warns that double precision is running out of headroom.
OVERFLOW_FLAG = 1e100

_LAPLACE_MAX = 14
_LU_MAX = 512


@dataclass(frozen=True)
class GreenTable:
    """Green-function values for one anchor season.

    ``values`` stores lags ``-(p-1) .. max_lag`` contiguously (seed zeros
    included) so predictor formulas can index below zero without special
    cases.  Use :meth:`value` / :meth:`lags` for lag-indexed access.
    """

    anchor_season: int
    max_lag: int
    p: int
    values: np.ndarray

    def __post_init__(self) -> None:
        self.values.flags.writeable = False

    @property
    def _pad(self) -> int:
        return max(self.p, 1) - 1

    def value(self, r: int) -> float:
        """Green coefficient at lag ``r`` (``r >= -(p-1)``)."""
        if r > self.max_lag or r < -self._pad:
            raise IndexError(f"lag {r} outside -{self._pad}..{self.max_lag}")
        return float(self.values[r + self._pad])

    def lags(self, lo: int, hi: int) -> np.ndarray:
        """Values at lags ``lo..hi`` inclusive, as an array."""
        if hi > self.max_lag or lo < -self._pad:
            raise IndexError(f"lags {lo}..{hi} outside -{self._pad}..{self.max_lag}")
        return self.values[lo + self._pad:hi + 1 + self._pad]

    @property
    def nonnegative(self) -> np.ndarray:
        """Values at lags ``0..max_lag``."""
        return self.values[self._pad:]

    @property
    def overflowing(self) -> bool:
        """True when the table left the comfortable double-precision range."""
        return bool(np.max(np.abs(self.values)) > OVERFLOW_FLAG)


def green_coefficients(model: PeriodicModel, t: int, max_lag: int) -> GreenTable:
    """Green-function table anchored at time ``t`` up to lag ``max_lag``.

    Parameters
    ----------
    model : PeriodicModel
    t : int
        Anchor time; only its season matters.
    max_lag : int
        Highest lag computed (>= 0).

    Returns
    -------
    GreenTable

    Notes
    -----
    Runs the first-column-expansion recurrence in plain Python floats;
    building a daily-seasonality table (l = 365, p = 4) to lag 10,000
    takes a few milliseconds.
    """
    validate(model)
    if max_lag < 0:
        raise ValueError(f"max_lag must be >= 0, got {max_lag}")
    p, l = model.p, model.l
    pad = max(p, 1) - 1
    out = np.zeros(pad + max_lag + 1)
    out[pad] = 1.0

    if p > 0 and max_lag > 0:
        # hot loop: local lists beat ndarray indexing here
        ar_rows = model.ar.tolist()
        g = [0.0] * (max_lag + 1)
        g[0] = 1.0
        for k in range(1, max_lag + 1):
            base = t - k - 1  # season0 of time t-k+i is (base + i) % l
            top = p if p < k else k
            acc = 0.0
            for i in range(1, top + 1):
                acc += ar_rows[i - 1][(base + i) % l] * g[k - i]
            g[k] = acc
        out[pad:] = g
    return GreenTable(anchor_season=model.season(t), max_lag=max_lag, p=p,
                      values=out)


def season_tables(model: PeriodicModel, max_lag: int) -> list[GreenTable]:
    """One Green table per anchor season (index ``s - 1``), up to ``max_lag``."""
    return [green_coefficients(model, s, max_lag) for s in range(1, model.l + 1)]


def error_weights(model: PeriodicModel, t: int, horizon: int,
                  table: GreenTable | None = None) -> np.ndarray:
    """Forecast-error weights at lags ``0 .. horizon-1`` anchored at ``t``.

    For a pure AR model these are the Green coefficients themselves; the MA
    part adds ``sum_j g[r-j] * theta_j(t-r+j)`` at each lag, with the
    below-seed terms zero.  The result is also the MA-infinity weight
    sequence of the process.
    """
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    if table is not None and table.anchor_season != model.season(t):
        raise ValueError("supplied table is anchored at a different season")
    if table is None or table.max_lag < horizon - 1:
        table = green_coefficients(model, t, horizon - 1)
    g = table.nonnegative
    if model.q == 0:
        return g[:horizon].copy()
    out = g[:horizon].copy()
    ma = model.ma
    s0 = model.clock.season0
    for r in range(horizon):
        acc = 0.0
        for j in range(1, min(model.q, r) + 1):
            acc += g[r - j] * ma[j - 1, s0(t - r + j)]
        out[r] += acc
    return out


def known_innovation_weights(model: PeriodicModel, t: int, lead: int,
                             table: GreenTable | None = None) -> np.ndarray:
    """Predictor weights on the ``q`` innovations known at the forecast origin.

    For an origin ``lead`` steps before ``t``, the optimal predictor adds
    ``sum_r w[r] * eps_{t-r}`` over ``r = lead .. lead+q-1``; this returns
    the ``w`` sequence (empty for ``q = 0``, which is a documented result,
    not an error).
    """
    if lead < 1:
        raise ValueError(f"lead must be >= 1, got {lead}")
    q = model.q
    if q == 0:
        return np.zeros(0)
    if table is not None and table.anchor_season != model.season(t):
        raise ValueError("supplied table is anchored at a different season")
    if table is None or table.max_lag < lead - 1:
        table = green_coefficients(model, t, lead - 1)
    g = table.nonnegative
    ma = model.ma
    s0 = model.clock.season0
    out = np.zeros(q)
    for idx, r in enumerate(range(lead, lead + q)):
        acc = 0.0
        for j in range(r - lead + 1, q + 1):
            if 0 <= r - j:
                acc += g[r - j] * ma[j - 1, s0(t - r + j)]
        out[idx] = acc
    return out


@dataclass(frozen=True)
class FundamentalMatrix:
    """Dense ``order x order`` solution matrix anchored at a time point.

    Lower Hessenberg with bandwidth ``p + 1``: ``-1`` on the superdiagonal,
    ``phi_{1+m}(anchor - order + i)`` at ``(i, j)`` when ``i = j + m`` for
    ``0 <= m <= p-1`` (1-based indices), zero elsewhere.  Its determinant
    is the Green coefficient at lag ``order``; deleting the first ``r``
    rows and columns yields the matrix of order ``order - r`` at the same
    anchor.
    """

    anchor: int
    order: int
    values: np.ndarray

    def __post_init__(self) -> None:
        self.values.flags.writeable = False

    def principal_submatrix(self, r: int) -> "FundamentalMatrix":
        """Drop the first ``r`` rows and columns (order shrinks by ``r``)."""
        if not 0 <= r < self.order:
            raise ValueError(f"r must be in 0..{self.order - 1}, got {r}")
        return FundamentalMatrix(self.anchor, self.order - r,
                                 self.values[r:, r:].copy())


def build_fundamental(model: PeriodicModel, t: int, order: int) -> FundamentalMatrix:
    """Construct the dense fundamental solution matrix of a given order."""
    validate(model)
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    view = model.view()
    a = np.zeros((order, order))
    for i in range(1, order):
        a[i - 1, i] = -1.0
    for m in range(0, min(model.p, order)):
        for j in range(1, order - m + 1):
            i = j + m
            a[i - 1, j - 1] = view.ar(1 + m, t - order + i)
    return FundamentalMatrix(anchor=t, order=order, values=a)


def laplace_determinant(a: np.ndarray | FundamentalMatrix) -> float:
    """Determinant by naive cofactor expansion along the first column.

    Exponential in general; zero entries are skipped, which keeps banded
    matrices tractable.  Guarded to order <= 14.
    """
    if isinstance(a, FundamentalMatrix):
        a = a.values
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"need a square matrix, got shape {a.shape}")
    if n > _LAPLACE_MAX:
        raise ValueError(f"naive expansion is limited to order {_LAPLACE_MAX}")
    rows = a.tolist()

    def expand(active: list[int], col: int) -> float:
        size = len(active)
        if size == 1:
            return rows[active[0]][col]
        if size == 2:
            r0, r1 = active
            return (rows[r0][col] * rows[r1][col + 1]
                    - rows[r1][col] * rows[r0][col + 1])
        if size == 3:
            a0, a1, a2 = rows[active[0]][col:col + 3]
            b0, b1, b2 = rows[active[1]][col:col + 3]
            c0, c1, c2 = rows[active[2]][col:col + 3]
            return (a0 * (b1 * c2 - b2 * c1)
                    - a1 * (b0 * c2 - b2 * c0)
                    + a2 * (b0 * c1 - b1 * c0))
        acc = 0.0
        for pos in range(size):
            r = active[pos]
            v = rows[r][col]
            if v == 0.0:
                continue
            del active[pos]
            sub = expand(active, col + 1)
            active.insert(pos, r)
            acc += v * sub if pos % 2 == 0 else -v * sub
        return acc

    if n == 0:
        return 1.0
    return expand(list(range(n)), 0)


def lu_determinant(a: np.ndarray | FundamentalMatrix) -> float:
    """Determinant via LU factorization with partial pivoting.

    Signs and magnitudes are combined in log space so large explosive
    tables do not overflow intermediate products.  Guarded to order <= 512.
    """
    if isinstance(a, FundamentalMatrix):
        a = a.values
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"need a square matrix, got shape {a.shape}")
    if n > _LU_MAX:
        raise ValueError(f"LU evaluator is limited to order {_LU_MAX}")
    with warnings.catch_warnings():
        # exactly singular inputs are a legitimate det = 0, not a problem
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    diag = np.diag(lu)
    if np.any(diag == 0.0):
        return 0.0
    sign = 1.0 if (np.sum(piv != np.arange(n)) % 2 == 0) else -1.0
    sign *= np.prod(np.sign(diag))
    return float(sign * np.exp(np.sum(np.log(np.abs(diag)))))
