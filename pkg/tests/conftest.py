import numpy as np
import pytest

from parma import PeriodicModel


def random_model(rng, p=None, q=None, l=None, coef_scale=1.0,
                 sigma_range=(0.2, 2.0), drift_scale=1.0) -> PeriodicModel:
    """Random valid model; orders/period drawn when not pinned."""
    if l is None:
        l = int(rng.integers(1, 7))
    if p is None:
        p = int(rng.integers(0, 5))
    if q is None:
        q = int(rng.integers(0, 4))
    return PeriodicModel(
        l=l, p=p, q=q,
        drift=rng.uniform(-drift_scale, drift_scale, l),
        ar=rng.uniform(-coef_scale, coef_scale, (p, l)),
        ma=rng.uniform(-coef_scale, coef_scale, (q, l)),
        sigma2=rng.uniform(*sigma_range, l),
    )


def random_stationary_model(rng, max_tries=200, **kwargs) -> PeriodicModel:
    """Rejection-sample a model whose stacked AR companion radius is < 0.95."""
    from parma.vsform import build_vsform, stationarity

    for _ in range(max_tries):
        model = random_model(rng, **kwargs)
        if model.p == 0:
            return model
        verdict = stationarity(build_vsform(model))
        if verdict.max_root_modulus < 0.95:
            return model
    raise AssertionError("could not draw a stationary model")


@pytest.fixture
def rng():
    return np.random.default_rng(20240318)
