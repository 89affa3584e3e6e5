import warnings

import pytest

from rfbvp.errors import ConditioningWarning
from rfbvp.kernel import FractionalParams

PINNED_ALPHAS = (0.25, 0.5, 0.75, 1.25, 1.5, 1.75, 2.0)


def pinned_pairs():
    pairs = []
    for a in PINNED_ALPHAS:
        half = min(a, 2 - a) / 2
        pairs.extend((a, t) for t in sorted({0.0, half, -half}))
    return pairs


@pytest.fixture(params=pinned_pairs(), ids=lambda p: f"a{p[0]}-t{p[1]:+.4g}")
def pinned(request):
    return FractionalParams(*request.param)


@pytest.fixture(autouse=True)
def _quiet_conditioning():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ConditioningWarning)
        yield
