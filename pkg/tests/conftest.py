import numpy as np
import pytest

from chiralpotts.algebra import UnityContext
from chiralpotts.rapidity import modulus_from_k, sample_conditioned


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def make_ctx(N: int) -> UnityContext:
    return UnityContext(N)


def conditioned_points(N: int, k: complex, count: int, seed: int):
    """Well-separated rapidities for a given order and modulus."""
    ctx = make_ctx(N)
    mod = modulus_from_k(k)
    points = sample_conditioned(np.random.default_rng(seed), mod, ctx, count)
    return ctx, mod, points
