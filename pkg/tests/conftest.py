import hypothesis
import numpy as np
import pytest

from jigsolve.core import GridGeometry, Tile
from jigsolve.generate import make_instance
from jigsolve.synthetic import textured_image

hypothesis.settings.register_profile(
    "suite", max_examples=25, deadline=None, derandomize=True
)
hypothesis.settings.load_profile("suite")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_tile(rng, side=16, index=0, low=0, high=256):
    pixels = rng.integers(low, high, size=(side, side, 3), dtype=np.uint8)
    return Tile(pixels, original_index=index)


@pytest.fixture
def random_tiles(rng):
    return [random_tile(rng, side=16, index=k) for k in range(9)]


@pytest.fixture
def textured_instance():
    img = textured_image(216, 216, seed=7)
    return make_instance(img, GridGeometry(3, 3), beta=0.0, seed=11)
