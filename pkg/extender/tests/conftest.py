import numpy as np
import pytest

from gan_extender import ExtenderConfig, ExtensionModel, build_fallback_model


@pytest.fixture(scope="session")
def model_dir(tmp_path_factory):
    path = tmp_path_factory.mktemp("models") / "fallback"
    build_fallback_model(path)
    return path


@pytest.fixture(scope="session")
def model(model_dir):
    return ExtensionModel(ExtenderConfig(model_source=str(model_dir)))


@pytest.fixture
def rng():
    return np.random.default_rng(777)
