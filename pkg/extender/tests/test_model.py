import numpy as np
import pytest

from gan_extender import ExtenderConfig, ExtensionModel, ModelError, resolve_model_source


class TestConfig:
    def test_fraction_range(self):
        with pytest.raises(ModelError):
            ExtenderConfig(model_source="x", extension_fraction=0.0)
        with pytest.raises(ModelError):
            ExtenderConfig(model_source="x", extension_fraction=0.6)
        ExtenderConfig(model_source="x", extension_fraction=0.5)

    def test_device_validation(self):
        with pytest.raises(ModelError):
            ExtenderConfig(model_source="x", device="tpu")

    def test_resolve_source(self, monkeypatch):
        assert resolve_model_source("path") == "path"
        monkeypatch.setenv("GAN_EXTENDER_MODEL", "from-env")
        assert resolve_model_source(None) == "from-env"
        monkeypatch.delenv("GAN_EXTENDER_MODEL")
        with pytest.raises(ModelError):
            resolve_model_source(None)


class TestLoading:
    def test_missing_directory(self, tmp_path):
        with pytest.raises(ModelError, match="not a SavedModel"):
            ExtensionModel(ExtenderConfig(model_source=str(tmp_path / "nope")))

    def test_remote_handle_rejected(self):
        with pytest.raises(ModelError, match="download"):
            ExtensionModel(ExtenderConfig(model_source="https://example.com/model"))

    def test_discovers_resolution(self, model):
        assert model.resolution == 257
        assert model.content_width == 193


class TestExtendRight:
    def test_output_geometry(self, model, rng):
        image = rng.integers(0, 256, (72, 72, 3), dtype=np.uint8)
        out = model.extend_right(image)
        assert out.shape == (72, 72 + model.natural_band(72), 3)
        assert np.array_equal(out[:, :72], image)

    def test_eighth_fraction_geometry(self, model_dir, rng):
        # recorded fixture geometry: a 72-wide input at fraction 1/8 yields a
        # 10-column synthesized band (72 * 0.125 / 0.875 rounds to 10)
        from gan_extender import build_fallback_model

        path = model_dir.parent / "fallback_eighth"
        if not path.exists():
            build_fallback_model(path, fraction=0.125)
        model = ExtensionModel(
            ExtenderConfig(model_source=str(path), extension_fraction=0.125)
        )
        image = rng.integers(0, 256, (72, 72, 3), dtype=np.uint8)
        out = model.extend_right(image)
        assert out.shape == (72, 82, 3)

    def test_zero_band_identity(self, model, rng):
        image = rng.integers(0, 256, (40, 40, 3), dtype=np.uint8)
        out = model.extend_right(image, band=0)
        assert np.array_equal(out, image)

    def test_band_capped_at_natural(self, model, rng):
        image = rng.integers(0, 256, (40, 40, 3), dtype=np.uint8)
        with pytest.raises(ModelError, match="natural"):
            model.extend_right(image, band=model.natural_band(40) + 1)

    def test_deterministic(self, model, rng):
        image = rng.integers(0, 256, (60, 60, 3), dtype=np.uint8)
        assert np.array_equal(model.extend_right(image), model.extend_right(image))


class TestExtendAllSides:
    def test_zero_pixels_identity(self, model, rng):
        image = rng.integers(0, 256, (62, 62, 3), dtype=np.uint8)
        assert np.array_equal(model.extend_all_sides(image, 0), image)

    @pytest.mark.parametrize("side,pixels", [(62, 5), (68, 2), (40, 1)])
    def test_geometry_and_center(self, model, rng, side, pixels):
        image = rng.integers(0, 256, (side, side, 3), dtype=np.uint8)
        out = model.extend_all_sides(image, pixels)
        assert out.shape == (side + 2 * pixels, side + 2 * pixels, 3)
        assert np.array_equal(out[pixels:-pixels, pixels:-pixels], image)

    def test_uniform_tile_stays_uniform(self, model):
        image = np.full((62, 62, 3), 100, dtype=np.uint8)
        out = model.extend_all_sides(image, 5)
        assert np.all(out == 100)

    def test_deterministic(self, model, rng):
        image = rng.integers(0, 256, (62, 62, 3), dtype=np.uint8)
        a = model.extend_all_sides(image, 5)
        b = model.extend_all_sides(image, 5)
        assert np.array_equal(a, b)

    def test_negative_rejected(self, model, rng):
        image = rng.integers(0, 256, (62, 62, 3), dtype=np.uint8)
        with pytest.raises(ModelError):
            model.extend_all_sides(image, -1)
