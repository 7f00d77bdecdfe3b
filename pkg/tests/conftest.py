import numpy as np
import pytest

from hyperlab.config import Config, ContractionConfig, SamplingConfig


@pytest.fixture
def config() -> Config:
    "Reduced sample counts, tolerances as shipped"
    return Config(
        sampling=SamplingConfig(
            chart_samples=200, separation_samples=20, classify_seeds=20
        ),
        contraction=ContractionConfig(
            r_values=[1e2, 1e3, 1e4], flat_points=5, workers=2
        ),
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(0)


@pytest.fixture(autouse=True)
def double_precision(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv("HYPERLAB_PRECISION", raising=False)
