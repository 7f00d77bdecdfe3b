import pytest
from pydantic import ValidationError

from hyperlab.config import (
    Config,
    Precision,
    Tolerances,
    load_config,
    precision_from_env,
)
from hyperlab.errors import InvalidParameterError


def test_defaults():
    config = load_config("")
    assert config == Config()
    assert config.tolerances.replay == 1e-9
    assert config.sampling.chart_samples == 10_000
    assert config.contraction.r_values == [1e2, 1e3, 1e4, 1e5, 1e6]


def test_partial_document():
    config = load_config(
        """
        [sampling]
        seed = 7

        [contraction]
        r_values = [10.0, 100.0]
        workers = 1
        """
    )
    assert config.sampling.seed == 7
    assert config.sampling.classify_seeds == 1_000
    assert config.contraction.r_values == [10.0, 100.0]


@pytest.mark.parametrize(
    "document",
    [
        "[sampling]\nsamples = 3\n",
        "[contraction]\nr_values = [100.0, 10.0]\n",
        "[contraction]\nr_values = [100.0]\n",
        "[tolerances]\nunstable_band = 1.5\n",
        "[tolerances]\nreplay = -1.0\n",
        "[precision]\n",
    ],
)
def test_invalid_documents(document):
    with pytest.raises(ValidationError):
        load_config(document)


def test_scaled_tolerances():
    scaled = Tolerances().scaled(10)
    assert scaled.replay == pytest.approx(1e-8)
    assert scaled.jacobi == pytest.approx(1e-9)


def test_precision_from_env(monkeypatch):
    assert precision_from_env() is Precision.DOUBLE
    monkeypatch.setenv("HYPERLAB_PRECISION", " Extended ")
    assert precision_from_env() is Precision.EXTENDED
    monkeypatch.setenv("HYPERLAB_PRECISION", "quad")
    with pytest.raises(InvalidParameterError):
        precision_from_env()
