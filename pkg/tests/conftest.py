from pathlib import Path

import numpy as np
import pytest

from core.graph_core import complete_graph, cycle_graph, path_graph
from core.spectral_ops.weights import WeightVector

SAMPLE_DATA = Path(__file__).resolve().parent.parent / "sample_data"


@pytest.fixture
def sample_data() -> Path:
    return SAMPLE_DATA


@pytest.fixture
def k3():
    return complete_graph(3)


@pytest.fixture
def p3():
    return path_graph(3)


@pytest.fixture
def c6():
    return cycle_graph(6)


@pytest.fixture
def signed_k3_weights():
    return WeightVector.of([1.0, -0.5, -0.5])


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
