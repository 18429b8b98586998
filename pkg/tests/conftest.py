from __future__ import annotations

import numpy as np
import pytest

from jsrbound import MatrixSet


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240229)


def random_set(rng: np.random.Generator, dim: int, r: int,
               scale: float = 1.0) -> MatrixSet:
    mats = rng.uniform(-scale, scale, size=(r, dim, dim))
    return MatrixSet.from_arrays(mats)


GOLDEN_PAIR = MatrixSet.from_arrays(
    [[[1.0, 1.0], [0.0, 1.0]], [[1.0, 0.0], [1.0, 1.0]]]
)

QUARTER_TURN = MatrixSet.from_arrays([[[0.0, -1.0], [1.0, 0.0]]])

DIAGONAL_PAIR = MatrixSet.from_arrays(
    [[[2.0, 0.0], [0.0, 3.0]], [[1.0, 0.0], [0.0, 5.0]]]
)

PHI = (1.0 + np.sqrt(5.0)) / 2.0
