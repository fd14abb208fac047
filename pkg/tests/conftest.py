"""Shared fixtures and corpus builders."""

from __future__ import annotations

import math

import numpy as np
import pytest

import prv
from prv import reference


@pytest.fixture(scope="session")
def cannabis() -> prv.ContingencyTable:
    return prv.ContingencyTable(np.array(reference.CANNABIS))


@pytest.fixture(scope="session")
def occupation_1975() -> prv.ContingencyTable:
    return prv.ContingencyTable(np.array(reference.OCCUPATION_1975))


@pytest.fixture(scope="session")
def occupation_1985() -> prv.ContingencyTable:
    return prv.ContingencyTable(np.array(reference.OCCUPATION_1985))


def random_table(rng: np.random.Generator, rows: int, cols: int) -> prv.ProbabilityTable:
    """A random joint table with strictly positive cells."""
    arr = rng.random((rows, cols)) + 1e-3
    return prv.ProbabilityTable(arr / math.fsum(arr.flat))


def interior_table(rng: np.random.Generator, rows: int, cols: int) -> prv.ProbabilityTable:
    """A random joint table with every cell at least 0.01 (for gradients)."""
    arr = rng.random((rows, cols)) + 0.4
    return prv.ProbabilityTable(arr / math.fsum(arr.flat))


def independent_table(rng: np.random.Generator, rows: int, cols: int) -> prv.ProbabilityTable:
    """An exact outer product of random positive marginals."""
    r = rng.random(rows) + 0.05
    c = rng.random(cols) + 0.05
    r /= math.fsum(r)
    c /= math.fsum(c)
    return prv.ProbabilityTable(np.outer(r, c))


def plant_one_hot(rng: np.random.Generator, p: prv.ProbabilityTable) -> prv.ProbabilityTable:
    """Replace one row by a one-hot row of the same mass.

    The hot column is chosen to keep every column marginal positive.
    """
    arr = p.probs.copy()
    i = int(rng.integers(arr.shape[0]))
    others = np.delete(arr, i, axis=0).sum(axis=0)
    j = int(rng.choice(np.flatnonzero(others > 0)))
    mass = arr[i].sum()
    arr[i] = 0.0
    arr[i, j] = mass
    return prv.ProbabilityTable(arr / math.fsum(arr.flat))
