# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import pytest
import numpy as np

import udpcert.config as udpcert_config

from udpcert.config import Config
from udpcert.sampling import RandomSource, haar_state

LABELS = ("A", "B", "C", "D")


@pytest.fixture
def rng():
    return RandomSource(1234)


@pytest.fixture
def qubit_state(rng):
    return haar_state((2, 2, 2, 2), rng.spawn(1), LABELS)


@pytest.fixture
def qutrit_state(rng):
    return haar_state((3, 3, 3, 3), rng.spawn(2), LABELS)


@pytest.fixture
def config():
    return Config(log_level="INFO")


@pytest.fixture(autouse=True)
def clear_exit_event():
    udpcert_config.exit_event.clear()
    yield
    udpcert_config.exit_event.clear()


def random_unitary(d, seed):
    g = np.random.default_rng(seed)
    q, r = np.linalg.qr(g.standard_normal((d, d)) + 1j * g.standard_normal((d, d)))
    return q * (np.diag(r) / np.abs(np.diag(r)))
