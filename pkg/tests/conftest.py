import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), os.pardir)))

from laurent import LaurentPoly  # noqa: E402


def random_laurent(rng, names, n_terms=4, low=-2, high=2, coeff=5):
    """Sparse Laurent polynomial with small integer coefficients"""
    terms = {}
    for _ in range(n_terms):
        exps = tuple(int(e) for e in rng.integers(low, high + 1, size=len(names)))
        c = int(rng.integers(-coeff, coeff + 1))
        if c:
            terms[exps] = terms.get(exps, 0) + c
    return LaurentPoly(names, terms)


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


@pytest.fixture(autouse=True)
def isolated_environment(monkeypatch, tmp_path):
    """Keep a developer's .env and TWK_* variables out of the tests"""
    for name in list(os.environ):
        if name.startswith("TWK_"):
            monkeypatch.delenv(name)
    monkeypatch.chdir(tmp_path)
    yield
    # load_dotenv writes straight into os.environ
    for name in list(os.environ):
        if name.startswith("TWK_"):
            del os.environ[name]
