"""The compiled extension and the pure-Python kernels must agree bit for bit."""

import subprocess
import sys

import pytest

from ibltlab._bits import (
    KEYS_DISTINCT,
    KEYS_IID,
    SCHEME_PARTITIONED,
    SCHEME_SS_AVOIDING,
)
from ibltlab.backend import available_backends, load_backend

pure = load_backend("python")
compiled = (
    load_backend("compiled") if "compiled" in available_backends() else None
)

needs_compiled = pytest.mark.skipif(
    compiled is None, reason="compiled extension not built"
)


@needs_compiled
def test_census_kernels_agree():
    for ell in range(1, 8):
        for n in range(1, 8):
            assert compiled.count_stopping_matrices(ell, n) == \
                pure.count_stopping_matrices(ell, n), (ell, n)


@needs_compiled
def test_trial_kernels_agree():
    cases = [
        # (scheme, key_model, n, ell, k, b)
        (SCHEME_PARTITIONED, KEYS_IID, 8, 6, 3, 16),
        (SCHEME_PARTITIONED, KEYS_IID, 2, 2, 2, 32),
        (SCHEME_PARTITIONED, KEYS_DISTINCT, 8, 6, 3, 8),
        (SCHEME_SS_AVOIDING, KEYS_DISTINCT, 8, 8, 2, 6),
        (SCHEME_SS_AVOIDING, KEYS_DISTINCT, 30, 16, 3, 12),
    ]
    for scheme, key_model, n, ell, k, b in cases:
        for seed in (0, 1, 98765):
            got_c = compiled.run_trials(seed, 0, 1500, n, ell, k, b, scheme, key_model)
            got_p = pure.run_trials(seed, 0, 1500, n, ell, k, b, scheme, key_model)
            assert got_c == got_p, (scheme, key_model, seed)


@needs_compiled
def test_trial_ranges_compose():
    n, ell, k, b = 10, 5, 3, 16
    whole = compiled.run_trials(7, 0, 2000, n, ell, k, b, SCHEME_PARTITIONED, KEYS_IID)
    parts = [
        compiled.run_trials(7, lo, hi, n, ell, k, b, SCHEME_PARTITIONED, KEYS_IID)
        for lo, hi in [(0, 700), (700, 1300), (1300, 2000)]
    ]
    assert whole == tuple(map(sum, zip(*parts)))


def test_forced_backend_selection():
    import os

    env = dict(os.environ, IBLTLAB_BACKEND="python")
    out = subprocess.run(
        [sys.executable, "-c", "from ibltlab.backend import backend_name; print(backend_name)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"
