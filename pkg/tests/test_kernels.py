"""Kernel dispatch and pure-versus-compiled behavioral equality."""

import itertools
import os
import random
import subprocess
import sys

import pytest

from essm_search import ebfs, kernels
from essm_search.nqueens import enumerate_states

from test_engine import queens_rep


def attacks(a, b):
    return a[0] == b[0] or a[1] == b[1] or abs(a[0] - b[0]) == abs(a[1] - b[1])


def test_pure_kernel_is_always_present():
    impls = kernels.implementations()
    assert impls["pure"].KERNEL_NAME == "pure"


def test_compiled_kernel_ships_with_this_build():
    # the package is built with its extension; a missing compiled kernel
    # means the install is broken, not an optional feature
    assert kernels.compiled_available()
    assert kernels.implementations()["compiled"].KERNEL_NAME == "compiled"


def test_use_switches_and_rejects_unknown_names():
    kernels.use("pure")
    assert kernels.active_name() == "pure"
    kernels.use("auto")
    assert kernels.active_name() in ("pure", "compiled")
    with pytest.raises(ValueError):
        kernels.use("vectorized")


def test_environment_variable_picks_the_import_time_kernel():
    code = "import essm_search.kernels as k; print(k.active_name())"
    out = subprocess.run(
        [sys.executable, "-c", code],
        env={**os.environ, "ESSM_SEARCH_KERNEL": "pure"},
        capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "pure"


def test_safe_squares_agree_on_every_reachable_state():
    impls = kernels.implementations()
    pure, compiled = impls["pure"], impls["compiled"]
    for n in (4, 5):
        for s in enumerate_states(n):
            assert pure.safe_squares(n, s.queens) == compiled.safe_squares(n, s.queens)


def test_pairwise_safe_agrees_with_an_independent_predicate():
    impls = kernels.implementations()
    pure, compiled = impls["pure"], impls["compiled"]
    squares = [(r, c) for r in range(4) for c in range(4)]
    rng = random.Random(1)
    samples = list(itertools.combinations(squares, 2))
    samples += rng.sample(list(itertools.combinations(squares, 3)), 100)
    for queens in samples:
        want = all(not attacks(a, b) for a, b in itertools.combinations(queens, 2))
        assert pure.pairwise_safe(queens) == want
        assert compiled.pairwise_safe(queens) == want


def test_searches_behave_identically_under_either_kernel():
    kernels.use("compiled")
    fast = ebfs(queens_rep(5, 3))
    kernels.use("pure")
    slow = ebfs(queens_rep(5, 3))
    assert fast.stats == slow.stats
    assert fast.solution == slow.solution
    assert [n.state for n in fast.db] == [n.state for n in slow.db]
