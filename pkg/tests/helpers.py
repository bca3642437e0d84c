"""Shared hypothesis strategies and small matrix helpers for the test suite."""

import numpy as np
from hypothesis import strategies as st

from opineq.hermitian import make_rng, random_complex, random_hermitian, random_pd_from, random_unitary

dims = st.integers(min_value=2, max_value=8)
# filled by test_acceptance.py, printed by the terminal summary hook
ACCEPTANCE_LINES: list[str] = []

seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


@st.composite
def pd_pairs(draw, lo=0.25, hi=4.0, max_dim=6):
    dim = draw(st.integers(min_value=2, max_value=max_dim))
    rng = make_rng(draw(seeds))
    return random_pd_from(rng, dim, (lo, hi)), random_pd_from(rng, dim, (lo, hi))


@st.composite
def pd_triples(draw, lo=0.25, hi=4.0, max_dim=6):
    dim = draw(st.integers(min_value=2, max_value=max_dim))
    rng = make_rng(draw(seeds))
    A = random_pd_from(rng, dim, (lo, hi))
    B = random_pd_from(rng, dim, (lo, hi))
    return A, B, random_complex(dim, rng)


def hermitian(dim, seed):
    return random_hermitian(dim, make_rng(seed))


def unitary(dim, seed):
    return random_unitary(dim, make_rng(seed))


def fro(X):
    return float(np.linalg.norm(X))
