"""Shared sampling helpers for the test suite."""

import random

from dpres import DPMatrix, quotient_module
from dpres.ring import dp_monomials_of_degree


def random_dp_poly(ring, K, degree, rng, density=0.6):
    """Random homogeneous divided-power polynomial of the given degree."""
    poly = {}
    for u in dp_monomials_of_degree(ring, degree):
        if rng.random() < density:
            c = K.random(rng)
            if c:
                poly[u] = c
    return poly


def random_dp_matrix(ring, K, rng, max_rows=2, max_cols=3):
    q = rng.randint(1, max_rows)
    p = rng.randint(1, max_cols)
    row_twists = tuple(rng.randint(-2, 0) for _ in range(q))
    col_twists = tuple(rng.randint(0, 2) for _ in range(p))
    entries = []
    for i in range(q):
        row = []
        for j in range(p):
            deg = row_twists[i] - col_twists[j]
            row.append(random_dp_poly(ring, K, deg, rng) if deg <= 0 else {})
        entries.append(row)
    return DPMatrix(ring, K, row_twists, col_twists, entries)


def random_module(ring, K, rng, max_dim=10, min_dim=1):
    """A random finite-length module via a random divided-power matrix."""
    while True:
        P = random_dp_matrix(ring, K, rng)
        M = quotient_module(P)
        if min_dim <= M.total_dim <= max_dim:
            return M


def random_cyclic_gorenstein(ring, K, rng, socle_degree):
    """R/Ann(f) for a random nonzero form f, generator in degree 0."""
    while True:
        f = random_dp_poly(ring, K, -socle_degree, rng, density=0.8)
        if f:
            P = DPMatrix(ring, K, (-socle_degree,), (0,), [[f]])
            return quotient_module(P), P
