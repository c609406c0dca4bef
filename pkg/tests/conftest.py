import random

import numpy as np
import pytest

from concordance import seifert
from concordance.seifert import SeifertMatrix


def random_seifert(rng: random.Random, genus: int, entry_bound: int = 2,
                   shears: int = 3) -> SeifertMatrix:
    """Random valid Seifert matrix: a symmetric integer matrix plus the
    standard unimodular skew form, twisted by a few unimodular congruence
    shears (which preserve det(V - V^T) = 1)."""
    n = 2 * genus
    v = [[0] * n for _ in range(n)]
    for i in range(n):
        v[i][i] = rng.randint(-entry_bound, entry_bound)
        for j in range(i + 1, n):
            s = rng.randint(-entry_bound, entry_bound)
            v[i][j] = v[j][i] = s
    for k in range(genus):
        v[2 * k][2 * k + 1] += 1
    for _ in range(shears):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-2, 2)
        for col in range(n):
            v[i][col] += c * v[j][col]
        for row in range(n):
            v[row][i] += c * v[row][j]
    return seifert.validate(v)


def rho_riemann(V: SeifertMatrix, samples: int, tol: float = 1e-7) -> float:
    """Independent oracle for the signature integral: batched eigenvalue
    signatures on a uniform grid, dropping samples too close to a jump."""
    n = V.size
    if n == 0:
        return 0.0
    arr = np.array(V.entries, dtype=float)
    sym, skew = arr + arr.T, arr.T - arr
    thetas = (np.arange(samples) + 0.5) / samples
    ang = 2.0 * np.pi * thetas
    A = (1.0 - np.cos(ang))[:, None, None] * sym
    B = np.sin(ang)[:, None, None] * skew
    D = np.block([[A, -B], [B, A]])
    evs = np.linalg.eigvalsh(D)
    thr = tol * max(1.0, float(np.abs(D).max()))
    certified = np.abs(evs).min(axis=1) > thr
    sigs = ((evs > 0).sum(axis=1) - (evs < 0).sum(axis=1)) / 2.0
    return float(sigs[certified].mean())


def cover_order_float(delta, n: int) -> float:
    """Independent oracle for cover orders: the complex product of the
    polynomial over the nontrivial n-th roots of unity."""
    prod = 1.0 + 0.0j
    for j in range(1, n):
        z = np.exp(2j * np.pi * j / n)
        prod *= complex(delta(z))
    return abs(prod)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260808)
