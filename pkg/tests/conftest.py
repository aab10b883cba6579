import math
import random

import pytest
from hypothesis import strategies as st

from numbersgame import EGCMGraph


FIG2 = [[2.0, -1.0], [-2.0, 2.0]]
A2_ASYM = [[2.0, -0.5], [-2.0, 2.0]]


@pytest.fixture
def fig2():
    return EGCMGraph(FIG2)


@pytest.fixture
def a2_asym():
    return EGCMGraph(A2_ASYM)


def random_tree_graph(rng: random.Random, n: int, labels=(3, 3, 3, 4, 5, 6)) -> EGCMGraph:
    """A random valid tree-shaped graph with random amplitude splits."""
    M = [[2.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
    for v in range(1, n):
        u = rng.randrange(v)
        m = rng.choice(labels)
        product = 4.0 * math.cos(math.pi / m) ** 2
        split = math.exp(rng.uniform(-0.7, 0.7))
        M[u][v] = -product / split if m % 2 == 1 else -split
        M[v][u] = -split if m % 2 == 1 else -product / split
        if m % 2 == 0:
            M[u][v], M[v][u] = M[v][u], M[u][v]
    return EGCMGraph(M)


@st.composite
def tree_graphs(draw, max_n=5):
    seed = draw(st.integers(min_value=0, max_value=10_000))
    n = draw(st.integers(min_value=1, max_value=max_n))
    return random_tree_graph(random.Random(seed), n)
