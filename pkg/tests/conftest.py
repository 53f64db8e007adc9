import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from monocycle.graph import BLUE, RED, ColouredGraph


def random_coloured_graph(rng: random.Random, n: int, p: float) -> ColouredGraph:
    """Erdos-Renyi underlying graph, each edge red or blue uniformly."""
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v, RED if rng.random() < 0.5 else BLUE))
    return ColouredGraph.from_edges(n, edges)


@pytest.fixture
def rng():
    return random.Random(20240)
