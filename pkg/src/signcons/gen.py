"""Random benchmark instances: Erdős–Rényi influence graphs with sparse profiles."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .model import ValidatedInstance

GAMMA_GRID = (0.01, 0.02, 0.033, 0.05, 0.1)


class InvalidParams(ValueError):
    pass


@dataclass(frozen=True)
class GenParams:
    alpha: int
    beta: float = 2.5
    gamma: float = 0.1
    seed: int = 0
    edges: int | None = None  # overrides the edge count derived from beta

    def edge_count(self) -> int:
        if self.edges is not None:
            return self.edges
        # beta is the average total degree, so m = beta * alpha / 2
        return math.floor(self.beta * self.alpha / 2 + 0.5)

    def observed_count(self) -> int:
        return math.floor(Fraction(repr(float(self.gamma))) * self.alpha)

    def check(self) -> None:
        if self.alpha < 1:
            raise InvalidParams(f"alpha must be >= 1, got {self.alpha}")
        if self.beta < 0:
            raise InvalidParams(f"beta must be >= 0, got {self.beta}")
        if not 0 <= self.gamma <= 1:
            raise InvalidParams(f"gamma must lie in [0, 1], got {self.gamma}")
        if not 0 <= self.seed < 2**64:
            raise InvalidParams("seed must be a 64-bit unsigned integer")
        m = self.edge_count()
        if m < 0 or m > self.alpha * (self.alpha - 1):
            raise InvalidParams(f"{m} edges do not fit into {self.alpha} vertices without self-loops")


def generate(p: GenParams) -> ValidatedInstance:
    """Sample an instance; deterministic for a fixed seed.

    Edges are distinct ordered pairs without self-loops, drawn uniformly; every
    edge gets a fair random sign. Exactly floor(gamma * alpha) vertices are
    observed with fair random signs. Vertices without predecessors become inputs.
    """
    p.check()
    rng = random.Random(p.seed)
    n = p.alpha
    names = [f"v{i}" for i in range(n)]
    order = sorted(range(n), key=lambda i: names[i])
    rank = {v: r for r, v in enumerate(order)}

    edges = []
    if n > 1:
        for code in rng.sample(range(n * (n - 1)), p.edge_count()):
            s, t = divmod(code, n - 1)
            d = t if t < s else t + 1
            sign = 1 if rng.random() < 0.5 else -1
            edges.append((rank[s], rank[d], sign))

    obs = [0] * n
    for v in rng.sample(range(n), p.observed_count()):
        obs[rank[v]] = 1 if rng.random() < 0.5 else -1

    has_pred = [False] * n
    for _, d, _ in edges:
        has_pred[d] = True
    return ValidatedInstance.build(
        [names[v] for v in order], edges, obs, [not h for h in has_pred]
    )
