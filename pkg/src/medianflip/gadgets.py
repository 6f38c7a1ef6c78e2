"""Hardness gadget builders: set-cover instances embedded in opinion
networks so that flipping the median (or a quantile) certifies a cover.

Construction: an element node u_i (s=0, alpha=0) per universe element,
and a pair v_j (s=0, alpha=1), w_j (s=1, alpha=1) per subset, with arcs
u_i -> v_j for i in S_j and v_j -> w_j. Isolated zero-opinion nodes pad
the total so that the median sits exactly at the cover boundary:
lowering alpha(v_j) to 0 for the sets of a cover makes every element
node positive, and the positive count n+m+k reaches half of 2(n+m+k).
"""

import math
from dataclasses import dataclass

import numpy as np

from .network import Instance, build_network


@dataclass(frozen=True)
class SetCoverSpec:
    """Universe {0..n-1}, subsets as iterables of elements, budget k."""

    n: int
    subsets: tuple
    k: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("universe size must be at least 1")
        subsets = tuple(frozenset(int(i) for i in S) for S in self.subsets)
        object.__setattr__(self, "subsets", subsets)
        if not subsets:
            raise ValueError("need at least one subset")
        for j, S in enumerate(subsets):
            if not S:
                raise ValueError(f"subset {j} is empty")
            if any(i < 0 or i >= self.n for i in S):
                raise ValueError(f"subset {j} has elements outside 0..{self.n - 1}")
        if not (1 <= self.k <= len(subsets)):
            raise ValueError("budget k must lie in 1..m")

    @property
    def m(self):
        return len(self.subsets)


def _gadget_instance(spec, isolated):
    n, m = spec.n, spec.m
    total = n + 2 * m + isolated
    edges = []
    for j, S in enumerate(spec.subsets):
        v_j = n + j
        for i in S:
            edges.append((i, v_j, 1.0))
        edges.append((v_j, n + m + j, 1.0))
    network = build_network(total, edges, directed=True)
    alpha = np.zeros(total)
    s = np.zeros(total)
    alpha[n:n + m] = 1.0
    alpha[n + m:n + 2 * m] = 1.0
    s[n + m:n + 2 * m] = 1.0
    metadata = {
        "set_nodes": {j: n + j for j in range(m)},
        "element_nodes": list(range(n)),
        "anchor_nodes": list(range(n + m, n + 2 * m)),
        "isolated_nodes": list(range(n + 2 * m, total)),
    }
    return Instance(network, alpha, s), metadata


def gen_set_cover_gadget(spec):
    """Median-flip gadget with n + 2k isolated pads, 2(n+m+k) nodes."""
    return _gadget_instance(spec, spec.n + 2 * spec.k)


def quantile_isolated_count(spec, q):
    """Pad count placing the positive mass boundary at quantile q."""
    if not (0.0 < q < 1.0):
        raise ValueError(f"quantile must lie strictly in (0, 1), got {q}")
    inv = 1.0 / q
    raw = (inv - 1.0) * spec.n + (inv - 2.0) * spec.m + inv * spec.k
    count = math.floor(raw)
    if count < 0:
        raise ValueError(
            f"quantile {q} needs {count} isolated nodes; the gadget only "
            f"works for quantiles where the count is nonnegative"
        )
    return count


def gen_quantile_gadget(spec, q):
    """Gadget whose top q-fraction turns positive exactly on a cover."""
    inst, _ = _gadget_instance(spec, quantile_isolated_count(spec, q))
    return inst


def intervene_on_sets(instance, metadata, chosen):
    """Open the chosen set nodes (alpha -> 0), the certificate move."""
    alpha = instance.alpha.copy()
    for j in chosen:
        alpha[metadata["set_nodes"][j]] = 0.0
    return instance.with_alpha(alpha)
