"""Weighted directed/undirected networks with row-normalized influence weights.

A Network stores the out-adjacency of a graph; the influence matrix W has
row u equal to w_uv / deg(u) over out-neighbors v, where deg(u) is the sum
of outgoing edge weights. Zero-degree nodes get an all-zero row.
"""

import numpy as np
import scipy.sparse as sp


class NetworkError(ValueError):
    """Raised for malformed graph input (bad ids, weights, duplicates)."""


class Network:
    """Immutable weighted graph with out-neighbor adjacency.

    Undirected input is stored as two directed arcs of equal weight. Arcs
    are kept sorted by (source, target) so every downstream algorithm is
    run-to-run deterministic.
    """

    def __init__(self, node_count, directed, arc_src, arc_dst, arc_w, edge_count):
        self.node_count = int(node_count)
        self.directed = bool(directed)
        self.arc_src = arc_src
        self.arc_dst = arc_dst
        self.arc_w = arc_w
        self.edge_count = int(edge_count)
        self.deg = np.zeros(self.node_count)
        np.add.at(self.deg, arc_src, arc_w)
        self._W = None
        self._adj = None
        self._indeg = None

    @property
    def influence_matrix(self):
        """Row-normalized sparse W (CSR); zero rows for degree-0 nodes."""
        if self._W is None:
            n = self.node_count
            if len(self.arc_src) == 0:
                self._W = sp.csr_matrix((n, n))
            else:
                norm_w = self.arc_w / self.deg[self.arc_src]
                self._W = sp.csr_matrix(
                    (norm_w, (self.arc_src, self.arc_dst)), shape=(n, n)
                )
        return self._W

    @property
    def adjacency(self):
        """Per-node list of (targets, weights) arrays, targets ascending."""
        if self._adj is None:
            targets = [[] for _ in range(self.node_count)]
            weights = [[] for _ in range(self.node_count)]
            for u, v, w in zip(self.arc_src, self.arc_dst, self.arc_w):
                targets[int(u)].append(int(v))
                weights[int(u)].append(float(w))
            self._adj = [
                (np.array(t, dtype=int), np.array(w)) for t, w in zip(targets, weights)
            ]
        return self._adj

    @property
    def in_degree(self):
        """Unweighted in-degree per node, self-loops excluded."""
        if self._indeg is None:
            indeg = np.zeros(self.node_count, dtype=int)
            for u, v in zip(self.arc_src, self.arc_dst):
                if u != v:
                    indeg[int(v)] += 1
            self._indeg = indeg
        return self._indeg

    def out_neighbors(self, u):
        return self.adjacency[u]

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return f"Network(n={self.node_count}, edges={self.edge_count}, {kind})"


def build_network(n, edges, directed=False, allow_self_loops=False):
    """Build a Network from (u, v, w) triples.

    Node ids must lie in 0..n-1 and weights must be strictly positive.
    For undirected graphs, listing an edge in both orientations with equal
    weight counts as a single edge; conflicting or repeated arcs raise
    NetworkError.
    """
    if n < 1:
        raise NetworkError(f"node_count must be >= 1, got {n}")
    seen = {}
    for u, v, w in edges:
        u, v, w = int(u), int(v), float(w)
        if not (0 <= u < n and 0 <= v < n):
            raise NetworkError(f"arc ({u}, {v}) out of range for n={n}")
        if w <= 0:
            raise NetworkError(f"arc ({u}, {v}) has nonpositive weight {w}")
        if u == v and not allow_self_loops:
            raise NetworkError(f"self-loop at node {u} not allowed")
        key = (u, v) if directed or u <= v else (v, u)
        if key in seen:
            old_w, orientations = seen[key]
            if directed or (u, v) in orientations:
                raise NetworkError(f"duplicate arc ({u}, {v})")
            if old_w != w:
                raise NetworkError(
                    f"edge {key} listed twice with weights {old_w} and {w}"
                )
            orientations.add((u, v))
        else:
            seen[key] = (w, {(u, v)})

    pairs = sorted(seen)
    edge_count = len(pairs)
    src, dst, wts = [], [], []
    for u, v in pairs:
        w = seen[(u, v)][0]
        src.append(u)
        dst.append(v)
        wts.append(w)
        if not directed and u != v:
            src.append(v)
            dst.append(u)
            wts.append(w)
    order = np.lexsort((dst, src)) if src else np.array([], dtype=int)
    arc_src = np.array(src, dtype=int)[order]
    arc_dst = np.array(dst, dtype=int)[order]
    arc_w = np.array(wts)[order]
    return Network(n, directed, arc_src, arc_dst, arc_w, edge_count)


class Instance:
    """A network together with resistances alpha and innate opinions s.

    Both vectors have one entry per node and must lie in [0, 1].
    Instances are immutable; interventions produce fresh alpha vectors.
    """

    def __init__(self, network, alpha, s):
        alpha = np.asarray(alpha, dtype=float)
        s = np.asarray(s, dtype=float)
        n = network.node_count
        if alpha.shape != (n,):
            raise NetworkError(f"alpha has shape {alpha.shape}, expected ({n},)")
        if s.shape != (n,):
            raise NetworkError(f"s has shape {s.shape}, expected ({n},)")
        validate_unit_interval(alpha, "alpha")
        validate_unit_interval(s, "s")
        self.network = network
        self.alpha = alpha
        self.s = s

    def with_alpha(self, alpha):
        """Same network and opinions, different resistance vector."""
        return Instance(self.network, alpha, self.s)

    def with_s(self, s):
        return Instance(self.network, self.alpha, s)

    @property
    def node_count(self):
        return self.network.node_count

    def __repr__(self):
        return f"Instance({self.network!r})"


def validate_unit_interval(vec, name):
    if np.any(vec < 0) or np.any(vec > 1):
        bad = int(np.argmax((vec < 0) | (vec > 1)))
        raise NetworkError(f"{name}[{bad}] = {vec[bad]} outside [0, 1]")
