"""Generalized Friedkin-Johnsen equilibrium: least-squares solve and simulation.

Each round, node u mixes its innate opinion with the weighted average of
its out-neighbors' expressed opinions:

    x_u(t+1) = alpha_u * s_u + (1 - alpha_u) / deg(u) * sum_v w_uv * x_v(t)

In matrix form x(t+1) = A s + (I - A) W x(t) with A = Diag(alpha), so the
equilibrium solves X x = A s where X = I - (I - A) W. The solve is done as
a least-squares problem (LSQR), never through an explicit inverse. Nodes
with deg(u) = 0 have an all-zero W row and therefore x_u = alpha_u * s_u.
"""

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import lsqr

DEFAULT_TOL = 1e-10


class SolverError(RuntimeError):
    """Raised when the equilibrium solver fails to converge."""


@dataclass(frozen=True)
class EquilibriumSolution:
    """Equilibrium opinions with solver diagnostics."""

    x_star: np.ndarray
    residual: float
    iterations: int
    converged: bool = True


def influence_system(instance, alpha=None):
    """The pair (X, b) with X = I - (I - A) W and b = A s."""
    if alpha is None:
        alpha = instance.alpha
    W = instance.network.influence_matrix
    n = instance.node_count
    X = sp.eye(n, format="csr") - sp.diags(1.0 - alpha) @ W
    return X, alpha * instance.s


def equilibrium(instance, alpha=None, tol=DEFAULT_TOL, max_iters=None):
    """Solve min_x ||X x - A s||_2 for the equilibrium opinions.

    Uses LSQR capped at 10 * n iterations by default. Raises SolverError
    if the residual stays above a loose multiple of tol after the cap.
    """
    X, b = influence_system(instance, alpha)
    n = instance.node_count
    if max_iters is None:
        max_iters = 10 * n
    x, istop, itn = lsqr(X, b, atol=tol, btol=tol, iter_lim=max_iters)[:3]
    residual = float(np.linalg.norm(X @ x - b))
    converged = istop in (0, 1, 2, 4, 5)
    if not converged and residual > 1e-6 * max(1.0, float(np.linalg.norm(b))):
        raise SolverError(
            f"equilibrium solve stopped (istop={istop}) with residual {residual:.3e}"
        )
    return EquilibriumSolution(x, residual, int(itn), converged)


def simulate(instance, alpha=None, max_rounds=100_000, tol=DEFAULT_TOL):
    """Iterate the opinion update from x(0) = s until the sup-norm change
    drops below tol.

    Serves as the independent fixed-point oracle for `equilibrium`. On
    non-convergence the partial result is returned with converged=False.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if alpha is None:
        alpha = instance.alpha
    W = instance.network.influence_matrix
    b = alpha * instance.s
    fade = 1.0 - alpha
    x = instance.s.copy()
    for rounds in range(1, max_rounds + 1):
        x_next = b + fade * (W @ x)
        delta = float(np.max(np.abs(x_next - x))) if len(x) else 0.0
        x = x_next
        if delta < tol:
            X, _ = influence_system(instance, alpha)
            return EquilibriumSolution(x, float(np.linalg.norm(X @ x - b)), rounds, True)
    X, _ = influence_system(instance, alpha)
    return EquilibriumSolution(x, float(np.linalg.norm(X @ x - b)), max_rounds, False)
