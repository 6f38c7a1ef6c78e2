"""Analytic gradients of the median surrogates with respect to resistances.

Differentiating X x* = A s with X = I - (I - A) W gives the Jacobian
J = dx*/dalpha = X^{-1} Diag(s - W x*). All gradients are pulled back
through J^T v = Diag(s - W x*) X^{-T} v, one transposed least-squares
solve per gradient; the full Jacobian is never materialized.
"""

from dataclasses import dataclass

import numpy as np
from scipy.sparse.linalg import lsqr
from scipy.special import expit

from .equilibrium import DEFAULT_TOL, equilibrium, influence_system
from .estimators import huber_m_estimate


@dataclass(frozen=True)
class HuberGradient:
    """Gradient of the Huber M-estimate, with the solve it reused."""

    gradient: np.ndarray
    y_hat: float
    x_star: np.ndarray
    members: np.ndarray
    expansions: int


@dataclass(frozen=True)
class SigmoidGradient:
    """Gradient of the sigmoid headcount, with the solve it reused."""

    gradient: np.ndarray
    objective: float
    x_star: np.ndarray


def equilibrium_jacobian_action(instance, v, alpha=None, x_star=None,
                                tol=DEFAULT_TOL):
    """(dx*/dalpha)^T v = Diag(s - W x*) z where X^T z = v."""
    if alpha is None:
        alpha = instance.alpha
    if x_star is None:
        x_star = equilibrium(instance, alpha=alpha, tol=tol).x_star
    v = np.asarray(v, dtype=float)
    if not v.any():
        return np.zeros_like(v)
    X, _ = influence_system(instance, alpha)
    n = instance.node_count
    z = lsqr(X.T, v, atol=tol, btol=tol, iter_lim=10 * n)[0]
    W = instance.network.influence_matrix
    return (instance.s - W @ x_star) * z


def huber_gradient(instance, config, alpha=None, x_star=None):
    """Gradient of y_hat(alpha) = argmin_y sum_i H_c(x*_i(alpha) - y).

    Membership set I = {i : |x*_i - y_hat| < c}. The formula averages the
    Jacobian rows over I; an empty I (possible when every residual is at
    least c) is handled by doubling the radius until I is nonempty, with
    the number of doublings reported.
    """
    if alpha is None:
        alpha = instance.alpha
    if x_star is None:
        x_star = equilibrium(instance, alpha=alpha).x_star
    y_hat = huber_m_estimate(x_star, config)
    radius = config.c
    expansions = 0
    members = np.abs(x_star - y_hat) < radius
    while not members.any():
        radius *= 2.0
        expansions += 1
        members = np.abs(x_star - y_hat) < radius
    grad = equilibrium_jacobian_action(
        instance, members.astype(float), alpha=alpha, x_star=x_star
    ) / members.sum()
    return HuberGradient(grad, y_hat, x_star, members, expansions)


def sigmoid_gradient(instance, config, alpha=None, x_star=None):
    """Gradient of f(alpha) = sum_u sigmoid(tau * (x*_u - theta)).

    The pullback weight for node u is the sigmoid derivative
    tau * sig_u * (1 - sig_u) evaluated at the equilibrium.
    """
    if alpha is None:
        alpha = instance.alpha
    if x_star is None:
        x_star = equilibrium(instance, alpha=alpha).x_star
    sig = expit(config.tau * (x_star - config.theta))
    weights = config.tau * sig * (1.0 - sig)
    grad = equilibrium_jacobian_action(instance, weights, alpha=alpha, x_star=x_star)
    return SigmoidGradient(grad, float(sig.sum()), x_star)
