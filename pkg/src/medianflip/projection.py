"""Euclidean projection onto {alpha in [0,1]^n : ||alpha - alpha0||_1 <= k}.

The feasible set is the intersection of the unit box and an l1 ball
centered at alpha0. Dykstra's alternating projection between the two sets
converges to the exact joint projection; plain alternation would not.
"""

import numpy as np

FEAS_TOL = 1e-9


def project_l1_ball(v, center, k):
    """Project v onto the l1 ball of radius k around center.

    Outside the ball the projection soft-thresholds v - center; the
    threshold is found by bisection on lam, where the shrunk l1 norm
    sum max(|u_i| - lam, 0) decreases monotonically from ||u||_1 to 0.
    """
    u = np.asarray(v, dtype=float) - center
    mag = np.abs(u)
    if mag.sum() <= k:
        return np.asarray(v, dtype=float).copy()
    lo, hi = 0.0, float(mag.max())
    for _ in range(60):
        lam = 0.5 * (lo + hi)
        if np.maximum(mag - lam, 0.0).sum() > k:
            lo = lam
        else:
            hi = lam
    lam = 0.5 * (lo + hi)
    return center + np.sign(u) * np.maximum(mag - lam, 0.0)


def project_l1_box(alpha_prime, alpha0, k, tol=FEAS_TOL, max_sweeps=1000):
    """Exact projection of alpha_prime onto the box-and-ball intersection.

    Feasible input is returned as an unmodified copy, which also makes
    the projection exactly idempotent. k = 0 collapses the set to alpha0.
    """
    alpha_prime = np.asarray(alpha_prime, dtype=float)
    alpha0 = np.asarray(alpha0, dtype=float)
    if k < 0:
        raise ValueError(f"budget k must be nonnegative, got {k}")
    if k == 0:
        return np.clip(alpha0, 0.0, 1.0)
    in_box = np.all(alpha_prime >= 0.0) and np.all(alpha_prime <= 1.0)
    if in_box and np.abs(alpha_prime - alpha0).sum() <= k + tol:
        return alpha_prime.copy()

    x = alpha_prime.copy()
    p = np.zeros_like(x)
    q = np.zeros_like(x)
    for _ in range(max_sweeps):
        y = project_l1_ball(x + p, alpha0, k)
        p = x + p - y
        x_new = np.clip(y + q, 0.0, 1.0)
        q = y + q - x_new
        drift = float(np.max(np.abs(x_new - x)))
        x = x_new
        if drift < tol and np.abs(x - alpha0).sum() <= k + tol:
            break
    # the box projection ran last, so x is box-exact; clipping toward the
    # box never increases the l1 distance to alpha0 since alpha0 is inside
    return np.clip(x, 0.0, 1.0)
