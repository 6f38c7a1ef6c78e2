"""Huber M-estimation and the sigmoid threshold objective.

The Huber M-estimate of a vector x solves min_y sum_i H_c(x_i - y). The
tuning constant c interpolates between the median (c -> 0) and the mean
(c -> inf); find_c picks a c whose estimate tracks the median under small
random perturbations of the instance. The sigmoid objective is a smooth
count of nodes above a threshold theta.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit

from .equilibrium import SolverError, equilibrium
from .stats import median

log = logging.getLogger(__name__)

GOLDEN = (np.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class HuberConfig:
    """Tuning constant and 1-D search controls for the M-estimator."""

    c: float
    inner_tol: float = 1e-10
    max_inner_iters: int = 200

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError(f"c must be positive, got {self.c}")
        if self.inner_tol <= 0:
            raise ValueError(f"inner_tol must be positive, got {self.inner_tol}")


@dataclass(frozen=True)
class SigmoidConfig:
    """Threshold theta and temperature tau of the smooth step."""

    theta: float = 0.5
    tau: float = 25.0

    def __post_init__(self):
        if self.tau <= 0:
            raise ValueError(f"tau must be positive, got {self.tau}")


def huber_loss(x, c):
    """H_c(x): quadratic for |x| <= c, linear with matched slope beyond."""
    if c <= 0:
        raise ValueError(f"c must be positive, got {c}")
    x = abs(x)
    if x <= c:
        return 0.5 * x * x
    return c * (x - 0.5 * c)


def _huber_total(x, y, c):
    r = np.abs(x - y)
    quad = r <= c
    return float(0.5 * np.sum(r[quad] ** 2) + c * np.sum(r[~quad] - 0.5 * c))


def huber_m_estimate(x, config):
    """Minimize sum_i H_c(x_i - y) over y by golden-section search.

    The objective is convex in y with its minimizer inside
    [min(x), max(x)], so the bracketing search is exact.
    """
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        raise ValueError("huber_m_estimate of empty vector")
    lo, hi = float(x.min()), float(x.max())
    if hi - lo <= config.inner_tol:
        return 0.5 * (lo + hi)
    c = config.c
    a, b = lo, hi
    m1 = b - GOLDEN * (b - a)
    m2 = a + GOLDEN * (b - a)
    f1, f2 = _huber_total(x, m1, c), _huber_total(x, m2, c)
    for _ in range(config.max_inner_iters):
        if b - a <= config.inner_tol:
            return 0.5 * (a + b)
        if f1 <= f2:
            b, m2, f2 = m2, m1, f1
            m1 = b - GOLDEN * (b - a)
            f1 = _huber_total(x, m1, c)
        else:
            a, m1, f1 = m1, m2, f2
            m2 = a + GOLDEN * (b - a)
            f2 = _huber_total(x, m2, c)
    raise RuntimeError(
        f"1-D Huber search failed to reach tol {config.inner_tol} "
        f"in {config.max_inner_iters} iterations (interval {b - a:.3e})"
    )


def default_c_grid():
    """25 log-spaced candidates in [1e-4, 1]."""
    return np.logspace(-4, 0, 25)


def find_c(instance, epsilon=0.05, trials=10, candidates=None, seed=None,
           uniform=False):
    """Pick the tuning constant whose M-estimate best tracks the median.

    Each trial perturbs every resistance and innate opinion by +-epsilon
    (sign chosen at random; uniform=True draws from [-eps, eps] instead),
    clamps to [0, 1], solves the equilibrium, and scores each candidate c
    by |y_hat_c - median(x*)|. Returns the candidate with the smallest
    trial-average error, ties broken toward the smaller c. Trials whose
    equilibrium solve fails are skipped; all failing is an error.
    """
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if candidates is None:
        candidates = default_c_grid()
    candidates = np.sort(np.asarray(candidates, dtype=float))
    if candidates.size == 0:
        raise ValueError("empty candidate grid")
    n = instance.node_count
    errors = np.zeros(len(candidates))
    used = 0
    for child_seed in np.random.SeedSequence(seed).spawn(trials):
        rng = np.random.default_rng(child_seed)
        if uniform:
            da = rng.uniform(-epsilon, epsilon, n)
            ds = rng.uniform(-epsilon, epsilon, n)
        else:
            da = epsilon * rng.choice([-1.0, 1.0], size=n)
            ds = epsilon * rng.choice([-1.0, 1.0], size=n)
        alpha = np.clip(instance.alpha + da, 0.0, 1.0)
        s = np.clip(instance.s + ds, 0.0, 1.0)
        perturbed = instance.with_alpha(alpha).with_s(s)
        try:
            x = equilibrium(perturbed).x_star
        except SolverError as exc:
            log.warning("find_c trial skipped: %s", exc)
            continue
        target = median(x)
        for i, c in enumerate(candidates):
            y_hat = huber_m_estimate(x, HuberConfig(c))
            errors[i] += abs(y_hat - target)
        used += 1
    if used == 0:
        raise SolverError("find_c: every perturbation trial failed")
    return float(candidates[int(np.argmin(errors / used))])


def sigmoid_objective(x, config):
    """Smooth headcount: sum_u 1 / (1 + exp(tau * (theta - x_u)))."""
    x = np.asarray(x, dtype=float)
    return float(np.sum(expit(config.tau * (x - config.theta))))
