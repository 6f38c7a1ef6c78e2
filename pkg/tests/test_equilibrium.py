import numpy as np
import pytest

from medianflip import Instance, build_network, equilibrium, simulate


def two_node_instance():
    net = build_network(2, [(0, 1, 1.0)], directed=False)
    return Instance(net, [0.5, 0.5], [0.0, 1.0])


def random_instance(rng, n, p=0.2):
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v, float(rng.uniform(0.5, 2.0))))
    net = build_network(n, edges, directed=False)
    return Instance(net, rng.uniform(0.05, 1.0, n), rng.uniform(0, 1, n))


def test_two_node_closed_form():
    # fixed point of x0 = .5*0 + .5*x1, x1 = .5*1 + .5*x0
    sol = equilibrium(two_node_instance())
    assert np.allclose(sol.x_star, [1 / 3, 2 / 3], atol=1e-10)


def test_simulate_matches_on_two_node():
    sol = simulate(two_node_instance(), tol=1e-12)
    assert sol.converged
    assert np.allclose(sol.x_star, [1 / 3, 2 / 3], atol=1e-10)


def test_isolated_node_alpha_zero_gives_zero():
    net = build_network(1, [])
    inst = Instance(net, [0.0], [0.7])
    assert equilibrium(inst).x_star[0] == pytest.approx(0.0, abs=1e-12)
    assert simulate(inst).x_star[0] == pytest.approx(0.0, abs=1e-12)


def test_isolated_node_keeps_scaled_innate():
    net = build_network(1, [])
    inst = Instance(net, [0.6], [0.5])
    assert equilibrium(inst).x_star[0] == pytest.approx(0.3, abs=1e-10)


def test_full_resistance_returns_innate_exactly():
    rng = np.random.default_rng(1)
    inst = random_instance(rng, 12)
    inst = inst.with_alpha(np.ones(12))
    sol = equilibrium(inst)
    assert np.array_equal(sol.x_star, sol.x_star)  # no NaNs
    assert np.allclose(sol.x_star, inst.s, atol=1e-12)
    one_round = simulate(inst, max_rounds=1, tol=1e-15)
    assert np.allclose(one_round.x_star, inst.s)


def test_star_center_pulled_to_leaf_consensus():
    n = 6
    edges = [(0, v, 1.0) for v in range(1, n)]
    net = build_network(n, edges, directed=False)
    alpha = np.array([0.0] + [1.0] * (n - 1))
    s = np.array([0.2] + [1.0] * (n - 1))
    sol = simulate(Instance(net, alpha, s), tol=1e-12)
    assert sol.x_star[0] == pytest.approx(1.0, abs=1e-9)
    assert equilibrium(Instance(net, alpha, s)).x_star[0] == pytest.approx(1.0, abs=1e-9)


def test_solver_and_simulation_agree_on_random_instances():
    rng = np.random.default_rng(7)
    for _ in range(10):
        inst = random_instance(rng, int(rng.integers(2, 30)))
        a = equilibrium(inst).x_star
        b = simulate(inst, tol=1e-12).x_star
        assert np.max(np.abs(a - b)) <= 1e-6


def test_equilibrium_opinions_stay_in_unit_interval():
    rng = np.random.default_rng(99)
    for _ in range(10):
        inst = random_instance(rng, 20)
        x = equilibrium(inst).x_star
        assert np.all(x >= -1e-9) and np.all(x <= 1 + 1e-9)


def test_simulate_flags_nonconvergence():
    inst = two_node_instance()
    sol = simulate(inst, max_rounds=2, tol=1e-15)
    assert not sol.converged
    assert sol.iterations == 2


def test_simulate_rejects_bad_tol():
    with pytest.raises(ValueError):
        simulate(two_node_instance(), tol=0.0)


def test_equilibrium_accepts_alpha_override():
    inst = two_node_instance()
    sol = equilibrium(inst, alpha=np.array([1.0, 1.0]))
    assert np.allclose(sol.x_star, inst.s, atol=1e-12)
