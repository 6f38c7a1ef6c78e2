"""Exact minimum-stooge planning on hierarchies.

On a rooted out-tree (think org chart: influence flows up from
reports to managers) opinions compose bottom-up, and a knapsack-style
DP over subtrees finds the cheapest stooge set that makes a majority
of voters express more than the threshold. Three intervention modes:
pin resistances, pin opinions, or both.
"""

import numpy as np

from medianflip import (
    Instance,
    TreeInstance,
    brute_force_min_stooges,
    build_network,
    lazy_greedy,
    median,
    tree_dp_min_stooges,
    tree_equilibrium,
)
from medianflip.treedp import apply_assignment

np.set_printoptions(precision=4, suppress=True)

# -- 1. a seven-node hierarchy ---------------------------------------------
edges = [(0, 1, 1.0), (1, 2, 1.0), (1, 3, 1.0), (2, 4, 1.0), (1, 5, 1.0),
         (5, 6, 1.0)]
net = build_network(7, edges, directed=True)
alpha = np.array([0.5, 0.5, 0.5, 1.0, 1.0, 0.5, 1.0])
s = np.array([0.95, 0.2, 0.45, 0.2, 0.1, 0.1, 0.95])
inst = Instance(net, alpha, s)
tree = TreeInstance(inst)
x = tree_equilibrium(tree)
print("x* bottom-up:", x)
print(f"median {median(x):.4f}, votes above 0.5: {int((x > 0.5).sum())}/7")

# -- 2. the DP finds the cheapest flipping set -----------------------------
res = tree_dp_min_stooges(tree, theta=0.5)
print(f"resistance mode: feasible={res.feasible}, cost={res.cost}")
print("  assignment:", res.assignment)
a2, s2 = apply_assignment(tree, res.assignment)
x2 = tree_equilibrium(tree, alpha=a2, s=s2)
print(f"  after: median {median(x2):.4f}, votes {int((x2 > 0.5).sum())}/7")

# -- 3. greedy walks straight past this solution ---------------------------
# The optimal set includes a supporting stooge whose own opinion stays
# below the threshold; no single move helps, so greedy stalls.
g = lazy_greedy(inst, k=5, phi=0.0)
print(f"greedy with budget 5: used {g.l0_budget_used} stooges, "
      f"median {g.final_median:.4f}, flipped={g.flipped}")

# -- 4. the other modes can be cheaper -------------------------------------
for mode in ("opinion", "both"):
    r = tree_dp_min_stooges(TreeInstance(inst, mode=mode), theta=0.5)
    print(f"{mode:10s} mode: cost={r.cost}, assignment={r.assignment}")

# -- 5. exhaustive check on this instance ----------------------------------
bf_cost, bf_assignment = brute_force_min_stooges(tree, theta=0.5)
print(f"brute force agrees: cost {bf_cost} == {res.cost}")

# -- 6. per-node costs weight the objective --------------------------------
# Managers are pricey here; this instance offers no cheaper detour, so
# the optimal set stays put and its price is just re-totalled.
costs = np.array([9, 9, 1, 1, 1, 9, 1])
r = tree_dp_min_stooges(TreeInstance(inst, costs=costs), theta=0.5)
print(f"with per-node costs: cost={r.cost}, assignment={r.assignment}")
