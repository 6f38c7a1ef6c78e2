"""Why stooge picking is hard: a set-cover gadget.

Given a set-cover instance, the gadget builds a network whose median
can be pushed above zero by zeroing the resistance of k set-nodes iff
those k sets cover the universe. Solving the stooge problem optimally
would therefore solve set cover.
"""

from itertools import combinations

import numpy as np

from medianflip import (
    SetCoverSpec,
    equilibrium,
    gen_quantile_gadget,
    gen_set_cover_gadget,
    intervene_on_sets,
    median,
    quantile,
)

np.set_printoptions(precision=4, suppress=True)

# -- 1. a coverable instance: 4 elements, 3 sets, k = 2 --------------------
spec = SetCoverSpec(4, ({0, 1}, {1, 2, 3}, {0, 3}), 2)
inst, meta = gen_set_cover_gadget(spec)
print(f"gadget: {inst.network.node_count} nodes "
      f"({spec.n} elements, {spec.m} sets, {len(meta['isolated_nodes'])} "
      f"isolated)")
x = equilibrium(inst).x_star
print(f"before any intervention: median = {median(x):.4f}")

# -- 2. try every pair of sets ---------------------------------------------
for combo in combinations(range(spec.m), spec.k):
    chosen = set().union(*(spec.subsets[j] for j in combo))
    x = equilibrium(intervene_on_sets(inst, meta, combo)).x_star
    covers = chosen == set(range(spec.n))
    print(f"  open sets {combo}: union {sorted(chosen)}, cover={covers}, "
          f"median = {median(x):.4f}")

# -- 3. an uncoverable twin ------------------------------------------------
spec_no = SetCoverSpec(4, ({0, 1}, {1, 2}, {0, 2}), 2)  # nothing holds 3
inst_no, meta_no = gen_set_cover_gadget(spec_no)
best = max(
    median(equilibrium(intervene_on_sets(inst_no, meta_no, c)).x_star)
    for c in combinations(range(spec_no.m), spec_no.k)
)
print(f"uncoverable twin: best median over all pairs = {best:.4f}")

# -- 4. the quantile variant -----------------------------------------------
# Padding with a different number of isolated nodes moves the decision
# from the median to any chosen quantile; the top q-fraction turns
# positive exactly when a cover exists.
q = 0.25
qinst = gen_quantile_gadget(spec, q)
print(f"q = {q}: {qinst.network.node_count} nodes")
cover = (0, 1)  # {0,1} + {1,2,3} covers
x = equilibrium(intervene_on_sets(qinst, meta, cover)).x_star
print(f"after covering: quantile(x, {1 - q}) = {quantile(x, 1 - q):.4f}, "
      f"median still {median(x):.4f}")
