"""End-to-end method comparison with machine-readable reports.

An ExperimentConfig names an instance, methods, seeds, and either a
fixed budget or a budget search. run_experiment executes every
(method, seed) cell, never letting one failure poison the rest, and
the report aggregates flip budgets over the successful runs.
"""

import json
import tempfile
from pathlib import Path

import numpy as np

from medianflip import (
    ExperimentConfig,
    GeneratorSpec,
    compare_stooges,
    emit_report,
    generate,
    run_experiment,
)

np.set_printoptions(precision=4, suppress=True)

inst = generate(GeneratorSpec("ba", dist="normal", seed=5,
                              params={"n": 30, "attach": 3}))

# -- 1. search the flip budget per method, three seeds each ----------------
config = ExperimentConfig(
    inst,
    name="ba30",
    methods=("huber", "greedy", "random", "degree"),
    theta=0.5,
    seeds=(0, 1, 2),
    max_budget=30,
)
report = run_experiment(config)

print(f"{'method':8s} {'seed':4s} {'budget':>6s} {'flipped':>7s} "
      f"{'median':>7s} {'ms':>6s}")
for r in report.records:
    budget = "-" if r.budget is None else f"{r.budget:g}"
    print(f"{r.method:8s} {r.seed:4d} {budget:>6s} {str(r.flipped):>7s} "
          f"{r.final_median:7.4f} {r.runtime_ms:6.0f}")

print("\naggregates over successful runs:")
for method, agg in report.aggregates.items():
    mb = agg["mean_budget"]
    shown = "-" if mb is None else f"{mb:.1f}"
    print(f"  {method:8s} mean budget {shown:>5s}  "
          f"successes {agg['successes']}  failures {agg['failures']}")

# -- 2. who picks whom: stooge overlap between methods ---------------------
matrix, methods = compare_stooges(report)
print("\njaccard overlap:", " ".join(methods))
for name, row in zip(methods, matrix):
    print(f"  {name:8s}", " ".join(f"{v:.2f}" for v in row))

# -- 3. reports serialize to CSV and JSON ----------------------------------
with tempfile.TemporaryDirectory() as tmp:
    csv_path = Path(tmp) / "report.csv"
    json_path = Path(tmp) / "report.json"
    emit_report(report, csv_path, format="csv")
    emit_report(report, json_path, format="json")
    print("\nfirst CSV lines:")
    for line in csv_path.read_text().splitlines()[:3]:
        print(" ", line)
    doc = json.loads(json_path.read_text())
    print(f"JSON: {len(doc['records'])} records, "
          f"{len(doc['aggregates'])} aggregate rows")
