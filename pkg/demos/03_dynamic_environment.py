"""How a dynamic task moves: the front at a few instants, then one short run.

The environment changes every 20 generations; t steps by 0.1 each time.
"""

import numpy as np

from etmof import instantiate, reference_front
from etmof.metrics import igd, migd
from etmof.dynamics import parameters, time_instant
from etmof.optimizer import SolverConfig, run

task = instantiate(39).task(1)
for tau in (0, 20, 100, 200):
    t = time_instant(tau).t
    p = " ".join(f"{k}={v:+.3f}" for k, v in parameters(task.dynamics.family, t).items())
    pts = reference_front(task, t).points
    print(f"tau={tau:>3} t={t:.1f} {p}  front centroid {np.round(pts.mean(axis=0), 3)}")

# a small population keeps this quick; the window count matches the full protocol
rec = run(instantiate(39), SolverConfig(dynamic_pop_size=30, seed=1))
print(f"\n{rec.generations + 1} generations, {len(rec.snapshots[0])} changes per task")
for k, snaps in enumerate(rec.snapshots, start=1):
    values = [igd(F, reference_front(instantiate(39).task(k), t)) for _, t, F in snaps]
    print(f"T{k}: MIGD {migd(values):.4f}  (first change {values[0]:.4f}, last {values[-1]:.4f})")
