"""Does sharing parents between tasks help? A small head-to-head on ETMOF1.

Both modes get the same seeds and budget; only cross-task mating differs.
Takes under a minute.
"""

import numpy as np

from etmof import instantiate, reference_front
from etmof.metrics import igd, mss
from etmof.optimizer import Mode, SolverConfig, random_search, run

BUDGET = 10_000
SEEDS = range(3)

problem = instantiate(1)
fronts = [reference_front(t) for t in problem.tasks]

scores = {}
for mode in (Mode.TRANSFER, Mode.INDEPENDENT):
    per_run = []
    for seed in SEEDS:
        rec = run(problem.clone(), SolverConfig(budget=BUDGET, seed=seed), mode)
        per_run.append([igd(F, ref) for F, ref in zip(rec.final_fronts, fronts)])
        if mode is Mode.TRANSFER:
            print(f"seed {seed}: {rec.cross_task_matings} cross-task matings")
    scores[mode.value] = np.array(per_run)

scores["random"] = np.array([[igd(F, ref) for F, ref in zip(random_search(problem, BUDGET, seed=s), fronts)]
                             for s in SEEDS])

print("\nmedian IGD per task")
for name, v in scores.items():
    print(f"  {name:<12}", np.round(np.median(v, axis=0), 4))

# rank the two optimizers with the mean standard score (lower is better)
table = mss(np.stack([scores["transfer"], scores["independent"]]))
print("\nMSS per run  transfer   ", np.round(table[0], 3))
print("             independent", np.round(table[1], 3))
