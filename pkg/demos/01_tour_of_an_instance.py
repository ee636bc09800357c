"""Walk through one instance: its tasks, how a solution is scored, and where the front is.

Run with ``python demos/01_tour_of_an_instance.py``.
"""

import numpy as np

from etmof import instantiate, evaluate_task, optimum_solution, reference_front

problem = instantiate(3)
print(f"{problem.name}: {problem.num_tasks} tasks, unified dimension {problem.unified_dim}")
for task in problem.tasks:
    print(f"  {task.name}: m={task.m} n={task.n} K={task.K} {task.model_label}/{task.shape_label} {task.landscape}")

# a random point is far from the front
task = problem.task(2)
rng = np.random.default_rng(0)
x = rng.uniform(task.lower, task.upper)
print("\nrandom point  ->", np.round(evaluate_task(problem, 2, x), 3))

# placing the distance variables at their optimum lands exactly on the sphere
x_star = optimum_solution(task, [0.4, -0.2])
f = evaluate_task(problem, 2, x_star)
print("optimum point ->", np.round(f, 6), " norm", round(float(np.linalg.norm(f)), 12))

front = reference_front(task)
print(f"\nreference front: {len(front)} points, ideal {front.ideal}, nadir {front.nadir}")
print("evaluations charged so far:", problem.counters.tolist())
