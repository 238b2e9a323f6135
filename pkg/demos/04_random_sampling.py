"""Random tables and the rare unsolvable ones.

Most randomly sampled triplication tables admit a solution and hence a
strong starter.  Exceptions exist; two known ones (orders 11 and 13) are
certified unsolvable here by exhausting the search space.
"""

import time

from triplication import Scenario, compile_instance, random_tt, solve, validate

SAMPLES = 60

print(f"sampling {SAMPLES} random tables per order:")
for m in (5, 7, 9, 11):
    unsolvable = 0
    t0 = time.perf_counter()
    for index in range(SAMPLES):
        tt = random_tt(m, seed=index)
        out = solve(compile_instance(tt, Scenario("carry", m)), mode="first")
        if out.status == "unsat":
            unsolvable += 1
    print(f"  m={m:2d}: {unsolvable}/{SAMPLES} unsolvable "
          f"({time.perf_counter() - t0:.2f}s)")

print("\ntwo known unsolvable tables:")
KNOWN = {
    11: [(7, 7), (1, 2), (10, 0), (7, 8), (4, 6), (3, 5), (1, 3), (6, 9),
         (1, 4), (10, 2), (6, 10), (5, 9), (4, 8), (0, 5), (8, 2), (9, 3)],
    13: [(10, 10), (3, 4), (10, 11), (4, 5), (9, 11), (3, 5), (12, 1),
         (1, 4), (8, 11), (5, 8), (2, 6), (9, 0), (3, 7), (2, 7), (9, 1),
         (7, 12), (2, 8), (6, 12), (0, 6)],
}
for m, pairs in KNOWN.items():
    tt = validate(pairs, m)  # a perfectly valid table...
    for kind in ("mod", "carry"):
        t0 = time.perf_counter()
        out = solve(compile_instance(tt, Scenario(kind, m)), mode="first")
        print(f"  m={m} {kind:5s}: {out.status} after {out.stats.nodes} nodes "
              f"({time.perf_counter() - t0:.2f}s)")
        assert out.status == "unsat"
