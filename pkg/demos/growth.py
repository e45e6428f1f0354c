"""Oracle charge of the three solvers on the adversarial families.

Doubling k roughly quadruples the naive charges and roughly doubles the
middle-derivation charge.

    python3 demos/growth.py [max_exponent]
"""

import sys

from gogword import load_fixture
from gogword.baselines import gen_slow_many, gen_slow_one, many_iterations, one_iteration
from gogword.derivation import solve

top = int(sys.argv[1]) if len(sys.argv) > 1 else 10
zz = load_fixture("zz")

print(f"{'k':>6} {'many':>12} {'one':>12} {'middle':>10}")
prev = None
for j in range(4, top + 1):
    k = 2 ** j
    row = (many_iterations(zz, gen_slow_many(k)).charge,
           one_iteration(zz, gen_slow_one(k)).charge,
           solve(zz, gen_slow_many(k)).charge)
    ratios = "" if prev is None else "   x" + " x".join(f"{b / a:.2f}" for a, b in zip(prev, row))
    print(f"{k:>6} {row[0]:>12} {row[1]:>12} {row[2]:>10}{ratios}")
    prev = row
