"""The discrete Gruss inequality with weights.

|sum m * sum mxy - sum mx * sum my| <= (1/4) (sum m)^2 (Gamma - gamma)(Phi - phi)
"""
from collections import Counter

from hypergruss import GrussInstance, gruss_check
from hypergruss.sweep import gruss_instances

# Two equally weighted points at the ends of [0, 1] attain the bound.
w = gruss_check(GrussInstance.tight((0.0, 1.0), (0.0, 1.0), (1.0, 1.0)))
print(f"witness: lhs {w.lhs}  rhs {w.rhs}  slack {w.slack}  uncertain={w.uncertain}")

# Random instances, including zero weights and constant sequences.
outcome = Counter()
largest = None
for inst in gruss_instances(n_max=60, trials=3000, seed=11):
    r = gruss_check(inst)
    outcome["uncertain" if r.uncertain else "holds" if r.holds else "FAILS"] += 1
    ratio = r.lhs / r.rhs if r.rhs else 0.0
    largest = max(largest or 0.0, ratio)
print(dict(outcome), f"largest lhs/rhs seen {largest:.3f}")
