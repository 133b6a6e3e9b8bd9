"""Grid sweeps of the bound checkers, including the two that break.

Most checkers hold everywhere. Two do not: the closed-form envelope for the
extended beta function, and the unweighted two-point bound for the Gauss
ratio (thmI0_shifted). Concrete counterexamples are printed for both.
"""
import math

from hypergruss import ParamSet, check_thm_I0, gen_beta, theta_envelope
from hypergruss.sweep import GridSpec, run_sweep

grids = {
    "thm-a": dict(b="0.5:3:3", c_offset="0.5:2:3", p="0:2:3", z="0.1:2:4", z0="0.1:2:4"),
    "thm-b": dict(b="0.5:3:3", c_offset="0.5:2:3", p="0:2:3", z1="0:1:3", z2="0:1:3", z3="0:2:3"),
    "thm-c": dict(a="0.5:2:2", b="0.5:3:3", p="0:2:3", z1="0:1:3", z2="0:1:3", z3="0:0.9:3"),
    "thm-i0": dict(a="0.5:2:2", b="0.5:3:3", p="0:2:3", z="0.1:0.9:4", z0="0.1:0.9:4"),
    "prop": dict(a="0.5:2:2", b="1:2:2", p="0.5:2:2", z="-0.5:0.5:2"),
}
for checker, grid in grids.items():
    report, _ = run_sweep(checker, GridSpec.from_strings(**grid).points(checker))
    print(f"{checker:<7} instances {report.total:>5}  failed {report.failed:>4}  {report.failed_by_name or ''}")

# The envelope is smaller than the integral it should dominate.
b, c, al, be, p = 1.0, 2.0, 1.0, 2.0, 1.0
print(f"\nB_p = {gen_beta(b, c - b, al, be, p).raw:.4f} > theta = {theta_envelope(b, c, al, be, p):.4f}")

# At p = 0, a = 1, b = 1, c = 2 the ratio is -log(1-z)/z in closed form.
ps = ParamSet(a=1.0, b=1.0, c=2.0, p=0.0)
z, z0 = 0.2, 0.6
lhs = abs((1 - z) * -math.log1p(-z) / z - (1 - z0) * -math.log1p(-z0) / z0)
shifted = [r for r in check_thm_I0(ps, z, z0) if r.name == "thmI0_shifted"][0]
print(f"closed-form lhs {lhs:.4f}; checker lhs {shifted.lhs:.4f} rhs {shifted.rhs:.4f}")
