"""Brute-force oracles and the golden reference file.

The oracle shares no code path with the library: composite midpoint sums
and plain partial sums. Golden records store each value together with the
discretization bound observed when it was minted.
"""
from hypergruss import ParamSet, gchf_integral, gen_beta, gghf_integral, oracle
from hypergruss import gauss_2f1, gauss_2f1_integral, kummer_1f1, kummer_1f1_integral

ps = ParamSet(a=1.0, b=1.0, c=2.0, alpha=1.0, beta=2.0, p=0.1)
lib = gchf_integral(ps, 1.0)
ref = oracle.oracle_quad("GCHF_int", ps.as_dict(), 1.0, n_nodes=10**6)
print(f"library {lib.value:.15f}  oracle {ref.value:.15f}  ({ref.method_note})")

# Compare the library against every stored record. The recorded bound is the
# oracle's own discretization error; the library aims at 1e-12 relative, so
# its series values may sit a little further away than that bound.
library = {
    "2F1": lambda p, z: gauss_2f1(p["a"], p["b"], p["c"], z).value,
    "2F1_int": lambda p, z: gauss_2f1_integral(p["a"], p["b"], p["c"], z).value,
    "1F1": lambda p, z: kummer_1f1(p["b"], p["c"], z).value,
    "1F1_int": lambda p, z: kummer_1f1_integral(p["b"], p["c"], z).value,
    "genbeta": lambda p, z: gen_beta(p["x"], p["y"], p["alpha"], p["beta"], p["p"]).raw,
}
for kind in ("GGHF", "GGHF_int"):
    library[kind] = lambda p, z: gghf_integral(ParamSet(**{k: p[k] for k in ("a", "b", "c", "alpha", "beta", "p")}), z).value
for kind in ("GCHF", "GCHF_int"):
    library[kind] = lambda p, z: gchf_integral(ParamSet(**{k: p[k] for k in ("b", "c", "alpha", "beta", "p")}), z).value

for rec in oracle.read_goldens():
    diff = library[rec.kind](rec.params, rec.z) - rec.value
    print(f"{rec.kind:<9} z={rec.z:<5g} golden {rec.value:.16f}  library diff {diff:+.1e}  oracle bound {rec.bound:.1e}")
