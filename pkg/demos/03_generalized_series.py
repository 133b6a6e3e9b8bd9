"""Generalized Gauss (GGHF) and confluent (GCHF) functions.

Each series coefficient is an extended beta value computed by quadrature;
the integral route integrates once against the kernel instead.
"""
from hypergruss import (
    ParamSet,
    gauss_2f1,
    gchf_integral,
    gchf_series,
    gghf_integral,
    gghf_series,
    kummer_1f1,
    ratio_1r1,
    ratio_2r1,
)

ps = ParamSet(a=0.75, b=1.5, c=3.0, alpha=1.0, beta=2.5, p=0.4)
for z in (-0.8, 0.3, 0.9):
    s, q = gghf_series(ps, z), gghf_integral(ps, z)
    print(f"GGHF z={z:+.1f}: series {s.value:.15f} ({s.terms_used} terms)  integral {q.value:.15f}")
for z in (-4.0, 1.0, 6.0):
    s, q = gchf_series(ps, z), gchf_integral(ps, z)
    print(f"GCHF z={z:+.1f}: series {s.value:.15f} ({s.terms_used} terms)  integral {q.value:.15f}")

# Dividing by the normalized extended beta gives ratios that equal 1 at
# z = 0, the quantities the two-point inequalities are stated for.
print(f"\n1R1(0.5) = {ratio_1r1(ps, 0.5):.15f}   2R1(0.5) = {ratio_2r1(ps, 0.5):.15f}")

# p = 0 reduces everything to the classical functions
p0 = ps.with_(p=0.0)
print(f"GGHF at p=0: {gghf_series(p0, 0.5).value:.16f} vs 2F1 {gauss_2f1(0.75, 1.5, 3.0, 0.5).value:.16f}")
print(f"GCHF at p=0: {gchf_integral(p0, 2.0).value:.16f} vs 1F1 {kummer_1f1(1.5, 3.0, 2.0).value:.16f}")
