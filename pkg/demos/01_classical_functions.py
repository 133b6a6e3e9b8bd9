"""Gauss and Kummer functions by series and by integral.

Every evaluation returns a value together with an absolute error estimate,
so two independent routes can be compared against each other.
"""
import math

from hypergruss import (
    gauss_2f1,
    gauss_2f1_beta_expansion,
    gauss_2f1_integral,
    kummer_1f1,
    kummer_1f1_beta_expansion,
    kummer_1f1_integral,
)

# 2F1(1, 1; 2; z) = -log(1 - z) / z
z = 0.5
exact = -math.log1p(-z) / z
for route in (gauss_2f1, gauss_2f1_beta_expansion, gauss_2f1_integral):
    r = route(1.0, 1.0, 2.0, z)
    print(f"{route.__name__:<26} {r.value:.17g}  err<={r.err_estimate:.1e}  |diff|={abs(r.value - exact):.1e}")

# For negative arguments the Kummer series is summed after the
# transformation 1F1(b; c; z) = e^z 1F1(c - b; c; -z), so there is no
# cancellation between huge alternating terms.
print()
for z in (-5.0, -30.0, -200.0):
    s = kummer_1f1(2.0, 5.0, z)
    q = kummer_1f1_integral(2.0, 5.0, z)
    print(f"1F1(2; 5; {z:g}) series {s.value:.15e} integral {q.value:.15e}")

b = kummer_1f1_beta_expansion(1.5, 4.0, 3.0)
print(f"\nbeta expansion of 1F1(1.5; 4; 3) = {b.value:.15f} after {b.terms_used} terms")
