"""The extended beta function with a confluent kernel.

B_p(x, y) integrates t^(x-1) (1-t)^(y-1) against 1F1(alpha; beta; -p/(t(1-t))).
At p = 0 the kernel is 1 and the classical beta function comes back.
"""
import numpy as np

from hypergruss import beta, gen_beta, kummer_neg_kernel, theta_envelope

x, y = 2.0, 3.0
print(f"B(2, 3) = {beta(x, y):.17g}")
for p in (0.0, 0.01, 0.1, 1.0, 5.0):
    g = gen_beta(x, y, 1.0, 2.0, p)
    print(f"p={p:<5g} raw {g.raw:.12e}  normalized {g.normalized:.12f}  err<={g.err_estimate:.1e}")

# The kernel decays like w^(-alpha) for large w = p/(t(1-t)), so the
# integrand vanishes at both ends once p > 0.
w = np.array([0.0, 1.0, 10.0, 1e3, 1e6, np.inf])
print("\nkernel 1F1(1; 2; -w):", np.array2string(kummer_neg_kernel(1.0, 2.0, w), precision=6))

# The closed-form envelope theta is a weaker quantity than the integral it
# is supposed to bound for some parameters; the sweep demo shows where.
b, c, al, be, p = 1.0, 2.0, 1.0, 2.0, 1.0
print(f"\nB_p at b={b}, c-b={c - b}, p={p}: {gen_beta(b, c - b, al, be, p).raw:.6f}; theta envelope {theta_envelope(b, c, al, be, p):.6f}")
