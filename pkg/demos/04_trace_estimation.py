"""
Estimating |tr U| by repeated trials
====================================

Prepare |delta>, apply U on the first half, and post-select <delta|. The
success rate is |tr U|^2 / 4**n, so 2**n * sqrt(rate) estimates |tr U|.
"""

import numpy as np

from qteleport import estimate_abs_trace, exact_trace_amplitude, success_probability

rng = np.random.default_rng(1)
q, r = np.linalg.qr(rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8)))
U = q * (np.diag(r) / np.abs(np.diag(r)))

print("<delta|(U x I)|delta> =", exact_trace_amplitude(U))
print("tr U                  =", np.trace(U))
print("success probability   =", success_probability(U))

for shots in (10**3, 10**4, 10**5):
    est = estimate_abs_trace(U, shots, seed=7)
    print(f"shots={shots:>6}  estimate={est.estimate:.4f} +/- {est.std_error:.4f}  exact={est.exact_abs_trace:.4f}")

print("identity:", estimate_abs_trace(np.eye(8), 1000, seed=0).estimate)
print("Z:", estimate_abs_trace(np.diag([1, -1]), 1000, seed=0))
