"""
Post-selection transmits a matrix
=================================

Measuring the first two registers of |psi>|delta> with the measurement state
of a matrix M leaves M|psi> on the third register, with no assumption on M.
"""

import numpy as np

from qteleport import Ket, delta_state, measurement_state_from_matrix, post_select
from qteleport import cup_state_from_matrix, is_entangled_two_qubit

rng = np.random.default_rng(0)
n = 2
M = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
psi = Ket(rng.normal(size=4) + 1j * rng.normal(size=4))

result = post_select(measurement_state_from_matrix(M), psi.tensor(delta_state(n).ket))
print("max |residual - M psi| =", np.max(np.abs(result.residual.amplitudes - M @ psi.amplitudes)))
print("probability of this outcome:", result.success_probability)

# |delta> has squared norm 2**n; nothing is normalized in the raw amplitudes.
d = delta_state(3).ket.amplitudes
print("<delta|delta> for n=3:", np.vdot(d, d).real)

# The preparation state of a matrix is entangled exactly when the matrix is invertible.
for m in ([[1, 0], [0, 1]], [[1, 2], [2, 4]], [[0, 1], [-1, 0]]):
    print(m, "entangled:", is_entangled_two_qubit(cup_state_from_matrix(m).ket))
