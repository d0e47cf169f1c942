"""
Teleporting a gate
==================

Alice measures in the basis of Pauli words times U. Whatever she sees, two
classical bits per qubit let Bob turn his share into U|psi>.
"""

import numpy as np

from qteleport import Ket, is_scaled_special_unitary, phase_equal, run_teleportation
from qteleport.teleport import ClassicalMessage, alice_measure, bob_correct, label_words

H = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
psi = Ket([0.6, 0.8j])
target = psi.apply(H)

session = run_teleportation(1, psi, H, seed=2026)
print("outcome:", [str(x) for x in session.outcome], "message bits:", session.message.bits)
print("outcome probabilities:", session.probabilities)
print("Bob holds H|psi> up to phase:", phase_equal(session.bob_corrected, target))

# Every outcome works, not only the sampled one.
for word in label_words(1):
    fixed = bob_correct(alice_measure(psi, H, word), ClassicalMessage(word))
    print(" ", "".join(map(str, word)), phase_equal(fixed, target))

# The four Pauli-rotated measurement states are orthogonal exactly for
# multiples of [[z, w], [-conj w, conj z]].
for m in (np.eye(2), 2j * H, [[1, 2], [0, 1]]):
    print(np.asarray(m).round(3).tolist(), is_scaled_special_unitary(m))

print(session.dumps()[:160], "...")
