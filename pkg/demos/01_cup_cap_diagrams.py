"""
Cup/cap diagrams and the zig-zag condition
==========================================

Evaluate small planar diagrams built from wires, cups and caps, and see when
straightening a kink leaves the value unchanged.
"""

import numpy as np

from qteleport import diagram as dg

# A circle is one cup followed by one cap. Its value is sum_ab B[a,b] A[a,b].
A = np.array([[1, 2], [3, 4]])
B = np.array([[5, 6], [7, 8]])
print("circle(A, B) =", dg.amplitude(dg.circle(A, B)))

# A kink on a single wire evaluates to the identity exactly when the cap
# matrix is the inverse of the cup matrix.
Ainv = np.linalg.inv(A)
print("zig-zag with A^-1:\n", dg.evaluate(dg.zigzag(A, Ainv)).real.round(12))
print("is_topological(A^-1, A):", dg.is_topological(Ainv, A))
print("is_topological(B, A):   ", dg.is_topological(B, A))

# With a topological pair every closed loop contributes the same factor, so
# two nested loops give its square.
mats = {"M": A, "Minv": Ainv}
nested = dg.Diagram(
    [[dg.cup("M")], [dg.wire(), dg.cup("M"), dg.wire()],
     [dg.wire(), dg.cap("Minv"), dg.wire()], [dg.cap("Minv")]],
    mats,
)
loop = dg.amplitude(dg.Diagram([[dg.cup("M")], [dg.cap("Minv")]], mats))
print("one loop:", loop, " nested pair:", dg.amplitude(nested), " loop**2:", loop**2)

# Validation reports the first offending slice.
broken = dg.Diagram([[dg.cup("M")], [dg.wire()]], mats)
for problem in dg.validate(broken):
    print("diagnostic:", problem)
