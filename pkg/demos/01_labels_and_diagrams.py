"""Labels and diagrams: exact root-of-unity arithmetic, building a diagram,
and equality up to relabelling.

Run:  python demos/01_labels_and_diagrams.py
"""

from gddkit.core import GDD, from_braiding_matrix, parse_gdd
from gddkit.roots import Parameter, UnityRoot, one

# Work at a primitive cube root of unity.  The ambient group is mu_6 so that
# -1 is available; q sits at exponent 2.
par = Parameter(3)
q = par.q
print(f"q = {q}, order {q.order()}")
print(f"q * q^-1 = {par.render(q * q ** -1)}")
print(f"-q^2     = {par.render(par.label(1, 2))}")

# A diagram straight from a braiding matrix: only the products of opposite
# off-diagonal entries matter.
matrix = [
    [q, q ** -2, one(6)],
    [one(6), q, q ** -1],
    [one(6), one(6), q],
]
g = from_braiding_matrix(matrix)
print("\nfrom a braiding matrix:")
print(g.to_text())

# The same diagram written backwards is the same diagram.
backwards = g.permute([2, 1, 0])
print("\nsame canonical key after relabelling:",
      g.canonical_key() == backwards.canonical_key())

# Text round trip and DOT export.
text = g.to_text()
assert parse_gdd(text) == g
print("\nDOT rendering with q-sugar:")
print(g.to_dot(par))
