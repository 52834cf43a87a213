"""Sampling alpha(I^(m))/m to bracket the Waldschmidt constant gamma.

Run with `python3 demos/waldschmidt_bracket.py`.
"""

from fractions import Fraction

from resurgence import generic_points
from resurgence.invariants import gamma_bracket
from resurgence.schemes import collinear_fixture

# Seven generic points: the Seshadri table gives gamma = 21/8 exactly,
# and the samples reach it at m = 8.
b = gamma_bracket(generic_points(2, 7), m_max=8)
print(b.lower, b.upper, b.lower_provenance)
for m, a in b.samples:
    print(m, a, Fraction(a, m))

# Three points on a line plus one more. Four generic points would give
# gamma = 2, but collinearity pushes alpha(I^(3)) to 5.
b = gamma_bracket(collinear_fixture(), m_max=6)
print(b.samples)
print("upper", b.upper)

# Ten points: only the sqrt-type lower bound is known, so the bracket stays open
b = gamma_bracket(generic_points(2, 10), m_max=6)
print(b.lower, b.upper, b.lower_provenance, b.exact)
