"""Walk through the I^(3) in I^2 question for a handful of generic plane points.

Run with `python3 demos/huneke_table.py`.
"""

from resurgence import generic_points
from resurgence.criteria import check_containment, huneke_table
from resurgence.invariants import alpha, hilbert_table, tau_sigma

# Seven generic points in P^2. dim I_t is 0 until cubics, then it follows
# C(t+2, 2) - 7 from t = 3 on.
Z = generic_points(2, 7, seed=0)
table = hilbert_table(Z, range(6))
print(table.values)  # {0: 0, 1: 0, 2: 0, 3: 3, 4: 8, 5: 14}
print([table.polynomial(t) for t in range(6)])
print("tau, sigma =", tau_sigma(Z))

# alpha of the first few symbolic powers
print([alpha(Z, m) for m in range(1, 5)])

# The postulational test: 2 sigma <= alpha(I^(3)) already forces I^(3) into I^2
v = check_containment(Z, 3, 2)
print(v.verdict, v.criterion, v.witness)

# The same question for n = 3..9, each row agreed on by three seeds
for row in huneke_table(range(3, 10)):
    print(row.n, row.sigma, row.alpha3, row.verdict)
