"""Resurgence of general lines in the plane, through their pairwise crossings.

Run with `python3 demos/lines_resurgence.py`.
"""

from resurgence.criteria import resurgence_bracket, rho_skeleton, sweep
from resurgence.schemes import SkeletonSpec, skeleton_scheme

# s general lines meet in C(s,2) points; I is the ideal of those points
for s in (3, 4, 5):
    Z = skeleton_scheme(SkeletonSpec(2, 2, s))
    b = resurgence_bracket(Z)
    print(s, len(Z.components), "bracket", b.lower, b.upper, "closed form", rho_skeleton(2, 2, s).value)

# The containment grid for four lines. (4, 3) fails even though m >= r,
# while (6, 4) sits exactly at rho = 3/2 and holds.
Z = skeleton_scheme(SkeletonSpec(2, 2, 4))
for v in sweep(Z, 6, 4):
    if v.m >= v.r:
        print(v.m, v.r, v.verdict, v.criterion)
