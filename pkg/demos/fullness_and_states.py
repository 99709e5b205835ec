"""
Full unit balls and attaining states
====================================

The orthant with the seminorm max(|x + y|, |x - y|) (the l1-norm in rotated
coordinates) has a unit ball that is not full: an order interval between
two unit vectors leaves the ball.  The same defect shows up as points where
no positive state attains the seminorm.
"""

from fractions import Fraction

from ordrep import (CalibratedSpace, PolyCone, PolyhedralSeminorm, check_full, check_state_cover, find_state,
                    grosberg_krein, sup_seminorm)


def show(v):
    return "(" + ", ".join(str(a) for a in v) + ")"

orthant = PolyCone(2, [(1, 0), (0, 1)])
l1 = CalibratedSpace(orthant, [PolyhedralSeminorm("l1", [(1, 1), (1, -1)])])
p = l1.seminorms[0]

###############################################################################
# The order interval [(0,-1), (1,0)] contains (1,-1), of norm 2.
rep = check_full(l1, 0)
x, y, z = rep.witness
print("full:", rep.holds, " x <= y <= z:", show(x), show(y), show(z), " norms:", p(x), p(y), p(z))

###############################################################################
# Dually, the rows of p are not in the convex hull of +-states, and the
# separating point is one where states reach only half of p.
cover = check_state_cover(l1, 0)
w = cover.witness
print("cover:", cover.holds, " row", show(w["row"]), " x", show(w["x"]), " p(x) =", w["p"], " best state value", w["state_sup"])
half = (Fraction(1, 2), Fraction(-1, 2))
print("state attaining p at (1/2,-1/2):", find_state(l1, 0, half))

###############################################################################
# The minimal positive splitting of u = (1, -1) costs 2 although |u| = 1.
gk = grosberg_krein(l1, 0, (1, -1))
print("|u| =", gk.norm_u, " split", show(gk.v1), "-", show(gk.v2), " gap", gk.gap)

###############################################################################
# The sup-norm on the same cone has none of these problems.
sup = CalibratedSpace(orthant, [sup_seminorm(2)])
print("sup-norm full:", check_full(sup, 0).holds, " state at (1,-2):", show(find_state(sup, 0, (1, -2)).f))
