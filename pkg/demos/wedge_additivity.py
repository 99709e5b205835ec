"""
Norm additivity on a wedge
==========================

The cone generated by (4, 1) and (8, 1) with the sup-norm.  Two positive
functionals whose norms do not add up, and what the finite state space has
to say about it.
"""

from ordrep import (CalibratedSpace, PolyCone, additivity_extension_witness, build_representation,
                    check_state_cover, norm_additivity_check, sup_seminorm)


def show(v):
    return "(" + ", ".join(str(a) for a in v) + ")"

wedge = CalibratedSpace(PolyCone(2, [(4, 1), (8, 1)]), [sup_seminorm(2)])
print("cone inequalities:", [show(h) for h in wedge.cone.inequalities])

###############################################################################
# f = (1, 1) and g = (1, -2) are both nonnegative on the generators.
res = norm_additivity_check(wedge, 0, (1, 1), (1, -2))
print(f"|f| = {res.norm_f}, |g| = {res.norm_g}, |f+g| = {res.lhs}, additive: {res.additive}")

###############################################################################
# The states of norm at most one form a polytope; its vertices are the
# points of the representing space.
states = build_representation(wedge)
for v in states.vertices[0]:
    print("  state", show(v))

###############################################################################
# Every row of the sup-norm is covered by conv(+-states), so the space is
# one where additivity is characterized by dominated extensions.  For this
# pair there is none, consistent with |f+g| < |f| + |g|.
print("state cover holds:", check_state_cover(wedge, 0).holds)
print("extension witness:", additivity_extension_witness(wedge, 0, (1, 1), (1, -2)))

###############################################################################
# Nonnegative combinations of a single state are additive, and the witness
# shows up as nested vertex weights.
w_f, w_h = additivity_extension_witness(wedge, 0, (1, 0), (2, 0))
print("weights of f:", [str(w) for w in w_f])
print("weights of f+g:", [str(w) for w in w_h])
