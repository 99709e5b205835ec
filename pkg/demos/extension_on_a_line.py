"""
Extending a functional from a line
==================================

On R^2 with the coordinate order, take the line X spanned by (1, -2) and
the functional f with f(1, -2) = 2.  Whether f has a positive extension to
the whole plane with the same norm depends on the seminorm.
"""

from ordrep import (CalibratedSpace, ExtensionProblem, PolyCone, PolyhedralSeminorm, Subspace, bnn_check,
                    bnn_construct, subspace_norm, sup_seminorm, verify_violation)
from ordrep import lp


def show(v):
    return "(" + ", ".join(str(a) for a in v) + ")"

orthant = PolyCone(2, [(1, 0), (0, 1)])
line = Subspace(((1, -2),))

###############################################################################
# With the sup-norm, f has norm 1 on X ...
sup_space = CalibratedSpace(orthant, [sup_seminorm(2)])
problem = ExtensionProblem(sup_space, 0, line, (2,))
print("norm of f on X:", subspace_norm(problem))

###############################################################################
# ... but x = (1, -2) sits below y = (1, -1), where the norm is only 1 while
# f(x) = 2.  A positive extension g of norm 1 would need g(x) <= g(y) <= 1.
result = bnn_check(problem)
x, y = result.violation
print("extendable:", result.extendable, " violation x =", show(x), " y =", show(y), " verified:", verify_violation(problem, result))

###############################################################################
# The dual system (g in the dual ball, positive, g = f on X) is infeasible,
# and the solver hands back a Farkas vector that proves it.
dual = bnn_construct(problem)
prob, outcome = dual.lp
print("dual status:", outcome.status, " certificate checks:", lp.verify_certificate(prob, outcome))

###############################################################################
# With p(x, y) = |x| instead, f has norm 2 and g(x, y) = 2x extends it.
# The sup-norm is added as a second seminorm so the family separates points.
abs_space = CalibratedSpace(orthant, [PolyhedralSeminorm("abs_first", [(1, 0)]), sup_seminorm(2)])
problem = ExtensionProblem(abs_space, 0, line, (2,))
result = bnn_check(problem)
print("norm:", result.sub_norm, " extendable:", result.extendable, " extension:", show(result.extension))
