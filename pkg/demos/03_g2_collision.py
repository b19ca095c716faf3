"""
A forgetful image outside the strict path set (G2)
==================================================

For G2 with lambda = -2 w1 + 2 w2 there is a single admissible reflection
order, and the subset {1, 2, 3, 6, 11} for w = e maps to a triple with two
equal consecutive y entries.  The strict definition (y_i != y_(i+1)) rejects
it; dropping that condition restores injectivity, the image description and
the Chevalley identity.  The same happens for twelve weights in A3, for example
-w1 - 2 w2 + 2 w3.
"""

from qalcove import build_root_system
from qalcove.alcove import admissible_subset
from qalcove.chevalley import verify_identity
from qalcove.forgetful import xi_map
from qalcove.iqls import shape_context
from qalcove.reforder import ro_orders, suitable_chain

rs = build_root_system("G", 2)
lam = rs.weight([-2, 2])
print("admissible orders:", len(ro_orders(rs, lam)))

ctx = shape_context(rs, lam)
chain = suitable_chain(rs, lam, ctx.order)
A = admissible_subset(rs, rs.identity, chain, (1, 2, 3, 6, 11))
eta = xi_map(ctx, chain, A, distinct_y=False).eta
print("image:", eta)
print("strict path?", ctx.is_path(eta), " relaxed path?", ctx.is_path(eta, distinct_y=False))

###############################################################################
# Path counts and the identity for w = e under both readings.

strict = ctx.enumerate()
relaxed = ctx.enumerate(distinct_y=False)
print("paths:", len(strict), "strict,", len(relaxed), "relaxed")
for name, paths in [("strict", strict), ("relaxed", relaxed)]:
    report = verify_identity(rs, lam, rs.identity, ctx.order, paths=paths)
    print(f"{name:8} identity holds: {report['equal']} "
          f"({report['lhs_terms']} vs {report['rhs_terms']} terms)")
