"""
Admissible subsets and the forgetful map in type A2
===================================================

Walk through lambda = -w1 + 2 w2 with w = s1, from the lambda-chain to the
pairs (eta, u) produced by the forgetful map.
"""

from qalcove import build_root_system
from qalcove.alcove import admissible_subsets
from qalcove.forgetful import forgetful
from qalcove.iqls import shape_context
from qalcove.reforder import suitable_chain

rs = build_root_system("A", 2)
lam = rs.weight([-1, 2])
s1 = rs.element([1])

# The shape context fixes a reflection order compatible with lam; the chain
# is read off the inversion set of the translation by lam.
ctx = shape_context(rs, lam)
chain = suitable_chain(rs, lam, ctx.order)
print("order:", " < ".join(str(r) for r in ctx.order.roots))
for k, entry in enumerate(chain, 1):
    print(f"  gamma_{k} = {entry.root}  level {entry.level}")

###############################################################################
# Each admissible subset traces a path in the quantum Bruhat graph starting at
# s1.  Its statistics and its image under the forgetful map:

for A in admissible_subsets(rs, s1, chain):
    eta, u = forgetful(ctx, chain, A)
    print(f"{str(A.positions):10} end={A.end!s:8} down={A.down!s:8} "
          f"height={A.height}  ->  {eta}, {u}")

###############################################################################
# The map forgets the chain: distinct subsets land on distinct pairs.

images = [forgetful(ctx, chain, A) for A in admissible_subsets(rs, s1, chain)]
assert len(set(images)) == len(images)
print(len(images), "subsets,", len(set(images)), "distinct images")
