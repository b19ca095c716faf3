"""
Counting interpolated paths
===========================

Interpolated quantum LS paths for a few weights, with their Bruhat-only
(q = 0) subset and the weights they carry.
"""

from collections import Counter

from qalcove import build_root_system
from qalcove.iqls import shape_context

rs = build_root_system("A", 2)
for coords in [(-1, 2), (-1, 3), (1, 1), (2, -2)]:
    ctx = shape_context(rs, rs.weight(coords))
    paths = ctx.enumerate()
    ils = ctx.enumerate(q0=True)
    print(f"lambda={rs.weight(coords)}: {len(paths)} paths, {len(ils)} with q=0")

###############################################################################
# Weight multiplicities for -w1 + 3 w2.

ctx = shape_context(rs, rs.weight([-1, 3]))
mult = Counter(str(ctx.wt(eta)) for eta in ctx.enumerate())
for weight, m in sorted(mult.items()):
    print(f"  {weight:12} x{m}")

###############################################################################
# A regular dominant weight: every junction has y_i = x_(i+1), no quantum steps.

ctx = shape_context(rs, rs.weight([1, 1]))
for eta in ctx.enumerate():
    print(" ", eta, " nega =", ctx.nega(eta))
