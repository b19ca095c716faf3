"""
Admissible subsets of a lambda-chain (the quantum alcove model).

A subset ``A = {j_1 < ... < j_p}`` of chain positions is ``w``-admissible when
``w -> w s_{|b_j1|} -> ...`` is a path in the quantum Bruhat graph.  The
weight is computed from the composite affine map: with ``u_k`` the vertices of
the path,

    wt(A) = end(A) lam + sum_k l_{j_k} u_{k-1}(b_{j_k}),

which is the expansion of ``-w s_{b_j1,-l_j1} ... s_{b_jp,-l_jp}(-lam)``.
:func:`admissible_subsets_naive` evaluates the reflections directly and serves
as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .qbg import BRUHAT, QUANTUM, QBGPath, build_qbg
from .reforder import LambdaChain
from .rootsys import Coroot, RootSystem, Weight, WeylElement, pair

__all__ = [
    "AdmissibleSubset", "admissible_subset", "admissible_subsets", "admissible_subsets_naive", "iter_admissible",
    "affine_reflect", "DEFAULT_BOUND",
]

DEFAULT_BOUND = 10 ** 7


@dataclass(frozen=True)
class AdmissibleSubset:
    positions: tuple[int, ...]          # 1-based chain positions
    w: WeylElement
    path: QBGPath = field(compare=False)
    end: WeylElement = field(compare=False)
    wt: Weight = field(compare=False)
    down: Coroot = field(compare=False)
    height: int = field(compare=False)
    n: int = field(compare=False)

    @property
    def quantum_positions(self) -> tuple[int, ...]:
        """The positions whose step is a quantum edge."""
        return tuple(j for j, k in zip(self.positions, self.path.kinds) if k == QUANTUM)

    @property
    def is_bruhat(self) -> bool:
        return self.path.is_bruhat()

    def label(self) -> str:
        if not self.positions:
            return "{}"
        return "{" + ", ".join(map(str, self.positions)) + "}"

    def stats(self) -> tuple[WeylElement, Weight, Coroot, int, int]:
        return self.end, self.wt, self.down, self.height, self.n


class _ChainData:
    """Integer tables for fast enumeration."""

    def __init__(self, rs: RootSystem, chain: LambdaChain):
        self.abs_idx = [rs.root_index[abs(e.root)] for e in chain]
        self.neg = [e.root.sign < 0 for e in chain]
        self.level = [e.level for e in chain]
        self.ltilde = [e.ltilde for e in chain]
        self.vec = [np.array([int(c) for c in rs.root_weight(e.root).coords], dtype=np.int64)
                    for e in chain]


def _lam_vector(lam: Weight):
    if not lam.is_integral():
        raise ValueError(f"{lam} is not integral")
    return np.array([int(c) for c in lam.coords], dtype=np.int64)


def iter_admissible(rs: RootSystem, w: WeylElement, chain: LambdaChain, q0: bool = False):
    """Yield the admissible subsets in depth-first (lexicographic) order."""
    g = build_qbg(rs)
    kinds = g.kind_table
    refl = rs.right_reflect
    wmat = rs._weight_np
    data = _ChainData(rs, chain)
    lam = _lam_vector(chain.lam)
    r = len(chain)
    rank = rs.rank

    def emit(positions, verts, knds, shift, down, height, n):
        end = verts[-1]
        wt = wmat[end] @ lam + shift
        path = QBGPath(tuple(rs.weyl[v] for v in verts),
                       tuple(rs.positive_roots[data.abs_idx[j - 1]] for j in positions),
                       tuple(knds))
        return AdmissibleSubset(tuple(positions), w, path, rs.weyl[end],
                                Weight(tuple(int(x) for x in wt)), Coroot(tuple(down)),
                                height, n)

    def dfs(start, positions, verts, knds, shift, down, height, n):
        yield emit(positions, verts, knds, shift, down, height, n)
        u = verts[-1]
        for j in range(start, r):
            k = data.abs_idx[j]
            kd = kinds[u][k]
            if kd is None or (q0 and kd != BRUHAT):
                continue
            new_shift = shift + data.level[j] * (wmat[u] @ data.vec[j])
            if kd == QUANTUM:
                co = rs.positive_roots[k].coroot.coords
                new_down = tuple(a + b for a, b in zip(down, co))
                new_height = height + (-1 if data.neg[j] else 1) * data.ltilde[j]
            else:
                new_down, new_height = down, height
            yield from dfs(j + 1, positions + [j + 1], verts + [refl[u][k]], knds + [kd],
                           new_shift, new_down, new_height, n + data.neg[j])

    yield from dfs(0, [], [w.index], [], np.zeros(rank, dtype=np.int64), (0,) * rank, 0, 0)


def admissible_subsets(rs: RootSystem, w: WeylElement, chain: LambdaChain, q0: bool = False,
                       bound: int = DEFAULT_BOUND) -> list[AdmissibleSubset]:
    """All ``w``-admissible subsets, sorted by size and then lexicographically
    (the row order of the usual tables)."""
    out = []
    for a in iter_admissible(rs, w, chain, q0):
        out.append(a)
        if len(out) > bound:
            raise MemoryError(f"more than {bound} admissible subsets; stream with iter_admissible")
    out.sort(key=lambda a: (len(a.positions), a.positions))
    return out


def affine_reflect(rs: RootSystem, nu: Weight, root, k: int) -> Weight:
    """``s_{root,k}(nu) = nu - (<nu, root^v> - k) root``."""
    return nu - rs.root_weight(root) * (pair(nu, root) - k)


def admissible_subsets_naive(rs: RootSystem, w: WeylElement, chain: LambdaChain,
                             q0: bool = False) -> list[tuple[tuple[int, ...], tuple]]:
    """Brute force over all subsets with direct evaluation of the statistics.

    Returns ``(positions, (end, wt, down, height, n))`` pairs in the same order
    as :func:`admissible_subsets`.
    """
    g = build_qbg(rs)
    r = len(chain)
    out = []
    for size in range(r + 1):
        for subset in combinations(range(1, r + 1), size):
            x = w
            ok = True
            down = Coroot.zero(rs.rank)
            height = 0
            for j in subset:
                e = chain[j - 1]
                kd = g.kind(x, abs(e.root))
                if kd is None or (q0 and kd != BRUHAT):
                    ok = False
                    break
                if kd == QUANTUM:
                    down = down + abs(e.root).coroot
                    height += e.root.sign * e.ltilde
                x = rs.times_reflection(x, e.root)
            if not ok:
                continue
            nu = -chain.lam
            for j in reversed(subset):
                e = chain[j - 1]
                nu = affine_reflect(rs, nu, e.root, -e.level)
            wt = -rs.act(w, nu)
            n = sum(1 for j in subset if chain[j - 1].root.sign < 0)
            out.append((subset, (x, wt, down, height, n)))
    return out


def admissible_subset(rs: RootSystem, w: WeylElement, chain: LambdaChain, positions,
                      q0: bool = False) -> AdmissibleSubset | None:
    """The admissible subset with the given 1-based positions, or None if the
    induced path leaves the graph."""
    positions = tuple(positions)
    if list(positions) != sorted(set(positions)) or any(not 1 <= j <= len(chain) for j in positions):
        raise ValueError(f"positions {positions} are not increasing chain positions")
    g = build_qbg(rs)
    x = w
    verts, kinds = [w], []
    down = Coroot.zero(rs.rank)
    height = 0
    wt = Weight.zero(rs.rank)
    for j in positions:
        e = chain[j - 1]
        kd = g.kind(x, abs(e.root))
        if kd is None or (q0 and kd != BRUHAT):
            return None
        wt = wt + rs.act(x, rs.root_weight(e.root)) * e.level
        if kd == QUANTUM:
            down = down + abs(e.root).coroot
            height += e.root.sign * e.ltilde
        x = rs.times_reflection(x, e.root)
        verts.append(x)
        kinds.append(kd)
    wt = wt + rs.act(x, chain.lam)
    path = QBGPath(tuple(verts), tuple(abs(chain[j - 1].root) for j in positions), tuple(kinds))
    n = sum(1 for j in positions if chain[j - 1].root.sign < 0)
    return AdmissibleSubset(positions, w, path, x, wt, down, height, n)
