"""
Quantum Bruhat graph QBG(W) and its Bruhat subgraph.

Edges are ``x --a--> x s_a`` for positive roots ``a``; a *Bruhat* edge raises
the length by one and a *quantum* edge lowers it by ``2<rho, a^v> - 1``.
Besides distances and the quantum weight of shortest paths, the graph answers
label-increasing path queries for an arbitrary total order on a set of labels,
which is what the arrow relations on interpolated QLS paths are built from.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

from .rootsys import Coroot, Root, RootSystem, WeylElement

__all__ = [
    "BRUHAT", "QUANTUM", "QBGEdge", "QBGPath", "QuantumBruhatGraph", "UniquenessError",
    "build_qbg",
]

BRUHAT = "B"
QUANTUM = "Q"


class UniquenessError(AssertionError):
    """Two distinct label-increasing paths were found between the same vertices."""


@dataclass(frozen=True)
class QBGEdge:
    source: WeylElement
    target: WeylElement
    label: Root
    kind: str


@dataclass(frozen=True)
class QBGPath:
    vertices: tuple[WeylElement, ...]
    labels: tuple[Root, ...]
    kinds: tuple[str, ...]

    @property
    def start(self) -> WeylElement:
        return self.vertices[0]

    @property
    def end(self) -> WeylElement:
        return self.vertices[-1]

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def wt(self) -> Coroot:
        """Sum of the coroots of the labels of quantum edges."""
        total = Coroot.zero(len(self.start.matrix))
        for label, kind in zip(self.labels, self.kinds):
            if kind == QUANTUM:
                total = total + label.coroot
        return total

    def is_bruhat(self) -> bool:
        return all(k == BRUHAT for k in self.kinds)

    def __str__(self) -> str:
        out = str(self.vertices[0])
        for v, a, k in zip(self.vertices[1:], self.labels, self.kinds):
            out += f" -{a}{'*' if k == QUANTUM else ''}-> {v}"
        return out


class QuantumBruhatGraph:
    """The quantum Bruhat graph of the Weyl group of ``rs``.

    Vertices are ``rs.weyl``; ``kind(x, a)`` is ``"B"``, ``"Q"`` or None.
    """

    def __init__(self, rs: RootSystem):
        self.rs = rs
        roots = rs.positive_roots
        lengths = [w.length for w in rs.weyl]
        self._kind: list[list[str | None]] = []
        for x in rs.weyl:
            row: list[str | None] = []
            for k, a in enumerate(roots):
                y = rs.right_reflect[x.index][k]
                if lengths[y] == x.length + 1:
                    row.append(BRUHAT)
                elif lengths[y] == x.length - 2 * rs.rho_pairings[a] + 1:
                    row.append(QUANTUM)
                else:
                    row.append(None)
            self._kind.append(row)
        self._bfs_cache: dict[int, tuple[list[int], list[Coroot]]] = {}
        self._lip_cache: dict[tuple, dict[int, dict[int, tuple[int, ...]]]] = {}

    # edges

    @property
    def kind_table(self) -> list[list[str | None]]:
        """``kind_table[x_index][root_index]``; read-only by convention."""
        return self._kind

    def kind(self, x: WeylElement, a: Root) -> str | None:
        """Edge kind of ``x --a--> x s_a`` (``a`` positive), or None if absent."""
        return self._kind[x.index][self.rs.root_index[a]]

    def edges_from(self, x: WeylElement, bruhat_only: bool = False) -> list[QBGEdge]:
        rs = self.rs
        out = []
        for k, a in enumerate(rs.positive_roots):
            kd = self._kind[x.index][k]
            if kd is None or (bruhat_only and kd != BRUHAT):
                continue
            out.append(QBGEdge(x, rs.weyl[rs.right_reflect[x.index][k]], a, kd))
        return out

    def edges(self, bruhat_only: bool = False) -> list[QBGEdge]:
        return [e for x in self.rs.weyl for e in self.edges_from(x, bruhat_only)]

    def path(self, start: WeylElement, labels) -> QBGPath | None:
        """Follow ``labels`` from ``start``; None if some step is not an edge."""
        rs = self.rs
        verts = [start]
        kinds = []
        for a in labels:
            a = abs(a)
            kd = self._kind[verts[-1].index][rs.root_index[a]]
            if kd is None:
                return None
            kinds.append(kd)
            verts.append(rs.times_reflection(verts[-1], a))
        return QBGPath(tuple(verts), tuple(abs(a) for a in labels), tuple(kinds))

    # shortest paths

    def _bfs(self, v: int):
        if v not in self._bfs_cache:
            rs = self.rs
            n = len(rs.weyl)
            dist = [-1] * n
            wt: list[Coroot | None] = [None] * n
            dist[v] = 0
            wt[v] = Coroot.zero(rs.rank)
            queue = deque([v])
            while queue:
                x = queue.popleft()
                for k, a in enumerate(rs.positive_roots):
                    kd = self._kind[x][k]
                    if kd is None:
                        continue
                    y = rs.right_reflect[x][k]
                    if dist[y] < 0:
                        dist[y] = dist[x] + 1
                        wt[y] = wt[x] + a.coroot if kd == QUANTUM else wt[x]
                        queue.append(y)
            self._bfs_cache[v] = (dist, wt)
        return self._bfs_cache[v]

    def distance(self, v: WeylElement, w: WeylElement) -> int:
        return self._bfs(v.index)[0][w.index]

    def shortest_data(self, v: WeylElement, w: WeylElement,
                      verify: bool = False) -> tuple[int, Coroot]:
        """``(l(v => w), wt(v => w))``.

        With ``verify`` every shortest path is enumerated and their weights are
        checked to agree.
        """
        dist, wt = self._bfs(v.index)
        if verify:
            weights = {p.wt for p in self.all_shortest_paths(v, w)}
            if weights != {wt[w.index]}:
                raise AssertionError(f"shortest paths {v} => {w} carry weights {weights}")
        return dist[w.index], wt[w.index]

    def all_shortest_paths(self, v: WeylElement, w: WeylElement) -> list[QBGPath]:
        rs = self.rs
        dist_from_v = self._bfs(v.index)[0]
        target = w.index
        d = dist_from_v[target]
        out = []

        def extend(x, verts, labels, kinds):
            if len(labels) == d:
                if x == target:
                    out.append(QBGPath(tuple(rs.weyl[i] for i in verts), tuple(labels),
                                       tuple(kinds)))
                return
            for k, a in enumerate(rs.positive_roots):
                kd = self._kind[x][k]
                if kd is None:
                    continue
                y = rs.right_reflect[x][k]
                # stay on geodesics towards the target
                if dist_from_v[y] != len(labels) + 1:
                    continue
                if self._bfs(y)[0][target] != d - len(labels) - 1:
                    continue
                extend(y, verts + [y], labels + [a], kinds + [kd])

        extend(v.index, [v.index], [], [])
        return out

    # label-increasing paths

    def _label_increasing_from(self, v: int, order_idx: tuple[int, ...],
                               bruhat_only: bool) -> dict[int, tuple[int, ...]]:
        key = (order_idx, bruhat_only)
        cache = self._lip_cache.setdefault(key, {})
        if v in cache:
            return cache[v]
        rs = self.rs
        found: dict[int, tuple[int, ...]] = {}

        def dfs(x, start, used):
            if x in found:
                raise UniquenessError(
                    f"two label-increasing paths from {rs.weyl[v]} to {rs.weyl[x]}: "
                    f"{found[x]} and {tuple(used)}")
            found[x] = tuple(used)
            for pos in range(start, len(order_idx)):
                k = order_idx[pos]
                kd = self._kind[x][k]
                if kd is None or (bruhat_only and kd != BRUHAT):
                    continue
                used.append(k)
                dfs(rs.right_reflect[x][k], pos + 1, used)
                used.pop()

        dfs(v, 0, [])
        cache[v] = found
        return found

    def _as_order_idx(self, order, allowed) -> tuple[int, ...]:
        idx = self.rs.root_index
        if allowed is None:
            return tuple(idx[a] for a in order)
        allowed = set(allowed)
        return tuple(idx[a] for a in order if a in allowed)

    def label_increasing_paths_from(self, v: WeylElement, order, allowed=None,
                                    bruhat_only: bool = False) -> dict[WeylElement, QBGPath]:
        """All endpoints reachable from ``v`` along paths whose labels strictly
        increase in ``order`` and lie in ``allowed`` (default: all of ``order``).

        Raises :class:`UniquenessError` if some endpoint is reached twice.
        """
        order_idx = self._as_order_idx(order, allowed)
        found = self._label_increasing_from(v.index, order_idx, bruhat_only)
        return {self.rs.weyl[t]: self._materialize(v.index, labels)
                for t, labels in found.items()}

    def label_increasing_targets(self, v: WeylElement, order, allowed=None,
                                 bruhat_only: bool = False) -> dict[int, tuple[int, ...]]:
        """Index-level variant of :meth:`label_increasing_paths_from`:
        target index -> tuple of positive-root indices used as labels."""
        return self._label_increasing_from(v.index, self._as_order_idx(order, allowed),
                                           bruhat_only)

    def targets_by_index(self, v: int, order_idx: tuple[int, ...],
                         bruhat_only: bool = False) -> dict[int, tuple[int, ...]]:
        """As :meth:`label_increasing_targets` with the order given as root indices."""
        return self._label_increasing_from(v, order_idx, bruhat_only)

    def label_increasing_path(self, v: WeylElement, w: WeylElement, order, allowed=None,
                              bruhat_only: bool = False) -> QBGPath | None:
        order_idx = self._as_order_idx(order, allowed)
        labels = self._label_increasing_from(v.index, order_idx, bruhat_only).get(w.index)
        if labels is None:
            return None
        return self._materialize(v.index, labels)

    def _materialize(self, v: int, labels: tuple[int, ...]) -> QBGPath:
        rs = self.rs
        verts = [v]
        kinds = []
        for k in labels:
            kinds.append(self._kind[verts[-1]][k])
            verts.append(rs.right_reflect[verts[-1]][k])
        return QBGPath(tuple(rs.weyl[i] for i in verts),
                       tuple(rs.positive_roots[k] for k in labels), tuple(kinds))

    # export

    def to_json(self, bruhat_only: bool = False) -> str:
        data = {
            "type": self.rs.name,
            "vertices": [str(w) for w in self.rs.weyl],
            "edges": [
                {"source": str(e.source), "target": str(e.target),
                 "label": list(e.label.coords), "kind": "bruhat" if e.kind == BRUHAT else "quantum"}
                for e in self.edges(bruhat_only)
            ],
        }
        return json.dumps(data, indent=1)

    def to_dot(self, bruhat_only: bool = False) -> str:
        lines = [f'digraph "QBG({self.rs.name})" {{']
        for w in self.rs.weyl:
            lines.append(f'  "{w}";')
        for e in self.edges(bruhat_only):
            style = "" if e.kind == BRUHAT else ", style=dashed"
            lines.append(f'  "{e.source}" -> "{e.target}" [label="{e.label}"{style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


_GRAPHS: dict[str, QuantumBruhatGraph] = {}


def build_qbg(rs: RootSystem) -> QuantumBruhatGraph:
    """The (memoised) quantum Bruhat graph of ``rs``."""
    if rs.name not in _GRAPHS:
        _GRAPHS[rs.name] = QuantumBruhatGraph(rs)
    return _GRAPHS[rs.name]
