"""Planar diagram graphs and the surgery procedure.

A diagram is a graph whose vertices sit on number lines. Every vertex has an
x-coordinate and carries a label ``'^'`` or ``'v'``. Edges are of two kinds:

* ``ARC`` (a cup or cap): its endpoints carry opposite labels;
* ``SAME`` (a vertical or diagonal segment): its endpoints carry equal labels.

Vertices of degree one are terminals (ends of rays). A connected component
is a line if it contains a terminal and a closed circle otherwise. A circle
is anticlockwise iff its leftmost vertex is labelled ``'v'``.

Linear combinations of labellings are dicts ``{label_string: coefficient}``
where the string is indexed by vertex number.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable

ARC, SAME = "arc", "same"
UP, DOWN = "^", "v"
FLIP = {UP: DOWN, DOWN: UP}


class SurgeryError(RuntimeError):
    """Raised for a surgery whose topology has no defined rule."""


@dataclass
class Graph:
    keys: list = field(default_factory=list)
    index: dict = field(default_factory=dict)
    x: list = field(default_factory=list)
    edges: dict = field(default_factory=dict)
    terminal: set = field(default_factory=set)
    _next_edge: int = 0

    def vertex(self, key: Hashable, x: int | None = None) -> int:
        """Index of the vertex ``key``, creating it at position x if needed."""
        v = self.index.get(key)
        if v is None:
            if x is None:
                raise KeyError(key)
            v = len(self.keys)
            self.keys.append(key)
            self.index[key] = v
            self.x.append(x)
        return v

    def add_edge(self, u: int, v: int, kind: str) -> int:
        e = self._next_edge
        self._next_edge += 1
        self.edges[e] = (u, v, kind)
        return e

    def find_edge(self, u: int, v: int) -> int:
        for e, (a, b, _) in self.edges.items():
            if {a, b} == {u, v}:
                return e
        raise KeyError((u, v))

    def adjacency(self) -> list[list[tuple[int, str]]]:
        adj: list[list[tuple[int, str]]] = [[] for _ in self.keys]
        for a, b, kind in self.edges.values():
            adj[a].append((b, kind))
            adj[b].append((a, kind))
        return adj

    def components(self) -> tuple[list[int], list[list[int]]]:
        """(component id per vertex, vertex lists per component)."""
        n = len(self.keys)
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for a, b, _ in self.edges.values():
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        ids: dict[int, int] = {}
        comp = [0] * n
        members: list[list[int]] = []
        for v in range(n):
            r = find(v)
            if r not in ids:
                ids[r] = len(members)
                members.append([])
            comp[v] = ids[r]
            members[ids[r]].append(v)
        return comp, members

    def is_line(self, members: list[int]) -> bool:
        return any(v in self.terminal for v in members)

    def leftmost(self, members: list[int]) -> int:
        return min(members, key=lambda v: (self.x[v], v))

    def labels_from(self, label_of) -> str:
        return "".join(label_of(k) for k in self.keys)

    def consistent(self, labels: str) -> bool:
        for a, b, kind in self.edges.values():
            if (labels[a] == labels[b]) != (kind == SAME):
                return False
        return True


def anticlockwise(g: Graph, members: list[int], labels: str) -> bool:
    return labels[g.leftmost(members)] == DOWN


def propagate(adj, labels: list[str], start: int, label: str) -> bool:
    """Relabel the component of ``start`` consistently; False on a clash."""
    labels[start] = label
    seen = {start}
    stack = [start]
    ok = True
    while stack:
        u = stack.pop()
        for w, kind in adj[u]:
            want = labels[u] if kind == SAME else FLIP[labels[u]]
            if w in seen:
                if labels[w] != want:
                    ok = False
                continue
            seen.add(w)
            labels[w] = want
            stack.append(w)
    return ok


def orient_circle(g: Graph, adj, labels: list[str], members: list[int], anti: bool) -> None:
    ok = propagate(adj, labels, g.leftmost(members), DOWN if anti else UP)
    if not ok:
        raise SurgeryError("circle admits no consistent orientation")


def _left_label(g: Graph, u: int, v: int, labels: str) -> str:
    return labels[u] if (g.x[u], u) < (g.x[v], v) else labels[v]


def surgery(
    g: Graph,
    state: dict[str, Fraction],
    remove: tuple[int, int],
    add: tuple[tuple[int, int, str], tuple[int, int, str]],
) -> dict[str, Fraction]:
    """Replace two edges of g by two new edges and transform the labellings.

    The graph is modified in place. The rules are those of the Frobenius
    algebra spanned by 1 (anticlockwise circle) and x (clockwise circle) with
    x*x = 0, extended to lines: lines keep their labels, a clockwise circle
    merged into a line gives zero, a circle split off a line is clockwise,
    and two lines rejoined into two lines survive only if their old labels
    still fit the new edges and the degree is unchanged.
    """
    comp0, members0 = g.components()
    old = [g.edges[e] for e in remove]
    before = sorted({comp0[old[0][0]], comp0[old[1][0]]})
    for e in remove:
        del g.edges[e]
    for u, v, kind in add:
        g.add_edge(u, v, kind)
    comp1, members1 = g.components()
    after = sorted({comp1[add[0][0]], comp1[add[1][0]]})
    adj = g.adjacency()

    bmem = [members0[c] for c in before]
    amem = [members1[c] for c in after]
    blines = [g.is_line(m) for m in bmem]
    alines = [g.is_line(m) for m in amem]
    new_edges = [(u, v, kind) for u, v, kind in add]

    def fits(labels: str) -> bool:
        return all((labels[u] == labels[v]) == (kind == SAME) for u, v, kind in new_edges)

    out: dict[str, Fraction] = defaultdict(Fraction)

    def emit(labels, coeff):
        out["".join(labels)] += coeff

    nb, na = len(before), len(after)
    for lab, c in state.items():
        if nb == 2 and na == 1:
            if not any(blines):
                # merge of two circles
                a = [anticlockwise(g, m, lab) for m in bmem]
                if not a[0] and not a[1]:
                    continue
                labels = list(lab)
                orient_circle(g, adj, labels, amem[0], a[0] and a[1])
                emit(labels, c)
            elif all(blines):
                raise SurgeryError("two lines joined into one component")
            else:
                # circle merged into a line
                circ = bmem[0] if not blines[0] else bmem[1]
                line = bmem[1] if not blines[0] else bmem[0]
                if not anticlockwise(g, circ, lab):
                    continue
                labels = list(lab)
                t = next(v for v in line if v in g.terminal)
                propagate(adj, labels, t, lab[t])
                if any(labels[v] != lab[v] for v in line):
                    continue
                emit(labels, c)
        elif nb == 1 and na == 2:
            if not blines[0]:
                labels = list(lab)
                if anticlockwise(g, bmem[0], lab):
                    for first in (True, False):
                        labels = list(lab)
                        orient_circle(g, adj, labels, amem[0], first)
                        orient_circle(g, adj, labels, amem[1], not first)
                        emit(labels, c)
                else:
                    orient_circle(g, adj, labels, amem[0], False)
                    orient_circle(g, adj, labels, amem[1], False)
                    emit(labels, c)
            else:
                if all(alines):
                    raise SurgeryError("one line split into two lines")
                circ = amem[0] if not alines[0] else amem[1]
                line = amem[1] if not alines[0] else amem[0]
                labels = list(lab)
                orient_circle(g, adj, labels, circ, False)
                if not all((labels[u] == labels[v]) == (kind == SAME)
                           for u, v, kind in new_edges if u in line and v in line):
                    continue
                emit(labels, c)
        elif nb == 2 and na == 2:
            if not (all(blines) and all(alines)):
                raise SurgeryError("unexpected two-to-two surgery")
            # Lines keep their labels. Removing a clockwise cup/cap pair (or
            # creating an anticlockwise one) would change the degree, so such
            # terms vanish.
            if not fits(lab):
                continue
            if any(kind == ARC and _left_label(g, u, v, lab) == UP for u, v, kind in old):
                continue
            if any(kind == ARC and _left_label(g, u, v, lab) == DOWN for u, v, kind in new_edges):
                continue
            emit(lab, c)
        else:
            raise SurgeryError(f"surgery changes {nb} component(s) into {na}")
    return {k: v for k, v in out.items() if v}
