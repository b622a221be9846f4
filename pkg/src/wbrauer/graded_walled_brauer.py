"""The graded walled Brauer algebra B_R(delta) in its diagram basis f_ST.

A tableau is a chain of weight diagrams starting at an orientation of a base
weight (``eta(delta)`` for the algebra itself, ``zeta(m, n)`` for the
comparison with gl(m|n)). Each step follows an ``i``-edge forwards (letter E)
or backwards (letter F). Gluing the elementary matchings of all steps on top
of the base cup diagram gives the stacked diagram of the tableau. Its
unoriented shape depends only on the content, so it is built once per
content and called a skeleton.

Elements of the algebra are dicts ``{(s, t): Fraction}`` over pairs of
tableau indices of equal shape.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from . import combinatorics as cb
from .combinatorics import BACKWARD, DOWN, FORWARD, STRAND, UP, WeightDiagram
from .diagrams import ARC, SAME, Graph, propagate, surgery
from .laurent import LaurentPoly
from .linalg import nullspace, rank, solve


class NonIntegerDelta(ValueError):
    pass


class MixedParameters(ValueError):
    pass


class NotRestricted(ValueError):
    pass


class NotInLambda(ValueError):
    pass


class ShapeMismatch(ValueError):
    pass


class NotGoodPair(ValueError):
    pass


DIRECTION = {"E": "forward", "F": "backward"}


@dataclass(frozen=True)
class RTableau:
    word: str
    chain: tuple[WeightDiagram, ...]
    content: tuple[int, ...]

    @property
    def shape(self) -> WeightDiagram:
        return self.chain[-1]

    def bipartitions(self, delta: int) -> tuple[cb.Bipartition, ...]:
        return tuple(cb.weight_to_bipartition(w, delta) for w in self.chain)

    def to_json(self, delta: int | None = None) -> dict:
        out = {"word": self.word, "content": list(self.content)}
        if delta is not None:
            out["chain"] = [str(b) for b in self.bipartitions(delta)]
        else:
            out["chain"] = [w.to_json() for w in self.chain]
        return out


def _check_delta(delta) -> int:
    if isinstance(delta, bool) or int(delta) != delta:
        raise NonIntegerDelta(f"delta must be an integer, got {delta!r}")
    return int(delta)


def _check_word(word: str) -> str:
    if any(c not in "EF" for c in word):
        raise ValueError(f"word must consist of E and F, got {word!r}")
    return word


def orientations(base: WeightDiagram) -> list[WeightDiagram]:
    """All weights alpha orienting the cup diagram of base."""
    lo, hi = cb.span(base)
    cd = cb.cup_diagram(base, lo, hi)
    arcs = sorted(cd.arcs)
    out = []
    for mask in range(1 << len(arcs)):
        changes = {}
        for k, (a, b) in enumerate(arcs):
            flip = mask >> k & 1
            changes[a], changes[b] = (UP, DOWN) if flip else (DOWN, UP)
        out.append(base.replace(changes))
    return out


def _steps(lam: WeightDiagram, letter: str):
    lo, hi = cb.span(lam)
    for i in range(lo - 1, hi + 1):
        for mu, _ in cb.edges(lam, i, DIRECTION[letter]):
            yield i, mu


def enumerate_tableaux_from(word: str, starts: list[WeightDiagram]) -> list[RTableau]:
    _check_word(word)
    level = [((w,), ()) for w in starts]
    for letter in word:
        nxt = []
        for chain, content in level:
            for i, mu in _steps(chain[-1], letter):
                nxt.append((chain + (mu,), content + (i,)))
        level = nxt
    tabs = [RTableau(word, chain, content) for chain, content in level]
    return sorted(tabs, key=_tableau_key)


def _tableau_key(t: RTableau):
    return (t.shape.start, t.shape.labels, t.content, tuple((w.start, w.labels) for w in t.chain))


def enumerate_tableaux(word: str, delta: int) -> list[RTableau]:
    """All R-tableaux of type eta(delta) for the E/F word R."""
    return enumerate_tableaux_from(word, [cb.eta(_check_delta(delta))])


# ----------------------------------------------------------------- skeletons


@dataclass
class Skeleton:
    """Unoriented stacked diagram shared by all tableaux with one content."""

    base: WeightDiagram
    n: int
    lo: int
    hi: int
    strands: tuple[frozenset, ...]
    edges: list  # ((a, x), (b, y), kind, tag) with tag in {"cap", "cup", "seg", "base"}
    base_rays: tuple[int, ...]
    circles: list = field(default_factory=list)  # vertex lists ((a, x), ...)
    boundary_cups: list = field(default_factory=list)  # (p, q) on the top line
    boundary_caps: list = field(default_factory=list)  # (p, q) on the bottom line
    top_rays: list = field(default_factory=list)

    def signature(self):
        return (self.strands, sorted((e[0], e[1], e[2]) for e in self.edges))


def build_skeleton(base: WeightDiagram, tab: RTableau, window: tuple[int, int] | None = None) -> Skeleton:
    chain = tab.chain
    lo, hi = cb.span(base, *chain)
    if window is not None:
        lo, hi = min(lo, window[0]), max(hi, window[1])
    cd = cb.cup_diagram(base, lo, hi)
    lo, hi = cd.lo, cd.hi
    n = len(chain) - 1
    strands = tuple(frozenset(x for x in range(lo, hi + 1) if w[x] in STRAND) for w in chain)
    edges = [((0, p), (0, q), ARC, "base") for p, q in sorted(cd.arcs)]
    for a in range(1, n + 1):
        i = tab.content[a - 1]
        bot, top = strands[a - 1], strands[a]
        for x in range(lo, hi + 1):
            if x in (i, i + 1):
                continue
            if (x in bot) != (x in top):
                raise AssertionError("strand pattern changed away from the edge")
            if x in bot:
                edges.append(((a - 1, x), (a, x), SAME, "seg"))
        pat = ((i in bot, i + 1 in bot), (i in top, i + 1 in top))
        if pat == ((True, True), (False, False)):
            edges.append(((a - 1, i), (a - 1, i + 1), ARC, "cap"))
        elif pat == ((False, False), (True, True)):
            edges.append(((a, i), (a, i + 1), ARC, "cup"))
        elif pat == ((True, False), (False, True)):
            edges.append(((a - 1, i), (a, i + 1), SAME, "seg"))
        elif pat == ((False, True), (True, False)):
            edges.append(((a - 1, i + 1), (a, i), SAME, "seg"))
        else:
            raise AssertionError(f"no elementary matching for pattern {pat}")
    sk = Skeleton(base, n, lo, hi, strands, edges,
                  tuple(x for x in sorted(cd.rays) if x in strands[0]))
    _classify(sk)
    return sk


def _stack_graph(sk: Skeleton):
    g = Graph()
    for a, row in enumerate(sk.strands):
        for x in sorted(row):
            g.vertex((a, x), x)
    for u, v, kind, _ in sk.edges:
        g.add_edge(g.index[u], g.index[v], kind)
    for x in sk.base_rays:
        t = g.vertex(("ray", x), x)
        g.terminal.add(t)
        g.add_edge(t, g.index[(0, x)], SAME)
    return g


def _classify(sk: Skeleton) -> None:
    g = _stack_graph(sk)
    _, members = g.components()
    for m in members:
        keys = [g.keys[v] for v in m]
        tops = sorted(k[1] for k in keys if k[0] == sk.n)
        bots = sorted(k[1] for k in keys if k[0] == 0)
        if not g.is_line(m) and not tops:
            sk.circles.append(sorted(keys, key=lambda k: (k[1], k[0])))
        if len(tops) == 2:
            sk.boundary_cups.append(tuple(tops))
        elif len(tops) == 1:
            sk.top_rays.append(tops[0])
        if len(bots) == 2 and not tops:
            sk.boundary_caps.append(tuple(bots))
    sk.boundary_cups.sort()
    sk.boundary_caps.sort()
    sk.top_rays.sort()


def circle_anticlockwise(circle: list, tab: RTableau) -> bool:
    a, x = circle[0]
    return tab.chain[a][x] == DOWN


def _add_stack(g: Graph, lab: dict, prefix: str, sk: Skeleton, tab: RTableau, base_arcs: bool = True):
    for a, row in enumerate(sk.strands):
        for x in sorted(row):
            g.vertex((prefix, a, x), x)
            lab[(prefix, a, x)] = tab.chain[a][x]
    for (a, x), (b, y), kind, tag in sk.edges:
        if tag == "base" and not base_arcs:
            continue
        g.add_edge(g.index[(prefix, a, x)], g.index[(prefix, b, y)], kind)
    for x in sk.base_rays:
        t = g.vertex((prefix, "ray", x), x)
        lab[(prefix, "ray", x)] = tab.chain[0][x]
        g.terminal.add(t)
        g.add_edge(t, g.index[(prefix, 0, x)], SAME)


# ---------------------------------------------------------------- the algebra


class GradedWalledBrauer:
    """B_R(delta) (or the analogous algebra of another type) with its f_ST basis."""

    def __init__(self, word: str, delta: int | None = None, base: WeightDiagram | None = None):
        self.word = _check_word(word)
        if base is None:
            self.delta = _check_delta(delta)
            base = cb.eta(self.delta)
        else:
            self.delta = None if delta is None else _check_delta(delta)
        self.base = base
        self.n = len(word)
        self.tableaux = enumerate_tableaux_from(word, orientations(base))
        self.index = {t.chain: k for k, t in enumerate(self.tableaux)}
        shapes: dict = defaultdict(list)
        for k, t in enumerate(self.tableaux):
            shapes[t.shape].append(k)
        self.by_shape = dict(shapes)
        self.basis = [(s, t) for ks in self.by_shape.values() for s in ks for t in ks]
        self.basis_index = {p: k for k, p in enumerate(self.basis)}
        self._skeletons: dict = {}
        self._products: dict = {}
        # One window for every skeleton so that diagrams can be glued.
        self.window = cb.span(base, *{w for t in self.tableaux for w in t.chain})

    # ------------------------------------------------------------ tableaux

    def __len__(self) -> int:
        return len(self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def skeleton(self, content: tuple[int, ...]) -> Skeleton:
        sk = self._skeletons.get(content)
        if sk is None:
            tab = next(t for t in self.tableaux if t.content == content)
            sk = build_skeleton(self.base, tab, self.window)
            self._skeletons[content] = sk
        return sk

    def contents(self) -> list[tuple[int, ...]]:
        return sorted({t.content for t in self.tableaux})

    def tableau_degree(self, k: int) -> int:
        """Clockwise cups and caps minus caps in the stacked diagram."""
        t = self.tableaux[k]
        sk = self.skeleton(t.content)
        clockwise = caps = 0
        for (a, x), (b, y), kind, tag in sk.edges:
            if kind != ARC:
                continue
            if t.chain[a][min(x, y)] == UP:
                clockwise += 1
            if tag == "cap":
                caps += 1
        return clockwise - caps

    def tableau_degree_by_edges(self, k: int) -> int:
        t = self.tableaux[k]
        deg = cb.cup_degree(self.base, t.chain[0])
        for a, letter in enumerate(self.word, start=1):
            d = cb.edge_degree(t.chain[a - 1], t.chain[a], t.content[a - 1], DIRECTION[letter])
            if d is None:
                raise AssertionError("chain does not follow an edge")
            deg += d
        return deg

    @cached_property
    def degrees(self) -> list[int]:
        return [self.tableau_degree(k) for k in range(len(self.tableaux))]

    def degree(self, pair: tuple[int, int]) -> int:
        return self.degrees[pair[0]] + self.degrees[pair[1]]

    def is_restricted(self, k: int) -> bool:
        t = self.tableaux[k]
        return all(t.shape[p] == DOWN for p, _ in self.skeleton(t.content).boundary_cups)

    def star(self, k: int) -> int:
        """The tableau with all circles of its stacked diagram reversed."""
        t = self.tableaux[k]
        sk = self.skeleton(t.content)
        g = _stack_graph(sk)
        labels = [t.chain[key[0]][key[1]] if key[0] != "ray" else t.chain[0][key[1]] for key in g.keys]
        for circ in sk.circles:
            for a, x in circ:
                labels[g.index[(a, x)]] = UP if labels[g.index[(a, x)]] == DOWN else DOWN
        chain = tuple(w.replace({x: labels[g.index[(a, x)]] for x in sk.strands[a]})
                      for a, w in enumerate(t.chain))
        return self.index[chain]

    def k_of_tableau(self, k: int) -> int:
        """Number of boundary caps (components meeting the bottom line twice)."""
        return len(self.skeleton(self.tableaux[k].content).boundary_caps)

    # ------------------------------------------------------------- products

    def _pair_graph(self, s: int, t: int, lower="S", upper="T", base_arcs=True):
        """S under the mirror of T, glued along the common top line."""
        S, T = self.tableaux[s], self.tableaux[t]
        if S.shape != T.shape:
            raise ShapeMismatch("tableaux have different shapes")
        g = Graph()
        lab: dict = {}
        _add_stack(g, lab, lower, self.skeleton(S.content), S, base_arcs)
        _add_stack(g, lab, upper, self.skeleton(T.content), T, base_arcs)
        n = self.n
        for x in sorted(self.skeleton(S.content).strands[n]):
            g.add_edge(g.index[(lower, n, x)], g.index[(upper, n, x)], SAME)
        return g, lab

    def basis_product(self, st: tuple[int, int], uv: tuple[int, int], order=None) -> dict:
        cached = self._products.get((st, uv)) if order is None else None
        if cached is not None:
            return cached
        out = self._basis_product(st, uv, order)
        if order is None:
            self._products[(st, uv)] = out
        return out

    def _basis_product(self, st, uv, order):
        s, t = st
        u, v = uv
        T, U = self.tableaux[t], self.tableaux[u]
        if T.content != U.content:
            return {}
        sk = self.skeleton(T.content)
        for circ in sk.circles:
            if circle_anticlockwise(circ, T) == circle_anticlockwise(circ, U):
                return {}
        S, V = self.tableaux[s], self.tableaux[v]
        g = Graph()
        lab: dict = {}
        _add_stack(g, lab, "S", self.skeleton(S.content), S)
        _add_stack(g, lab, "V", self.skeleton(V.content), V)
        n = self.n
        idx = g.index
        for x in sk.top_rays:
            if S.shape[x] != V.shape[x]:
                raise AssertionError("joined rays carry different labels")
            g.add_edge(idx[("S", n, x)], idx[("V", n, x)], SAME)
        pairs = []
        for p, q in sk.boundary_cups:
            e1 = g.add_edge(idx[("S", n, p)], idx[("S", n, q)], ARC)
            e2 = g.add_edge(idx[("V", n, p)], idx[("V", n, q)], ARC)
            pairs.append((e1, e2, p, q))
        if order is not None:
            pairs = [pairs[k] for k in order]
        state = {g.labels_from(lambda k: lab[k]): Fraction(1)}
        for e1, e2, p, q in pairs:
            add = ((idx[("S", n, p)], idx[("V", n, p)], SAME), (idx[("S", n, q)], idx[("V", n, q)], SAME))
            state = surgery(g, state, (e1, e2), add)
            if not state:
                return {}
        out: dict = defaultdict(Fraction)
        for labels, c in state.items():
            x = self.index[_relabel(S, "S", g, labels)]
            y = self.index[_relabel(V, "V", g, labels)]
            out[(x, y)] += c
        return {k: c for k, c in out.items() if c}

    def multiply(self, x: dict, y: dict) -> dict:
        out: dict = defaultdict(Fraction)
        for a, ca in x.items():
            for b, cb_ in y.items():
                for d, c in self.basis_product(a, b).items():
                    out[d] += ca * cb_ * c
        return {k: c for k, c in out.items() if c}

    def element(self, pair: tuple[int, int]) -> dict:
        return {pair: Fraction(1)}

    def anti(self, x: dict) -> dict:
        """The anti-automorphism f_ST -> f_TS."""
        return {(t, s): c for (s, t), c in x.items()}

    # ---------------------------------------------------------- idempotents

    def e(self, content: tuple[int, ...]) -> dict:
        """e(i) from its diagrammatic description."""
        content = tuple(content)
        ks = [k for k, t in enumerate(self.tableaux) if t.content == content]
        if not ks:
            return {}
        sk = self.skeleton(content)
        out = {}
        for u in ks:
            for v in ks:
                U, V = self.tableaux[u], self.tableaux[v]
                if U.shape != V.shape:
                    continue
                if any(circle_anticlockwise(c, U) == circle_anticlockwise(c, V) for c in sk.circles):
                    continue
                g, lab = self._pair_graph(u, v, "U", "V")
                labels = g.labels_from(lambda k: lab[k])
                _, members = g.components()
                ok = True
                for m in members:
                    if g.is_line(m):
                        continue
                    sides = {g.keys[w][0] for w in m}
                    if sides == {"U", "V"} and labels[g.leftmost(m)] != DOWN:
                        ok = False
                        break
                if ok:
                    out[(u, v)] = Fraction(1)
        return out

    def one(self) -> dict:
        out: dict = {}
        for c in self.contents():
            out.update(self.e(c))
        return out

    def unit_by_solving(self) -> dict | None:
        """The unit found as the solution of 1*f = f for every basis vector f."""
        cols = []
        for st in self.basis:
            col = {}
            for uv in self.basis:
                for d, c in self.basis_product(st, uv).items():
                    col[(uv, d)] = col.get((uv, d), 0) + c
            cols.append(col)
        target = {(uv, uv): 1 for uv in self.basis}
        sol = solve(cols, target)
        if sol is None:
            return None
        return {self.basis[j]: c for j, c in sol.items() if c}

    def primitive_idempotent(self, k: int) -> dict:
        if not self.is_restricted(k):
            raise NotRestricted("e_T is only defined for restricted tableaux")
        return {(k, self.star(k)): Fraction(1)}

    # -------------------------------------------------------- k filtration

    def k_of(self, s: int, t: int) -> int:
        """Boundary cups of the diagram S under the mirror of T."""
        g, _ = self._pair_graph(s, t, base_arcs=False)
        _, members = g.components()
        return sum(1 for m in members if sum(1 for v in m if g.keys[v][:2] == ("T", 0)) == 2)

    def graded_piece(self, k: int) -> list[tuple[int, int]]:
        return [p for p in self.basis if self.k_of(*p) == k]

    def truncation(self, k: int) -> list[tuple[int, int]]:
        """Basis of the ideal spanned by f_ST with k(S, T) > k."""
        return [p for p in self.basis if self.k_of(*p) > k]

    def quotient_multiply(self, x: dict, y: dict, k: int) -> dict:
        prod = self.multiply(x, y)
        return {p: c for p, c in prod.items() if self.k_of(*p) <= k}

    def k_of_content(self, content) -> int:
        return len(self.skeleton(tuple(content)).boundary_caps)

    # -------------------------------------------------- structure constants

    def structure_constants(self) -> list[tuple[int, int, int, Fraction]]:
        out = []
        for a, st in enumerate(self.basis):
            for b, uv in enumerate(self.basis):
                for d, c in self.basis_product(st, uv).items():
                    out.append((a, b, self.basis_index[d], c))
        return out

    def trace_form(self) -> list[dict]:
        """Rows of the form (a, b) -> trace of left multiplication by ab."""
        consts = defaultdict(dict)
        for a, b, d, c in self.structure_constants():
            consts[(a, b)][d] = c
        tau = [sum(consts.get((d, c), {}).get(c, 0) for c in range(self.dim)) for d in range(self.dim)]
        rows = []
        for a in range(self.dim):
            row = {}
            for b in range(self.dim):
                val = sum(c * tau[d] for d, c in consts.get((a, b), {}).items())
                if val:
                    row[b] = Fraction(val)
            rows.append(row)
        return rows

    def radical(self) -> list[dict]:
        """Basis of the Jacobson radical (kernel of the trace form), over basis indices."""
        rows = self.trace_form()
        cols = [dict() for _ in range(self.dim)]
        for a, row in enumerate(rows):
            for b, v in row.items():
                cols[a][b] = v
        return nullspace(cols)

    # ------------------------------------------------------------- modules

    def shapes(self) -> list[WeightDiagram]:
        return list(self.by_shape)

    def cell_module(self, lam) -> GradedCellModule:
        w = lam if isinstance(lam, WeightDiagram) else cb.bipartition_to_weight(lam, self.delta)
        if w not in self.by_shape:
            raise NotInLambda(f"{lam} is not a shape of this algebra")
        return GradedCellModule(self, w)

    # --------------------------------------------------------------- iota

    def iota(self, target: GradedWalledBrauer, x: dict, i: int) -> dict:
        if target.word[:-1] != self.word or target.base != self.base:
            raise MixedParameters("target algebra must extend this word by one letter")
        out: dict = defaultdict(Fraction)
        for pair, c in x.items():
            for d, cc in self.iota_basis(target, pair, i).items():
                out[d] += c * cc
        return {k: c for k, c in out.items() if c}

    def iota_basis(self, target: GradedWalledBrauer, pair: tuple[int, int], i: int) -> dict:
        letter = target.word[-1]
        table = FORWARD if letter == "E" else BACKWARD
        s, t = pair
        S, T = self.tableaux[s], self.tableaux[t]
        lam = S.shape
        key = (lam[i], lam[i + 1])
        if key not in table:
            return {}
        new = table[key][0][0]
        if key[0] not in STRAND or key[1] not in STRAND:
            mu = lam.replace({i: new[0], i + 1: new[1]})
            d = (target.index[S.chain + (mu,)], target.index[T.chain + (mu,)])
            return {d: Fraction(1)}
        g, lab = self._pair_graph(s, t)
        n, idx = self.n, g.index
        e1 = g.find_edge(idx[("S", n, i)], idx[("T", n, i)])
        e2 = g.find_edge(idx[("S", n, i + 1)], idx[("T", n, i + 1)])
        add = ((idx[("S", n, i)], idx[("S", n, i + 1)], ARC), (idx[("T", n, i)], idx[("T", n, i + 1)], ARC))
        state = surgery(g, {g.labels_from(lambda k: lab[k]): Fraction(1)}, (e1, e2), add)
        out: dict = defaultdict(Fraction)
        for labels, c in state.items():
            xs = _relabel(S, "S", g, labels)
            ys = _relabel(T, "T", g, labels)
            mu = xs[-1].replace({i: new[0], i + 1: new[1]})
            if ys[-1].replace({i: new[0], i + 1: new[1]}) != mu:
                raise AssertionError("inserted levels disagree")
            out[(target.index[xs + (mu,)], target.index[ys + (mu,)])] += c
        return {k: c for k, c in out.items() if c}

    def iota_one(self, target: GradedWalledBrauer, i: int) -> dict:
        """1^{RE}_{R;i} (or RF): the sum of e(j i) over contents j of R."""
        out: dict = {}
        for c in self.contents():
            out.update(target.e(c + (i,)))
        return out

    # --------------------------------------------------------- good pairs

    def crossings(self, s: int, t: int):
        """Per component: (top crossings, bottom crossings, is circle, anticlockwise)."""
        g, lab = self._pair_graph(s, t)
        labels = g.labels_from(lambda k: lab[k])
        _, members = g.components()
        out = []
        for m in members:
            top = sum(1 for v in m if g.keys[v][:2] == ("T", 0))
            bot = sum(1 for v in m if g.keys[v][:2] == ("S", 0))
            circle = not g.is_line(m)
            out.append((top, bot, circle, circle and labels[g.leftmost(m)] == DOWN))
        return out

    def good_pair(self, s: int, t: int) -> bool:
        for top, bot, circle, anti in self.crossings(s, t):
            if top > 2 or bot > 2:
                return False
            if top == 2 and not (circle and anti):
                return False
            if bot == 2 and top == 0 and not (circle and not anti):
                return False
        return True

    def good_pairs(self) -> list[tuple[int, int]]:
        return [p for p in self.basis if self.good_pair(*p)]


def _relabel(tab: RTableau, prefix: str, g: Graph, labels: str) -> tuple[WeightDiagram, ...]:
    changes: dict = defaultdict(dict)
    for key, v in g.index.items():
        if key[0] == prefix and key[1] != "ray":
            changes[key[1]][key[2]] = labels[v]
    return tuple(w.replace(changes[a]) for a, w in enumerate(tab.chain))


# ------------------------------------------------------------- cell modules


@dataclass
class GradedCellModule:
    algebra: GradedWalledBrauer
    shape: WeightDiagram

    @property
    def basis(self) -> list[int]:
        return self.algebra.by_shape[self.shape]

    def graded_dim(self) -> LaurentPoly:
        return LaurentPoly([(self.algebra.degrees[k], 1) for k in self.basis])

    def act(self, pair: tuple[int, int], t: int) -> dict:
        """f_pair acting on v_t, as {tableau index: coefficient}."""
        t0 = self.basis[0]
        out: dict = defaultdict(Fraction)
        for (x, y), c in self.algebra.basis_product(pair, (t, t0)).items():
            if self.algebra.tableaux[x].shape != self.shape:
                continue
            if y != t0:
                raise AssertionError("same-shape term with a different right tableau")
            out[x] += c
        return {k: c for k, c in out.items() if c}

    def gram_by_product(self) -> list[list[Fraction]]:
        alg = self.algebra
        b = self.basis
        out = []
        for s in b:
            row = []
            for t in b:
                prod = alg.basis_product((s, s), (t, t))
                row.append(prod.get((s, t), Fraction(0)))
            out.append(row)
        return out

    def gram(self) -> list[list[int]]:
        """(v_S, v_T) = 1 iff both restricted, equal content, and all matching circles opposite."""
        alg = self.algebra
        out = []
        for s in self.basis:
            row = []
            for t in self.basis:
                S, T = alg.tableaux[s], alg.tableaux[t]
                val = 0
                if alg.is_restricted(s) and alg.is_restricted(t) and S.content == T.content:
                    sk = alg.skeleton(S.content)
                    if all(circle_anticlockwise(c, S) != circle_anticlockwise(c, T) for c in sk.circles):
                        val = 1
                row.append(val)
            out.append(row)
        return out

    def irreducible_dim(self) -> int:
        return rank({j: x for j, x in enumerate(r) if x} for r in self.gram())

    def restricted_count(self) -> int:
        return sum(1 for k in self.basis if self.algebra.is_restricted(k))


# ------------------------------------------------------------ branching


def branching_graded_dim(small: GradedWalledBrauer, big: GradedWalledBrauer, shape: WeightDiagram, i: int) -> LaurentPoly:
    """Graded dimension of 1_{R;i} C_{R'}(shape), computed from the action on the cell module."""
    module = big.cell_module(shape)
    one = small.iota_one(big, i)
    by_degree: dict = defaultdict(list)
    for t in module.basis:
        image: dict = defaultdict(Fraction)
        for pair, c in one.items():
            for x, v in module.act(pair, t).items():
                image[x] += c * v
        by_degree[big.degrees[t]].append({k: v for k, v in image.items() if v})
    return LaurentPoly({d: rank(vs) for d, vs in by_degree.items()})


def branching_prediction(small: GradedWalledBrauer, big: GradedWalledBrauer, shape: WeightDiagram, i: int) -> LaurentPoly:
    """Sum over edges mu -> shape with label i of q^{edge degree} times dim_q C_R(mu)."""
    letter = big.word[-1]
    total = LaurentPoly()
    for mu in small.shapes():
        d = cb.edge_degree(mu, shape, i, DIRECTION[letter])
        if d is not None:
            total = total + LaurentPoly.monomial(d) * small.cell_module(mu).graded_dim()
    return total


# ------------------------------------------------------- comparison with zeta


def zeta_algebra(word: str, m: int, n: int) -> GradedWalledBrauer:
    """Tableaux and diagram basis of type zeta(m, n)."""
    return GradedWalledBrauer(word, m - n, base=cb.zeta(m, n))


def trick_bijection(zalg: GradedWalledBrauer, ealg: GradedWalledBrauer, s: int, t: int) -> tuple[int, int]:
    """Map a good pair of type zeta to a pair of type eta with the same inner diagram."""
    if not zalg.good_pair(s, t):
        raise NotGoodPair("the pair is not good")
    S, T = zalg.tableaux[s], zalg.tableaux[t]
    # Rebuild the pair diagram with the eta ends: same levels, eta rays at both ends.
    g = Graph()
    lab: dict = {}
    n = zalg.n
    for prefix, tab in (("S", S), ("T", T)):
        sk = zalg.skeleton(tab.content)
        for a, row in enumerate(sk.strands):
            for x in sorted(row):
                g.vertex((prefix, a, x), x)
                lab[(prefix, a, x)] = tab.chain[a][x]
        for (a, x), (b, y), kind, tag in sk.edges:
            if tag != "base":
                g.add_edge(g.index[(prefix, a, x)], g.index[(prefix, b, y)], kind)
    for x in sorted(zalg.skeleton(S.content).strands[n]):
        g.add_edge(g.index[("S", n, x)], g.index[("T", n, x)], SAME)
    eta = ealg.base
    for prefix, tab in (("S", S), ("T", T)):
        for x in sorted(zalg.skeleton(tab.content).strands[0]):
            if eta[x] not in STRAND:
                raise AssertionError("zeta and eta differ in their empty/cross pattern")
            t_ = g.vertex((prefix, "ray", x), x)
            g.terminal.add(t_)
            lab[(prefix, "ray", x)] = eta[x]
            g.add_edge(t_, g.index[(prefix, 0, x)], SAME)
    labels = list(g.labels_from(lambda k: lab[k]))
    adj = g.adjacency()
    _, members = g.components()
    for m in members:
        term = [v for v in m if v in g.terminal]
        if not term:
            continue
        if not propagate(adj, labels, term[0], labels[term[0]]):
            raise AssertionError("relabelled component is inconsistent")
    labels = "".join(labels)
    lo, hi = zalg.window
    xs = _rebase(S, "S", g, labels, eta, lo, hi)
    ys = _rebase(T, "T", g, labels, eta, lo, hi)
    return ealg.index[xs], ealg.index[ys]


def _rebase(tab: RTableau, prefix: str, g: Graph, labels: str, base: WeightDiagram, lo: int, hi: int):
    """The chain of tab moved onto another base: inside the window keep the relabelled
    strands and the empty/cross marks, outside it use the new base."""
    changes: dict = defaultdict(dict)
    for a, w in enumerate(tab.chain):
        for x in range(lo, hi + 1):
            changes[a][x] = w[x]
    for key, v in g.index.items():
        if key[0] == prefix and key[1] != "ray":
            changes[key[1]][key[2]] = labels[v]
    return tuple(base.replace(changes[a]) for a in range(len(tab.chain)))


def random_triples(alg: GradedWalledBrauer, count: int, rng: random.Random):
    """Random composable triples of basis pairs (contents chained)."""
    by_left = defaultdict(list)
    for p in alg.basis:
        by_left[alg.tableaux[p[0]].content].append(p)
    out = []
    for _ in range(count):
        a = rng.choice(alg.basis)
        bs = by_left[alg.tableaux[a[1]].content]
        b = rng.choice(bs)
        cs = by_left[alg.tableaux[b[1]].content]
        out.append((a, b, rng.choice(cs)))
    return out
