"""The truncated arc algebra K_{r,s}(delta) and its graded decomposition data."""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import combinatorics as cb
from .combinatorics import CROSS, DOWN, NONE, STRAND, UP, WeightDiagram
from .diagrams import ARC, SAME, Graph, surgery
from .laurent import LaurentPoly, matmul, unitriangular_inverse


class MixedBlocks(ValueError):
    pass


class SingularMatrix(ValueError):
    pass


@dataclass(frozen=True)
class OrientedCircleDiagram:
    """The basis vector (bottom-cup, middle, top-cap)."""

    bottom: WeightDiagram
    middle: WeightDiagram
    top: WeightDiagram

    def __post_init__(self):
        if not (cb.oriented_subset(self.bottom, self.middle) and cb.oriented_subset(self.top, self.middle)):
            raise ValueError("middle weight does not orient both diagrams")

    @property
    def degree(self) -> int:
        return cb.circle_degree(self.bottom, self.middle, self.top)

    def star(self) -> OrientedCircleDiagram:
        """The anti-automorphism swapping bottom and top."""
        return OrientedCircleDiagram(self.top, self.middle, self.bottom)


ArcElement = dict  # OrientedCircleDiagram -> Fraction


def idempotent(lam: WeightDiagram) -> OrientedCircleDiagram:
    return OrientedCircleDiagram(lam, lam, lam)


def oriented_weights(lam: WeightDiagram, pool=None) -> list[WeightDiagram]:
    """All alpha with lam contained in alpha, optionally filtered by a pool."""
    lo, hi = cb.span(lam)
    cd = cb.cup_diagram(lam, lo, hi)
    arcs = sorted(cd.arcs)
    out = []
    for mask in range(1 << len(arcs)):
        changes = {}
        for k, (a, b) in enumerate(arcs):
            if mask >> k & 1:
                changes[a], changes[b] = UP, DOWN
            else:
                changes[a], changes[b] = DOWN, UP
        alpha = lam.replace(changes)
        if pool is None or alpha in pool:
            out.append(alpha)
    return out


def basis_Krs(delta: int, r: int, s: int) -> list[OrientedCircleDiagram]:
    dotted = [cb.bipartition_to_weight(l, delta) for l in cb.enumerate_lambda_dot(r, s, delta)]
    full = set(cb.lambda_weights(r, s, delta))
    out = []
    for lam in dotted:
        for alpha in oriented_weights(lam, full):
            for mu in dotted:
                if cb.block_equiv(mu, alpha) and cb.oriented_subset(mu, alpha):
                    out.append(OrientedCircleDiagram(lam, alpha, mu))
    return out


def surgery_multiply(a: OrientedCircleDiagram, b: OrientedCircleDiagram, order=None) -> dict:
    """Product a*b: a drawn underneath b, the middle section contracted.

    ``order`` optionally permutes the list of middle cup/cap pairs (sorted by
    left endpoint by default); the result does not depend on it.
    """
    if not cb.block_equiv(a.middle, b.middle):
        raise MixedBlocks("factors lie in different blocks")
    if a.top != b.bottom:
        return {}
    lo, hi = cb.span(a.bottom, a.middle, a.top, b.middle, b.top)
    g = Graph()
    lab = {}

    def line(name, w):
        for x in range(lo, hi + 1):
            if w[x] in STRAND:
                g.vertex((name, x), x)
                lab[(name, x)] = w[x]

    line(1, a.middle)
    line(2, b.middle)
    v = g.index
    cdl = cb.cup_diagram(a.bottom, lo, hi)
    cdm = cb.cup_diagram(a.top, lo, hi)
    cdw = cb.cup_diagram(b.top, lo, hi)
    for p, q in cdl.arcs:
        g.add_edge(v[(1, p)], v[(1, q)], ARC)
    for x in cdl.rays:
        t = g.vertex(("down", x), x)
        lab[("down", x)] = a.middle[x]
        g.terminal.add(t)
        g.add_edge(t, v[(1, x)], SAME)
    for p, q in cdw.arcs:
        g.add_edge(v[(2, p)], v[(2, q)], ARC)
    for x in cdw.rays:
        t = g.vertex(("up", x), x)
        lab[("up", x)] = b.middle[x]
        g.terminal.add(t)
        g.add_edge(t, v[(2, x)], SAME)
    for x in cdm.rays:
        if a.middle[x] != b.middle[x]:
            return {}
        g.add_edge(v[(1, x)], v[(2, x)], SAME)
    pairs = []
    for p, q in sorted(cdm.arcs):
        e1 = g.add_edge(v[(1, p)], v[(1, q)], ARC)
        e2 = g.add_edge(v[(2, p)], v[(2, q)], ARC)
        pairs.append((e1, e2, p, q))
    if order is not None:
        pairs = [pairs[k] for k in order]
    state = {g.labels_from(lambda k: lab[k]): Fraction(1)}
    for e1, e2, p, q in pairs:
        add = ((v[(1, p)], v[(2, p)], SAME), (v[(1, q)], v[(2, q)], SAME))
        state = surgery(g, state, (e1, e2), add)
        if not state:
            return {}
    out: dict = defaultdict(Fraction)
    for labels, c in state.items():
        changes = {x: labels[v[(1, x)]] for x in range(lo, hi + 1) if (1, x) in v}
        gamma = a.middle.replace(changes)
        out[OrientedCircleDiagram(a.bottom, gamma, b.top)] += c
    return {k: c for k, c in out.items() if c}


def multiply(x: dict, y: dict) -> dict:
    out: dict = defaultdict(Fraction)
    for a, ca in x.items():
        for b, cb_ in y.items():
            if a.top != b.bottom:
                continue
            for d, c in surgery_multiply(a, b).items():
                out[d] += ca * cb_ * c
    return {k: c for k, c in out.items() if c}


def identity_element(delta: int, r: int, s: int) -> dict:
    return {idempotent(cb.bipartition_to_weight(l, delta)): Fraction(1)
            for l in cb.enumerate_lambda_dot(r, s, delta)}


# ----------------------------------------------------------- standard modules


@dataclass
class StandardModule:
    lam: WeightDiagram
    basis: list[WeightDiagram]

    def degree(self, mu: WeightDiagram) -> int:
        return cb.cup_degree(mu, self.lam)

    def act(self, x: OrientedCircleDiagram, mu: WeightDiagram) -> dict:
        """x acting on v_mu, returned as {nu: coefficient}."""
        prod = surgery_multiply(x, OrientedCircleDiagram(mu, self.lam, self.lam))
        out = {}
        for d, c in prod.items():
            if d.middle == self.lam and d.top == self.lam:
                out[d.bottom] = out.get(d.bottom, 0) + c
        return {k: c for k, c in out.items() if c}

    def graded_dim(self) -> LaurentPoly:
        return LaurentPoly([(self.degree(mu), 1) for mu in self.basis])


def standard_module(lam: cb.Bipartition | WeightDiagram, delta: int, r: int, s: int) -> StandardModule:
    w = lam if isinstance(lam, WeightDiagram) else cb.bipartition_to_weight(lam, delta)
    dotted = [cb.bipartition_to_weight(l, delta) for l in cb.enumerate_lambda_dot(r, s, delta)]
    basis = [mu for mu in dotted if cb.block_equiv(mu, w) and cb.oriented_subset(mu, w)]
    return StandardModule(w, basis)


# ------------------------------------------------------------ d and p matrices


def d_entry(lam: WeightDiagram, mu: WeightDiagram) -> LaurentPoly:
    if cb.block_equiv(lam, mu) and cb.oriented_subset(lam, mu):
        return LaurentPoly.monomial(cb.cup_degree(lam, mu))
    return LaurentPoly()


def index_set(delta: int, r: int, s: int) -> list[WeightDiagram]:
    return cb.bruhat_sorted(cb.lambda_weights(r, s, delta))


def d_matrix(delta: int, r: int, s: int) -> tuple[list[WeightDiagram], list[list[LaurentPoly]]]:
    idx = index_set(delta, r, s)
    return idx, [[d_entry(a, b) for b in idx] for a in idx]


def p_matrix(delta: int, r: int, s: int) -> tuple[list[WeightDiagram], list[list[LaurentPoly]]]:
    """p(q) with d(q) p(-q) = identity."""
    idx, d = d_matrix(delta, r, s)
    try:
        inv = unitriangular_inverse(d)
    except ValueError as exc:
        raise SingularMatrix(str(exc)) from exc
    return idx, [[e.subs_neg() for e in row] for row in inv]


def check_inverse(d, p) -> bool:
    pm = [[e.subs_neg() for e in row] for row in p]
    prod = matmul(d, pm)
    n = len(d)
    return all(prod[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))


# --------------------------------------------------- projective functors on PIMs


def star_proj_on_pim(lam: WeightDiagram, i: int, kind: str = "E") -> list[tuple[WeightDiagram, int]]:
    """Summands P(mu)<shift> of the adjoint special projective functor on P(lam)."""
    if kind not in ("E", "F"):
        raise ValueError("kind must be E or F")
    # The F table is the E table with empty and cross interchanged.
    swap = {NONE: CROSS, CROSS: NONE, UP: UP, DOWN: DOWN}
    w = lam
    if kind == "F":
        w = WeightDiagram.make(lam.start, "".join(swap[c] for c in lam.labels),
                               swap[lam.left_tail], swap[lam.right_tail])
    res = _star_e(w, i)
    if kind == "F":
        res = [(WeightDiagram.make(m.start, "".join(swap[c] for c in m.labels),
                                   swap[m.left_tail], swap[m.right_tail]), d) for m, d in res]
    return res


def _star_e(lam: WeightDiagram, i: int) -> list[tuple[WeightDiagram, int]]:
    a, b = lam[i], lam[i + 1]
    R = lambda ch: lam.replace(ch)  # noqa: E731
    simple = {
        (DOWN, NONE): (NONE, DOWN),
        (UP, NONE): (NONE, UP),
        (CROSS, DOWN): (DOWN, CROSS),
        (CROSS, UP): (UP, CROSS),
        (CROSS, NONE): (DOWN, UP),
        (UP, DOWN): (NONE, CROSS),
    }
    if (a, b) in simple:
        x, y = simple[(a, b)]
        return [(R({i: x, i + 1: y}), 0)]
    if (a, b) == (DOWN, UP):
        mu = R({i: NONE, i + 1: CROSS})
        return [(mu, 1), (mu, -1)]
    lo, hi = cb.span(lam)
    cd = cb.cup_diagram(lam, min(lo, i - 1), max(hi, i + 2))
    if (a, b) == (DOWN, DOWN):
        j = cd.partner(i + 1)
        if j is not None and j > i + 1:
            return [(R({i: NONE, i + 1: CROSS, j: DOWN}), 0)]
    if (a, b) == (UP, UP):
        j = cd.partner(i)
        if j is not None and j < i:
            return [(R({j: UP, i: NONE, i + 1: CROSS}), 0)]
    return []


def random_basis_triple(basis, rng: random.Random):
    """Three basis vectors whose consecutive tops and bottoms agree, when possible."""
    a = rng.choice(basis)
    bs = [x for x in basis if x.bottom == a.top]
    b = rng.choice(bs)
    cs = [x for x in basis if x.bottom == b.top]
    return a, b, rng.choice(cs)


@lru_cache(maxsize=None)
def cached_basis(delta: int, r: int, s: int) -> tuple[OrientedCircleDiagram, ...]:
    return tuple(basis_Krs(delta, r, s))
