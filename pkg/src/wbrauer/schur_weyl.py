"""The gl(m|n) action on mixed tensor space V^{(x)r} (x) W^{(x)s} and its commutant.

Colours are 1-based integers in 1..m+n; colour k is even for k <= m and odd
otherwise. A basis vector of V^{(x)r} (x) W^{(x)s} is a colour tuple of length
r+s (the first r positions are V-factors). Matrices are stored sparsely as
``{(row, col): value}`` over integer indices of colour tuples, with the usual
column convention: column ``i`` holds the image of basis vector ``i``.
"""

from __future__ import annotations

import itertools
import os
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import combinatorics as cb
from .graded_walled_brauer import GradedWalledBrauer
from .linalg import EchelonBasis, nullspace, rank
from .walled_brauer import (
    SizeMismatch,
    WalledBrauerAlgebra,
    WalledBrauerDiagram,
    all_diagrams,
    flip,
    weight_idempotent,
)

DEFAULT_BUDGET = 3**10
BUDGET_ENV = "WBRAUER_BUDGET"


class BudgetExceeded(RuntimeError):
    """The requested tensor space is larger than the configured budget."""


def default_budget() -> int:
    return int(os.environ.get(BUDGET_ENV, DEFAULT_BUDGET))


def check_budget(m: int, n: int, r: int, s: int, budget: int | None = None) -> None:
    cap = default_budget() if budget is None else budget
    size = (m + n) ** (2 * (r + s))
    if size > cap:
        raise BudgetExceeded(f"(m+n)^(2(r+s)) = {size} exceeds budget {cap}")


# ----------------------------------------------------------------- colours


def parity(k: int, m: int) -> int:
    return 0 if k <= m else 1


@dataclass(frozen=True)
class ColorTuple:
    colours: tuple[int, ...]
    m: int
    n: int

    def __post_init__(self):
        if any(not 1 <= c <= self.m + self.n for c in self.colours):
            raise ValueError("colour out of range")

    @property
    def parity(self) -> int:
        return sum(parity(c, self.m) for c in self.colours) % 2

    @property
    def p(self) -> int:
        """Sum over a < b of |i_a||i_b|, reduced mod 2."""
        odd = sum(parity(c, self.m) for c in self.colours)
        return (odd * (odd - 1) // 2) % 2


def tuples(m: int, n: int, length: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(1, m + n + 1), repeat=length))


def tuple_index(t: tuple[int, ...], base: int) -> int:
    k = 0
    for c in t:
        k = k * base + (c - 1)
    return k


# ---------------------------------------------------------------- matrices


@dataclass
class RationalMatrix:
    dim: int
    entries: dict = field(default_factory=dict)

    @classmethod
    def identity(cls, dim: int) -> RationalMatrix:
        return cls(dim, {(k, k): Fraction(1) for k in range(dim)})

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        rows = defaultdict(list)
        for (i, k), x in other.entries.items():
            rows[i].append((k, x))
        out: dict = defaultdict(Fraction)
        for (i, j), x in self.entries.items():
            for k, y in rows.get(j, ()):
                out[(i, k)] += x * y
        return RationalMatrix(self.dim, {p: v for p, v in out.items() if v})

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        out = dict(self.entries)
        for p, v in other.entries.items():
            out[p] = out.get(p, 0) + v
        return RationalMatrix(self.dim, {p: v for p, v in out.items() if v})

    def scale(self, c) -> RationalMatrix:
        return RationalMatrix(self.dim, {p: v * c for p, v in self.entries.items() if v * c})

    def __sub__(self, other: RationalMatrix) -> RationalMatrix:
        return self + other.scale(-1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        a = {p: v for p, v in self.entries.items() if v}
        b = {p: v for p, v in other.entries.items() if v}
        return self.dim == other.dim and a == b

    def trace(self) -> Fraction:
        return sum((v for (i, j), v in self.entries.items() if i == j), Fraction(0))

    def vector(self) -> dict:
        return {i * self.dim + j: v for (i, j), v in self.entries.items() if v}

    def triples(self) -> list[tuple[int, int, str]]:
        return [(i, j, str(v)) for (i, j), v in sorted(self.entries.items()) if v]


# ------------------------------------------------------------------ weights


def _position(p: int, n: int) -> int:
    """Place of a vertex on the boundary: bottom left to right, then top right to left."""
    return p - n if p >= n else 2 * n - 1 - p


def _chords(sigma: WalledBrauerDiagram) -> list[tuple[int, int]]:
    return [(p, q) for p, q in enumerate(sigma.m) if p < q]


def _interleave(a: tuple[int, int], b: tuple[int, int]) -> bool:
    lo, hi = sorted(a)
    return (lo < b[0] < hi) != (lo < b[1] < hi)


@lru_cache(maxsize=None)
def crossing_pairs(sigma: WalledBrauerDiagram) -> tuple[tuple[tuple[int, int], tuple[int, int]], ...]:
    """Pairs of strands that cross an odd number of times in any drawing."""
    n = sigma.n
    ch = _chords(sigma)
    pos = [(_position(p, n), _position(q, n)) for p, q in ch]
    return tuple(
        (ch[a], ch[b]) for a in range(len(ch)) for b in range(a + 1, len(ch)) if _interleave(pos[a], pos[b])
    )


def _colour_at(p: int, n: int, i, j) -> int:
    return i[p - n] if p >= n else j[p]


def wt(sigma: WalledBrauerDiagram, i, j, m: int) -> int:
    """Signed weight of sigma with bottom colours i and top colours j."""
    n = sigma.n
    if len(i) != n or len(j) != n:
        raise SizeMismatch("colour tuples do not match the diagram")
    for p, q in _chords(sigma):
        if _colour_at(p, n, i, j) != _colour_at(q, n, i, j):
            return 0
    odd = 0
    for a, b in crossing_pairs(sigma):
        odd += parity(_colour_at(a[0], n, i, j), m) * parity(_colour_at(b[0], n, i, j), m)
    for p, q in _chords(sigma):
        if p >= n and q >= n:
            odd += parity(i[p - n], m)
    return -1 if odd % 2 else 1


def _segments_cross(p1, p2, q1, q2) -> bool:
    def orient(a, b, c):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        return (v > 0) - (v < 0)

    return (
        orient(p1, p2, q1) * orient(p1, p2, q2) < 0
        and orient(q1, q2, p1) * orient(q1, q2, p2) < 0
    )


def random_drawing(sigma: WalledBrauerDiagram, rng) -> list[list[tuple[float, float]]]:
    """A random polyline drawing of sigma in the unit-height strip, one path per strand."""
    n = sigma.n
    paths = []
    for p, q in _chords(sigma):
        if p < n and q >= n:
            paths.append([(float(q - n), 0.0), (rng.uniform(-1, n), rng.uniform(0.2, 0.8)), (float(p), 1.0)])
        elif p >= n:
            a, b = p - n, q - n
            h = rng.uniform(0.05, 0.95)
            mid = [(a + rng.uniform(-0.4, 0.4), h), (b + rng.uniform(-0.4, 0.4), h)]
            paths.append([(float(a), 0.0), *mid, (float(b), 0.0)])
        else:
            h = 1 - rng.uniform(0.05, 0.95)
            mid = [(p + rng.uniform(-0.4, 0.4), h), (q + rng.uniform(-0.4, 0.4), h)]
            paths.append([(float(p), 1.0), *mid, (float(q), 1.0)])
    return paths


def wt_by_drawing(sigma: WalledBrauerDiagram, i, j, m: int, rng) -> int:
    """The weight computed by counting intersections in a random explicit drawing."""
    n = sigma.n
    ch = _chords(sigma)
    for p, q in ch:
        if _colour_at(p, n, i, j) != _colour_at(q, n, i, j):
            return 0
    paths = random_drawing(sigma, rng)
    colours = [parity(_colour_at(p, n, i, j), m) for p, _ in ch]
    odd = 0
    for a in range(len(paths)):
        for b in range(a + 1, len(paths)):
            hits = sum(
                _segments_cross(paths[a][x], paths[a][x + 1], paths[b][y], paths[b][y + 1])
                for x in range(len(paths[a]) - 1)
                for y in range(len(paths[b]) - 1)
            )
            odd += hits * colours[a] * colours[b]
    odd += sum(colours[k] for k, (p, q) in enumerate(ch) if p >= n and q >= n)
    return -1 if odd % 2 else 1


# ------------------------------------------------------------ action maps


def _consistent_tops(sigma: WalledBrauerDiagram, i, colours: int):
    """All top colourings j making (i, sigma, j) consistently coloured."""
    n = sigma.n
    j = [0] * n
    free = []
    for p, q in _chords(sigma):
        if p >= n:
            if i[p - n] != i[q - n]:
                return
        elif q >= n:
            j[p] = i[q - n]
        else:
            free.append((p, q))
    for choice in itertools.product(range(1, colours + 1), repeat=len(free)):
        for (p, q), c in zip(free, choice):
            j[p] = j[q] = c
        yield tuple(j)


def diagram_matrix(sigma: WalledBrauerDiagram, m: int, n: int) -> RationalMatrix:
    """Matrix of the right action v_i . sigma = sum_j wt(i sigma j) v_j."""
    base = m + n
    dim = base**sigma.n
    out = {}
    for i in tuples(m, n, sigma.n):
        col = tuple_index(i, base)
        for j in _consistent_tops(sigma, i, base):
            w = wt(sigma, i, j, m)
            if w:
                out[(tuple_index(j, base), col)] = Fraction(w)
    return RationalMatrix(dim, out)


def psi_matrix(x, m: int, n: int, r: int | None = None, s: int | None = None) -> RationalMatrix:
    """Image of a diagram or a linear combination {diagram: coeff} on V^r (x) W^s."""
    if isinstance(x, WalledBrauerDiagram):
        return diagram_matrix(x, m, n)
    if not x:
        if r is None:
            raise ValueError("r and s are needed for the zero element")
        return RationalMatrix((m + n) ** (r + s))
    total = None
    for d, c in x.items():
        term = diagram_matrix(d, m, n).scale(c)
        total = term if total is None else total + term
    return total


def permutation_diagram(perm: tuple[int, ...]) -> WalledBrauerDiagram:
    return flip(perm, len(perm), 0)


def phi_matrix(perm: tuple[int, ...], m: int, n: int) -> RationalMatrix:
    """Right action of a permutation (top a joined to bottom perm(a)) on V^{(x)(r+s)}."""
    return diagram_matrix(permutation_diagram(perm), m, n)


def flip_endomorphism(mat: RationalMatrix, m: int, n: int, r: int, s: int) -> RationalMatrix:
    """Transport End(V^{r+s}) to End(V^r (x) W^s) by dualising the last s factors."""
    base = m + n
    ts = tuples(m, n, r + s)
    out = {}
    for (row, col), v in mat.entries.items():
        j, i = ts[row], ts[col]
        il, ir, jl, jr = i[:r], i[r:], j[:r], j[r:]
        pi = ColorTuple(ir, m, n)
        pj = ColorTuple(jr, m, n)
        sign = ((pi.parity + pj.parity) * pj.parity + pi.p + pj.p) % 2
        out[(tuple_index(jl + ir, base), tuple_index(il + jr, base))] = -v if sign else v
    return RationalMatrix(mat.dim, out)


# ------------------------------------------------------- Lie superalgebra


def gl_generator(a: int, b: int, m: int, n: int, r: int, s: int) -> RationalMatrix:
    """Action of the matrix unit e_{a,b} on V^r (x) W^s with Koszul signs."""
    base = m + n
    deg = (parity(a, m) + parity(b, m)) % 2
    out: dict = defaultdict(Fraction)
    for t in tuples(m, n, r + s):
        before = 0
        for p, c in enumerate(t):
            koszul = -1 if deg * before % 2 else 1
            if p < r and c == b:
                u = t[:p] + (a,) + t[p + 1:]
                out[(tuple_index(u, base), tuple_index(t, base))] += koszul
            elif p >= r and c == a:
                sign = -1 if deg * parity(a, m) % 2 else 1
                u = t[:p] + (b,) + t[p + 1:]
                out[(tuple_index(u, base), tuple_index(t, base))] += -sign * koszul
            before += parity(c, m)
    return RationalMatrix(base ** (r + s), {k: v for k, v in out.items() if v})


def _apply_unit(x: tuple[int, int], c: int, left_parity: int, is_v: bool, m: int):
    """e_x applied to the basis vector of colour c sitting after left_parity odd vectors."""
    a, b = x
    deg = (parity(a, m) + parity(b, m)) % 2
    koszul = -1 if deg * left_parity % 2 else 1
    if is_v:
        return (a, koszul) if c == b else None
    if c != a:
        return None
    sign = -1 if deg * parity(a, m) % 2 else 1
    return b, -sign * koszul


def omega(a: int, b: int, m: int, n: int, r: int, s: int) -> RationalMatrix:
    """The operator sum_{i,j} (-1)^{|j|} e_{i,j} at factor a times e_{j,i} at factor b (1-based, a < b)."""
    base = m + n
    out: dict = defaultdict(Fraction)
    for t in tuples(m, n, r + s):
        pref = [0]
        for c in t:
            pref.append(pref[-1] + parity(c, m))
        for i in range(1, base + 1):
            for j in range(1, base + 1):
                hb = _apply_unit((j, i), t[b - 1], pref[b - 1], b <= r, m)
                ha = _apply_unit((i, j), t[a - 1], pref[a - 1], a <= r, m)
                if hb is None or ha is None:
                    continue
                u = list(t)
                u[a - 1], u[b - 1] = ha[0], hb[0]
                coeff = ha[1] * hb[1] * (-1 if parity(j, m) else 1)
                out[(tuple_index(tuple(u), base), tuple_index(t, base))] += coeff
    return RationalMatrix(base ** (r + s), {k: v for k, v in out.items() if v})


# --------------------------------------------------------------- commutant


def _weight(t: tuple[int, ...], r: int, base: int) -> tuple[int, ...]:
    w = [0] * base
    for p, c in enumerate(t):
        w[c - 1] += 1 if p < r else -1
    return tuple(w)


@dataclass
class CommutantReport:
    even: int
    odd: int

    @property
    def total(self) -> int:
        return self.even + self.odd


def commutant(m: int, n: int, r: int, s: int, budget: int | None = None) -> CommutantReport:
    """Dimensions of the even and odd parts of End_g(V^r (x) W^s).

    The diagonal units e_{k,k} are even, so a homomorphism of either parity
    must map each weight space into itself; unknowns are restricted to such
    entries before imposing the remaining super-commutation equations.
    """
    check_budget(m, n, r, s, budget)
    base = m + n
    ts = tuples(m, n, r + s)
    weights = [_weight(t, r, base) for t in ts]
    par = [sum(parity(c, m) for c in t) % 2 for t in ts]
    groups = defaultdict(list)
    for k, w in enumerate(weights):
        groups[w].append(k)
    gens = []
    for a in range(1, base + 1):
        for b in range(1, base + 1):
            if a != b:
                mat = gl_generator(a, b, m, n, r, s)
                rows, cols = defaultdict(list), defaultdict(list)
                for (i, j), v in mat.entries.items():
                    rows[j].append((i, v))
                    cols[i].append((j, v))
                gens.append(((parity(a, m) + parity(b, m)) % 2, rows, cols))
    dims = {}
    for xpar in (0, 1):
        unknowns = [
            (i, j) for g in groups.values() for i in g for j in g if (par[i] + par[j]) % 2 == xpar
        ]
        columns = []
        for i, j in unknowns:
            # coefficient of X[i][j] in (rho X - (-1)^{|x||X|} X rho) for every generator
            col: dict = defaultdict(Fraction)
            for g, (gp, rows, cols) in enumerate(gens):
                sign = -1 if gp * xpar % 2 else 1
                for k, v in rows.get(i, ()):
                    col[(g, k, j)] += v
                for k, v in cols.get(j, ()):
                    col[(g, i, k)] -= sign * v
            columns.append({k: v for k, v in col.items() if v})
        dims[xpar] = len(unknowns) - rank(columns)
    return CommutantReport(dims[0], dims[1])


def commutant_dim(m: int, n: int, r: int, s: int, budget: int | None = None) -> int:
    return commutant(m, n, r, s, budget).total


# --------------------------------------------------------- rank of Psi


def _matrices(diagrams, m, n, threads):
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda d: diagram_matrix(d, m, n), diagrams))
    return [diagram_matrix(d, m, n) for d in diagrams]


def psi_rank_kernel(m: int, n: int, r: int, s: int, budget: int | None = None, threads: int = 1):
    """(rank, kernel dimension, kernel basis) of B_{r,s}(m-n) -> End(V^r (x) W^s).

    Kernel vectors are dicts {diagram: coefficient}.
    """
    check_budget(m, n, r, s, budget)
    diagrams = all_diagrams(r, s)
    mats = _matrices(diagrams, m, n, threads)
    ker = nullspace([mt.vector() for mt in mats])
    kernel = [{diagrams[k]: c for k, c in v.items()} for v in ker]
    return len(diagrams) - len(ker), len(ker), kernel


def is_injective_predicted(m: int, n: int, r: int, s: int) -> bool:
    return r + s < (m + 1) * (n + 1)


# ------------------------------------------------------------------ ideals


def ideal_dim(generators, r: int, s: int, delta) -> int:
    """Dimension of the two-sided ideal of B_{r,s}(delta) generated by the given elements."""
    alg = WalledBrauerAlgebra(r, s, delta)
    units = [{d: Fraction(1)} for d in alg.basis]
    left = EchelonBasis()
    for g in generators:
        for u in units:
            left.add(alg.to_vector(alg.multiply(u, g)))
    ideal = EchelonBasis()
    for v in left.vectors():
        x = alg.from_vector(v)
        for u in units:
            ideal.add(alg.to_vector(alg.multiply(x, u)))
    return len(ideal)


def canonical_word(r: int, s: int) -> str:
    return "E" * r + "F" * s


def idempotents_with_positive_k(m: int, n: int, r: int, s: int, word: str | None = None) -> list[dict]:
    word = word or canonical_word(r, s)
    delta = m - n
    galg = GradedWalledBrauer(word, delta)
    out = []
    for content in galg.contents():
        if galg.k_of_content(content) > 0:
            e = weight_idempotent(word, content, delta)
            if e:
                out.append(e)
    return out


# ------------------------------------------------------------------ census


def simple_count_of_image(m: int, n: int, r: int, s: int, budget: int | None = None) -> int:
    """Number of simple modules of the image algebra of B_{r,s}(m-n) in End(V^r (x) W^s).

    Over a field of characteristic zero the radical of the trace form of a
    faithful representation is the Jacobson radical, and the commutator
    subspace of a split semisimple algebra has codimension equal to the
    number of its simple components.
    """
    check_budget(m, n, r, s, budget)
    eb = EchelonBasis()
    basis = []
    for d in all_diagrams(r, s):
        mt = diagram_matrix(d, m, n)
        if eb.add(mt.vector()):
            basis.append(mt)
    k = len(basis)
    gram = [[(basis[a] @ basis[b]).trace() for b in range(k)] for a in range(k)]
    rad = nullspace([{b: gram[a][b] for b in range(k) if gram[a][b]} for a in range(k)])
    span = EchelonBasis()
    for v in rad:
        acc = RationalMatrix(basis[0].dim)
        for a, c in v.items():
            acc = acc + basis[a].scale(c)
        span.add(acc.vector())
    for a in range(k):
        for b in range(a + 1, k):
            span.add((basis[a] @ basis[b] - basis[b] @ basis[a]).vector())
    return k - len(span)


def summand_census(m: int, n: int, r: int, s: int, word: str | None = None, budget: int | None = None) -> dict:
    """Which irreducible labels survive in the image of the walled Brauer algebra."""
    check_budget(m, n, r, s, budget)
    word = word or canonical_word(r, s)
    delta = m - n
    galg = GradedWalledBrauer(word, delta)
    zero = RationalMatrix((m + n) ** (r + s))
    survive_of_content = {}
    for content in galg.contents():
        e = weight_idempotent(word, content, delta)
        survive_of_content[content] = bool(e) and psi_matrix(e, m, n, r, s) != zero
    rows = {}
    for k, tab in enumerate(galg.tableaux):
        if not galg.is_restricted(k):
            continue
        lam = cb.weight_to_bipartition(tab.shape, delta)
        row = rows.setdefault(
            lam,
            {
                "bipartition": str(lam),
                "cross": cb.is_cross(lam, m, n),
                "k": cb.k_of_bipartition(lam, delta),
                "survives": True,
                "contents": [],
            },
        )
        row["survives"] = row["survives"] and survive_of_content[tab.content]
        row["contents"].append(list(tab.content))
    ordered = [rows[lam] for lam in sorted(rows, key=lambda b: (b.left, b.right))]
    content_rows = [
        {"content": list(c), "k": galg.k_of_content(c), "survives": survive_of_content[c]}
        for c in sorted(survive_of_content)
    ]
    return {
        "m": m,
        "n": n,
        "r": r,
        "s": s,
        "word": word,
        "classes": ordered,
        "contents": content_rows,
        "cross_count": sum(1 for row in ordered if row["cross"]),
        "surviving_count": sum(1 for row in ordered if row["survives"]),
    }


def kernel_matches_truncation(m: int, n: int, r: int, s: int, word: str | None = None) -> tuple[int, int]:
    """(dim ker Psi, dim of the graded ideal spanned by pairs with k > min(m, n))."""
    word = word or canonical_word(r, s)
    _, kdim, _ = psi_rank_kernel(m, n, r, s)
    galg = GradedWalledBrauer(word, m - n)
    return kdim, len(galg.truncation(min(m, n)))
