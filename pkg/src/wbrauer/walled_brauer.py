"""The classical walled Brauer algebra B_{r,s}(delta).

A diagram on r+s top and r+s bottom vertices is stored as a tuple ``m`` of
length 2(r+s): point ``k`` (0-based) is top vertex k+1, point ``N+k`` is
bottom vertex k+1, and ``m[p]`` is the partner of point p. The product
``a*b`` puts a underneath b.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import combinatorics as cb
from .combinatorics import Bipartition
from .linalg import nullspace, rank, solve


class SizeMismatch(ValueError):
    pass


class NotInLambda(ValueError):
    pass


@dataclass(frozen=True)
class WalledBrauerDiagram:
    r: int
    s: int
    m: tuple[int, ...]

    def __post_init__(self):
        n = self.r + self.s
        if len(self.m) != 2 * n or sorted(self.m) != list(range(2 * n)):
            raise ValueError("not a perfect matching")
        for p, q in enumerate(self.m):
            if self.m[q] != p or p == q:
                raise ValueError("not a perfect matching")
            if p < q:
                same_edge = (p < n) == (q < n)
                left_p, left_q = (p % n) < self.r, (q % n) < self.r
                if same_edge and left_p == left_q:
                    raise ValueError("horizontal strand does not cross the wall")
                if not same_edge and left_p != left_q:
                    raise ValueError("vertical strand crosses the wall")

    @property
    def n(self) -> int:
        return self.r + self.s

    def top(self, k: int) -> int:
        return k

    def bottom(self, k: int) -> int:
        return self.n + k

    def horizontal_top(self) -> list[tuple[int, int]]:
        n = self.n
        return sorted((p, q) for p, q in enumerate(self.m) if p < q < n)

    def horizontal_bottom(self) -> list[tuple[int, int]]:
        n = self.n
        return sorted((p - n, q - n) for p, q in enumerate(self.m) if n <= p < q)

    def pairs(self) -> list[tuple[str, int, str, int]]:
        """Strands as (edge, vertex, edge, vertex) with 1-based vertices."""
        n = self.n
        out = []
        for p, q in enumerate(self.m):
            if p < q:
                out.append(("t" if p < n else "b", p % n + 1, "t" if q < n else "b", q % n + 1))
        return out

    def to_json(self) -> dict:
        return {"r": self.r, "s": self.s, "strands": [list(x) for x in self.pairs()]}


def identity(r: int, s: int) -> WalledBrauerDiagram:
    n = r + s
    return WalledBrauerDiagram(r, s, tuple(list(range(n, 2 * n)) + list(range(n))))


def wb_multiply(a: WalledBrauerDiagram, b: WalledBrauerDiagram) -> tuple[WalledBrauerDiagram, int]:
    """a underneath b: the resulting diagram and the number of closed loops."""
    if (a.r, a.s) != (b.r, b.s):
        raise SizeMismatch("diagrams have different (r, s)")
    n = a.n
    # Points: ("a", p) and ("b", p). a's top is glued to b's bottom.
    res = [None] * (2 * n)

    def outer(d, p):
        # index in the product of an outer point, or None if it is a middle point
        if d == "a":
            return None if p < n else p
        return p if p < n else None

    def cross(d, p):
        # from a middle point of one diagram to the glued point of the other
        return ("b", n + p) if d == "a" else ("a", p - n)

    seen_mid = set()
    for start in [("a", p) for p in range(n, 2 * n)] + [("b", p) for p in range(n)]:
        so = outer(*start)
        if res[so] is not None:
            continue
        d, p = start
        while True:
            q = (a if d == "a" else b).m[p]
            o = outer(d, q)
            if o is not None:
                res[so], res[o] = o, so
                break
            seen_mid.add((d, q))
            d, p = cross(d, q)
            seen_mid.add((d, p))
    loops = 0
    for p in range(n):
        if ("a", p) in seen_mid:
            continue
        loops += 1
        d, q = "a", p
        while True:
            seen_mid.add((d, q))
            q2 = (a if d == "a" else b).m[q]
            seen_mid.add((d, q2))
            d, q = cross(d, q2)
            if (d, q) in seen_mid:
                break
    return WalledBrauerDiagram(a.r, a.s, tuple(res)), loops


def flip(perm: tuple[int, ...], r: int, s: int) -> WalledBrauerDiagram:
    """Permutation diagram (top a to bottom perm(a), 1-based) with the right part flipped."""
    n = r + s
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError("not a permutation")
    m = [None] * (2 * n)
    for a in range(1, n + 1):
        b = perm[a - 1]
        p = a - 1 if a <= r else n + a - 1
        q = n + b - 1 if b <= r else b - 1
        m[p], m[q] = q, p
    return WalledBrauerDiagram(r, s, tuple(m))


def unflip(d: WalledBrauerDiagram) -> tuple[int, ...]:
    n, r = d.n, d.r
    perm = [0] * n
    for p, q in enumerate(d.m):
        # the endpoint that plays the role of "top a"
        a = p + 1 if p < n else p - n + 1
        if not ((p < n) == (a <= r)):
            continue
        b = q - n + 1 if q >= n else q + 1
        if (q >= n) != (b <= r):
            continue
        perm[a - 1] = b
    return tuple(perm)


def all_diagrams(r: int, s: int) -> list[WalledBrauerDiagram]:
    return [flip(p, r, s) for p in itertools.permutations(range(1, r + s + 1))]


# ------------------------------------------------------------- elements


class WalledBrauerAlgebra:
    """B_{r,s}(delta) with delta an exact rational."""

    def __init__(self, r: int, s: int, delta):
        self.r, self.s = r, s
        self.delta = Fraction(delta)
        self.basis = all_diagrams(r, s)
        self.index = {d: k for k, d in enumerate(self.basis)}
        self._prod: dict = {}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def diagram_product(self, a: WalledBrauerDiagram, b: WalledBrauerDiagram) -> tuple[WalledBrauerDiagram, int]:
        key = (a, b)
        out = self._prod.get(key)
        if out is None:
            out = wb_multiply(a, b)
            self._prod[key] = out
        return out

    def multiply(self, x: dict, y: dict) -> dict:
        out: dict = defaultdict(Fraction)
        for a, ca in x.items():
            for b, cb_ in y.items():
                d, loops = self.diagram_product(a, b)
                out[d] += ca * cb_ * self.delta ** loops
        return {k: c for k, c in out.items() if c}

    def one(self) -> dict:
        return {identity(self.r, self.s): Fraction(1)}

    def add(self, *xs: dict, coeffs=None) -> dict:
        out: dict = defaultdict(Fraction)
        for k, x in enumerate(xs):
            c = 1 if coeffs is None else coeffs[k]
            for d, v in x.items():
                out[d] += c * v
        return {k: c for k, c in out.items() if c}

    def scale(self, x: dict, c) -> dict:
        return {d: v * c for d, v in x.items() if v * c}

    def tau(self, a: int) -> dict:
        n = self.r + self.s
        perm = list(range(1, n + 1))
        perm[a - 1], perm[a] = perm[a], perm[a - 1]
        return {flip(tuple(perm), self.r, self.s): Fraction(1)}

    def signed_transposition(self, a: int, b: int) -> dict:
        n = self.r + self.s
        if not (1 <= a <= n and 1 <= b <= n and a != b):
            raise ValueError("bad transposition")
        perm = list(range(1, n + 1))
        perm[a - 1], perm[b - 1] = perm[b - 1], perm[a - 1]
        sign = -1 if (a <= self.r) != (b <= self.r) else 1
        return {flip(tuple(perm), self.r, self.s): Fraction(sign)}

    def z(self) -> dict:
        n = self.r + self.s
        terms = [self.signed_transposition(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
        return self.add(*terms)

    def to_vector(self, x: dict) -> dict:
        return {self.index[d]: c for d, c in x.items()}

    def from_vector(self, v: dict) -> dict:
        return {self.basis[k]: c for k, c in v.items() if c}


def embed(d: WalledBrauerDiagram, side: str) -> WalledBrauerDiagram:
    """Insert a vertical strand just left (side 'E') or right ('F') of the wall."""
    r, s, n = d.r, d.s, d.n
    r2, s2 = (r + 1, s) if side == "E" else (r, s + 1)
    n2 = n + 1

    def pos(p):
        k = p % n
        k2 = k if k < r else k + 1
        return k2 if p < n else n2 + k2

    m = [None] * (2 * n2)
    for p, q in enumerate(d.m):
        m[pos(p)] = pos(q)
    m[r], m[n2 + r] = n2 + r, r
    return WalledBrauerDiagram(r2, s2, tuple(m))


def embed_element(x: dict, side: str) -> dict:
    return {embed(d, side): c for d, c in x.items()}


# -------------------------------------------------------- Jucys-Murphy


def sizes(word: str) -> tuple[int, int]:
    return word.count("E"), word.count("F")


def jm_elements(word: str, delta) -> list[dict]:
    """x_1, ..., x_{r+s} in B_{r,s}(delta) for the E/F word."""
    xs: list[dict] = []
    r = s = 0
    for letter in word:
        small = WalledBrauerAlgebra(r, s, delta)
        xs = [embed_element(x, letter) for x in xs]
        r, s = (r + 1, s) if letter == "E" else (r, s + 1)
        big = WalledBrauerAlgebra(r, s, delta)
        new = big.add(big.z(), embed_element(small.z(), letter), coeffs=[1, -1])
        xs.append(new)
    return xs


def jm_by_sum(r: int, s: int, letter: str, delta) -> dict:
    """The last JM element as a sum of signed transpositions through the new vertex."""
    alg = WalledBrauerAlgebra(r, s, delta)
    c = alg.r if letter == "E" else alg.r + 1
    n = r + s
    return alg.add(*[alg.signed_transposition(a, c) for a in range(1, n + 1) if a != c])


def _matrix_columns(alg: WalledBrauerAlgebra, x: dict) -> list[dict]:
    """Columns of left multiplication by x in the diagram basis."""
    return [alg.to_vector(alg.multiply(x, {d: Fraction(1)})) for d in alg.basis]


def _apply(cols: list[dict], v: dict) -> dict:
    out: dict = defaultdict(Fraction)
    for j, c in v.items():
        for i, x in cols[j].items():
            out[i] += c * x
    return {k: c for k, c in out.items() if c}


def generalized_eigenspace(cols: list[dict], c, dim: int) -> tuple[list[dict], list[dict]]:
    """(kernel basis, image spanning set) of (A - c)^N with N large enough."""
    shifted = []
    for j in range(dim):
        col = dict(cols[j])
        col[j] = col.get(j, 0) - c
        shifted.append({k: v for k, v in col.items() if v})
    power = [dict({j: Fraction(1)}) for j in range(dim)]
    prev = None
    while True:
        power = [_apply(shifted, v) for v in power]
        rk = rank(power)
        if rk == prev:
            break
        prev = rk
    return nullspace(power), power


def project(cols: list[dict], v: dict, c, dim: int) -> dict:
    """Component of v in the generalized c-eigenspace (along the other eigenspaces)."""
    ker, img = generalized_eigenspace(cols, c, dim)
    sol = solve(ker + img, v)
    if sol is None:
        raise AssertionError("eigenspace decomposition failed")
    out: dict = defaultdict(Fraction)
    for j, coef in sol.items():
        if j < len(ker):
            for k, x in ker[j].items():
                out[k] += coef * x
    return {k: x for k, x in out.items() if x}


def eigen_target(letter: str, i, delta):
    return Fraction(i) if letter == "E" else -Fraction(i) - Fraction(delta)


def weight_idempotent(word: str, content, delta) -> dict:
    """e(i) via generalized eigenprojections in the regular representation."""
    r, s = sizes(word)
    alg = WalledBrauerAlgebra(r, s, delta)
    xs = jm_elements(word, delta)
    v = alg.to_vector(alg.one())
    for letter, i, x in zip(word, content, xs):
        v = project(_matrix_columns(alg, x), v, eigen_target(letter, i, delta), alg.dim)
        if not v:
            return {}
    return alg.from_vector(v)


def contents(word: str, delta) -> list[tuple]:
    """Contents of all Bratteli paths for the word."""
    paths = [(cb.EMPTY, ())]
    for letter in word:
        nxt = []
        for lam, cont in paths:
            addl, reml = cb.addable_removable(lam.left)
            addr, remr = cb.addable_removable(lam.right)
            if letter == "E":
                for c, p in addl.items():
                    nxt.append((Bipartition(p, lam.right), cont + (c,)))
                for c, p in remr.items():
                    nxt.append((Bipartition(lam.left, p), cont + (-c - Fraction(delta),)))
            else:
                for c, p in reml.items():
                    nxt.append((Bipartition(p, lam.right), cont + (c,)))
                for c, p in addr.items():
                    nxt.append((Bipartition(lam.left, p), cont + (-c - Fraction(delta),)))
        paths = nxt
    return sorted({tuple(Fraction(c) for c in cont) for _, cont in paths})


# ------------------------------------------------------------ Specht modules


def standard_tableaux(shape: tuple[int, ...]) -> list[tuple[tuple[int, ...], ...]]:
    n = sum(shape)
    out = []

    def rec(rows, k):
        if k > n:
            out.append(tuple(tuple(r) for r in rows))
            return
        for i in range(len(shape)):
            if len(rows[i]) < shape[i] and (i == 0 or len(rows[i - 1]) > len(rows[i])):
                rows[i].append(k)
                rec(rows, k + 1)
                rows[i].pop()

    rec([[] for _ in shape], 1)
    return out


def _where(t, k):
    for i, row in enumerate(t):
        if k in row:
            return i, row.index(k)
    raise KeyError(k)


@dataclass
class SpechtModule:
    shape: tuple[int, ...]

    def __post_init__(self):
        self.tableaux = standard_tableaux(self.shape)
        self.index = {t: j for j, t in enumerate(self.tableaux)}
        self._gens: dict = {}

    @property
    def dim(self) -> int:
        return len(self.tableaux)

    def generator(self, k: int) -> list[list[Fraction]]:
        """Matrix of the transposition (k k+1) in Young's seminormal form."""
        if k in self._gens:
            return self._gens[k]
        d = self.dim
        mat = [[Fraction(0)] * d for _ in range(d)]
        for j, t in enumerate(self.tableaux):
            (i1, j1), (i2, j2) = _where(t, k), _where(t, k + 1)
            rho = Fraction((j2 - i2) - (j1 - i1))
            mat[j][j] = 1 / rho
            if i1 != i2 and j1 != j2:
                swapped = tuple(tuple(k + 1 if x == k else k if x == k + 1 else x for x in row) for row in t)
                jj = self.index[swapped]
                # column j: image of v_t; off-diagonal weight chosen so the square is 1
                mat[jj][j] = Fraction(1) if i2 > i1 else 1 - 1 / rho ** 2
        self._gens[k] = mat
        return mat

    def permutation(self, perm: tuple[int, ...]) -> list[list[Fraction]]:
        """Matrix of the permutation a -> perm[a-1] (a homomorphism for composition)."""
        n = len(perm)
        mat = [[Fraction(int(i == j)) for j in range(self.dim)] for i in range(self.dim)]
        # bubble-sort perm into the identity: perm = s_{k1} ... s_{km}
        p = list(perm)
        word = []
        changed = True
        while changed:
            changed = False
            for k in range(n - 1):
                if p[k] > p[k + 1]:
                    p[k], p[k + 1] = p[k + 1], p[k]
                    word.append(k + 1)
                    changed = True
        # p_final = perm o s_{k1} o ... o s_{km} = id, so perm = s_{km} ... s_{k1}.
        for k in reversed(word):
            mat = _matmul(mat, self.generator(k))
        return mat


def _matmul(a, b):
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    return [[sum((a[i][k] * b[k][j] for k in range(m) if a[i][k] and b[k][j]), Fraction(0))
             for j in range(p)] for i in range(n)]


@lru_cache(maxsize=None)
def specht_module(shape: tuple[int, ...]) -> SpechtModule:
    return SpechtModule(tuple(shape))


# ------------------------------------------------------------ cell modules


class WBCellModule:
    """C_{r,s}(lambda) with basis X^t x (standard tableau pairs)."""

    def __init__(self, r: int, s: int, lam: Bipartition, delta):
        t = r - sum(lam.left)
        if t < 0 or s - sum(lam.right) != t:
            raise NotInLambda(f"{lam} is not in Lambda_{{{r},{s}}}")
        self.r, self.s, self.t, self.lam = r, s, t, lam
        self.delta = Fraction(delta)
        self.SL, self.SR = specht_module(lam.left), specht_module(lam.right)
        self.X = self._x_basis()
        self.xindex = {d: k for k, d in enumerate(self.X)}
        self.basis = [(k, a, b) for k in range(len(self.X)) for a in range(self.SL.dim) for b in range(self.SR.dim)]
        self.bindex = {v: j for j, v in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _fixed_top(self) -> list[tuple[int, int]]:
        r = self.r
        return [(r - k, r + k - 1) for k in range(1, self.t + 1)]  # 0-based vertices

    def _x_basis(self) -> list[WalledBrauerDiagram]:
        r, s, t = self.r, self.s, self.t
        n = r + s
        out = []
        top_free_l = list(range(r - t))
        top_free_r = list(range(r + t, n))
        for bl in itertools.combinations(range(r), t):
            for br in itertools.permutations(range(r, n), t):
                m = [None] * (2 * n)
                for p, q in self._fixed_top():
                    m[p], m[q] = q, p
                for p, q in zip(bl, br):
                    m[n + p], m[n + q] = n + q, n + p
                rest_l = [p for p in range(r) if p not in bl]
                rest_r = [p for p in range(r, n) if p not in br]
                for a, b in zip(top_free_l, rest_l):
                    m[a], m[n + b] = n + b, a
                for a, b in zip(top_free_r, rest_r):
                    m[a], m[n + b] = n + b, a
                out.append(WalledBrauerDiagram(r, s, tuple(m)))
        return out

    def decompose(self, d: WalledBrauerDiagram):
        """Write d = tau' sigma' with tau' in X^t; None if d has the wrong top."""
        n, r, t = d.r + d.s, self.r, self.t
        if d.horizontal_top() != sorted(self._fixed_top()):
            return None
        free_l = list(range(r - t))
        free_r = list(range(r + t, n))
        m = [None] * (2 * n)
        for p, q in self._fixed_top():
            m[p], m[q] = q, p
        for p, q in d.horizontal_bottom():
            m[n + p], m[n + q] = n + q, n + p
        perm_l, perm_r = [0] * len(free_l), [0] * len(free_r)
        for free, perm in ((free_l, perm_l), (free_r, perm_r)):
            bottoms = sorted(d.m[a] - n for a in free)
            for k, b in enumerate(bottoms):
                m[free[k]], m[n + b] = n + b, free[k]
            for j, a in enumerate(free):
                perm[j] = bottoms.index(d.m[a] - n) + 1
        return WalledBrauerDiagram(d.r, d.s, tuple(m)), tuple(perm_l), tuple(perm_r)

    def act_diagram(self, sigma: WalledBrauerDiagram, j: int) -> dict:
        k, a, b = self.basis[j]
        prod, loops = wb_multiply(sigma, self.X[k])
        dec = self.decompose(prod)
        if dec is None:
            return {}
        tau2, pl, pr = dec
        c = self.delta ** loops
        ml = self.SL.permutation(pl)
        mr = self.SR.permutation(pr)
        k2 = self.xindex[tau2]
        out = {}
        for a2 in range(self.SL.dim):
            if not ml[a2][a]:
                continue
            for b2 in range(self.SR.dim):
                v = c * ml[a2][a] * mr[b2][b]
                if v:
                    out[self.bindex[(k2, a2, b2)]] = out.get(self.bindex[(k2, a2, b2)], 0) + v
        return out

    def act(self, x: dict, v: dict) -> dict:
        out: dict = defaultdict(Fraction)
        for sigma, c in x.items():
            for j, cv in v.items():
                for k, w in self.act_diagram(sigma, j).items():
                    out[k] += c * cv * w
        return {k: c for k, c in out.items() if c}

    def matrix(self, x: dict) -> list[dict]:
        """Columns of the action of x."""
        return [self.act(x, {j: Fraction(1)}) for j in range(self.dim)]


def cell_dim_formula(r: int, s: int, lam: Bipartition) -> int:
    t = r - sum(lam.left)
    f = cb._factorial
    return f(r) * f(s) // (f(r - t) * f(t) * f(s - t)) * cb.hook_length_dim(lam.left) * cb.hook_length_dim(lam.right)


def z_scalar(r: int, s: int, lam: Bipartition, delta) -> Fraction:
    t = r - sum(lam.left)

    def total(p):
        return sum(j - i for i, row in enumerate(p) for j in range(row))

    return Fraction(total(lam.left) + total(lam.right)) - t * Fraction(delta)


def _gen_eigen_dim(cols: list[dict], c, dim: int) -> int:
    ker, _ = generalized_eigenspace(cols, c, dim)
    return len(ker)


def i_restriction_dim(r: int, s: int, lam: Bipartition, i, side: str, delta) -> int:
    """dim of the i-restriction of C_{r,s}(lam) to B_{r-1,s} (side L) or B_{r,s-1} (side R)."""
    big = WalledBrauerAlgebra(r, s, delta)
    if side == "L":
        small = WalledBrauerAlgebra(r - 1, s, delta)
        x = big.add(big.z(), embed_element(small.z(), "E"), coeffs=[1, -1])
        target = Fraction(i)
    else:
        small = WalledBrauerAlgebra(r, s - 1, delta)
        x = big.add(big.z(), embed_element(small.z(), "F"), coeffs=[1, -1])
        target = -Fraction(i) - Fraction(delta)
    mod = WBCellModule(r, s, lam, delta)
    return _gen_eigen_dim(mod.matrix(x), target, mod.dim)


def i_restriction_prediction(r: int, s: int, lam: Bipartition, i, side: str, delta) -> int:
    if side == "L":
        cands = cb.enumerate_lambda_rs(r - 1, s)
        hits = [mu for mu in cands if lam in cb.bipartition_edges(mu, i, delta, "forward")]
        return sum(cell_dim_formula(r - 1, s, mu) for mu in hits)
    cands = cb.enumerate_lambda_rs(r, s - 1)
    hits = [mu for mu in cands if lam in cb.bipartition_edges(mu, i, delta, "backward")]
    return sum(cell_dim_formula(r, s - 1, mu) for mu in hits)


def restriction_contents(r: int, s: int, lam: Bipartition, side: str, delta) -> list:
    """Candidate i for which an i-restriction can be nonzero."""
    addl, reml = cb.addable_removable(lam.left)
    addr, remr = cb.addable_removable(lam.right)
    d = Fraction(delta)
    if side == "L":
        out = set(reml) | {-c - d for c in addr}
    else:
        out = set(addl) | {-c - d for c in remr}
    return sorted(Fraction(x) for x in out)
