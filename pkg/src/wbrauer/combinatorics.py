"""Bipartitions, weight diagrams and the combinatorics built on them.

Labels are single characters: ``'^'`` (up), ``'v'`` (down), ``'o'`` (empty)
and ``'x'`` (cross). Vertices are absolute integers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple

UP, DOWN, NONE, CROSS = "^", "v", "o", "x"
LABELS = (UP, DOWN, NONE, CROSS)
STRAND = (UP, DOWN)


class NotInDictionary(ValueError):
    pass


class NotDominant(ValueError):
    pass


class DifferentBlock(ValueError):
    pass


class NotCross(ValueError):
    pass


# ---------------------------------------------------------------- partitions


def _check_partition(parts: tuple[int, ...]) -> tuple[int, ...]:
    parts = tuple(int(p) for p in parts)
    if any(p < 1 for p in parts):
        raise ValueError(f"partition parts must be positive: {parts}")
    if any(a < b for a, b in zip(parts, parts[1:])):
        raise ValueError(f"partition must be weakly decreasing: {parts}")
    return parts


class Bipartition(NamedTuple):
    left: tuple[int, ...]
    right: tuple[int, ...]

    @classmethod
    def of(cls, left: Iterable[int] = (), right: Iterable[int] = ()) -> Bipartition:
        strip = lambda p: tuple(x for x in p if x)  # noqa: E731
        return cls(_check_partition(strip(left)), _check_partition(strip(right)))

    @property
    def sizes(self) -> tuple[int, int]:
        return sum(self.left), sum(self.right)

    def part(self, side: str, k: int) -> int:
        """k-th part (1-based) of the given side, 0 beyond the length."""
        p = self.left if side == "L" else self.right
        return p[k - 1] if k <= len(p) else 0

    def __str__(self) -> str:
        f = lambda p: "(" + ",".join(map(str, p)) + ")" if p else "()"  # noqa: E731
        return f"({f(self.left)},{f(self.right)})"


EMPTY = Bipartition((), ())


@lru_cache(maxsize=None)
def partitions(n: int, maxpart: int | None = None) -> tuple[tuple[int, ...], ...]:
    """All partitions of n in reverse lexicographic order."""
    if maxpart is None:
        maxpart = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, maxpart), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def hook_length_dim(p: tuple[int, ...]) -> int:
    """Number of standard tableaux of shape p."""
    n = sum(p)
    conj = [sum(1 for x in p if x > j) for j in range(p[0])] if p else []
    prod = 1
    for i, row in enumerate(p):
        for j in range(row):
            prod *= row - j + conj[j] - i - 1
    return _factorial(n) // prod


@lru_cache(maxsize=None)
def _factorial(n: int) -> int:
    return 1 if n <= 1 else n * _factorial(n - 1)


def enumerate_lambda_rs(r: int, s: int) -> list[Bipartition]:
    """Bipartitions with |L| = r - t and |R| = s - t for some 0 <= t <= min(r, s)."""
    out = []
    for t in range(min(r, s) + 1):
        for pl in partitions(r - t):
            for pr in partitions(s - t):
                out.append(Bipartition(pl, pr))
    return out


def is_dotted(lam: Bipartition, delta: int, r: int, s: int) -> bool:
    """Membership in the dotted set: everything except (empty, empty) when delta=0, r=s>0."""
    if delta == 0 and r == s and r > 0 and lam == EMPTY:
        return False
    return True


def enumerate_lambda_dot(r: int, s: int, delta: int) -> list[Bipartition]:
    return [lam for lam in enumerate_lambda_rs(r, s) if is_dotted(lam, delta, r, s)]


def is_cross(lam: Bipartition, m: int, n: int) -> bool:
    return any(lam.part("L", i) + lam.part("R", m + 2 - i) < n + 1 for i in range(1, m + 2))


# ------------------------------------------------------------ weight diagrams


@dataclass(frozen=True)
class WeightDiagram:
    """A labelled number line: ``labels`` on ``start .. start+len-1``, tails elsewhere.

    Construct via :meth:`make`, which trims the window to minimal form.
    """

    start: int
    labels: str
    left_tail: str = UP
    right_tail: str = DOWN

    @classmethod
    def make(cls, start: int, labels: str, left_tail: str = UP, right_tail: str = DOWN) -> WeightDiagram:
        for c in labels + left_tail + right_tail:
            if c not in LABELS:
                raise ValueError(f"bad label {c!r}")
        a, b = 0, len(labels)
        while a < b and labels[a] == left_tail:
            a += 1
        while b > a and labels[b - 1] == right_tail:
            b -= 1
        if a == b:
            # An empty window still records where the tails meet.
            return cls(start + a if left_tail != right_tail else 0, "", left_tail, right_tail)
        return cls(start + a, labels[a:b], left_tail, right_tail)

    @classmethod
    def from_dict(cls, labels: dict[int, str], left_tail: str = UP, right_tail: str = DOWN) -> WeightDiagram:
        if not labels:
            return cls.make(0, "", left_tail, right_tail)
        lo, hi = min(labels), max(labels)
        s = "".join(labels.get(i, "?") for i in range(lo, hi + 1))
        if "?" in s:
            raise ValueError("labels must cover a contiguous range")
        return cls.make(lo, s, left_tail, right_tail)

    @property
    def end(self) -> int:
        """One past the last window vertex."""
        return self.start + len(self.labels)

    def __getitem__(self, i: int) -> str:
        if i < self.start:
            return self.left_tail
        if i >= self.end:
            return self.right_tail
        return self.labels[i - self.start]

    def segment(self, lo: int, hi: int) -> str:
        """Labels on lo..hi inclusive."""
        return "".join(self[i] for i in range(lo, hi + 1))

    def replace(self, changes: dict[int, str]) -> WeightDiagram:
        if not changes:
            return self
        lo = min([self.start, *changes]) if changes else self.start
        hi = max([self.end - 1, *changes]) if changes else self.end - 1
        lab = {i: self[i] for i in range(lo, hi + 1)}
        lab.update(changes)
        return WeightDiagram.from_dict(lab, self.left_tail, self.right_tail)

    def count(self, label: str, lo: int, hi: int) -> int:
        return sum(1 for i in range(lo, hi + 1) if self[i] == label)

    def to_json(self) -> dict:
        return {"start": self.start, "labels": self.labels,
                "left_tail": self.left_tail, "right_tail": self.right_tail}

    def __str__(self) -> str:
        return f"{self.left_tail}..[{self.start}:{self.labels}]..{self.right_tail}"


def span(*ws: WeightDiagram, margin: int = 1) -> tuple[int, int]:
    """A vertex range outside which every given diagram is all tail.

    Extended to the right far enough that cups closing on an up-tail are inside.
    """
    lo = min(w.start for w in ws)
    hi = max(w.end for w in ws)
    extra = max(w.labels.count(DOWN) for w in ws) if ws else 0
    if any(w.right_tail == UP for w in ws):
        hi += extra
    return lo - margin, hi + margin


def bipartition_to_weight(lam: Bipartition, delta: int) -> WeightDiagram:
    kl, kr = len(lam.left), len(lam.right)
    up = {lam.part("L", k) - k + 1 for k in range(1, kl + 1)}
    down = {k - delta - lam.part("R", k) for k in range(1, kr + 1)}
    # Beyond the parts, I_up continues as 1-k and I_down as k-delta.
    lo = min([*up, *down, -kl, 1 - delta + kr]) - 1
    hi = max([*up, *down, -kl, 1 - delta + kr]) + 1
    for k in range(kl + 1, kl + 1 + (hi - lo) + 2):
        up.add(1 - k)
    for k in range(kr + 1, kr + 1 + (hi - lo) + 2):
        down.add(k - delta)
    labels = {}
    for i in range(lo, hi + 1):
        a, b = i in up, i in down
        labels[i] = CROSS if a and b else UP if a else DOWN if b else NONE
    return WeightDiagram.from_dict(labels, UP, DOWN)


def weight_to_bipartition(w: WeightDiagram, delta: int) -> Bipartition:
    if w.left_tail != UP or w.right_tail != DOWN:
        raise NotInDictionary("weight diagram tails must be up on the left and down on the right")
    lo = min(w.start, 1 - delta, 0) - 1
    hi = max(w.end, 1 - delta, 0) + 1
    ups = [i for i in range(lo, hi + 1) if w[i] in (UP, CROSS)]
    downs = [i for i in range(lo, hi + 1) if w[i] in (DOWN, CROSS)]
    if len(ups) != 1 - lo or len(downs) != hi + delta:
        raise NotInDictionary("label counts are inconsistent with delta")
    a = sorted(ups, reverse=True)
    b = sorted(downs)
    left = tuple(a[k] + k for k in range(len(a)))
    right = tuple(k + 1 - delta - b[k] for k in range(len(b)))
    return Bipartition.of(left, right)


def eta(delta: int) -> WeightDiagram:
    return bipartition_to_weight(EMPTY, delta)


def gl_weight_to_diagram(lam: Iterable[int], m: int, n: int) -> WeightDiagram:
    lam = tuple(lam)
    if len(lam) != m + n:
        raise ValueError("weight must have length m+n")
    even = [lam[r] + 1 - (r + 1) for r in range(m)]
    odd = [(s + 1) - m - lam[m + s] for s in range(n)]
    if any(a <= b for a, b in zip(even, even[1:])) or any(a >= b for a, b in zip(odd, odd[1:])):
        raise NotDominant(f"{lam} is not dominant")
    down, not_up = set(even), set(odd)
    pts = even + odd + [0]
    lo, hi = min(pts) - 1, max(pts) + 1
    labels = {}
    for i in range(lo, hi + 1):
        a, b = i not in not_up, i in down
        labels[i] = CROSS if a and b else UP if a else DOWN if b else NONE
    return WeightDiagram.from_dict(labels, UP, UP)


def zeta(m: int, n: int) -> WeightDiagram:
    return gl_weight_to_diagram([0] * (m + n), m, n)


# -------------------------------------------------------- cup/cap diagrams


@dataclass(frozen=True)
class CupDiagram:
    """Arcs and rays obtained by closing a weight diagram.

    ``rays`` and ``excluded`` list vertices inside ``[lo, hi]``; outside that
    range every vertex is a ray (up/down tails) or excluded (empty/cross tails).
    The same data describes the mirrored cap diagram.
    """

    arcs: frozenset
    rays: frozenset
    excluded: frozenset
    lo: int
    hi: int

    def partner(self, i: int) -> int | None:
        for a, b in self.arcs:
            if i == a:
                return b
            if i == b:
                return a
        return None


def closing_arcs(labels: dict[int, str]) -> tuple[list[tuple[int, int]], list[int]]:
    """Bracket matching with down as opener and up as closer. Returns (arcs, rays)."""
    stack: list[int] = []
    arcs, rays = [], []
    for i in sorted(labels):
        c = labels[i]
        if c == DOWN:
            stack.append(i)
        elif c == UP:
            if stack:
                arcs.append((stack.pop(), i))
            else:
                rays.append(i)
    rays.extend(stack)
    return sorted(arcs), sorted(rays)


def cup_diagram(w: WeightDiagram, lo: int | None = None, hi: int | None = None) -> CupDiagram:
    a, b = span(w)
    lo = a if lo is None else min(lo, a)
    hi = b if hi is None else max(hi, b)
    labels = {i: w[i] for i in range(lo, hi + 1)}
    arcs, rays = closing_arcs(labels)
    excluded = [i for i, c in labels.items() if c not in STRAND]
    return CupDiagram(frozenset(arcs), frozenset(rays), frozenset(excluded), lo, hi)


cap_diagram = cup_diagram


def block_equiv(lam: WeightDiagram, mu: WeightDiagram) -> bool:
    if (lam.left_tail, lam.right_tail) != (mu.left_tail, mu.right_tail):
        return False
    lo, hi = span(lam, mu)
    for i in range(lo, hi + 1):
        a, b = lam[i], mu[i]
        if (a in STRAND) != (b in STRAND) or (a not in STRAND and a != b):
            return False
    return lam.count(DOWN, lo, hi) == mu.count(DOWN, lo, hi)


def bruhat_leq(lam: WeightDiagram, mu: WeightDiagram) -> bool:
    """lam <= mu: mu is reached by moving downs of lam to the right."""
    if not block_equiv(lam, mu):
        return False
    lo, hi = span(lam, mu)
    cl = cm = 0
    for i in range(lo, hi + 1):
        cl += lam[i] == DOWN
        cm += mu[i] == DOWN
        if cm > cl:
            return False
    return True


def oriented_subset(lam: WeightDiagram, alpha: WeightDiagram) -> bool:
    """lam is contained in alpha: alpha orients the cup diagram of lam."""
    if not block_equiv(lam, alpha):
        raise DifferentBlock(f"{lam} and {alpha} lie in different blocks")
    lo, hi = span(lam, alpha)
    cd = cup_diagram(lam, lo, hi)
    for a, b in cd.arcs:
        if {alpha[a], alpha[b]} != {UP, DOWN}:
            return False
    seen_down = False
    for i in sorted(cd.rays):
        if alpha[i] == DOWN:
            seen_down = True
        elif seen_down:
            return False
    if seen_down and alpha.right_tail == UP:
        return False
    return True


def cup_degree(lam: WeightDiagram, alpha: WeightDiagram) -> int:
    """Number of clockwise cups of lam's cup diagram oriented by alpha."""
    if not block_equiv(lam, alpha):
        raise DifferentBlock(f"{lam} and {alpha} lie in different blocks")
    lo, hi = span(lam, alpha)
    return sum(1 for a, _ in cup_diagram(lam, lo, hi).arcs if alpha[a] == UP)


def circle_degree(lam: WeightDiagram, alpha: WeightDiagram, mu: WeightDiagram) -> int:
    """Degree of the oriented circle diagram (lam-cup, alpha, mu-cap)."""
    return cup_degree(lam, alpha) + cup_degree(mu, alpha)


# ------------------------------------------------------------------ edges

# (labels at i, i+1) -> [(new labels, degree)]
FORWARD = {
    ("v", "o"): [(("o", "v"), 0)],
    ("^", "o"): [(("o", "^"), 0)],
    ("x", "v"): [(("v", "x"), 0)],
    ("x", "^"): [(("^", "x"), 0)],
    ("x", "o"): [(("v", "^"), 0), (("^", "v"), 1)],
    ("v", "^"): [(("o", "x"), -1)],
    ("^", "v"): [(("o", "x"), 0)],
}
BACKWARD = {
    ("o", "v"): [(("v", "o"), 0)],
    ("o", "^"): [(("^", "o"), 0)],
    ("v", "x"): [(("x", "v"), 0)],
    ("^", "x"): [(("x", "^"), 0)],
    ("v", "^"): [(("x", "o"), -1)],
    ("^", "v"): [(("x", "o"), 0)],
    ("o", "x"): [(("v", "^"), 0), (("^", "v"), 1)],
}


def edges(lam: WeightDiagram, i: int, direction: str) -> list[tuple[WeightDiagram, int]]:
    """Targets mu of an i-edge out of lam with their degrees.

    ``forward`` gives lam ->i mu, ``backward`` gives lam <-i mu.
    """
    table = FORWARD if direction == "forward" else BACKWARD
    out = []
    for (a, b), d in table.get((lam[i], lam[i + 1]), []):
        out.append((lam.replace({i: a, i + 1: b}), d))
    return out


def edge_degree(lam: WeightDiagram, mu: WeightDiagram, i: int, direction: str) -> int | None:
    for nu, d in edges(lam, i, direction):
        if nu == mu:
            return d
    return None


def addable_removable(p: tuple[int, ...]) -> tuple[dict[int, tuple[int, ...]], dict[int, tuple[int, ...]]]:
    """Maps content -> partition after adding / removing a box of that content."""
    add, rem = {}, {}
    rows = list(p)
    for k in range(len(rows) + 1):
        cur = rows[k] if k < len(rows) else 0
        if k == 0 or rows[k - 1] > cur:
            q = rows[:k] + [cur + 1] + rows[k + 1:]
            add[cur - k] = tuple(q)
        if cur > 0 and (k + 1 >= len(rows) or rows[k + 1] < cur):
            q = rows[:k] + [cur - 1] + rows[k + 1:]
            rem[cur - 1 - k] = tuple(x for x in q if x)
    return add, rem


def bipartition_edges(lam: Bipartition, i: int, delta: int, direction: str) -> list[Bipartition]:
    """The same edges as :func:`edges`, phrased with boxes.

    forward: add an i-box on the left or remove a (-i-delta)-box on the right.
    backward: remove an i-box on the left or add a (-i-delta)-box on the right.
    """
    addl, reml = addable_removable(lam.left)
    addr, remr = addable_removable(lam.right)
    c = -i - delta
    out = []
    if direction == "forward":
        if i in addl:
            out.append(Bipartition(addl[i], lam.right))
        if c in remr:
            out.append(Bipartition(lam.left, remr[c]))
    else:
        if i in reml:
            out.append(Bipartition(reml[i], lam.right))
        if c in addr:
            out.append(Bipartition(lam.left, addr[c]))
    return out


# -------------------------------------------------------------- statistics


def k_statistics(w: WeightDiagram) -> tuple[int, int, int]:
    """(defect, rk, k): number of caps, min(#empty, #cross), and their sum."""
    lo, hi = span(w)
    defect = len(cup_diagram(w, lo, hi).arcs)
    rk = min(w.count(NONE, lo, hi), w.count(CROSS, lo, hi))
    return defect, rk, defect + rk


def k_of_bipartition(lam: Bipartition, delta: int) -> int:
    return k_statistics(bipartition_to_weight(lam, delta))[2]


@dataclass(frozen=True)
class Matching:
    """Crossingless matching between a bottom and a top line.

    ``caps`` sit on the bottom line, ``cups`` hang from the top line and
    ``segments`` join bottom vertex to top vertex. Outside ``[lo, hi]`` every
    strand vertex is joined straight up.
    """

    caps: tuple[tuple[int, int], ...]
    cups: tuple[tuple[int, int], ...]
    segments: tuple[tuple[int, int], ...]
    lo: int
    hi: int


def dagger(lam: Bipartition, m: int, n: int) -> tuple[WeightDiagram, Matching]:
    """The weight lam-dagger in the gl(m|n) set together with the matching t."""
    if not is_cross(lam, m, n):
        raise NotCross(f"{lam} is not ({m},{n})-cross")
    delta = m - n
    w = bipartition_to_weight(lam, delta)
    k = k_statistics(w)[2]
    e = eta(delta)
    lo0, hi0 = span(e, w, zeta(m, n))
    lo, hi = lo0 - k - 1, hi0 + k + 1
    ups = [i for i in range(lo, hi + 1) if e[i] == UP]
    downs = [i for i in range(lo, hi + 1) if e[i] == DOWN]
    changes = {i: DOWN for i in ups[len(ups) - k:]} if k else {}
    changes.update({i: UP for i in downs[:k]})
    alpha = e.replace(changes)
    caps = sorted(cup_diagram(w, lo, hi).arcs)
    cd_alpha = cup_diagram(alpha, lo, hi)
    cups = sorted(cd_alpha.arcs)
    capped = {x for a in caps for x in a}
    bottom_rays = [i for i in range(lo, hi + 1) if w[i] in STRAND and i not in capped]
    cupped = {x for a in cups for x in a}
    top_rays = [i for i in range(lo, hi + 1) if alpha[i] in STRAND and i not in cupped]
    if len(bottom_rays) != len(top_rays):
        raise AssertionError("ray counts differ; window too small")
    segments = tuple(zip(bottom_rays, top_rays))
    z = zeta(m, n)
    new = {i: w[i] for i in range(lo, hi + 1)}
    for b, t in segments:
        new[b] = z[t]
    out = WeightDiagram.from_dict(new, z.left_tail, z.right_tail)
    return out, Matching(tuple(caps), tuple(cups), segments, lo, hi)


def gl_weight_of_diagram(w: WeightDiagram, m: int, n: int) -> tuple[int, ...]:
    """Inverse of :func:`gl_weight_to_diagram`."""
    lo, hi = span(w)
    lo -= m + n + 2
    hi += m + n + 2
    down = sorted((i for i in range(lo, hi + 1) if w[i] in (DOWN, CROSS)), reverse=True)
    not_up = sorted(i for i in range(lo, hi + 1) if w[i] in (DOWN, NONE))
    if len(down) != m or len(not_up) != n or w.left_tail != UP or w.right_tail != UP:
        raise NotInDictionary("not a gl(m|n) weight diagram")
    even = tuple(down[r] - 1 + (r + 1) for r in range(m))
    odd = tuple((s + 1) - m - not_up[s] for s in range(n))
    return even + odd


# ------------------------------------------------------------ enumeration


def words(r: int, s: int) -> Iterator[str]:
    """All E/F words with r E's and s F's."""
    for pos in itertools.combinations(range(r + s), r):
        yield "".join("E" if k in pos else "F" for k in range(r + s))


def lambda_weights(r: int, s: int, delta: int) -> list[WeightDiagram]:
    return [bipartition_to_weight(lam, delta) for lam in enumerate_lambda_rs(r, s)]


def bruhat_sorted(ws: list[WeightDiagram]) -> list[WeightDiagram]:
    """A linear extension of the Bruhat order (smaller first)."""
    def key(w):
        lo, hi = span(*ws)
        # Sum of down positions strictly increases along every basic move.
        return (sum(i for i in range(lo, hi + 1) if w[i] == DOWN), w.start, w.labels)
    return sorted(ws, key=key)
