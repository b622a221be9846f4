"""Exact sparse linear algebra over the rationals.

Vectors are dicts ``{index: Fraction}`` without zero entries. Pivoting is
deterministic (smallest pivot index first) so ranks and reduced forms are
reproducible.
"""

from __future__ import annotations

import heapq
from collections.abc import Hashable, Iterable, Mapping
from fractions import Fraction

Vector = dict


def clean(v: Mapping) -> dict:
    return {k: x for k, x in v.items() if x}


def axpy(y: dict, a, x: Mapping) -> None:
    """In place y += a*x, dropping zeros."""
    for k, v in x.items():
        s = y.get(k, 0) + a * v
        if s:
            y[k] = s
        else:
            y.pop(k, None)


class EchelonBasis:
    """Incrementally maintained echelon basis of a subspace.

    Every stored vector has a distinct pivot (its smallest key under the
    supplied ordering) with coefficient 1, and no other stored vector has a
    nonzero entry at that pivot.
    """

    def __init__(self, key=None):
        self._key = key or (lambda k: k)
        self.rows: dict[Hashable, dict] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Mapping) -> dict:
        w = {k: Fraction(x) for k, x in v.items() if x}
        if not self.rows:
            return w
        # Row p only has entries at keys after p, so one ascending sweep works.
        key = self._key
        heap = [(key(k), i, k) for i, k in enumerate(w) if k in self.rows]
        heapq.heapify(heap)
        seen = set()
        counter = len(w)
        while heap:
            _, _, k = heapq.heappop(heap)
            if k in seen or k not in w:
                continue
            seen.add(k)
            row = self.rows[k]
            a = w[k]
            for kk, x in row.items():
                s = w.get(kk, 0) - a * x
                if s:
                    if kk not in w and kk in self.rows and kk not in seen:
                        counter += 1
                        heapq.heappush(heap, (key(kk), counter, kk))
                    w[kk] = s
                else:
                    w.pop(kk, None)
        return w

    def add(self, v: Mapping) -> bool:
        """Insert v; return True if it enlarged the span."""
        w = self.reduce(v)
        if not w:
            return False
        p = min(w, key=self._key)
        c = w[p]
        w = {k: x / c for k, x in w.items()}
        for q, row in self.rows.items():
            if p in row:
                axpy(row, -row[p], w)
        self.rows[p] = w
        return True

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    def vectors(self) -> list[dict]:
        return [self.rows[p] for p in sorted(self.rows, key=self._key)]


def rank(vectors: Iterable[Mapping]) -> int:
    eb = EchelonBasis()
    for v in vectors:
        eb.add(v)
    return len(eb)


def nullspace(columns: list[Mapping]) -> list[dict]:
    """Basis of {c : sum_j c_j columns[j] = 0}, as dicts over column indices."""
    # Gaussian elimination on the augmented system [columns | identity].
    eb = EchelonBasis(key=lambda k: (k[0], k[1]))
    kernel = []
    for j, col in enumerate(columns):
        v = {("a", k): x for k, x in col.items() if x}
        v[("b", j)] = Fraction(1)
        w = eb.reduce(v)
        if not any(k[0] == "a" for k in w):
            kernel.append({k[1]: x for k, x in w.items()})
        else:
            eb.add(w)
    return kernel


def solve(columns: list[Mapping], target: Mapping) -> dict | None:
    """One solution c of sum_j c_j columns[j] = target, or None."""
    eb = EchelonBasis(key=lambda k: (k[0], k[1]))
    for j, col in enumerate(columns):
        v = {("a", k): Fraction(x) for k, x in col.items() if x}
        v[("b", j)] = Fraction(1)
        eb.add(v)
    w = eb.reduce({("a", k): Fraction(x) for k, x in target.items() if x})
    if any(k[0] == "a" for k in w):
        return None
    # w = target - sum c_j col_j encoded as  -(sum c_j e_b_j) in b-coordinates.
    return {k[1]: -x for k, x in w.items() if k[0] == "b"}


def matrix_rank(rows: list[list]) -> int:
    return rank({j: x for j, x in enumerate(r) if x} for r in rows)
