"""Laurent polynomials in q with integer coefficients."""

from __future__ import annotations

from collections.abc import Iterable, Mapping


class LaurentPoly:
    """Finitely supported map exponent -> nonzero integer coefficient."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, int] = {}
        for e, v in items:
            c[e] = c.get(e, 0) + v
        self._c = {e: v for e, v in c.items() if v}

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> LaurentPoly:
        return cls({e: c})

    @classmethod
    def one(cls) -> LaurentPoly:
        return cls({0: 1})

    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def __getitem__(self, e: int) -> int:
        return self._c.get(e, 0)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return isinstance(other, LaurentPoly) and self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __add__(self, other: LaurentPoly | int) -> LaurentPoly:
        other = _coerce(other)
        return LaurentPoly(list(self._c.items()) + list(other._c.items()))

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other: LaurentPoly | int) -> LaurentPoly:
        return self + (-_coerce(other))

    def __rsub__(self, other: int) -> LaurentPoly:
        return _coerce(other) - self

    def __mul__(self, other: LaurentPoly | int) -> LaurentPoly:
        other = _coerce(other)
        return LaurentPoly(
            (a + b, x * y) for a, x in self._c.items() for b, y in other._c.items()
        )

    __rmul__ = __mul__

    def subs_neg(self) -> LaurentPoly:
        """Substitute q -> -q."""
        return LaurentPoly({e: (-v if e % 2 else v) for e, v in self._c.items()})

    def at_one(self) -> int:
        return sum(self._c.values())

    def is_polynomial(self) -> bool:
        return all(e >= 0 for e in self._c)

    def nonnegative(self) -> bool:
        return all(v >= 0 for v in self._c.values())

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c):
            v = self._c[e]
            if e == 0:
                mono = str(abs(v))
            else:
                qe = "q" if e == 1 else f"q^{e}" if e > 0 else f"q^({e})"
                mono = qe if abs(v) == 1 else f"{abs(v)}*{qe}"
            sign = "-" if v < 0 else "+"
            parts.append((sign, mono))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, mono in parts[1:]:
            out += f" {sign} {mono}"
        return out


def _coerce(x: LaurentPoly | int) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    return LaurentPoly({0: int(x)})


def matmul(a: list[list[LaurentPoly]], b: list[list[LaurentPoly]]) -> list[list[LaurentPoly]]:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[LaurentPoly() for _ in range(m)] for _ in range(n)]
    for i in range(n):
        for t in range(k):
            if not a[i][t]:
                continue
            for j in range(m):
                if b[t][j]:
                    out[i][j] = out[i][j] + a[i][t] * b[t][j]
    return out


def unitriangular_inverse(d: list[list[LaurentPoly]]) -> list[list[LaurentPoly]]:
    """Invert a matrix that is lower unitriangular up to the given ordering.

    Raises ValueError if the diagonal is not all ones or the matrix is not
    triangular in either direction.
    """
    n = len(d)
    for i in range(n):
        if d[i][i] != LaurentPoly.one():
            raise ValueError("diagonal entry is not 1")
    lower = all(not d[i][j] for i in range(n) for j in range(i + 1, n))
    upper = all(not d[i][j] for i in range(n) for j in range(i))
    if not (lower or upper):
        raise ValueError("matrix is not triangular in the given order")
    if not lower:
        t = [[d[j][i] for j in range(n)] for i in range(n)]
        inv = unitriangular_inverse(t)
        return [[inv[j][i] for j in range(n)] for i in range(n)]
    inv = [[LaurentPoly() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        inv[i][i] = LaurentPoly.one()
        for j in range(i - 1, -1, -1):
            acc = LaurentPoly()
            for k in range(j, i):
                if d[i][k] and inv[k][j]:
                    acc = acc + d[i][k] * inv[k][j]
            inv[i][j] = -acc
    return inv
