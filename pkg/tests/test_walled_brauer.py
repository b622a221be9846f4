import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wbrauer import combinatorics as cb
from wbrauer import walled_brauer as wb
from wbrauer.combinatorics import EMPTY, Bipartition
from wbrauer.linalg import nullspace
from wbrauer.walled_brauer import WalledBrauerAlgebra, WalledBrauerDiagram, flip, wb_multiply


# ------------------------------------------------------------- diagrams


def test_picture_diagrams_and_loops():
    sigma = flip((2, 3, 1, 4), 2, 2)
    tau = flip((3, 1, 4, 2), 2, 2)
    assert wb_multiply(sigma, tau)[1] == 0
    assert wb_multiply(tau, sigma)[1] == 1
    alg = WalledBrauerAlgebra(2, 2, 5)
    prod = alg.multiply({tau: 1}, {sigma: 1})
    assert list(prod.values()) == [5]


def test_invalid_matchings_rejected():
    with pytest.raises(ValueError):
        WalledBrauerDiagram(2, 0, (1, 0, 3, 2))  # top strand on one side only
    with pytest.raises(ValueError):
        WalledBrauerDiagram(1, 1, (3, 2, 1, 0))  # vertical strand through the wall
    with pytest.raises(wb.SizeMismatch):
        wb_multiply(wb.identity(1, 1), wb.identity(2, 0))


@pytest.mark.parametrize("r,s", [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (3, 1)])
def test_flip_is_bijective(r, s):
    ds = wb.all_diagrams(r, s)
    assert len(set(ds)) == len(ds) == len(list(itertools.permutations(range(r + s))))
    assert flip(tuple(range(1, r + s + 1)), r, s) == wb.identity(r, s)
    for p in itertools.permutations(range(1, r + s + 1)):
        assert wb.unflip(flip(p, r, s)) == p


@pytest.mark.parametrize("r,s", [(1, 1), (2, 1), (2, 2), (1, 3)])
def test_identity_is_neutral(r, s):
    one = wb.identity(r, s)
    for d in wb.all_diagrams(r, s):
        assert wb_multiply(one, d) == (d, 0)
        assert wb_multiply(d, one) == (d, 0)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_associativity_with_loops(seed):
    rng = random.Random(seed)
    r, s = rng.choice([(2, 2), (3, 1), (1, 2)])
    ds = wb.all_diagrams(r, s)
    a, b, c = (rng.choice(ds) for _ in range(3))
    ab, l1 = wb_multiply(a, b)
    left, l2 = wb_multiply(ab, c)
    bc, l3 = wb_multiply(b, c)
    right, l4 = wb_multiply(a, bc)
    assert left == right and l1 + l2 == l3 + l4


# ------------------------------------------------------------ relations


@pytest.mark.parametrize("r,s", [(2, 2), (3, 2), (2, 3)])
def test_generator_relations(r, s):
    delta = Fraction(3)
    alg = WalledBrauerAlgebra(r, s, delta)
    n = r + s
    t = {a: alg.tau(a) for a in range(1, n)}
    mul = lambda *xs: xs[0] if len(xs) == 1 else alg.multiply(xs[0], mul(*xs[1:]))  # noqa: E731
    for a in range(1, n):
        if a != r:
            assert mul(t[a], t[a]) == alg.one()
        else:
            assert mul(t[a], t[a]) == alg.scale(t[a], delta)
    assert mul(t[r], t[r - 1], t[r]) == t[r]
    assert mul(t[r], t[r + 1], t[r]) == t[r]
    for a, b in itertools.product(range(1, n), repeat=2):
        if abs(a - b) > 1:
            assert mul(t[a], t[b]) == mul(t[b], t[a])
        if abs(a - b) == 1 and r not in (a, b):
            assert mul(t[a], t[b], t[a]) == mul(t[b], t[a], t[b])
    lhs = mul(t[r], t[r - 1], t[r + 1], t[r], t[r + 1], t[r - 1])
    rhs = mul(t[r - 1], t[r + 1], t[r], t[r + 1], t[r - 1], t[r])
    assert lhs == rhs


def test_wall_transposition_sign():
    alg = WalledBrauerAlgebra(2, 2, 1)
    assert alg.signed_transposition(2, 3) == alg.scale(alg.tau(2), -1)
    assert alg.signed_transposition(1, 2) == alg.tau(1)
    with pytest.raises(ValueError):
        alg.signed_transposition(1, 1)


@pytest.mark.parametrize("r,s", [(1, 0), (0, 1)])
def test_z_of_single_strand_is_zero(r, s):
    assert WalledBrauerAlgebra(r, s, 2).z() == {}


@pytest.mark.parametrize("r,s,delta", [(2, 2, 0), (2, 1, -1), (1, 3, Fraction(7, 2))])
def test_z_is_central(r, s, delta):
    alg = WalledBrauerAlgebra(r, s, delta)
    z = alg.z()
    for a in range(1, r + s):
        assert alg.multiply(z, alg.tau(a)) == alg.multiply(alg.tau(a), z)


# --------------------------------------------------------- Jucys-Murphy


@pytest.mark.parametrize("word", ["E", "EF", "FE", "EEF", "EFE", "EFEF", "FFEE"])
def test_jm_elements(word):
    delta = -1
    r, s = wb.sizes(word)
    alg = WalledBrauerAlgebra(r, s, delta)
    xs = wb.jm_elements(word, delta)
    assert xs[0] == {}
    assert alg.add(*xs) == alg.z()
    for a, b in itertools.combinations(xs, 2):
        assert alg.multiply(a, b) == alg.multiply(b, a)


@pytest.mark.parametrize("r,s,letter", [(2, 1, "E"), (1, 2, "F"), (2, 2, "F")])
def test_last_jm_as_sum(r, s, letter):
    word = "E" * (r - (letter == "E")) + "F" * (s - (letter == "F")) + letter
    assert wb.jm_elements(word, 2)[-1] == wb.jm_by_sum(r, s, letter, 2)


def test_single_letter_idempotent_is_one():
    assert wb.weight_idempotent("E", (0,), 3) == WalledBrauerAlgebra(1, 0, 3).one()
    assert wb.weight_idempotent("E", (1,), 3) == {}


@pytest.mark.parametrize("word,delta", [("EF", 0), ("EF", 1), ("EEF", 0), ("EFE", -1), ("EEFF", 0)])
def test_idempotents_partition_unity(word, delta):
    r, s = wb.sizes(word)
    alg = WalledBrauerAlgebra(r, s, delta)
    es = [wb.weight_idempotent(word, c, delta) for c in wb.contents(word, delta)]
    es = [e for e in es if e]
    assert alg.add(*es) == alg.one()
    for a, b in itertools.product(range(len(es)), repeat=2):
        prod = alg.multiply(es[a], es[b])
        assert prod == (es[a] if a == b else {})


# -------------------------------------------------------- Specht modules


def _coxeter_ok(mod, n):
    ident = [[Fraction(int(i == j)) for j in range(mod.dim)] for i in range(mod.dim)]
    for k in range(1, n):
        g = mod.generator(k)
        if wb._matmul(g, g) != ident:
            return False
        if k + 1 < n:
            h = mod.generator(k + 1)
            if wb._matmul(wb._matmul(g, h), g) != wb._matmul(wb._matmul(h, g), h):
                return False
    return True


@pytest.mark.parametrize("shape", [(1,), (3,), (1, 1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (2, 1, 1)])
def test_specht_modules(shape):
    mod = wb.specht_module(shape)
    n = sum(shape)
    assert mod.dim == cb.hook_length_dim(shape)
    assert _coxeter_ok(mod, n)
    total = [[Fraction(0)] * mod.dim for _ in range(mod.dim)]
    for a, b in itertools.combinations(range(1, n + 1), 2):
        perm = list(range(1, n + 1))
        perm[a - 1], perm[b - 1] = b, a
        m = mod.permutation(tuple(perm))
        total = [[total[i][j] + m[i][j] for j in range(mod.dim)] for i in range(mod.dim)]
    content = sum(j - i for i, row in enumerate(shape) for j in range(row))
    assert total == [[Fraction(content * int(i == j)) for j in range(mod.dim)] for i in range(mod.dim)]


def test_trivial_and_sign():
    assert wb.specht_module((4,)).generator(2) == [[1]]
    assert wb.specht_module((1, 1, 1, 1)).generator(3) == [[-1]]


def test_permutation_is_homomorphism():
    mod = wb.specht_module((3, 2))
    for p, q in itertools.islice(itertools.product(itertools.permutations(range(1, 6)), repeat=2), 0, 14400, 997):
        pq = tuple(p[q[k] - 1] for k in range(5))
        assert mod.permutation(pq) == wb._matmul(mod.permutation(p), mod.permutation(q))


# ---------------------------------------------------------- cell modules


def test_cell_dim_example():
    assert wb.WBCellModule(2, 1, Bipartition.of((1,), ()), 0).dim == 2
    with pytest.raises(wb.NotInLambda):
        wb.WBCellModule(2, 1, Bipartition.of((1,), (1,)), 0)


@pytest.mark.parametrize("r,s", [(1, 1), (2, 1), (2, 2), (3, 1), (1, 3)])
def test_cell_dims_and_semisimple_wedderburn(r, s):
    total = 0
    for lam in cb.enumerate_lambda_rs(r, s):
        mod = wb.WBCellModule(r, s, lam, Fraction(7, 2))
        assert mod.dim == wb.cell_dim_formula(r, s, lam)
        total += mod.dim ** 2
    assert total == len(wb.all_diagrams(r, s))


@pytest.mark.parametrize("r,s,delta", [(2, 1, 0), (2, 2, 1), (1, 2, -1)])
def test_cell_module_is_representation(r, s, delta):
    alg = WalledBrauerAlgebra(r, s, delta)
    rng = random.Random(r * 10 + s)
    for lam in cb.enumerate_lambda_rs(r, s):
        mod = wb.WBCellModule(r, s, lam, delta)
        for _ in range(15):
            a, b = rng.choice(alg.basis), rng.choice(alg.basis)
            j = rng.randrange(mod.dim)
            step = mod.act({a: 1}, mod.act({b: 1}, {j: 1}))
            assert step == mod.act(alg.multiply({a: 1}, {b: 1}), {j: 1})


def test_z_on_small_cell_module():
    delta = Fraction(5)
    mod = wb.WBCellModule(1, 1, EMPTY, delta)
    alg = WalledBrauerAlgebra(1, 1, delta)
    assert mod.act(alg.z(), {0: 1}) == {0: -delta}


@pytest.mark.parametrize("r,s", [(1, 1), (2, 1), (1, 2)])
def test_cell_endomorphisms_are_scalars(r, s):
    delta = Fraction(7, 2)
    alg = WalledBrauerAlgebra(r, s, delta)
    for lam in cb.enumerate_lambda_rs(r, s):
        mod = wb.WBCellModule(r, s, lam, delta)
        d = mod.dim
        mats = [mod.matrix({x: 1}) for x in alg.basis]
        # unknown X = sum x_uv E_uv; entries of XA - AX for every basis element A
        columns = []
        for u in range(d):
            for v in range(d):
                col = {}
                for t, cols in enumerate(mats):
                    for i in range(d):
                        for j in range(d):
                            val = (cols[j].get(v, 0) if i == u else 0) - (cols[u].get(i, 0) if j == v else 0)
                            if val:
                                col[(t, i, j)] = val
                columns.append(col)
        assert len(nullspace(columns)) == 1


@pytest.mark.parametrize("r,s,delta", [(2, 2, 0), (2, 1, -1), (1, 3, 2), (2, 2, -2)])
def test_z_scalar(r, s, delta):
    alg = WalledBrauerAlgebra(r, s, delta)
    z = alg.z()
    for lam in cb.enumerate_lambda_rs(r, s):
        mod = wb.WBCellModule(r, s, lam, delta)
        c = wb.z_scalar(r, s, lam, delta)
        for j in range(mod.dim):
            assert mod.act(z, {j: 1}) == ({j: c} if c else {})


def test_zero_restriction_of_single_box():
    assert wb.i_restriction_dim(1, 0, Bipartition.of((1,), ()), 0, "L", 0) == 1


@pytest.mark.parametrize("r,s,delta", [(2, 1, 0), (1, 2, 1), (2, 2, 0), (2, 2, -1)])
def test_i_restriction(r, s, delta):
    for lam in cb.enumerate_lambda_rs(r, s):
        dim = wb.cell_dim_formula(r, s, lam)
        for side in ("L", "R"):
            if (side == "L" and r == 0) or (side == "R" and s == 0):
                continue
            total = 0
            for i in wb.restriction_contents(r, s, lam, side, delta):
                got = wb.i_restriction_dim(r, s, lam, i, side, delta)
                assert got == wb.i_restriction_prediction(r, s, lam, i, side, delta)
                total += got
            assert total == dim
