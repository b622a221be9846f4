import math
import random
from collections import Counter
from fractions import Fraction

import pytest

from wbrauer import combinatorics as cb
from wbrauer import graded_walled_brauer as gw
from wbrauer import walled_brauer as wb
from wbrauer.combinatorics import Bipartition, WeightDiagram
from wbrauer.graded_walled_brauer import GradedWalledBrauer
from wbrauer.linalg import rank


@pytest.fixture(scope="module")
def eef():
    return GradedWalledBrauer("EEF", 0)


@pytest.fixture(scope="module")
def fee():
    return GradedWalledBrauer("FEE", 0)


@pytest.fixture(scope="module")
def eeff():
    return GradedWalledBrauer("EEFF", 0)


def _bp(alg, k):
    return cb.weight_to_bipartition(alg.tableaux[k].shape, alg.delta)


# -------------------------------------------------------------- tableaux


def test_rejects_bad_parameters():
    with pytest.raises(gw.NonIntegerDelta):
        GradedWalledBrauer("EF", Fraction(1, 2))
    with pytest.raises(ValueError):
        GradedWalledBrauer("EG", 0)


def test_empty_word():
    alg = GradedWalledBrauer("", 2)
    assert len(alg.tableaux) == 1 and alg.dim == 1


def test_eeff_tableaux_by_shape(eeff):
    assert len(eeff.tableaux) == 10
    counts = Counter(str(_bp(eeff, k)) for k in range(10))
    expected = {
        Bipartition.of((2,), (2,)): 1,
        Bipartition.of((2,), (1, 1)): 1,
        Bipartition.of((1,), (1,)): 4,
        Bipartition.of((), ()): 2,
        Bipartition.of((1, 1), (2,)): 1,
        Bipartition.of((1, 1), (1, 1)): 1,
    }
    assert counts == {str(k): v for k, v in expected.items()}


def test_tableau_chain_follows_edges(eeff):
    for t in eeff.tableaux:
        assert t.chain[0] == cb.eta(0)
        for a, letter in enumerate(eeff.word):
            direction = gw.DIRECTION[letter]
            assert cb.edge_degree(t.chain[a], t.chain[a + 1], t.content[a], direction) is not None


def test_running_example_degree():
    eta = WeightDiagram.make(1, "^vv^xv^^", "o", "o")
    alg = GradedWalledBrauer("EFEE", base=eta)
    start = WeightDiagram.make(1, "^v^vxv^^", "o", "o")
    ks = [k for k, t in enumerate(alg.tableaux) if t.content == (1, 3, 5, 3) and t.chain[0] == start]
    target = WeightDiagram.make(2, "x^vvx^^", "o", "o")
    hit = [k for k in ks if alg.tableaux[k].shape == target]
    assert len(hit) == 1
    assert alg.tableau_degree(hit[0]) == 2 == alg.tableau_degree_by_edges(hit[0])


@pytest.mark.parametrize("word", ["EEF", "FEE", "EFEF", "EEFF", "FEFE"])
@pytest.mark.parametrize("delta", [-1, 0, 2])
def test_degree_formulas_agree(word, delta):
    alg = GradedWalledBrauer(word, delta)
    for k in range(len(alg.tableaux)):
        assert alg.tableau_degree(k) == alg.tableau_degree_by_edges(k)


# ---------------------------------------------------- worked small algebras


def test_eef_is_matrix_units(eef):
    assert len(eef.tableaux) == 4 and eef.dim == 6
    assert set(eef.degrees) == {0}
    for a in eef.basis:
        for b in eef.basis:
            expected = {(a[0], b[1]): 1} if a[1] == b[0] else {}
            assert eef.basis_product(a, b) == expected


def test_fee_degrees_and_idempotents(fee):
    assert fee.dim == 6
    degs = sorted(fee.degree(p) for p in fee.basis)
    assert degs.count(-2) == 1 and degs.count(2) == 1
    low = next(p for p in fee.basis if fee.degree(p) == -2)
    high = next(p for p in fee.basis if fee.degree(p) == 2)
    s, t = low[0], high[0]
    st, ts = (s, t), (t, s)
    assert fee.basis_product(st, st) == {st: 1}
    assert fee.basis_product(ts, ts) == {ts: 1}
    assert fee.basis_product(st, ts) == {} and fee.basis_product(ts, st) == {}
    assert fee.tableau_degree(s) == -1


def test_same_ungraded_type(eef, fee):
    def shape_sizes(alg):
        return sorted(len(v) for v in alg.by_shape.values())

    assert shape_sizes(eef) == shape_sizes(fee) == [1, 1, 2]
    assert sorted(eef.degree(p) for p in eef.basis) != sorted(fee.degree(p) for p in fee.basis)


def test_eeff_structure(eeff):
    assert eeff.dim == 24
    assert Counter(eeff.k_of(*p) for p in eeff.basis) == {1: 20, 2: 4}
    rad = eeff.radical()
    assert len(rad) == 16
    nonrestricted = [j for j, p in enumerate(eeff.basis)
                     if not (eeff.is_restricted(p[0]) and eeff.is_restricted(p[1]))]
    assert rank(rad + [{j: 1} for j in nonrestricted]) == 16 == len(nonrestricted)
    blocks = sorted(eeff.cell_module(lam).irreducible_dim() ** 2 for lam in eeff.shapes())
    assert [b for b in blocks if b] == [1, 1, 1, 1, 4]


def test_eeff_restricted_per_shape(eeff):
    got = {str(cb.weight_to_bipartition(lam, 0)): eeff.cell_module(lam).restricted_count() for lam in eeff.shapes()}
    assert got[str(Bipartition.of((1,), (1,)))] == 2
    assert got[str(Bipartition.of((), ()))] == 0
    assert sum(got.values()) == 6


def test_empty_shape_gram_is_zero(eeff):
    mod = eeff.cell_module(Bipartition.of((), ()))
    assert len(mod.basis) == 2
    assert mod.gram() == [[0, 0], [0, 0]]
    assert mod.irreducible_dim() == 0


# ------------------------------------------------------ algebra properties


@pytest.mark.parametrize("word,delta", [("EEF", 0), ("FEE", 0), ("EEFF", 0), ("EFEF", -1), ("FEEF", 1)])
def test_associativity_homogeneity_anti(word, delta):
    alg = GradedWalledBrauer(word, delta)
    rng = random.Random(len(word) * 7 + delta)
    for a, b, c in gw.random_triples(alg, 200, rng):
        x = alg.multiply(alg.multiply({a: 1}, {b: 1}), {c: 1})
        y = alg.multiply({a: 1}, alg.multiply({b: 1}, {c: 1}))
        assert x == y
        ab = alg.basis_product(a, b)
        for d in ab:
            assert alg.degree(d) == alg.degree(a) + alg.degree(b)
        assert alg.anti(ab) == alg.multiply(alg.anti({b: 1}), alg.anti({a: 1}))


@pytest.mark.parametrize("word", ["EEFF", "EFEF"])
def test_surgery_order_independence(word):
    alg = GradedWalledBrauer(word, 0)
    rng = random.Random(5)
    for a, b, _ in gw.random_triples(alg, 40, rng):
        base = alg.basis_product(a, b)
        n = len(alg.skeleton(alg.tableaux[a[1]].content).boundary_cups)
        for _ in range(3):
            order = list(range(n))
            rng.shuffle(order)
            assert alg.basis_product(a, b, order=order) == base


@pytest.mark.parametrize("word,delta", [("EEF", 0), ("FEE", 0), ("EEFF", 0), ("EFFE", 1)])
def test_unit(word, delta):
    alg = GradedWalledBrauer(word, delta)
    one = alg.one()
    assert alg.unit_by_solving() == one
    for p in alg.basis:
        assert alg.multiply(one, {p: 1}) == {p: 1} == alg.multiply({p: 1}, one)


@pytest.mark.parametrize("word,delta", [("EEFF", 0), ("EFE", -1), ("FEFE", 1)])
def test_weight_idempotents(word, delta):
    alg = GradedWalledBrauer(word, delta)
    for c in alg.contents():
        e = alg.e(c)
        assert e
        for p in alg.basis:
            expect = {p: 1} if alg.tableaux[p[0]].content == c else {}
            assert alg.multiply(e, {p: 1}) == expect
        restricted = [k for k, t in enumerate(alg.tableaux) if t.content == c and alg.is_restricted(k)]
        assert restricted
        total = {}
        for k in restricted:
            ek = alg.primitive_idempotent(k)
            assert alg.multiply(ek, ek) == ek
            total.update(ek)
        assert total == e


def test_primitive_requires_restricted(eeff):
    k = next(k for k in range(len(eeff.tableaux)) if not eeff.is_restricted(k))
    with pytest.raises(gw.NotRestricted):
        eeff.primitive_idempotent(k)


@pytest.mark.parametrize("word,delta", [("EEFF", 0), ("EFEF", 1), ("FEEF", -1)])
def test_cell_modules(word, delta):
    alg = GradedWalledBrauer(word, delta)
    r, s = wb.sizes(word)
    for lam in alg.shapes():
        mod = alg.cell_module(lam)
        assert len(mod.basis) == wb.cell_dim_formula(r, s, cb.weight_to_bipartition(lam, delta))
        assert mod.gram() == [[int(x) for x in row] for row in mod.gram_by_product()]
        assert mod.irreducible_dim() == mod.restricted_count()
        dotted = cb.is_dotted(cb.weight_to_bipartition(lam, delta), delta, r, s)
        assert (mod.irreducible_dim() > 0) == dotted
    with pytest.raises(gw.NotInLambda):
        alg.cell_module(Bipartition.of((5,), ()))


@pytest.mark.parametrize("word,delta", [("EEFF", 0), ("EFEF", -1), ("EEF", 1)])
def test_k_filtration(word, delta):
    alg = GradedWalledBrauer(word, delta)
    for k, t in enumerate(alg.tableaux):
        sk = alg.skeleton(t.content)
        rk = cb.k_statistics(t.shape)[1]
        assert alg.k_of_tableau(k) == rk + len(sk.boundary_cups)
    rng = random.Random(2)
    for a, b, _ in gw.random_triples(alg, 100, rng):
        bound = max(alg.k_of(*a), alg.k_of(*b))
        for d in alg.basis_product(a, b):
            assert alg.k_of(*d) >= bound
    for k in range(3):
        ideal = set(alg.truncation(k))
        for a in alg.basis:
            for b in ideal:
                for d in alg.basis_product(a, b):
                    assert d in ideal


# ------------------------------------------------------------- iota maps


@pytest.mark.parametrize("word,letter", [("EF", "E"), ("E", "F"), ("EE", "F"), ("FE", "E")])
def test_iota(word, letter):
    delta = 0
    small = GradedWalledBrauer(word, delta)
    big = GradedWalledBrauer(word + letter, delta)
    rng = random.Random(4)
    lo, hi = small.window
    for i in range(lo - 1, hi + 1):
        assert small.iota(big, small.one(), i) == small.iota_one(big, i)
        for c in small.contents():
            assert small.iota(big, small.e(c), i) == big.e(c + (i,))
        for _ in range(20):
            a, b = rng.choice(small.basis), rng.choice(small.basis)
            lhs = small.iota(big, small.multiply({a: 1}, {b: 1}), i)
            assert lhs == big.multiply(small.iota(big, {a: 1}, i), small.iota(big, {b: 1}, i))
    with pytest.raises(gw.MixedParameters):
        small.iota(GradedWalledBrauer(word + letter, 1), small.one(), 0)


@pytest.mark.parametrize("word", ["E", "EF", "FE", "EEF"])
@pytest.mark.parametrize("delta", [-1, 0, 1])
def test_graded_branching(word, delta):
    small = GradedWalledBrauer(word, delta)
    for letter in "EF":
        big = GradedWalledBrauer(word + letter, delta)
        lo, hi = big.window
        for lam in big.shapes():
            for i in range(lo - 1, hi + 1):
                assert gw.branching_graded_dim(small, big, lam, i) == gw.branching_prediction(small, big, lam, i)


# ------------------------------------------------------- type zeta pairs


@pytest.mark.parametrize("word", ["EF", "EEF", "EEFF", "EFEF"])
def test_trick_bijection_11(word):
    z = gw.zeta_algebra(word, 1, 1)
    e = GradedWalledBrauer(word, 0)
    good = z.good_pairs()
    image = {gw.trick_bijection(z, e, *p) for p in good}
    target = {p for p in e.basis if e.k_of(*p) <= 1}
    assert len(image) == len(good)
    assert image == target
    if word == "EEFF":
        assert len(good) == 20


def test_trick_rejects_bad_pair():
    z = gw.zeta_algebra("EEFF", 1, 1)
    e = GradedWalledBrauer("EEFF", 0)
    bad = next(p for p in z.basis if not z.good_pair(*p))
    with pytest.raises(gw.NotGoodPair):
        gw.trick_bijection(z, e, *bad)


def test_diagonal_anticlockwise_pair_is_good():
    z = gw.zeta_algebra("EF", 1, 1)
    for k in range(len(z.tableaux)):
        comps = z.crossings(k, k)
        if all(not (top or bot) or (circle and anti) for top, bot, circle, anti in comps):
            assert z.good_pair(k, k)


@pytest.mark.parametrize("r,s", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_dimension_is_factorial(r, s):
    for word in cb.words(r, s):
        assert GradedWalledBrauer(word, r - s).dim == math.factorial(r + s)


@pytest.mark.parametrize("r,s", [(1, 1), (2, 1), (2, 2), (1, 3)])
@pytest.mark.parametrize("delta", [-1, 0, 1])
def test_restricted_tableau_k_is_shape_k(r, s, delta):
    for word in cb.words(r, s):
        alg = GradedWalledBrauer(word, delta)
        for k, t in enumerate(alg.tableaux):
            if alg.is_restricted(k):
                assert alg.k_of_tableau(k) == cb.k_statistics(t.shape)[2]
