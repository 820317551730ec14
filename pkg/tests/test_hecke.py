"""Kazhdan-Lusztig polynomials, left cells and cell modules of symmetric groups.

Independent oracles: R-polynomials and the inversion identity they satisfy
with the KL polynomials, the subword property of Bruhat order, and the
Frobenius determinant formula for irreducible characters.
"""

from itertools import combinations, permutations

import numpy as np
import pytest

from qcactus.hecke import (
    HeckeError,
    bruhat_poset,
    cell_module,
    compose,
    inverse,
    kl_polynomials,
    left_cells,
    left_descents,
    long_cycle,
    longest,
    negative_control,
    reduced_word,
    signed_permutation,
    simple,
    specht_character,
    verify_cell_module,
    verify_cells_vs_rsk,
    verify_evacuation_theorem,
    verify_kl_table,
    verify_promotion_theorem,
    w_graph_dot,
)
from qcactus.tableaux import evacuation, partitions, rsk, syt_enumerate

# -- polynomial helpers on coefficient lists -------------------------------------


def padd(a, b):
    out = [0] * max(len(a), len(b))
    for k, x in enumerate(a):
        out[k] += x
    for k, x in enumerate(b):
        out[k] += x
    return out


def pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def r_polynomials(n):
    """R_{x,w} by the left-descent recursion, keyed by pairs of permutations."""
    poset = bruhat_poset(n)
    els = poset.elements
    L = {w: len(reduced_word(w)) for w in els}
    R = {}
    for w in els:  # increasing length
        for x in els:
            if w == x:
                R[x, w] = [1]
                continue
            if not poset.le(x, w):
                R[x, w] = []
                continue
            s = min(left_descents(w))
            sw = compose(simple(n, s), w)
            sx = compose(simple(n, s), x)
            if L[sx] < L[x]:
                R[x, w] = R[sx, sw]
            else:
                R[x, w] = trim(padd(pmul([-1, 1], R[x, sw]), pmul([0, 1], R[sx, sw])))
    return R, L


def check_inversion_identity(n, pairs=None):
    """q^{l(w)-l(x)} P_{x,w}(1/q) - P_{x,w}(q) = sum_{x<y<=w} R_{x,y} P_{y,w}."""
    table = kl_polynomials(n)
    poset = table.poset
    R, L = r_polynomials(n)
    els = poset.elements
    if pairs is None:
        pairs = [(x, w) for x in els for w in els if poset.le(x, w)]
    for x, w in pairs:
        p = list(table.poly(x, w))
        d = L[w] - L[x]
        lhs = [0] * (d + 1)
        for k, c in enumerate(p):
            lhs[d - k] += c
        lhs = trim(padd(lhs, [-c for c in p]))
        rhs = []
        for y in els:
            if y != x and poset.le(x, y) and poset.le(y, w):
                rhs = padd(rhs, pmul(R[x, y], list(table.poly(y, w))))
        assert lhs == trim(rhs), (x, w)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_kl_polynomials_satisfy_the_inversion_identity(n):
    check_inversion_identity(n)


def test_kl_inversion_identity_s5_sample():
    poset = bruhat_poset(5)
    els = poset.elements
    rng = np.random.default_rng(7)
    pairs = []
    while len(pairs) < 150:
        a, b = rng.integers(0, len(els), 2)
        if poset.le(els[a], els[b]):
            pairs.append((els[a], els[b]))
    pairs.append(((1, 2, 3, 4, 5), longest(5)))
    check_inversion_identity(5, pairs)


def test_kl_known_values():
    t3 = kl_polynomials(3)
    els = t3.poset.elements
    assert all(t3.poly(x, w) == (1,) for x in els for w in els if t3.poset.le(x, w))
    t4 = kl_polynomials(4)
    assert t4.poly((1, 3, 2, 4), (3, 4, 1, 2)) == (1, 1)
    assert t4.poly((2, 1, 4, 3), (4, 2, 3, 1)) == (1, 1)
    assert t4.poly((1, 2, 3, 4), (3, 4, 1, 2)) == (1, 1)
    for n in range(1, 6):
        rep = verify_kl_table(kl_polynomials(n))
        assert rep.ok
    assert verify_kl_table(t4).data["nontrivial_pairs"] > 0
    with pytest.raises(HeckeError):
        kl_polynomials(7)
    with pytest.raises(HeckeError):
        kl_polynomials(0)


@pytest.mark.parametrize("n", [3, 4])
def test_bruhat_order_matches_subword_property(n):
    poset = bruhat_poset(n)
    for w in poset.elements:
        word = reduced_word(w)
        below = set()
        for k in range(len(word) + 1):
            for sub in combinations(range(len(word)), k):
                x = tuple(range(1, n + 1))
                for p in sub:
                    x = compose(x, simple(n, word[p]))
                below.add(x)
        assert below == {x for x in poset.elements if poset.le(x, w)}


def test_permutation_helpers():
    w = (3, 1, 2)
    assert compose(w, inverse(w)) == (1, 2, 3)
    x = (1, 2, 3)
    for i in reduced_word(w):
        x = compose(x, simple(3, i))
    assert x == w
    assert long_cycle(4) == (2, 3, 4, 1)
    assert left_descents(longest(4)) == frozenset({1, 2, 3})


# -- characters ------------------------------------------------------------------


def poly_mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def frobenius_character(shape, mu):
    """Coefficient of x^(lambda + delta) in a_delta * p_mu."""
    m = len(shape)
    delta = list(range(m - 1, -1, -1))
    vand = {}
    for perm in permutations(range(m)):
        sign = 1
        for i in range(m):
            for j in range(i + 1, m):
                if perm[i] > perm[j]:
                    sign = -sign
        e = tuple(delta[perm[i]] for i in range(m))
        vand[e] = vand.get(e, 0) + sign
    prod = vand
    for part in mu:
        p = {tuple(part if k == i else 0 for k in range(m)): 1 for i in range(m)}
        prod = poly_mul(prod, p)
    return prod.get(tuple(s + d for s, d in zip(shape, delta)), 0)


@pytest.mark.parametrize("n", range(1, 7))
def test_characters_against_frobenius(n):
    for shape in partitions(n):
        for mu in partitions(n):
            assert specht_character(shape, mu) == frobenius_character(tuple(shape), tuple(mu))


def test_character_degree_counts_tableaux():
    for n in range(1, 7):
        for a in partitions(n):
            assert specht_character(a, (1,) * n) == len(syt_enumerate(a))


# -- cells and cell modules -----------------------------------------------------


def test_cells_small():
    assert left_cells(2) == [[(1, 2)], [(2, 1)]]
    assert sorted(len(c) for c in left_cells(3)) == [1, 1, 2, 2]
    assert [longest(4)] in left_cells(4)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_cells_are_rsk_fibres(n):
    assert verify_cells_vs_rsk(n).ok
    for cell in left_cells(n):
        assert len({rsk(w).Q for w in cell}) == 1


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_cell_modules(n):
    for shape in partitions(n):
        mod = cell_module(n, shape)
        rep = verify_cell_module(mod)
        assert rep.ok, rep.failures
        chars = {mu: int(np.trace(mod.matrix(w))) for w in bruhat_poset(n).elements
                 for mu in [tuple(sorted(cycle_type(w), reverse=True))]}
        assert all(chars[mu] == frobenius_character(tuple(shape), mu) for mu in chars)


def cycle_type(w):
    seen, out = set(), []
    for s in range(1, len(w) + 1):
        if s in seen:
            continue
        k, c = s, 0
        while k not in seen:
            seen.add(k)
            k = w[k - 1]
            c += 1
        out.append(c)
    return out


def test_one_dimensional_and_two_dimensional_modules():
    triv = cell_module(3, (3,))
    assert all((g == 1).all() for g in triv.generators.values())
    sign = cell_module(3, (1, 1, 1))
    assert all((g == -1).all() for g in sign.generators.values())
    std = cell_module(3, (2, 1))
    assert std.dim == 2
    assert [int(np.trace(std.matrix(w))) for w in [(1, 2, 3), (2, 1, 3), (2, 3, 1)]] == [2, 0, -1]
    with pytest.raises(HeckeError):
        cell_module(3, (2, 2))


def test_signed_permutation_detection():
    assert signed_permutation(np.array([[0, -1], [1, 0]])) == ([1, 0], [1, -1])
    assert signed_permutation(np.array([[1, 1], [0, 1]])) is None
    assert signed_permutation(np.array([[2, 0], [0, 1]])) is None


def test_evacuation_theorem_explicit():
    rep = verify_evacuation_theorem(3, (2, 1))
    assert rep.ok
    mod = cell_module(3, (2, 1))
    perm, _ = signed_permutation(mod.matrix(longest(3)))
    assert [mod.labels[p] for p in perm] == [evacuation(T) for T in mod.labels]
    triv = verify_evacuation_theorem(4, (4,))
    assert triv.ok and set(triv.data["signs"].values()) == {1}


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_evacuation_theorem(n):
    for shape in partitions(n):
        assert verify_evacuation_theorem(n, shape).ok


@pytest.mark.parametrize("n,shape", [(4, (2, 2)), (6, (3, 3)), (6, (2, 2, 2)), (4, (4,)), (4, (1, 1, 1, 1))])
def test_promotion_theorem(n, shape):
    rep = verify_promotion_theorem(n, shape)
    assert rep.ok, rep.failures


def test_negative_control():
    assert negative_control(5, (3, 2)).ok
    assert not negative_control(4, (2, 2)).ok


def test_w_graph_dot():
    dot = w_graph_dot(3)
    assert dot.startswith('graph "W(S3)"')
    assert dot.count("[label=") == 6 + dot.count(" -- ")
    assert dot.count(" -- ") > 0
