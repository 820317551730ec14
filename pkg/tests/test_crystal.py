"""Path crystals, their axioms, Schutzenberger involutions and cactus relations."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcactus.cartan import build_cartan
from qcactus.crystal import (
    CrystalError,
    CrystalGraph,
    PropagationError,
    cactus_apply,
    crystal_from_highest,
    dominant_weights_up_to,
    find_isomorphism,
    restrict,
    schutzenberger,
    stembridge,
    tensor,
    validate,
    verify_cactus_relations,
    weight_multiplicity,
)
from qcactus.tableaux import Partition, tableau_crystal

A1, A2, A3, D4 = (build_cartan(*k) for k in [("A", 1), ("A", 2), ("A", 3), ("D", 4)])


def lam_to_shape(lam):
    return Partition([sum(lam[i:]) for i in range(len(lam))])


def test_small_crystals():
    g = crystal_from_highest(A1, (4,))
    assert g.size == 5
    chain = [int(g.highest()[0])]
    while g.fi(1, chain[-1]) is not None:
        chain.append(g.fi(1, chain[-1]))
    assert len(chain) == 5
    g = crystal_from_highest(A2, (1, 0))
    top = int(g.highest()[0])
    mid = g.fi(1, top)
    low = g.fi(2, mid)
    assert [g.weight(b) for b in (top, mid, low)] == [(1, 0), (-1, 1), (0, -1)]
    assert crystal_from_highest(D4, (1, 0, 0, 0)).size == 8


def test_bounds_and_validation():
    with pytest.raises(CrystalError):
        crystal_from_highest(A2, (-1, 0))
    with pytest.raises(CrystalError):
        crystal_from_highest(A2, (3, 3), max_nodes=10)


def test_dominant_weight_listing():
    ws = dominant_weights_up_to(A2, 10)
    assert set(ws) == {(0, 0), (1, 0), (0, 1), (2, 0), (0, 2), (1, 1), (3, 0), (0, 3)}
    assert all(A2.weyl_dimension(w) <= 10 for w in ws)


small = st.sampled_from([A1, A2, A3, D4]).flatmap(
    lambda d: st.tuples(st.just(d), st.sampled_from(dominant_weights_up_to(d, 64))))


@given(small)
def test_generated_crystals_are_valid(case):
    d, lam = case
    g = crystal_from_highest(d, lam)
    assert g.size == d.weyl_dimension(lam)
    assert validate(g, expect_irreducible=True).ok
    assert stembridge(g).ok
    ch = g.character()
    for mu, m in ch.items():
        for i in d.nodes:
            assert ch.get(d.simple_reflection(i, mu), 0) == m


@given(st.sampled_from([A1, A2, A3]).flatmap(
    lambda d: st.tuples(st.just(d), st.sampled_from(dominant_weights_up_to(d, 60)))))
def test_paths_agree_with_tableaux(case):
    d, lam = case
    g = crystal_from_highest(d, lam)
    tab = tableau_crystal(lam_to_shape(lam), d.rank + 1)
    iso = find_isomorphism(g, tab)
    assert iso is not None
    assert np.array_equal(tab.weights[iso.image], g.weights)


def test_restriction():
    g = crystal_from_highest(A2, (1, 1))
    assert len(restrict(g, (1, 2))) == 1
    assert len(restrict(g, ())) == 8
    sizes = sorted(len(c) for c in restrict(g, (1,)))
    # sl2-strings of the adjoint representation: one triple, two pairs, one singleton
    assert sizes == [1, 2, 2, 3]


def test_weight_multiplicities():
    assert weight_multiplicity(crystal_from_highest(A2, (1, 0)), (1, 0)) == 1
    adj = crystal_from_highest(A2, (1, 1))
    assert weight_multiplicity(adj, (0, 0)) == 2
    assert weight_multiplicity(adj, (2, 2)) == 0


def string_reversal(g, i):
    out = np.arange(g.size)
    a = i - 1
    for b in range(g.size):
        k = int(g.phi[a, b] - g.eps[a, b])
        c = b
        for _ in range(abs(k)):
            c = g.f[a, c] if k > 0 else g.e[a, c]
        out[b] = c
    return out


@given(small)
def test_rank_one_involutions_reverse_strings(case):
    d, lam = case
    g = crystal_from_highest(d, lam)
    for i in d.nodes:
        assert np.array_equal(schutzenberger(g, (i,)).image, string_reversal(g, i))


def test_xi_on_vector_representation():
    g = crystal_from_highest(A2, (1, 0))
    xi = schutzenberger(g)
    top, bottom = int(g.highest()[0]), int(g.lowest()[0])
    assert xi(top) == bottom and xi(bottom) == top
    assert schutzenberger(g, ()).is_identity()


def test_specific_cactus_relations():
    g = crystal_from_highest(A3, (0, 1, 0))
    assert cactus_apply(g, [(1,), (3,)]) == cactus_apply(g, [(3,), (1,)])
    g = crystal_from_highest(A2, (1, 1))
    assert cactus_apply(g, [(1,), (1, 2)]) == cactus_apply(g, [(1, 2), (2,)])
    assert cactus_apply(g, [(1, 2), (1, 2)]).is_identity()
    with pytest.raises(CrystalError):
        cactus_apply(crystal_from_highest(A3, (1, 0, 0)), [(1, 3)])


@pytest.mark.parametrize("d,lam", [(A1, (3,)), (A3, (1, 1, 1)), (A3, (0, 1, 0)), (D4, (1, 0, 0, 0)),
                                   (D4, (0, 1, 0, 0))])
def test_cactus_relations(d, lam):
    rep = verify_cactus_relations(crystal_from_highest(d, lam))
    assert rep.ok
    names = {r.identity for r in rep.records}
    if d.rank == 1:
        assert names == {"(i) c_J^2=1", "(iii) c_Jc_K=c_Kc_tauK(J)"}


def test_tensor_products():
    v = crystal_from_highest(A1, (1,))
    vv = tensor(v, v)
    assert sorted(len(c) for c in restrict(vv, (1,))) == [1, 3]
    assert validate(vv).ok
    g = crystal_from_highest(A2, (1, 0))
    h = crystal_from_highest(A2, (0, 1))
    gh = tensor(g, h)
    assert sorted(len(c) for c in restrict(gh, (1, 2))) == [1, 8]
    assert sorted(gh.weight(b) for b in gh.highest()) == [(0, 0), (1, 1)]
    triv = crystal_from_highest(A2, (0, 0))
    assert find_isomorphism(tensor(g, triv), g) is not None
    with pytest.raises(CrystalError):
        tensor(g, v)


def corrupt(g):
    """Swap the targets of two 1-edges so the crystal axioms fail."""
    f = g.f.copy()
    e = g.e.copy()
    src = np.flatnonzero(f[0] >= 0)
    a, b = src[0], src[1]
    f[0, a], f[0, b] = f[0, b], f[0, a]
    return CrystalGraph(g.datum, list(g.labels), g.weights, f, e, g.eps, g.phi, name="bad")


def test_corrupted_crystal_is_detected():
    g = crystal_from_highest(A2, (2, 1))
    bad = corrupt(g)
    assert not validate(bad).ok
    with pytest.raises(PropagationError):
        schutzenberger(bad, (1, 2))


def test_exports():
    g = crystal_from_highest(A2, (1, 0))
    dot = g.to_dot()
    assert dot.count("->") == 2 and dot.count("[label=") == 5
    assert g.to_tsv().splitlines()[0] == "node\tweight\tf1\tf2"
    assert g.summary()["nodes"] == 3
