"""Tensor-power modules of U_q(sl_k) and the braid-group operators on them.

The oracle builds E, F and K on V^{(x)n} from iterated coproducts with
Kronecker products, independently of the letter-by-letter construction in
the library, and evaluates the braid operator after clearing denominators.
"""

from functools import reduce

import pytest

from qcactus.laurent import LaurentInt, qpow, quantum_factorial
from qcactus.qrep import (
    ModuleError,
    build_tensor_module,
    cautis_commutators,
    divided_power,
    extremal_transport_check,
    full_twist,
    isotypic_decomposition,
    lusztig_t,
    module_multiplicity,
    specialise_at_one,
    t_word,
    verify_braid_relations,
    verify_cautis_relations,
    verify_full_twist,
    verify_w0_chevalley,
    weight_vanishing_check,
)

ZERO, ONE = LaurentInt(0), LaurentInt(1)


def kron(a, b):
    return [[x * y for x in ra for y in rb] for ra in a for rb in b]


def eye(n):
    return [[ONE if r == c else ZERO for c in range(n)] for r in range(n)]


def gmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), ZERO) for j in range(len(b[0]))]
            for i in range(len(a))]


def gadd(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def gscale(a, s):
    return [[x * s for x in r] for r in a]


def vector_rep(k, i):
    """E_i, F_i, K_i and K_i^-1 on the k-dimensional vector representation."""
    E = [[ZERO] * k for _ in range(k)]
    F = [[ZERO] * k for _ in range(k)]
    E[i - 1][i] = ONE
    F[i][i - 1] = ONE
    h = [int(a == i) - int(a == i + 1) for a in range(1, k + 1)]
    K = [[qpow(h[r]) if r == c else ZERO for c in range(k)] for r in range(k)]
    Kinv = [[qpow(-h[r]) if r == c else ZERO for c in range(k)] for r in range(k)]
    return E, F, K, Kinv


def coproduct_ops(k, n, i):
    E, F, K, Kinv = vector_rep(k, i)
    I = eye(k)
    Etot = Ftot = None
    for p in range(n):
        e = reduce(kron, [K] * p + [E] + [I] * (n - p - 1))
        f = reduce(kron, [I] * p + [F] + [Kinv] * (n - p - 1))
        Etot = e if Etot is None else gadd(Etot, e)
        Ftot = f if Ftot is None else gadd(Ftot, f)
    return Etot, Ftot


def oracle_t_scaled(k, n, i, weights_i):
    """[n]!^2 * t_i, from E^a F^b restricted to weight spaces."""
    E, F = coproduct_ops(k, n, i)
    dim = k ** n
    fact = quantum_factorial(n)
    powE = [eye(dim)]
    powF = [eye(dim)]
    for _ in range(n):
        powE.append(gmul(E, powE[-1]))
        powF.append(gmul(F, powF[-1]))
    out = [[ZERO] * dim for _ in range(dim)]
    for a in range(n + 1):
        for b in range(n + 1):
            coef = (LaurentInt(-1) ** b) * qpow(-b)
            coef = coef * fact.divexact(quantum_factorial(a)) * fact.divexact(quantum_factorial(b))
            term = gscale(gmul(powE[a], powF[b]), coef)
            for c in range(dim):
                if b - a != weights_i[c]:
                    continue
                for r in range(dim):
                    out[r][c] = out[r][c] + term[r][c]
    return out


@pytest.mark.parametrize("k,n", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)])
def test_chevalley_operators_match_coproduct(k, n):
    m = build_tensor_module(k, n)
    for i in m.datum.nodes:
        E, F = coproduct_ops(k, n, i)
        assert m.E[i].to_grid() == E
        assert m.F[i].to_grid() == F


@pytest.mark.parametrize("k,n", [(2, 1), (2, 2), (2, 3), (3, 2)])
def test_braid_operator_matches_oracle(k, n):
    m = build_tensor_module(k, n)
    fact2 = quantum_factorial(n) * quantum_factorial(n)
    for i in m.datum.nodes:
        t = lusztig_t(m, i).to_grid()
        expect = oracle_t_scaled(k, n, i, [w[i - 1] for w in m.weights])
        assert gscale(t, fact2) == expect


def test_sl2_vector_values():
    m = build_tensor_module(2, 1)
    vp, vm = m.index[(1,)], m.index[(2,)]
    t = lusztig_t(m, 1).to_grid()
    assert t[vm][vp] == LaurentInt({-1: -1}) and t[vp][vp] == ZERO
    assert t[vp][vm] == ONE and t[vm][vm] == ZERO
    assert m.full_twist_operator == m.identity().scale(LaurentInt({-1: -1}))


def test_divided_powers():
    m = build_tensor_module(2, 2)
    e2 = divided_power(m, 1, 2, "E").to_grid()
    assert e2[m.index[(1, 1)]][m.index[(2, 2)]] == ONE
    assert divided_power(m, 1, 3, "E").is_zero()
    assert divided_power(m, 1, 1, "F") == m.F[1]
    with pytest.raises(ModuleError):
        divided_power(m, 1, -1)


def test_weight_spaces_and_decompositions():
    m = build_tensor_module(2, 2)
    assert {mu: len(c) for mu, c in m.weight_spaces.items()} == {(2,): 1, (0,): 2, (-2,): 1}
    assert m.multiplicities() == {(2,): 1, (0,): 1}
    assert build_tensor_module(2, 3).multiplicities() == {(3,): 1, (1,): 2}
    dims = sorted(sum(v.shape[1] for v in sp.values()) for _, sp in isotypic_decomposition(
        build_tensor_module(2, 3)))
    assert dims == [4, 4]
    assert build_tensor_module(3, 3).multiplicities() == {(3, 0): 1, (1, 1): 2, (0, 0): 1}


def test_module_bounds():
    with pytest.raises(ModuleError):
        build_tensor_module(4, 7, max_basis=1000)
    with pytest.raises(ModuleError):
        build_tensor_module(1, 2)
    with pytest.raises(ModuleError):
        build_tensor_module(2, 2, convention="other")


@pytest.mark.parametrize("k,n", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2)])
def test_quantum_group_relations(k, n):
    rep = build_tensor_module(k, n).verify_relations()
    assert rep.ok, rep.failures[:3]


def test_braid_relations_exact():
    m = build_tensor_module(3, 2)
    assert t_word(m, (1, 2, 1)) == t_word(m, (2, 1, 2))
    a3 = build_tensor_module(4, 2)
    assert t_word(a3, (1, 3)) == t_word(a3, (3, 1))
    assert t_word(m, ()) == m.identity()
    for key in [(3, 3), (4, 2)]:
        rep = verify_braid_relations(build_tensor_module(*key))
        assert rep.ok


def test_weight_transport_sl3():
    m = build_tensor_module(3, 3)
    for i in m.datum.nodes:
        assert m.verify_t_weight_transport(i)
        assert m.verify_t_invertible(i)


def test_trivial_isotypic_line_is_fixed():
    m = build_tensor_module(2, 2)
    (hw,) = [v for lam, sp in isotypic_decomposition(m) if lam == (0,) for v in sp.values()]
    assert lusztig_t(m, 1) @ hw == hw


@pytest.mark.parametrize("convention,eps", [("standard", 1), ("mirror", -1)])
def test_w0_chevalley_single_global_eps(convention, eps):
    for k, n in [(2, 1), (3, 3), (4, 2)]:
        rep = verify_w0_chevalley(build_tensor_module(k, n, convention=convention))
        assert rep.ok and rep.data["eps_candidates"] == [eps]


def test_cautis_commutators():
    m = build_tensor_module(3, 1)
    e12, f12 = cautis_commutators(m, 1, 2)
    g = e12.to_grid()
    # e_12 sends the lowest line of V to the highest line
    assert g[m.index[(1,)]][m.index[(3,)]] != ZERO
    hw = [p for p, w in enumerate(m.basis) if w == (1,)][0]
    assert all(x == ZERO for x in (e12.to_grid()[r][hw] for r in range(m.dim)))
    at1 = e12.at_one()
    comm = (m.E[1] @ m.E[2] - m.E[2] @ m.E[1]).at_one()
    assert (at1 == comm).all() or (at1 == -comm).all()
    with pytest.raises(ModuleError):
        cautis_commutators(build_tensor_module(4, 1), 1, 3)
    for conv in ("standard", "mirror"):
        assert verify_cautis_relations(build_tensor_module(3, 2, convention=conv)).ok


def test_full_twist_values_on_adjoint_sl2():
    m = build_tensor_module(2, 2)
    assert full_twist(m, (2,), (2,)) == (1, -2)
    assert full_twist(m, (2,), (0,)) == (1, -4)
    assert full_twist(m, (2,), (-2,)) == (1, -2)
    assert full_twist(m, (0,), (0,)) == (1, 0)
    with pytest.raises(ModuleError):
        full_twist(m, (4,), (4,))


@pytest.mark.parametrize("k,n", [(2, 1), (2, 3), (3, 2), (3, 3), (4, 2)])
def test_full_twist_laws(k, n):
    for conv in ("standard", "mirror"):
        rep = verify_full_twist(build_tensor_module(k, n, convention=conv))
        assert rep.ok, rep.failures[:3]


def test_extremal_vectors_and_specialisation():
    for k, n in [(2, 2), (3, 2)]:
        m = build_tensor_module(k, n)
        rep = extremal_transport_check(m)
        assert rep.ok and all(rep.data["equals_one"].values())
        assert specialise_at_one(m).ok


def test_weight_vanishing_adjoint_a2():
    m = build_tensor_module(3, 3)
    mult = module_multiplicity(m, (1, 1))
    assert mult((0, 0)) == 2 and mult((1, 1)) == 1 and mult((3, 3)) == 0
    assert weight_vanishing_check(m.datum, mult, (1, 1), word=(1, 2, 1)).ok
    sl2 = build_tensor_module(2, 1)
    assert weight_vanishing_check(sl2.datum, module_multiplicity(sl2, (1,)), (1,)).counts()["checks"] == 0
