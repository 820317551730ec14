"""Kazhdan–Lusztig polynomials, left cells and cell modules of S_n at q = 1.

Permutations are tuples in one-line notation and compose as functions,
``(u v)(i) = u(v(i))``; ``s_i w`` swaps the values ``i`` and ``i+1``.

Basis convention for cell modules: the W-graph of the C-basis at ``q = 1``,

    s . C_w = -C_w                                   if s is a left descent of w,
    s . C_w =  C_w + sum_y mu~(y, w) C_y             otherwise,

where the sum runs over ``y`` in the same left cell with ``s`` a left descent
of ``y``, and ``mu~`` is the symmetrised leading coefficient.  With this
choice the cell of the identity (shape ``(n)``) is the trivial module.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import factorial

import numpy as np

from . import backend
from .qrep import Report
from .tableaux import Partition, Tableau, demotion, evacuation, partitions, promotion, rsk

DEFAULT_MAX_N = 6


class HeckeError(ValueError):
    pass


# -- permutations --------------------------------------------------------------------


def inversions(w) -> int:
    return sum(1 for a in range(len(w)) for b in range(a + 1, len(w)) if w[a] > w[b])


def compose(u, v) -> tuple[int, ...]:
    return tuple(u[x - 1] for x in v)


def inverse(w) -> tuple[int, ...]:
    out = [0] * len(w)
    for pos, val in enumerate(w, start=1):
        out[val - 1] = pos
    return tuple(out)


def simple(n: int, i: int) -> tuple[int, ...]:
    w = list(range(1, n + 1))
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def left_descents(w) -> frozenset[int]:
    """``{i : s_i w < w}``, i.e. ``i+1`` appears before ``i`` in one-line notation."""
    pos = inverse(w)
    return frozenset(i for i in range(1, len(w)) if pos[i] < pos[i - 1])


def reduced_word(w) -> tuple[int, ...]:
    """A reduced word ``(i_1, ..., i_r)`` with ``w = s_{i_1} ... s_{i_r}``."""
    n = len(w)
    out = []
    cur = tuple(w)
    while True:
        d = left_descents(cur)
        if not d:
            return tuple(out)
        i = min(d)
        out.append(i)
        cur = compose(simple(n, i), cur)


def longest(n: int) -> tuple[int, ...]:
    return tuple(range(n, 0, -1))


def long_cycle(n: int) -> tuple[int, ...]:
    """The cycle ``(1, 2, ..., n)``: ``i -> i+1`` and ``n -> 1``."""
    return tuple(list(range(2, n + 1)) + [1])


@dataclass
class BruhatPoset:
    n: int
    elements: list
    index: dict
    lengths: np.ndarray
    left_mul: np.ndarray
    leq: np.ndarray

    @property
    def size(self) -> int:
        return len(self.elements)

    def le(self, x, w) -> bool:
        return bool(self.leq[self.index[tuple(x)], self.index[tuple(w)]])

    def covers(self):
        """Pairs ``(x, w)`` with ``x < w`` and ``l(w) = l(x) + 1`` (these differ by a transposition)."""
        L = self.lengths
        xs, ws = np.nonzero(self.leq & (L[None, :] - L[:, None] == 1))
        return [(self.elements[a], self.elements[b]) for a, b in zip(xs, ws)]


@lru_cache(maxsize=None)
def bruhat_poset(n: int) -> BruhatPoset:
    elems = sorted(permutations(range(1, n + 1)), key=lambda w: (inversions(w), w))
    index = {w: k for k, w in enumerate(elems)}
    N = len(elems)
    lengths = np.array([inversions(w) for w in elems], dtype=np.int64)
    left_mul = np.zeros((max(n - 1, 0), N), dtype=np.int64)
    for i in range(1, n):
        s = simple(n, i)
        left_mul[i - 1] = [index[compose(s, w)] for w in elems]
    # tableau criterion: x <= w iff sorted prefixes of x are entrywise <= those of w
    arr = np.array(elems, dtype=np.int64).reshape(N, n)
    leq = np.ones((N, N), dtype=bool)
    for k in range(1, n):
        pre = np.sort(arr[:, :k], axis=1)
        leq &= (pre[:, None, :] <= pre[None, :, :]).all(axis=2)
    return BruhatPoset(n, elems, index, lengths, left_mul, leq)


# -- KL polynomials -------------------------------------------------------------------------


@dataclass
class KLTable:
    poset: BruhatPoset
    P: np.ndarray

    def poly(self, x, w) -> tuple[int, ...]:
        c = self.P[self.poset.index[tuple(x)], self.poset.index[tuple(w)]]
        nz = np.flatnonzero(c)
        return tuple(int(v) for v in c[: nz[-1] + 1]) if nz.size else ()

    def mu_matrix(self) -> np.ndarray:
        """``mu[x, w]``: coefficient of q^((l(w)-l(x)-1)/2) in P_{x,w} for x < w, else 0."""
        L = self.poset.lengths
        gap = L[None, :] - L[:, None]
        ok = self.poset.leq & (gap > 0) & (gap % 2 == 1)
        deg = np.where(ok, (gap - 1) // 2, 0)
        mu = np.take_along_axis(self.P, deg[:, :, None], axis=2)[:, :, 0]
        return np.where(ok, mu, 0)

    def mu(self, x, w) -> int:
        return int(self.mu_matrix()[self.poset.index[tuple(x)], self.poset.index[tuple(w)]])

    def to_tsv(self) -> str:
        rows = ["x\tw\tcoefficients"]
        els = self.poset.elements
        for a, b in zip(*np.nonzero(self.poset.leq)):
            c = self.poly(els[a], els[b])
            rows.append(f"{''.join(map(str, els[a]))}\t{''.join(map(str, els[b]))}\t{','.join(map(str, c))}")
        return "\n".join(rows) + "\n"


_KL_CACHE: dict = {}


def kl_kernel_inputs(n: int):
    """Arguments ``(lengths, left_mul, left_desc, bruhat, maxdeg)`` of the KL kernel for S_n."""
    poset = bruhat_poset(n)
    N = poset.size
    left_desc = np.full(N, -1, dtype=np.int64)
    for k in range(1, N):
        d = left_descents(poset.elements[k])
        left_desc[k] = min(d) - 1
    maxdeg = int(poset.lengths.max()) // 2 + 1 if N > 1 else 1
    return poset.lengths, poset.left_mul, left_desc, poset.leq, maxdeg


def kl_polynomials(n: int, max_n: int = DEFAULT_MAX_N, backend_name: str | None = None) -> KLTable:
    if n < 1:
        raise HeckeError("n must be positive")
    if n > max_n:
        raise HeckeError(f"n = {n} exceeds the bound {max_n}")
    key = (n, backend_name or backend.NAME)
    if key in _KL_CACHE:
        return _KL_CACHE[key]
    impl = backend if backend_name is None else backend.module(backend_name)
    P = impl.kl_table(*kl_kernel_inputs(n))
    table = KLTable(bruhat_poset(n), np.asarray(P))
    _KL_CACHE[key] = table
    return table


def verify_kl_table(table: KLTable) -> Report:
    poset = table.poset
    P = table.P
    L = poset.lengths
    N = poset.size
    rep = Report(f"kl[S{poset.n}]")
    diag = P[np.arange(N), np.arange(N)]
    rep.add("P_ww=1", bool((diag[:, 0] == 1).all() and (diag[:, 1:] == 0).all()))
    rep.add("zero_off_bruhat", bool((P[~poset.leq] == 0).all()))
    degs = np.arange(P.shape[2])
    gap = L[None, :] - L[:, None]
    strict = poset.leq & (gap > 0)
    over = (P != 0) & (2 * degs[None, None, :] > (gap - 1)[:, :, None]) & strict[:, :, None]
    rep.add("degree_bound", not bool(over.any()))
    rep.add("constant_term_one", bool((P[poset.leq][:, 0] == 1).all()))
    rep.add("nonnegative", bool((P >= 0).all()))
    inv = np.array([poset.index[inverse(w)] for w in poset.elements])
    rep.add("inverse_symmetry", bool(np.array_equal(P, P[inv][:, inv])))
    # descent reduction: P_{x,w} = P_{sx,w} whenever s is a left descent of w
    ok = True
    for k in range(N):
        for i in left_descents(poset.elements[k]):
            if not np.array_equal(P[:, k], P[poset.left_mul[i - 1], k]):
                ok = False
    rep.add("left_descent_stability", ok)
    nontrivial = [(poset.elements[a], poset.elements[b]) for a, b in zip(*np.nonzero(P[:, :, 1:].any(axis=2)))]
    rep.data["nontrivial_pairs"] = len(nontrivial)
    rep.data["first_nontrivial"] = [list(nontrivial[0][0]), list(nontrivial[0][1])] if nontrivial else None
    return rep


# -- W-graph and left cells --------------------------------------------------------------------


@lru_cache(maxsize=None)
def _descent_masks(n: int) -> np.ndarray:
    poset = bruhat_poset(n)
    out = np.zeros((poset.size, max(n - 1, 1)), dtype=bool)
    for k, w in enumerate(poset.elements):
        for i in left_descents(w):
            out[k, i - 1] = True
    return out


def left_cells(n: int) -> list[list[tuple[int, ...]]]:
    """Strongly connected components of the left preorder (each cell sorted, cells sorted)."""
    table = kl_polynomials(n)
    poset = table.poset
    mu = table.mu_matrix()
    sym = (mu != 0) | (mu.T != 0)
    D = _descent_masks(n)
    N = poset.size
    # y <=_L w when mu~(y, w) != 0 and L(y) is not contained in L(w)
    not_sub = (D[:, None, :] & ~D[None, :, :]).any(axis=2)
    adj = sym & not_sub  # adj[y, w]: edge w -> y
    succ = [np.flatnonzero(adj[:, w]).tolist() for w in range(N)]
    comps = _tarjan(N, succ)
    cells = [sorted(poset.elements[k] for k in c) for c in comps]
    return sorted(cells)


def _tarjan(N, succ):
    index = [-1] * N
    low = [0] * N
    on = [False] * N
    stack: list[int] = []
    out = []
    counter = 0
    for root in range(N):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work.pop()
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on[v] = True
            recurse = False
            for k in range(pi, len(succ[v])):
                u = succ[v][k]
                if index[u] < 0:
                    work.append((v, k + 1))
                    work.append((u, 0))
                    recurse = True
                    break
                if on[u]:
                    low[v] = min(low[v], index[u])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    u = stack.pop()
                    on[u] = False
                    comp.append(u)
                    if u == v:
                        break
                out.append(comp)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return out


def verify_cells_vs_rsk(n: int) -> Report:
    rep = Report(f"cells[S{n}]")
    cells = left_cells(n)
    fibres: dict = {}
    for w in bruhat_poset(n).elements:
        fibres.setdefault(rsk(w).Q, []).append(w)
    expected = sorted(sorted(v) for v in fibres.values())
    rep.add("left_cells=Q_fibres", cells == expected, cells=len(cells), fibres=len(expected))
    rep.add("sum_d_squared=n!", sum(Partition(s).hook_count() ** 2 for s in partitions(n)) == factorial(n))
    return rep


# -- cell modules -------------------------------------------------------------------------------


def superstandard(shape) -> Tableau:
    shape = Partition(shape)
    rows, k = [], 1
    for p in shape:
        rows.append(tuple(range(k, k + p)))
        k += p
    return Tableau(tuple(rows))


@dataclass
class CellModule:
    n: int
    shape: Partition
    elements: list
    labels: list
    generators: dict

    @property
    def dim(self) -> int:
        return len(self.labels)

    def matrix(self, w) -> np.ndarray:
        M = np.eye(self.dim, dtype=np.int64)
        for i in reduced_word(w):
            M = M @ self.generators[i]
        return M

    def label_index(self, T) -> int:
        return self.labels.index(T)


def cell_module(n: int, shape) -> CellModule:
    """The left cell with superstandard Q-symbol, basis labelled by P-symbols (sorted)."""
    shape = Partition(shape)
    if shape.size != n:
        raise HeckeError(f"{tuple(shape)} is not a partition of {n}")
    table = kl_polynomials(n)
    poset = table.poset
    Q0 = superstandard(shape)
    cell = sorted((w for w in poset.elements if rsk(w).Q == Q0), key=lambda w: rsk(w).P)
    labels = [rsk(w).P for w in cell]
    idx = [poset.index[w] for w in cell]
    mu = table.mu_matrix()
    mut = np.where(mu != 0, mu, mu.T)
    D = _descent_masks(n)
    gens = {}
    d = len(cell)
    for i in range(1, n):
        M = np.zeros((d, d), dtype=np.int64)
        for col, w in enumerate(idx):
            if D[w, i - 1]:
                M[col, col] = -1
                continue
            M[col, col] = 1
            for row, y in enumerate(idx):
                if D[y, i - 1] and mut[y, w]:
                    M[row, col] += mut[y, w]
        gens[i] = M
    return CellModule(n, shape, cell, labels, gens)


def verify_cell_module(mod: CellModule) -> Report:
    rep = Report(f"cell-module{tuple(mod.shape)}")
    I = np.eye(mod.dim, dtype=np.int64)
    g = mod.generators
    for i in g:
        rep.add("s_i^2=1", bool(np.array_equal(g[i] @ g[i], I)), i=i)
        for j in g:
            if j == i + 1:
                rep.add("braid", bool(np.array_equal(g[i] @ g[j] @ g[i], g[j] @ g[i] @ g[j])), i=i, j=j)
            elif j > i + 1:
                rep.add("commute", bool(np.array_equal(g[i] @ g[j], g[j] @ g[i])), i=i, j=j)
    rep.add("dimension", mod.dim == mod.shape.hook_count(), dim=mod.dim)
    char = {mu: int(np.trace(mod.matrix(_class_rep(mu)))) for mu in partitions(mod.n)}
    oracle = {mu: specht_character(mod.shape, mu) for mu in partitions(mod.n)}
    rep.add("character", char == oracle)
    rep.data["character"] = {",".join(map(str, mu)): v for mu, v in char.items()}
    return rep


def _class_rep(mu) -> tuple[int, ...]:
    """A permutation of cycle type ``mu`` made of consecutive cycles."""
    w, k = [], 1
    for p in mu:
        w.extend(list(range(k + 1, k + p)) + [k])
        k += p
    return tuple(w)


def specht_character(shape, mu) -> int:
    """Murnaghan–Nakayama rule, removing border strips of the sizes in ``mu``."""
    return _mn(tuple(Partition(shape)), tuple(Partition(mu)))


@lru_cache(maxsize=None)
def _mn(shape, mu):
    if not mu:
        return 1 if not shape else 0
    r, rest = mu[0], mu[1:]
    total = 0
    # border strips correspond to removing a rim hook: use beta-numbers
    beta = [p + (len(shape) - 1 - k) for k, p in enumerate(shape)]
    bset = set(beta)
    for b in beta:
        if b - r >= 0 and (b - r) not in bset:
            height = sum(1 for c in beta if b - r < c < b)
            nb = sorted((c if c != b else b - r) for c in beta)[::-1]
            m = len(nb)
            new = [c - (m - 1 - k) for k, c in enumerate(nb)]
            total += (-1) ** height * _mn(tuple(x for x in new if x > 0), rest)
    return total


def signed_permutation(M: np.ndarray):
    """``(perm, signs)`` with ``M[perm[c], c] = signs[c]`` if M is a signed permutation, else None."""
    M = np.asarray(M)
    nz = M != 0
    if not (nz.sum(axis=0) == 1).all() or not (nz.sum(axis=1) == 1).all():
        return None
    perm = nz.argmax(axis=0)
    signs = M[perm, np.arange(M.shape[1])]
    if not np.isin(signs, (-1, 1)).all():
        return None
    return perm.tolist(), signs.tolist()


def verify_evacuation_theorem(n: int, shape) -> Report:
    mod = cell_module(n, shape)
    rep = Report(f"evacuation-theorem{tuple(mod.shape)}")
    M = mod.matrix(longest(n))
    rep.add("w0^2=1", bool(np.array_equal(M @ M, np.eye(mod.dim, dtype=np.int64))))
    sp = signed_permutation(M)
    rep.add("signed_permutation", sp is not None)
    if sp is None:
        return rep
    perm, signs = sp
    bad = [T for c, T in enumerate(mod.labels) if mod.labels[perm[c]] != evacuation(T)]
    rep.add("permutation=evacuation", not bad, str(bad[0]) if bad else "")
    rep.data["signs"] = {str(T): s for T, s in zip(mod.labels, signs)}
    return rep


def verify_promotion_theorem(n: int, shape) -> Report:
    mod = cell_module(n, shape)
    rep = Report(f"promotion-theorem{tuple(mod.shape)}")
    M = mod.matrix(long_cycle(n))
    power = np.linalg.matrix_power(M, n)
    if mod.shape.is_rectangle():
        rep.add("order_divides_n", bool(np.array_equal(power, np.eye(mod.dim, dtype=np.int64))))
    sp = signed_permutation(M)
    rep.add("signed_permutation", sp is not None, rectangular=mod.shape.is_rectangle())
    if sp is None:
        return rep
    perm, signs = sp
    image = {T: mod.labels[perm[c]] for c, T in enumerate(mod.labels)}
    matches = {
        "promotion": all(image[T] == promotion(T) for T in image),
        "demotion": all(image[T] == demotion(T) for T in image),
    }
    # the crystal-side factorisation xi_I o xi_J (xi_J applied first) fixes the direction
    from .tableaux import xi_on_syt

    xI = xi_on_syt(mod.shape)
    xJ = xi_on_syt(mod.shape, J=tuple(range(1, n - 1)))
    factor = all(image[T] == xI[xJ[T]] for T in image)
    rep.add("permutation=xi_I*xi_J", factor)
    rep.add("permutation=jeu_de_taquin_promotion", matches["promotion"] or matches["demotion"], "", matches=matches)
    rep.data["matches"] = matches
    rep.data["signs"] = {str(T): s for T, s in zip(mod.labels, signs)}
    return rep


def negative_control(n: int, shape) -> Report:
    """For a non-rectangular shape the long cycle should not act by a signed permutation."""
    mod = cell_module(n, shape)
    rep = Report(f"negative-control{tuple(mod.shape)}")
    sp = signed_permutation(mod.matrix(long_cycle(n)))
    rep.add("long_cycle_not_signed_permutation", sp is None, rectangular=mod.shape.is_rectangle())
    return rep


def w_graph_dot(n: int) -> str:
    table = kl_polynomials(n)
    poset = table.poset
    mu = table.mu_matrix()
    lines = [f'graph "W(S{n})" {{']
    for k, w in enumerate(poset.elements):
        desc = ",".join(map(str, sorted(left_descents(w))))
        lines.append(f'  n{k} [label="{"".join(map(str, w))} {{{desc}}}"];')
    for a, b in zip(*np.nonzero(mu)):
        lines.append(f'  n{a} -- n{b} [label="{int(mu[a, b])}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = [
    "HeckeError", "BruhatPoset", "bruhat_poset", "KLTable", "kl_polynomials", "verify_kl_table",
    "left_cells", "verify_cells_vs_rsk", "CellModule", "cell_module", "verify_cell_module",
    "specht_character", "signed_permutation", "verify_evacuation_theorem", "verify_promotion_theorem",
    "negative_control", "w_graph_dot", "reduced_word", "longest", "long_cycle", "left_descents",
    "inversions", "compose", "inverse", "simple",
]
