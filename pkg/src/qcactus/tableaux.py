"""Type A tableau combinatorics and the bridge to crystal involutions.

Conventions: row insertion for RSK (the recording tableau Q stores insertion
order); promotion removes the entry 1, slides the hole out by jeu de taquin,
decrements every entry and writes n in the vacated outer corner; demotion is
its inverse.  Semistandard tableaux form a crystal through their reading word
(rows bottom to top, each left to right) with the bracket rule: an ``i+1``
followed later by an ``i`` cancel, ``f_i`` changes the rightmost uncancelled
``i`` and ``e_i`` the leftmost uncancelled ``i+1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from .cartan import build_cartan
from .qrep import Report


class TableauError(ValueError):
    pass


# -- partitions -------------------------------------------------------------------


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise TableauError(f"{parts} is not a partition")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def conjugate(self) -> "Partition":
        return Partition([sum(1 for p in self if p > c) for c in range(self[0])] if self else [])

    def dominates(self, other) -> bool:
        a = b = 0
        for k in range(max(len(self), len(other))):
            a += self[k] if k < len(self) else 0
            b += other[k] if k < len(other) else 0
            if a < b:
                return False
        return True

    def cells(self):
        return [(r, c) for r, p in enumerate(self) for c in range(p)]

    def corners(self):
        return [(r, p - 1) for r, p in enumerate(self) if r + 1 == len(self) or self[r + 1] < p]

    def is_rectangle(self) -> bool:
        return len(set(self)) <= 1

    def hook_count(self) -> int:
        """Number of standard tableaux by the hook length formula."""
        conj = self.conjugate()
        prod = 1
        for r, c in self.cells():
            prod *= (self[r] - c - 1) + (conj[c] - r - 1) + 1
        return factorial(self.size) // prod

    def sl_weight(self, n: int) -> tuple[int, ...]:
        """Fundamental coordinates of the sl_n weight of this shape."""
        if len(self) > n:
            raise TableauError(f"{tuple(self)} has more than {n} rows")
        parts = list(self) + [0] * (n - len(self))
        return tuple(parts[i] - parts[i + 1] for i in range(n - 1))


def partitions(n: int, max_part: int | None = None):
    """Partitions of n in reverse lexicographic order."""
    if n == 0:
        yield Partition()
        return
    top = n if max_part is None else min(n, max_part)
    for first in range(top, 0, -1):
        for rest in partitions(n - first, first):
            yield Partition((first,) + tuple(rest))


# -- tableaux ------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Tableau:
    """A (semi)standard tableau stored as rows."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows if len(r))
        object.__setattr__(self, "rows", rows)
        Partition(len(r) for r in rows)
        for r in rows:
            if any(a > b for a, b in zip(r, r[1:])):
                raise TableauError(f"row {r} is not weakly increasing")
        for r1, r2 in zip(rows, rows[1:]):
            if any(r1[c] >= r2[c] for c in range(len(r2))):
                raise TableauError(f"columns of {rows} are not strictly increasing")

    @property
    def shape(self) -> Partition:
        return Partition(len(r) for r in self.rows)

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.rows)

    def entries(self):
        return [x for r in self.rows for x in r]

    def is_standard(self) -> bool:
        return sorted(self.entries()) == list(range(1, self.size + 1))

    def content(self, n: int) -> tuple[int, ...]:
        out = [0] * n
        for x in self.entries():
            out[x - 1] += 1
        return tuple(out)

    def reading_word(self) -> tuple[int, ...]:
        return tuple(x for r in reversed(self.rows) for x in r)

    def position(self, value):
        for r, row in enumerate(self.rows):
            for c, x in enumerate(row):
                if x == value:
                    return r, c
        raise KeyError(value)

    def as_lists(self):
        return [list(r) for r in self.rows]

    def __str__(self):
        return "/".join(",".join(map(str, r)) for r in self.rows)


def StandardTableau(rows) -> Tableau:
    t = Tableau(tuple(tuple(r) for r in rows))
    if not t.is_standard():
        raise TableauError(f"{t} is not standard")
    return t


def parse_tableau(text: str) -> Tableau:
    """Parse ``"1,2,4/3,5"`` (rows separated by ``/``)."""
    rows = [tuple(int(x) for x in row.split(",") if x.strip()) for row in text.strip().split("/")]
    return Tableau(tuple(rows))


@lru_cache(maxsize=None)
def _syt(shape: tuple[int, ...]) -> tuple[Tableau, ...]:
    lam = Partition(shape)
    n = lam.size
    if n == 0:
        return (Tableau(()),)
    out = []
    for r, c in lam.corners():
        smaller = list(lam)
        smaller[r] -= 1
        for t in _syt(tuple(Partition(smaller))):
            rows = [list(x) for x in t.rows]
            if r == len(rows):
                rows.append([])
            rows[r].append(n)
            out.append(Tableau(tuple(tuple(x) for x in rows)))
    return tuple(sorted(out))


def syt_enumerate(shape) -> list[Tableau]:
    return list(_syt(tuple(Partition(shape))))


# -- RSK -----------------------------------------------------------------------------


@dataclass(frozen=True)
class TableauPair:
    P: Tableau
    Q: Tableau

    def __post_init__(self):
        if self.P.shape != self.Q.shape:
            raise TableauError("P and Q have different shapes")

    @property
    def shape(self) -> Partition:
        return self.P.shape


def _row_insert(rows, x):
    """Insert x; return the (row, col) of the new cell."""
    r = 0
    while True:
        if r == len(rows):
            rows.append([x])
            return r, 0
        row = rows[r]
        for c, y in enumerate(row):
            if y > x:
                row[c], x = x, y
                break
        else:
            row.append(x)
            return r, len(row) - 1
        r += 1


def rsk(w) -> TableauPair:
    """Row-insertion Robinson–Schensted on a word (one-line notation for permutations)."""
    P: list[list[int]] = []
    Q: list[list[int]] = []
    for k, x in enumerate(w, start=1):
        r, _ = _row_insert(P, int(x))
        if r == len(Q):
            Q.append([])
        Q[r].append(k)
    return TableauPair(Tableau(tuple(map(tuple, P))), Tableau(tuple(map(tuple, Q))))


def rsk_inverse(pair: TableauPair) -> tuple[int, ...]:
    P = [list(r) for r in pair.P.rows]
    Q = [list(r) for r in pair.Q.rows]
    n = pair.Q.size
    out = []
    for k in range(n, 0, -1):
        r, c = next((r, c) for r, row in enumerate(Q) for c, y in enumerate(row) if y == k)
        Q[r].pop()
        x = P[r].pop()
        if not Q[r]:
            Q.pop()
            P.pop()
        for rr in range(r - 1, -1, -1):
            row = P[rr]
            c = max(j for j, y in enumerate(row) if y < x)
            row[c], x = x, row[c]
        out.append(x)
    return tuple(reversed(out))


# -- jeu de taquin, promotion, evacuation ------------------------------------------------


def _slide_out(rows, r, c):
    """Slide the hole at (r, c) outward; return the vacated outer corner."""
    while True:
        below = rows[r + 1][c] if r + 1 < len(rows) and c < len(rows[r + 1]) else None
        right = rows[r][c + 1] if c + 1 < len(rows[r]) else None
        if below is None and right is None:
            rows[r].pop()
            if not rows[r]:
                rows.pop()
            return r, c
        if right is None or (below is not None and below < right):
            rows[r][c] = below
            r += 1
        else:
            rows[r][c] = right
            c += 1


def _slide_in(rows, r, c):
    """Slide the hole at (r, c) inward until it reaches (0, 0)."""
    while r > 0 or c > 0:
        above = rows[r - 1][c] if r > 0 else None
        left = rows[r][c - 1] if c > 0 else None
        if left is None or (above is not None and above > left):
            rows[r][c] = above
            r -= 1
        else:
            rows[r][c] = left
            c -= 1
    rows[0][0] = None
    return rows


def promotion(T: Tableau) -> Tableau:
    """Remove 1, slide out, decrement, put n in the vacated corner."""
    n = T.size
    if n == 0:
        return T
    rows = [list(r) for r in T.rows]
    r, c = _slide_out(rows, 0, 0)
    rows = [[x - 1 for x in row] for row in rows]
    if r == len(rows):
        rows.append([])
    rows[r].append(n)
    return Tableau(tuple(map(tuple, rows)))


def demotion(T: Tableau) -> Tableau:
    """Inverse of :func:`promotion`: remove n, slide in, increment, put 1 at the corner."""
    n = T.size
    if n == 0:
        return T
    rows = [list(r) for r in T.rows]
    r, c = T.position(n)
    rows[r][c] = None
    _slide_in(rows, r, c)
    rows = [[(x + 1) if x is not None else 1 for x in row] for row in rows]
    return Tableau(tuple(map(tuple, rows)))


def evacuation(T: Tableau) -> Tableau:
    """Schützenberger evacuation: delete the minimum, slide, and record the vacated cell with n, n-1, ..."""
    n = T.size
    rows = [list(r) for r in T.rows]
    shape = T.shape
    out = [[0] * p for p in shape]
    for k in range(n):
        r, c = _slide_out(rows, 0, 0)
        out[r][c] = n - k
    return Tableau(tuple(map(tuple, out)))


def promotion_order(T: Tableau) -> int:
    k, cur = 1, promotion(T)
    while cur != T:
        cur = promotion(cur)
        k += 1
    return k


# -- the tableau crystal -------------------------------------------------------------------


def _unpaired(word, i):
    """Positions of uncancelled i's and (i+1)'s in ``word`` (an i+1 cancels a later i)."""
    open_plus = []
    free_i = []
    for p, x in enumerate(word):
        if x == i + 1:
            open_plus.append(p)
        elif x == i:
            if open_plus:
                open_plus.pop()
            else:
                free_i.append(p)
    return free_i, open_plus


class TableauCrystal:
    """Operators on semistandard tableaux with entries in 1..n (the sl_n crystal)."""

    def __init__(self, n: int):
        self.n = n

    @staticmethod
    def _positions(T):
        return [(r, c) for r in range(len(T.rows) - 1, -1, -1) for c in range(len(T.rows[r]))]

    def _change(self, T, p, new):
        r, c = self._positions(T)[p]
        rows = [list(x) for x in T.rows]
        rows[r][c] = new
        return Tableau(tuple(map(tuple, rows)))

    def f(self, T, i):
        free_i, _ = _unpaired(T.reading_word(), i)
        return self._change(T, free_i[-1], i + 1) if free_i else None

    def e(self, T, i):
        _, free_plus = _unpaired(T.reading_word(), i)
        return self._change(T, free_plus[0], i) if free_plus else None

    def stats(self, T, i):
        free_i, free_plus = _unpaired(T.reading_word(), i)
        return len(free_plus), len(free_i)

    def weight(self, T):
        cont = T.content(self.n)
        return tuple(cont[i] - cont[i + 1] for i in range(self.n - 1))

    @staticmethod
    def highest(shape) -> Tableau:
        return Tableau(tuple(tuple([r + 1] * p) for r, p in enumerate(shape)))


def tableau_crystal(shape, n: int):
    """``B(shape)`` for sl_n realised on semistandard tableaux."""
    from .crystal import graph_from_operators

    shape = Partition(shape)
    if len(shape) > n:
        raise TableauError(f"{tuple(shape)} has more than {n} rows")
    tc = TableauCrystal(n)
    datum = build_cartan("A", n - 1)
    return graph_from_operators(datum, [tc.highest(shape)], tc.f, tc.e, tc.stats, tc.weight,
                                name=f"SSYT{tuple(shape)}[sl{n}]", model=tc)


@lru_cache(maxsize=None)
def _bridge(shape: tuple[int, ...]):
    """Tableau crystal of shape for sl_n (n = |shape|), its LS model and the isomorphism between them."""
    from .crystal import crystal_from_highest, find_isomorphism

    lam = Partition(shape)
    n = lam.size
    tab = tableau_crystal(lam, n)
    ls = crystal_from_highest(tab.datum, lam.sl_weight(n))
    iso = find_isomorphism(tab, ls)
    if iso is None:
        raise TableauError(f"tableau and path crystals of {shape} are not isomorphic")
    return tab, ls, iso


def standard_nodes(shape):
    """Node ids of the standard-content tableaux, in ``syt_enumerate`` order."""
    tab, _, _ = _bridge(tuple(Partition(shape)))
    return [tab.index(T) for T in syt_enumerate(shape)]


def xi_on_syt(shape, J=None, model: str = "tableau") -> dict:
    """``xi_J`` restricted to SYT(shape), computed on the tableau crystal or transported from paths."""
    from .crystal import schutzenberger

    lam = Partition(shape)
    n = lam.size
    if n < 2:
        # sl_1 has no simple roots; every involution is the identity
        return {T: T for T in syt_enumerate(lam)}
    tab, ls, iso = _bridge(tuple(lam))
    J = tuple(range(1, n)) if J is None else tuple(J)
    if model == "tableau":
        xi = schutzenberger(tab, J)
        img = xi.image
    elif model == "paths":
        xi = schutzenberger(ls, J)
        img = iso.inverse().image[xi.image[iso.image]]
    else:
        raise TableauError(f"unknown crystal model {model!r}")
    out = {}
    for T in syt_enumerate(lam):
        image = tab.labels[int(img[tab.index(T)])]
        if not image.is_standard():
            raise TableauError(f"xi_{list(J)} leaves standard content at {T}")
        out[T] = image
    return out


def verify_evacuation_bridge(shape) -> Report:
    """``xi_I`` on standard content equals evacuation, on both crystal models."""
    lam = Partition(shape)
    rep = Report(f"evacuation-bridge{tuple(lam)}")
    for model in ("tableau", "paths"):
        xi = xi_on_syt(lam, model=model)
        bad = [T for T in xi if xi[T] != evacuation(T)]
        rep.add("xi_I=evacuation", not bad, str(bad[0]) if bad else "", model=model, tableaux=len(xi))
    return rep


def verify_promotion_factorization(shape) -> Report:
    """Compare promotion with ``xi_I xi_J`` and ``xi_J xi_I`` for ``J = {1..n-2}``."""
    lam = Partition(shape)
    n = lam.size
    rep = Report(f"promotion-factorisation{tuple(lam)}")
    xI = xi_on_syt(lam)
    xJ = xi_on_syt(lam, J=tuple(range(1, n - 1)))
    holds = {}
    for order, comp in (("xi_I*xi_J", lambda T: xI[xJ[T]]), ("xi_J*xi_I", lambda T: xJ[xI[T]])):
        bad = [T for T in xI if comp(T) != promotion(T)]
        holds[order] = not bad
        bad_dem = [T for T in xI if comp(T) != demotion(T)]
        rep.data[order] = {"promotion": not bad, "demotion": not bad_dem,
                           "witness": str(bad[0]) if bad else None}
    rep.add("promotion_factorises", any(holds.values()), "", holds=holds)
    rep.data["order"] = next((k for k, v in holds.items() if v), None)
    return rep


__all__ = [
    "TableauError", "Partition", "partitions", "Tableau", "StandardTableau", "parse_tableau",
    "syt_enumerate", "TableauPair", "rsk", "rsk_inverse", "promotion", "demotion", "evacuation",
    "promotion_order", "TableauCrystal", "tableau_crystal", "standard_nodes", "xi_on_syt",
    "verify_evacuation_bridge", "verify_promotion_factorization",
]
