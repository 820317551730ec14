"""Marked words: braid words with one distinguished letter standing for a Chevalley operator.

A marked word ``(i_1, ..., i_m-marked, ..., i_n)`` evaluates on a module to
``t_{i_1} ... X_{i_m} ... t_{i_n} 1_lam`` with ``X = F`` (default) or ``E``.
Braid moves across the mark carry an integer shift ``k_m``; the F-flavour
values come from the case table below, the E-flavour values are measured on
the exact modules and memoised.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .cartan import CartanDatum, CartanError

MOVE_KINDS = ("plain-commute", "plain-braid", "mark-commute", "mark-braid")


class MarkedWordError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class MarkedWord:
    letters: tuple[int, ...]
    mark: int
    flavor: str = "F"

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        if not 0 <= self.mark < len(self.letters):
            raise MarkedWordError(f"mark index {self.mark} out of range for {self.letters}")
        if self.flavor not in ("E", "F"):
            raise MarkedWordError(f"mark flavour must be 'E' or 'F', not {self.flavor!r}")

    def __str__(self):
        parts = [f"_{a}_" if p == self.mark else str(a) for p, a in enumerate(self.letters)]
        return f"({','.join(parts)}){self.flavor}"

    def unmarked(self) -> tuple[int, ...]:
        return self.letters

    def is_reduced(self, datum: CartanDatum) -> bool:
        return datum.is_reduced(self.letters)

    def weyl_element(self, datum: CartanDatum):
        return datum.word(self.letters)


@dataclass
class MoveTrace:
    source: MarkedWord
    target: MarkedWord
    moves: list[tuple[str, int]] = field(default_factory=list)
    shifts: list[int] = field(default_factory=list)

    @property
    def k(self) -> int:
        return sum(self.shifts)

    def as_dict(self) -> dict:
        return {
            "source": str(self.source),
            "target": str(self.target),
            "moves": [{"kind": kind, "position": p, "k_m": s} for (kind, p), s in zip(self.moves, self.shifts)],
            "k": self.k,
        }


# -- local weights and shift tables -------------------------------------------


def suffix_weight(datum: CartanDatum, letters, start: int, lam) -> tuple[int, ...]:
    """``s_{i_start} ... s_{i_n}(lam)`` (rightmost first); the weight entering position start-1."""
    mu = tuple(lam)
    for i in reversed(letters[start:]):
        mu = datum.simple_reflection(i, mu)
    return mu


def f_mark_braid_shift(datum: CartanDatum, ell: int, j: int, lam_local) -> int:
    """Shift for ``(ell, j, ell-marked) -> (j-marked, ell, j)`` at local weight ``lam_local``.

    With ``mu = s_ell s_j(lam') - alpha_j``: ``-1`` if ``lam'_j >= 0`` and
    ``mu_ell > 0``; ``+1`` if ``lam'_j < 0`` and ``mu_ell <= 0``; else 0.
    """
    lam_local = tuple(lam_local)
    mu = datum.simple_reflection(ell, datum.simple_reflection(j, lam_local))
    mu = tuple(x - int(a) for x, a in zip(mu, datum.simple_root(j)))
    if lam_local[j - 1] >= 0 and mu[ell - 1] > 0:
        return -1
    if lam_local[j - 1] < 0 and mu[ell - 1] <= 0:
        return 1
    return 0


_E_TABLE: dict = {}


def e_mark_braid_shift(datum: CartanDatum, ell: int, j: int, lam_local) -> int:
    """Shift for E-marks, measured on an exact type-A module and memoised.

    The scalar ``phi(a)/phi(b)`` is read off as ``(-1)^k q^k``; an
    inconsistent scalar raises.
    """
    key = (datum.name, ell, j, tuple(lam_local))
    if key not in _E_TABLE:
        _E_TABLE[key] = _measure_e_shift(datum, ell, j, tuple(lam_local))
    return _E_TABLE[key]


def e_mark_table() -> dict:
    return {f"{k[0]}:l={k[1]},j={k[2]},lam={list(k[3])}": v for k, v in sorted(_E_TABLE.items())}


def _measure_e_shift(datum, ell, j, lam):
    """Compare ``t_ell t_j E_ell 1_lam`` with ``E_j t_ell t_j 1_lam`` on tensor powers of V.

    Every module ``V^{(x)n}`` of ``U_q(sl_{r+1})`` with at most ``_E_BASIS``
    basis vectors and ``lam`` among its weights is used.  Each nonzero pair
    must be related by a single scalar ``(-1)^k q^k`` and all modules must
    agree on ``k``; when both sides vanish everywhere the shift is 0.
    """
    from .laurent import scalar_ratio

    if datum.letter != "A":
        raise MarkedWordError(f"E-mark shifts are measured in type A only (got {datum.name})")
    k = datum.rank + 1
    found = set()
    n = 1
    while k ** n <= _E_BASIS:
        M = _cached_module(k, n)
        if lam in M.weight_spaces:
            P = M.weight_projector(lam)
            lhs = M.t_word((ell, j)) @ M.E[ell] @ P
            rhs = M.E[j] @ M.t_word((ell, j)) @ P
            if not (lhs.is_zero() and rhs.is_zero()):
                r = scalar_ratio(lhs, rhs)
                mono = r.signed_monomial() if r is not None else None
                if mono is None or mono[0] != (-1) ** (mono[1] % 2):
                    raise MarkedWordError(f"E-mark braid at lam={list(lam)}, l={ell}, j={j}: "
                                          f"ratio is not of the form (-1)^k q^k (got {r})")
                found.add(mono[1])
        n += 1
    if len(found) > 1:
        raise MarkedWordError(f"E-mark braid shift at lam={list(lam)} depends on the module: {sorted(found)}")
    return found.pop() if found else 0


_E_BASIS = 256


_MODULES: dict = {}


def _cached_module(k, n):
    from .qrep import WeightModule

    if (k, n) not in _MODULES:
        _MODULES[(k, n)] = WeightModule(k, n)
    return _MODULES[(k, n)]


# -- moves ----------------------------------------------------------------------


def _candidate_moves(datum: CartanDatum, mw: MarkedWord):
    """All applicable moves, in canonical order (position, then kind)."""
    w = mw.letters
    m = mw.mark
    out = []
    for p in range(len(w) - 1):
        a, b = w[p], w[p + 1]
        if a != b and datum.a(a, b) == 0:
            out.append(("mark-commute" if m in (p, p + 1) else "plain-commute", p))
        if p + 2 < len(w) and datum.a(a, b) == -1:
            c = w[p + 2]
            if m not in (p, p + 1, p + 2) and c == a:
                out.append(("plain-braid", p))
            elif m == p + 2 and c == a:
                out.append(("mark-braid", p))
            elif m == p and c == a:
                out.append(("mark-braid", p))
    return sorted(out, key=lambda mv: (mv[1], MOVE_KINDS.index(mv[0])))


def apply_move(datum: CartanDatum, mw: MarkedWord, move, lam) -> tuple[MarkedWord, int]:
    """Apply one move at 0-based window position; return the new word and its shift ``k_m``."""
    kind, p = move
    w = list(mw.letters)
    m = mw.mark
    if kind not in MOVE_KINDS:
        raise MarkedWordError(f"unknown move kind {kind!r}")
    if not 0 <= p < len(w) - 1:
        raise MarkedWordError(f"move position {p} out of range")
    a, b = w[p], w[p + 1]
    if kind in ("plain-commute", "mark-commute"):
        touches = m in (p, p + 1)
        if touches != (kind == "mark-commute"):
            raise MarkedWordError(f"{kind} at {p} does not match the mark position {m}")
        if a == b or datum.a(a, b) != 0:
            raise MarkedWordError(f"letters {a},{b} do not commute")
        w[p], w[p + 1] = b, a
        if touches:
            m = p + 1 if m == p else p
        return MarkedWord(tuple(w), m, mw.flavor), 0
    if p + 2 >= len(w):
        raise MarkedWordError("braid window runs past the end of the word")
    c = w[p + 2]
    if datum.a(a, b) != -1:
        raise MarkedWordError(f"letters {a},{b} are not adjacent")
    if kind == "plain-braid":
        if m in (p, p + 1, p + 2) or c != a:
            raise MarkedWordError(f"no unmarked braid pattern at {p}")
        w[p:p + 3] = [b, a, b]
        return MarkedWord(tuple(w), m, mw.flavor), 0
    # mark-braid
    lam_local = suffix_weight(datum, w, p + 3, lam)
    shift = e_mark_braid_shift if mw.flavor == "E" else f_mark_braid_shift
    if m == p + 2 and c == a:
        ell, j = a, b
        w[p:p + 3] = [j, ell, j]
        return MarkedWord(tuple(w), p, mw.flavor), shift(datum, ell, j, lam_local)
    if m == p and c == a:
        # (j-marked, ell, j) -> (ell, j, ell-marked): reverse direction negates k
        j, ell = a, b
        w[p:p + 3] = [ell, j, ell]
        return MarkedWord(tuple(w), p + 2, mw.flavor), -shift(datum, ell, j, lam_local)
    raise MarkedWordError(f"no marked braid pattern at {p} in {mw}")


def replay(datum: CartanDatum, trace: MoveTrace, lam) -> MarkedWord:
    mw = trace.source
    for mv in trace.moves:
        mw, _ = apply_move(datum, mw, mv, lam)
    return mw


def neighbours(datum: CartanDatum, mw: MarkedWord, lam):
    for mv in _candidate_moves(datum, mw):
        nxt, k = apply_move(datum, mw, mv, lam)
        yield mv, nxt, k


def connect(datum: CartanDatum, a: MarkedWord, b: MarkedWord, lam, max_states: int = 200000) -> MoveTrace | None:
    """Shortest move sequence from ``a`` to ``b`` (breadth first, smallest move first).

    Returns None when ``b`` is not reachable ("not connected").
    """
    if a.flavor != b.flavor:
        raise MarkedWordError("marked words of different flavours cannot be connected")
    if not (datum.word(a.letters).same_element(datum.word(b.letters))):
        raise MarkedWordError("marked words represent different Weyl group elements")
    if a == b:
        return MoveTrace(a, b)
    parent = {a: None}
    queue = deque([a])
    while queue:
        cur = queue.popleft()
        for mv, nxt, k in neighbours(datum, cur, lam):
            if nxt in parent:
                continue
            parent[nxt] = (cur, mv, k)
            if nxt == b:
                moves, shifts = [], []
                node = b
                while parent[node] is not None:
                    prev, pmv, pk = parent[node]
                    moves.append(pmv)
                    shifts.append(pk)
                    node = prev
                return MoveTrace(a, b, moves[::-1], shifts[::-1])
            if len(parent) > max_states:
                return None
            queue.append(nxt)
    return None


def predicted_ratio(trace: MoveTrace) -> tuple[int, int]:
    """``((-1)^k, k)``: phi(source) = (-1)^k q^k phi(target)."""
    k = trace.k
    return (-1) ** (k % 2), k


def path_independence(datum: CartanDatum, a: MarkedWord, lam, max_states: int = 200000) -> tuple[bool, int]:
    """Exhaustively test that the cumulative shift is a potential on the move graph of ``a``.

    Returns ``(ok, states)``; ``ok`` is False iff some closed loop of moves has
    nonzero total shift, i.e. two traces between the same endpoints disagree.
    """
    pot = {a: 0}
    queue = deque([a])
    ok = True
    while queue:
        cur = queue.popleft()
        for _, nxt, k in neighbours(datum, cur, lam):
            if nxt not in pot:
                pot[nxt] = pot[cur] + k
                if len(pot) > max_states:
                    return ok, len(pot)
                queue.append(nxt)
            elif pot[nxt] != pot[cur] + k:
                ok = False
    return ok, len(pot)


# -- the end-mark / start-mark pairs ------------------------------------------


def end_start_pairs(datum: CartanDatum, flavor: str = "F", words_per_element: int | None = None):
    """Pairs ``a = (i_1..i_n, l-marked)``, ``b = (l'-marked, i_1..i_n)`` with ``u alpha_l = alpha_l'``.

    ``u = s_{i_1} ... s_{i_n}`` runs over the Weyl group, the unmarked words
    are reduced and ``w(a) = w(b)``.  Sorted deterministically.
    """
    from .cartan import reduced_words

    elements = _weyl_group(datum)
    out = []
    for u in elements:
        uw = datum.word(u)
        for ell in datum.nodes:
            img = datum.act(uw, datum.simple_root(ell))
            lp = next((k for k in datum.nodes if datum.simple_root(k) == img), None)
            if lp is None:
                continue
            if not datum.is_reduced(tuple(u) + (ell,)):
                continue
            words = reduced_words(datum, uw) if u else [()]
            if words_per_element is not None:
                words = words[:words_per_element]
            for word in words:
                a = MarkedWord(tuple(word) + (ell,), len(word), flavor)
                b = MarkedWord((lp,) + tuple(word), 0, flavor)
                out.append((a, b))
    return sorted(out)


def _weyl_group(datum: CartanDatum) -> list[tuple[int, ...]]:
    """One reduced word per Weyl group element (breadth first by length)."""
    seen = {datum.word(()).key: ()}
    frontier = [()]
    while frontier:
        nxt = []
        for w in frontier:
            for i in datum.nodes:
                cand = w + (i,)
                key = datum.word(cand).key
                if key not in seen and datum.is_reduced(cand):
                    seen[key] = cand
                    nxt.append(cand)
        frontier = nxt
    return sorted(seen.values(), key=lambda w: (len(w), w))


__all__ = [
    "MarkedWord", "MoveTrace", "MarkedWordError", "apply_move", "connect", "predicted_ratio",
    "replay", "path_independence", "end_start_pairs", "f_mark_braid_shift", "e_mark_braid_shift",
    "e_mark_table", "suffix_weight", "CartanError",
]
