"""Simply-laced root data: Cartan matrices, weights, Weyl group words.

Nodes are labelled ``1..rank`` (Bourbaki numbering for D and E).  Weights are
integer tuples of fundamental coordinates ``lam[i-1] = <h_i, lam>``; root-lattice
vectors are integer tuples of simple-root coordinates.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations

import numpy as np

Weight = tuple[int, ...]


class CartanError(ValueError):
    pass


def _edges(letter: str, rank: int) -> list[tuple[int, int]]:
    if letter == "A":
        if rank < 1:
            raise CartanError(f"A_{rank}: rank must be >= 1")
        return [(i, i + 1) for i in range(1, rank)]
    if letter == "D":
        if rank < 4:
            raise CartanError(f"D_{rank}: rank must be >= 4")
        chain = [(i, i + 1) for i in range(1, rank - 1)]
        return chain + [(rank - 2, rank)]
    if letter == "E":
        if rank not in (6, 7, 8):
            raise CartanError(f"E_{rank}: rank must be 6, 7 or 8")
        # Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4
        chain = [(1, 3), (3, 4), (4, 5)] + [(i, i + 1) for i in range(5, rank)]
        return chain + [(2, 4)]
    raise CartanError(f"unknown type letter {letter!r} (expected A, D or E)")


def _exact_inverse(mat: np.ndarray) -> list[list[Fraction]]:
    n = len(mat)
    aug = [[Fraction(int(mat[i][j])) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


@dataclass(frozen=True)
class WeylWord:
    """A word in the simple reflections together with its action matrix.

    ``matrix`` acts on fundamental coordinates (column vectors).  The word
    ``(i1, ..., ir)`` denotes ``s_i1 ... s_ir``, so ``s_ir`` acts first.
    """

    word: tuple[int, ...]
    matrix: np.ndarray = field(compare=False, repr=False)

    @property
    def key(self) -> bytes:
        return self.matrix.tobytes()

    def __len__(self) -> int:
        return len(self.word)

    def same_element(self, other: "WeylWord") -> bool:
        return np.array_equal(self.matrix, other.matrix)


@dataclass(frozen=True)
class CartanDatum:
    letter: str
    rank: int

    def __post_init__(self):
        _edges(self.letter, self.rank)

    # -- defining data -------------------------------------------------

    @cached_property
    def nodes(self) -> tuple[int, ...]:
        return tuple(range(1, self.rank + 1))

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(_edges(self.letter, self.rank))

    @cached_property
    def cartan(self) -> np.ndarray:
        a = 2 * np.eye(self.rank, dtype=np.int64)
        for i, j in self.edges:
            a[i - 1, j - 1] = a[j - 1, i - 1] = -1
        a.setflags(write=False)
        return a

    def a(self, i: int, j: int) -> int:
        return int(self.cartan[i - 1, j - 1])

    def neighbours(self, i: int) -> tuple[int, ...]:
        return tuple(j for j in self.nodes if j != i and self.a(i, j) == -1)

    @cached_property
    def name(self) -> str:
        return f"{self.letter}{self.rank}"

    @cached_property
    def _inverse(self) -> list[list[Fraction]]:
        return _exact_inverse(self.cartan)

    # -- weights and roots ---------------------------------------------

    def simple_root(self, i: int) -> Weight:
        return tuple(int(x) for x in self.cartan[i - 1])

    def fundamental(self, i: int) -> Weight:
        return tuple(int(k == i) for k in self.nodes)

    @cached_property
    def zero(self) -> Weight:
        return (0,) * self.rank

    @cached_property
    def rho(self) -> Weight:
        return (1,) * self.rank

    def root_to_weight(self, v) -> Weight:
        return tuple(int(x) for x in self.cartan @ np.asarray(v, dtype=np.int64))

    def root_coordinates(self, lam: Weight) -> tuple[Fraction, ...]:
        inv = self._inverse
        return tuple(sum((inv[r][c] * lam[c] for c in range(self.rank)), Fraction(0))
                     for r in range(self.rank))

    def in_root_lattice(self, lam: Weight) -> bool:
        return all(x.denominator == 1 for x in self.root_coordinates(lam))

    def height(self, lam: Weight) -> int:
        """Height of a root-lattice element given in fundamental coordinates."""
        coords = self.root_coordinates(lam)
        if any(x.denominator != 1 for x in coords):
            raise CartanError(f"{lam} is not in the root lattice of {self.name}")
        return int(sum(coords))

    def form(self, lam: Weight, mu: Weight) -> Fraction:
        """The invariant form ``(lam, mu)`` normalised by ``(alpha_i, alpha_i) = 2``."""
        inv = self._inverse
        return sum((lam[r] * inv[r][c] * mu[c] for r in range(self.rank) for c in range(self.rank)),
                   Fraction(0))

    @cached_property
    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        """Positive roots in simple-root coordinates, by closure from the simple roots."""
        simple = [tuple(int(k == i) for k in range(self.rank)) for i in range(self.rank)]
        seen = set(simple)
        order = list(simple)
        frontier = list(simple)
        a = self.cartan
        while frontier:
            nxt = []
            for beta in frontier:
                pair = a @ np.asarray(beta)
                for i in range(self.rank):
                    if pair[i] == -1:
                        gamma = tuple(b + (k == i) for k, b in enumerate(beta))
                        if gamma not in seen:
                            seen.add(gamma)
                            order.append(gamma)
                            nxt.append(gamma)
            frontier = nxt
        return tuple(sorted(order, key=lambda b: (sum(b), tuple(-x for x in b))))

    @cached_property
    def positive_roots_weights(self) -> tuple[Weight, ...]:
        return tuple(self.root_to_weight(b) for b in self.positive_roots)

    @cached_property
    def highest_root(self) -> tuple[int, ...]:
        return self.positive_roots[-1]

    @cached_property
    def rho_check(self) -> tuple[Fraction, ...]:
        """Half-sum of positive coroots as a covector on fundamental coordinates."""
        tot = [0] * self.rank
        for beta in self.positive_roots:
            for k, b in enumerate(beta):
                tot[k] += b
        return tuple(Fraction(t, 2) for t in tot)

    def pair_2rho_check(self, lam: Weight) -> int:
        """``<2 lam, rho_check>``, always an integer."""
        return int(sum(2 * c * x for c, x in zip(self.rho_check, lam)))

    def coxeter_number(self) -> int:
        return 2 * len(self.positive_roots) // self.rank

    def is_dominant(self, lam: Weight) -> bool:
        return all(x >= 0 for x in lam)

    def weyl_dimension(self, lam: Weight) -> int:
        num, den = 1, 1
        for beta in self.positive_roots:
            num *= sum((lam[k] + 1) * b for k, b in enumerate(beta))
            den *= sum(beta)
        assert num % den == 0
        return num // den

    # -- Weyl group ----------------------------------------------------

    def simple_reflection(self, i: int, lam: Weight) -> Weight:
        li = lam[i - 1]
        if li == 0:
            return tuple(lam)
        return tuple(x - li * int(c) for x, c in zip(lam, self.cartan[i - 1]))

    @cached_property
    def _reflection_matrices(self) -> dict[int, np.ndarray]:
        mats = {}
        for i in self.nodes:
            m = np.eye(self.rank, dtype=np.int64)
            m[:, i - 1] -= self.cartan[i - 1]
            mats[i] = m
        return mats

    def word(self, word) -> WeylWord:
        m = np.eye(self.rank, dtype=np.int64)
        for i in word:
            if i not in self.nodes:
                raise CartanError(f"node {i} not in {self.name}")
            m = m @ self._reflection_matrices[i]
        m.setflags(write=False)
        return WeylWord(tuple(word), m)

    def act(self, w: WeylWord | tuple, lam: Weight) -> Weight:
        if not isinstance(w, WeylWord):
            for i in reversed(tuple(w)):
                lam = self.simple_reflection(i, lam)
            return tuple(lam)
        return tuple(int(x) for x in w.matrix @ np.asarray(lam, dtype=np.int64))

    def length(self, w: WeylWord) -> int:
        """Number of positive roots sent to negative roots."""
        n = 0
        for beta in self.positive_roots_weights:
            img = self.root_coordinates(self.act(w, beta))
            if any(x < 0 for x in img):
                n += 1
        return n

    def is_reduced(self, word) -> bool:
        return self.length(self.word(word)) == len(word)

    def reduced_word(self, w: WeylWord) -> tuple[int, ...]:
        """A reduced word for ``w`` via its action on rho (left descents first)."""
        lam = self.act(w, self.rho)
        out = []
        # w rho has a negative i-coordinate iff s_i is a left descent of w
        while True:
            i = next((k for k in self.nodes if lam[k - 1] < 0), None)
            if i is None:
                break
            out.append(i)
            lam = self.simple_reflection(i, lam)
        return tuple(out)

    def longest_element(self, J=None) -> WeylWord:
        J = tuple(self.nodes if J is None else sorted(J))
        lam = tuple(1 if k in J else 0 for k in self.nodes)
        word = []
        while True:
            i = next((k for k in J if lam[k - 1] > 0), None)
            if i is None:
                break
            word.append(i)
            lam = self.simple_reflection(i, lam)
        return self.word(tuple(reversed(word)))

    def tau(self, J=None) -> dict[int, int]:
        """Diagram involution ``alpha_tau(i) = -w0^J(alpha_i)`` on J, identity off J."""
        J = set(self.nodes if J is None else J)
        w0 = self.longest_element(J)
        out = {}
        for i in self.nodes:
            if i not in J:
                out[i] = i
                continue
            img = tuple(-x for x in self.act(w0, self.simple_root(i)))
            j = next((k for k in J if self.simple_root(k) == img), None)
            if j is None:
                raise CartanError(f"-w0^J(alpha_{i}) is not simple; J={sorted(J)}")
            out[i] = j
        return out

    def positive_root_count(self, J) -> int:
        J = set(J)
        return sum(1 for b in self.positive_roots
                   if all(b[k - 1] == 0 for k in self.nodes if k not in J))

    # -- subdiagrams ---------------------------------------------------

    def is_connected(self, J) -> bool:
        J = set(J)
        if not J:
            return False
        start = min(J)
        seen = {start}
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in self.neighbours(i):
                if j in J and j not in seen:
                    seen.add(j)
                    queue.append(j)
        return seen == J

    def connected_subdiagrams(self) -> list[tuple[int, ...]]:
        out = []
        for size in range(1, self.rank + 1):
            for J in combinations(self.nodes, size):
                if self.is_connected(J):
                    out.append(J)
        return out

    def orthogonal(self, J, K) -> bool:
        """Disjoint with no edge between them."""
        J, K = set(J), set(K)
        return not (J & K) and all(self.a(j, k) == 0 for j in J for k in K)

    # -- serialisation -------------------------------------------------

    def report(self) -> dict:
        return {
            "type": self.letter,
            "rank": self.rank,
            "cartan": self.cartan.tolist(),
            "positive_roots": [list(b) for b in self.positive_roots],
            "w0": list(self.longest_element().word),
            "tau": {str(k): v for k, v in sorted(self.tau().items())},
        }


def build_cartan(letter: str, rank: int) -> CartanDatum:
    return CartanDatum(letter.upper(), int(rank))


def simple_reflection(datum: CartanDatum, i: int, lam: Weight) -> Weight:
    return datum.simple_reflection(i, lam)


def longest_element(datum: CartanDatum, J=None) -> WeylWord:
    return datum.longest_element(J)


def tau(datum: CartanDatum, J=None) -> dict[int, int]:
    return datum.tau(J)


def height(datum: CartanDatum, lam: Weight) -> int:
    return datum.height(lam)


# -- braid moves on words -------------------------------------------------

def apply_braid_move(datum: CartanDatum, word: tuple, move: tuple[str, int]) -> tuple:
    """Apply ``("commute", p)`` or ``("braid", p)`` at 0-based position ``p``."""
    kind, p = move
    w = list(word)
    if kind == "commute":
        a, b = w[p], w[p + 1]
        if a == b or datum.a(a, b) != 0:
            raise CartanError(f"cannot commute {a},{b} at {p}")
        w[p], w[p + 1] = b, a
    elif kind == "braid":
        a, b, c = w[p:p + 3]
        if a != c or datum.a(a, b) != -1:
            raise CartanError(f"no braid pattern at {p} in {word}")
        w[p:p + 3] = [b, a, b]
    else:
        raise CartanError(f"unknown move {kind!r}")
    return tuple(w)


def braid_neighbours(datum: CartanDatum, word: tuple):
    for p in range(len(word) - 1):
        a, b = word[p], word[p + 1]
        if a != b and datum.a(a, b) == 0:
            yield ("commute", p), apply_braid_move(datum, word, ("commute", p))
        if p + 2 < len(word) and word[p + 2] == a and datum.a(a, b) == -1:
            yield ("braid", p), apply_braid_move(datum, word, ("braid", p))


def _alternating(a: int, b: int, m: int) -> tuple[int, ...]:
    return tuple(a if k % 2 == 0 else b for k in range(m))


def matsumoto_connect(datum: CartanDatum, w1, w2) -> list[tuple[str, int]]:
    """Braid moves transforming reduced word ``w1`` into ``w2``.

    Constructive: if the first letters ``s != t`` differ, both are left
    descents, so the element has a reduced word beginning with the
    alternating word of length ``m_st``; connect each side to that form.
    """
    w1, w2 = tuple(w1), tuple(w2)
    e1, e2 = datum.word(w1), datum.word(w2)
    if not e1.same_element(e2):
        raise CartanError("words represent different Weyl group elements")
    if not (datum.is_reduced(w1) and datum.is_reduced(w2)):
        raise CartanError("matsumoto_connect needs reduced words")
    return _connect(datum, w1, w2)


def _shift(moves, k):
    return [(kind, p + k) for kind, p in moves]


def _connect(datum, w1, w2):
    if w1 == w2:
        return []
    s, t = w1[0], w2[0]
    if s == t:
        return _shift(_connect(datum, w1[1:], w2[1:]), 1)
    m = 2 if datum.a(s, t) == 0 else 3
    alt_s = _alternating(s, t, m)
    alt_t = _alternating(t, s, m)
    rest = datum.word(alt_s).matrix
    full = datum.word(w1).matrix
    # v = (alt)^{-1} w ; alt_s and alt_t are the same element
    inv = np.round(np.linalg.inv(rest)).astype(np.int64)
    v = inv @ full
    vword = datum.reduced_word(WeylWord((), v))
    mid_s = alt_s + vword
    mid_t = alt_t + vword
    moves = _connect(datum, w1, mid_s)
    moves.append(("commute" if m == 2 else "braid", 0))
    moves += _connect(datum, mid_t, w2)
    return moves


def reduced_words(datum: CartanDatum, w: WeylWord, limit: int | None = None) -> list[tuple[int, ...]]:
    """All reduced words of ``w`` (breadth-first over braid moves), sorted."""
    start = datum.reduced_word(w)
    seen = {start}
    queue = deque([start])
    while queue:
        word = queue.popleft()
        for _, nxt in braid_neighbours(datum, word):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
                if limit is not None and len(seen) >= limit:
                    return sorted(seen)
    return sorted(seen)
