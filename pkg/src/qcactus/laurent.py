"""Exact coefficient rings: Z[q, q^-1], its fraction field, and dense Laurent matrices.

``LaurentInt`` is a sparse exponent -> coefficient map.  ``RatFunc`` is a
normalised quotient of two of them.  ``LaurentMatrix`` stores a matrix of
Laurent polynomials as a numpy array of shape ``(ndeg, rows, cols)`` together
with the exponent of slice 0; it is the workhorse for module operators.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from . import backend

# --------------------------------------------------------------------------
# integer polynomial helpers (coefficient lists, index = degree)
# --------------------------------------------------------------------------


def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _content(p: list[int]) -> int:
    g = 0
    for c in p:
        g = gcd(g, c)
    return g


def _poly_divmod_exact(num: list[int], den: list[int]) -> list[int] | None:
    """Quotient of ``num / den`` over Z, or None if the division is not exact."""
    num = list(num)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    if not num:
        return []
    dl = len(den) - 1
    lead = den[-1]
    if len(num) - 1 < dl:
        return None
    quot = [0] * (len(num) - dl)
    for k in range(len(num) - 1, dl - 1, -1):
        c = num[k]
        if c == 0:
            continue
        qk, r = divmod(c, lead)
        if r:
            return None
        quot[k - dl] = qk
        for t in range(dl + 1):
            num[k - dl + t] -= qk * den[t]
    if any(num[:dl]):
        return None
    return quot


def _pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    while len(a) - 1 >= db and a:
        c = a[-1]
        shift = len(a) - 1 - db
        a = [lead * x for x in a]
        for t in range(db + 1):
            a[shift + t] -= c * b[t]
        _trim(a)
    return a


def _primitive(p: list[int]) -> list[int]:
    g = _content(p)
    if g == 0:
        return []
    out = [c // g for c in p]
    if out[-1] < 0:
        out = [-c for c in out]
    return out


def poly_gcd(a: list[int], b: list[int]) -> list[int]:
    """Gcd in Z[q]: gcd of contents times gcd of primitive parts, positive leading coefficient."""
    a, b = _trim(list(a)), _trim(list(b))
    if not a or not b:
        p = a or b
        return [-c for c in p] if p and p[-1] < 0 else p
    cont = gcd(_content(a), _content(b))
    a, b = _primitive(a), _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _pseudo_rem(a, b)
        a, b = b, _primitive(r)
    return [cont * c for c in a]


# --------------------------------------------------------------------------
# LaurentInt
# --------------------------------------------------------------------------


class LaurentInt:
    """Element of Z[q, q^-1] stored as ``{exponent: coefficient}`` with no zeros."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        elif isinstance(coeffs, int):
            coeffs = {0: coeffs} if coeffs else {}
        elif isinstance(coeffs, LaurentInt):
            coeffs = coeffs._c
        self._c = {int(e): int(c) for e, c in coeffs.items() if c}
        self._hash = None

    # constructors
    @classmethod
    def q(cls, e: int = 1, c: int = 1) -> "LaurentInt":
        return cls({e: c})

    @classmethod
    def from_poly(cls, coeffs: list[int], low: int = 0) -> "LaurentInt":
        return cls({low + k: c for k, c in enumerate(coeffs) if c})

    # structure
    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def min_deg(self) -> int:
        return min(self._c)

    def max_deg(self) -> int:
        return max(self._c)

    def to_poly(self) -> tuple[list[int], int]:
        """Coefficient list and the exponent of its first entry."""
        if not self._c:
            return [], 0
        lo, hi = self.min_deg(), self.max_deg()
        out = [0] * (hi - lo + 1)
        for e, c in self._c.items():
            out[e - lo] = c
        return out, lo

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def is_unit(self) -> bool:
        return len(self._c) == 1 and abs(next(iter(self._c.values()))) == 1

    # arithmetic
    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentInt):
            return other
        if isinstance(other, int):
            return LaurentInt(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._c)
        for e, c in other._c.items():
            out[e] = out.get(e, 0) + c
        return LaurentInt(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentInt({e: -c for e, c in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentInt(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial")
            (e, c), = self._c.items()
            if abs(c) != 1:
                raise ValueError("negative power of a non-unit")
            return LaurentInt({e * n: c ** (-n) if n % 2 else 1})
        out = LaurentInt(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> "LaurentInt":
        return LaurentInt({e + k: c for e, c in self._c.items()})

    def bar(self) -> "LaurentInt":
        """The involution q -> q^-1."""
        return LaurentInt({-e: c for e, c in self._c.items()})

    def evaluate(self, x):
        return sum(c * (Fraction(x) ** e) for e, c in self._c.items())

    def at_one(self) -> int:
        return sum(self._c.values())

    def divexact(self, other: "LaurentInt") -> "LaurentInt":
        """Exact quotient in Z[q, q^-1]; raises ArithmeticError if not exact."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return LaurentInt()
        a, alo = self.to_poly()
        b, blo = other.to_poly()
        quot = _poly_divmod_exact(a, b)
        if quot is None:
            raise ArithmeticError(f"{self} is not divisible by {other}")
        return LaurentInt.from_poly(quot, alo - blo)

    def divides(self, other: "LaurentInt") -> bool:
        other = self._coerce(other)
        if self.is_zero():
            return other.is_zero()
        try:
            other.divexact(self)
            return True
        except ArithmeticError:
            return False

    # comparison
    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentInt({dict(sorted(self._c.items()))})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, c in sorted(self._c.items(), reverse=True):
            if e == 0:
                mono = str(abs(c))
            else:
                qe = "q" if e == 1 else f"q^{e}"
                mono = qe if abs(c) == 1 else f"{abs(c)}*{qe}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, mono in parts[1:]:
            s += f" {sign} {mono}"
        return s


ZERO = LaurentInt()
ONE = LaurentInt(1)
Q = LaurentInt.q(1)
QINV = LaurentInt.q(-1)


def qpow(e: int, sign: int = 1) -> LaurentInt:
    return LaurentInt({e: sign})


@lru_cache(maxsize=None)
def quantum_integer(n: int) -> LaurentInt:
    """``[n] = (q^n - q^-n)/(q - q^-1)``, defined for all integers n."""
    if n == 0:
        return ZERO
    if n < 0:
        return -quantum_integer(-n)
    return LaurentInt({n - 1 - 2 * k: 1 for k in range(n)})


@lru_cache(maxsize=None)
def quantum_factorial(a: int) -> LaurentInt:
    if a < 0:
        raise ValueError(f"quantum factorial of negative integer {a}")
    out = ONE
    for k in range(1, a + 1):
        out = out * quantum_integer(k)
    return out


@lru_cache(maxsize=None)
def quantum_binomial(n: int, k: int) -> LaurentInt:
    if k < 0 or k > n:
        return ZERO
    return quantum_factorial(n).divexact(quantum_factorial(k) * quantum_factorial(n - k))


def laurent_gcd(a: LaurentInt, b: LaurentInt) -> LaurentInt:
    """Gcd up to units, normalised to a polynomial with nonzero constant term and positive lead."""
    if a.is_zero() and b.is_zero():
        return ZERO
    pa, _ = a.to_poly()
    pb, _ = b.to_poly()
    g = poly_gcd(pa, pb)
    return LaurentInt.from_poly(g, 0)


# --------------------------------------------------------------------------
# RatFunc
# --------------------------------------------------------------------------


class RatFunc:
    """Element of Q(q) as ``num/den`` with Laurent numerator and denominator.

    Canonical form: the denominator is a polynomial with nonzero constant
    term and positive leading coefficient, numerator and denominator share
    no common factor (gcd in Z[q] including contents).
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        num = LaurentInt(num) if not isinstance(num, LaurentInt) else num
        den = LaurentInt(den) if not isinstance(den, LaurentInt) else den
        if den.is_zero():
            raise ZeroDivisionError("RatFunc with zero denominator")
        if num.is_zero():
            self.num, self.den = ZERO, ONE
            return
        # move monomial factors into the numerator
        shift = den.min_deg()
        den = den.shift(-shift)
        num = num.shift(-shift)
        g = laurent_gcd(num, den)
        if not (g == ONE):
            num = num.divexact(g)
            den = den.divexact(g)
        if den.coeffs[den.max_deg()] < 0:
            num, den = -num, -den
        self.num, self.den = num, den

    def is_zero(self):
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den == ONE

    def as_laurent(self) -> LaurentInt:
        if not self.is_laurent():
            raise ArithmeticError(f"{self} is not a Laurent polynomial")
        return self.num

    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (LaurentInt, int)):
            return RatFunc(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("RatFunc division by zero")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self.num!s}, {self.den!s})"

    def __str__(self):
        if self.is_laurent():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def signed_monomial(self) -> tuple[int, int] | None:
        """``(sign, e)`` if this equals ``sign * q^e``, else None."""
        if self.is_laurent() and self.num.is_unit():
            (e, c), = self.num.coeffs.items()
            return c, e
        return None


# --------------------------------------------------------------------------
# fraction-free elimination over Z[q, q^-1]
# --------------------------------------------------------------------------


def bareiss_rref(rows: list[list[LaurentInt]]):
    """Fraction-free Gauss-Jordan elimination (Bareiss with back-elimination).

    Returns ``(U, pivots, det)`` where ``U`` is the reduced matrix in which
    every pivot entry equals ``det`` (the last leading principal pivot) and
    all other entries of pivot columns vanish.  All divisions are exact.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    prev = ONE
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        p = next((k for k in range(r, nrows) if not m[k][c].is_zero()), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        for k in range(nrows):
            if k == r:
                continue
            f = m[k][c]
            if f.is_zero():
                m[k] = [(x * piv).divexact(prev) for x in m[k]]
            else:
                m[k] = [(x * piv - f * y).divexact(prev) for x, y in zip(m[k], m[r])]
        prev = piv
        pivots.append(c)
        r += 1
    return m[:r], pivots, prev


def laurent_det(grid: list[list[LaurentInt]]) -> LaurentInt:
    """Determinant by fraction-free elimination (Bareiss), tracking row swaps."""
    m = [list(r) for r in grid]
    n = len(m)
    if n == 0:
        return ONE
    prev = ONE
    sign = 1
    for c in range(n):
        p = next((k for k in range(c, n) if not m[k][c].is_zero()), None)
        if p is None:
            return ZERO
        if p != c:
            m[c], m[p] = m[p], m[c]
            sign = -sign
        piv = m[c][c]
        for k in range(c + 1, n):
            f = m[k][c]
            m[k] = [(x * piv - f * y).divexact(prev) for x, y in zip(m[k], m[c])]
        prev = piv
    return prev * sign


def laurent_rank(rows: list[list[LaurentInt]]) -> int:
    if not rows or not rows[0]:
        return 0
    _, piv, _ = bareiss_rref(rows)
    return len(piv)


def primitive_vector(vec: list[LaurentInt]) -> list[LaurentInt]:
    """Divide out the gcd of the entries and fix the sign/shift canonically."""
    nz = [x for x in vec if not x.is_zero()]
    if not nz:
        return list(vec)
    g = nz[0]
    for x in nz:
        g = laurent_gcd(g, x)
    out = [x.divexact(g) if not x.is_zero() else x for x in vec]
    lead = next(x for x in out if not x.is_zero())
    shift = -lead.min_deg()
    sign = 1 if lead.coeffs[lead.min_deg()] > 0 else -1
    return [x.shift(shift) * sign for x in out]


def laurent_kernel(rows: list[list[LaurentInt]], ncols: int | None = None) -> list[list[LaurentInt]]:
    """A basis of the right kernel over Q(q), with Laurent-integral primitive vectors."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[ONE if k == j else ZERO for k in range(ncols)] for j in range(ncols)]
    U, pivots, d = bareiss_rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [ZERO] * ncols
        vec[f] = d
        for r, p in enumerate(pivots):
            vec[p] = -U[r][f]
        basis.append(primitive_vector(vec))
    return basis


# --------------------------------------------------------------------------
# dense Laurent matrices
# --------------------------------------------------------------------------

_INT64_SAFE = 2 ** 62


class LaurentMatrix:
    """Matrix over Z[q, q^-1] stored as ``data[d, r, c]`` = coefficient of ``q^(offset+d)``."""

    __slots__ = ("data", "offset")

    def __init__(self, data: np.ndarray, offset: int = 0):
        if data.ndim != 3:
            raise ValueError("LaurentMatrix data must be 3-dimensional")
        self.data = data
        self.offset = int(offset)
        self._normalise()

    def _normalise(self):
        d = self.data
        if d.shape[0] == 0:
            return
        nz = np.flatnonzero(np.any(d.reshape(d.shape[0], -1) != 0, axis=1))
        if len(nz) == 0:
            self.data = d[:0]
            self.offset = 0
            return
        lo, hi = int(nz[0]), int(nz[-1])
        if lo or hi != d.shape[0] - 1:
            self.data = d[lo:hi + 1]
            self.offset += lo
        if self.data.dtype == object and self.max_abs() < _INT64_SAFE:
            self.data = self.data.astype(np.int64)

    # constructors
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "LaurentMatrix":
        return cls(np.zeros((0, rows, cols), dtype=np.int64), 0)

    @classmethod
    def identity(cls, n: int) -> "LaurentMatrix":
        return cls(np.eye(n, dtype=np.int64)[None, :, :], 0)

    @classmethod
    def diagonal_monomials(cls, exps, coeff=None) -> "LaurentMatrix":
        """Diagonal matrix with entries ``coeff[k] * q^exps[k]``."""
        exps = np.asarray(exps, dtype=np.int64)
        n = len(exps)
        if n == 0:
            return cls.zeros(0, 0)
        lo, hi = int(exps.min()), int(exps.max())
        data = np.zeros((hi - lo + 1, n, n), dtype=np.int64)
        c = np.ones(n, dtype=np.int64) if coeff is None else np.asarray(coeff, dtype=np.int64)
        data[exps - lo, np.arange(n), np.arange(n)] = c
        return cls(data, lo)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries) -> "LaurentMatrix":
        """``entries``: iterable of ``(r, c, LaurentInt)``."""
        entries = [(r, c, x) for r, c, x in entries if not x.is_zero()]
        if not entries:
            return cls.zeros(rows, cols)
        lo = min(x.min_deg() for _, _, x in entries)
        hi = max(x.max_deg() for _, _, x in entries)
        big = any(abs(v) >= _INT64_SAFE for _, _, x in entries for v in x.coeffs.values())
        data = np.zeros((hi - lo + 1, rows, cols), dtype=object if big else np.int64)
        if big:
            data[...] = 0
        for r, c, x in entries:
            for e, v in x.coeffs.items():
                data[e - lo, r, c] += v
        return cls(data, lo)

    @classmethod
    def from_grid(cls, grid: list[list[LaurentInt]]) -> "LaurentMatrix":
        rows = len(grid)
        cols = len(grid[0]) if rows else 0
        return cls.from_entries(rows, cols, ((r, c, grid[r][c]) for r in range(rows) for c in range(cols)))

    # shape
    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape[1], self.data.shape[2]

    @property
    def ndeg(self) -> int:
        return self.data.shape[0]

    def is_zero(self) -> bool:
        return self.data.shape[0] == 0

    def max_abs(self) -> int:
        if self.data.size == 0:
            return 0
        if self.data.dtype == object:
            return int(max(abs(int(v)) for v in self.data.flat))
        return int(np.abs(self.data).max())

    def entry(self, r: int, c: int) -> LaurentInt:
        col = self.data[:, r, c]
        return LaurentInt({self.offset + d: int(v) for d, v in enumerate(col) if v})

    def to_grid(self) -> list[list[LaurentInt]]:
        rows, cols = self.shape
        return [[self.entry(r, c) for c in range(cols)] for r in range(rows)]

    def nonzero_positions(self) -> list[tuple[int, int]]:
        if self.is_zero():
            return []
        mask = np.any(self.data != 0, axis=0)
        return [(int(r), int(c)) for r, c in zip(*np.nonzero(mask))]

    # arithmetic
    def _promote(self, other):
        if self.data.dtype == other.data.dtype:
            return self.data, other.data
        return self.data.astype(object), other.data.astype(object)

    def __add__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        a, b = self._promote(other)
        lo = min(self.offset, other.offset)
        hi = max(self.offset + self.ndeg, other.offset + other.ndeg)
        if a.dtype != object and max(self.max_abs(), other.max_abs()) >= _INT64_SAFE // 2:
            a, b = a.astype(object), b.astype(object)
        out = np.zeros((hi - lo,) + self.shape, dtype=a.dtype)
        if out.dtype == object:
            out[...] = 0
        out[self.offset - lo:self.offset - lo + self.ndeg] += a
        out[other.offset - lo:other.offset - lo + other.ndeg] += b
        return LaurentMatrix(out, lo)

    def __neg__(self):
        return LaurentMatrix(-self.data, self.offset)

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        rows, cols = self.shape[0], other.shape[1]
        if self.is_zero() or other.is_zero():
            return LaurentMatrix.zeros(rows, cols)
        bound = self.max_abs() * other.max_abs() * min(self.ndeg, other.ndeg) * max(1, self.shape[1])
        a, b = self.data, other.data
        if bound >= _INT64_SAFE or a.dtype == object or b.dtype == object:
            out = _laurent_matmul_object(a.astype(object), b.astype(object))
        else:
            out = backend.laurent_matmul(np.ascontiguousarray(a), np.ascontiguousarray(b))
        return LaurentMatrix(out, self.offset + other.offset)

    def scale(self, x: LaurentInt) -> "LaurentMatrix":
        if x.is_zero() or self.is_zero():
            return LaurentMatrix.zeros(*self.shape)
        out = LaurentMatrix.zeros(*self.shape)
        for e, c in x.items():
            out = out + LaurentMatrix(self.data * c, self.offset + e)
        return out

    def shift(self, e: int) -> "LaurentMatrix":
        return LaurentMatrix(self.data, self.offset + e)

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return (self.offset == other.offset and self.ndeg == other.ndeg
                and bool(np.array_equal(self.data, other.data)))

    __hash__ = None

    def transpose(self) -> "LaurentMatrix":
        return LaurentMatrix(np.ascontiguousarray(self.data.transpose(0, 2, 1)), self.offset)

    def submatrix(self, rows, cols) -> "LaurentMatrix":
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        return LaurentMatrix(self.data[:, rows][:, :, cols], self.offset)

    def columns(self, cols) -> "LaurentMatrix":
        cols = np.asarray(cols, dtype=np.int64)
        return LaurentMatrix(self.data[:, :, cols], self.offset)

    def restrict_columns(self, mask) -> "LaurentMatrix":
        """Zero every column outside the boolean ``mask`` (shape preserved)."""
        data = self.data * np.asarray(mask, dtype=self.data.dtype)[None, None, :]
        return LaurentMatrix(data, self.offset)

    def at_one(self) -> np.ndarray:
        return self.data.sum(axis=0) if not self.is_zero() else np.zeros(self.shape, dtype=np.int64)

    def bar(self) -> "LaurentMatrix":
        return LaurentMatrix(self.data[::-1].copy(), -(self.offset + self.ndeg - 1))

    def divide_by_monic(self, poly: LaurentInt) -> "LaurentMatrix":
        """Exact entrywise division by a Laurent polynomial whose extreme coefficients are +-1.

        Vectorised long division along the degree axis; raises
        ArithmeticError when some entry is not divisible.
        """
        if self.is_zero():
            return self
        coeffs, lo = poly.to_poly()
        if abs(coeffs[-1]) != 1:
            raise ValueError("divide_by_monic needs a unit leading coefficient")
        dl = len(coeffs) - 1
        num = self.data.astype(object) if self.data.dtype == object else self.data.copy()
        nd = num.shape[0]
        if nd - 1 < dl:
            raise ArithmeticError("entry degree smaller than divisor degree")
        lead = coeffs[-1]
        quot = np.zeros((nd - dl,) + self.shape, dtype=num.dtype)
        for k in range(nd - 1, dl - 1, -1):
            qk = num[k] * lead
            quot[k - dl] = qk
            for t, ct in enumerate(coeffs):
                if ct:
                    num[k - dl + t] = num[k - dl + t] - qk * ct
        if np.any(num[:dl] != 0):
            raise ArithmeticError("entrywise division is not exact")
        return LaurentMatrix(quot, self.offset - lo)

    def __repr__(self):
        return f"LaurentMatrix(shape={self.shape}, degrees={self.offset}..{self.offset + self.ndeg - 1})"


def _laurent_matmul_object(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    na, nb = a.shape[0], b.shape[0]
    out = np.zeros((na + nb - 1, a.shape[1], b.shape[2]), dtype=object)
    out[...] = 0
    for i in range(na):
        for j in range(nb):
            out[i + j] = out[i + j] + a[i].dot(b[j])
    return out


def scalar_ratio(a: LaurentMatrix, b: LaurentMatrix) -> RatFunc | None:
    """The scalar ``c`` with ``a = c * b`` over Q(q), or None if none exists.

    Two zero matrices give None (no well-defined ratio).
    """
    if a.shape != b.shape:
        return None
    if b.is_zero():
        return None
    pos = b.nonzero_positions()
    r, c = pos[0]
    ratio = RatFunc(a.entry(r, c), b.entry(r, c))
    if a.scale(ratio.den) == b.scale(ratio.num):
        return ratio
    return None
