"""Scalar backends and the dense 10x10 matrix carrier.

Two backends share one matrix type:

* exact: entries are :class:`CRational` (Gaussian rationals built on
  ``gmpy2.mpq``); equality is decidable and carries no tolerance.
* float: entries are ``complex128``; every comparison takes a tolerance.

Mixing the two promotes to float.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

import numpy as np
from gmpy2 import mpq

DIM = 10


class CRational:
    """Complex number with arbitrary-precision rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = mpq(re)
        self.im = mpq(im)

    @classmethod
    def coerce(cls, x) -> "CRational":
        if isinstance(x, CRational):
            return x
        if isinstance(x, (int, Fraction, Rational)) or type(x).__name__ == "mpq":
            return cls(x, 0)
        raise TypeError(f"cannot represent {x!r} exactly")

    def _other(self, other):
        if isinstance(other, CRational):
            return other
        if isinstance(other, (int, Fraction)) or type(other).__name__ == "mpq":
            return CRational(other, 0)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return complex(self) + other
        return CRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return complex(self) - other
        return CRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return other - complex(self)
        return CRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return complex(self) * other
        if not self or not o:
            return ZERO
        return CRational(self.re * o.re - self.im * o.im,
                         self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return complex(self) / other
        d = o.re * o.re + o.im * o.im
        if not d:
            raise ZeroDivisionError("CRational division by zero")
        return CRational((self.re * o.re + self.im * o.im) / d,
                         (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return other / complex(self)
        return o / self

    def __neg__(self):
        return CRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return complex(self) ** n
        if n < 0:
            return ONE / (self ** -n)
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            try:
                return complex(self) == complex(other)
            except TypeError:
                return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return math.hypot(float(self.re), float(self.im))

    def conjugate(self) -> "CRational":
        return CRational(self.re, -self.im)

    @property
    def real(self) -> Fraction:
        return Fraction(int(self.re.numerator), int(self.re.denominator))

    @property
    def imag(self) -> Fraction:
        return Fraction(int(self.im.numerator), int(self.im.denominator))

    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        if not self.im:
            return f"CRational({self.re})"
        return f"CRational({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


ZERO = CRational(0)
ONE = CRational(1)
I = CRational(0, 1)


def is_exact(x) -> bool:
    return isinstance(x, (CRational, int, Fraction)) or type(x).__name__ == "mpq"


def to_exact(x) -> CRational:
    return CRational.coerce(x)


def rational_sqrt(q) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sqrt_value(q):
    """Square root that stays exact (Fraction) whenever it can."""
    if is_exact(q) and not isinstance(q, CRational):
        r = rational_sqrt(q)
        if r is not None:
            return r
    return math.sqrt(float(q))


def as_fraction(x) -> Fraction:
    if isinstance(x, CRational):
        if x.im:
            raise ValueError(f"{x} is not real")
        return x.real
    return Fraction(x)


def _exact_array(values) -> np.ndarray:
    out = np.empty(np.shape(values), dtype=object)
    for idx, v in np.ndenumerate(np.asarray(values, dtype=object)):
        out[idx] = CRational.coerce(v)
    return out


def make_vector(values) -> np.ndarray:
    """Column vector on the exact backend if possible, else complex128."""
    if all(is_exact(v) for v in values):
        return _exact_array(list(values))
    return np.array([complex(v) for v in values], dtype=np.complex128)


def vector_is_exact(v: np.ndarray) -> bool:
    return v.dtype == object


def vector_to_float(v: np.ndarray) -> np.ndarray:
    if v.dtype == object:
        return np.array([complex(x) for x in v], dtype=np.complex128)
    return v


def conj_vector(v: np.ndarray) -> np.ndarray:
    if v.dtype == object:
        return np.array([x.conjugate() for x in v], dtype=object)
    return np.conj(v)


def vector_is_zero(v: np.ndarray, tol: float | None = None) -> bool:
    if v.dtype == object and tol is None:
        return not any(v)
    return float(np.max(np.abs(vector_to_float(v)))) <= (tol or 0.0)


class Mat10:
    """Dense 10x10 matrix over one scalar backend.

    Construct from a nested sequence or an ndarray.  Entries that are all
    exactly representable stay exact; anything else promotes the whole
    matrix to complex128.
    """

    __slots__ = ("a",)

    def __init__(self, data):
        if isinstance(data, Mat10):
            self.a = data.a
            return
        if isinstance(data, np.ndarray) and data.dtype.kind in "iu":
            data = data.astype(object)
        arr = data if isinstance(data, np.ndarray) else np.array(data, dtype=object)
        if arr.shape != (DIM, DIM):
            raise ValueError(f"Mat10 needs shape (10, 10), got {arr.shape}")
        if arr.dtype == object and all(is_exact(x) for x in arr.flat):
            self.a = _exact_array(arr)
        elif arr.dtype == object:
            self.a = np.array([[complex(x) for x in row] for row in arr],
                              dtype=np.complex128)
        else:
            self.a = arr.astype(np.complex128)

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "Mat10":
        m = cls.__new__(cls)
        m.a = arr
        return m

    @classmethod
    def zeros(cls, exact: bool = True) -> "Mat10":
        if exact:
            arr = np.empty((DIM, DIM), dtype=object)
            arr.fill(ZERO)
            return cls._wrap(arr)
        return cls._wrap(np.zeros((DIM, DIM), dtype=np.complex128))

    @classmethod
    def identity(cls, exact: bool = True) -> "Mat10":
        m = cls.zeros(exact)
        for i in range(DIM):
            m.a[i, i] = ONE if exact else 1.0
        return m

    @classmethod
    def outer(cls, col: np.ndarray, row: np.ndarray) -> "Mat10":
        if col.dtype == object and row.dtype == object:
            return cls._wrap(np.multiply.outer(col, row))
        return cls._wrap(np.multiply.outer(vector_to_float(col), vector_to_float(row)))

    @property
    def exact(self) -> bool:
        return self.a.dtype == object

    def to_float(self) -> "Mat10":
        if not self.exact:
            return self
        return Mat10._wrap(np.array([[complex(x) for x in row] for row in self.a],
                                    dtype=np.complex128))

    def _pair(self, other: "Mat10"):
        if self.exact and other.exact:
            return self.a, other.a
        return self.to_float().a, other.to_float().a

    def __getitem__(self, key):
        return self.a[key]

    def __add__(self, other):
        if not isinstance(other, Mat10):
            return NotImplemented
        x, y = self._pair(other)
        return Mat10._wrap(x + y)

    def __sub__(self, other):
        if not isinstance(other, Mat10):
            return NotImplemented
        x, y = self._pair(other)
        return Mat10._wrap(x - y)

    def __neg__(self):
        return Mat10._wrap(-self.a)

    def __matmul__(self, other):
        if isinstance(other, Mat10):
            x, y = self._pair(other)
            return Mat10._wrap(x @ y)
        if isinstance(other, np.ndarray):
            if self.exact and other.dtype == object:
                return self.a @ other
            return self.to_float().a @ vector_to_float(other)
        return NotImplemented

    def __rmatmul__(self, other):
        # row covector times matrix
        if isinstance(other, np.ndarray):
            if self.exact and other.dtype == object:
                return other @ self.a
            return vector_to_float(other) @ self.to_float().a
        return NotImplemented

    def __mul__(self, scalar):
        if isinstance(scalar, Mat10):
            raise TypeError("use @ for matrix products")
        if self.exact and is_exact(scalar):
            s = to_exact(scalar)
            return Mat10._wrap(self.a * s)
        return Mat10._wrap(self.to_float().a * complex(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if self.exact and is_exact(scalar):
            return self * (ONE / to_exact(scalar))
        return self * (1.0 / complex(scalar))

    def __pow__(self, n: int):
        out = Mat10.identity(self.exact)
        for _ in range(n):
            out = out @ self
        return out

    def __eq__(self, other):
        if not isinstance(other, Mat10):
            return NotImplemented
        x, y = self._pair(other)
        return bool(np.all(x == y))

    __hash__ = None

    @property
    def H(self) -> "Mat10":
        """Conjugate transpose."""
        if self.exact:
            return Mat10._wrap(np.array([[x.conjugate() for x in row] for row in self.a.T],
                                        dtype=object))
        return Mat10._wrap(self.a.conj().T.copy())

    def trace(self):
        t = self.a[0, 0]
        for i in range(1, DIM):
            t = t + self.a[i, i]
        return t

    def commutator(self, other: "Mat10") -> "Mat10":
        return self @ other - other @ self

    def max_abs(self) -> float:
        if self.exact:
            return max((abs(x) for x in self.a.flat if x), default=0.0)
        return float(np.max(np.abs(self.a)))

    def is_zero(self, tol: float | None = None) -> bool:
        if self.exact and tol is None:
            return not any(self.a.flat)
        return self.max_abs() <= (tol or 0.0)

    def allclose(self, other: "Mat10", tol: float) -> bool:
        return (self - other).max_abs() <= tol

    def nonzero_entries(self) -> dict[tuple[int, int], object]:
        """1-based positions of nonzero entries (exact backend)."""
        return {(i + 1, j + 1): self.a[i, j]
                for i in range(DIM) for j in range(DIM) if self.a[i, j]}

    def is_hermitian(self, tol: float | None = None) -> bool:
        return (self - self.H).is_zero(tol)

    def rank(self, tol: float = 1e-9) -> int:
        if self.exact:
            return bareiss(self.a)[0]
        return int(np.linalg.matrix_rank(self.a, tol=tol))

    def det(self):
        if self.exact:
            return bareiss(self.a)[1]
        return complex(np.linalg.det(self.a))

    def nullspace(self, tol: float = 1e-9) -> list[np.ndarray]:
        """Basis of the right kernel."""
        if self.exact:
            return _exact_nullspace(self.a)
        _, s, vh = np.linalg.svd(self.a)
        return [vh[i].conj() for i in range(DIM) if i >= len(s) or s[i] <= tol]

    def __repr__(self):
        kind = "exact" if self.exact else "float"
        return f"Mat10<{kind}>({self.nonzero_entries() if self.exact else self.a!r})"


def _row_to_gaussian_integers(row) -> tuple[list[CRational], int]:
    den = 1
    for x in row:
        den = math.lcm(den, int(x.re.denominator), int(x.im.denominator))
    return [x * den for x in row], den


def bareiss(a: np.ndarray):
    """Fraction-free elimination over Z[i].

    Rows are first scaled to Gaussian integers; every division performed
    afterwards is exact.  Returns (rank, determinant); the determinant is
    only meaningful for square input.
    """
    rows, scale = [], mpq(1)
    for r in a:
        ints, den = _row_to_gaussian_integers(list(r))
        rows.append(ints)
        scale *= den
    n, m = len(rows), len(rows[0])
    prev = ONE
    sign = 1
    rank = 0
    for c in range(m):
        piv = next((i for i in range(rank, n) if rows[i][c]), None)
        if piv is None:
            continue
        if piv != rank:
            rows[piv], rows[rank] = rows[rank], rows[piv]
            sign = -sign
        pr = rows[rank]
        for i in range(rank + 1, n):
            ri = rows[i]
            lead = ri[c]
            for j in range(c + 1, m):
                ri[j] = (pr[c] * ri[j] - lead * pr[j]) / prev
            ri[c] = ZERO
        prev = pr[c]
        rank += 1
    if n == m and rank == n:
        det = prev * sign / CRational(scale)
    else:
        det = ZERO
    return rank, det


def rref(a: np.ndarray):
    """Reduced row echelon form over Q(i); returns (rows, pivot_columns)."""
    rows = [list(r) for r in a]
    n, m = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if rows[i][c]), None)
        if piv is None:
            continue
        rows[piv], rows[r] = rows[r], rows[piv]
        inv = ONE / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return rows, pivots


def _exact_nullspace(a: np.ndarray) -> list[np.ndarray]:
    rows, pivots = rref(a)
    m = a.shape[1]
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for f in free:
        v = np.empty(m, dtype=object)
        v.fill(ZERO)
        v[f] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][f]
        basis.append(v)
    return basis
