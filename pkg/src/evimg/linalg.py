"""Exact rational matrices and polynomials.

Everything here works over Q with arbitrary-precision integers; there is no
floating point anywhere.  Entries are ``gmpy2.mpq`` values, which are always
stored in lowest terms with a positive denominator.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2

Rat = gmpy2.mpq

ZERO = Rat(0)
ONE = Rat(1)


def rat(value) -> gmpy2.mpq:
    """Coerce ints, Fractions, mpq values and "p/q" strings to a rational."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, type(ZERO)):
        return value
    if isinstance(value, int):
        return Rat(value)
    if isinstance(value, Fraction):
        return Rat(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(c not in "0123456789-+/" for c in text):
            raise ValueError(f"not a rational literal: {value!r}")
        return Rat(text)
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def rat_str(q) -> str:
    """Serialize as "p/q" (or "p" for integers)."""
    return str(Rat(q))


class RatMatrix:
    """An immutable exact matrix with explicit shape (zero sizes allowed)."""

    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(rat(x) for x in row) for row in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(data[0])
        for row in data:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
        self.rows = data
        self.nrows = len(data)
        self.ncols = ncols
        self._hash = None

    @classmethod
    def _raw(cls, rows: tuple, nrows: int, ncols: int) -> "RatMatrix":
        m = cls.__new__(cls)
        m.rows = rows
        m.nrows = nrows
        m.ncols = ncols
        m._hash = None
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RatMatrix":
        return cls._raw(tuple((ZERO,) * ncols for _ in range(nrows)), nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls._raw(
            tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), n, n
        )

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "RatMatrix":
        cols = [tuple(rat(x) for x in c) for c in columns]
        return cls._raw(tuple(tuple(c[i] for c in cols) for i in range(nrows)), nrows, len(cols))

    @classmethod
    def diagonal(cls, entries: Sequence) -> "RatMatrix":
        n = len(entries)
        return cls(
            [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], ncols=n
        )

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix._raw(
            tuple(tuple(row[j] for row in self.rows) for j in range(self.ncols)),
            self.ncols,
            self.nrows,
        )

    T = property(transpose)

    def select_rows(self, indices: Sequence[int]) -> "RatMatrix":
        return RatMatrix._raw(tuple(self.rows[i] for i in indices), len(indices), self.ncols)

    def hstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.nrows != other.nrows:
            raise ValueError("row counts differ")
        return RatMatrix._raw(
            tuple(a + b for a, b in zip(self.rows, other.rows)),
            self.nrows,
            self.ncols + other.ncols,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nrows, self.ncols, self.rows))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(rat_str(x) for x in row) + "]" for row in self.rows)
        return f"RatMatrix([{body}], {self.nrows}x{self.ncols})"

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RatMatrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.nrows,
            self.ncols,
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RatMatrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.nrows,
            self.ncols,
        )

    def __neg__(self) -> "RatMatrix":
        return self.scale(-ONE)

    def scale(self, c) -> "RatMatrix":
        c = rat(c)
        return RatMatrix._raw(
            tuple(tuple(c * a for a in r) for r in self.rows), self.nrows, self.ncols
        )

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.transpose().rows
        rows = tuple(
            tuple(sum((a * b for a, b in zip(r, c)), ZERO) for c in cols) for r in self.rows
        )
        return RatMatrix._raw(rows, self.nrows, other.ncols)

    def apply(self, vector: Sequence) -> tuple:
        if len(vector) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * b for a, b in zip(r, vector)), ZERO) for r in self.rows)

    def __pow__(self, n: int) -> "RatMatrix":
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        if n < 0:
            return inverse(self) ** (-n)
        result = RatMatrix.identity(self.nrows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result

    def trace(self):
        return sum((self.rows[i][i] for i in range(min(self.shape))), ZERO)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)


# --- elimination ---------------------------------------------------------


def rref(m: RatMatrix) -> tuple[RatMatrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    rows = [list(r) for r in m.rows]
    pivots = []
    r = 0
    for c in range(m.ncols):
        if r == m.nrows:
            break
        p = next((i for i in range(r, m.nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m.nrows):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return RatMatrix._raw(tuple(tuple(row) for row in rows), m.nrows, m.ncols), tuple(pivots)


def rank(m: RatMatrix) -> int:
    return len(rref(m)[1])


def det(m: RatMatrix):
    if not m.is_square:
        raise ValueError("determinant of a non-square matrix")
    rows = [list(r) for r in m.rows]
    n = m.nrows
    result = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return ZERO
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            result = -result
        pivot = rows[c][c]
        result *= pivot
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                factor = rows[i][c] / pivot
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[c])]
    return result


class SingularMatrixError(ValueError):
    pass


def inverse(m: RatMatrix) -> RatMatrix:
    """Inverse by Gauss-Jordan elimination on [m | I]."""
    if not m.is_square:
        raise ValueError("inverse of a non-square matrix")
    n = m.nrows
    reduced, pivots = rref(m.hstack(RatMatrix.identity(n)))
    if pivots[:n] != tuple(range(n)) or (n and len(pivots) < n):
        raise SingularMatrixError("matrix is singular")
    return RatMatrix._raw(tuple(row[n:] for row in reduced.rows), n, n)


def solve(a: RatMatrix, b: RatMatrix) -> RatMatrix | None:
    """Some X with a @ X == b, or None when the system is inconsistent."""
    if a.nrows != b.nrows:
        raise ValueError("row counts differ")
    reduced, pivots = rref(a.hstack(b))
    if any(p >= a.ncols for p in pivots):
        return None
    x = [[ZERO] * b.ncols for _ in range(a.ncols)]
    for i, p in enumerate(pivots):
        x[p] = list(reduced.rows[i][a.ncols:])
    return RatMatrix._raw(tuple(tuple(r) for r in x), a.ncols, b.ncols)


# --- subspaces -------------------------------------------------------------


class SubspaceBasis:
    """A subspace of Q^n stored as the nonzero rows of a reduced echelon form.

    Two bases compare equal exactly when they span the same subspace.
    """

    __slots__ = ("ambient", "vectors", "pivots")

    def __init__(self, ambient: int, vectors: Sequence[Sequence] = ()):
        vectors = [tuple(rat(x) for x in v) for v in vectors]
        if any(len(v) != ambient for v in vectors):
            raise ValueError("vector length does not match ambient dimension")
        if vectors:
            reduced, pivots = rref(RatMatrix(vectors, ncols=ambient))
            self.vectors = reduced.rows[: len(pivots)]
            self.pivots = pivots
        else:
            self.vectors = ()
            self.pivots = ()
        self.ambient = ambient

    @classmethod
    def column_space(cls, m: RatMatrix) -> "SubspaceBasis":
        return cls(m.nrows, m.columns())

    @classmethod
    def full(cls, n: int) -> "SubspaceBasis":
        return cls(n, RatMatrix.identity(n).rows)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def as_columns(self) -> RatMatrix:
        """The basis vectors as the columns of an ambient x dim matrix."""
        return RatMatrix.from_columns(self.vectors, self.ambient)

    def contains(self, vector: Sequence) -> bool:
        v = [rat(x) for x in vector]
        for row, p in zip(self.vectors, self.pivots):
            if v[p] != 0:
                c = v[p]
                v = [a - c * b for a, b in zip(v, row)]
        return all(x == 0 for x in v)

    def issubspace(self, other: "SubspaceBasis") -> bool:
        return all(other.contains(v) for v in self.vectors)

    def __add__(self, other: "SubspaceBasis") -> "SubspaceBasis":
        return SubspaceBasis(self.ambient, self.vectors + other.vectors)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubspaceBasis):
            return NotImplemented
        return self.ambient == other.ambient and self.vectors == other.vectors

    def __hash__(self) -> int:
        return hash((self.ambient, self.vectors))

    def __repr__(self) -> str:
        vecs = ", ".join("(" + ", ".join(rat_str(x) for x in v) + ")" for v in self.vectors)
        return f"SubspaceBasis({self.ambient}, [{vecs}])"


def image_basis(m: RatMatrix) -> SubspaceBasis:
    return SubspaceBasis.column_space(m)


def kernel_basis(m: RatMatrix) -> SubspaceBasis:
    reduced, pivots = rref(m)
    free = [j for j in range(m.ncols) if j not in pivots]
    vectors = []
    for f in free:
        v = [ZERO] * m.ncols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -reduced.rows[i][f]
        vectors.append(v)
    return SubspaceBasis(m.ncols, vectors)


# --- polynomials -------------------------------------------------------------


class RatPoly:
    """A polynomial over Q, coefficients stored lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [rat(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def t(cls) -> "RatPoly":
        return cls([0, 1])

    @classmethod
    def const(cls, c) -> "RatPoly":
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self):
        return self.coeffs[-1] if self.coeffs else ZERO

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else ZERO

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, type(ZERO), Fraction)):
            other = RatPoly.const(other)
        if not isinstance(other, RatPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RatPoly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            s = rat_str(c)
            terms.append(s if i == 0 else f"{s}*t" if i == 1 else f"{s}*t^{i}")
        return " + ".join(terms)

    @staticmethod
    def _coerce(other) -> "RatPoly":
        return other if isinstance(other, RatPoly) else RatPoly.const(other)

    def __add__(self, other) -> "RatPoly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPoly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __sub__(self, other) -> "RatPoly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPoly(self.coeff(i) - other.coeff(i) for i in range(n))

    def __rsub__(self, other) -> "RatPoly":
        return self._coerce(other) - self

    def __neg__(self) -> "RatPoly":
        return RatPoly(-c for c in self.coeffs)

    def __mul__(self, other) -> "RatPoly":
        if not isinstance(other, RatPoly):
            c = rat(other)
            return RatPoly(c * a for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return RatPoly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RatPoly":
        result = RatPoly.const(1)
        for _ in range(n):
            result = result * self
        return result

    def divmod(self, other: "RatPoly") -> tuple["RatPoly", "RatPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [ZERO] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.lead()
        for k in range(len(q) - 1, -1, -1):
            c = rem[k + len(other.coeffs) - 1] / lead
            q[k] = c
            if c != 0:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return RatPoly(q), RatPoly(rem)

    def __floordiv__(self, other: "RatPoly") -> "RatPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "RatPoly") -> "RatPoly":
        return self.divmod(other)[1]

    def monic(self) -> "RatPoly":
        if self.is_zero():
            return self
        return self * (ONE / self.lead())

    def __call__(self, x):
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_matrix(self, m: RatMatrix) -> RatMatrix:
        """Horner evaluation at a square matrix."""
        n = m.nrows
        acc = RatMatrix.zeros(n, n)
        ident = RatMatrix.identity(n)
        for c in reversed(self.coeffs):
            acc = acc @ m + ident.scale(c)
        return acc

    def t_valuation(self) -> int:
        """Multiplicity of t as a factor (0 for the zero polynomial)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return 0

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)


def poly_gcd(a: RatPoly, b: RatPoly) -> RatPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()
