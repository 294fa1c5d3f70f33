"""Exact scalars and dense linear algebra over a prime field or the rationals.

Matrices are plain numpy arrays: ``int64`` residues for small primes, object
arrays of ``gmpy2.mpq`` (or Python ints) otherwise.  Every function takes the
field explicitly and returns normalized arrays, so equality of maps is
``np.array_equal`` and never involves a tolerance.
"""

from __future__ import annotations

from fractions import Fraction

import gmpy2
import numpy as np

# residues below this bound keep n * p**2 inside int64 for any desk-scale n
_SMALL_PRIME = 46341


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return bool(gmpy2.is_prime(n))


class Field:
    """A prime field GF(p) (``p`` given) or the rationals (``p is None``)."""

    __slots__ = ("p", "dtype")

    def __init__(self, p: int | None = None):
        if p is not None:
            p = int(p)
            if not _is_prime(p):
                raise ValueError(f"GF({p}): modulus is not prime")
        self.p = p
        self.dtype = np.int64 if (p is not None and p < _SMALL_PRIME) else object

    # identity --------------------------------------------------------------

    @property
    def is_prime(self) -> bool:
        return self.p is not None

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"GF({self.p})" if self.p is not None else "QQ"

    @property
    def name(self) -> str:
        return repr(self)

    # scalars ---------------------------------------------------------------

    def scalar(self, x):
        """Coerce an int, Fraction, mpq or ``"p/q"`` string into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p is None:
            return gmpy2.mpq(x.numerator, x.denominator) if isinstance(x, Fraction) else gmpy2.mpq(x)
        if isinstance(x, (Fraction,)) or type(x).__name__ == "mpq":
            num, den = int(x.numerator), int(x.denominator)
            if den % self.p == 0:
                raise ZeroDivisionError(f"denominator {den} vanishes in GF({self.p})")
            return (num * pow(den, -1, self.p)) % self.p
        return int(x) % self.p

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / gmpy2.mpq(x)
        return pow(int(x), -1, self.p)

    def fmt(self, x):
        """JSON-friendly rendering: ints for GF(p), ints or ``"p/q"`` over QQ."""
        if self.p is not None:
            return int(x)
        q = gmpy2.mpq(x)
        if q.denominator == 1:
            return int(q.numerator)
        return f"{int(q.numerator)}/{int(q.denominator)}"

    @property
    def one(self):
        return self.scalar(1)

    @property
    def zero(self):
        return self.scalar(0)

    def elements(self):
        """All field elements (prime fields only)."""
        if self.p is None:
            raise ValueError("QQ is infinite")
        return range(self.p)

    # arrays ----------------------------------------------------------------

    def arr(self, data) -> np.ndarray:
        a = np.array(data, dtype=object)
        if a.size == 0:
            return self.zeros(a.shape)
        flat = [self.scalar(x) for x in a.ravel()]
        out = np.empty(a.shape, dtype=object)
        out.ravel()[:] = flat
        return out.astype(self.dtype) if self.dtype is not object else out

    def zeros(self, shape) -> np.ndarray:
        if self.dtype is object:
            out = np.empty(shape, dtype=object)
            out.fill(self.zero)
            return out
        return np.zeros(shape, dtype=self.dtype)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    def unit_vector(self, n: int, i: int) -> np.ndarray:
        v = self.zeros(n)
        v[i] = self.one
        return v

    def red(self, a: np.ndarray) -> np.ndarray:
        if self.p is not None:
            return a % self.p
        return a

    def dot(self, *ms) -> np.ndarray:
        out = ms[0]
        for m in ms[1:]:
            if out.shape[-1] == 0 or (m.ndim and m.shape[0] == 0):
                shape = out.shape[:-1] + m.shape[1:]
                out = self.zeros(shape)
                continue
            out = self.red(out @ m)
        return out

    def kron(self, *ms) -> np.ndarray:
        out = ms[0]
        for m in ms[1:]:
            out = self.red(np.kron(out, m))
        if self.dtype is object and out.size and not isinstance(out.flat[0], type(self.zero)):
            out = _to_mpq(out)
        return out

    def add(self, a, b):
        return self.red(a + b)

    def sub(self, a, b):
        return self.red(a - b)

    def neg(self, a):
        return self.red(-a)

    def scale(self, c, a):
        return self.red(a * c)

    def is_zero(self, a) -> bool:
        return not np.any(a != 0)

    def equal(self, a, b) -> bool:
        return a.shape == b.shape and not np.any(a != b)

    def random(self, rng: np.random.Generator, shape, bound: int = 3) -> np.ndarray:
        """Seeded random entries: residues mod p, small integers over QQ."""
        if self.p is not None:
            return rng.integers(0, self.p, size=shape).astype(self.dtype) if self.dtype is not object else self.arr(
                rng.integers(0, self.p, size=shape).tolist()
            )
        return self.arr(rng.integers(-bound, bound + 1, size=shape).tolist())


def _to_mpq(a: np.ndarray) -> np.ndarray:
    out = np.empty(a.shape, dtype=object)
    out.ravel()[:] = [gmpy2.mpq(x) for x in a.ravel()]
    return out


# ---------------------------------------------------------------------------
# elimination


def rref(F: Field, m: np.ndarray):
    """Reduced row echelon form and pivot columns.

    Pivots are taken leftmost-first, using the first row (top-down) with a
    nonzero entry in the pivot column.
    """
    a = F.red(np.array(m, dtype=F.dtype, copy=True))
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c] != 0)[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = F.inv(a[r, c])
        a[r] = F.red(a[r] * inv)
        col = a[:, c].copy()
        col[r] = F.zero
        if np.any(col != 0):
            a = F.red(a - np.outer(col, a[r]))
        pivots.append(c)
        r += 1
    return a, pivots


def rank(F: Field, m: np.ndarray) -> int:
    if m.size == 0:
        return 0
    return len(rref(F, m)[1])


def kernel_basis(F: Field, m: np.ndarray) -> np.ndarray:
    """Right null space basis as the columns of an (n x k) array.

    One vector per free column f, with a 1 in position f and the negated
    pivot-row entries in the pivot positions.
    """
    rows, cols = m.shape
    if rows == 0:
        return F.eye(cols)
    r, piv = rref(F, m)
    free = [c for c in range(cols) if c not in set(piv)]
    out = F.zeros((cols, len(free)))
    for j, f in enumerate(free):
        out[f, j] = F.one
        for i, p in enumerate(piv):
            out[p, j] = F.red(-r[i, f])
    return out


def solve_affine(F: Field, m: np.ndarray, b: np.ndarray):
    """Some x with m @ x = b (free variables zero), or None if inconsistent."""
    rows, cols = m.shape
    b = np.asarray(b)
    if b.shape != (rows,):
        raise ValueError(f"right-hand side has shape {b.shape}, expected ({rows},)")
    aug = np.concatenate([np.array(m, dtype=F.dtype), b.reshape(rows, 1).astype(F.dtype)], axis=1)
    r, piv = rref(F, aug)
    if cols in piv:
        return None
    x = F.zeros(cols)
    for i, p in enumerate(piv):
        x[p] = r[i, cols]
    return x


def inverse(F: Field, m: np.ndarray):
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    aug = np.concatenate([np.array(m, dtype=F.dtype), F.eye(n)], axis=1)
    r, piv = rref(F, aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("singular matrix")
    return r[:, n:]


def is_invertible(F: Field, m: np.ndarray) -> bool:
    return m.shape[0] == m.shape[1] and rank(F, m) == m.shape[0]


def column_basis(F: Field, m: np.ndarray) -> np.ndarray:
    """Basis of the column space, as rref rows turned into columns."""
    if m.size == 0:
        return F.zeros((m.shape[0], 0))
    r, piv = rref(F, m.T)
    return r[: len(piv)].T.copy()


def hstack(F: Field, blocks, rows: int) -> np.ndarray:
    blocks = [b for b in blocks if b.shape[1]]
    if not blocks:
        return F.zeros((rows, 0))
    return np.concatenate(blocks, axis=1)


def vstack(F: Field, blocks, cols: int) -> np.ndarray:
    blocks = [b for b in blocks if b.shape[0]]
    if not blocks:
        return F.zeros((0, cols))
    return np.concatenate(blocks, axis=0)


class Subspace:
    """Span of linearly independent columns with a coordinate map.

    ``coords`` is a left inverse of ``basis`` built from an invertible square
    block of rows, so ``coords @ v`` recovers coordinates of any v in the span
    (and is meaningless outside it; use ``contains`` first if unsure).
    """

    __slots__ = ("F", "basis", "coords", "ambient")

    def __init__(self, F: Field, basis: np.ndarray):
        self.F = F
        self.basis = basis
        self.ambient = basis.shape[0]
        k = basis.shape[1]
        if k == 0:
            self.coords = F.zeros((0, self.ambient))
            return
        _, piv = rref(F, basis.T)
        if len(piv) != k:
            raise ValueError("Subspace basis is not linearly independent")
        sq = basis[piv, :]
        inv = inverse(F, sq)
        sel = F.zeros((k, self.ambient))
        for i, p in enumerate(piv):
            sel[i, p] = F.one
        self.coords = F.dot(inv, sel)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def coord(self, v: np.ndarray) -> np.ndarray:
        return self.F.dot(self.coords, v)

    def contains(self, v: np.ndarray) -> bool:
        if self.dim == 0:
            return self.F.is_zero(v)
        return self.F.equal(self.F.dot(self.basis, self.coord(v)), self.F.red(np.asarray(v)))

    def contains_all(self, vs: np.ndarray) -> bool:
        if vs.shape[1] == 0:
            return True
        if self.dim == 0:
            return self.F.is_zero(vs)
        return self.F.equal(self.F.dot(self.basis, self.F.dot(self.coords, vs)), vs)
