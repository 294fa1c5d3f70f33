"""Finite-dimensional algebras, bimodules, tensor quotients, homs and duals.

Conventions.  Vectors are coordinate columns.  A linear map X -> Y is a
(dim Y x dim X) matrix.  A bimodule over (L, R) stores, for every basis
element b of L, the matrix of m -> b.m (``left[b]``) and for every basis
element a of R the matrix of m -> m.a (``right[a]``).  Matrix unknowns are
vectorised row-major, so vec(X F Y) = kron(X, Y^T) vec(F).

Tensor products over a middle algebra are quotients of the k-tensor product
of their *atomic* factors; iterated tensor products are always flattened, so
(X (x) Y) (x) Z and X (x) (Y (x) Z) are the same object.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dfield

import numpy as np

from .exact import Field, Subspace, kernel_basis, rank, rref, solve_affine, column_basis, hstack


class InputError(ValueError):
    """Malformed or inconsistent user-supplied data."""


# ---------------------------------------------------------------------------
# algebras


class Algebra:
    def __init__(self, F: Field, mult, unit, label="A", names=None):
        self.F = F
        self.mult = F.arr(mult) if not isinstance(mult, np.ndarray) or mult.dtype != F.dtype else mult
        n = self.mult.shape[0]
        if self.mult.shape != (n, n, n):
            raise InputError(f"{label}: structure constants must have shape (n,n,n), got {self.mult.shape}")
        self.dim = n
        self.unit = F.arr(unit) if not isinstance(unit, np.ndarray) else unit
        if self.unit.shape != (n,):
            raise InputError(f"{label}: unit must have length {n}")
        self.label = label
        self.names = list(names) if names else [f"{label.lower()}{i}" for i in range(n)]
        # L[i][l, j] = c[i, j, l] : left multiplication by e_i
        self.L = np.ascontiguousarray(np.transpose(self.mult, (0, 2, 1)))
        # R[j][l, i] = c[i, j, l] : right multiplication by e_j
        self.R = np.ascontiguousarray(np.transpose(self.mult, (1, 2, 0)))
        self._regular = None
        self._opposite = None

    def __repr__(self):
        return f"Algebra({self.label}, dim={self.dim}, {self.F!r})"

    @classmethod
    def ground(cls, F: Field) -> "Algebra":
        """The base field as a one-dimensional algebra (cached per field)."""
        key = F.p
        if key not in _GROUND:
            _GROUND[key] = cls(F, [[[1]]], [1], label="k", names=["1"])
        return _GROUND[key]

    @property
    def is_ground(self) -> bool:
        return self is Algebra.ground(self.F)

    def lmat(self, x):
        return self.F.red(np.tensordot(x, self.L, axes=(0, 0)))

    def rmat(self, x):
        return self.F.red(np.tensordot(x, self.R, axes=(0, 0)))

    def product(self, x, y):
        return self.F.dot(self.lmat(x), y)

    @property
    def mult_matrix(self):
        """m: A (x)_k A -> A, column (i, j) holds e_i e_j."""
        n = self.dim
        return self.mult.reshape(n * n, n).T.copy()

    def basis(self, i):
        return self.F.unit_vector(self.dim, i)

    def check(self):
        """Names of failing algebra axioms (empty when the algebra is valid)."""
        F, n = self.F, self.dim
        bad = []
        lu = self.lmat(self.unit)
        ru = self.rmat(self.unit)
        if not (F.equal(lu, F.eye(n)) and F.equal(ru, F.eye(n))):
            bad.append("unit")
        # (e_i e_j) e_k = e_i (e_j e_k)  <=>  L_{e_i e_j} = L_i L_j
        for i in range(n):
            for j in range(n):
                if not F.equal(self.lmat(self.mult[i, j]), F.dot(self.L[i], self.L[j])):
                    bad.append("associativity")
                    return bad
        return bad

    def opposite(self) -> "Algebra":
        if self._opposite is None:
            op = Algebra(self.F, np.transpose(self.mult, (1, 0, 2)).copy(), self.unit,
                         label=self.label + "^op", names=self.names)
            op._opposite = self
            self._opposite = op
        return self._opposite

    @property
    def regular(self) -> "Bimodule":
        if self._regular is None:
            self._regular = Bimodule(self, self, self.L, self.R, label=self.label, names=self.names)
        return self._regular

    @classmethod
    def from_maps(cls, F: Field, maps, label="T", compose="left"):
        """Algebra spanned by a composition-closed list of square matrices.

        ``compose="left"``: e_i e_j = M_i M_j (endomorphisms acting on the left);
        ``"right"`` uses M_j M_i (the opposite ring).
        """
        d = maps[0].shape[0]
        space = MapSpace(F, list(maps), (d, d))
        n = len(maps)
        mult = F.zeros((n, n, n))
        for i in range(n):
            for j in range(n):
                prod = F.dot(maps[i], maps[j]) if compose == "left" else F.dot(maps[j], maps[i])
                c = space.coords(prod)
                if c is None:
                    raise InputError(f"{label}: span of maps is not closed under composition")
                mult[i, j] = c
        unit = space.coords(F.eye(d))
        if unit is None:
            raise InputError(f"{label}: span of maps does not contain the identity")
        return cls(F, mult, unit, label=label)


_GROUND: dict = {}


class AlgebraMorphism:
    def __init__(self, src: Algebra, tgt: Algebra, matrix, label="i"):
        self.src, self.tgt, self.label = src, tgt, label
        self.matrix = matrix
        if matrix.shape != (tgt.dim, src.dim):
            raise InputError(f"{label}: matrix shape {matrix.shape} != ({tgt.dim}, {src.dim})")

    def __call__(self, x):
        return self.src.F.dot(self.matrix, x)

    def check(self):
        F = self.src.F
        bad = []
        if not F.equal(self(self.src.unit), self.tgt.unit):
            bad.append("unital")
        for i in range(self.src.dim):
            for j in range(self.src.dim):
                lhs = self(self.src.mult[i, j])
                rhs = self.tgt.product(self.matrix[:, i], self.matrix[:, j])
                if not F.equal(lhs, rhs):
                    bad.append("multiplicative")
                    return bad
        return bad

    @classmethod
    def unit_map(cls, A: Algebra):
        """k -> A, 1 -> 1_A."""
        return cls(Algebra.ground(A.F), A, A.unit.reshape(A.dim, 1), label="unit")


# ---------------------------------------------------------------------------
# bimodules


class Bimodule:
    """A (left_alg, right_alg)-bimodule given by action matrices."""

    def __init__(self, left_alg: Algebra, right_alg: Algebra, left, right, label="M", names=None):
        self.F = left_alg.F
        self.left_alg = left_alg
        self.right_alg = right_alg
        self.left = np.asarray(left)
        self.right = np.asarray(right)
        if self.left.ndim != 3 or self.left.shape[0] != left_alg.dim:
            raise InputError(f"{label}: need one left action matrix per basis element of {left_alg.label}")
        if self.right.ndim != 3 or self.right.shape[0] != right_alg.dim:
            raise InputError(f"{label}: need one right action matrix per basis element of {right_alg.label}")
        self.dim = self.left.shape[1]
        for stack in (self.left, self.right):
            if stack.shape[1:] != (self.dim, self.dim):
                raise InputError(f"{label}: action matrices must be {self.dim}x{self.dim}")
        self.label = label
        self.names = list(names) if names else [f"{label.lower()}{i}" for i in range(self.dim)]

    def __repr__(self):
        return f"Bimodule({self.label}, dim={self.dim}, ({self.left_alg.label},{self.right_alg.label}))"

    # atomic factors; overridden by TensorSpace
    @property
    def factors(self):
        return (self,)

    @property
    def middles(self):
        return ()

    @property
    def amb_dim(self):
        return self.dim

    @property
    def P(self):
        return self.F.eye(self.dim)

    @property
    def S(self):
        return self.F.eye(self.dim)

    def act_l(self, x):
        return self.F.red(np.tensordot(x, self.left, axes=(0, 0)))

    def act_r(self, x):
        return self.F.red(np.tensordot(x, self.right, axes=(0, 0)))

    def check(self):
        F, d = self.F, self.dim
        bad = []
        Lg, Rg = self.left_alg, self.right_alg
        if not F.equal(self.act_l(Lg.unit), F.eye(d)):
            bad.append("left_unital")
        if not F.equal(self.act_r(Rg.unit), F.eye(d)):
            bad.append("right_unital")
        for i in range(Lg.dim):
            for j in range(Lg.dim):
                if not F.equal(F.dot(self.left[i], self.left[j]), self.act_l(Lg.mult[i, j])):
                    bad.append("left_associative")
                    break
            else:
                continue
            break
        for i in range(Rg.dim):
            for j in range(Rg.dim):
                # (m e_i) e_j = m (e_i e_j)
                if not F.equal(F.dot(self.right[j], self.right[i]), self.act_r(Rg.mult[i, j])):
                    bad.append("right_associative")
                    break
            else:
                continue
            break
        for i in range(Lg.dim):
            for j in range(Rg.dim):
                if not F.equal(F.dot(self.left[i], self.right[j]), F.dot(self.right[j], self.left[i])):
                    bad.append("actions_commute")
                    return bad
        return bad

    def opposite(self) -> "Bimodule":
        """The same space as a (right_alg^op, left_alg^op)-bimodule."""
        return Bimodule(self.right_alg.opposite(), self.left_alg.opposite(), self.right, self.left,
                        label=self.label + "^op", names=self.names)

    def with_left(self, alg: Algebra, left) -> "Bimodule":
        return Bimodule(alg, self.right_alg, left, self.right, label=self.label, names=self.names)

    def with_right(self, alg: Algebra, right) -> "Bimodule":
        return Bimodule(self.left_alg, alg, self.left, right, label=self.label, names=self.names)

    def forget_left(self) -> "Bimodule":
        k = Algebra.ground(self.F)
        return Bimodule(k, self.right_alg, self.F.eye(self.dim)[None], self.right, self.label, self.names)

    def forget_right(self) -> "Bimodule":
        k = Algebra.ground(self.F)
        return Bimodule(self.left_alg, k, self.left, self.F.eye(self.dim)[None], self.label, self.names)


def restrict_left(M: Bimodule, phi: AlgebraMorphism, label=None) -> Bimodule:
    """Pull the left action back along phi: B -> left_alg."""
    left = np.stack([M.act_l(phi.matrix[:, b]) for b in range(phi.src.dim)])
    return Bimodule(phi.src, M.right_alg, left, M.right, label or M.label, M.names)


def restrict_right(M: Bimodule, phi: AlgebraMorphism, label=None) -> Bimodule:
    right = np.stack([M.act_r(phi.matrix[:, a]) for a in range(phi.src.dim)])
    return Bimodule(M.left_alg, phi.src, M.left, right, label or M.label, M.names)


def sub_bimodule(M: Bimodule, basis: np.ndarray, label="N"):
    """Restrict the actions of M to an invariant subspace (columns of ``basis``).

    Returns (bimodule, Subspace); raises if the subspace is not invariant.
    """
    F = M.F
    sub = Subspace(F, basis)
    def restrict(stack):
        out = []
        for X in stack:
            img = F.dot(X, basis)
            if not sub.contains_all(img):
                raise InputError(f"{label}: subspace is not invariant")
            out.append(F.dot(sub.coords, img))
        if not out:
            return F.zeros((0, sub.dim, sub.dim))
        return np.stack(out)
    return Bimodule(M.left_alg, M.right_alg, restrict(M.left), restrict(M.right), label=label), sub


def direct_sum(F, mods, label="M"):
    L, R = mods[0].left_alg, mods[0].right_alg
    d = sum(m.dim for m in mods)
    def block(stacks, n):
        out = F.zeros((n, d, d))
        off = 0
        for st in stacks:
            k = st.shape[1]
            out[:, off:off + k, off:off + k] = st
            off += k
        return out
    return Bimodule(L, R, block([m.left for m in mods], L.dim), block([m.right for m in mods], R.dim), label)


# ---------------------------------------------------------------------------
# tensor products


def _row_space(F: Field, rows: np.ndarray, ncols: int):
    """rref rows (nonzero only) and pivots of the span of ``rows``; chunked."""
    if rows.shape[0] == 0:
        return F.zeros((0, ncols)), []
    rows = rows[np.any(rows != 0, axis=1)]
    basis = F.zeros((0, ncols))
    piv: list[int] = []
    chunk = max(ncols, 8)
    for s in range(0, rows.shape[0], chunk):
        block = np.concatenate([basis, rows[s:s + chunk]], axis=0)
        r, piv = rref(F, block)
        basis = r[: len(piv)]
        if len(piv) == ncols:
            break
    return basis, piv


_TENSOR_CACHE: dict = {}


class TensorSpace(Bimodule):
    """Quotient X_1 (x)_{A_1} X_2 (x) ... (x)_{A_{n-1}} X_n of the k-tensor product.

    ``P`` (dim x amb_dim) projects ambient vectors onto quotient coordinates,
    ``S`` (amb_dim x dim) embeds the chosen quotient basis; P S = I and
    ker P is exactly the span of the middle-action relations.
    """

    def __init__(self, factors, middles):
        F = factors[0].F
        self.F = F
        self._factors = tuple(factors)
        self._middles = tuple(middles)
        dims = [f.dim for f in factors]
        N = int(np.prod(dims))
        self._amb = N
        rel_blocks = []
        for t, mid in enumerate(middles):
            X, Y = factors[t], factors[t + 1]
            if X.right_alg is not mid or Y.left_alg is not mid:
                raise InputError(f"tensor over {mid.label}: action mismatch between {X.label} and {Y.label}")
            if mid.is_ground:
                continue
            pre = int(np.prod(dims[:t]))
            post = int(np.prod(dims[t + 2:]))
            Ipre, Ipost = F.eye(pre), F.eye(post)
            for a in range(mid.dim):
                m = F.sub(np.kron(X.right[a], F.eye(Y.dim)), np.kron(F.eye(X.dim), Y.left[a]))
                if F.is_zero(m):
                    continue
                rel_blocks.append(F.kron(Ipre, m, Ipost).T)
        rows = np.concatenate(rel_blocks, axis=0) if rel_blocks else F.zeros((0, N))
        Rr, piv = _row_space(F, rows, N)
        free = [c for c in range(N) if c not in set(piv)]
        q = len(free)
        P = F.zeros((q, N))
        for i, c in enumerate(free):
            P[i, c] = F.one
        for i, p in enumerate(piv):
            P[:, p] = F.red(-Rr[i, free])
        S = F.zeros((N, q))
        for i, c in enumerate(free):
            S[c, i] = F.one
        self._P, self._S = P, S
        self.relations = Rr
        self.free = free
        self.dim = q
        idx = [tuple(int(v) for v in np.unravel_index(c, dims)) for c in free]
        self.index = idx
        self.names = ["(x)".join(factors[k].names[i] for k, i in enumerate(t)) for t in idx]
        self.label = "(x)".join(f.label for f in factors)
        self.left_alg = factors[0].left_alg
        self.right_alg = factors[-1].right_alg
        rest = int(np.prod(dims[1:]))
        first = int(np.prod(dims[:-1]))
        self.left = np.stack([F.dot(P, F.kron(L, F.eye(rest)), S) for L in factors[0].left]) if q else \
            F.zeros((self.left_alg.dim, 0, 0))
        self.right = np.stack([F.dot(P, F.kron(F.eye(first), R), S) for R in factors[-1].right]) if q else \
            F.zeros((self.right_alg.dim, 0, 0))

    @property
    def factors(self):
        return self._factors

    @property
    def middles(self):
        return self._middles

    @property
    def amb_dim(self):
        return self._amb

    @property
    def P(self):
        return self._P

    @property
    def S(self):
        return self._S

    def __repr__(self):
        return f"TensorSpace({self.label}, dim={self.dim}, amb={self._amb})"


def tensor_n(factors, middles):
    factors, middles = tuple(factors), tuple(middles)
    if len(factors) == 1:
        return factors[0]
    key = (tuple(id(f) for f in factors), tuple(id(m) for m in middles))
    hit = _TENSOR_CACHE.get(key)
    if hit is not None:
        return hit[0]
    T = TensorSpace(factors, middles)
    _TENSOR_CACHE[key] = (T, factors, middles)  # strong refs keep ids unique
    return T


def tensor(X: Bimodule, Y: Bimodule, over: Algebra | None = None) -> Bimodule:
    """X (x)_over Y, flattened into atomic factors; ``over`` defaults to X.right_alg."""
    if over is None:
        over = X.right_alg
    if X.right_alg is not over or Y.left_alg is not over:
        raise InputError(f"tensor over {over.label}: {X.label} and {Y.label} are not {over.label}-modules "
                         f"on the matching sides")
    return tensor_n(X.factors + Y.factors, X.middles + (over,) + Y.middles)


def tensor_over(middle: Algebra, m: Bimodule, n: Bimodule):
    T = tensor(m, n, middle)
    return T, T


def lift(f, X: Bimodule, Y: Bimodule):
    """Ambient form S_Y f P_X of a map f: X -> Y."""
    F = X.F
    out = f
    if isinstance(Y, TensorSpace):
        out = F.dot(Y.S, out)
    if isinstance(X, TensorSpace):
        out = F.dot(out, X.P)
    return out


def tmap(f, X, Xp, g, Y, Yp):
    """f (x) g : X (x) Y -> Xp (x) Yp over X.right_alg."""
    F = X.F
    src = tensor(X, Y)
    tgt = tensor(Xp, Yp)
    amb = F.kron(lift(f, X, Xp), lift(g, Y, Yp))
    return F.dot(tgt.P, amb, src.S) if src.dim and tgt.dim else F.zeros((tgt.dim, src.dim))


def tmap3(f, X, Xp, g, Y, Yp, h, Z, Zp):
    F = X.F
    src = tensor(tensor(X, Y), Z)
    tgt = tensor(tensor(Xp, Yp), Zp)
    amb = F.kron(lift(f, X, Xp), lift(g, Y, Yp), lift(h, Z, Zp))
    return F.dot(tgt.P, amb, src.S) if src.dim and tgt.dim else F.zeros((tgt.dim, src.dim))


def ident(X):
    return X.F.eye(X.dim)


def element_tensor(x, X, y, Y):
    """x (x) y as quotient coordinates in X (x) Y."""
    F = X.F
    T = tensor(X, Y)
    return F.dot(T.P, F.kron(F.dot(X.S, x), F.dot(Y.S, y)))


def lunitor(X: Bimodule):
    """A (x)_A X -> X, a (x) x -> a.x, with A = X.left_alg."""
    F = X.F
    A = X.left_alg
    src = tensor(A.regular, X)
    amb = np.concatenate([F.dot(X.left[i], X.P) for i in range(A.dim)], axis=1)
    return F.dot(amb, src.S)


def runitor(X: Bimodule):
    """X (x)_A A -> X, x (x) a -> x.a, with A = X.right_alg."""
    F = X.F
    A = X.right_alg
    src = tensor(X, A.regular)
    blocks = [F.dot(X.right[i], X.P) for i in range(A.dim)]  # each dim x amb
    amb = np.stack(blocks, axis=2).reshape(X.dim, X.amb_dim * A.dim)
    return F.dot(amb, src.S)


def lunitor_inv(X: Bimodule):
    F = X.F
    A = X.left_alg
    src = tensor(A.regular, X)
    return F.dot(src.P, F.kron(A.unit.reshape(A.dim, 1), X.S))


def runitor_inv(X: Bimodule):
    F = X.F
    A = X.right_alg
    src = tensor(X, A.regular)
    return F.dot(src.P, F.kron(X.S, A.unit.reshape(A.dim, 1)))


def act_left_map(X: Bimodule):
    """Ambient left action map L (x)_k X_amb -> X: column (b, t) = L_b P_X e_t."""
    F = X.F
    return np.concatenate([F.dot(X.left[i], X.P) for i in range(X.left_alg.dim)], axis=1)


def act_right_map(X: Bimodule):
    """Ambient right action X_amb (x)_k R -> X: column (t, a) = R_a P_X e_t."""
    F = X.F
    R = X.right_alg
    return np.stack([F.dot(X.right[i], X.P) for i in range(R.dim)], axis=2).reshape(X.dim, X.amb_dim * R.dim)


# ---------------------------------------------------------------------------
# linear maps and hom spaces


def vec_lr(F: Field, X, Y):
    """Matrix of F -> X F Y on row-major vectorised F."""
    return F.kron(X, Y.T)


class MapSpace:
    """A subspace of Hom_k(X, Y) with coordinates."""

    def __init__(self, F: Field, maps, shape):
        self.F = F
        self.shape = tuple(shape)
        self.maps = list(maps)
        n = self.shape[0] * self.shape[1]
        if self.maps:
            basis = np.stack([m.reshape(n) for m in self.maps], axis=1)
        else:
            basis = F.zeros((n, 0))
        self.sub = Subspace(F, basis)

    @property
    def dim(self):
        return len(self.maps)

    @property
    def basis_matrix(self):
        return self.sub.basis

    def coords(self, m):
        v = m.reshape(-1)
        if not self.sub.contains(v):
            return None
        return self.sub.coord(v)

    def from_coords(self, c):
        return self.F.dot(self.sub.basis, c).reshape(self.shape)

    def contains(self, m):
        return self.sub.contains(m.reshape(-1))


def maps_from_kernel(F, K, shape):
    return [K[:, j].reshape(shape).copy() for j in range(K.shape[1])]


def hom_constraints(X: Bimodule, Y: Bimodule, left=True, right=True):
    F = X.F
    rows = []
    if left:
        if X.left_alg is not Y.left_alg:
            raise InputError(f"left-linear maps {X.label}->{Y.label}: different left algebras")
        for b in range(X.left_alg.dim):
            rows.append(F.sub(vec_lr(F, F.eye(Y.dim), X.left[b]), vec_lr(F, Y.left[b], F.eye(X.dim))))
    if right:
        if X.right_alg is not Y.right_alg:
            raise InputError(f"right-linear maps {X.label}->{Y.label}: different right algebras")
        for a in range(X.right_alg.dim):
            rows.append(F.sub(vec_lr(F, F.eye(Y.dim), X.right[a]), vec_lr(F, Y.right[a], F.eye(X.dim))))
    n = X.dim * Y.dim
    return np.concatenate(rows, axis=0) if rows else F.zeros((0, n))


def hom_space(X: Bimodule, Y: Bimodule, left=True, right=True) -> MapSpace:
    """Basis of the maps X -> Y that are left- and/or right-linear."""
    F = X.F
    C = hom_constraints(X, Y, left, right)
    K = kernel_basis(F, C)
    return MapSpace(F, maps_from_kernel(F, K, (Y.dim, X.dim)), (Y.dim, X.dim))


def is_left_linear(f, X, Y):
    F = X.F
    return all(F.equal(F.dot(f, X.left[b]), F.dot(Y.left[b], f)) for b in range(X.left_alg.dim))


def is_right_linear(f, X, Y):
    F = X.F
    return all(F.equal(F.dot(f, X.right[a]), F.dot(Y.right[a], f)) for a in range(X.right_alg.dim))


# ---------------------------------------------------------------------------
# duals


class DualModule(Bimodule):
    """Sigma* = Hom_A(Sigma, A) as an (A, B)-bimodule, (a f b)(u) = a f(b u).

    ``space.maps[k]`` is the (dim A x dim Sigma) matrix of the k-th basis
    functional; ``ev`` is evaluation Sigma* (x)_k Sigma -> A on ambient pairs.
    """

    def __init__(self, sigma: Bimodule, label=None):
        F = sigma.F
        A, B = sigma.right_alg, sigma.left_alg
        self.sigma = sigma
        space = hom_space(sigma, A.regular, left=False, right=True)
        self.space = space
        left = np.stack([self._coord_all(space, lambda M, a=a: F.dot(A.L[a], M)) for a in range(A.dim)]) \
            if space.dim else F.zeros((A.dim, 0, 0))
        right = np.stack([self._coord_all(space, lambda M, b=b: F.dot(M, sigma.left[b])) for b in range(B.dim)]) \
            if space.dim else F.zeros((B.dim, 0, 0))
        super().__init__(A, B, left, right, label=label or (sigma.label + "*"),
                         names=[f"{sigma.label.lower()}*{k}" for k in range(space.dim)])
        # ev[:, k*dimS + j] = f_k(u_j)
        d = sigma.dim
        ev = F.zeros((A.dim, space.dim * d))
        for k, M in enumerate(space.maps):
            ev[:, k * d:(k + 1) * d] = M
        self.ev = ev

    @staticmethod
    def _coord_all(space, fn):
        cols = [space.coords(fn(M)) for M in space.maps]
        return np.stack(cols, axis=1)

    def functional(self, g):
        """Matrix of the functional with coordinates g."""
        return self.space.from_coords(g)

    def coords_of(self, M):
        c = self.space.coords(M)
        if c is None:
            raise ValueError("matrix is not a right-linear functional")
        return c


def dual_module(sigma: Bimodule) -> DualModule:
    key = ("dual", id(sigma))
    hit = _TENSOR_CACHE.get(key)
    if hit is None:
        hit = (DualModule(sigma), sigma)
        _TENSOR_CACHE[key] = hit
    return hit[0]


def eval_pairing(dual: DualModule):
    """ev: Sigma* (x)_B Sigma -> A on quotient coordinates."""
    F = dual.F
    D = tensor(dual, dual.sigma)
    return F.dot(dual.ev, D.S)


@dataclass
class DualBasis:
    """e = sum_i e_i (x) f_i in Sigma (x)_A Sigma*."""

    sigma: Bimodule
    dual: DualModule
    e_pair: np.ndarray  # representative in Sigma (x)_k Sigma*, quotient coordinates of Sigma
    e: np.ndarray  # coordinates in Sigma (x)_A Sigma*
    pairs: list = dfield(default_factory=list)

    def check(self):
        """Both dual-basis identities on basis vectors; returns failing names."""
        F = self.sigma.F
        S, D = self.sigma, self.dual
        bad = []
        if not F.equal(_coeval_map(S, D, self.e_pair), F.eye(S.dim)):
            bad.append("u = sum e_i f_i(u)")
        for m, M in enumerate(D.space.maps):
            tot = F.zeros(D.dim)
            for (ei, fi) in self.pairs:
                tot = F.add(tot, F.dot(D.act_l(F.dot(M, ei)), fi))
            if not F.equal(tot, F.unit_vector(D.dim, m)):
                bad.append("f = sum f(e_i) f_i")
                break
        return bad


def _phi_matrix(S: Bimodule, D: DualModule):
    """Phi: Sigma (x)_k Sigma* -> End_k(Sigma), v (x) f -> (u -> v.f(u)), vec row-major."""
    F = S.F
    d, k = S.dim, D.dim
    cols = F.zeros((d * d, d * k))
    for j in range(d):
        for m in range(k):
            Fm = D.space.maps[m]
            # column u of the image: sum_l Fm[l,u] R_l e_j
            img = F.red(np.tensordot(S.right[:, :, j], Fm, axes=(0, 0)))  # (d, d): [row, u]
            cols[:, j * k + m] = img.reshape(-1)
    return cols


def _coeval_map(S, D, x_amb):
    F = S.F
    return F.dot(_phi_matrix(S, D), x_amb).reshape(S.dim, S.dim)


def dual_basis(sigma: Bimodule) -> DualBasis | None:
    """A dual basis of Sigma as right A-module, or None if it is not f.g. projective."""
    F = sigma.F
    D = dual_module(sigma)
    Phi = _phi_matrix(sigma, D)
    x = solve_affine(F, Phi, F.eye(sigma.dim).reshape(-1))
    if x is None:
        return None
    T = tensor(sigma, D)
    e = F.dot(T.P, F.kron(sigma.S, F.eye(D.dim)), x)
    # canonical representative of e in Sigma (x)_k Sigma* (quotient coordinates of Sigma)
    e_pair = F.dot(F.kron(sigma.P, F.eye(D.dim)), T.S, e)
    k = D.dim
    pairs = []
    for m in range(k):
        ei = np.array([e_pair[j * k + m] for j in range(sigma.dim)], dtype=F.dtype)
        if F.is_zero(ei):
            continue
        pairs.append((ei, F.unit_vector(k, m)))
    return DualBasis(sigma, D, e_pair, e, pairs)


# ---------------------------------------------------------------------------
# one-sided module views, projectivity, trace ideals


def module_view(M: Bimodule, side: str):
    """(R, acts) presenting M as a right R-module; left modules use R = alg^op."""
    if side == "right":
        return M.right_alg, M.right
    if side == "left":
        return M.left_alg.opposite(), M.left
    raise ValueError(side)


def _right_module(R: Algebra, acts, label="V"):
    k = Algebra.ground(R.F)
    d = acts.shape[1]
    return Bimodule(k, R, R.F.eye(d)[None], acts, label=label)


def is_projective(M: Bimodule, side: str) -> bool:
    R, acts = module_view(M, side)
    return dual_basis(_right_module(R, acts, M.label)) is not None


def projective_dual_basis(M: Bimodule, side: str):
    R, acts = module_view(M, side)
    return dual_basis(_right_module(R, acts, M.label))


def trace_ideal(M: Bimodule, side: str) -> np.ndarray:
    """Columns spanning sum f(M) over module maps f: M -> R (R the acting algebra)."""
    R, acts = module_view(M, side)
    F = M.F
    V = _right_module(R, acts, M.label)
    space = hom_space(V, R.regular, left=False, right=True)
    imgs = [m for m in space.maps]
    if not imgs:
        return F.zeros((R.dim, 0))
    return column_basis(F, np.concatenate(imgs, axis=1))


def is_generator_module(M: Bimodule, side: str) -> bool:
    R, _ = module_view(M, side)
    return trace_ideal(M, side).shape[1] == R.dim


def is_faithfully_flat(M: Bimodule, side: str) -> bool:
    """Finite-dimensional surrogate: f.g. projective with full trace ideal."""
    if M.dim == 0:
        return False
    return is_projective(M, side) and is_generator_module(M, side)


# ---------------------------------------------------------------------------
# random modules (for property tests and randomized object families)


def random_right_module(R: Algebra, rng, max_gens=2, label="N") -> Bimodule:
    """A random cyclic-ish right R-module: submodule of R^g generated by random vectors."""
    F = R.F
    g = int(rng.integers(1, max_gens + 1))
    free = direct_sum(F, [R.regular.forget_left()] * g, label="Rg")
    n_gens = int(rng.integers(1, g + 1))
    gens = [F.random(rng, free.dim) for _ in range(n_gens)]
    basis = _closure(F, gens, free.right)
    if basis.shape[1] == 0:
        basis = F.eye(free.dim)
    sub, _ = sub_bimodule(free, basis, label=label)
    return sub


def _closure(F, vecs, acts):
    cols = [v for v in vecs if not F.is_zero(v)]
    n = acts.shape[1]
    if not cols:
        return F.zeros((n, 0))
    span = column_basis(F, np.stack(cols, axis=1))
    while True:
        imgs = [span] + [F.dot(X, span) for X in acts]
        new = column_basis(F, np.concatenate(imgs, axis=1))
        if new.shape[1] == span.shape[1]:
            return new
        span = new


def random_bimodule_like(M: Bimodule, rng, label="N"):
    """Random right module over M.right_alg, as a (k, R)-bimodule."""
    return random_right_module(M.right_alg, rng, label=label)


def iter_field_vectors(F: Field, n: int):
    """All vectors of F^n (prime field only), in lexicographic order."""
    for t in itertools.product(range(F.p), repeat=n):
        yield np.array(t, dtype=F.dtype)
