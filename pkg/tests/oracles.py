"""Brute-force oracles over GF(p): enumerate every k-linear candidate map and
test the defining equations element by element.

Equations are written on basis elements with explicit Sweedler components
(obtained by splitting ambient tensors), never through the engine's
tensor-map or kernel solvers, so agreement with the solvers is a genuine
cross-check.
"""

from __future__ import annotations

import itertools

import numpy as np

from coringlab.algebra import dual_module
from coringlab.coring import cofree_comodule, dual_left_comodule

LIMIT = 1 << 16


def all_maps(p, shape):
    """Every (m x n) matrix over GF(p) as an int64 batch of shape (N, m, n)."""
    m, n = shape
    N = p ** (m * n)
    if N > LIMIT:
        raise ValueError(f"{N} candidates exceed the oracle limit {LIMIT}")
    idx = np.arange(N, dtype=np.int64)
    digits = (idx[:, None] // (p ** np.arange(m * n, dtype=np.int64))[None, :]) % p
    return digits.reshape(N, m, n)


def split(T, v, X, Y):
    """Coefficients K with v = sum K[i, j] x_i (x) y_j in T = X (x) Y."""
    F = T.F
    R = F.dot(T.S, v).reshape(X.amb_dim, Y.amb_dim)
    return F.dot(X.P, R, Y.P.T)


def pair_maps(T, X, Y):
    """W[j] with W[j] @ x = x (x) y_j in T (coordinates)."""
    F = T.F
    return [F.dot(T.P, F.kron(X.S, F.dot(Y.S, F.unit_vector(Y.dim, j)).reshape(-1, 1))) for j in range(Y.dim)]


def pair_maps_left(T, X, Y):
    """V[i] with V[i] @ y = x_i (x) y in T."""
    F = T.F
    return [F.dot(T.P, F.kron(F.dot(X.S, F.unit_vector(X.dim, i)).reshape(-1, 1), Y.S)) for i in range(X.dim)]


def _i64(m):
    return np.asarray(m, dtype=np.int64)


def _zero(p, arr, axes):
    return ~np.any(arr % p != 0, axis=axes)


def _commutes(p, X, left_stack, right_stack):
    """X @ R_a == L_a @ X for every a (batch X: (N, m, n))."""
    ok = np.ones(X.shape[0], dtype=bool)
    for L, R in zip(left_stack, right_stack):
        d = np.einsum("nij,jk->nik", X, _i64(R)) - np.einsum("ij,njk->nik", _i64(L), X)
        ok &= _zero(p, d, (1, 2))
    return ok


def as_set(batch):
    return {tuple(int(v) for v in x.ravel()) for x in batch}


def span_set(F, maps):
    """All GF(p)-combinations of a list of matrices."""
    p = F.p
    if not maps:
        return set()
    out = set()
    for c in itertools.product(range(p), repeat=len(maps)):
        X = sum(int(ci) * _i64(M) for ci, M in zip(c, maps)) % p
        out.add(tuple(int(v) for v in X.ravel()))
    return out


# ---------------------------------------------------------------------------
# End^C(Sigma)


def colinear_endomorphisms(S):
    """All f: Sigma -> Sigma, left B- and right A-linear with rho f = (f (x) C) rho."""
    F, p = S.F, S.F.p
    X, C = S.carrier, S.coring.carrier
    T = S.target
    cand = all_maps(p, (X.dim, X.dim))
    ok = _commutes(p, cand, X.right, X.right) & _commutes(p, cand, X.left, X.left)
    W = [_i64(w) for w in pair_maps(T, X, C)]
    rho = _i64(S.rho)
    for u in range(X.dim):
        K = _i64(split(T, F.dot(S.rho, F.unit_vector(X.dim, u)), X, C))
        lhs = np.einsum("ij,nj->ni", rho, cand[:, :, u])
        rhs = sum(int(K[i, j]) * np.einsum("ab,nb->na", W[j], cand[:, :, i])
                  for i in range(X.dim) for j in range(C.dim) if K[i, j])
        ok &= _zero(p, lhs - rhs, 1)
    return cand[ok]


# ---------------------------------------------------------------------------
# Q: two characterizations


def q_colinear(S):
    """Left A-linear, left C-colinear q: C -> Sigma*."""
    F, p = S.F, S.F.p
    Cr = S.coring
    C = Cr.carrier
    L = dual_left_comodule(S)
    D = L.carrier
    T = L.target
    cand = all_maps(p, (D.dim, C.dim))
    ok = _commutes(p, cand, D.left, C.left)
    V = [_i64(v) for v in pair_maps_left(T, C, D)]
    Lr = _i64(L.rho)
    for c in range(C.dim):
        K = _i64(split(Cr.CC, F.dot(Cr.delta, F.unit_vector(C.dim, c)), C, C))
        lhs = np.einsum("ij,nj->ni", Lr, cand[:, :, c])
        rhs = sum(int(K[i, j]) * np.einsum("ab,nb->na", V[i], cand[:, :, j])
                  for i in range(C.dim) for j in range(C.dim) if K[i, j])
        ok &= _zero(p, lhs - rhs, 1)
    return cand[ok]


def q_pointwise(S):
    """Left A-linear q: C -> Sigma* with c(1) (q(c(2))(u)) = (q(c)(u[0])) u[1]
    for all basis c and u."""
    F, p = S.F, S.F.p
    Cr = S.coring
    C, A = Cr.carrier, Cr.A
    X = S.carrier
    D = dual_module(X)
    cand = all_maps(p, (D.dim, C.dim))
    ok = _commutes(p, cand, D.left, C.left)
    Phi = np.stack([_i64(D.functional(F.unit_vector(D.dim, k))) for k in range(D.dim)])  # (d, A, X)
    act_r = _i64(np.stack(list(C.right)))  # (A, C, C): c -> c a_k
    act_l = _i64(np.stack(list(C.left)))
    T = S.target
    # val[n, j, :, s] = q(e_j)(x_s) in A
    val = np.einsum("nkj,kas->njas", cand, Phi)
    for c in range(C.dim):
        K = _i64(split(Cr.CC, F.dot(Cr.delta, F.unit_vector(C.dim, c)), C, C))
        for u in range(X.dim):
            N = _i64(split(T, F.dot(S.rho, F.unit_vector(X.dim, u)), X, C))
            lhs = np.zeros((cand.shape[0], C.dim), dtype=np.int64)
            for i in range(C.dim):
                for j in range(C.dim):
                    if K[i, j]:
                        a = val[:, j, :, u]  # (n, A)
                        lhs += int(K[i, j]) * np.einsum("na,ac->nc", a, act_r[:, :, i])
            rhs = np.zeros_like(lhs)
            for s in range(X.dim):
                for j in range(C.dim):
                    if N[s, j]:
                        a = val[:, c, :, s]
                        rhs += int(N[s, j]) * np.einsum("na,ac->nc", a, act_l[:, :, j])
            ok &= _zero(p, lhs - rhs, 1)
    return cand[ok]


# ---------------------------------------------------------------------------
# V2


def v2_oracle(Cr):
    """theta: C (x)_A C -> A, A-bilinear, c(1) theta(c(2) (x) d) = theta(c (x) d(1)) d(2)."""
    F, p = Cr.F, Cr.F.p
    C, A, CC = Cr.carrier, Cr.A, Cr.CC
    reg = A.regular
    cand = all_maps(p, (A.dim, CC.dim))
    ok = _commutes(p, cand, reg.left, CC.left) & _commutes(p, cand, reg.right, CC.right)
    cand = cand[ok]
    act_r = _i64(np.stack(list(C.right)))
    act_l = _i64(np.stack(list(C.left)))
    # w[c][d] = c (x) d in CC
    w = [[_i64(F.dot(CC.P, F.kron(F.dot(C.S, F.unit_vector(C.dim, c)), F.dot(C.S, F.unit_vector(C.dim, d)))))
          for d in range(C.dim)] for c in range(C.dim)]
    Ks = [_i64(split(CC, F.dot(Cr.delta, F.unit_vector(C.dim, c)), C, C)) for c in range(C.dim)]
    ok = np.ones(cand.shape[0], dtype=bool)
    for c in range(C.dim):
        for d in range(C.dim):
            lhs = np.zeros((cand.shape[0], C.dim), dtype=np.int64)
            for i, j in zip(*np.nonzero(Ks[c])):
                a = np.einsum("nab,b->na", cand, w[j][d])
                lhs += int(Ks[c][i, j]) * np.einsum("na,ac->nc", a, act_r[:, :, i])
            rhs = np.zeros_like(lhs)
            for i, j in zip(*np.nonzero(Ks[d])):
                a = np.einsum("nab,b->na", cand, w[c][i])
                rhs += int(Ks[d][i, j]) * np.einsum("na,ac->nc", a, act_l[:, :, j])
            ok &= _zero(p, lhs - rhs, 1)
    return cand[ok]


# ---------------------------------------------------------------------------
# (C, A)-injectivity retractions


def retractions(S):
    """gamma: Sigma (x)_A C -> Sigma, right A-linear and colinear, gamma rho = id."""
    F, p = S.F, S.F.p
    Cr = S.coring
    X, C = S.carrier, Cr.carrier
    cof = cofree_comodule(X, Cr)
    Y = cof.carrier
    cand = all_maps(p, (X.dim, Y.dim))
    ok = _commutes(p, cand, X.right, Y.right)
    ok &= _zero(p, np.einsum("nij,jk->nik", cand, _i64(S.rho)) - np.eye(X.dim, dtype=np.int64)[None], (1, 2))
    T = S.target
    W = [_i64(w) for w in pair_maps(T, X, C)]
    Tc = cof.target
    rho = _i64(S.rho)
    for y in range(Y.dim):
        K = _i64(split(Tc, F.dot(cof.rho, F.unit_vector(Y.dim, y)), Y, C))
        lhs = np.einsum("ij,nj->ni", rho, cand[:, :, y])
        rhs = sum(int(K[i, j]) * np.einsum("ab,nb->na", W[j], cand[:, :, i])
                  for i in range(Y.dim) for j in range(C.dim) if K[i, j])
        ok &= _zero(p, lhs - rhs, 1)
    return cand[ok]
