"""Corings, comodules, colinear maps, cotensor products and grouplikes.

A coring over A is an (A, A)-bimodule C with Delta: C -> C (x)_A C and
eps: C -> A.  Right comodules M carry rho: M -> M (x)_A C, left comodules
rho: M -> C (x)_A M.  All maps are matrices on quotient coordinates.
"""

from __future__ import annotations

import itertools

import numpy as np

from .algebra import (
    Algebra,
    AlgebraMorphism,
    Bimodule,
    InputError,
    MapSpace,
    TensorSpace,
    dual_basis,
    hom_constraints,
    hom_space,
    ident,
    lift,
    lunitor,
    lunitor_inv,
    maps_from_kernel,
    restrict_left,
    restrict_right,
    runitor,
    tensor,
    tmap,
)
from .exact import Field, kernel_basis, rank, solve_affine, Subspace


# ---------------------------------------------------------------------------
# corings


class Coring:
    def __init__(self, carrier: Bimodule, delta, counit, label="C"):
        if carrier.left_alg is not carrier.right_alg:
            raise InputError(f"{label}: carrier must be an A-bimodule over a single algebra")
        self.carrier = carrier
        self.A = carrier.left_alg
        self.F = carrier.F
        self.label = label
        CC = tensor(carrier, carrier)
        if delta.shape != (CC.dim, carrier.dim):
            raise InputError(f"{label}: comultiplication has shape {delta.shape}, expected {(CC.dim, carrier.dim)}")
        if counit.shape != (self.A.dim, carrier.dim):
            raise InputError(f"{label}: counit has shape {counit.shape}, expected {(self.A.dim, carrier.dim)}")
        self.delta = delta
        self.counit = counit
        self._op = None

    def __repr__(self):
        return f"Coring({self.label}, dim={self.dim}, over {self.A.label})"

    @property
    def dim(self):
        return self.carrier.dim

    @property
    def CC(self):
        return tensor(self.carrier, self.carrier)

    @classmethod
    def from_ambient(cls, carrier: Bimodule, delta_k, counit, label="C"):
        """Delta given as a k-linear map into C (x)_k C, projected onto C (x)_A C."""
        F = carrier.F
        CC = tensor(carrier, carrier)
        c = carrier.dim
        if delta_k.shape != (c * c, c):
            raise InputError(f"{label}: comultiplication must be a {c * c}x{c} matrix into the k-tensor square")
        delta = F.dot(CC.P, F.kron(carrier.S, carrier.S), delta_k)
        return cls(carrier, delta, counit, label)

    def check(self):
        """Failing coring axioms, in a fixed order (empty list = valid coring)."""
        F, C, A = self.F, self.carrier, self.A
        bad = []
        if C.check():
            bad.append("bimodule")
        reg = A.regular
        if not all(F.equal(F.dot(self.counit, C.left[a]), F.dot(reg.left[a], self.counit)) for a in range(A.dim)) or \
                not all(F.equal(F.dot(self.counit, C.right[a]), F.dot(reg.right[a], self.counit)) for a in range(A.dim)):
            bad.append("counit_linearity")
        CC = self.CC
        if not all(F.equal(F.dot(self.delta, C.left[a]), F.dot(CC.left[a], self.delta)) for a in range(A.dim)) or \
                not all(F.equal(F.dot(self.delta, C.right[a]), F.dot(CC.right[a], self.delta)) for a in range(A.dim)):
            bad.append("delta_linearity")
        I = ident(C)
        lhs = F.dot(tmap(self.delta, C, CC, I, C, C), self.delta)
        rhs = F.dot(tmap(I, C, C, self.delta, C, CC), self.delta)
        if not F.equal(lhs, rhs):
            bad.append("coassociativity")
        left = F.dot(lunitor(C), tmap(self.counit, C, reg, I, C, C), self.delta)
        right = F.dot(runitor(C), tmap(I, C, C, self.counit, C, reg), self.delta)
        if not (F.equal(left, I) and F.equal(right, I)):
            bad.append("counit")
        return bad

    def is_valid(self):
        return not self.check()

    def opposite(self) -> "Coring":
        """C^op over A^op: same space, sides swapped, Delta followed by the flip."""
        if self._op is None:
            Cop = self.carrier.opposite()
            fl = flip_map(self.carrier, self.carrier, Cop, Cop)
            op = Coring(Cop, self.F.dot(fl, self.delta), self.counit.copy(), label=self.label + "^op")
            op._op = self
            self._op = op
        return self._op

    # coring-level elements -------------------------------------------------

    def pair(self, x, y):
        """x (x)_A y in C (x)_A C."""
        F = self.F
        return F.dot(self.CC.P, F.kron(F.dot(self.carrier.S, x), F.dot(self.carrier.S, y)))

    def right_action(self, f):
        """c -> c(1) f(c(2)) for a left A-linear f: C -> A (matrix)."""
        C, A = self.carrier, self.A
        return self.F.dot(runitor(C), tmap(ident(C), C, C, f, C, A.regular), self.delta)

    def left_action(self, f):
        """c -> f(c(1)) c(2) for a right A-linear f: C -> A."""
        C, A = self.carrier, self.A
        return self.F.dot(lunitor(C), tmap(f, C, A.regular, ident(C), C, C), self.delta)

    def right_comodule(self) -> "Comodule":
        return Comodule(self, self.carrier, self.delta, "right", label=self.label)

    def left_comodule(self) -> "Comodule":
        return Comodule(self, self.carrier, self.delta, "left", label=self.label)


def flip_map(X: Bimodule, Y: Bimodule, Yop: Bimodule, Xop: Bimodule):
    """X (x)_A Y -> Yop (x)_{A^op} Xop, x (x) y -> y (x) x (quotient coordinates)."""
    F = X.F
    src = tensor(X, Y)
    tgt = tensor(Yop, Xop)
    if src.dim == 0 or tgt.dim == 0:
        return F.zeros((tgt.dim, src.dim))
    dx, dy = X.dim, Y.dim
    pairs = F.dot(F.kron(X.P, Y.P), src.S)  # X_q (x)_k Y_q
    perm = np.arange(dx * dy).reshape(dx, dy).T.reshape(-1)
    swapped = pairs[perm]
    return F.dot(tgt.P, F.kron(Yop.S, Xop.S), swapped)


class CoringMorphism:
    def __init__(self, source: Coring, target: Coring, matrix, label="f"):
        self.source, self.target, self.matrix, self.label = source, target, matrix, label

    def check(self):
        F = self.source.F
        S, T, f = self.source, self.target, self.matrix
        bad = []
        A = S.A
        if not all(F.equal(F.dot(f, S.carrier.left[a]), F.dot(T.carrier.left[a], f)) for a in range(A.dim)) or \
                not all(F.equal(F.dot(f, S.carrier.right[a]), F.dot(T.carrier.right[a], f)) for a in range(A.dim)):
            bad.append("bimodule_map")
        lhs = F.dot(tmap(f, S.carrier, T.carrier, f, S.carrier, T.carrier), S.delta)
        if not F.equal(lhs, F.dot(T.delta, f)):
            bad.append("comultiplicative")
        if not F.equal(F.dot(T.counit, f), S.counit):
            bad.append("counital")
        return bad


# ---------------------------------------------------------------------------
# standard constructions


def trivial_coring(A: Algebra) -> Coring:
    """C = A with Delta: a -> 1 (x) a and eps = id."""
    R = A.regular
    return Coring(R, lunitor_inv(R), A.F.eye(A.dim), label=A.label)


def sweedler_coring(i: AlgebraMorphism, label=None) -> Coring:
    """A (x)_B A with Delta(a (x) a') = (a (x) 1) (x) (1 (x) a') and eps(a (x) a') = a a'."""
    A, B = i.tgt, i.src
    F = A.F
    AB = restrict_right(A.regular, i, label=A.label)
    BA = restrict_left(A.regular, i, label=A.label)
    C = tensor(AB, BA)
    CC = tensor(C, C)
    u = A.unit.reshape(A.dim, 1)
    amb = F.kron(F.eye(A.dim), u, u, F.eye(A.dim))
    delta = F.dot(CC.P, amb, C.S)
    counit = F.dot(A.mult_matrix, C.S)
    return Coring(C, delta, counit, label=label or f"{A.label}(x){B.label}{A.label}")


# ---------------------------------------------------------------------------
# comodules


class Comodule:
    """A right (rho: M -> M (x)_A C) or left (rho: M -> C (x)_A M) comodule."""

    def __init__(self, coring: Coring, carrier: Bimodule, coaction, side="right", label="M"):
        if side not in ("right", "left"):
            raise ValueError(side)
        self.coring, self.carrier, self.side, self.label = coring, carrier, side, label
        self.F = carrier.F
        A = coring.A
        if side == "right" and carrier.right_alg is not A:
            raise InputError(f"{label}: right comodule must be a right {A.label}-module")
        if side == "left" and carrier.left_alg is not A:
            raise InputError(f"{label}: left comodule must be a left {A.label}-module")
        tgt = self.target
        if coaction.shape != (tgt.dim, carrier.dim):
            raise InputError(f"{label}: coaction has shape {coaction.shape}, expected {(tgt.dim, carrier.dim)}")
        self.rho = coaction
        self._op = None

    def __repr__(self):
        return f"Comodule({self.label}, {self.side}, dim={self.dim})"

    @property
    def dim(self):
        return self.carrier.dim

    @property
    def target(self):
        C = self.coring.carrier
        return tensor(self.carrier, C) if self.side == "right" else tensor(C, self.carrier)

    @property
    def base(self) -> Algebra:
        """The algebra acting on the non-comodule side."""
        return self.carrier.left_alg if self.side == "right" else self.carrier.right_alg

    @classmethod
    def from_ambient(cls, coring, carrier, rho_k, side="right", label="M"):
        F = carrier.F
        C = coring.carrier
        tgt = tensor(carrier, C) if side == "right" else tensor(C, carrier)
        m = carrier.dim
        if rho_k.shape != (m * C.dim, m):
            raise InputError(f"{label}: coaction must be a {m * C.dim}x{m} matrix into the k-tensor product")
        emb = F.kron(carrier.S, C.S) if side == "right" else F.kron(C.S, carrier.S)
        return cls(coring, carrier, F.dot(tgt.P, emb, rho_k), side, label)

    def check(self):
        F, M, Cr = self.F, self.carrier, self.coring
        C, A = Cr.carrier, Cr.A
        bad = []
        if M.check():
            bad.append("bimodule")
        tgt = self.target
        lin = all(F.equal(F.dot(self.rho, M.left[b]), F.dot(tgt.left[b], self.rho)) for b in range(M.left_alg.dim)) and \
            all(F.equal(F.dot(self.rho, M.right[a]), F.dot(tgt.right[a], self.rho)) for a in range(M.right_alg.dim))
        if not lin:
            bad.append("coaction_linearity")
        I, Ic = ident(M), ident(C)
        if self.side == "right":
            lhs = F.dot(tmap(self.rho, M, tgt, Ic, C, C), self.rho)
            rhs = F.dot(tmap(I, M, M, Cr.delta, C, Cr.CC), self.rho)
            cnt = F.dot(runitor(M), tmap(I, M, M, Cr.counit, C, A.regular), self.rho)
        else:
            lhs = F.dot(tmap(Ic, C, C, self.rho, M, tgt), self.rho)
            rhs = F.dot(tmap(Cr.delta, C, Cr.CC, I, M, M), self.rho)
            cnt = F.dot(lunitor(M), tmap(Cr.counit, C, A.regular, I, M, M), self.rho)
        if not F.equal(lhs, rhs):
            bad.append("coassociativity")
        if not F.equal(cnt, I):
            bad.append("counit")
        return bad

    def is_valid(self):
        return not self.check()

    def opposite(self) -> "Comodule":
        """Right C-comodule <-> left C^op-comodule on the same space."""
        if self._op is None:
            Cr = self.coring
            Cop = Cr.opposite()
            Mop = self.carrier.opposite()
            if self.side == "right":
                fl = flip_map(self.carrier, Cr.carrier, Cop.carrier, Mop)
            else:
                fl = flip_map(Cr.carrier, self.carrier, Mop, Cop.carrier)
            side = "left" if self.side == "right" else "right"
            op = Comodule(Cop, Mop, self.F.dot(fl, self.rho), side, label=self.label + "^op")
            op._op = self
            self._op = op
        return self._op

    def with_carrier(self, carrier: Bimodule, label=None) -> "Comodule":
        """Same coaction on a carrier with identical quotient coordinates (e.g. a
        changed inactive-side action, or an atomic copy of a tensor space)."""
        F = self.F
        C = self.coring.carrier
        old = self.carrier
        if carrier.dim != old.dim:
            raise InputError("with_carrier: dimension mismatch")
        conv = F.dot(carrier.S, old.P)  # amb(old) -> amb(new)
        if self.side == "right":
            tgt = tensor(carrier, C)
            amb = F.kron(conv, F.eye(C.amb_dim))
        else:
            tgt = tensor(C, carrier)
            amb = F.kron(F.eye(C.amb_dim), conv)
        rho = F.dot(tgt.P, amb, self.target.S, self.rho)
        return Comodule(self.coring, carrier, rho, self.side, label or self.label)

    def right_dual_action(self, f):
        """m -> m[0] f(m[1]) for a left A-linear f: C -> A (right *C-action)."""
        if self.side != "right":
            raise ValueError("right *C-action needs a right comodule")
        M, C, A = self.carrier, self.coring.carrier, self.coring.A
        return self.F.dot(runitor(M), tmap(ident(M), M, M, f, C, A.regular), self.rho)

    def left_dual_action(self, f):
        """m -> f(m[-1]) m[0] for a right A-linear f: C -> A (left C*-action)."""
        if self.side != "left":
            raise ValueError("left C*-action needs a left comodule")
        M, C, A = self.carrier, self.coring.carrier, self.coring.A
        return self.F.dot(lunitor(M), tmap(f, C, A.regular, ident(M), M, M), self.rho)


def regular_comodule(C: Coring, side="right") -> Comodule:
    return C.right_comodule() if side == "right" else C.left_comodule()


def cofree_comodule(N: Bimodule, C: Coring, label=None) -> Comodule:
    """N (x)_A C with coaction N (x) Delta."""
    M = tensor(N, C.carrier)
    rho = tmap(ident(N), N, N, C.delta, C.carrier, C.CC)
    return Comodule(C, M, rho, "right", label or f"{N.label}(x){C.label}")


def grouplike_comodule(C: Coring, x, i: AlgebraMorphism | None = None, label="A") -> Comodule:
    """A as a right C-comodule via rho(a) = x a; left action pulled back along i: B -> A."""
    F, A = C.F, C.A
    carrier = restrict_left(A.regular, i, label=label) if i is not None else A.regular
    xa = np.stack([F.dot(C.carrier.right[a], x) for a in range(A.dim)], axis=1)
    tgt = tensor(carrier, C.carrier)
    # A (x)_A C ~ C via a (x) c -> a c ; inverse c -> 1 (x) c
    u = A.unit.reshape(A.dim, 1)
    rho = F.dot(tgt.P, F.kron(u, C.carrier.S), xa)
    return Comodule(C, carrier, rho, "right", label)


def dual_left_comodule(sigma: Comodule, db=None) -> Comodule:
    """Sigma* as a left C-comodule: rho(f) = sum_i f(e_i[0]) e_i[1] (x) f_i."""
    if sigma.side != "right":
        raise ValueError("dual comodule needs a right comodule")
    F = sigma.F
    S, Cr = sigma.carrier, sigma.coring
    C, A = Cr.carrier, Cr.A
    db = db or dual_basis(S)
    if db is None:
        raise InputError(f"{sigma.label}: not finitely generated projective over {A.label}; no dual comodule")
    D = db.dual
    tgt = tensor(C, D)
    cols = []
    for m in range(D.dim):
        Fm = D.functional(F.unit_vector(D.dim, m))
        to_c = F.dot(lunitor(C), tmap(Fm, S, A.regular, ident(C), C, C), sigma.rho)  # u -> f(u[0]) u[1]
        tot = F.zeros(tgt.dim)
        for ei, fi in db.pairs:
            c = F.dot(to_c, ei)
            tot = F.add(tot, F.dot(tgt.P, F.kron(F.dot(C.S, c), fi)))
        cols.append(tot)
    rho = np.stack(cols, axis=1) if cols else F.zeros((tgt.dim, 0))
    return Comodule(Cr, D, rho, "left", label=sigma.label + "*")


# ---------------------------------------------------------------------------
# colinear maps


def colinear_constraints(M: Comodule, N: Comodule, left_linear=True, right_linear=True):
    """Rows cutting out Hom^C(M, N) on row-major vec(F)."""
    if M.coring is not N.coring or M.side != N.side:
        raise InputError("colinear maps need comodules over the same coring on the same side")
    if M.side == "left":
        return colinear_constraints(M.opposite(), N.opposite(), right_linear, left_linear)
    F = M.F
    Cr = M.coring
    C = Cr.carrier
    Mc, Nc = M.carrier, N.carrier
    m, n = Mc.dim, Nc.dim
    MC, NC = M.target, N.target
    rows = []
    rho_m_amb = F.dot(MC.S, M.rho)  # amb(M) x amb(C) per column
    SC_PC_T = F.dot(C.S, C.P).T
    for j in range(m):
        W = rho_m_amb[:, j].reshape(Mc.amb_dim, C.amb_dim)
        Z = F.dot(Mc.P, W, SC_PC_T)  # m x amb(C)
        ej = F.unit_vector(m, j).reshape(1, m)
        lhs = F.dot(N.rho, F.kron(F.eye(n), ej))
        rhs = F.dot(NC.P, F.kron(Nc.S, Z.T))
        rows.append(F.sub(lhs, rhs))
    lin = hom_constraints(Mc, Nc, left=left_linear and Mc.left_alg is Nc.left_alg,
                          right=right_linear)
    rows.append(lin)
    return np.concatenate(rows, axis=0)


def colinear_hom(M: Comodule, N: Comodule, left_linear=True, right_linear=True) -> MapSpace:
    """Basis of colinear maps M -> N (also linear over the inactive-side algebra
    when ``left_linear`` and both carriers share it)."""
    F = M.F
    K = kernel_basis(F, colinear_constraints(M, N, left_linear, right_linear))
    shape = (N.dim, M.dim)
    return MapSpace(F, maps_from_kernel(F, K, shape), shape)


def is_colinear(f, M: Comodule, N: Comodule) -> bool:
    F = M.F
    Cr = M.coring
    C = Cr.carrier
    if M.side == "right":
        lhs = F.dot(N.rho, f)
        rhs = F.dot(tmap(f, M.carrier, N.carrier, ident(C), C, C), M.rho)
    else:
        lhs = F.dot(N.rho, f)
        rhs = F.dot(tmap(ident(C), C, C, f, M.carrier, N.carrier), M.rho)
    return F.equal(lhs, rhs)


def endomorphism_algebra(sigma: Comodule, label="T"):
    """T = End^C(Sigma) (right-linear colinear endomorphisms) under composition."""
    space = colinear_hom(sigma, sigma, left_linear=False)
    T = Algebra.from_maps(sigma.F, space.maps, label=label, compose="left")
    return T, space


def cotensor(M: Comodule, N: Comodule):
    """M box_C N inside M (x)_A N: returns (tensor space, basis columns)."""
    if M.side != "right" or N.side != "left" or M.coring is not N.coring:
        raise InputError("cotensor needs a right and a left comodule over the same coring")
    F = M.F
    Cr = M.coring
    C = Cr.carrier
    Mc, Nc = M.carrier, N.carrier
    T = tensor(Mc, Nc)
    a = tmap(M.rho, Mc, M.target, ident(Nc), Nc, Nc)
    b = tmap(ident(Mc), Mc, Mc, N.rho, Nc, N.target)
    return T, kernel_basis(F, F.sub(a, b))


# ---------------------------------------------------------------------------
# grouplikes


def is_grouplike(C: Coring, x) -> bool:
    F = C.F
    return F.equal(F.dot(C.delta, x), C.pair(x, x)) and F.equal(F.dot(C.counit, x), C.A.unit)


def grouplikes(C: Coring, bound=8):
    """All grouplike elements, by exhaustive search over GF(p)^dim C (lexicographic)."""
    F = C.F
    if not F.is_prime:
        raise InputError("grouplike enumeration needs a prime field; use verify mode over QQ")
    if C.dim > bound:
        raise InputError(f"grouplike enumeration limited to dim <= {bound} (coring has dim {C.dim})")
    # eps(x) = 1 is affine: restrict to its solution set first
    base = solve_affine(F, C.counit, C.A.unit)
    if base is None:
        return []
    K = kernel_basis(F, C.counit)
    out = []
    for coeffs in itertools.product(range(F.p), repeat=K.shape[1]):
        x = F.add(base, F.dot(K, np.array(coeffs, dtype=F.dtype))) if K.shape[1] else base
        if F.equal(F.dot(C.delta, x), C.pair(x, x)):
            out.append(x)
    out.sort(key=lambda v: tuple(int(t) for t in v))
    return out


# ---------------------------------------------------------------------------
# (C, A)-injectivity


def ca_injective_retraction(M: Comodule):
    """A colinear gamma: M (x)_A C -> M with gamma rho = id, or None."""
    F = M.F
    cof = cofree_comodule(M.carrier, M.coring)
    space = colinear_hom(cof, M, left_linear=False)
    if space.dim == 0:
        return None if M.dim else F.zeros((0, cof.dim))
    cols = np.stack([F.dot(G, M.rho).reshape(-1) for G in space.maps], axis=1)
    c = solve_affine(F, cols, F.eye(M.dim).reshape(-1))
    if c is None:
        return None
    return space.from_coords(c)


# ---------------------------------------------------------------------------
# dual rings


class DualRing:
    """*C = _A Hom(C, A) (side "left") or C* = Hom_A(C, A) (side "right") with #.

    *C:  (f # g)(c) = g(c(1) f(c(2)))      C*:  (f # g)(c) = f(g(c(1)) c(2))
    ``space.maps[i]`` is the (dim A x dim C) matrix of the i-th basis map; the
    unit is eps.
    """

    def __init__(self, coring: Coring, side="left"):
        F = coring.F
        C, A = coring.carrier, coring.A
        self.coring, self.side, self.F = coring, side, F
        self.space = hom_space(C, A.regular, left=(side == "left"), right=(side == "right"))
        n = self.space.dim
        mult = F.zeros((n, n, n))
        self._act = [self.carrier_action(M) for M in self.space.maps]
        for i in range(n):
            for j in range(n):
                c = self.space.coords(self.product_maps(i, j))
                if c is None:
                    raise AssertionError("# product left the dual space")
                mult[i, j] = c
        unit = self.space.coords(coring.counit)
        label = ("*" + coring.label) if side == "left" else (coring.label + "*")
        self.algebra = Algebra(F, mult, unit, label=label)

    @property
    def dim(self):
        return self.space.dim

    def carrier_action(self, M):
        """*C: c -> c(1) f(c(2)) (right action on C); C*: c -> f(c(1)) c(2)."""
        if self.side == "left":
            return self.coring.right_action(M)
        return self.coring.left_action(M)

    def product_maps(self, i, j):
        F = self.F
        Mi, Mj = self.space.maps[i], self.space.maps[j]
        if self.side == "left":
            return F.dot(Mj, self._act[i])
        return F.dot(Mi, self._act[j])

    def sharp(self, f, g):
        """f # g on coordinate vectors."""
        F = self.F
        Mf, Mg = self.space.from_coords(f), self.space.from_coords(g)
        if self.side == "left":
            return self.space.coords(F.dot(Mg, self.coring.right_action(Mf)))
        return self.space.coords(F.dot(Mf, self.coring.left_action(Mg)))

    def map_of(self, x):
        return self.space.from_coords(x)

    def coords(self, M):
        return self.space.coords(M)

    def module_of(self, comodule: "Comodule", label=None) -> Bimodule:
        """Right *C-module (right comodule) or left C*-module (left comodule) structure."""
        F = self.F
        M = comodule.carrier
        k = Algebra.ground(F)
        if self.side == "left":
            R = np.stack([comodule.right_dual_action(X) for X in self.space.maps])
            return Bimodule(k, self.algebra, F.eye(M.dim)[None], R, label=label or comodule.label)
        L = np.stack([comodule.left_dual_action(X) for X in self.space.maps])
        return Bimodule(self.algebra, k, L, F.eye(M.dim)[None], label=label or comodule.label)


_DUAL_CACHE: dict = {}


def dual_ring(coring: Coring, side="left") -> DualRing:
    key = (id(coring), side)
    hit = _DUAL_CACHE.get(key)
    if hit is None:
        hit = (DualRing(coring, side), coring)
        _DUAL_CACHE[key] = hit
    return hit[0]
