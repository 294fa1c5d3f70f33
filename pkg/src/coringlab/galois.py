"""Comatrix corings, the canonical map, Galois detection and the adjunction (F, G).

Sigma is a right C-comodule whose carrier is a (B, A)-bimodule, f.g.
projective over A, with dual basis e = sum e_i (x) f_i.  D = Sigma* (x)_B Sigma
is the comatrix coring; can: D -> C sends g (x) u to g(u[0]) u[1].
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield

import numpy as np

from .algebra import (
    Algebra,
    Bimodule,
    DualBasis,
    InputError,
    MapSpace,
    dual_basis,
    dual_module,
    ident,
    is_faithfully_flat,
    is_generator_module,
    is_projective,
    lunitor,
    projective_dual_basis,
    random_right_module,
    tensor,
    tmap,
)
from .coring import (
    Comodule,
    Coring,
    CoringMorphism,
    cofree_comodule,
    colinear_hom,
    dual_ring,
    endomorphism_algebra,
    ca_injective_retraction,
)
from .exact import is_invertible, rank, kernel_basis


# ---------------------------------------------------------------------------
# comatrix corings


@dataclass
class ComatrixData:
    sigma: Bimodule
    basis: DualBasis
    coring: Coring
    sigma_coaction: Comodule
    dual_coaction: Comodule

    @property
    def dual(self):
        return self.basis.dual

    def check(self):
        bad = [f"coring:{x}" for x in self.coring.check()]
        bad += [f"sigma_coaction:{x}" for x in self.sigma_coaction.check()]
        bad += [f"dual_coaction:{x}" for x in self.dual_coaction.check()]
        return bad


def _e_ambient(db: DualBasis):
    """e as a vector in amb(Sigma) (x)_k Sigma*."""
    F = db.sigma.F
    return F.dot(F.kron(db.sigma.S, F.eye(db.dual.dim)), db.e_pair)


def comatrix_coring(sigma: Bimodule, label="D") -> ComatrixData:
    """D = Sigma* (x)_B Sigma with Delta(f (x) u) = f (x) e (x) u and eps(f (x) u) = f(u)."""
    F = sigma.F
    db = dual_basis(sigma)
    if db is None:
        raise InputError(f"{sigma.label}: not finitely generated projective over {sigma.right_alg.label}; "
                         "no comatrix coring")
    Sd = db.dual
    D = tensor(Sd, sigma)
    DD = tensor(D, D)
    e_col = _e_ambient(db).reshape(-1, 1)
    delta = F.dot(DD.P, F.kron(F.eye(Sd.dim), e_col, F.eye(sigma.amb_dim)), D.S)
    ev_amb = F.dot(Sd.ev, F.kron(F.eye(Sd.dim), sigma.P))
    counit = F.dot(ev_amb, D.S)
    coring = Coring(D, delta, counit, label=label)
    # rho(u) = e (x) u in Sigma (x)_A D ; rho(f) = f (x) e in D (x)_A Sigma*
    tgt = tensor(sigma, D)
    rho_r = F.dot(tgt.P, F.kron(e_col, F.eye(sigma.amb_dim)), sigma.S)
    tgt_l = tensor(D, Sd)
    rho_l = F.dot(tgt_l.P, F.kron(F.eye(Sd.dim), e_col))
    return ComatrixData(sigma, db, coring,
                        Comodule(coring, sigma, rho_r, "right", sigma.label),
                        Comodule(coring, Sd, rho_l, "left", Sd.label))


# ---------------------------------------------------------------------------
# canonical map


def canonical_map(sigma: Comodule):
    """can: Sigma* (x)_B Sigma -> C with B the left algebra of the carrier."""
    F = sigma.F
    S, Cr = sigma.carrier, sigma.coring
    C, A = Cr.carrier, Cr.A
    Sd = dual_module(S)
    D = tensor(Sd, S)
    blocks = []
    for Fk in Sd.space.maps:
        blocks.append(F.dot(lunitor(C), tmap(Fk, S, A.regular, ident(C), C, C), sigma.rho, S.P))
    if not blocks:
        return F.zeros((C.dim, D.dim)), D
    amb = np.concatenate(blocks, axis=1)
    return F.dot(amb, D.S), D


def can_morphism(sigma: Comodule, data: ComatrixData | None = None):
    """can as a coring morphism out of the comatrix coring of the carrier."""
    data = data or comatrix_coring(sigma.carrier)
    can, D = canonical_map(sigma)
    if D is not data.coring.carrier:
        raise AssertionError("comatrix carrier mismatch")
    return CoringMorphism(data.coring, sigma.coring, can, label="can")


def is_bijective(F, m):
    return m.shape[0] == m.shape[1] and rank(F, m) == m.shape[0]


def is_surjective(F, m):
    return rank(F, m) == m.shape[0] if m.size else m.shape[0] == 0


def is_injective(F, m):
    return rank(F, m) == m.shape[1] if m.size else m.shape[1] == 0


def rebase(sigma: Comodule, T: Algebra, maps, label=None) -> Comodule:
    """Sigma with its left action replaced by the algebra T acting through ``maps``."""
    S = sigma.carrier
    carrier = Bimodule(T, S.right_alg, np.stack(maps), S.right, label=label or S.label, names=S.names)
    return sigma.with_carrier(carrier)


@dataclass
class EndData:
    T: Algebra
    space: MapSpace
    sigma_T: Comodule
    l: np.ndarray  # B -> T in coordinates


def end_data(sigma: Comodule) -> EndData:
    F = sigma.F
    T, space = endomorphism_algebra(sigma)
    sT = rebase(sigma, T, space.maps)
    B = sigma.carrier.left_alg
    cols = []
    for b in range(B.dim):
        c = space.coords(sigma.carrier.left[b])
        if c is None:
            raise InputError(f"{sigma.label}: left {B.label}-action is not colinear")
        cols.append(c)
    l = np.stack(cols, axis=1) if cols else F.zeros((T.dim, 0))
    return EndData(T, space, sT, l)


# ---------------------------------------------------------------------------
# the adjunction F = - (x)_B Sigma, G = Hom^C(Sigma, -)


class Adjunction:
    """F: M_B -> M^C and its right adjoint G, evaluated on explicit objects."""

    def __init__(self, sigma: Comodule):
        self.sigma = sigma
        self.F = sigma.F
        self.B = sigma.carrier.left_alg
        self.coring = sigma.coring
        self._g = {}

    def Fobj(self, N: Bimodule) -> Comodule:
        """N (x)_B Sigma with coaction N (x) rho."""
        S = self.sigma.carrier
        M = tensor(N, S)
        rho = tmap(ident(N), N, N, self.sigma.rho, S, self.sigma.target)
        return Comodule(self.coring, M, rho, "right", f"{N.label}(x){S.label}")

    def Gobj(self, M: Comodule):
        """Hom^C(Sigma, M) as a right B-module (phi . b = phi o b)."""
        key = id(M)
        if key in self._g:
            return self._g[key][0]
        F = self.F
        S = self.sigma.carrier
        space = colinear_hom(self.sigma, M, left_linear=False)
        k = Algebra.ground(F)
        right = []
        for b in range(self.B.dim):
            cols = []
            for X in space.maps:
                c = space.coords(F.dot(X, S.left[b]))
                if c is None:
                    raise AssertionError("Hom^C(Sigma, M) not closed under the B-action")
                cols.append(c)
            right.append(np.stack(cols, axis=1) if cols else F.zeros((0, 0)))
        mod = Bimodule(k, self.B, F.eye(space.dim)[None], np.stack(right) if right else F.zeros((0, 0, 0)),
                       label=f"Hom({S.label},{M.label})")
        mod.space = space
        self._g[key] = (mod, M)
        return mod

    def nu(self, N: Bimodule):
        """nu_N: N -> G(F(N)), n -> (u -> n (x) u)."""
        F = self.F
        S = self.sigma.carrier
        FN = self.Fobj(N)
        G = self.Gobj(FN)
        cols = []
        for t in range(N.dim):
            n_amb = F.dot(N.S, F.unit_vector(N.dim, t)).reshape(-1, 1)
            X = F.dot(FN.carrier.P, F.kron(n_amb, S.S))
            c = G.space.coords(X)
            if c is None:
                raise AssertionError("n (x) - is not colinear")
            cols.append(c)
        return (np.stack(cols, axis=1) if cols else F.zeros((G.dim, 0))), FN, G

    def zeta(self, M: Comodule):
        """zeta_M: G(M) (x)_B Sigma -> M, phi (x) u -> phi(u)."""
        F = self.F
        S = self.sigma.carrier
        G = self.Gobj(M)
        src = tensor(G, S)
        if G.dim == 0:
            return F.zeros((M.dim, src.dim)), G, src
        amb = np.concatenate([F.dot(X, S.P) for X in G.space.maps], axis=1)
        return F.dot(amb, src.S), G, src

    def triangles(self, N: Bimodule, M: Comodule):
        """(zeta_FN o F(nu_N) == id, G(zeta_M) o nu_GM == id)."""
        F = self.F
        S = self.sigma.carrier
        nuN, FN, GFN = self.nu(N)
        zFN, _, _ = self.zeta(FN)
        Fnu = tmap(nuN, N, GFN, ident(S), S, S)
        t1 = F.equal(F.dot(zFN, Fnu), ident(FN.carrier))
        zM, GM, _ = self.zeta(M)
        nuGM, FGM, GFGM = self.nu(GM)
        # G(zeta_M): Hom^C(Sigma, GM (x) Sigma) -> Hom^C(Sigma, M), psi -> zeta_M o psi
        ok = True
        for j in range(GM.dim):
            psi = GFGM.space.from_coords(nuGM[:, j])
            img = F.dot(zM, psi)
            if not F.equal(img, GM.space.maps[j]):
                ok = False
                break
        return t1, ok

    def l_equals_nu_B(self, l_coords, Tspace: MapSpace):
        """nu_B followed by B (x)_B Sigma ~ Sigma equals l: B -> T."""
        F = self.F
        B = self.B
        Breg = B.regular.forget_left()
        nuB, FB, GFB = self.nu(Breg)
        lun = _lunit_right(self.sigma.carrier, Breg)
        for b in range(B.dim):
            X = F.dot(lun, GFB.space.from_coords(nuB[:, b]))
            if not F.equal(X, Tspace.from_coords(l_coords[:, b])):
                return False
        return True


def _lunit_right(S: Bimodule, Breg: Bimodule):
    """B (x)_B Sigma -> Sigma for B carried as a (k, B)-bimodule."""
    F = S.F
    src = tensor(Breg, S)
    amb = np.concatenate([F.dot(S.left[i], S.P) for i in range(S.left_alg.dim)], axis=1)
    return F.dot(amb, src.S)


def dual_to_hom(sigma: Comodule):
    """alpha: Sigma* -> Hom^C(Sigma, C), f -> (u -> f(u[0]) u[1]), in coordinates."""
    F = sigma.F
    S, Cr = sigma.carrier, sigma.coring
    C, A = Cr.carrier, Cr.A
    Sd = dual_module(S)
    adj = Adjunction(sigma)
    G = adj.Gobj(Cr.right_comodule())
    cols = []
    for Fk in Sd.space.maps:
        X = F.dot(lunitor(C), tmap(Fk, S, A.regular, ident(C), C, C), sigma.rho)
        c = G.space.coords(X)
        if c is None:
            raise AssertionError("alpha(f) is not colinear")
        cols.append(c)
    return (np.stack(cols, axis=1) if cols else F.zeros((G.dim, 0))), G


def evaluation_map(sigma_T: Comodule, M: Comodule):
    """ev_M: Hom^C(Sigma, M) (x)_T Sigma -> M (Sigma with T = End^C(Sigma) acting)."""
    z, G, src = Adjunction(sigma_T).zeta(M)
    return z


def test_objects(sigma: Comodule, rng, n_random=4):
    """Seeded finite families (Ns, Ms) of right B-modules and right C-comodules."""
    Cr = sigma.coring
    B, A = sigma.carrier.left_alg, Cr.A
    adj = Adjunction(sigma)
    Ns = [B.regular.forget_left()]
    Ns += [random_right_module(B, rng, label=f"N{j}") for j in range(n_random)]
    Ms = [sigma, Cr.right_comodule(), cofree_comodule(A.regular.forget_left(), Cr)]
    for j in range(n_random):
        if j % 2 == 0:
            Ms.append(cofree_comodule(random_right_module(A, rng, label=f"L{j}"), Cr))
        else:
            Ms.append(adj.Fobj(random_right_module(B, rng, label=f"N'{j}")))
    return Ns, Ms


# ---------------------------------------------------------------------------
# generators


def left_projective(C: Coring) -> bool:
    return is_projective(C.carrier, "left")


def sigma_over_dual(sigma: Comodule) -> Bimodule:
    return dual_ring(sigma.coring, "left").module_of(sigma)


def is_generator(sigma: Comodule):
    """Sigma generates M^C (trace ideal over *C is everything); None if C is not
    f.g. projective as a left A-module (hypothesis of the trace-ideal route)."""
    if not left_projective(sigma.coring):
        return None
    if sigma.dim == 0:
        return False
    return is_generator_module(sigma_over_dual(sigma), "right")


def is_progenerator(sigma: Comodule):
    if not left_projective(sigma.coring):
        return None
    if sigma.dim == 0:
        return False
    M = sigma_over_dual(sigma)
    return is_projective(M, "right") and is_generator_module(M, "right")


# ---------------------------------------------------------------------------
# Galois report


@dataclass
class GaloisReport:
    dim_T: int
    dim_D: int
    can_bijective: bool  # over T
    can_B_bijective: bool  # over the given B
    can_is_morphism: list
    l_iso: bool
    faithfully_flat: bool  # Sigma over B
    faithfully_flat_T: bool
    flat_T: bool
    c_left_projective: bool
    generator: object
    progenerator: object
    zeta_C_bijective: bool
    ev_C_bijective: bool
    ev_cofree_bijective: bool
    ca_injective: bool
    flags: dict = dfield(default_factory=dict)

    @property
    def consistent(self):
        return all(self.flags.values())


def galois_report(sigma: Comodule) -> GaloisReport:
    F = sigma.F
    S = sigma.carrier
    B = S.left_alg
    ed = end_data(sigma)
    sT = ed.sigma_T
    canT, DT = canonical_map(sT)
    canB, DB = canonical_map(sigma)
    bijT = is_bijective(F, canT)
    bijB = is_bijective(F, canB)
    try:
        morph = can_morphism(sigma).check()
    except InputError:
        morph = ["no dual basis"]
    l_iso = is_bijective(F, ed.l)
    ff = is_faithfully_flat(S, "left")
    ffT = is_faithfully_flat(sT.carrier, "left")
    flatT = is_projective(sT.carrier, "left")
    cl = left_projective(sigma.coring)
    gen = is_generator(sigma)
    pgen = is_progenerator(sigma)
    adj = Adjunction(sigma)
    zC, _, _ = adj.zeta(sigma.coring.right_comodule())
    zbij = is_bijective(F, zC)
    evC = is_bijective(F, evaluation_map(sT, sigma.coring.right_comodule()))
    cof = cofree_comodule(sigma.coring.A.regular.forget_left(), sigma.coring)
    evcof = is_bijective(F, evaluation_map(sT, cof))
    inj = ca_injective_retraction(sigma) is not None
    flags = {}
    flags["can_coring_morphism"] = not morph
    flags["zeta_C_vs_can"] = zbij == bijB
    flags["ev_C_vs_galois"] = evC == bijT
    if bijT:
        flags["galois_ev_cofree"] = evcof
    if cl:
        flags["flat_galois_vs_generator"] = (bijT and flatT) == bool(gen)
        flags["ff_galois_vs_progenerator"] = (bijT and ffT) == bool(pgen)
    return GaloisReport(ed.T.dim, DT.dim, bijT, bijB, morph, l_iso, ff, ffT, flatT, cl, gen, pgen,
                        zbij, evC, evcof, inj, flags)
