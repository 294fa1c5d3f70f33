"""Shared builders: bundled fixtures, coring mutations and brute-force oracles."""

from __future__ import annotations

import itertools
from functools import lru_cache
from pathlib import Path
from types import SimpleNamespace

import numpy as np

import coringlab
from coringlab.algebra import Bimodule, ident, lunitor, runitor, tmap
from coringlab.coring import Coring
from coringlab.fixture import load_fixture
from coringlab.morita import linear_space

FIXDIR = Path(coringlab.__file__).parent / "fixtures"
NAMES = ("t", "g", "n", "m", "q")


@lru_cache(maxsize=None)
def fixture(name):
    fx = load_fixture(FIXDIR / f"fix_{name}.crl")
    cn = next(iter(fx.corings))
    C = fx.corings[cn].coring
    S = fx.comodules_of(cn)[0][1]
    return SimpleNamespace(name=name, fx=fx, C=C, S=S, F=fx.field, A=C.A, entry=fx.corings[cn])


# ---------------------------------------------------------------------------
# coring mutations


def _perturbations(C: Coring, bilinear: bool):
    """delta': C -> C (x)_A C with both counit contractions zero (A-bilinear if asked)."""
    F, X, A, CC = C.F, C.carrier, C.A, C.CC
    reg = A.regular
    I = ident(X)

    def fn(d):
        parts = [F.dot(lunitor(X), tmap(C.counit, X, reg, I, X, X), d).reshape(-1),
                 F.dot(runitor(X), tmap(I, X, X, C.counit, X, reg), d).reshape(-1)]
        if bilinear:
            for a in range(A.dim):
                parts.append(F.sub(F.dot(d, X.left[a]), F.dot(CC.left[a], d)).reshape(-1))
                parts.append(F.sub(F.dot(d, X.right[a]), F.dot(CC.right[a], d)).reshape(-1))
        return np.concatenate(parts)

    return linear_space(F, fn, (CC.dim, X.dim))


def _first(C, space, expected, make):
    cands = list(space.maps)
    cands += [C.F.add(a, b) for a, b in itertools.combinations(space.maps, 2)]
    for d in cands:
        M = make(d)
        bad = M.check()
        if bad and bad[0] == expected:
            return M
    return None


def coassociativity_break(C: Coring):
    sp = _perturbations(C, bilinear=True)
    return _first(C, sp, "coassociativity", lambda d: Coring(C.carrier, C.F.add(C.delta, d), C.counit, C.label))


def delta_linearity_break(C: Coring):
    sp = _perturbations(C, bilinear=False)
    return _first(C, sp, "delta_linearity", lambda d: Coring(C.carrier, C.F.add(C.delta, d), C.counit, C.label))


def counit_linearity_break(C: Coring):
    F, X, A = C.F, C.carrier, C.A
    for i in range(A.dim):
        for j in range(X.dim):
            E = F.zeros((A.dim, X.dim))
            E[i, j] = F.one
            M = Coring(X, C.delta, F.add(C.counit, E), C.label)
            bad = M.check()
            if bad and bad[0] == "counit_linearity":
                return M
    return None


def bimodule_break(C: Coring, side):
    """Carrier with the unit of A acting by zero on one side (A = k only: the
    tensor square keeps its shape)."""
    F, X = C.F, C.carrier
    left, right = X.left.copy(), X.right.copy()
    (left if side == "left" else right)[0] = F.zeros((X.dim, X.dim))
    Y = Bimodule(X.left_alg, X.right_alg, left, right, label=X.label, names=X.names)
    return Coring(Y, C.delta, C.counit, C.label)


def mutations(C: Coring):
    """Five (expected axiom, mutated coring) pairs."""
    F = C.F
    zero_eps = Coring(C.carrier, C.delta, F.zeros(C.counit.shape), C.label)
    zero_delta = Coring(C.carrier, F.zeros(C.delta.shape), C.counit, C.label)
    out = [("counit", zero_eps), ("counit", zero_delta)]
    if C.A.is_ground:
        cb = coassociativity_break(C)
        if cb is not None:
            out.append(("coassociativity", cb))
        else:
            out.append(("counit", Coring(C.carrier, F.zeros(C.delta.shape), F.zeros(C.counit.shape), C.label)))
        out += [("bimodule", bimodule_break(C, "left")), ("bimodule", bimodule_break(C, "right"))]
    else:
        out += [("counit_linearity", counit_linearity_break(C)), ("delta_linearity", delta_linearity_break(C)),
                ("coassociativity", coassociativity_break(C))]
    return out
