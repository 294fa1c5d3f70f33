import numpy as np
import pytest

from helpers import NAMES, fixture

from coringlab.algebra import Algebra, AlgebraMorphism, InputError, hom_space, random_right_module
from coringlab.coring import (
    Coring,
    Comodule,
    ca_injective_retraction,
    cofree_comodule,
    colinear_hom,
    cotensor,
    dual_left_comodule,
    grouplike_comodule,
    grouplikes,
    is_colinear,
    is_grouplike,
    sweedler_coring,
)
from coringlab.exact import Field


def one_one(C):
    F, A = C.F, C.A
    return F.dot(C.carrier.P, F.kron(A.unit, A.unit))


def test_fixture_corings_valid():
    for n in NAMES:
        assert fixture(n).C.check() == []


def test_zero_counit_names_counit():
    C = fixture("g").C
    bad = Coring(C.carrier, C.delta, C.F.zeros(C.counit.shape)).check()
    assert bad == ["counit"]


def test_sweedler_dimensions():
    k = Algebra.ground(Field(2))
    assert sweedler_coring(AlgebraMorphism.unit_map(k)).dim == 1
    assert fixture("g").C.dim == 4
    assert fixture("q").C.dim == 4
    assert fixture("q").C.F.p is None


def test_comodule_examples():
    for n in NAMES:
        f = fixture(n)
        assert f.C.right_comodule().check() == []
        assert f.C.left_comodule().check() == []
        assert f.S.check() == []
    S = fixture("g").S
    zero = Comodule(S.coring, S.carrier, S.F.zeros(S.rho.shape), "right", "Z")
    assert "counit" in zero.check()


def test_opposite_round_trip():
    for n in NAMES:
        f = fixture(n)
        Cop = f.C.opposite()
        assert Cop.check() == []
        assert Cop.opposite() is f.C
        assert f.F.equal(f.S.opposite().opposite().rho, f.S.rho)
        assert f.S.opposite().check() == []


def test_colinear_hom_examples():
    t, g = fixture("t"), fixture("g")
    assert colinear_hom(t.C.right_comodule(), t.C.right_comodule()).dim == 1
    assert colinear_hom(g.S, g.S, left_linear=False).dim == 1
    sp = colinear_hom(g.S, g.C.right_comodule())
    assert sp.dim == 2
    assert all(is_colinear(m, g.S, g.C.right_comodule()) for m in sp.maps)


def test_hom_into_cofree_matches_module_maps():
    # Hom_A(L, M) and Hom^C(L, M (x)_A C) have equal dimension
    rng = np.random.default_rng(7)
    for n in NAMES:
        f = fixture(n)
        for _ in range(3):
            M = random_right_module(f.A, rng)
            lhs = hom_space(f.S.carrier, M, left=False).dim
            rhs = colinear_hom(f.S, cofree_comodule(M, f.C), left_linear=False).dim
            assert lhs == rhs


def test_cotensor_examples():
    for n in NAMES:
        f = fixture(n)
        T, K = cotensor(f.S, f.C.left_comodule())
        assert K.shape[1] == f.S.dim
    g = fixture("g")
    _, K = cotensor(g.S, dual_left_comodule(g.S))
    assert K.shape[1] == 1
    t = fixture("t")
    _, K = cotensor(t.S, dual_left_comodule(t.S))
    assert K.shape[1] == 1
    with pytest.raises(InputError):
        cotensor(g.S, g.S)


def test_dual_left_comodule_valid():
    for n in ("t", "g", "m", "n", "q"):
        L = dual_left_comodule(fixture(n).S)
        assert L.side == "left" and L.check() == []


def test_grouplike_examples():
    g, t, n = fixture("g"), fixture("t"), fixture("n")
    xs = grouplikes(g.C)
    assert any(g.F.equal(x, one_one(g.C)) for x in xs)
    assert len(xs) == 3
    assert all(is_grouplike(g.C, x) for x in xs)
    xs = grouplikes(t.C)
    assert len(xs) == 1 and t.F.equal(xs[0], t.F.arr([1]))
    assert is_grouplike(n.C, one_one(n.C))
    assert not is_grouplike(n.C, n.F.zeros(4))
    with pytest.raises(InputError):
        grouplikes(fixture("q").C)
    with pytest.raises(InputError):
        grouplikes(g.C, bound=3)


def test_grouplike_comodules_valid():
    g = fixture("g")
    for x in grouplikes(g.C):
        assert grouplike_comodule(g.C, x, AlgebraMorphism.unit_map(g.A)).check() == []


def test_ca_injective_examples():
    for n in NAMES:
        f = fixture(n)
        cof = cofree_comodule(f.A.regular.forget_left(), f.C)
        for M in (cof, f.C.right_comodule(), f.S):
            g = ca_injective_retraction(M)
            assert g is not None
            assert f.F.equal(f.F.dot(g, M.rho), f.F.eye(M.dim))
            assert is_colinear(g, cofree_comodule(M.carrier, f.C), M)
