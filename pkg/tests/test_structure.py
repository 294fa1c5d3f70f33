import pytest

from helpers import NAMES, fixture

from coringlab.algebra import InputError
from coringlab.exact import rank
from coringlab.galois import end_data
from coringlab.structure import (
    check_system,
    cofrobenius,
    descent_report,
    frobenius_system,
    frobenius_transport,
    is_coseparable,
    is_normalized,
    normalization_conditions,
    normalized_projection,
    search_rank,
    sigma_equals_c_report,
    transpose_j,
    v2_space,
)


def _one_one(C):
    F, A = C.F, C.A
    return F.dot(C.carrier.P, F.kron(A.unit, A.unit))


def test_v2_examples():
    t = fixture("t")
    V = v2_space(t.C)
    assert V.dim == 1
    g = fixture("g")
    theta = is_coseparable(g.C)
    assert theta is not None
    assert g.F.equal(g.F.dot(theta, g.C.delta), g.C.counit)


def test_nilpotent_sweedler_is_coseparable():
    # B = F2 is a field, so B -> A splits as B-bimodules and a cointegral exists
    n = fixture("n")
    theta = is_coseparable(n.C)
    assert theta is not None
    assert n.F.equal(n.F.dot(theta, n.C.delta), n.C.counit)


def test_trivial_cointegral_is_multiplication():
    t = fixture("t")
    theta = is_coseparable(t.C)
    assert t.F.equal(theta, t.F.eye(1))


def test_normalization_examples():
    for name in ("t", "g", "n"):
        f = fixture(name)
        sT = end_data(f.S).sigma_T
        theta = is_coseparable(f.C)
        assert normalization_conditions(theta, sT) == [True] * 4
    g = fixture("g")
    sT = end_data(g.S).sigma_T
    zero = g.F.zeros(is_coseparable(g.C).shape)
    assert normalization_conditions(zero, sT) == [False] * 4
    assert not is_normalized(zero, sT)


def test_projection_examples():
    t = fixture("t")
    sT = end_data(t.S).sigma_T
    p = normalized_projection(is_coseparable(t.C), sT)
    assert p.ok and t.F.equal(p.t, t.F.eye(1))
    g = fixture("g")
    sT = end_data(g.S).sigma_T
    p = normalized_projection(is_coseparable(g.C), sT)
    # Sigma (x)_A Sigma* = A (x)_A A has dimension 2
    assert p.ok and p.t.shape == (2, 2)
    assert rank(g.F, p.t) == 1
    with pytest.raises(InputError):
        normalized_projection(g.F.zeros((g.A.dim, g.C.CC.dim)), sT)


def test_descent_reports():
    for name in ("t", "g", "n"):
        f = fixture(name)
        r = descent_report(f.S, grouplike=_one_one(f.C) if name != "t" else None)
        assert r.consistent, (name, r.flags)
        assert r.coseparable and r.can_surjective and r.equivalence
        if name != "t":
            assert r.grouplike["invariants_match_T"] and r.grouplike["split_mono"]


def test_frobenius_examples():
    t = fixture("t")
    sys, s = frobenius_system(t.C)
    assert sys.ok and t.F.equal(sys.z, t.F.arr([1])) and t.F.equal(sys.theta, t.F.eye(1))
    for name in ("g", "m", "n", "q"):
        f = fixture(name)
        sys, s = frobenius_system(f.C)
        assert sys is not None and sys.ok, (name, s.status)
        assert check_system(f.C, sys.z, sys.theta) == {k: True for k in check_system(f.C, sys.z, sys.theta)}


def test_frobenius_transport_examples():
    for name in ("t", "g", "m"):
        f = fixture(name)
        sys, _ = frobenius_system(f.C)
        tr = frobenius_transport(f.S, sys)
        assert all(tr.values()), (name, tr)


def test_transpose():
    for name in ("t", "g", "m"):
        f = fixture(name)
        sys, _ = frobenius_system(f.C)
        jt, flags = transpose_j(f.C, sys.j)
        assert all(flags.values())
    t = fixture("t")
    sys, _ = frobenius_system(t.C)
    assert t.F.equal(transpose_j(t.C, sys.j)[0], t.F.eye(1))


def test_cofrobenius_examples():
    for name in ("t", "g", "m"):
        f = fixture(name)
        for side in ("right", "left"):
            j, s = cofrobenius(f.C, side)
            assert j is not None and s.status == "found"
    g = fixture("g")
    j, _ = cofrobenius(g.C)
    assert rank(g.F, j) == g.C.dim
    s = search_rank(g.F, [], 3)
    assert s.status == "absent"


def test_search_rank_exhaustion_proves_absence():
    F = fixture("g").F
    # two rank-one 2x2 maps whose span has no invertible member
    maps = [F.arr([[1, 0], [0, 0]]), F.arr([[0, 1], [0, 0]])]
    assert search_rank(F, maps, 2).status == "absent"


def test_sigma_equals_c():
    for name in ("t", "g", "m"):
        r = sigma_equals_c_report(fixture(name).C)
        assert r.consistent, (name, r.flags)
        assert r.T_is_Cstar and r.frobenius and r.companion_trivial
        assert [r.faithfully_flat, r.progenerator, r.strict, r.equivalence] == [True] * 4
