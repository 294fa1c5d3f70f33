import numpy as np
import pytest

from helpers import fixture

from coringlab.algebra import (
    Algebra,
    AlgebraMorphism,
    Bimodule,
    InputError,
    dual_basis,
    dual_module,
    hom_space,
    is_faithfully_flat,
    lunitor,
    runitor,
    tensor,
    tensor_over,
    trace_ideal,
)
from coringlab.exact import Field, is_invertible

F2 = Field(2)


def split_f2():
    """A = F2 x F2 with orthogonal idempotents, Sigma = F2 x 0 as right A-module."""
    mult = np.zeros((2, 2, 2), dtype=np.int64)
    mult[0, 0, 0] = mult[1, 1, 1] = 1
    A = Algebra(F2, mult, [1, 1], label="E")
    k = Algebra.ground(F2)
    sigma = Bimodule(k, A, F2.eye(1)[None], F2.arr([[[1]], [[0]]]), label="P")
    return A, sigma


def zero_module(A):
    k = Algebra.ground(A.F)
    return Bimodule(k, A, A.F.zeros((1, 0, 0)), A.F.zeros((A.dim, 0, 0)), label="Z")


def test_algebra_axioms_on_fixtures():
    for n in ("t", "g", "n", "m", "q"):
        f = fixture(n)
        for alg in f.fx.algebras.values():
            assert alg.check() == []


def test_tensor_dimensions():
    g = fixture("g")
    A, k = g.A, g.fx.algebras["k"]
    left = Bimodule(A, k, A.L, F2.eye(2)[None])
    right = Bimodule(k, A, F2.eye(2)[None], A.R)
    T, _ = tensor_over(k, left, right)
    assert T.dim == 4
    # unit law: M (x)_A A has the dimension of M
    for n in ("g", "n", "q"):
        A = fixture(n).A
        assert tensor(A.regular, A.regular).dim == A.dim


def test_unitors_are_isomorphisms():
    for n in ("g", "n", "q"):
        A = fixture(n).A
        M = A.regular
        assert is_invertible(A.F, runitor(M))
        assert is_invertible(A.F, lunitor(M))


def test_comatrix_carrier_dimension():
    m = fixture("m")
    sigma = m.fx.bimodules["Sigma"]
    assert tensor(dual_module(sigma), sigma).dim == 4


def test_tensor_rejects_mismatched_middle():
    g = fixture("g")
    with pytest.raises(InputError):
        tensor(g.A.regular, fixture("t").A.regular)


def test_dual_module_dimensions():
    assert dual_module(fixture("g").A.regular.forget_left()).dim == 2
    assert dual_module(fixture("m").fx.bimodules["Sigma"]).dim == 2
    assert dual_module(fixture("t").A.regular).dim == 1


def test_dual_basis_examples():
    g = fixture("g")
    db = dual_basis(g.S.carrier)
    assert db is not None and db.check() == [] and len(db.pairs) == 1
    db = dual_basis(fixture("m").fx.bimodules["Sigma"])
    assert db is not None and db.check() == [] and len(db.pairs) == 2
    A, P = split_f2()
    db = dual_basis(P)
    assert db is not None and db.check() == []


def test_hom_space_examples():
    g = fixture("g")
    A = g.A
    assert hom_space(A.regular, A.regular, left=False, right=True).dim == 2
    k = Algebra.ground(F2)
    k2 = Bimodule(k, k, F2.eye(2)[None], F2.eye(2)[None])
    assert hom_space(k2, k.regular).dim == 2
    # left B-linear functionals on Sigma = F4 with B = F2
    assert hom_space(g.S.carrier, g.S.carrier.left_alg.regular, left=True, right=False).dim == 2


def test_trace_ideal_examples():
    g = fixture("g")
    assert trace_ideal(g.S.carrier, "left").shape[1] == 1
    A, P = split_f2()
    assert trace_ideal(zero_module(A), "right").shape[1] == 0
    I = trace_ideal(P, "right")
    assert I.shape[1] == 1 and F2.equal(I[:, 0], F2.arr([1, 0]))


def test_faithfully_flat_examples():
    g = fixture("g")
    assert is_faithfully_flat(g.S.carrier, "left")
    A, P = split_f2()
    assert not is_faithfully_flat(P, "right")
    assert not is_faithfully_flat(zero_module(A), "right")


def test_unit_map_is_algebra_morphism():
    for n in ("g", "n", "q"):
        A = fixture(n).A
        assert AlgebraMorphism.unit_map(A).check() == []
