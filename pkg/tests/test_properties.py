"""Randomized properties: quadratic extensions F_p[x]/(x^2 - a x - b) over F_p,
matrix corings of k^n, and the adjunction on random modules."""

import numpy as np
from hypothesis import HealthCheck, given, settings, strategies as st

from helpers import fixture

from coringlab.algebra import Algebra, AlgebraMorphism, Bimodule, random_right_module
from coringlab.coring import grouplike_comodule, is_grouplike, sweedler_coring
from coringlab.exact import Field
from coringlab.galois import Adjunction, comatrix_coring, end_data, galois_report
from coringlab.morita import MoritaContext, strictness_bundles
from coringlab.structure import (
    frobenius_system,
    is_coseparable,
    normalization_conditions,
    v2_space,
)

FAST = settings(max_examples=12, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def quadratic(p, a, b):
    F = Field(p)
    mult = np.zeros((2, 2, 2), dtype=np.int64)
    mult[0, 0] = [1, 0]
    mult[0, 1] = mult[1, 0] = [0, 1]
    mult[1, 1] = [b % p, a % p]
    return Algebra(F, mult, [1, 0], label="A", names=["1", "x"])


def sweedler_case(p, a, b):
    A = quadratic(p, a, b)
    i = AlgebraMorphism.unit_map(A)
    C = sweedler_coring(i)
    F = A.F
    x = F.dot(C.carrier.P, F.kron(A.unit, A.unit))
    return A, C, grouplike_comodule(C, x, i, label="S"), x


quad = st.tuples(st.sampled_from([2, 3, 5]), st.integers(0, 4), st.integers(0, 4))


@FAST
@given(quad)
def test_sweedler_of_quadratic_extension(pab):
    A, C, S, x = sweedler_case(*pab)
    assert A.check() == []
    assert C.check() == []
    assert is_grouplike(C, x) and S.check() == []
    g = galois_report(S)
    # a finite extension of a field is always Galois for its Sweedler coring
    assert g.can_bijective and g.l_iso and g.consistent
    assert strictness_bundles(S).agree


@FAST
@given(quad)
def test_quadratic_sweedler_coseparable_and_frobenius(pab):
    A, C, S, _ = sweedler_case(*pab)
    theta = is_coseparable(C)
    assert theta is not None
    assert normalization_conditions(theta, end_data(S).sigma_T) == [True] * 4
    sys, s = frobenius_system(C)
    assert sys is not None and sys.ok, s.status


@FAST
@given(quad, st.integers(0, 2 ** 16))
def test_normalization_conditions_agree_on_v2(pab, seed):
    A, C, S, _ = sweedler_case(*pab)
    sT = end_data(S).sigma_T
    V = v2_space(C)
    rng = np.random.default_rng(seed)
    for _ in range(3):
        th = V.from_coords(A.F.random(rng, V.dim))
        assert len(set(normalization_conditions(th, sT))) == 1


@FAST
@given(st.sampled_from([2, 3]), st.integers(1, 3))
def test_matrix_corings(p, n):
    F = Field(p)
    k = Algebra.ground(F)
    sigma = Bimodule(k, k, F.eye(n)[None], F.eye(n)[None], label="V")
    d = comatrix_coring(sigma)
    assert d.check() == []
    assert d.coring.dim == n * n
    ctx = MoritaContext(d.sigma_coaction)
    assert ctx.identities() == (True, True)
    sys, _ = frobenius_system(d.coring)
    assert sys is not None and sys.ok


@FAST
@given(st.sampled_from(["t", "g", "n", "m"]), st.integers(0, 2 ** 16))
def test_triangles_on_random_modules(name, seed):
    f = fixture(name)
    adj = Adjunction(f.S)
    rng = np.random.default_rng(seed)
    B = f.S.carrier.left_alg
    N = random_right_module(B, rng)
    M = adj.Fobj(random_right_module(B, rng))
    assert adj.triangles(N, M) == (True, True)
    assert adj.triangles(N, f.C.right_comodule()) == (True, True)
