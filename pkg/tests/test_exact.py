import numpy as np
from hypothesis import given, settings, strategies as st

from coringlab.exact import Field, Subspace, inverse, kernel_basis, rank, rref, solve_affine

F2 = Field(2)
QQ = Field(None)


def test_field_basics():
    assert F2.is_prime and not QQ.is_prime
    assert Field(5).inv(2) == 3
    assert QQ.inv(QQ.scalar(3)) * 3 == 1


def test_rref_identity_and_zero():
    r, piv = rref(F2, F2.eye(2))
    assert F2.equal(r, F2.eye(2)) and piv == [0, 1]
    r, piv = rref(F2, F2.zeros((3, 3)))
    assert F2.is_zero(r) and piv == []


def test_rref_rational():
    r, piv = rref(QQ, QQ.arr([[1, 2], [2, 4]]))
    assert QQ.equal(r, QQ.arr([[1, 2], [0, 0]])) and piv == [0]


def test_kernel_examples():
    assert kernel_basis(F2, F2.eye(3)).shape == (3, 0)
    assert kernel_basis(F2, F2.zeros((2, 3))).shape == (3, 3)
    K = kernel_basis(F2, F2.arr([[1, 1]]))
    assert F2.equal(K, F2.arr([[1], [1]]))


def test_solve_examples():
    b = F2.arr([1, 0, 1])
    assert F2.equal(solve_affine(F2, F2.eye(3), b), b)
    assert F2.equal(solve_affine(F2, F2.arr([[1, 1]]), F2.arr([1])), F2.arr([1, 0]))
    assert solve_affine(QQ, QQ.arr([[0]]), QQ.arr([1])) is None


def test_inverse_rational():
    m = QQ.arr([[2, 1], [1, 1]])
    assert QQ.equal(QQ.dot(m, inverse(QQ, m)), QQ.eye(2))


def _matrix(p):
    return st.integers(1, 5).flatmap(lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c).map(
            lambda xs: np.array(xs, dtype=np.int64).reshape(r, c))))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]).flatmap(lambda p: st.tuples(st.just(p), _matrix(p))))
def test_rank_nullity_and_kernel(pm):
    p, m = pm
    F = Field(p)
    m = F.arr(m)
    K = kernel_basis(F, m)
    assert rank(F, m) + K.shape[1] == m.shape[1]
    assert F.is_zero(F.dot(m, K))
    assert rank(F, K) == K.shape[1]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5]).flatmap(lambda p: st.tuples(st.just(p), _matrix(p), st.randoms())))
def test_solve_consistent_systems(pmr):
    p, m, rnd = pmr
    F = Field(p)
    m = F.arr(m)
    x0 = F.arr([rnd.randrange(p) for _ in range(m.shape[1])])
    b = F.dot(m, x0)
    x = solve_affine(F, m, b)
    assert x is not None and F.equal(F.dot(m, x), b)


@settings(max_examples=40, deadline=None)
@given(_matrix(7))
def test_rational_rank_matches_integer_rank(m):
    # entries in 0..6 read over QQ: rank is the numpy rank (exact for these sizes)
    assert rank(QQ, QQ.arr(m.tolist())) == np.linalg.matrix_rank(m.astype(float))


def test_subspace_coordinates():
    S = Subspace(F2, F2.arr([[1, 0], [1, 1], [0, 1]]))
    v = F2.arr([1, 0, 1])
    assert S.contains(v)
    assert F2.equal(F2.dot(S.basis, S.coord(v)), v)
    assert not S.contains(F2.arr([1, 0, 0]))
