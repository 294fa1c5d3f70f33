"""Solver spaces against brute-force enumeration on every GF(2) fixture."""

import numpy as np
import pytest

from helpers import fixture
from oracles import (
    as_set,
    colinear_endomorphisms,
    q_colinear,
    q_pointwise,
    retractions,
    span_set,
    v2_oracle,
)

from coringlab.coring import cofree_comodule, colinear_hom
from coringlab.galois import end_data
from coringlab.morita import MoritaContext
from coringlab.structure import is_coseparable, v2_space


@pytest.mark.parametrize("name", ["t", "g", "n", "m"])
def test_spaces_match_enumeration(name):
    f = fixture(name)
    F, S, C = f.F, f.S, f.C
    assert as_set(colinear_endomorphisms(S)) == span_set(F, end_data(S).space.maps)
    Q = span_set(F, MoritaContext(S).Qspace.maps)
    assert as_set(q_pointwise(S)) == Q
    assert as_set(q_colinear(S)) == Q
    assert as_set(v2_oracle(C)) == span_set(F, v2_space(C).maps)


@pytest.mark.parametrize("name", ["t", "g", "n", "m"])
def test_retractions_match_enumeration(name):
    f = fixture(name)
    F, S = f.F, f.S
    cof = cofree_comodule(S.carrier, f.C)
    sp = colinear_hom(cof, S, left_linear=False)
    eye = np.eye(S.dim, dtype=np.int64)
    eng = {x for x in span_set(F, sp.maps)
           if np.array_equal(np.asarray(x, dtype=np.int64).reshape(S.dim, cof.dim) @ S.rho.astype(np.int64) % F.p,
                             eye)}
    assert as_set(retractions(S)) == eng and eng


@pytest.mark.parametrize("name", ["t", "g", "n", "m"])
def test_cointegral_existence_matches_enumeration(name):
    f = fixture(name)
    C = f.C
    counit = tuple(int(v) for v in np.asarray(C.counit, dtype=np.int64).ravel())
    found = any(tuple(int(v) for v in (th @ C.delta.astype(np.int64) % 2).ravel()) == counit
                for th in v2_oracle(C))
    assert found == (is_coseparable(C) is not None)
