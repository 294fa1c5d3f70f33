from helpers import NAMES, fixture

from coringlab.coring import dual_ring
from coringlab.galois import is_bijective
from coringlab.morita import (
    MoritaContext,
    comatrix_context_morphism,
    comatrix_dual_isos,
    dual_can,
    module_context_morphism,
    strictness_bundles,
)


def test_dual_ring_examples():
    assert dual_ring(fixture("t").C).dim == 1
    for name in ("g", "m"):
        R = dual_ring(fixture(name).C).algebra
        assert R.dim == 4 and R.check() == []
        assert dual_ring(fixture(name).C, "right").algebra.check() == []


def test_dual_can_examples():
    for name in ("t", "g", "q"):
        dc = dual_can(fixture(name).S)
        assert dc.starcan_bijective and dc.canstar_bijective
        assert dc.starcan_antimultiplicative and dc.canstar_multiplicative


def test_comatrix_dual_isomorphisms():
    assert comatrix_dual_isos(fixture("m").fx.bimodules["Sigma"]) == (True, True)


def test_context_examples():
    ctx = MoritaContext(fixture("t").S)
    assert (ctx.T.dim, ctx.R.dim, ctx.Sigma.dim, ctx.Qspace.dim) == (1, 1, 1, 1)
    assert ctx.strictness()[:2] == (True, True)
    ctx = MoritaContext(fixture("g").S)
    assert (ctx.T.dim, ctx.R.dim, ctx.Sigma.dim, ctx.Qspace.dim) == (1, 4, 2, 2)
    ts, ms, flags = ctx.strictness()
    assert ts and ms and all(flags.values())
    # Sigma = C: T = End^C(C) is the right dual ring
    g = fixture("g")
    ctx = MoritaContext(g.C.right_comodule())
    assert ctx.T.dim == dual_ring(g.C, "right").dim
    assert ctx.identities() == (True, True)


def test_context_axioms_on_all_fixtures():
    for name in NAMES:
        ctx = MoritaContext(fixture(name).S)
        assert ctx.identities() == (True, True)
        assert all(ctx.bilinearity().values())
        assert ctx.q_is_colinear_dual()


def test_nilpotent_extension_is_strict():
    # A = F2[x]/(x^2) over F2: T = F2, tau and mu both onto
    ctx = MoritaContext(fixture("n").S)
    ts, ms, flags = ctx.strictness()
    assert ts and ms and all(flags.values())


def test_omega_examples():
    g = fixture("g")
    ctx = MoritaContext(g.S)
    ts = ctx.strictness()[0]
    for N in (g.C.right_comodule(), g.S):
        assert is_bijective(g.F, ctx.omega(N)) == ts


def test_module_context_morphisms():
    for name in ("t", "g", "n", "m"):
        assert module_context_morphism(MoritaContext(fixture(name).S)).consistent
    m = comatrix_context_morphism(fixture("m").fx.bimodules["Sigma"])
    assert m.consistent and m.lam_bijective and m.l_bijective


def test_bundles_agree():
    for name in NAMES:
        b = strictness_bundles(fixture(name).S)
        assert b.agree, (name, b.verdicts)
        assert b.objects_tested == 1 + 4 + 3 + 4
