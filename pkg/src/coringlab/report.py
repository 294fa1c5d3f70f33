"""Run the checks a fixture asks for and render deterministic reports.

A report is a plain dict (insertion-ordered, no timing, seeds recorded).
Every check returns ``status`` ("ran" or "unsupported"), ``verdicts``,
``witnesses`` (matrices as coordinate lists), ``dims`` and ``flags``; flags
are consistency requirements whose failure means an implementation bug and
turns into exit code 2.  Printed witnesses are read back from their printed
form and re-verified before the report is returned.
"""

from __future__ import annotations

import json
import os

import numpy as np

from .algebra import AlgebraMorphism, InputError, is_projective, lunitor
from .coring import Coring, grouplike_comodule, grouplikes, is_grouplike
from .exact import rank
from .fixture import CHECK_KINDS, Fixture
from .galois import (
    Adjunction,
    canonical_map,
    galois_report,
    is_bijective,
    left_projective,
    test_objects,
)
from .morita import MoritaContext, comatrix_context_morphism, module_context_morphism, strictness_bundles
from .structure import (
    check_system,
    cofrobenius,
    descent_report,
    frobenius_system,
    frobenius_transport,
    in_v2,
    is_coseparable,
    sigma_equals_c_report,
    transpose_j,
    v2_space,
)

GROUPLIKE_ENUM_DIM = 8


def fmt_matrix(F, m):
    m = np.asarray(m)
    if m.ndim == 1:
        return [F.fmt(x) for x in m]
    return [[F.fmt(x) for x in row] for row in m]


def read_matrix(F, rows, shape):
    """Inverse of fmt_matrix (empty matrices need their shape)."""
    if not rows or (isinstance(rows[0], list) and not rows[0]):
        return F.zeros(shape)
    return F.arr([[str(x) for x in r] for r in rows] if isinstance(rows[0], list) else [str(x) for x in rows])


def _result(status="ran", **kw):
    out = {"status": status, "verdicts": {}, "dims": {}, "witnesses": {}, "flags": {}}
    out.update(kw)
    return out


# ---------------------------------------------------------------------------
# individual checks


def check_axioms(fx: Fixture, C, S, seed):
    r = _result()
    for table, key in ((fx.algebras, "algebra"), (fx.morphisms, "morphism"), (fx.bimodules, "bimodule")):
        for n, X in table.items():
            r["verdicts"][f"{key} {n}"] = X.check() or "ok"
    for n, e in fx.corings.items():
        r["verdicts"][f"coring {n}"] = e.coring.check() or "ok"
        if e.kind == "comatrix":
            r["verdicts"][f"comatrix coactions {n}"] = e.source.check() or "ok"
    for n, M in fx.comodules.items():
        r["verdicts"][f"comodule {n}"] = M.check() or "ok"
    if S is not None and S.label not in fx.comodules:
        r["verdicts"][f"comodule {S.label} (canonical)"] = S.check() or "ok"
    return r


def check_galois(fx, C, S, seed):
    F = C.F
    g = galois_report(S)
    r = _result()
    r["verdicts"] = {
        "can_bijective": g.can_bijective, "can_bijective_over_given_B": g.can_B_bijective,
        "l_iso": g.l_iso, "faithfully_flat": g.faithfully_flat, "generator": g.generator,
        "progenerator": g.progenerator, "zeta_C_bijective": g.zeta_C_bijective,
        "C_left_fgp": g.c_left_projective, "ca_injective": g.ca_injective,
    }
    r["dims"] = {"T": g.dim_T, "comatrix": g.dim_D, "C": C.dim, "Sigma": S.dim}
    can, D = canonical_map(S)
    r["witnesses"]["can"] = fmt_matrix(F, can)
    r["witnesses"]["comatrix_basis"] = list(D.names)
    r["flags"] = dict(g.flags)
    if left_projective(C):
        b = strictness_bundles(S, seed=seed)
        r["verdicts"]["strict"] = b.detail["tau_surjective"] and b.detail["mu_surjective"]
        r["verdicts"]["bundles"] = b.verdicts
        r["flags"]["bundles_agree"] = b.agree
    return r


def check_strictness(fx, C, S, seed):
    if not left_projective(C):
        return _result("unsupported", reason=f"{C.label} is not f.g. projective as a left module")
    b = strictness_bundles(S, seed=seed)
    r = _result()
    r["verdicts"] = {
        "can_iso_and_faithfully_flat": b.can_iso_and_ff,
        "starcan_iso_and_progenerator": b.starcan_iso_and_progenerator,
        "l_iso_and_strict": b.l_iso_and_strict,
        "equivalence_on_objects": b.equivalence_on_objects,
    }
    d = b.detail
    r["verdicts"].update({k: d[k] for k in ("can", "faithfully_flat", "starcan", "l_iso",
                                            "tau_surjective", "mu_surjective")})
    r["dims"] = {"objects_tested": b.objects_tested}
    r["seed"] = seed
    r["flags"] = {"bundles_agree": b.agree}
    return r


def check_morita(fx, C, S, seed):
    F = C.F
    ctx = MoritaContext(S)
    r = _result()
    i1, i2 = ctx.identities()
    bil = ctx.bilinearity()
    ts, ms, sflags = ctx.strictness()
    r["dims"] = {"T": ctx.T.dim, "Cstar": ctx.R.dim, "Sigma": S.dim, "Q": ctx.Qspace.dim}
    rt, rm = ctx.image_dims()
    r["dims"].update({"image_tau": rt, "image_mu": rm})
    r["verdicts"] = {"tau_surjective": ts, "mu_surjective": ms, "strict": ts and ms,
                     "identity_Q_tau_mu": i1, "identity_tau_mu_Sigma": i2}
    r["verdicts"].update({f"bilinear_{k}": v for k, v in bil.items()})
    r["witnesses"]["Q_basis"] = [fmt_matrix(F, q) for q in ctx.Qspace.maps]
    r["flags"] = {"identity_Q_tau_mu": i1, "identity_tau_mu_Sigma": i2,
                  "bilinearity": all(bil.values()), "Q_is_colinear_dual": ctx.q_is_colinear_dual()}
    r["flags"].update(sflags)
    mm = module_context_morphism(ctx)
    r["verdicts"]["module_context_alpha_bijective"] = mm.alpha_bijective
    r["flags"]["module_context_morphism"] = mm.consistent
    e = _entry(fx, C)
    if e is not None and e.kind == "comatrix" and S is e.source.sigma_coaction:
        cm = comatrix_context_morphism(e.source.sigma)
        r["verdicts"]["comatrix_context_lambda_bijective"] = cm.lam_bijective
        r["flags"]["comatrix_context_morphism"] = cm.consistent
    return r


def _entry(fx, C):
    for e in fx.corings.values():
        if e.coring is C:
            return e
    return None


def _reverify_theta(C: Coring, printed):
    F = C.F
    th = read_matrix(F, printed, (C.A.dim, C.CC.dim))
    return in_v2(C, th) and F.equal(F.dot(th, C.delta), C.counit)


def check_coseparable(fx, C, S, seed):
    F = C.F
    V = v2_space(C)
    th = is_coseparable(C, V)
    r = _result()
    r["dims"] = {"V2": V.dim}
    r["verdicts"]["coseparable"] = th is not None
    if th is not None:
        r["witnesses"]["theta"] = fmt_matrix(F, th)
        r["witnesses"]["theta_domain_basis"] = list(C.CC.names)
        r["flags"]["witness_reverifies"] = _reverify_theta(C, r["witnesses"]["theta"])
    return r


def check_descent(fx, C, S, seed):
    d = descent_report(S, seed=seed, grouplike=_grouplike_of(fx, C, S))
    r = _result()
    r["verdicts"] = {"coseparable": d.coseparable, "normalized": d.normalized,
                     "projection_ok": d.projection_ok, "unit_inverse_ok": d.unit_inverse_ok,
                     "can_surjective": d.can_surjective, "equivalence_on_objects": d.equivalence,
                     "comatrix_split_mono": d.split_mono, "comatrix_coseparable": d.comatrix_coseparable,
                     "C_right_fgp": d.c_right_projective}
    if d.grouplike:
        r["verdicts"]["grouplike"] = d.grouplike
    r["dims"] = {"objects_tested": d.objects_tested}
    r["seed"] = seed
    r["flags"] = dict(d.flags)
    return r


def _grouplike_of(fx, C, S):
    """The grouplike x when S is A with coaction a -> x a (None otherwise)."""
    F = C.F
    A = C.A
    if S.carrier.dim != A.dim or S.carrier.right_alg is not A:
        return None
    if not F.equal(np.stack(list(S.carrier.right)), np.stack(list(A.regular.right))):
        return None
    # rho(1) = 1 (x) x  <=>  x is the image of the unit under A (x)_A C ~ C
    x = F.dot(lunitor(C.carrier), S.rho, A.unit)
    if not is_grouplike(C, x):
        return None
    M = grouplike_comodule(C, x, None)
    return x if F.equal(M.rho, S.rho) else None


def check_frobenius(fx, C, S, seed):
    F = C.F
    sys, s = frobenius_system(C, seed=seed)
    r = _result()
    r["seed"] = seed
    r["verdicts"]["frobenius"] = {"found": True, "absent": False}.get(s.status, "inconclusive")
    r["dims"] = {"search_attempts": s.attempts}
    r["verdicts"]["search_stage"] = s.stage
    if sys is None:
        return r
    r["witnesses"] = {"z": fmt_matrix(F, sys.z), "theta": fmt_matrix(F, sys.theta), "j": fmt_matrix(F, sys.j),
                      "C_basis": list(C.carrier.names)}
    r["flags"].update({f"system_{k}": v for k, v in sys.checks.items()})
    z2 = read_matrix(F, r["witnesses"]["z"], (C.dim,))
    th2 = read_matrix(F, r["witnesses"]["theta"], (C.A.dim, C.CC.dim))
    r["flags"]["witness_reverifies"] = all(check_system(C, z2, th2).values())
    _, tflags = transpose_j(C, sys.j)
    r["verdicts"].update({f"transpose_{k}": v for k, v in tflags.items()})
    r["flags"].update({f"transpose_{k}": v for k, v in tflags.items()})
    if S is not None:
        try:
            tr = frobenius_transport(S, sys)
        except InputError as e:
            r["verdicts"]["transport"] = f"unsupported: {e}"
        else:
            r["verdicts"].update({f"transport_{k}": v for k, v in tr.items()})
            r["flags"].update({f"transport_{k}": v for k, v in tr.items()})
    return r


def check_cofrobenius(fx, C, S, seed):
    F = C.F
    r = _result()
    r["seed"] = seed
    for side in ("right", "left"):
        j, s = cofrobenius(C, side, seed=seed)
        r["verdicts"][side] = {"found": True, "absent": False}.get(s.status, "inconclusive")
        if j is not None:
            r["witnesses"][f"j_{side}"] = fmt_matrix(F, j)
            r["dims"][f"rank_{side}"] = rank(F, j)
            r["flags"][f"j_{side}_injective"] = rank(F, j) == C.dim
    return r


def check_grouplikes(fx, C, S, seed, mode="auto"):
    """mode "enumerate" (GF(p) only), "verify" (the grouplikes behind the
    canonical and declared comodules) or "auto" (enumerate when possible)."""
    F = C.F
    r = _result()
    canon = fx.canonical_comodule(_name(fx, C))
    x0 = _grouplike_of(fx, C, canon) if canon is not None else None
    if mode == "enumerate" and not (F.is_prime and C.dim <= GROUPLIKE_ENUM_DIM):
        raise InputError(f"grouplike enumeration needs a prime field and dim <= {GROUPLIKE_ENUM_DIM} "
                         f"({F.name}, dim {C.dim}); use verify mode")
    if mode != "verify" and F.is_prime and C.dim <= GROUPLIKE_ENUM_DIM:
        gs = grouplikes(C, bound=GROUPLIKE_ENUM_DIM)
        r["verdicts"]["mode"] = "enumerate"
        r["verdicts"]["count"] = len(gs)
        r["witnesses"]["grouplikes"] = [fmt_matrix(F, x) for x in gs]
        r["flags"]["all_grouplike"] = all(is_grouplike(C, x) for x in gs)
        # a -> x a is left linear over k, not over A in general
        u = AlgebraMorphism.unit_map(C.A)
        r["flags"]["grouplike_comodules_valid"] = all(grouplike_comodule(C, x, u).is_valid() for x in gs)
        if x0 is not None:
            r["flags"]["canonical_found"] = any(F.equal(x, x0) for x in gs)
    else:
        r["verdicts"]["mode"] = "verify"
    if x0 is not None:
        r["verdicts"]["canonical_grouplike"] = is_grouplike(C, x0)
        r["witnesses"]["canonical"] = fmt_matrix(F, x0)
    for n, M in fx.comodules.items():
        x = _grouplike_of(fx, C, M) if M.coring is C else None
        if x is not None:
            r["verdicts"][f"grouplike_of_{n}"] = is_grouplike(C, x)
            r["witnesses"][f"grouplike_of_{n}"] = fmt_matrix(F, x)
    r["witnesses"]["C_basis"] = list(C.carrier.names)
    return r


def _name(fx, C):
    for n, e in fx.corings.items():
        if e.coring is C:
            return n
    return None


def check_triangles(fx, C, S, seed, n_random=4):
    F = C.F
    adj = Adjunction(S)
    Ns, Ms = test_objects(S, np.random.default_rng(seed), n_random)
    t1 = all(adj.triangles(N, Ms[0])[0] for N in Ns)
    t2 = all(adj.triangles(Ns[0], M)[1] for M in Ms)
    zc = is_bijective(F, adj.zeta(C.right_comodule())[0])
    can = is_bijective(F, canonical_map(S)[0])
    r = _result()
    r["seed"] = seed
    r["dims"] = {"objects_tested": len(Ns) + len(Ms)}
    r["verdicts"] = {"triangle_F": t1, "triangle_G": t2, "zeta_C_bijective": zc, "can_bijective": can}
    r["flags"] = {"triangle_F": t1, "triangle_G": t2, "zeta_C_vs_can": zc == can}
    return r


def check_self(fx, C, S, seed):
    if not is_projective(C.carrier, "right"):
        return _result("unsupported", reason=f"{C.label} is not f.g. projective as a right module")
    s = sigma_equals_c_report(C, seed=seed)
    r = _result()
    r["seed"] = seed
    r["verdicts"] = {"T_is_Cstar": s.T_is_Cstar, "faithfully_flat": s.faithfully_flat,
                     "progenerator": s.progenerator, "strict": s.strict, "equivalence_on_objects": s.equivalence,
                     "frobenius": s.frobenius, "forgetful_iso": s.forgetful_iso,
                     "companion_trivial": s.companion_trivial}
    r["dims"] = {"objects_tested": s.objects_tested}
    r["flags"] = dict(s.flags)
    return r


CHECKS = {
    "axioms": check_axioms,
    "galois": check_galois,
    "strictness": check_strictness,
    "morita": check_morita,
    "coseparable": check_coseparable,
    "descent": check_descent,
    "frobenius": check_frobenius,
    "cofrobenius": check_cofrobenius,
    "grouplikes": check_grouplikes,
    "triangles": check_triangles,
    "self": check_self,
}
NEEDS_COMODULE = {"galois", "strictness", "morita", "descent", "triangles"}
assert set(CHECKS) == set(CHECK_KINDS)


# ---------------------------------------------------------------------------
# orchestration


def describe(fx: Fixture):
    F = fx.field
    out = {"algebras": {}, "morphisms": {}, "bimodules": {}, "corings": {}, "comodules": {}}
    for n, A in fx.algebras.items():
        out["algebras"][n] = {"dim": A.dim, "basis": list(A.names)}
    for n, m in fx.morphisms.items():
        out["morphisms"][n] = {"source": m.src.label, "target": m.tgt.label, "matrix": fmt_matrix(F, m.matrix)}
    for n, X in fx.bimodules.items():
        out["bimodules"][n] = {"dim": X.dim, "left": X.left_alg.label, "right": X.right_alg.label}
    for n, e in fx.corings.items():
        C = e.coring
        out["corings"][n] = {"kind": e.kind, "over": C.A.label, "dim": C.dim, "basis": list(C.carrier.names)}
    for n, M in fx.comodules.items():
        out["comodules"][n] = {"coring": M.coring.label, "dim": M.dim, "basis": list(M.carrier.names)}
    return out


def run_one(fx: Fixture, kind, coring_name, comodule=None, seed=0, **opts):
    """Run one check; unsupported instances are reported, not raised."""
    e = fx.corings[coring_name]
    C = e.coring
    S = comodule
    if S is None:
        cands = fx.comodules_of(coring_name)
        S = cands[0][1] if cands else None
    head = {"check": kind, "coring": coring_name, "comodule": S.label if S is not None else None}
    if kind in NEEDS_COMODULE and S is None:
        return {**head, **_result("unsupported", reason="no comodule over this coring")}
    try:
        res = CHECKS[kind](fx, C, S, seed, **opts)
    except InputError as err:
        res = _result("unsupported", reason=str(err))
    return {**head, **res}


def expand(fx: Fixture):
    """(kind, coring, comodule name or None) triples in declaration order."""
    specs = fx.checks
    if not specs:
        specs = [type("Spec", (), {"kind": "all", "args": [n]})() for n in fx.corings]
    out = []
    for sp in specs:
        kinds = CHECK_KINDS if sp.kind == "all" else (sp.kind,)
        cnames = sp.args[:1] or list(fx.corings)
        for cn in cnames:
            for k in kinds:
                out.append((k, cn, sp.args[1] if len(sp.args) > 1 else None))
    return out


def run_checks(fx: Fixture, seed=0):
    rep = {
        "fixture": os.path.basename(fx.source),
        "field": fx.field.name,
        "seed": seed,
        "objects": describe(fx),
        "checks": [],
    }
    for kind, cn, mn in expand(fx):
        M = fx.comodules[mn] if mn else None
        rep["checks"].append(run_one(fx, kind, cn, M, seed))
    rep["violations"] = violations(rep)
    rep["consistent"] = not rep["violations"]
    return rep


def violations(rep):
    out = []
    for c in rep["checks"]:
        for k, v in c.get("flags", {}).items():
            if v is not True:
                out.append(f"{c['check']}:{c['coring']}:{k}")
    return out


# ---------------------------------------------------------------------------
# rendering


def to_json(obj):
    return json.dumps(_plain(obj), indent=2, ensure_ascii=False) + "\n"


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    return x


def _word(v):
    if v is True:
        return "yes"
    if v is False:
        return "no"
    if v is None:
        return "n/a"
    if isinstance(v, list) and all(isinstance(t, bool) for t in v):
        return " ".join(_word(t) for t in v)
    if isinstance(v, dict):
        return ", ".join(f"{k}={_word(t)}" for k, t in v.items())
    return str(v)


def to_text(obj):
    """Human-readable rendering of a report or of a single check result."""
    lines = []
    if "checks" in obj:
        lines.append(f"fixture {obj['fixture']}  field {obj['field']}  seed {obj['seed']}")
        for kind, table in obj["objects"].items():
            for n, d in table.items():
                extra = f" dim {d['dim']}" if "dim" in d else ""
                lines.append(f"  {kind[:-1]} {n}{extra}")
        for c in obj["checks"]:
            lines += _check_text(c)
        lines.append("consistent: " + ("yes" if obj["consistent"] else "NO"))
        for v in obj["violations"]:
            lines.append(f"  violation {v}")
    else:
        lines += _check_text(obj)
    return "\n".join(lines) + "\n"


def _check_text(c):
    tag = " ".join(x for x in (c["check"], c.get("coring"), c.get("comodule")) if x)
    lines = [f"[{tag}] {c['status']}"]
    if c["status"] != "ran":
        lines.append(f"  reason: {c.get('reason', '')}")
        return lines
    for k, v in c["verdicts"].items():
        lines.append(f"  {k}: {_word(v)}")
    for k, v in c["dims"].items():
        lines.append(f"  dim {k}: {v}")
    for k, v in c["witnesses"].items():
        lines.append(f"  witness {k}: {json.dumps(_plain(v), separators=(',', ':'))}")
    bad = [k for k, v in c["flags"].items() if v is not True]
    lines.append(f"  consistency: {len(c['flags']) - len(bad)}/{len(c['flags'])} ok" +
                 (f" (failed: {', '.join(bad)})" if bad else ""))
    return lines
