"""Line-oriented fixture files.

A fixture is a sequence of sections.  A section starts with an unindented
header line; its properties follow on indented lines.  ``#`` starts a comment.
Scalars are integers or ``p/q``; vectors and matrices are bracketed row lists
and may continue over several lines while brackets are open.

    field 2                          # or: field QQ
    algebra k
      unit [1]
      mult 0 0 [1]
    algebra A                        # structure constants, omitted products are 0
      names 1 t
      unit [1, 0]
      mult 1 1 [1, 1]                # e_1 e_1 = e_0 + e_1
    morphism i : k -> A
      matrix [[1], [0]]
    bimodule S : k , k
      left 0 [[1, 0], [0, 1]]
      right 0 [[1, 0], [0, 1]]
    coring C sweedler i              # also: trivial A | comatrix S | explicit X
    comodule S grouplike C           # also: regular C | comatrix C | explicit C X
      over i
      element [1, 0, 0, 0]
    check galois C S

A one-dimensional algebra with unit [1] is the base field.  Comultiplications and
coactions of explicit corings/comodules are k-linear maps into the k-tensor
product (coordinates of the coring as listed in reports); they are projected
onto the tensor product over A internally.  A grouplike element is given in
the ambient coordinates of the coring carrier (for a Sweedler coring A (x)_B A
that is A (x)_k A).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dfield

import numpy as np

from .algebra import Algebra, AlgebraMorphism, Bimodule, InputError
from .coring import Comodule, Coring, grouplike_comodule, is_grouplike, sweedler_coring, trivial_coring
from .exact import Field
from .galois import comatrix_coring

CHECK_KINDS = ("axioms", "galois", "strictness", "morita", "coseparable", "descent", "frobenius",
               "cofrobenius", "grouplikes", "triangles", "self")

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*$")
_SCALAR = re.compile(r"-?\d+(?:/-?\d+)?")


class ParseError(InputError):
    def __init__(self, line, col, msg, source="<fixture>"):
        self.line, self.col, self.msg, self.source = line, col, msg, source
        super().__init__(f"{source}:{line}:{col}: {msg}")


@dataclass
class Tok:
    text: str
    line: int
    col: int


@dataclass
class CheckSpec:
    kind: str
    args: list
    line: int


@dataclass
class CoringEntry:
    coring: Coring
    kind: str
    source: object = None  # morphism, bimodule data or comatrix data
    line: int = 0


@dataclass
class Fixture:
    field: Field
    algebras: dict = dfield(default_factory=dict)
    morphisms: dict = dfield(default_factory=dict)
    bimodules: dict = dfield(default_factory=dict)
    corings: dict = dfield(default_factory=dict)
    comodules: dict = dfield(default_factory=dict)
    checks: list = dfield(default_factory=list)
    source: str = "<fixture>"

    def counts(self):
        return {"algebras": len(self.algebras),
                "morphisms": len(self.morphisms), "bimodules": len(self.bimodules),
                "corings": len(self.corings), "comodules": len(self.comodules), "checks": len(self.checks)}

    def canonical_comodule(self, coring_name):
        """The comodule a coring comes with: A via 1 (trivial), A via 1 (x) 1
        (Sweedler), Sigma (comatrix); None for explicit corings."""
        e = self.corings[coring_name]
        C = e.coring
        F = C.F
        if e.kind == "trivial":
            return grouplike_comodule(C, C.A.unit, None, label=C.A.label)
        if e.kind == "sweedler":
            A = C.A
            x = F.dot(C.carrier.P, F.kron(A.unit, A.unit))
            return grouplike_comodule(C, x, e.source, label=A.label)
        if e.kind == "comatrix":
            return e.source.sigma_coaction
        return None

    def comodules_of(self, coring_name):
        """Declared comodules over a coring, or its canonical one."""
        C = self.corings[coring_name].coring
        out = [(n, M) for n, M in self.comodules.items() if M.coring is C]
        if not out:
            M = self.canonical_comodule(coring_name)
            if M is not None:
                out = [(M.label, M)]
        return out


# ---------------------------------------------------------------------------
# lexing


def _strip(raw):
    i = raw.find("#")
    return raw if i < 0 else raw[:i]


class _Lines:
    def __init__(self, text, source):
        self.lines = text.splitlines()
        self.source = source
        self.i = 0

    def err(self, line, col, msg):
        raise ParseError(line, col, msg, self.source)

    def next_logical(self):
        """(indented?, tokens) of the next nonblank logical line, or None.

        Bracketed values may span lines; tokens carry their own positions."""
        while self.i < len(self.lines):
            raw = _strip(self.lines[self.i])
            lineno = self.i + 1
            self.i += 1
            if not raw.strip():
                continue
            indented = raw[0] in " \t"
            toks = self._tokens(raw, lineno)
            depth = sum(1 if t.text == "[" else -1 if t.text == "]" else 0 for t in toks)
            while depth > 0:
                if self.i >= len(self.lines):
                    self.err(lineno, len(raw) + 1, "unclosed '['")
                more = _strip(self.lines[self.i])
                self.i += 1
                extra = self._tokens(more, self.i)
                depth += sum(1 if t.text == "[" else -1 if t.text == "]" else 0 for t in extra)
                toks += extra
            return indented, toks
        return None

    def _tokens(self, raw, lineno):
        out = []
        for m in re.finditer(r"\[|\]|,|->|:|[^\s\[\],:]+", raw):
            out.append(Tok(m.group(0), lineno, m.start() + 1))
        return out


# ---------------------------------------------------------------------------
# values


def _value(lx, toks, pos):
    """Parse one bracketed value or scalar starting at toks[pos]; (value, next pos)."""
    t = toks[pos]
    if t.text == "[":
        items = []
        pos += 1
        while True:
            if pos >= len(toks):
                lx.err(t.line, t.col, "unclosed '['")
            if toks[pos].text == "]":
                return items, pos + 1
            v, pos = _value(lx, toks, pos)
            items.append(v)
            if pos < len(toks) and toks[pos].text == ",":
                pos += 1
            elif pos < len(toks) and toks[pos].text != "]":
                lx.err(toks[pos].line, toks[pos].col, f"expected ',' or ']', got {toks[pos].text!r}")
    if _SCALAR.fullmatch(t.text):
        return t, pos + 1
    lx.err(t.line, t.col, f"expected a scalar or '[', got {t.text!r}")


def _shape(v):
    if isinstance(v, Tok):
        return ()
    if not v:
        return (0,)
    inner = {_shape(x) for x in v}
    if len(inner) != 1:
        return None
    s = inner.pop()
    return None if s is None else (len(v),) + s


def _array(lx, F, toks, pos, ndim, what):
    if pos >= len(toks):
        last = toks[-1]
        lx.err(last.line, last.col + len(last.text), f"{what}: missing value")
    start = toks[pos]
    v, nxt = _value(lx, toks, pos)
    if nxt != len(toks):
        lx.err(toks[nxt].line, toks[nxt].col, f"{what}: unexpected {toks[nxt].text!r}")
    shape = _shape(v)
    if shape is None:
        lx.err(start.line, start.col, f"{what}: ragged rows")
    if len(shape) != ndim:
        lx.err(start.line, start.col, f"{what}: expected a {'vector' if ndim == 1 else 'matrix'}")

    def flat(x):
        if isinstance(x, Tok):
            yield x
        else:
            for y in x:
                yield from flat(y)

    vals = []
    for s in flat(v):
        try:
            vals.append(F.scalar(s.text))
        except (ZeroDivisionError, ValueError) as e:
            lx.err(s.line, s.col, f"{what}: bad scalar {s.text!r} ({e})")
    out = F.zeros(shape)
    if vals:
        out.ravel()[:] = vals
    return out, start


def _int(lx, tok, what):
    if not re.fullmatch(r"\d+", tok.text):
        lx.err(tok.line, tok.col, f"{what}: expected a nonnegative integer, got {tok.text!r}")
    return int(tok.text)


# ---------------------------------------------------------------------------
# parser


def parse_fixture(data, source="<fixture>") -> Fixture:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(1, 1, f"not UTF-8 ({e.reason})", source) from None
    lx = _Lines(data, source)
    sections = []
    cur = None
    while True:
        got = lx.next_logical()
        if got is None:
            break
        indented, toks = got
        if indented:
            if cur is None:
                lx.err(toks[0].line, toks[0].col, "property outside of a section")
            cur[1].append(toks)
        else:
            cur = (toks, [])
            sections.append(cur)
    if not sections or sections[0][0][0].text != "field":
        t = sections[0][0][0] if sections else Tok("", 1, 1)
        lx.err(t.line, t.col, "fixture must start with a 'field' line")
    fx = None
    for head, props in sections:
        kw = head[0]
        if kw.text == "field":
            if fx is not None:
                lx.err(kw.line, kw.col, "duplicate 'field' line")
            fx = _field(lx, head, props, source)
            continue
        handler = _HANDLERS.get(kw.text)
        if handler is None:
            lx.err(kw.line, kw.col, f"unknown section {kw.text!r} "
                                    f"(expected field, algebra, morphism, bimodule, coring, comodule or check)")
        handler(lx, fx, head, props)
    return fx


def _field(lx, head, props, source):
    if len(head) != 2:
        lx.err(head[0].line, head[0].col, "usage: field <prime> | field QQ")
    if props:
        lx.err(props[0][0].line, props[0][0].col, "field takes no properties")
    t = head[1]
    if t.text in ("QQ", "Q"):
        F = Field(None)
    else:
        p = _int(lx, t, "field")
        try:
            F = Field(p)
        except ValueError as e:
            lx.err(t.line, t.col, str(e))
    return Fixture(F, source=source)


def _new_name(lx, fx, tok):
    if not _NAME.match(tok.text):
        lx.err(tok.line, tok.col, f"bad name {tok.text!r}")
    for table in (fx.algebras, fx.morphisms, fx.bimodules, fx.corings, fx.comodules):
        if tok.text in table:
            lx.err(tok.line, tok.col, f"name {tok.text!r} already defined")
    return tok.text


def _ref(lx, table, tok, what):
    if tok.text not in table:
        lx.err(tok.line, tok.col, f"undefined {what} {tok.text!r}")
    return table[tok.text]


def _props(lx, props, allowed):
    out = {}
    for toks in props:
        k = toks[0]
        if k.text not in allowed:
            lx.err(k.line, k.col, f"unknown property {k.text!r} (expected one of: {', '.join(allowed)})")
        out.setdefault(k.text, []).append(toks)
    return out


def _expect(lx, toks, n, usage):
    if len(toks) != n:
        t = toks[n] if len(toks) > n else toks[0]
        lx.err(t.line, t.col, f"usage: {usage}")


def _invariants(lx, tok, name, bad):
    if bad:
        lx.err(tok.line, tok.col, f"{name} fails: {', '.join(bad)}")


def _algebra(lx, fx, head, props):
    _expect(lx, head, 2, "algebra <name>")
    name = _new_name(lx, fx, head[1])
    F = fx.field
    p = _props(lx, props, ("unit", "names", "mult"))
    if "unit" not in p:
        lx.err(head[0].line, head[0].col, f"algebra {name}: missing 'unit'")
    if len(p["unit"]) > 1:
        t = p["unit"][1][0]
        lx.err(t.line, t.col, "duplicate 'unit'")
    unit, _ = _array(lx, F, p["unit"][0], 1, 1, "unit")
    n = unit.shape[0]
    if n == 0:
        lx.err(p["unit"][0][0].line, p["unit"][0][0].col, "unit: algebra must be nonzero")
    mult = F.zeros((n, n, n))
    seen = set()
    for toks in p.get("mult", []):
        if len(toks) < 4:
            lx.err(toks[0].line, toks[0].col, "usage: mult <i> <j> <vector>")
        i, j = _int(lx, toks[1], "mult"), _int(lx, toks[2], "mult")
        for t, v in ((toks[1], i), (toks[2], j)):
            if v >= n:
                lx.err(t.line, t.col, f"mult: index {v} out of range for dimension {n}")
        if (i, j) in seen:
            lx.err(toks[0].line, toks[0].col, f"mult: product {i} {j} given twice")
        seen.add((i, j))
        v, start = _array(lx, F, toks, 3, 1, "mult")
        if v.shape != (n,):
            lx.err(start.line, start.col, f"mult: expected {n} coordinates, got {v.shape[0]}")
        mult[i, j] = v
    names = None
    if "names" in p:
        nt = p["names"][0]
        names = [t.text for t in nt[1:]]
        if len(names) != n:
            lx.err(nt[0].line, nt[0].col, f"names: expected {n} names, got {len(names)}")
    A = Algebra(F, mult, unit, label=name, names=names)
    _invariants(lx, head[1], f"algebra {name}", A.check())
    if n == 1 and F.equal(unit, F.arr([1])):
        # the base field itself, so tensor products over it stay plain
        A = Algebra.ground(F)
    fx.algebras[name] = A


def _morphism(lx, fx, head, props):
    if len(head) != 6 or head[2].text != ":" or head[4].text != "->":
        lx.err(head[0].line, head[0].col, "usage: morphism <name> : <source> -> <target>")
    name = _new_name(lx, fx, head[1])
    src = _ref(lx, fx.algebras, head[3], "algebra")
    tgt = _ref(lx, fx.algebras, head[5], "algebra")
    p = _props(lx, props, ("matrix",))
    if "matrix" not in p:
        lx.err(head[0].line, head[0].col, f"morphism {name}: missing 'matrix'")
    m, start = _array(lx, fx.field, p["matrix"][0], 1, 2, "matrix")
    if m.shape != (tgt.dim, src.dim):
        lx.err(start.line, start.col, f"matrix: expected {tgt.dim}x{src.dim}, got {m.shape[0]}x{m.shape[1]}")
    phi = AlgebraMorphism(src, tgt, m, label=name)
    _invariants(lx, head[1], f"morphism {name}", phi.check())
    fx.morphisms[name] = phi


def _bimodule(lx, fx, head, props):
    if len(head) != 6 or head[2].text != ":" or head[4].text != ",":
        lx.err(head[0].line, head[0].col, "usage: bimodule <name> : <left algebra> , <right algebra>")
    name = _new_name(lx, fx, head[1])
    L = _ref(lx, fx.algebras, head[3], "algebra")
    R = _ref(lx, fx.algebras, head[5], "algebra")
    F = fx.field
    p = _props(lx, props, ("left", "right", "names"))
    stacks = {}
    dim = None
    for side, alg in (("left", L), ("right", R)):
        got = {}
        for toks in p.get(side, []):
            if len(toks) < 3:
                lx.err(toks[0].line, toks[0].col, f"usage: {side} <basis index> <matrix>")
            i = _int(lx, toks[1], side)
            if i >= alg.dim:
                lx.err(toks[1].line, toks[1].col, f"{side}: index {i} out of range for {alg.label}")
            if i in got:
                lx.err(toks[0].line, toks[0].col, f"{side} {i} given twice")
            m, start = _array(lx, F, toks, 2, 2, side)
            if dim is None:
                dim = m.shape[0]
            if m.shape != (dim, dim):
                lx.err(start.line, start.col, f"{side}: expected a {dim}x{dim} matrix")
            got[i] = m
        stacks[side] = got
    if dim is None:
        lx.err(head[0].line, head[0].col, f"bimodule {name}: no action matrices")
    for side, alg in (("left", L), ("right", R)):
        missing = [i for i in range(alg.dim) if i not in stacks[side]]
        if missing:
            lx.err(head[0].line, head[0].col, f"bimodule {name}: missing {side} action for basis element {missing[0]}")
    names = None
    if "names" in p:
        nt = p["names"][0]
        names = [t.text for t in nt[1:]]
        if len(names) != dim:
            lx.err(nt[0].line, nt[0].col, f"names: expected {dim} names, got {len(names)}")
    M = Bimodule(L, R, np.stack([stacks["left"][i] for i in range(L.dim)]),
                 np.stack([stacks["right"][i] for i in range(R.dim)]), label=name, names=names)
    _invariants(lx, head[1], f"bimodule {name}", M.check())
    fx.bimodules[name] = M


def _coring(lx, fx, head, props):
    if len(head) != 4:
        lx.err(head[0].line, head[0].col, "usage: coring <name> trivial|sweedler|comatrix|explicit <source>")
    name = _new_name(lx, fx, head[1])
    kind = head[2].text
    F = fx.field
    if kind == "trivial":
        _props(lx, props, ())
        A = _ref(lx, fx.algebras, head[3], "algebra")
        C = trivial_coring(A)
        entry = CoringEntry(C, kind, A, head[0].line)
    elif kind == "sweedler":
        _props(lx, props, ())
        i = _ref(lx, fx.morphisms, head[3], "morphism")
        C = sweedler_coring(i, label=name)
        entry = CoringEntry(C, kind, i, head[0].line)
    elif kind == "comatrix":
        _props(lx, props, ())
        S = _ref(lx, fx.bimodules, head[3], "bimodule")
        try:
            data = comatrix_coring(S, label=name)
        except InputError as e:
            lx.err(head[3].line, head[3].col, str(e))
        C = data.coring
        entry = CoringEntry(C, kind, data, head[0].line)
    elif kind == "explicit":
        X = _ref(lx, fx.bimodules, head[3], "bimodule")
        if X.left_alg is not X.right_alg:
            lx.err(head[3].line, head[3].col, f"bimodule {X.label} must have the same algebra on both sides")
        p = _props(lx, props, ("delta", "counit"))
        for key in ("delta", "counit"):
            if key not in p:
                lx.err(head[0].line, head[0].col, f"coring {name}: missing {key!r}")
        d = X.dim
        delta, s1 = _array(lx, F, p["delta"][0], 1, 2, "delta")
        if delta.shape != (d * d, d):
            lx.err(s1.line, s1.col, f"delta: expected {d * d}x{d} (into the k-tensor square), "
                                    f"got {delta.shape[0]}x{delta.shape[1]}")
        eps, s2 = _array(lx, F, p["counit"][0], 1, 2, "counit")
        if eps.shape != (X.left_alg.dim, d):
            lx.err(s2.line, s2.col, f"counit: expected {X.left_alg.dim}x{d}, got {eps.shape[0]}x{eps.shape[1]}")
        C = Coring.from_ambient(X, delta, eps, label=name)
        entry = CoringEntry(C, kind, X, head[0].line)
    else:
        lx.err(head[2].line, head[2].col, f"unknown coring kind {kind!r} (trivial, sweedler, comatrix, explicit)")
    C.label = name
    _invariants(lx, head[1], f"coring {name}", C.check())
    fx.corings[name] = entry


def _comodule(lx, fx, head, props):
    if len(head) < 4:
        lx.err(head[0].line, head[0].col, "usage: comodule <name> grouplike|regular|comatrix|explicit <coring> ...")
    name = _new_name(lx, fx, head[1])
    kind = head[2].text
    entry = _ref(lx, fx.corings, head[3], "coring")
    C = entry.coring
    F = fx.field
    if kind == "grouplike":
        _expect(lx, head, 4, "comodule <name> grouplike <coring>")
        p = _props(lx, props, ("element", "over"))
        if "element" not in p:
            lx.err(head[0].line, head[0].col, f"comodule {name}: missing 'element'")
        v, start = _array(lx, F, p["element"][0], 1, 1, "element")
        amb = C.carrier.amb_dim
        if v.shape != (amb,):
            lx.err(start.line, start.col, f"element: expected {amb} ambient coordinates, got {v.shape[0]}")
        x = F.dot(C.carrier.P, v)
        i = None
        if "over" in p:
            ot = p["over"][0]
            _expect(lx, ot, 2, "over <morphism into the base algebra>")
            i = _ref(lx, fx.morphisms, ot[1], "morphism")
            if i.tgt is not C.A:
                lx.err(ot[1].line, ot[1].col, f"morphism {i.label} does not land in {C.A.label}")
        if not is_grouplike(C, x):
            lx.err(start.line, start.col, "element is not grouplike")
        M = grouplike_comodule(C, x, i, label=name)
    elif kind == "regular":
        _expect(lx, head, 4, "comodule <name> regular <coring>")
        _props(lx, props, ())
        M = Comodule(C, C.carrier, C.delta, "right", label=name)
    elif kind == "comatrix":
        _expect(lx, head, 4, "comodule <name> comatrix <coring>")
        _props(lx, props, ())
        if entry.kind != "comatrix":
            lx.err(head[3].line, head[3].col, f"coring {head[3].text} is not a comatrix coring")
        d = entry.source.sigma_coaction
        M = Comodule(C, d.carrier, d.rho, "right", label=name)
    elif kind == "explicit":
        _expect(lx, head, 5, "comodule <name> explicit <coring> <bimodule>")
        X = _ref(lx, fx.bimodules, head[4], "bimodule")
        if X.right_alg is not C.A:
            lx.err(head[4].line, head[4].col, f"bimodule {X.label} is not a right {C.A.label}-module")
        p = _props(lx, props, ("coaction",))
        if "coaction" not in p:
            lx.err(head[0].line, head[0].col, f"comodule {name}: missing 'coaction'")
        rho, start = _array(lx, F, p["coaction"][0], 1, 2, "coaction")
        if rho.shape != (X.dim * C.dim, X.dim):
            lx.err(start.line, start.col, f"coaction: expected {X.dim * C.dim}x{X.dim}, "
                                          f"got {rho.shape[0]}x{rho.shape[1]}")
        M = Comodule.from_ambient(C, X, rho, "right", label=name)
    else:
        lx.err(head[2].line, head[2].col, f"unknown comodule kind {kind!r} (grouplike, regular, comatrix, explicit)")
    _invariants(lx, head[1], f"comodule {name}", M.check())
    fx.comodules[name] = M


def _check(lx, fx, head, props):
    if len(head) < 2:
        lx.err(head[0].line, head[0].col, f"usage: check <kind> [names]; kinds: {', '.join(CHECK_KINDS)}, all")
    if props:
        lx.err(props[0][0].line, props[0][0].col, "check takes no properties")
    kind = head[1].text
    if kind != "all" and kind not in CHECK_KINDS:
        lx.err(head[1].line, head[1].col, f"unknown check {kind!r}")
    args = []
    for t in head[2:]:
        if t.text not in fx.corings and t.text not in fx.comodules:
            lx.err(t.line, t.col, f"undefined coring or comodule {t.text!r}")
        args.append(t.text)
    if args and args[0] not in fx.corings:
        lx.err(head[2].line, head[2].col, f"first argument of check must be a coring, got {args[0]!r}")
    if len(args) > 2:
        lx.err(head[4].line, head[4].col, "check takes at most a coring and a comodule")
    if len(args) == 2:
        if args[1] not in fx.comodules:
            lx.err(head[3].line, head[3].col, f"undefined comodule {args[1]!r}")
        if fx.comodules[args[1]].coring is not fx.corings[args[0]].coring:
            lx.err(head[3].line, head[3].col, f"comodule {args[1]} is not over coring {args[0]}")
    fx.checks.append(CheckSpec(kind, args, head[0].line))


_HANDLERS = {
    "algebra": _algebra,
    "morphism": _morphism,
    "bimodule": _bimodule,
    "coring": _coring,
    "comodule": _comodule,
    "check": _check,
}


def load_fixture(path) -> Fixture:
    with open(path, "rb") as fh:
        data = fh.read()
    return parse_fixture(data, source=str(path))
