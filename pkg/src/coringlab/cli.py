"""coringlab command line.

Exit codes: 0 the checks ran (verdicts may be negative), 1 input error,
2 a consistency flag failed (an implementation bug, never a verdict).
"""

from __future__ import annotations

import argparse
import sys

from .algebra import InputError
from .fixture import load_fixture
from .report import GROUPLIKE_ENUM_DIM, run_checks, run_one, to_json, to_text, violations

EXIT_OK, EXIT_INPUT, EXIT_INCONSISTENT = 0, 1, 2


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="fixture file")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for random test objects and witness search")

    p = argparse.ArgumentParser(prog="coringlab", description="exact checks on corings, comodules and their "
                                                              "Morita contexts")
    sub = p.add_subparsers(dest="cmd", required=True)
    sub.add_parser("check", parents=[common], help="run the checks listed in the fixture")
    g = sub.add_parser("galois", parents=[common], help="canonical map, Galois and generator verdicts")
    g.add_argument("--coring", required=True)
    g.add_argument("--comodule", help="defaults to the comodule the coring comes with")
    s = sub.add_parser("solve", parents=[common], help="search for a cointegral, Frobenius or coFrobenius witness")
    s.add_argument("--coring", required=True)
    s.add_argument("--what", required=True, choices=("cointegral", "frobenius", "cofrobenius"))
    m = sub.add_parser("morita", parents=[common], help="Morita context of a comodule")
    m.add_argument("--coring", required=True)
    m.add_argument("--comodule", help="defaults to the comodule the coring comes with")
    m.add_argument("--strictness", action="store_true", help="also compare the four strictness bundles")
    gl = sub.add_parser("grouplikes", parents=[common], help="verify or enumerate grouplike elements")
    gl.add_argument("--coring", required=True)
    gl.add_argument("--enumerate", action="store_true")
    return p


def _resolve(fx, args):
    if args.coring not in fx.corings:
        raise InputError(f"undefined coring {args.coring!r}")
    M = None
    name = getattr(args, "comodule", None)
    if name is not None:
        if name not in fx.comodules:
            raise InputError(f"undefined comodule {name!r}")
        M = fx.comodules[name]
        if M.coring is not fx.corings[args.coring].coring:
            raise InputError(f"comodule {name} is not over coring {args.coring}")
    return M


def _single(fx, args, kinds, **opts):
    M = _resolve(fx, args)
    checks = [run_one(fx, k, args.coring, M, args.seed, **opts) for k in kinds]
    rep = {"fixture": fx.source.rsplit("/", 1)[-1], "field": fx.field.name, "seed": args.seed,
           "objects": {}, "checks": checks}
    rep["violations"] = violations(rep)
    rep["consistent"] = not rep["violations"]
    return rep


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        fx = load_fixture(args.file)
        if args.cmd == "check":
            rep = run_checks(fx, seed=args.seed)
        elif args.cmd == "galois":
            rep = _single(fx, args, ["galois"])
        elif args.cmd == "solve":
            kind = {"cointegral": "coseparable"}.get(args.what, args.what)
            rep = _single(fx, args, [kind])
        elif args.cmd == "morita":
            rep = _single(fx, args, ["morita", "strictness"] if args.strictness else ["morita"])
        else:
            if args.enumerate:
                C = fx.corings[args.coring].coring if args.coring in fx.corings else None
                if C is not None and not (C.F.is_prime and C.dim <= GROUPLIKE_ENUM_DIM):
                    raise InputError(f"grouplike enumeration needs a prime field and dim <= "
                                     f"{GROUPLIKE_ENUM_DIM}; use verify mode")
            rep = _single(fx, args, ["grouplikes"], mode="enumerate" if args.enumerate else "verify")
    except (InputError, OSError) as e:
        print(f"coringlab: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    out = to_json(rep) if args.format == "structured" else to_text(rep)
    sys.stdout.write(out)
    if not rep["consistent"]:
        print("coringlab: consistency violation: " + ", ".join(rep["violations"]), file=sys.stderr)
        return EXIT_INCONSISTENT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
