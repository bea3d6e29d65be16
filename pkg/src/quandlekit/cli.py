"""
Command line front end.

    quandlekit invariant --pd trefoil --quandle dihedral:3 --cocycle theta:3
    quandlekit homology --quandle dihedral:3 --degree 3 --coeff F3
    quandlekit cover --pd figure8 --fold 2 --branched
    quandlekit dw --lens 3:1
    quandlekit compare --p 5

Every command prints one JSON document (sorted keys, "schema": 1).
Exit codes: 0 ok, 2 bad input or spec, 3 resource cap, 4 internal error.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .chains import Cochain, quandle_homology
from .cocycles import (average_negation, b1b2_homogeneous, phi_pullback, right_invariantize,
                       theta, tilde_section_cocycle)
from .covers import (branched_cover_invariant, cyclic_cover_presentation, dw_lens,
                     torus_lens_comparison, transfer_cocycle, wirtinger)
from .errors import InternalError, QuandleKitError, ResourceLimit
from .groups import FiniteGroup, build_cyclic, build_dihedral, build_symmetric
from .knots import KnotDiagram, builtin_diagram, parse_pd, shadow_cocycle_invariant
from .quandles import ConjQuandleContext, FiniteQuandle, conj_quandle, dihedral_quandle, \
    trivial_quandle

SCHEMA = 1
EXIT_OK, EXIT_USAGE, EXIT_LIMIT, EXIT_INTERNAL = 0, 2, 3, 4

log = logging.getLogger("quandlekit")


class UsageError(QuandleKitError):
    pass


# ---------------------------------------------------------------------------
# spec strings


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"{what} must be an integer, got {text!r}") from None


def resolve_group(spec: str) -> FiniteGroup:
    """D6 (order 6 dihedral), S3, Z5."""
    s = spec.replace("_", "").replace("/", "")
    if len(s) < 2 or not s[1:].isdigit():
        raise UsageError(f"unknown group {spec!r}")
    kind, n = s[0].upper(), int(s[1:])
    if kind == "D":
        if n % 2 or n < 6:
            raise UsageError(f"dihedral group order must be even and >= 6, got {n}")
        return build_dihedral(n // 2)
    if kind == "S":
        return build_symmetric(n)
    if kind == "Z" or kind == "C":
        return build_cyclic(n)
    raise UsageError(f"unknown group {spec!r}")


def resolve_element(G: FiniteGroup, label: str) -> int:
    try:
        return G.index(label)
    except QuandleKitError:
        squashed = label.replace(" ", "")
        for g in G:
            if G.label(g).replace(" ", "") == squashed:
                return g
        raise UsageError(f"no element {label!r} in {G.name}") from None


def resolve_quandle(spec: str) -> tuple[FiniteQuandle, Optional[ConjQuandleContext]]:
    """dihedral:N, trivial:N or conj:GROUP:ELEMENT."""
    parts = spec.split(":")
    kind = parts[0].lower()
    if kind == "dihedral" and len(parts) == 2:
        return dihedral_quandle(_int(parts[1], "dihedral order")), None
    if kind == "trivial" and len(parts) == 2:
        return trivial_quandle(_int(parts[1], "trivial quandle order")), None
    if kind == "conj" and len(parts) == 3:
        G = resolve_group(parts[1])
        return conj_quandle(G, resolve_element(G, parts[2]))
    raise UsageError(f"unknown quandle spec {spec!r}")


def _same_as_dihedral(Q: FiniteQuandle, p: int) -> bool:
    return Q.order == p and p >= 3 and Q.op == dihedral_quandle(p).op


def resolve_cocycle(spec: str, Q: FiniteQuandle, ctx: Optional[ConjQuandleContext]) -> Cochain:
    """
    theta:p, theta1:p (halved, odd p), or transfer-b1b2:p.  The last one is
    the phi pullback of the averaged b1 u b2 on R_p, or of the section
    transfer of transfer(b1 u b2) on Conj(h) in D_2p.
    """
    parts = spec.split(":")
    if len(parts) != 2:
        raise UsageError(f"unknown cocycle spec {spec!r}")
    kind, p = parts[0].lower(), _int(parts[1], "cocycle parameter")
    if kind in ("theta", "theta1"):
        if not _same_as_dihedral(Q, p):
            raise UsageError(f"{spec} lives on R_{p}; the quandle does not match")
        return theta(p, 2 if kind == "theta" else 1)
    if kind == "transfer-b1b2":
        if ctx is not None:
            G = ctx.group
            if G.order != 2 * p or "h" not in G.generators:
                raise UsageError(f"{spec} needs a conjugation quandle inside D_{2 * p}")
            _, F = transfer_cocycle(p)
            f = tilde_section_cocycle(ctx, right_invariantize(F, G))
            return phi_pullback(f, Q, 0)
        if not _same_as_dihedral(Q, p):
            raise UsageError(f"{spec} needs R_{p} or Conj(h) in D_{2 * p}")
        return phi_pullback(average_negation(b1b2_homogeneous(p), p), Q, 0)
    raise UsageError(f"unknown cocycle spec {spec!r}")


def resolve_diagram(source: str) -> KnotDiagram:
    """A PD file, a built-in name (``trefoil``, ``fig8.pd``, ``torus:5``) or inline X[...] text."""
    path = Path(source)
    if path.is_file():
        return parse_pd(path.read_text(), path.stem)
    if "[" in source:
        return parse_pd(source, "inline")
    name = source[:-3] if source.endswith(".pd") else source
    try:
        return builtin_diagram(name)
    except QuandleKitError:
        raise UsageError(f"{source!r} is neither a file, a built-in diagram nor PD text") from None


def _lens(spec: str) -> tuple[int, int]:
    parts = spec.split(":")
    if len(parts) != 2:
        raise UsageError(f"lens spec must look like p:q, got {spec!r}")
    return _int(parts[0], "p"), _int(parts[1], "q")


# ---------------------------------------------------------------------------
# commands


def cmd_invariant(args) -> dict:
    D = resolve_diagram(args.pd)
    Q, ctx = resolve_quandle(args.quandle)
    f = resolve_cocycle(args.cocycle, Q, ctx)
    res = shadow_cocycle_invariant(D, Q, f, args.workers, detail=True)
    doc = res.to_json()
    doc.update({"diagram": D.name, "quandle": args.quandle, "cocycle": args.cocycle})
    return doc


def cmd_homology(args) -> dict:
    Q, _ = resolve_quandle(args.quandle)
    res = quandle_homology(Q, args.degree, args.coeff, normalized=not args.rack)
    doc = res.to_json()
    doc.update({"quandle": args.quandle, "complex": "rack" if args.rack else "quandle"})
    return doc


def cmd_cover(args) -> dict:
    D = resolve_diagram(args.pd)
    P = cyclic_cover_presentation(D, args.fold, args.branched)
    doc = {"diagram": D.name, "fold": args.fold, "branched": args.branched,
           "knot_group": wirtinger(D).to_json(),
           "presentation": P.to_json(),
           "abelianization": P.abelianization().to_json()}
    if args.quandle:
        Q, ctx = resolve_quandle(args.quandle)
        if ctx is None or "h" not in ctx.group.generators:
            raise UsageError("the cover cycle needs a conjugation quandle inside a dihedral group")
        p = ctx.group.order // 2
        _, F = transfer_cocycle(p)
        val = branched_cover_invariant(D, Q, ctx, F, workers=args.workers, l=args.fold)
        doc["cycle_invariant"] = {"quandle": args.quandle, "cocycle": f"transfer-b1b2:{p}",
                                  "value": val.to_json(), "pretty": val.pretty()}
    return doc


def cmd_dw(args) -> dict:
    p, q = _lens(args.lens)
    res = dw_lens(p, q)
    doc = res.to_json()
    doc["pretty"] = res.value.pretty()
    return doc


def cmd_compare(args) -> dict:
    return torus_lens_comparison(args.p, args.workers).to_json()


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quandlekit", description=__doc__.split("\n")[1])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, default=os.cpu_count() or 1,
                        help="worker processes for coloring enumeration")
    common.add_argument("--out", help="write JSON here instead of stdout")
    common.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariant", parents=[common], help="shadow cocycle invariant")
    p.add_argument("--pd", required=True, help="PD file, built-in name or inline PD text")
    p.add_argument("--quandle", required=True, help="dihedral:N, trivial:N, conj:D6:h")
    p.add_argument("--cocycle", required=True, help="theta:p, theta1:p, transfer-b1b2:p")
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("homology", parents=[common], help="quandle homology")
    p.add_argument("--quandle", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--coeff", default="Z", help="Z or Fp")
    p.add_argument("--rack", action="store_true", help="use the rack complex")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("cover", parents=[common], help="cyclic cover presentation")
    p.add_argument("--pd", required=True)
    p.add_argument("--fold", type=int, default=2)
    p.add_argument("--branched", action="store_true")
    p.add_argument("--quandle", help="also evaluate the cover cycle (conj:D2p:h)")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("dw", parents=[common], help="Dijkgraaf-Witten value of a lens space")
    p.add_argument("--lens", required=True, help="p:q")
    p.set_defaults(func=cmd_dw)

    p = sub.add_parser("compare", parents=[common], help="torus knot vs lens space")
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_compare)
    return ap


def render(doc: dict) -> str:
    return json.dumps(dict(doc, schema=SCHEMA), sort_keys=True, indent=2) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    if args.workers < 1:
        print("error: --workers must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        doc = args.func(args)
        doc["command"] = args.command
        text = render(doc)
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (InternalError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (QuandleKitError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        Path(args.out).write_text(text)
        log.info("wrote %s", args.out)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
