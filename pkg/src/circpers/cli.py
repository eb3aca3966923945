"""Command-line front end.

Exit codes: 0 success, 2 malformed input, 3 mathematical error, 4 resource bound.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence, TextIO, Tuple

from . import geom
from .barcode import (Barcode, barcode, bottleneck, brute_force_interleaved, delta_matched,
                      delta_matching, finiteness_report)
from .errors import DimensionError, Incompatible, InputError, MathError, NonSplitField, ResourceBound
from .exactnum import Field
from .geom import BandObj, BridgeArc, IntervalA, Tag, Tube, TubeArc
from .homology import ZigzagDiagram, levelset_representation
from .linrep import Representation, decompose
from .quiver import Quiver

EXIT_OK, EXIT_INPUT, EXIT_MATH, EXIT_BOUND = 0, 2, 3, 4


@dataclass
class Document:
    field: Field
    quiver: Quiver
    representation: Optional[Representation] = None
    diagram: Optional[ZigzagDiagram] = None
    degree: int = 0


def parse_field(spec: object) -> Field:
    if spec == "Q":
        return Field.rationals()
    if isinstance(spec, dict) and set(spec) == {"Fp"}:
        try:
            return Field.prime(int(spec["Fp"]))
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad prime {spec['Fp']!r}") from exc
    if isinstance(spec, str) and spec.startswith("F") and spec[1:].isdigit():
        return Field.prime(int(spec[1:]))
    raise InputError(f"field must be \"Q\" or {{\"Fp\": prime}}, got {spec!r}")


def field_record(f: Field) -> object:
    return "Q" if f.is_rational else {"Fp": f.p}


def load_document(path: str, field_override: Optional[str] = None) -> Document:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return parse_document(doc, field_override, path)


def parse_document(doc: object, field_override: Optional[str] = None, where: str = "<input>") -> Document:
    if not isinstance(doc, dict):
        raise InputError(f"{where}: top level must be an object")
    fld = parse_field(field_override if field_override is not None else doc.get("field", "Q"))
    if "diagram" in doc:
        diagram = ZigzagDiagram.from_record(doc["diagram"])
        return Document(fld, diagram.quiver(), diagram=diagram, degree=int(doc.get("degree", 0)))
    if "quiver" not in doc or "representation" not in doc:
        raise InputError(f"{where}: expected keys 'quiver' and 'representation' (or 'diagram')")
    try:
        q = Quiver.from_dict(doc["quiver"])
        rep = Representation.from_dict(q, fld, doc["representation"])
    except DimensionError as exc:
        raise InputError(f"{where}: {exc}") from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{where}: malformed representation: {exc}") from exc
    return Document(fld, q, representation=rep)


def representation_document(m: Representation) -> dict:
    return {"field": field_record(m.field), "quiver": m.quiver.to_dict(), "representation": m.to_dict()}


def quiver_tag(q: Quiver) -> str:
    return f"Ã_{{{q.p},{q.q}}}" if q.is_cycle else f"A_{q.n_vertices}"


def _module(doc: Document) -> Representation:
    if doc.representation is not None:
        return doc.representation
    assert doc.diagram is not None
    return levelset_representation(doc.diagram, doc.degree, doc.field)


# ---------------------------------------------------------------------------
# reports


def decompose_report(m: Representation, seed: int) -> Tuple[List[str], dict]:
    d = decompose(m, seed)
    if not d.verify():
        raise MathError("decomposition certificate failed verification")
    q = m.quiver
    lines = [f"quiver {quiver_tag(q)} over {m.field.name}, dims {m.dims}", f"{d.count} summands"]
    summands = []
    for s in d.summands:
        label = geom.dictionary_label(s.label)
        lines.append(f"  {geom.describe(s.label)}  x{s.multiplicity}  dims {s.module.dims}  [{label}]")
        summands.append({"object": geom.to_record(s.label), "multiplicity": s.multiplicity,
                         "dims": list(s.module.dims), "label": label})
    lines.append("certificate: explicit isomorphism verified")
    return lines, {"field": field_record(m.field), "quiver": q.to_dict(), "count": d.count,
                   "summands": summands}


def _describe_side(g: Optional[geom.GeomObject]) -> str:
    return "dummy" if g is None else geom.describe(g)


def distance_report(m: Representation, n: Representation, seed: int, oracle: Optional[int]
                    ) -> Tuple[List[str], dict]:
    if m.quiver != n.quiver or m.field != n.field:
        raise Incompatible("the two documents use different quivers or fields")
    bm, bn = barcode(m, seed), barcode(n, seed)
    dist = bottleneck(bm, bn)
    lines: List[str] = []
    out: dict = {"distance": dist.to_record(), "left": bm.to_records(), "right": bn.to_records()}
    via = "interleaving distance via the isometry theorem" if m.quiver.is_cycle else "bottleneck distance"
    if dist.is_infinite:
        reason = finiteness_report(bm, bn)
        lines.append(f"distance ∞ ({reason})")
        out["reason"] = reason
    else:
        lines.append(f"distance {dist}")
        pairs = delta_matching(bm, bn, int(dist.value)) or []
        lines.append(f"witness {int(dist.value)}-matching:")
        for a, b in pairs:
            lines.append(f"  {_describe_side(a)} <-> {_describe_side(b)}")
        out["witness"] = [[None if a is None else geom.to_record(a), None if b is None else geom.to_record(b)]
                          for a, b in pairs]
    lines.append(f"({via})")
    if oracle is not None:
        checks = []
        for delta in range(oracle + 1):
            expect = delta_matched(bm, bn, delta)
            got = brute_force_interleaved(m, n, delta, seed)
            status = "agree" if got == expect else "DISAGREE"
            lines.append(f"oracle delta={delta}: interleaved={got} matched={expect} {status}")
            checks.append({"delta": delta, "interleaved": got, "matched": expect})
        out["oracle"] = checks
    return lines, out


# ---------------------------------------------------------------------------
# SVG rendering

_W = 420.0


def _pt(cx: float, cy: float, r: float, ang: float) -> Tuple[float, float]:
    return cx + r * math.cos(ang), cy - r * math.sin(ang)


def _f(x: float) -> str:
    return f"{x:.2f}"


def render_svg(b: Barcode) -> str:
    q = b.quiver
    cx = cy = _W / 2
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{int(_W)}" height="{int(_W)}" '
             f'viewBox="0 0 {int(_W)} {int(_W)}">',
             '<rect width="100%" height="100%" fill="white"/>']
    if not q.is_cycle:
        n = q.n_vertices
        R = 170.0
        parts.append(f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(R)}" fill="none" stroke="black"/>')
        angle = lambda k: math.pi / 2 - 2 * math.pi * (k - 1) / (n + 1)
        for k in range(1, n + 2):
            x, y = _pt(cx, cy, R, angle(k))
            lx, ly = _pt(cx, cy, R + 14, angle(k))
            parts.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="3" fill="black"/>')
            parts.append(f'<text x="{_f(lx)}" y="{_f(ly)}" font-size="11" text-anchor="middle">{k}</text>')
        for g, mult in b.entries:
            if not isinstance(g, IntervalA):
                continue
            x1, y1 = _pt(cx, cy, R, angle(g.a))
            x2, y2 = _pt(cx, cy, R, angle(g.b))
            parts.append(f'<path d="M {_f(x1)} {_f(y1)} Q {_f(cx)} {_f(cy)} {_f(x2)} {_f(y2)}" '
                         f'fill="none" stroke="#1f5fa8" stroke-width="2"/>')
            mx, my = (x1 + x2 + 2 * cx) / 4, (y1 + y2 + 2 * cy) / 4
            parts.append(f'<text x="{_f(mx)}" y="{_f(my)}" font-size="11">[{g.a},{g.b}) x{mult}</text>')
        parts.append("</svg>")
        return "\n".join(parts) + "\n"
    outer, inner = 180.0, 70.0
    p, qq = q.p, q.q
    parts.append(f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(outer)}" fill="none" stroke="black"/>')
    parts.append(f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(inner)}" fill="#eeeeee" stroke="black"/>')
    ang_t = lambda u: math.pi / 2 + 2 * math.pi * u / p
    ang_b = lambda v: math.pi / 2 - 2 * math.pi * v / qq
    for u in range(p):
        x, y = _pt(cx, cy, outer, ang_t(u))
        parts.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="3.5" fill="black"/>')
    for v in range(qq):
        x, y = _pt(cx, cy, inner, ang_b(v))
        parts.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="3.5" fill="black"/>')
    ring = 0
    for idx, (g, mult) in enumerate(b.entries):
        if isinstance(g, BridgeArc):
            x1, y1 = _pt(cx, cy, outer, ang_t(g.u))
            x2, y2 = _pt(cx, cy, inner, ang_b(g.v))
            # winding of the lifted coordinates is drawn as a bend
            bend = 0.35 * (g.v % qq + 1) + 0.15 * idx
            mx, my = _pt(cx, cy, (outer + inner) / 2, (ang_t(g.u) + ang_b(g.v)) / 2 + bend)
            dash = "" if g.tag is Tag.PREPROJECTIVE else ' stroke-dasharray="6 4"'
            parts.append(f'<path d="M {_f(x1)} {_f(y1)} Q {_f(mx)} {_f(my)} {_f(x2)} {_f(y2)}" fill="none" '
                         f'stroke="#b03a2e" stroke-width="2"{dash}/>')
            parts.append(f'<text x="{_f(mx)}" y="{_f(my)}" font-size="11">{g.tag.value}({g.u},{g.v}) x{mult}</text>')
        elif isinstance(g, TubeArc):
            top = g.tube is Tube.RANK_P
            base_r = outer - 12 - 8 * (idx % 4) if top else inner + 12 + 8 * (idx % 4)
            n_pts = p if top else qq
            ang = ang_t if top else ang_b
            a0, a1 = ang(g.b), ang(g.a)
            steps = 24
            pts = []
            for k in range(steps + 1):
                t = a0 + (a1 - a0) * k / steps
                pts.append(_pt(cx, cy, base_r, t))
            d = "M " + " L ".join(f"{_f(x)} {_f(y)}" for x, y in pts)
            parts.append(f'<path d="{d}" fill="none" stroke="#1e8449" stroke-width="2"/>')
            lx, ly = pts[steps // 2]
            parts.append(f'<text x="{_f(lx)}" y="{_f(ly)}" font-size="11">{g.tube.value}({g.a},{g.b}) x{mult}</text>')
        elif isinstance(g, BandObj):
            r = inner + 20 + 14 * ring
            ring += 1
            parts.append(f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(r)}" fill="none" stroke="#6c3483" '
                         f'stroke-width="2"/>')
            lx, ly = _pt(cx, cy, r, -math.pi / 4 - 0.2 * ring)
            parts.append(f'<text x="{_f(lx)}" y="{_f(ly)}" font-size="11">({g.minpoly}, {g.l}) x{mult}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------------------------
# entry point


def _write_json(path: str, data: dict) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(data, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized internals")
    common.add_argument("--field", default=None, help='override the document field, e.g. "Q" or "F3"')
    common.add_argument("--out", default=None, help="write machine-readable output here")
    ap = argparse.ArgumentParser(prog="circpers", description="Exact barcodes and distances for type Ã modules.")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("decompose", parents=[common], help="decompose a representation")
    p.add_argument("path")
    p = sub.add_parser("distance", parents=[common], help="bottleneck / interleaving distance")
    p.add_argument("path1")
    p.add_argument("path2")
    p.add_argument("--oracle-check", type=int, default=None, metavar="N",
                   help="cross-check with the brute-force interleaving search for delta <= N")
    p = sub.add_parser("levelset", parents=[common], help="decompose the module of a level-set diagram")
    p.add_argument("path")
    p.add_argument("--emit-rep", default=None, metavar="FILE", help="write the representation document")
    p = sub.add_parser("render", parents=[common], help="draw the barcode on the geometric model as SVG")
    p.add_argument("path")
    p.add_argument("svg")
    return ap


def run(argv: Sequence[str], stdout: Optional[TextIO] = None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    if args.command == "decompose":
        doc = load_document(args.path, args.field)
        lines, out = decompose_report(_module(doc), args.seed)
    elif args.command == "distance":
        d1, d2 = load_document(args.path1, args.field), load_document(args.path2, args.field)
        lines, out = distance_report(_module(d1), _module(d2), args.seed, args.oracle_check)
    elif args.command == "levelset":
        doc = load_document(args.path, args.field)
        if doc.diagram is None:
            raise InputError("levelset needs a document with a 'diagram' payload")
        m = _module(doc)
        if args.emit_rep:
            _write_json(args.emit_rep, representation_document(m))
        lines, out = decompose_report(m, args.seed)
    else:
        doc = load_document(args.path, args.field)
        m = _module(doc)
        svg = render_svg(barcode(m, args.seed))
        try:
            with open(args.svg, "w", encoding="utf-8") as fh:
                fh.write(svg)
        except OSError as exc:
            raise InputError(f"cannot write {args.svg}: {exc.strerror}") from exc
        lines, out = [f"wrote {args.svg}"], {"svg": args.svg}
    for line in lines:
        print(line, file=stdout)
    if args.out:
        _write_json(args.out, out)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        return run(argv)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NonSplitField as exc:
        print(f"error: {exc} (minimal polynomial {exc.poly})", file=sys.stderr)
        return EXIT_MATH
    except MathError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH
    except ResourceBound as exc:
        print(f"error: resource bound: {exc}", file=sys.stderr)
        return EXIT_BOUND


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
