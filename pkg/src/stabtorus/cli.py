"""Command-line interface.

Subcommands expose the main library operations with JSON output by default
(stable key order, "schema" version key) and a plain text rendering behind
--format text. Numeric flags accept integers, rationals "n/d" and decimals.
Exit status: 0 on success, 1 on usage errors, 2 on domain errors, which are
reported as {"error": {"name": ..., "message": ...}} on stderr.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import jsonio
from .charges import CentralCharge, KClass
from .errors import StabTorusError
from .exactnum import format_number, is_exact, parse_number
from .hearts import (
    StandardHeart,
    hearts_agree_on,
    iterated_heart,
    standard_pair,
)
from .presentations import pi1
from .sheaves import enumerate_objects
from .stability import (
    DegLabel,
    StdLabel,
    act,
    classify,
    hn_filtration,
    spectrum_of,
    stable_objects,
)
from .svg import helix_svg
from .walls import (
    boundary_at,
    fiber_types,
    gamma_pm,
    orbit_complex,
    remove_node,
    twist_escape,
    wall_only_complex,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad flags; the contract here is 1.

    Also widens the negative-number recognizer so values like -1/2 or the
    charge tuple -1,0,0,1 pass as flag arguments instead of being mistaken
    for option names.
    """

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(
            r"^-\d+(/\d+)?$|^-\d*\.\d+$|^-[\d./]+(,-?[\d./]+)+$"
        )

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


# ---------------------------------------------------------------------------
# flag parsing helpers


def _parse_num(flag: str, s: str):
    try:
        return parse_number(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{flag}: cannot parse number {s!r}") from exc


def _parse_charge(flag: str, s: str) -> CentralCharge:
    parts = [x.strip() for x in s.split(",")]
    if len(parts) != 4:
        raise UsageError(f"{flag}: expected four comma-separated numbers, got {s!r}")
    return CentralCharge(*(_parse_num(flag, x) for x in parts))


def _parse_class(flag: str, s: str) -> KClass:
    parts = [x.strip() for x in s.split(",")]
    if len(parts) != 2:
        raise UsageError(f"{flag}: expected rank,degree integers, got {s!r}")
    try:
        return KClass(int(parts[0]), int(parts[1]))
    except ValueError as exc:
        raise UsageError(f"{flag}: expected integers, got {s!r}") from exc


def _parse_label(flag: str, s: str):
    parts = s.split(":")
    try:
        if parts[0] == "std" and len(parts) == 2:
            return StdLabel(int(parts[1]))
        if parts[0] == "deg" and len(parts) == 3:
            return DegLabel(int(parts[1]), _parse_num(flag, parts[2]))
    except ValueError as exc:
        raise UsageError(f"{flag}: bad label {s!r}") from exc
    raise UsageError(f"{flag}: expected std:<p> or deg:<p>:<gamma>, got {s!r}")


def _load_json(flag: str, s: str):
    try:
        return json.loads(s)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{flag}: invalid JSON ({exc})") from exc


def _num_text(x) -> str:
    if x is None:
        return "-"
    if is_exact(x):
        return format_number(Fraction(x))
    return repr(float(x))


def _matrix_text(G) -> str:
    rows = [", ".join(_num_text(x) for x in row) for row in G.T.rows()]
    return "[[" + "], [".join(rows) + "]]"


def _label_text(label) -> str:
    if isinstance(label, DegLabel):
        return f"deg p={label.p} gamma={_num_text(label.gamma)}"
    return f"std p={label.p}"


# ---------------------------------------------------------------------------
# handlers: each returns (json payload, text rendering)


def _cmd_classify(args):
    Z = _parse_charge("--charge", args.charge)
    phi = _parse_num("--phi", args.phi)
    psi = _parse_num("--psi", args.psi)
    sigma = classify(Z, phi, psi, args.d)
    payload = jsonio.encode_point(sigma)
    text = "\n".join(
        [
            f"label: {_label_text(sigma.label)}",
            f"T: {_matrix_text(sigma.g)}",
            f"winding: {sigma.g.winding}",
        ]
    )
    return payload, text


def _cmd_act(args):
    sigma = jsonio.decode_point(_load_json("--point", args.point))
    G = jsonio.decode_auto(_load_json("--auto", args.auto))
    moved = act(G, sigma)
    payload = jsonio.encode_point(moved)
    text = "\n".join(
        [
            f"label: {_label_text(moved.label)}",
            f"T: {_matrix_text(moved.g)}",
            f"winding: {moved.g.winding}",
        ]
    )
    return payload, text


def _cmd_hn(args):
    sigma = jsonio.decode_point(_load_json("--point", args.point))
    E = jsonio.decode_object(_load_json("--object", args.object))
    factors = hn_filtration(sigma, E, args.d)
    payload = {"factors": [jsonio.encode_hn_factor(f) for f in factors]}
    lines = []
    for f in factors:
        stable = "-" if f.stable is None else str(f.stable).lower()
        lines.append(
            f"class ({f.kclass.rk}, {f.kclass.chd})  phase {_num_text(f.phase)}  "
            f"stable {stable}"
        )
    return payload, "\n".join(lines) if lines else "no factors (zero object)"


def _cmd_tilt_chain(args):
    heart = iterated_heart(args.p, args.d)
    levels = [
        {"level": k, "pair": standard_pair(k, args.d).name} for k in range(args.p)
    ]
    mismatch = hearts_agree_on(
        heart,
        StandardHeart(args.p, args.d),
        enumerate_objects(args.check_mass, range(-args.p, 1), args.d),
    )
    payload = {
        "target_level": args.p,
        "tilts": levels,
        "checked_mass": args.check_mass,
        "agrees_with_direct": mismatch is None,
    }
    if mismatch is not None:
        payload["mismatch"] = jsonio.encode_object(mismatch)
    lines = [f"tilt {x['level']}: {x['pair']}" for x in levels]
    lines.append(
        f"agrees with the direct heart on mass <= {args.check_mass}: "
        f"{'yes' if mismatch is None else 'NO'}"
    )
    return payload, "\n".join(lines)


def _cmd_spectrum(args):
    if args.point is None and args.label is None:
        raise UsageError("spectrum: one of --label or --point is required")
    if args.point is not None:
        sigma = jsonio.decode_point(_load_json("--point", args.point))
        descriptor, families = stable_objects(sigma, args.d)
        payload = {
            "spectrum": jsonio.encode_spectrum(descriptor),
            "families": [jsonio.encode_family(f) for f in families],
        }
        lines = [f"label: {_label_text(sigma.label)}"]
        for f in families:
            lines.append(
                f"family {f.kind}: shift {f.shift}, phase {_num_text(f.phase)}"
            )
        return payload, "\n".join(lines)
    label = _parse_label("--label", args.label)
    descriptor = spectrum_of(label, args.d)
    payload = {"spectrum": jsonio.encode_spectrum(descriptor)}
    lines = [
        f"points: {', '.join(_num_text(q) for q in descriptor.points)}",
        f"complete: {'yes' if descriptor.complete else 'no'}",
    ]
    for s in descriptor.series:
        lines.append(f"series {s.kind}: computable {'yes' if s.computable else 'no'}")
    return payload, "\n".join(lines)


def _cmd_gamma_bounds(args):
    label = _parse_label("--label", args.label)
    gamma = _parse_num("--gamma", args.gamma)
    below, above, be, ae = gamma_pm(spectrum_of(label, args.d), gamma)
    payload = {
        "below": jsonio.encode_number(below),
        "above": jsonio.encode_number(above),
        "below_exact": be,
        "above_exact": ae,
    }
    text = (
        f"below: {_num_text(below)} ({'exact' if be else 'bound only'})\n"
        f"above: {_num_text(above)} ({'exact' if ae else 'bound only'})"
    )
    return payload, text


def _cmd_boundary(args):
    gamma = _parse_num("--gamma", args.gamma)
    decision = boundary_at(args.p, gamma, args.d)
    payload = jsonio.encode_wall_decision(decision)
    if decision.is_wall:
        text = f"wall: {_label_text(decision.target)}"
    else:
        text = f"no boundary: {decision.reason}"
    return payload, text


def _cmd_orbit_graph(args):
    cx = orbit_complex(args.d)
    payload = jsonio.encode_complex(cx)
    lines = [f"{nd.name}: {nd.kind}, {nd.homotopy}" for nd in cx.nodes]
    lines += [f"edge {w} - {c}" for w, c in cx.edges]
    return payload, "\n".join(lines)


def _cmd_pi1(args):
    if args.wall_only:
        cx = wall_only_complex()
    else:
        cx = orbit_complex(args.d)
    for name in args.drop or ():
        cx = remove_node(cx, name)
    group = pi1(cx)
    payload = jsonio.encode_group(group)
    text = (
        f"group: {group.name}\n"
        f"generators: {len(group.generators)}\n"
        f"relations: {len(group.relations)}"
    )
    return payload, text


def _cmd_fiber(args):
    Z = _parse_charge("--charge", args.charge)
    families = fiber_types(Z, args.d)
    payload = {
        "families": [
            {
                "label": jsonio.encode_label(f.label),
                "structure": f.structure,
                "note": f.note,
            }
            for f in families
        ]
    }
    if not families:
        return payload, "empty fiber: the charge is not attained"
    lines = [f"{_label_text(f.label)}: {f.structure}" for f in families]
    return payload, "\n".join(lines)


def _cmd_twist_escape(args):
    ideal = _parse_class("--ideal", args.ideal)
    twist = _parse_class("--twist", args.twist)
    gm = _parse_num("--gamma-minus", args.gamma_minus)
    Z = _parse_charge("--charge", args.charge)
    n = twist_escape(ideal, twist, gm, Z)
    return {"n": n}, f"escapes at n = {n}"


def _cmd_helix_svg(args):
    doc = helix_svg(args.d, labels=not args.no_labels)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(doc)
        return {"written": args.out}, f"wrote {args.out}"
    return {"svg": doc}, doc


# ---------------------------------------------------------------------------
# parser assembly


def build_parser() -> _Parser:
    parser = _Parser(
        prog="stabtorus",
        description=(
            "Symbolic model of the simply connected region of the stability "
            "manifold of a generic complex torus"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, handler, help_text, default_format="json"):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--d", type=int, required=True, help="torus dimension (>= 3)")
        p.add_argument(
            "--format",
            choices=("json", "text"),
            default=default_format,
            help=f"output format (default {default_format})",
        )
        p.set_defaults(handler=handler)
        return p

    p = add("classify", _cmd_classify, "normal form of a point from charge and phases")
    p.add_argument("--charge", required=True, help="a,b,c,e")
    p.add_argument("--phi", required=True, help="lifted skyscraper phase")
    p.add_argument("--psi", required=True, help="lifted rank-ray phase")

    p = add("act", _cmd_act, "move a point by a lifted automorphism")
    p.add_argument("--point", required=True, help="point JSON, as emitted by classify")
    p.add_argument("--auto", required=True, help='automorphism JSON {"T": ..., "winding": ...}')

    p = add("hn", _cmd_hn, "Harder-Narasimhan factors of an object at a point")
    p.add_argument("--point", required=True, help="point JSON, as emitted by classify")
    p.add_argument("--object", required=True, help="formal object JSON")

    p = add("tilt-chain", _cmd_tilt_chain, "rebuild a standard heart by iterated tilts")
    p.add_argument("--p", type=int, required=True, help="target heart index")
    p.add_argument(
        "--check-mass", type=int, default=3,
        help="verify against the direct heart on objects up to this mass",
    )

    p = add("spectrum", _cmd_spectrum, "stable phases of a labeled orbit or a point")
    p.add_argument("--label", help="std:<p> or deg:<p>:<gamma>")
    p.add_argument("--point", help="point JSON; reports transported families too")

    p = add("gamma-bounds", _cmd_gamma_bounds, "nearest stable phases around gamma")
    p.add_argument("--label", required=True, help="std:<p> or deg:<p>:<gamma>")
    p.add_argument("--gamma", required=True)

    p = add("boundary", _cmd_boundary, "wall or escape behind the phase gap at gamma")
    p.add_argument("--p", type=int, required=True, help="standard orbit index")
    p.add_argument("--gamma", required=True)

    add("orbit-graph", _cmd_orbit_graph, "cells, walls and adjacencies as JSON")

    p = add("pi1", _cmd_pi1, "fundamental group of the orbit complex")
    p.add_argument(
        "--wall-only", action="store_true",
        help="use the single-wall sanity complex instead",
    )
    p.add_argument(
        "--drop", action="append", metavar="NODE",
        help="remove a node (repeatable), e.g. --drop std-1",
    )

    p = add("fiber", _cmd_fiber, "orbit families over a charge")
    p.add_argument("--charge", required=True, help="a,b,c,e")

    p = add("twist-escape", _cmd_twist_escape, "least twist pushing the phase past the record")
    p.add_argument("--ideal", required=True, help="rk,chd of the starting class")
    p.add_argument("--twist", required=True, help="rk,chd of the twisting class")
    p.add_argument("--gamma-minus", required=True, help="record phase below the gap")
    p.add_argument("--charge", required=True, help="a,b,c,e")

    p = add("helix-svg", _cmd_helix_svg, "schematic helix drawing", default_format="text")
    p.add_argument("--no-labels", action="store_true", help="omit all text nodes")
    p.add_argument("--out", help="write the SVG to this path instead of stdout")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, text = args.handler(args)
    except UsageError as exc:
        print(f"stabtorus: error: {exc}", file=sys.stderr)
        return 1
    except StabTorusError as exc:
        err = {"error": {"name": type(exc).__name__, "message": str(exc)}}
        print(jsonio.dumps(err), file=sys.stderr)
        return 2
    if args.format == "json":
        print(jsonio.dumps(payload))
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
