"""JSON encoding and decoding for the package's value types.

Conventions: exact rationals encode as ints when integral and as "n/d"
strings otherwise; floats are wrapped as {"approx": x} so exactness survives
a round trip. Top-level CLI payloads carry a "schema" version key and are
emitted with sorted keys, making output byte-stable for fixed input.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .charges import CentralCharge, KClass
from .cover import LiftedAuto
from .errors import DomainError
from .sheaves import (
    FormalObject,
    LocallyFree,
    Mixed,
    Torsion,
    TorsionFree,
    formal_object,
)
from .stability import DegLabel, StabPoint, StdLabel

SCHEMA = "stabtorus/1"


# ---------------------------------------------------------------------------
# numbers


def encode_number(x):
    if isinstance(x, bool):
        raise DomainError("booleans are not numeric payload")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return int(x)
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return {"approx": x}
    raise DomainError(f"cannot encode {x!r} as a number")


def decode_number(v):
    if isinstance(v, bool):
        raise DomainError("booleans are not numeric payload")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return Fraction(v)
        except ValueError as exc:
            raise DomainError(f"not a rational literal: {v!r}") from exc
    if isinstance(v, dict) and set(v) == {"approx"}:
        return float(v["approx"])
    if isinstance(v, float):
        # tolerated on input for convenience; emitted only in wrapped form
        return v
    raise DomainError(f"cannot decode {v!r} as a number")


# ---------------------------------------------------------------------------
# classes, charges, group elements


def encode_kclass(v: KClass) -> dict:
    return {"rk": v.rk, "chd": v.chd}


def decode_kclass(obj) -> KClass:
    if not isinstance(obj, dict) or set(obj) != {"rk", "chd"}:
        raise DomainError(f"not a class payload: {obj!r}")
    return KClass(obj["rk"], obj["chd"])


def encode_charge(Z: CentralCharge) -> dict:
    return {
        "a": encode_number(Z.a),
        "b": encode_number(Z.b),
        "c": encode_number(Z.c),
        "e": encode_number(Z.e),
    }


def decode_charge(obj) -> CentralCharge:
    if not isinstance(obj, dict) or set(obj) != {"a", "b", "c", "e"}:
        raise DomainError(f"not a charge payload: {obj!r}")
    return CentralCharge(*(decode_number(obj[k]) for k in ("a", "b", "c", "e")))


def encode_auto(G: LiftedAuto) -> dict:
    return {
        "T": [[encode_number(x) for x in row] for row in G.T.rows()],
        "winding": G.winding,
    }


def decode_auto(obj) -> LiftedAuto:
    if not isinstance(obj, dict) or set(obj) != {"T", "winding"}:
        raise DomainError(f"not a lifted automorphism payload: {obj!r}")
    rows = obj["T"]
    if (
        not isinstance(rows, list)
        or len(rows) != 2
        or any(not isinstance(r, list) or len(r) != 2 for r in rows)
    ):
        raise DomainError("T must be a 2x2 matrix")
    T = tuple(tuple(decode_number(x) for x in row) for row in rows)
    return LiftedAuto(T, obj["winding"])


def encode_label(label) -> dict:
    if isinstance(label, StdLabel):
        return {"kind": "std", "p": label.p}
    if isinstance(label, DegLabel):
        return {"kind": "deg", "p": label.p, "gamma": encode_number(label.gamma)}
    raise DomainError(f"cannot encode label {label!r}")


def decode_label(obj):
    if not isinstance(obj, dict) or "kind" not in obj:
        raise DomainError(f"not a label payload: {obj!r}")
    if obj["kind"] == "std":
        return StdLabel(obj["p"])
    if obj["kind"] == "deg":
        return DegLabel(obj["p"], decode_number(obj["gamma"]))
    raise DomainError(f"unknown label kind {obj['kind']!r}")


def encode_point(sigma: StabPoint) -> dict:
    return {"label": encode_label(sigma.label), "g": encode_auto(sigma.g)}


def decode_point(obj) -> StabPoint:
    if not isinstance(obj, dict) or "label" not in obj or "g" not in obj:
        raise DomainError(f"not a point payload: {obj!r}")
    return StabPoint(decode_label(obj["label"]), decode_auto(obj["g"]))


# ---------------------------------------------------------------------------
# sheaves and formal objects


def encode_sheaf(S) -> dict:
    if isinstance(S, Torsion):
        return {"kind": "torsion", "points": [[pid, n] for pid, n in S.points]}
    if isinstance(S, LocallyFree):
        return {"kind": "locally_free", "rank": S.rank}
    if isinstance(S, TorsionFree):
        out = {"kind": "torsion_free", "rank": S.rank, "colength": S.colength}
        if S.hn is not None:
            out["hn"] = [
                [encode_kclass(cls), stable] for cls, stable in S.hn
            ]
        return out
    if isinstance(S, Mixed):
        return {
            "kind": "mixed",
            "torsion": encode_sheaf(S.torsion),
            "free": encode_sheaf(S.free),
        }
    raise DomainError(f"cannot encode sheaf {S!r}")


def decode_sheaf(obj):
    if not isinstance(obj, dict) or "kind" not in obj:
        raise DomainError(f"not a sheaf payload: {obj!r}")
    kind = obj["kind"]
    if kind == "torsion":
        return Torsion(tuple((pid, n) for pid, n in obj["points"]))
    if kind == "locally_free":
        return LocallyFree(obj["rank"])
    if kind == "torsion_free":
        hn = obj.get("hn")
        if hn is not None:
            hn = tuple((decode_kclass(cls), stable) for cls, stable in hn)
        return TorsionFree(obj["rank"], obj["colength"], hn)
    if kind == "mixed":
        return Mixed(decode_sheaf(obj["torsion"]), decode_sheaf(obj["free"]))
    raise DomainError(f"unknown sheaf kind {kind!r}")


def encode_object(E: FormalObject) -> dict:
    return {
        "graded": {str(i): encode_sheaf(S) for i, S in E.graded},
        "flags": [[i, j] for i, j in E.nonsplit],
    }


def decode_object(obj) -> FormalObject:
    if not isinstance(obj, dict) or "graded" not in obj:
        raise DomainError(f"not an object payload: {obj!r}")
    try:
        graded = {int(i): decode_sheaf(S) for i, S in obj["graded"].items()}
        flags = tuple((int(i), int(j)) for i, j in obj.get("flags", ()))
    except (TypeError, ValueError) as exc:
        raise DomainError(f"malformed object payload: {exc}") from exc
    return formal_object(graded, flags)


# ---------------------------------------------------------------------------
# assembled reports


def encode_hn_factor(f) -> dict:
    return {
        "class": encode_kclass(f.kclass),
        "phase": encode_number(f.phase),
        "part": encode_object(f.part) if f.part is not None else None,
        "stable": f.stable,
    }


def encode_family(fam) -> dict:
    return {
        "kind": fam.kind,
        "shift": fam.shift,
        "class": encode_kclass(fam.kclass) if fam.kclass is not None else None,
        "phase": encode_number(fam.phase) if fam.phase is not None else None,
        "note": fam.note,
    }


def encode_spectrum(descriptor) -> dict:
    return {
        "points": [encode_number(q) for q in descriptor.points],
        "series": [
            {
                "kind": s.kind,
                "computable": s.computable,
                "increasing": s.increasing,
                "limit": encode_number(s.limit),
            }
            for s in descriptor.series
        ],
        "uncertain": [
            [encode_number(a), encode_number(b)] for a, b in descriptor.uncertain
        ],
        "complete": descriptor.complete,
    }


def encode_wall_decision(decision) -> dict:
    if decision.is_wall:
        return {"wall": encode_label(decision.target)}
    return {"wall": None, "reason": decision.reason}


def encode_complex(cx) -> dict:
    return {
        "nodes": [
            {
                "name": nd.name,
                "kind": nd.kind,
                "index": nd.index,
                "homotopy": nd.homotopy,
                "note": nd.note,
            }
            for nd in cx.nodes
        ],
        "edges": [[w, c] for w, c in cx.edges],
    }


def encode_group(group) -> dict:
    return {
        "group": group.name,
        "generators": len(group.generators),
        "relations": len(group.relations),
        "free_rank": group.free_rank,
    }


def dumps(payload: dict) -> str:
    """Serialize a top-level payload: schema-stamped, sorted, deterministic."""
    body = dict(payload)
    body.setdefault("schema", SCHEMA)
    return json.dumps(body, sort_keys=True, separators=(", ", ": "))
