"""Canonical JSON for every object the CLI reads or writes.

Rationals are ``"num/den"`` strings, angles are turns, and chord values are
repeated as floats under keys ending in ``_approx`` for reading only.
:func:`dumps` sorts keys and fixes the layout, so encoding a decoded
document gives back the same bytes.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, is_dataclass
from fractions import Fraction

from .characters import LadderCharacter, LevelCharacter, ProductCharacter, TorusPoint
from .errors import InvalidConfig
from .exact import UnitAngle, chord_length, format_rational, rational
from .groups import AmbientGroup, ElementStream, Factor, GroupElement, stream_from_description
from .kronecker import KroneckerCertificate

FORMAT_CONSTRUCTION = "sidonpairs/construction"
FORMAT_CERTIFICATE = "sidonpairs/certificate"
FORMAT_WITNESS = "sidonpairs/witness"
FORMAT_ORACLE = "sidonpairs/oracle"
VERSION = 1


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidConfig(f"not valid JSON: {exc}") from None


def plain(value):
    """JSON-able form of provenance and metadata values."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, float):
        return "inf" if value == math.inf else value
    if isinstance(value, UnitAngle):
        return format_rational(value.turns)
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if hasattr(value, "to_dict"):
        return plain(value.to_dict())
    if is_dataclass(value):
        return plain(asdict(value))
    return str(value)


def _need(doc, key, kind=None):
    if not isinstance(doc, dict) or key not in doc:
        raise InvalidConfig(f"missing field {key!r}")
    v = doc[key]
    if kind is not None and not isinstance(v, kind):
        raise InvalidConfig(f"field {key!r} has the wrong type")
    return v


def rational_from_json(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise InvalidConfig(f"expected a rational as 'num/den', got {s!r}")
    try:
        return rational(s)
    except (ValueError, ZeroDivisionError):
        raise InvalidConfig(f"bad rational {s!r}") from None


# -- groups ------------------------------------------------------------------


def factor_to_json(f: Factor) -> str:
    return str(f)


def factor_from_json(s: str) -> Factor:
    if not isinstance(s, str):
        raise InvalidConfig(f"bad factor {s!r}")
    t = s.replace(" ", "")
    if t in ("Q", "Z"):
        return Factor.rationals()
    try:
        if t.startswith("C(") and t.endswith("^inf)"):
            return Factor.prufer(int(t[2:-5]))
        if t.startswith("Z(") and t.endswith(")"):
            return Factor.cyclic(int(t[2:-1]))
    except ValueError:
        pass
    raise InvalidConfig(f"bad factor {s!r}; use Q, C(p^inf) or Z(n)")


def ambient_to_json(A: AmbientGroup) -> dict:
    return {
        "explicit": [[i, factor_to_json(f)] for i, f in A.explicit],
        "default": None if A.default is None else factor_to_json(A.default),
    }


def ambient_from_json(doc) -> AmbientGroup:
    """Accepts the canonical object or a shorthand string.

    Shorthands: ``"Z"``, ``"Q"``, ``"C(p^inf)"``, ``"Z(n)"`` for one factor,
    and ``"sum Z(n)"``, ``"sum C(p^inf)"``, ``"sum Q"`` for countable direct sums.
    """
    if isinstance(doc, str):
        s = doc.strip()
        for prefix in ("sum ", "(+)", "⊕"):
            if s.startswith(prefix):
                return AmbientGroup.direct_sum(factor_from_json(s[len(prefix):].strip()))
        return AmbientGroup.single(factor_from_json(s))
    explicit = _need(doc, "explicit", list)
    default = doc.get("default")
    try:
        pairs = tuple((int(i), factor_from_json(f)) for i, f in explicit)
    except (TypeError, ValueError):
        raise InvalidConfig("ambient 'explicit' must be a list of [index, factor]") from None
    return AmbientGroup(pairs, None if default is None else factor_from_json(default))


def element_to_json(x: GroupElement) -> list:
    return [[i, format_rational(c)] for i, c in x.support]


def element_from_json(A: AmbientGroup, doc) -> GroupElement:
    """``[[index, "num/den"], ...]``, or a bare rational for a one-factor group."""
    if isinstance(doc, (str, int)) and not isinstance(doc, bool):
        return A.scalar(rational_from_json(doc))
    if not isinstance(doc, list):
        raise InvalidConfig(f"bad element {doc!r}")
    try:
        return A.element([(int(i), rational_from_json(c)) for i, c in doc])
    except (TypeError, ValueError) as exc:
        raise InvalidConfig(f"bad element {doc!r}: {exc}") from None


# -- characters --------------------------------------------------------------


def character_to_json(g) -> dict:
    if isinstance(g, TorusPoint):
        return {"type": "torus", "x": format_rational(g.x.turns), "scale": g.scale}
    if isinstance(g, LevelCharacter):
        return {"type": "level", "prime": g.prime, "rungs": [[L, format_rational(a.turns)] for L, a in g.rungs]}
    if isinstance(g, LadderCharacter):
        return {"type": "ladder", "rungs": [[L, format_rational(a.turns)] for L, a in g.rungs]}
    if isinstance(g, ProductCharacter):
        return {"type": "product", "components": [[i, character_to_json(h)] for i, h in g.components]}
    raise TypeError(f"cannot serialize character {g!r}")


def character_from_json(doc):
    kind = _need(doc, "type", str)
    if kind == "torus":
        return TorusPoint(UnitAngle(rational_from_json(_need(doc, "x"))), int(_need(doc, "scale", int)))
    if kind in ("ladder", "level"):
        rungs = tuple((int(L), UnitAngle(rational_from_json(a))) for L, a in _need(doc, "rungs", list))
        if kind == "level":
            return LevelCharacter(rungs, int(_need(doc, "prime", int)))
        return LadderCharacter(rungs)
    if kind == "product":
        return ProductCharacter(tuple((int(i), character_from_json(h)) for i, h in _need(doc, "components", list)))
    raise InvalidConfig(f"unknown character type {kind!r}")


# -- certificates -------------------------------------------------------------


def certificate_to_json(cert: KroneckerCertificate) -> dict:
    group = bool(cert.elements) and isinstance(cert.elements[0], GroupElement)
    return {
        "label": cert.label,
        "element_kind": "group" if group else "rational",
        "elements": [element_to_json(x) if group else format_rational(x) for x in cert.elements],
        "targets": [format_rational(t.turns) for t in cert.targets],
        "achieved": [format_rational(a) for a in cert.achieved],
        "witness": character_to_json(cert.witness),
        "bound": format_rational(cert.bound),
        "strict": cert.strict,
        "max_error": format_rational(cert.max_error),
        "bound_chord_approx": chord_length(cert.bound),
        "max_error_chord_approx": chord_length(cert.max_error),
        "meta": plain(cert.meta),
    }


def certificate_from_json(doc, ambient: AmbientGroup | None = None) -> KroneckerCertificate:
    kind = doc.get("element_kind", "rational") if isinstance(doc, dict) else None
    raw = _need(doc, "elements", list)
    if kind == "group":
        if ambient is None:
            raise InvalidConfig("group certificates need an ambient group")
        elements = tuple(element_from_json(ambient, e) for e in raw)
    else:
        elements = tuple(rational_from_json(e) for e in raw)
    strict = _need(doc, "strict", bool)
    return KroneckerCertificate(
        elements,
        tuple(UnitAngle(rational_from_json(t)) for t in _need(doc, "targets", list)),
        character_from_json(_need(doc, "witness", dict)),
        rational_from_json(_need(doc, "bound")),
        strict,
        tuple(rational_from_json(a) for a in _need(doc, "achieved", list)),
        doc.get("label", ""),
        doc.get("meta", {}),
    )


def standalone_certificate_to_json(cert: KroneckerCertificate, ambient: AmbientGroup | None = None) -> dict:
    doc = {"format": FORMAT_CERTIFICATE, "version": VERSION, "certificate": certificate_to_json(cert)}
    if ambient is not None:
        doc["ambient"] = ambient_to_json(ambient)
    return doc


# -- constructions --------------------------------------------------------------


def _summary(result) -> str:
    rel = "<" if result.strict else "<="
    return (
        f"{result.case} ({result.branch}), {len(result.pairs)} pairs in {result.ambient}: "
        f"E and E' are each matched to random targets within {result.bound} turns "
        f"({rel} chord {chord_length(result.bound):.6f}); their union is not I0"
    )


def construction_to_json(result) -> dict:
    stream = None
    if result.stream is not None and result.stream.describe is not None:
        stream = {"F": plain(result.stream.describe), "budget": result.stream.budget}
    return {
        "format": FORMAT_CONSTRUCTION,
        "version": VERSION,
        "ambient": ambient_to_json(result.ambient),
        "case": result.case,
        "branch": result.branch,
        "q": result.q,
        "bound": format_rational(result.bound),
        "bound_chord_approx": chord_length(result.bound),
        "strict": result.strict,
        "pairs": [
            {
                "n": p.n,
                "gamma": element_to_json(p.gamma),
                "chi": element_to_json(p.chi),
                "gamma_prime": element_to_json(p.gamma_prime),
                "gamma_index": p.gamma_index,
                "chi_indices": list(p.chi_indices),
            }
            for p in result.pairs
        ],
        "E": [element_to_json(x) for x in result.E],
        "Eprime": [element_to_json(x) for x in result.Eprime],
        "certificates": {"E": certificate_to_json(result.cert_E), "Eprime": certificate_to_json(result.cert_Eprime)},
        "provenance": plain(result.provenance),
        "stream": stream,
        "summary": _summary(result),
    }


def construction_from_json(doc):
    from .constructions.result import ConstructionResult, Pair

    if _need(doc, "format", str) != FORMAT_CONSTRUCTION:
        raise InvalidConfig(f"not a construction document (format {doc.get('format')!r})")
    A = ambient_from_json(_need(doc, "ambient", dict))
    pairs = []
    for p in _need(doc, "pairs", list):
        gamma = element_from_json(A, _need(p, "gamma", list))
        chi = element_from_json(A, _need(p, "chi", list))
        pairs.append(Pair(int(_need(p, "n", int)), gamma, chi, int(_need(p, "gamma_index", int)),
                          tuple(int(i) for i in _need(p, "chi_indices", list))))
    certs = _need(doc, "certificates", dict)
    stream = None
    if doc.get("stream"):
        s = doc["stream"]
        stream = stream_from_description(A, _need(s, "F", dict), int(_need(s, "budget", int)))
    prov = dict(_need(doc, "provenance", dict))
    return ConstructionResult(
        A,
        _need(doc, "case", str),
        _need(doc, "branch", str),
        int(_need(doc, "q", int)),
        rational_from_json(_need(doc, "bound")),
        _need(doc, "strict", bool),
        tuple(pairs),
        certificate_from_json(_need(certs, "E", dict), A),
        certificate_from_json(_need(certs, "Eprime", dict), A),
        prov,
        stream,
    )


def document_from_json(doc):
    """Re-encode helper for round trips: decode then encode any known document."""
    fmt = doc.get("format") if isinstance(doc, dict) else None
    if fmt == FORMAT_CONSTRUCTION:
        return construction_to_json(construction_from_json(doc))
    if fmt == FORMAT_CERTIFICATE:
        A = ambient_from_json(doc["ambient"]) if "ambient" in doc else None
        return standalone_certificate_to_json(certificate_from_json(_need(doc, "certificate", dict), A), A)
    if fmt == FORMAT_WITNESS:
        return witness_to_json(witness_from_json(doc), doc.get("context", {}))
    raise InvalidConfig(f"unknown document format {fmt!r}")


# -- witnesses ----------------------------------------------------------------


def dual_point_to_json(x) -> list:
    return [[i, format_rational(u)] for i, u in x.multipliers]


def witness_to_json(report, context: dict | None = None) -> dict:
    return {
        "format": FORMAT_WITNESS,
        "version": VERSION,
        "ambient": ambient_to_json(report.gamma.ambient),
        "m": report.precision.m,
        "points": [dual_point_to_json(x) for x in report.precision.points],
        "n": report.n,
        "gamma": element_to_json(report.gamma),
        "gamma_prime": element_to_json(report.gamma_prime),
        "values": [[format_rational(a.turns), format_rational(b.turns)] for a, b in report.values],
        "distances": [format_rational(d) for d in report.distances],
        "chords_approx": [chord_length(d) for d in report.distances],
        "chord_bound": format_rational(report.precision.chord_bound),
        "all_below": report.all_below,
        "inconclusive": False,
        "context": plain(context or {}),
    }


def witness_from_json(doc):
    from .constructions.precision import DualPoint, PrecisionSpec
    from .constructions.result import WitnessReport

    A = ambient_from_json(_need(doc, "ambient", dict))
    spec = PrecisionSpec(int(_need(doc, "m", int)), tuple(
        DualPoint(tuple((int(i), rational_from_json(u)) for i, u in pt)) for pt in _need(doc, "points", list)))
    values = tuple((UnitAngle(rational_from_json(a)), UnitAngle(rational_from_json(b)))
                   for a, b in _need(doc, "values", list))
    return WitnessReport(
        spec, int(_need(doc, "n", int)),
        element_from_json(A, _need(doc, "gamma", list)), element_from_json(A, _need(doc, "gamma_prime", list)),
        values, tuple(rational_from_json(d) for d in _need(doc, "distances", list)),
        _need(doc, "all_below", bool),
    )


def stream_to_json(F: ElementStream) -> dict | None:
    return None if F.describe is None else {"F": plain(F.describe), "budget": F.budget}
