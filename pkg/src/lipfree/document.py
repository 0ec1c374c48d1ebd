"""Versioned JSON documents for spaces, functions, elements and certificates.

Every document is an object carrying ``"format": "lipfree"``, ``"version"``
and ``"kind"``. Rationals are written as JSON integers when integral and as
``"a/b"`` strings otherwise; the reader also accepts decimal strings and
floats (converted exactly from their decimal form). Points are referred to
by label everywhere. The writer emits keys in a fixed order; the reader
does not care about order.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import DocumentError
from .extremal import Decomposition, ExposureCertificate, MoleculeReport
from .free_space import FreeElement, Representation
from .lipschitz import LipFunction
from .metric import FiniteMetricSpace, to_fraction, validate

FORMAT = "lipfree"
VERSION = 1


def rational_out(x: Fraction):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rational_in(v) -> Fraction:
    try:
        return to_fraction(v)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"not a rational: {v!r}") from exc


def _header(kind):
    return {"format": FORMAT, "version": VERSION, "kind": kind}


def _check_header(doc, kind=None):
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    if doc.get("format", FORMAT) != FORMAT:
        raise DocumentError(f"unknown format {doc.get('format')!r}")
    if doc.get("version", VERSION) != VERSION:
        raise DocumentError(f"unsupported version {doc.get('version')!r}")
    if kind is not None and doc.get("kind", kind) != kind:
        raise DocumentError(f"expected a {kind} document, got {doc.get('kind')!r}")


def space_to_doc(M: FiniteMetricSpace, header=True) -> dict:
    body = {
        "points": list(M.points),
        "base": M.base,
        "d": [[rational_out(v) for v in row] for row in M.dist],
    }
    return {**_header("space"), **body} if header else body


def space_from_doc(doc) -> FiniteMetricSpace:
    _check_header(doc, "space")
    try:
        points = [str(p) for p in doc["points"]]
        base = str(doc["base"])
        matrix = [[rational_in(v) for v in row] for row in doc["d"]]
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"space document is missing or garbles {exc}") from exc
    if base not in points:
        raise DocumentError(f"base {base!r} is not among the points")
    return validate(matrix, points.index(base), points)


def _labels_map(M, values, skip_base=False):
    return {
        M.points[i]: rational_out(v)
        for i, v in enumerate(values)
        if not (skip_base and i == M.base_index)
    }


def _read_map(M, mapping):
    if not isinstance(mapping, dict):
        raise DocumentError("expected a label -> value map")
    return {label: rational_in(v) for label, v in mapping.items()}


def function_to_doc(f: LipFunction, header=True) -> dict:
    body = {"space": space_to_doc(f.space, False), "values": _labels_map(f.space, f.values)}
    return {**_header("function"), **body} if header else body


def function_from_doc(doc, space=None) -> LipFunction:
    _check_header(doc, "function")
    M = space or space_from_doc(doc["space"])
    return LipFunction.from_mapping(M, _read_map(M, doc["values"]))


def element_to_doc(mu: FreeElement, header=True) -> dict:
    body = {
        "space": space_to_doc(mu.space, False),
        "coeffs": _labels_map(mu.space, mu.coeffs, skip_base=True),
    }
    return {**_header("element"), **body} if header else body


def element_from_doc(doc, space=None) -> FreeElement:
    _check_header(doc, "element")
    M = space or space_from_doc(doc["space"])
    return FreeElement.from_mapping(M, _read_map(M, doc["coeffs"]))


def _terms_out(M, r: Representation):
    return [
        {"pair": [M.points[x], M.points[y]], "weight": rational_out(w)}
        for w, (x, y) in r.terms
    ]


def _terms_in(M, terms):
    try:
        return Representation(
            tuple((rational_in(t["weight"]), (M.index(t["pair"][0]), M.index(t["pair"][1])))
                  for t in terms)
        )
    except (KeyError, TypeError, IndexError) as exc:
        raise DocumentError(f"bad representation term: {exc}") from exc


def representation_to_doc(M, r: Representation, header=True) -> dict:
    body = {"space": space_to_doc(M, False), "terms": _terms_out(M, r)}
    return {**_header("representation"), **body} if header else body


def representation_from_doc(doc, space=None) -> tuple[FiniteMetricSpace, Representation]:
    _check_header(doc, "representation")
    M = space or space_from_doc(doc["space"])
    return M, _terms_in(M, doc["terms"])


def certificate_to_doc(cert: ExposureCertificate, header=True) -> dict:
    M = cert.function.space
    body = {
        "space": space_to_doc(M, False),
        "pair": [M.points[cert.pair[0]], M.points[cert.pair[1]]],
        "function": _labels_map(M, cert.function.values),
        "margin": rational_out(cert.margin),
        "rationale": cert.rationale,
    }
    return {**_header("exposure_certificate"), **body} if header else body


def certificate_from_doc(doc, space=None) -> ExposureCertificate:
    _check_header(doc, "exposure_certificate")
    M = space or space_from_doc(doc["space"])
    f = LipFunction.from_mapping(M, _read_map(M, doc["function"]))
    pair = (M.index(doc["pair"][0]), M.index(doc["pair"][1]))
    return ExposureCertificate(pair, f, rational_in(doc["margin"]), doc.get("rationale", ""))


def report_to_doc(report: MoleculeReport, M: FiniteMetricSpace) -> dict:
    p, q = report.pair
    ev = report.evidence
    if isinstance(ev, ExposureCertificate):
        evidence = {
            "type": "exposing_function",
            "function": _labels_map(M, ev.function.values),
            "margin": rational_out(ev.margin),
        }
    elif isinstance(ev, Decomposition):
        evidence = {
            "type": "decomposition",
            "via": M.points[ev.via],
            "terms": _terms_out(M, ev.representation()),
        }
    else:
        evidence = None
    return {
        "pair": [M.points[p], M.points[q]],
        "segment": [M.points[z] for z in sorted(report.segment_points)],
        "trivial_segment": report.is_trivial_segment,
        "extreme": report.is_extreme,
        "exposed": report.is_exposed,
        "evidence": evidence,
    }


def bundle(kind: str, **fields) -> dict:
    return {**_header(kind), **fields}


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc


def load(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
