"""Canonical JSON documents for every value the CLI can emit.

Ordering rules (total, so rendering is byte-deterministic): h-orders
ascending; operator entries graded-lex ascending on the exponent tuples,
first slot before second before third; polynomial coefficients in the
canonical text form of format_poly.  render() is the single choke point for
byte output.
"""

from __future__ import annotations

import json

from .berezin import BerezinData
from .diffop import BiDiffOp, TriDiffOp
from .liewords import FitReport
from .parser import parse_poly
from .poly import format_poly, format_rational, grlex_key
from .series import HSeries
from .star import GaugeOp, PoissonSeries, StarProduct


def render(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _bidiff_entries(op: BiDiffOp):
    out = []
    for (df, dg) in sorted(op.terms, key=lambda k: (grlex_key(k[0]), grlex_key(k[1]))):
        out.append({"df": list(df), "dg": list(dg),
                    "coeff": format_poly(op.terms[(df, dg)])})
    return out


def star_product_doc(m: StarProduct) -> dict:
    terms = []
    for k in range(1, m.n_order + 1):
        op = m.order_op(k)
        if op.terms:
            terms.append({"k": k, "ops": _bidiff_entries(op)})
    return {"kind": "star_product", "h_order": m.n_order, "terms": terms}


def star_product_from_doc(doc: dict) -> StarProduct:
    if doc.get("kind") != "star_product":
        raise ValueError(f"expected a star_product document, got {doc.get('kind')!r}")
    orders = {}
    for entry in doc["terms"]:
        terms = {}
        for op in entry["ops"]:
            key = (tuple(op["df"]), tuple(op["dg"]))
            terms[key] = parse_poly(op["coeff"])
        orders[entry["k"]] = BiDiffOp(terms)
    return StarProduct(doc["h_order"], orders)


def gauge_op_doc(u: GaugeOp) -> dict:
    terms = []
    for k in range(1, u.n_order + 1):
        op = u.order_op(k)
        if op.terms:
            ops = [{"d": list(d), "coeff": format_poly(op.terms[d])}
                   for d in sorted(op.terms, key=grlex_key)]
            terms.append({"k": k, "ops": ops})
    return {"kind": "gauge_op", "h_order": u.n_order, "terms": terms}


def poisson_series_doc(p: PoissonSeries) -> dict:
    coeffs = p.trimmed()
    return {"kind": "poisson_series",
            "terms": [{"i": i, "phi": format_poly(c)} for i, c in enumerate(coeffs)]}


def h_series_doc(s: HSeries) -> dict:
    terms = [{"i": i, "poly": format_poly(c)}
             for i, c in enumerate(s.coeffs) if c]
    return {"kind": "h_series", "h_order": s.order, "terms": terms}


def defect_report_doc(defects: dict, h_order: int) -> dict:
    entries = []
    for k in sorted(defects):
        op: TriDiffOp = defects[k]
        if not op.terms:
            continue
        terms = []
        for key in sorted(op.terms, key=lambda t: tuple(grlex_key(e) for e in t)):
            df, dg, dh = key
            terms.append({"df": list(df), "dg": list(dg), "dh": list(dh),
                          "coeff": format_poly(op.terms[key])})
        entries.append({"k": k, "terms": terms})
    return {"kind": "defect_report", "h_order": h_order, "defects": entries}


def _localized_series(s: HSeries):
    return [{"i": i, "num": format_poly(c.num), "phi_pow": c.power}
            for i, c in enumerate(s.coeffs) if c]


def berezin_doc(data: BerezinData) -> dict:
    s_entries = [{"b": b, "series": _localized_series(w)}
                 for b, w in sorted(data.S.terms.items())]
    return {"kind": "berezin_data",
            "h_order": data.n_order,
            "phi": format_poly(data.phi),
            "S": s_entries,
            "f": _localized_series(data.f),
            "tau": _localized_series(data.tau)}


def fit_report_doc(r: FitReport) -> dict:
    lambdas = [{"sigma": list(s), "tau": list(t),
                "value": format_rational(v)}
               for (s, t), v in sorted(r.lambdas.items()) if v]
    return {"kind": "fit_report", "k": r.k, "status": r.status,
            "num_unknowns": r.num_unknowns, "rank": r.rank,
            "kernel_dim": r.kernel_dim,
            "samples": [format_poly(p) for p in r.samples],
            "lambdas": lambdas}
