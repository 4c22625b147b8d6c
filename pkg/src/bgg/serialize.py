"""JSON round-trips for presentations, exterior matrices, complexes, and
Tate windows.  Coefficients are ints over a prime field and "p/q" strings
over the rationals."""

from __future__ import annotations

from fractions import Fraction

from .complexes import EComplex, ExtMatrix, FreeEModule
from .errors import InputError
from .exterior import ExtElement, popcount
from .fields import field_from_json
from .symmetric import SPolynomial, SPresentation
from .tate import TateWindow


def coeff_to_json(field, c):
    if field.kind == "prime":
        return int(c)
    fr = Fraction(c)
    return int(fr) if fr.denominator == 1 else f"{fr.numerator}/{fr.denominator}"


def coeff_from_json(field, obj):
    if isinstance(obj, str):
        return field(Fraction(obj))
    return field(obj)


def spresentation_to_json(pres: SPresentation):
    f = pres.field
    return {
        **f.to_json(),
        "v": pres.v,
        "gens": list(pres.gens),
        "rels": list(pres.rels),
        "matrix": [[[[coeff_to_json(f, c), list(e)]
                     for e, c in sorted(ent.terms.items(), reverse=True)]
                    for ent in row] for row in pres.matrix],
    }


def spresentation_from_json(obj, field=None) -> SPresentation:
    f = field or field_from_json(obj)
    gens, rels = obj["gens"], obj["rels"]
    raw = obj.get("matrix", [[] for _ in gens])
    v = obj.get("v")
    if v is None:
        for row in raw:
            for ent in row:
                for _, e in ent:
                    v = len(e) - 1
                    break
    if v is None:
        raise InputError("cannot infer v; supply a \"v\" field")
    matrix = []
    for i, row in enumerate(raw):
        out_row = []
        for j, ent in enumerate(row):
            deg = rels[j] - gens[i]
            terms = {tuple(e): coeff_from_json(f, c) for c, e in ent}
            out_row.append(SPolynomial(v, f, deg, terms))
        matrix.append(out_row)
    return SPresentation(v, f, gens, rels, matrix)


def extmatrix_to_json(m: ExtMatrix):
    f = m.field
    return {
        "v": m.v,
        "source": list(m.source.gens),
        "target": list(m.target.gens),
        "entries": sorted([i, j, [[coeff_to_json(f, c), mask]
                                  for mask, c in sorted(ent.terms.items())]]
                          for (i, j), ent in m.entries.items()),
    }


def extmatrix_from_json(obj, field) -> ExtMatrix:
    v = obj["v"]
    src = FreeEModule(v, obj["source"])
    tgt = FreeEModule(v, obj["target"])
    ents = {}
    for i, j, terms in obj["entries"]:
        deg = src.gens[j] - tgt.gens[i]
        ents[(i, j)] = ExtElement(v, field, deg,
                                  {mask: coeff_from_json(field, c) for c, mask in terms})
    return ExtMatrix(field, src, tgt, ents)


def ecomplex_to_json(cx: EComplex):
    return {
        "v": cx.v,
        "window": [cx.lo, cx.hi],
        "terms": {str(p): list(cx.terms[p].gens) for p in range(cx.lo, cx.hi + 1)},
        "diffs": {str(p): extmatrix_to_json(cx.diffs[p])
                  for p in range(cx.lo, cx.hi) if p in cx.diffs},
    }


def ecomplex_from_json(obj, field) -> EComplex:
    v = obj["v"]
    terms = {int(p): FreeEModule(v, gens) for p, gens in obj["terms"].items()}
    diffs = {int(p): extmatrix_from_json(d, field) for p, d in obj["diffs"].items()}
    return EComplex(field, v, terms, diffs)


def provenance_to_json(prov):
    out = {}
    for k, x in prov.items():
        if isinstance(x, SPresentation):
            out[k] = {"_pres": spresentation_to_json(x)}
        elif isinstance(x, dict):
            out[k] = provenance_to_json(x)
        else:
            out[k] = x
    return out


def provenance_from_json(obj, field):
    out = {}
    for k, x in obj.items():
        if isinstance(x, dict) and "_pres" in x:
            out[k] = spresentation_from_json(x["_pres"], field)
        elif isinstance(x, dict):
            out[k] = provenance_from_json(x, field)
        else:
            out[k] = x
    return out


def tatewindow_to_json(T: TateWindow):
    return {
        **T.field.to_json(),
        "v": T.v,
        "start": T.start,
        "provenance": provenance_to_json(T.provenance),
        "complex": ecomplex_to_json(T.complex),
    }


def tatewindow_from_json(obj) -> TateWindow:
    f = field_from_json(obj)
    cx = ecomplex_from_json(obj["complex"], f)
    prov = provenance_from_json(obj.get("provenance", {}), f)
    return TateWindow(f, obj["v"], cx, prov, start=obj.get("start"))
