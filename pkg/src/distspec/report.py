"""Structured results and their JSON / CSV / plain-text serialization.

Serialized output is a deterministic byte stream:

* object fields are written in a fixed order,
* integers outside the exactly representable double range
  (``|x| > 2**53 - 1``) are written as decimal strings,
* floats are written with 17 significant digits,
* wall-clock timing is omitted unless explicitly requested.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections import Counter
from dataclasses import dataclass, field, fields

from . import graphs
from .characterize import PUBLISHED_HITS, TheoremReport
from .errors import DisconnectedGraphError, InvalidInputError, InvalidParameterError
from .graph6 import HEADER, emit_graph6, parse_graph6, read_graph6_lines
from .linalg import char_poly, float_eigenvalues, integer_roots
from .spectra import CosTerm, Int, RootOf, Surd, closed_form_spectrum, has_closed_form

SAFE_INT = 2**53 - 1
FORMATS = ("json", "csv", "plain")
MODES = ("closed-form", "oracle", "both")


# --------------------------------------------------------------------------
# Report types
# --------------------------------------------------------------------------


@dataclass
class SpectrumReport:
    descriptor: str
    graph6: str
    matrix: str
    order: int
    mode: str
    closed_form: list[dict] | None
    integer_roots: list[list[int]]
    remainder: list[int]
    eigenvalues: list[float]
    integral: bool
    witness: str | None = None
    agreement: bool | None = None
    max_deviation: float | None = None
    diagnostics: list[str] = field(default_factory=list)

    def spectrum_rows(self) -> list[dict]:
        """One row per distinct eigenvalue, with multiplicity."""
        if self.closed_form is not None:
            rows: dict[str, dict] = {}
            for e in self.closed_form:
                for value, numeric in zip(e["normalized"], e["normalized_numeric"]):
                    row = rows.setdefault(value, {"value": value, "numeric": numeric, "multiplicity": 0,
                                                  "exact": value.lstrip("-").isdigit(), "tags": set()})
                    row["multiplicity"] += e["multiplicity"]
                    row["tags"].add(e["tag"])
            out = sorted(rows.values(), key=lambda r: (r["numeric"], r["value"]))
            for r in out:
                r["tags"] = "+".join(sorted(r["tags"]))
            return out
        out = [{"value": str(r), "numeric": float(r), "multiplicity": k, "exact": True, "tags": "oracle"}
               for r, k in self.integer_roots]
        leftover = list(self.eigenvalues)
        for r, k in self.integer_roots:
            for _ in range(k):
                leftover.remove(min(leftover, key=lambda x: abs(x - r)))
        # Irrational eigenvalues are grouped numerically.
        groups: list[list[float]] = []
        for x in sorted(leftover):
            if groups and abs(x - groups[-1][-1]) <= 1e-8 * (1 + abs(x)):
                groups[-1].append(x)
            else:
                groups.append([x])
        for g in groups:
            v = sum(g) / len(g)
            out.append({"value": _fmt_float(v), "numeric": v, "multiplicity": len(g), "exact": False,
                        "tags": "oracle"})
        return sorted(out, key=lambda r: (r["numeric"], r["value"]))


@dataclass
class CorpusReport:
    matrix: str
    records: list[dict]
    total: int
    integral_count: int
    error_count: int


# --------------------------------------------------------------------------
# Builders
# --------------------------------------------------------------------------


def _value_record(v) -> dict:
    if isinstance(v, Int):
        return {"type": "int", "v": v.v}
    if isinstance(v, Surd):
        return {"type": "surd", "a": v.a, "d": v.d, "q": v.q, "branch": v.branch}
    if isinstance(v, CosTerm):
        return {"type": "cos", "c": v.c, "n": v.n, "k": v.k, "sign": v.sign}
    if isinstance(v, RootOf):
        return {"type": "rootof", "poly": list(v.poly), "index": v.index}
    raise TypeError(f"unknown spectral value {v!r}")


def closed_form_records(spectrum) -> list[dict]:
    out = []
    for e in spectrum.entries:
        parts = []
        for v in e.value.normalize():
            # An irreducible conjugate pair is listed branch by branch.
            parts.extend([Surd(v.a, v.d, v.q, -1), Surd(v.a, v.d, v.q, 1)] if v.count == 2 else [v])
        out.append({
            "value": str(e.value),
            "exact": _value_record(e.value),
            "multiplicity": e.multiplicity,
            "tag": e.tag,
            "numeric": e.value.numeric(),
            "normalized": [str(p) for p in parts],
            "normalized_numeric": [x for p in parts for x in p.numeric()],
        })
    return out


def _matrix_name(kind: str) -> str:
    try:
        return graphs.MATRIX_KINDS[kind][0]
    except KeyError:
        raise InvalidParameterError(f"unknown matrix kind {kind!r}; expected d or dl") from None


def spectrum_report(g: graphs.Graph, kind: str = "d", mode: str = "both", tol: float = 1e-8,
                    descriptor: str | None = None) -> SpectrumReport:
    """Certify the spectrum of ``D(g)`` or ``D^L(g)``.

    The exact factorization of the characteristic polynomial is always
    computed, since it is the integrality certificate. ``mode`` decides
    where the closed form and the Jacobi eigenvalues come in:
    ``closed-form`` reports closed-form numerics, ``oracle`` reports Jacobi
    eigenvalues only, and ``both`` reports Jacobi eigenvalues and checks the
    closed form against them and against the exact integer roots.
    """
    if mode not in MODES:
        raise InvalidParameterError(f"mode must be one of {MODES}, got {mode!r}")
    matrix = _matrix_name(kind)
    params = dict(g.params)
    closed = None
    if mode != "oracle":
        if g.family is None or not has_closed_form(g.family, kind):
            raise InvalidParameterError(f"no closed form for {g.describe()} with the {matrix} matrix; use the oracle")
        closed = closed_form_spectrum(g.family, kind, **params)
    M = graphs.graph_matrix(g, kind)
    fac = integer_roots(char_poly(M))
    roots = [[r, k] for r, k in fac.roots]
    if mode == "closed-form":
        eig = closed.numeric()
    else:
        eig = [float(x) for x in float_eigenvalues(M)]
    integral = fac.fully_integral
    report = SpectrumReport(
        descriptor=descriptor or g.describe(),
        graph6=emit_graph6(g),
        matrix=matrix,
        order=g.n,
        mode=mode,
        closed_form=closed_form_records(closed) if closed is not None else None,
        integer_roots=roots,
        remainder=list(fac.remainder.coeffs),
        eigenvalues=eig,
        integral=integral,
        witness=None if integral else f"non-integral factor {fac.remainder}",
    )
    if mode == "both":
        _compare(report, closed, fac, tol)
    return report


def _compare(report: SpectrumReport, closed, fac, tol: float):
    diag = []
    if not closed.has_correct_cardinality:
        diag.append(f"closed form lists {closed.total} eigenvalues for order {closed.order}")
    cf = closed.numeric()
    if len(cf) == len(report.eigenvalues):
        dev = max((abs(a - b) for a, b in zip(cf, report.eigenvalues)), default=0.0)
        report.max_deviation = dev
        if not dev <= tol:
            diag.append(f"closed form deviates from the Jacobi eigenvalues by {dev:.3e} > {tol:g}")
    else:
        diag.append(f"closed form has {len(cf)} values, matrix has {len(report.eigenvalues)}")
    want = Counter(dict(fac.root_multiset()))
    got = closed.integer_counts()
    if got != want:
        diag.append(f"closed-form integers {dict(sorted(got.items()))} != exact roots {dict(sorted(want.items()))}")
    report.agreement = not diag
    report.diagnostics = diag


def corpus_report(lines, kind: str = "d") -> CorpusReport:
    """Certify each graph6 line in ``lines``; bad lines become error records."""
    _matrix_name(kind)
    records = []
    for lineno, text in read_graph6_lines(lines):
        if text == HEADER:
            continue
        rec = {"line": lineno, "graph6": text}
        try:
            g = parse_graph6(text)
            M = graphs.graph_matrix(g, kind)
            fac = integer_roots(char_poly(M))
        except ValueError as exc:
            # Parse errors and disconnected graphs are recorded per line.
            kind_ = "disconnected" if isinstance(exc, DisconnectedGraphError) else "parse"
            rec.update({"n": None, "integral": None, "error": str(exc), "error_kind": kind_})
        else:
            rec.update({"n": g.n, "integral": fac.fully_integral,
                        "integer_roots": [[r, k] for r, k in fac.roots],
                        "remainder_degree": fac.remainder.degree, "error": None, "error_kind": None})
        records.append(rec)
    return CorpusReport(
        matrix=_matrix_name(kind),
        records=records,
        total=len(records),
        integral_count=sum(1 for r in records if r["integral"]),
        error_count=sum(1 for r in records if r["error"] is not None),
    )


# --------------------------------------------------------------------------
# Dict conversion
# --------------------------------------------------------------------------


def to_dict(r, timing: bool = False) -> dict:
    if isinstance(r, SpectrumReport):
        body = {f.name: getattr(r, f.name) for f in fields(r)}
        return {"report": "spectrum", **body}
    if isinstance(r, TheoremReport):
        body = {f.name: getattr(r, f.name) for f in fields(r) if f.name != "elapsed"}
        for name in ("diophantine_hits", "oracle_hits", "disagreements"):
            body[name] = [list(h) for h in body[name]]
        body["parameters"] = list(body["parameters"])
        body["hit_count"] = r.hit_count
        if timing:
            body["elapsed"] = r.elapsed
        return {"report": "theorem", **body}
    if isinstance(r, CorpusReport):
        return {"report": "corpus", **{f.name: getattr(r, f.name) for f in fields(r)}}
    raise TypeError(f"cannot serialize {type(r).__name__}")


def _restore_ints(x):
    # Inverse of the big-integer string encoding for fields known to hold ints.
    if isinstance(x, list):
        return [_restore_ints(v) for v in x]
    return int(x) if isinstance(x, str) else x


def from_dict(d: dict):
    kind = d.get("report")
    body = {k: v for k, v in d.items() if k != "report"}
    if kind == "spectrum":
        body["integer_roots"] = _restore_ints(body["integer_roots"])
        body["remainder"] = _restore_ints(body["remainder"])
        if body["closed_form"] is not None:
            for e in body["closed_form"]:
                e["exact"] = {k: (_restore_ints(v) if k != "type" else v) for k, v in e["exact"].items()}
        return SpectrumReport(**body)
    if kind == "theorem":
        body.pop("hit_count", None)
        return TheoremReport(**body)
    if kind == "corpus":
        return CorpusReport(**body)
    raise InvalidInputError(f"unknown report type {kind!r}")


# --------------------------------------------------------------------------
# Emitters
# --------------------------------------------------------------------------


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"non-finite float {x!r} cannot be serialized")
    s = format(x, ".17g")
    return s if any(c in s for c in ".e") else s + ".0"


def _emit_json(x, out: list[str], indent: int, level: int):
    pad = "\n" + " " * (indent * (level + 1))
    end = "\n" + " " * (indent * level)
    if isinstance(x, bool) or x is None:
        out.append(json.dumps(x))
    elif isinstance(x, int):
        out.append(str(x) if -SAFE_INT <= x <= SAFE_INT else json.dumps(str(x)))
    elif isinstance(x, float):
        out.append(_fmt_float(x))
    elif isinstance(x, str):
        out.append(json.dumps(x))
    elif isinstance(x, dict):
        if not x:
            out.append("{}")
            return
        out.append("{")
        for i, (k, v) in enumerate(x.items()):
            out.append(("," if i else "") + pad + json.dumps(str(k)) + ": ")
            _emit_json(v, out, indent, level + 1)
        out.append(end + "}")
    elif isinstance(x, (list, tuple)):
        if not x:
            out.append("[]")
            return
        if all(not isinstance(v, (dict, list, tuple)) for v in x):
            out.append("[")
            for i, v in enumerate(x):
                out.append(", " if i else "")
                _emit_json(v, out, indent, level + 1)
            out.append("]")
            return
        out.append("[")
        for i, v in enumerate(x):
            out.append(("," if i else "") + pad)
            _emit_json(v, out, indent, level + 1)
        out.append(end + "]")
    else:
        raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps_json(x, indent: int = 2) -> str:
    out: list[str] = []
    _emit_json(x, out, indent, 0)
    return "".join(out) + "\n"


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_csv_cell(v) for v in row])
    return buf.getvalue()


def _csv_cell(v):
    if isinstance(v, float):
        return _fmt_float(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    return v


def _spectrum_csv(r: SpectrumReport) -> str:
    rows = [[r.descriptor, r.matrix, row["value"], row["numeric"], row["multiplicity"], row["exact"], row["tags"]]
            for row in r.spectrum_rows()]
    return _csv_text(["descriptor", "matrix", "value", "numeric", "multiplicity", "integer", "source"], rows)


def in_range(cell, names, ranges: dict) -> bool:
    """Whether ``cell`` lies in a range dict of ``{"min", "max"}`` bounds or value lists."""
    for name, v in zip(names, cell):
        spec = ranges.get(name)
        if isinstance(spec, dict):
            if not spec["min"] <= v <= spec["max"]:
                return False
        elif isinstance(spec, list):
            if v not in spec:
                return False
    return True


def _theorem_csv(r: TheoremReport) -> str:
    published = set(PUBLISHED_HITS.get(r.theorem, []))
    dio, ora = set(r.diophantine_hits), set(r.oracle_hits)
    rows = []
    for hit in sorted(dio | ora | published, key=lambda t: (t[-1],) + tuple(t[:-1])):
        # The oracle verdict is blank outside the oracle box.
        oracle = (hit in ora) if in_range(hit, r.parameters, r.oracle_range) else None
        rows.append([r.theorem, *hit, hit in dio, oracle, hit in published])
    header = ["theorem", *r.parameters, "diophantine", "oracle", "published"]
    return _csv_text(header, rows)


def _corpus_csv(r: CorpusReport) -> str:
    rows = [[x["line"], x["graph6"], x["n"], x["integral"], x["error_kind"], x["error"]] for x in r.records]
    return _csv_text(["line", "graph6", "n", "integral", "error_kind", "error"], rows)


def _spectrum_plain(r: SpectrumReport) -> str:
    parts = []
    for row in r.spectrum_rows():
        parts.append(f"{row['value']}^{row['multiplicity']}" if row["multiplicity"] > 1 else row["value"])
    lines = [
        f"{r.descriptor}  [{r.matrix}, order {r.order}, graph6 {r.graph6}]",
        f"spectrum: {{{', '.join(parts)}}}",
        f"integral: {'yes' if r.integral else 'no'}" + (f" ({r.witness})" if r.witness else ""),
    ]
    if r.closed_form is not None:
        corrected = [e["value"] for e in r.closed_form if e["tag"] == "corrected"]
        if corrected:
            lines.append(f"corrected closed-form entries: {', '.join(corrected)}")
    if r.agreement is not None:
        status = "agree" if r.agreement else "MISMATCH"
        lines.append(f"closed form vs oracle: {status} (max deviation {r.max_deviation:.3e})"
                     if r.max_deviation is not None else f"closed form vs oracle: {status}")
        lines.extend(f"  {d}" for d in r.diagnostics)
    return "\n".join(lines) + "\n"


def _fmt_range(ranges: dict) -> str:
    parts = []
    for name, spec in ranges.items():
        if isinstance(spec, dict):
            parts.append(f"{name} {spec['min']}..{spec['max']}")
        elif isinstance(spec, list):
            parts.append(f"{name} in {{{', '.join(map(str, spec))}}}")
        else:
            parts.append(f"{name} {spec}")
    return ", ".join(parts)


def _theorem_plain(r: TheoremReport, timing: bool) -> str:
    fmt = lambda hits: ", ".join("(" + ",".join(map(str, h)) + ")" for h in hits) or "none"  # noqa: E731
    lines = [
        f"theorem {r.theorem}: {r.statement}",
        f"diophantine range {_fmt_range(r.diophantine_range)}: {len(r.diophantine_hits)} hits",
        f"  {fmt(r.diophantine_hits)}",
        f"oracle range {_fmt_range(r.oracle_range)} ({r.oracle_cells} cells): {len(r.oracle_hits)} hits",
        f"  {fmt(r.oracle_hits)}",
        f"agreement: {'yes' if r.agreement else 'NO'}",
    ]
    if r.disagreements:
        lines.append(f"disagreements: {fmt(r.disagreements)}")
    extra = r.extras.get("not_in_published")
    if extra:
        lines.append(f"not in the published list: {fmt(extra)}")
    lines.extend(f"note: {n}" for n in r.notes)
    if timing:
        lines.append(f"elapsed: {r.elapsed:.3f} s")
    return "\n".join(lines) + "\n"


def _corpus_plain(r: CorpusReport) -> str:
    lines = []
    for x in r.records:
        if x["error"]:
            lines.append(f"{x['line']}: {x['graph6']}  error: {x['error']}")
        else:
            lines.append(f"{x['line']}: {x['graph6']}  n={x['n']}  {'integral' if x['integral'] else 'not integral'}")
    lines.append(f"{r.integral_count} of {r.total} graphs are {r.matrix}-integral"
                 + (f"; {r.error_count} lines could not be certified" if r.error_count else ""))
    return "\n".join(lines) + "\n"


def write_report(r, fmt: str = "json", timing: bool = False) -> bytes:
    """Serialize a report as UTF-8 bytes in ``json``, ``csv`` or ``plain`` form."""
    if fmt == "json":
        text = dumps_json(to_dict(r, timing=timing))
    elif fmt == "csv":
        if isinstance(r, SpectrumReport):
            text = _spectrum_csv(r)
        elif isinstance(r, TheoremReport):
            text = _theorem_csv(r)
        elif isinstance(r, CorpusReport):
            text = _corpus_csv(r)
        else:
            raise TypeError(f"cannot serialize {type(r).__name__}")
    elif fmt == "plain":
        if isinstance(r, SpectrumReport):
            text = _spectrum_plain(r)
        elif isinstance(r, TheoremReport):
            text = _theorem_plain(r, timing)
        elif isinstance(r, CorpusReport):
            text = _corpus_plain(r)
        else:
            raise TypeError(f"cannot serialize {type(r).__name__}")
    else:
        raise InvalidParameterError(f"format must be one of {FORMATS}, got {fmt!r}")
    return text.encode("utf-8")


def read_report(data: bytes | str):
    """Inverse of ``write_report(r, "json")``."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return from_dict(json.loads(data))
