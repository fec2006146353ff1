"""Serialization of results to the JSON record schema, CSV and Markdown."""

from __future__ import annotations

import csv
import io
from collections import Counter
from typing import Any, Iterable

from sympy import factorint

from .algebra.rings import IntegerRing, Poly, Ring
from .complexes import scalar_to_json
from .homology import HomologyResult

FIELDS = ("family", "n", "coeff", "ring", "degree", "betti", "torsion", "provenance", "candidate", "basis_hash")


def factor_to_json(ring: Ring, d) -> Any:
    if isinstance(d, Poly):
        return [scalar_to_json(d.base, c) for c in d.c]
    return str(int(d))


def torsion_to_json(ring: Ring, torsion: list) -> list[dict]:
    out: list[dict] = []
    for d in torsion:
        f = factor_to_json(ring, d)
        if out and out[-1]["factor"] == f:
            out[-1]["multiplicity"] += 1
        else:
            out.append({"factor": f, "multiplicity": 1})
    return out


def record(family: str, n: int, coeff: str, ring: str, degree: int, betti: int, torsion: list[dict],
           provenance: str, candidate: str | None = None, basis_hash: str | None = None) -> dict:
    return {"family": family, "n": n, "coeff": coeff, "ring": ring, "degree": degree, "betti": betti,
            "torsion": torsion, "provenance": provenance, "candidate": candidate, "basis_hash": basis_hash}


def homology_record(family: str, n: int, coeff: str, ring_name: str, h: HomologyResult,
                    provenance: str = "computed", candidate: str | None = None) -> dict:
    return record(family, n, coeff, ring_name, h.degree, h.betti, torsion_to_json(h.ring, h.torsion),
                  provenance, candidate, h.basis_hash)


def poly_text(coeffs: list[str]) -> str:
    """Coefficient list (t^0 upward) as e.g. 1+t or 1-t^2."""
    out = ""
    for k, c in enumerate(coeffs):
        if c in ("0", "0/1"):
            continue
        mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        if mono and c in ("1", "-1"):
            term = ("-" if c == "-1" else "") + mono
        else:
            term = c + mono
        out += term if not out or term.startswith("-") else "+" + term
    return out or "0"


def _torsion_text(t: list[dict]) -> str:
    parts = []
    for e in t:
        f = e["factor"]
        f = f if isinstance(f, str) else poly_text(f)
        parts.append(f if e["multiplicity"] == 1 else f"{f}^{e['multiplicity']}")
    return " ".join(parts)


def to_csv(records: Iterable[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FIELDS)
    for r in records:
        w.writerow([_torsion_text(r[k]) if k == "torsion" else ("" if r[k] is None else r[k]) for k in FIELDS])
    return buf.getvalue()


def group_text(r: dict) -> str:
    """Human form of one record, integer torsion split into prime powers: Z^b + Z_2^3 + Z_3."""
    parts = []
    if r["betti"]:
        parts.append("Z" if r["ring"] == "Z" and r["betti"] == 1 else
                     f"{'Z' if r['ring'] == 'Z' else r['ring']}^{r['betti']}")
    primary: Counter = Counter()
    for e in r["torsion"]:
        f = e["factor"]
        if isinstance(f, str):
            for p, k in factorint(int(f)).items():
                primary[p ** k] += e["multiplicity"]
        else:
            g = f"R/({poly_text(f)})"
            parts.append(g if e["multiplicity"] == 1 else f"{g}^{e['multiplicity']}")
    for q in sorted(primary):
        parts.append(f"Z_{q}" if primary[q] == 1 else f"Z_{q}^{primary[q]}")
    return " + ".join(parts) if parts else "0"


def to_markdown(records: list[dict]) -> str:
    """Rows n, columns degree, cells as groups (the layout of the published table)."""
    ns = sorted({r["n"] for r in records})
    degs = sorted({r["degree"] for r in records})
    cell = {(r["n"], r["degree"]): group_text(r) for r in records}
    lines = ["| n \\ i | " + " | ".join(str(i) for i in degs) + " |",
             "|---|" + "---|" * len(degs)]
    for n in ns:
        row = [cell.get((n, i), "") for i in degs]
        row = ["" if c == "0" else c for c in row]
        lines.append(f"| {n} | " + " | ".join(row) + " |")
    return "\n".join(lines) + "\n"
