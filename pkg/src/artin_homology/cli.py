"""Command line front end.

Exit status: 0 on success, 1 on a verification mismatch, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .algebra.rings import IntegerRing, LaurentRing, RationalField, UnsupportedRingError, parse_ring
from .assembler import (
    PROVENANCES,
    IntegralityError,
    UnsupportedPredictionError,
    symplectic_homology,
    symplectic_homology_all,
    table_diff,
)
from .bench import SUITES, bench
from .cache import ResultCache, ResultRecord, make_key
from .complexes import MODULES, CoefficientSpec, UnsupportedCoefficientsError, build_A, build_B, to_triplets
from .fixtures import table1_range
from .homology import homology, homology_all
from .maps import DEFAULT_CANDIDATE, MU_CANDIDATES, get_candidate
from .report import homology_record, record, to_csv, to_markdown, torsion_to_json
from .series import series_braid_f2, series_braid_q, series_odd_poincare, series_stable
from .verify import SCOPES, run_verify


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="artin-homology", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, family=True, coeff=True):
        if family:
            sp.add_argument("--family", choices=("A", "B"), default="B")
        sp.add_argument("--n", required=True, help="n, or a range such as 3-8")
        if coeff:
            sp.add_argument("--coeff", choices=MODULES, default="trivial")
        sp.add_argument("--ring", default="Z", help="Z, Q, F2, F3, F5 or Fp:<p>")
        sp.add_argument("--format", choices=("json", "csv", "md"), default="json")
        sp.add_argument("--cache-dir", default=None, help="defaults to $ARTIN_HOMOLOGY_CACHE")
        sp.add_argument("--exact", action="store_true", help="fully rational elimination over Q")

    c = sub.add_parser("complex", help="emit a chain complex in sparse triplet form")
    common(c)
    h = sub.add_parser("homology", help="homology of an Artin complex")
    common(h)
    h.add_argument("--degree", type=int)
    h.add_argument("--basis", action="store_true", help="also compute basis hashes")
    b = sub.add_parser("braid-symplectic", help="H_*(Br_n; H_1(Sigma_n))")
    common(b, family=False, coeff=False)
    b.add_argument("--degree", type=int)
    b.add_argument("--candidate", default=DEFAULT_CANDIDATE, choices=sorted(MU_CANDIDATES))
    b.add_argument("--mode", choices=PROVENANCES, default="cone-pipeline")
    s = sub.add_parser("series", help="generating function coefficients")
    s.add_argument("--which", choices=("odd", "stable", "braid-f2", "braid-q"), required=True)
    s.add_argument("--maxq", type=int, default=11)
    s.add_argument("--maxt", type=int, default=13)
    s.add_argument("--format", choices=("json", "csv", "md"), default="json")
    v = sub.add_parser("verify", help="run the verification harness")
    v.add_argument("--scope", choices=sorted(SCOPES), default="quick")
    v.add_argument("--candidate", default=DEFAULT_CANDIDATE, choices=sorted(MU_CANDIDATES))
    be = sub.add_parser("bench", help="timings")
    be.add_argument("--suite", choices=SUITES, required=True)
    be.add_argument("--n", type=int)
    return p


def _n_range(text: str) -> list[int]:
    try:
        if "-" in text:
            a, b = text.split("-", 1)
            ns = list(range(int(a), int(b) + 1))
        else:
            ns = [int(text)]
    except ValueError:
        raise UsageError(f"bad --n value {text!r}") from None
    if not ns or min(ns) < 1:
        raise UsageError(f"n must be >= 1, got {text!r}")
    return ns


def _ring(text: str):
    try:
        return parse_ring(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def _emit_records(records: list[dict], fmt: str) -> str:
    if fmt == "json":
        return _dump(records[0] if len(records) == 1 else records)
    if fmt == "csv":
        return to_csv(records)
    return to_markdown(records)


def _cached(cache: ResultCache | None, key: dict, compute):
    if cache is None:
        return compute()
    hit = cache.get(key)
    if hit is not None:
        return hit.payload["records"]
    recs = compute()
    cache.put(ResultRecord.now(key, {"records": recs}))
    return recs


def cmd_complex(a) -> tuple[str, int]:
    base = _ring(a.ring)
    out = []
    for n in _n_range(a.n):
        C = _complex(a.family, n, a.coeff, base)
        out.append(to_triplets(C))
    if a.format == "json":
        return _dump(out[0] if len(out) == 1 else out), 0
    if a.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "degree", "row", "col", "value"])
        for t in out:
            for deg, r, c, v in t["entries"]:
                w.writerow([t["name"], deg, r, c, json.dumps(v)])
        return buf.getvalue(), 0
    lines = ["| complex | " + " | ".join(f"C_{i}" for i in range(max(len(t["basis"]) for t in out))) + " |"]
    lines.append("|---|" + "---|" * (len(lines[0].split("|")) - 3))
    for t in out:
        lines.append(f"| {t['name']} | " + " | ".join(str(len(v)) for v in t["basis"].values()) + " |")
    return "\n".join(lines) + "\n", 0


def _complex(family: str, n: int, module: str, base):
    coeff = CoefficientSpec(base, module)
    if family == "A":
        return build_A(n, coeff)
    return build_B(n, coeff)


def cmd_homology(a) -> tuple[str, int]:
    base = _ring(a.ring)
    cache = ResultCache.from_env(a.cache_dir)
    recs = []
    for n in _n_range(a.n):
        C = _complex(a.family, n, a.coeff, base)
        ring = C.ring
        if isinstance(ring, LaurentRing) and isinstance(base, IntegerRing):
            raise UsageError("Laurent coefficients need a field (Q or F_p); Z[t^±1] is not a PID")
        key = make_key(family=a.family, n=n, coeff=a.coeff, ring=base.name, degree=a.degree,
                       candidate=None, basis=a.basis, exact=a.exact)

        def compute():
            if a.degree is not None:
                hs = [homology(C, a.degree, exact=a.exact, basis=a.basis)]
            else:
                hs = list(homology_all(C, exact=a.exact, basis=a.basis).values())
            return [homology_record(a.family, n, a.coeff, base.name, h) for h in hs]

        recs.extend(_cached(cache, key, compute))
    return _emit_records(recs, a.format), 0


def cmd_braid_symplectic(a) -> tuple[str, int]:
    base = _ring(a.ring)
    cache = ResultCache.from_env(a.cache_dir)
    cand = get_candidate(a.candidate).key if a.mode == "cone-pipeline" else None
    lo, hi = table1_range()
    recs, status, notes = [], 0, []
    for n in _n_range(a.n):
        key = make_key(family="Br", n=n, coeff="H1(Sigma_n)", ring=base.name, degree=a.degree,
                       candidate=cand, mode=a.mode, exact=a.exact)

        def compute():
            if a.mode == "cone-pipeline":
                if a.degree is not None:
                    rs = [symplectic_homology(n, a.degree, base, "cone-pipeline", a.candidate, a.exact)]
                else:
                    rs = list(symplectic_homology_all(n, base, a.candidate, a.exact).values())
            else:
                degs = [a.degree] if a.degree is not None else range(0, max(n, 2))
                rs = [symplectic_homology(n, i, base, a.mode) for i in degs]
            return [record("Br", n, "H1(Sigma_n)", base.name, r.i, r.betti, torsion_to_json(r.ring, r.torsion),
                           r.provenance, r.candidate, r.basis_hash) for r in rs]

        recs.extend(_cached(cache, key, compute))
        if a.mode == "cone-pipeline" and lo <= n <= hi and not isinstance(base, LaurentRing):
            diffs = table_diff(n, base, a.candidate)
            if a.degree is not None:
                diffs = [d for d in diffs if f" i={a.degree} " in d]
            notes.extend(diffs)
    if notes:
        status = 1
        for d in notes:
            print(f"table mismatch: {d}", file=sys.stderr)
    return _emit_records(recs, a.format), status


def cmd_series(a) -> tuple[str, int]:
    if a.maxq < 1 or a.maxt < 1:
        raise UsageError("--maxq and --maxt must be >= 1")
    if a.which == "stable":
        coeffs = series_stable(a.maxq).q_list()
        terms = []
        for i, c in enumerate(coeffs):
            if c:
                mono = "q" if i == 1 else f"q^{i}"
                terms.append(mono if c == 1 else f"{c}{mono}")
        expansion = " + ".join(terms) + " + ..."
        if a.format == "json":
            return _dump({"which": "stable", "maxq": a.maxq, "coefficients": coeffs, "expansion": expansion}), 0
        if a.format == "csv":
            return "i,coefficient\n" + "".join(f"{i},{c}\n" for i, c in enumerate(coeffs)), 0
        return expansion + "\n", 0
    S = {"odd": series_odd_poincare, "braid-f2": series_braid_f2, "braid-q": series_braid_q}[a.which](a.maxq, a.maxt)
    entries = [[i, n, v] for (i, n), v in S.items()]
    if a.format == "json":
        return _dump({"which": a.which, "maxq": a.maxq, "maxt": a.maxt, "coefficients": entries}), 0
    if a.format == "csv":
        return "i,n,coefficient\n" + "".join(f"{i},{n},{v}\n" for i, n, v in entries), 0
    lines = ["| n \\ i | " + " | ".join(str(i) for i in range(a.maxq + 1)) + " |",
             "|---|" + "---|" * (a.maxq + 1)]
    for n in range(a.maxt + 1):
        col = S.column(n)
        if any(col):
            lines.append(f"| {n} | " + " | ".join(str(v) if v else "" for v in col) + " |")
    return "\n".join(lines) + "\n", 0


def cmd_verify(a) -> tuple[str, int]:
    lines: list[str] = []
    results = run_verify(a.scope, candidate=a.candidate, emit=lines.append)
    total = sum(r.seconds for r in results)
    failed = [r for r in results if not r.ok]
    lines.append(f"{len(results) - len(failed)}/{len(results)} checks passed in {total:.1f}s")
    return "\n".join(lines) + "\n", 1 if failed else 0


def cmd_bench(a) -> tuple[str, int]:
    return _dump(bench(a.suite, a.n)), 0


COMMANDS = {
    "complex": cmd_complex,
    "homology": cmd_homology,
    "braid-symplectic": cmd_braid_symplectic,
    "series": cmd_series,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, status = COMMANDS[a.command](a)
    except (UsageError, UnsupportedCoefficientsError, UnsupportedRingError,
            UnsupportedPredictionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except IntegralityError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
