"""Wall-clock timings; no correctness assertions."""

from __future__ import annotations

import time

from .algebra.rings import GF, QQ, ZZ
from .algebra.snf import snf
from .assembler import _pipeline_all, _relative, iota_chain, symplectic_complex
from .complexes import CoefficientSpec, _build, build_A, build_B

SUITES = ("snf-int", "snf-poly", "build", "pipeline")
DEFAULT_N = {"snf-int": 12, "snf-poly": 9, "build": 13, "pipeline": 8}


def _clear():
    for f in (_build, _relative, iota_chain, symplectic_complex, _pipeline_all):
        f.cache_clear()


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return time.perf_counter() - t0, out


def bench(suite: str, n: int | None = None) -> dict:
    if suite not in SUITES:
        raise ValueError(f"suite must be one of {SUITES}")
    n = n or DEFAULT_N[suite]
    _clear()
    rows = []
    if suite == "snf-int":
        C = build_B(n, CoefficientSpec(ZZ, "mod1-t2"))
        for i in C.degrees[1:]:
            M = C.boundary(i)
            s, res = _timed(lambda: snf(M))
            rows.append({"degree": i, "shape": list(M.shape), "nnz": M.nnz, "rank": res.rank, "seconds": s})
    elif suite == "snf-poly":
        C = build_B(n, CoefficientSpec(QQ, "laurent"))
        for i in C.degrees[1:]:
            M = C.boundary(i)
            s, res = _timed(lambda: snf(M))
            rows.append({"degree": i, "shape": list(M.shape), "nnz": M.nnz, "rank": res.rank, "seconds": s})
    elif suite == "build":
        for fam, make in (("A", lambda: build_A(n)), ("B/laurent", lambda: build_B(n)),
                          ("B/mod1-t2", lambda: build_B(n, CoefficientSpec(ZZ, "mod1-t2")))):
            s, C = _timed(make)
            rows.append({"complex": fam, "cells": C.total_dim(), "seconds": s})
    else:
        for ring in (ZZ, GF(2)):
            s, _ = _timed(lambda: _pipeline_all(n, ring, "prepend-pole", False))
            rows.append({"ring": ring.name, "cells": symplectic_complex(n, ring).total_dim(), "seconds": s})
    return {"suite": suite, "n": n, "rows": rows}
