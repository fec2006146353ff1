"""Verification harness: every reference value the engine can reproduce.

``run_verify("quick")`` covers n <= 8 over Z and n <= 10 over fields;
``run_verify("full")`` covers n <= 10 over Z and n <= 13 over F_2.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from .algebra.rings import GF, QQ, ZZ, Ring
from .assembler import evaluate_candidate, table_diff
from .complexes import MODULES, CoefficientSpec, braid_complex, build_A, build_B
from .fixtures import (
    MINUS_T_POINCARE,
    MOD2_TORSION,
    RATIONAL_TORSION,
    STABILIZATION,
    stabilization_epi,
    stabilization_iso,
    stable_terms,
    table1,
    table1_citation,
    table1_range,
)
from .generators import mod2_laurent_family, predicted_torsion, rational_laurent_family, verify_basis
from .homology import field_dims, homology_all, uct_check
from .maps import DEFAULT_CANDIDATE
from .series import compare, series_braid_f2, series_braid_q, series_odd_poincare, series_stable

SCOPES = {"quick": {"zmax": 8, "fmax": 10, "f2max": 10}, "full": {"zmax": 10, "fmax": 12, "f2max": 13}}


@dataclass
class CheckResult:
    name: str
    ok: bool
    seconds: float
    citation: str = ""
    details: list[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] {self.name} ({self.seconds:.2f}s)"


def _base_for(p: int) -> Ring:
    return QQ if p == 0 else GF(p)


def check_d2(nmax: int) -> list[str]:
    bad = []
    for n in range(0, nmax + 1):
        if build_A(n).check_d2():
            bad.append(f"A{n}")
    for module in MODULES:
        for n in range(1, nmax + 1):
            if build_B(n, CoefficientSpec(ZZ, module)).check_d2():
                bad.append(f"B{n}/{module}")
    return bad


def check_braid_series(nmax: int) -> list[str]:
    out = []
    f2, q = {}, {}
    for n in range(1, nmax + 1):
        for d, v in field_dims(braid_complex(n, GF(2))).items():
            f2[(d, n)] = v
        for d, v in field_dims(braid_complex(n, QQ)).items():
            q[(d, n)] = v
    out += compare(series_braid_f2(nmax, nmax), f2).lines()
    out += compare(series_braid_q(nmax, nmax), q).lines()
    return out


def check_rational_basis(nmax: int) -> list[str]:
    out = []
    for n in range(1, nmax + 1):
        gens = rational_laurent_family(n)
        comp = {i: h.torsion for i, h in homology_all(build_B(n, CoefficientSpec(QQ, "laurent"))).items()
                if h.torsion or h.betti}
        if _sorted(predicted_torsion(gens, QQ)) != _sorted(comp):
            out.append(f"n={n}: torsion {comp} != predicted {predicted_torsion(gens, QQ)}")
        rep = verify_basis(gens, "laurent", (QQ,), n=n)
        out += [f"n={n}: {l}" for l in rep.lines if l.startswith("FAIL")]
    return out


def check_mod2_torsion(nmax: int, with_basis: bool = True) -> list[str]:
    out = []
    F2 = GF(2)
    for n in range(1, nmax + 1):
        gens = mod2_laurent_family(n)
        comp = {i: h.torsion for i, h in homology_all(build_B(n, CoefficientSpec(F2, "laurent"))).items()
                if h.torsion or h.betti}
        if _sorted(predicted_torsion(gens, F2)) != _sorted(comp):
            out.append(f"n={n}: torsion {comp} != predicted {predicted_torsion(gens, F2)}")
        if with_basis:
            rep = verify_basis(gens, "laurent", (F2,), n=n)
            out += [f"n={n}: {l}" for l in rep.lines if l.startswith("FAIL")]
    return out


def _sorted(d: dict) -> dict:
    return {i: sorted(v, key=lambda p: (p.degree, p.to_list())) for i, v in d.items() if v}


def check_minus_t(nmax: int) -> list[str]:
    out = []
    for n in range(2, nmax + 1, 2):
        dims = {i: v for i, v in field_dims(build_B(n, CoefficientSpec(QQ, "mod1-t"))).items() if v}
        want = MINUS_T_POINCARE.value(n)
        if dims != want:
            out.append(f"n={n}: Poincare polynomial {dims} != {want}")
    return out


def check_odd_series(table: dict) -> list[str]:
    lo, hi = table1_range()
    ranks = {}
    for n in range(lo, hi + 1):
        if n % 2:
            for i, g in table[n].items():
                if i >= 1:
                    ranks[(i, n)] = g.rank_mod(2)
    return compare(series_odd_poincare(11, hi), ranks).lines()


def check_stable_series() -> list[str]:
    fx = stable_terms()
    got = series_stable(max(fx.value)).q_list()
    return [f"q^{i}: {got[i]} != {v}" for i, v in fx.value.items() if got[i] != v]


def stabilization_dims(module: str, p: int, nmax: int) -> dict[int, dict[int, int]]:
    base = _base_for(p)
    return {n: field_dims(build_B(n, CoefficientSpec(base, module))) for n in range(1, nmax + 1)}


def check_stabilization(nmax: int, primes=(0, 2, 3, 5)) -> list[str]:
    out = []
    for module in ("mod1+t", "mod1-t2"):
        for p in primes:
            dims = stabilization_dims(module, p, nmax)
            for n in range(1, nmax):
                for i in range(0, n + 2):
                    a, b = dims[n].get(i, 0), dims[n + 1].get(i, 0)
                    if stabilization_iso(p, i, n) and a != b:
                        out.append(f"{module} p={p} i={i}: dim {a} at n={n} but {b} at n={n + 1}")
                    elif stabilization_epi(p, i, n) and b > a:
                        out.append(f"{module} p={p} i={i}: not onto from n={n} ({a} -> {b})")
    return out


def check_table(ring: Ring, nmax: int, table: dict, candidate: str) -> list[str]:
    lo, _ = table1_range()
    out = []
    for n in range(lo, nmax + 1):
        out += table_diff(n, ring, candidate, table)
    return out


def check_uct(nmax: int) -> list[str]:
    out = []
    complexes = []
    for n in range(1, nmax + 1):
        complexes.append((f"A{n}", lambda b, n=n: build_A(n, CoefficientSpec(b, "trivial"))))
        for module in ("mod1+t", "mod1-t", "mod1-t2"):
            complexes.append((f"B{n}/{module}", lambda b, n=n, m=module: build_B(n, CoefficientSpec(b, m))))
    for name, make in complexes:
        integral = homology_all(make(ZZ))
        mod_p = {p: field_dims(make(GF(p))) for p in (2, 3, 5)}
        rep = uct_check(integral, mod_p, field_dims(make(QQ)))
        out += [f"{name}: {v}" for v in rep.violations]
    return out


def run_verify(scope: str = "quick", table: dict | None = None, candidate: str = DEFAULT_CANDIDATE,
               emit: Callable[[str], None] | None = None) -> list[CheckResult]:
    if scope not in SCOPES:
        raise ValueError(f"scope must be one of {sorted(SCOPES)}")
    cfg = SCOPES[scope]
    table = table or table1()
    F2 = GF(2)
    checks = [
        ("boundary d^2 = 0", "", lambda: check_d2(cfg["fmax"] if scope == "quick" else 13)),
        ("braid homology vs F_2 and Q series", "bigraded description of H_*(Br; F_2) and H_*(Br; Q)",
         lambda: check_braid_series(min(cfg["fmax"], 12))),
        ("rational Laurent torsion and basis", RATIONAL_TORSION.citation,
         lambda: check_rational_basis(6 if scope == "quick" else 8)),
        ("mod-2 Laurent torsion orders", MOD2_TORSION.citation, lambda: check_mod2_torsion(8)),
        ("F[t]/(1-t) Poincare polynomial", MINUS_T_POINCARE.citation, lambda: check_minus_t(cfg["fmax"])),
        ("odd-n series vs table", table1_citation(), lambda: check_odd_series(table)),
        ("stable series terms", stable_terms().citation, check_stable_series),
        ("stabilization ranges", STABILIZATION.citation, lambda: check_stabilization(cfg["fmax"])),
        ("mu candidate gates", "", lambda: [l for l in _candidate_lines(candidate, cfg)]),
        (f"table over Z, n <= {cfg['zmax']}", table1_citation(),
         lambda: check_table(ZZ, cfg["zmax"], table, candidate)),
        (f"table over F_2, n <= {cfg['f2max']}", table1_citation(),
         lambda: check_table(F2, cfg["f2max"], table, candidate)),
        ("universal coefficients", "", lambda: check_uct(min(cfg["zmax"], 10))),
    ]
    results = []
    for name, cite, fn in checks:
        t0 = time.perf_counter()
        try:
            details = fn()
        except Exception as exc:  # a crash is a failed check, not a crashed harness
            details = [f"{type(exc).__name__}: {exc}"]
        res = CheckResult(name, not details, time.perf_counter() - t0, cite, details)
        results.append(res)
        if emit:
            emit(res.line())
            if not res.ok:
                if cite:
                    emit(f"    reference: {cite}")
                for d in details[:10]:
                    emit(f"    {d}")
    return results


def _candidate_lines(candidate: str, cfg: dict) -> list[str]:
    rep = evaluate_candidate(candidate, nmax_chain=8, nmax_z=min(cfg["zmax"], 8), nmax_f2=min(cfg["f2max"], 11))
    return [] if rep.accepted else rep.transcript
