import json
import threading

import pytest

from artin_homology.algebra import QQ, ZZ
from artin_homology.cache import ENV_VAR, ResultCache, ResultRecord, code_version, key_digest, make_key
from artin_homology.complexes import CoefficientSpec, build_B
from artin_homology.fixtures import (
    MINUS_T_POINCARE,
    MOD2_TORSION,
    RATIONAL_TORSION,
    STABILIZATION,
    AbelianGroup,
    stabilization_epi,
    stabilization_iso,
    stable_terms,
    table1,
    table1_citation,
    table1_first_stable,
    table1_range,
)
from artin_homology.homology import homology_all
from artin_homology.report import FIELDS, group_text, homology_record, poly_text, to_csv, to_markdown


# fixtures

def test_table_shape():
    assert table1_range() == (3, 13)
    t = table1()
    assert t[3][1] == AbelianGroup(0, (2,))
    assert t[6][3] == AbelianGroup(0, (2, 2, 3))
    assert t[4][2] == AbelianGroup(1)
    assert t[13][7] == AbelianGroup(0, (2,) * 6)
    assert table1_first_stable()[1] == 5


def test_fixtures_carry_citations():
    assert table1_citation()
    for fx in (MINUS_T_POINCARE, RATIONAL_TORSION, MOD2_TORSION, STABILIZATION, stable_terms()):
        assert fx.citation


def test_abelian_group():
    g = AbelianGroup.parse("2^2*3*Z")
    assert g == AbelianGroup(1, (2, 2, 3))
    assert g.invariant_factors() == [2, 6]
    assert AbelianGroup.from_invariant_factors(1, [2, 6]) == g
    assert g.rank_mod(2) == 2 and g.rank_mod(3) == 1
    assert AbelianGroup.parse("0").is_zero


def test_stabilization_ranges():
    assert stabilization_iso(2, 2, 5) and not stabilization_iso(2, 3, 6)
    assert stabilization_epi(2, 3, 6)
    assert stabilization_iso(0, 2, 4) and not stabilization_iso(0, 3, 4)


# report

def test_poly_text():
    assert poly_text(["1", "1"]) == "1+t"
    assert poly_text(["1", "0", "-1"]) == "1-t^2"
    assert poly_text(["-1", "0", "1"]) == "-1+t^2"


def test_records_and_emitters():
    C = build_B(2, CoefficientSpec(QQ, "laurent"))
    recs = [homology_record("B", 2, "laurent", "Q", h) for h in homology_all(C).values()]
    assert set(recs[0]) == set(FIELDS)
    assert recs[1]["torsion"] == [{"factor": ["-1", "0", "1"], "multiplicity": 1}]
    json.dumps(recs)
    assert to_csv(recs).splitlines()[0] == ",".join(FIELDS)
    md = to_markdown(recs)
    assert md.splitlines()[2].startswith("| 2 |")
    z = {"ring": "Z", "betti": 0, "torsion": [{"factor": "2", "multiplicity": 1}, {"factor": "6", "multiplicity": 1}]}
    assert group_text(z) == "Z_2^2 + Z_3"


# cache

def test_cache_round_trip(tmp_path):
    cache = ResultCache(tmp_path)
    key = make_key(family="B", n=3, coeff="mod1-t2", ring="Z", degree=1, candidate=None)
    assert key["code_version"] == code_version()
    rec = ResultRecord.now(key, {"records": [{"betti": 1, "torsion": [{"factor": "2", "multiplicity": 3}]}]})
    path = cache.put(rec)
    text = path.read_text()
    back = cache.get(key)
    assert back == rec
    assert back.to_json() == text
    # recomputation writes an identical body apart from the header
    again = ResultRecord.now(key, rec.payload)
    a, b = json.loads(again.to_json()), json.loads(text)
    a.pop("header"), b.pop("header")
    assert a == b


def test_cache_keys_are_pure(tmp_path):
    k1 = make_key(n=3, ring="Z")
    k2 = make_key(ring="Z", n=3)
    assert key_digest(k1) == key_digest(k2)
    assert key_digest(k1) != key_digest(make_key(n=4, ring="Z"))
    assert ResultCache(tmp_path).get(k1) is None


def test_cache_from_env(tmp_path, monkeypatch):
    monkeypatch.delenv(ENV_VAR, raising=False)
    assert ResultCache.from_env() is None
    monkeypatch.setenv(ENV_VAR, str(tmp_path))
    assert ResultCache.from_env().root == tmp_path
    assert ResultCache.from_env(str(tmp_path / "x")).root == tmp_path / "x"


def test_cache_concurrent_writers(tmp_path):
    cache = ResultCache(tmp_path)
    key = make_key(n=5)
    payloads = [{"v": i} for i in range(16)]

    def write(p):
        cache.put(ResultRecord.now(key, p))

    threads = [threading.Thread(target=write, args=(p,)) for p in payloads]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert cache.get(key).payload in payloads
    assert not [p for p in tmp_path.rglob(".tmp-*")]
