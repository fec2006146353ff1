from artin_homology.fixtures import AbelianGroup, table1
from artin_homology.verify import check_odd_series, check_table, run_verify
from artin_homology.algebra import GF, ZZ


def test_quick_scope_is_green():
    lines = []
    results = run_verify("quick", emit=lines.append)
    assert all(r.ok for r in results), [r.details for r in results if not r.ok]
    assert len(results) == 12
    assert all("s)" in line for line in lines if line.startswith("["))


def _corrupted():
    t = {n: dict(row) for n, row in table1().items()}
    t[7][3] = AbelianGroup(0, (2, 2, 2))  # the true entry is 2^2
    return t


def test_corrupted_table_is_red_with_location():
    t = _corrupted()
    diffs = check_table(ZZ, 8, t, "prepend-pole")
    assert len(diffs) == 1 and diffs[0].startswith("n=7 i=3 over Z:")
    assert check_odd_series(t)
    assert check_table(GF(2), 8, t, "prepend-pole")


def test_failed_check_quotes_citation():
    lines = []
    results = run_verify("quick", table=_corrupted(), emit=lines.append)
    failed = [r for r in results if not r.ok]
    assert failed
    assert all(r.citation for r in failed)
    text = "\n".join(lines)
    assert "n=7 i=3" in text and failed[0].citation in text
