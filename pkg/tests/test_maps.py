import pytest

from artin_homology.algebra import GF, QQ, ZZ, SparseMatrix
from artin_homology.algebra.snf import rank as matrix_rank
from artin_homology.complexes import CellString, CoefficientSpec, build_A, build_B
from artin_homology.homology import field_dims, homology_all, is_cycle
from artin_homology.maps import (
    DEFAULT_CANDIDATE,
    MU_CANDIDATES,
    SECTION_UNITS,
    ChainMap,
    compose,
    cone,
    cone_inclusion,
    cone_projection,
    get_candidate,
    identity_map,
    induced_on_homology,
    juxtaposition,
    map_to_triplets,
    mu_model,
    section_model,
    st_A,
    st_B,
    tau,
    verify_chain_map,
    zero_map,
)


def image_bits(f, i, bits, marked=False, suffix="1"):
    S, T = f.source, f.target
    col = f.matrix(i).column(S.index(i, (CellString(bits, marked), suffix)))
    return {T.basis[i + f.degree][r][0].bits: v for r, v in col.items()}


def test_stabilization_examples():
    assert image_bits(st_A(2), 1, "10") == {"100": 1}
    assert image_bits(st_B(2, CoefficientSpec(ZZ, "mod1+t")), 1, "01", True) == {"010": 1}


@pytest.mark.parametrize("n", range(1, 11))
def test_stabilization_is_a_chain_map(n):
    assert verify_chain_map(st_A(n))
    for module in ("mod1+t", "mod1-t2", "trivial"):
        assert verify_chain_map(st_B(n, CoefficientSpec(ZZ, module)))
    assert verify_chain_map(st_B(n, CoefficientSpec(QQ, "laurent")))


def test_zero_and_identity_maps():
    C = build_A(4)
    assert verify_chain_map(zero_map(C, C))
    assert verify_chain_map(identity_map(C))
    im = induced_on_homology(identity_map(build_B(4, CoefficientSpec(GF(2), "mod1-t2"))), 2)
    assert im.matrix == [[int(i == j) for j in range(im.shape[1])] for i in range(im.shape[0])]


def test_corrupted_stabilization_is_caught():
    f = st_A(3)
    M = f.matrix(2)
    cols = M.columns()
    j = next(j for j, c in enumerate(cols) if c)
    r = next(iter(cols[j]))
    cols[j] = dict(cols[j])
    cols[j][r] = -cols[j][r]
    bad = ChainMap(f.source, f.target, 0, {**f.f, 2: SparseMatrix(ZZ, M.nrows, M.ncols, cols)}, "bad")
    chk = verify_chain_map(bad)
    assert not chk and chk.degree is not None and chk.cell is not None


def test_juxtaposition():
    assert juxtaposition({"0": 1}, {"0": 1}) == {"000": 1}
    x1 = {"1": 1}
    assert juxtaposition(x1, x1) == {"101": 1}
    # the class x1^2 of F_2 braid homology is a cycle
    prod = juxtaposition({"10": 1}, {"10": 1})
    assert prod == {"10010": 1}
    C = build_A(5, CoefficientSpec(GF(2), "trivial"))
    z = {C.index(2, (CellString(b, False), "1")): v for b, v in prod.items()}
    assert is_cycle(C, 2, z)
    assert sum(b.count("1") for b in juxtaposition({"110": 1}, {"01": 1})) == 3


def test_tau():
    f = tau(2)
    assert f.source.coeff.module == "mod1+t" and f.target.coeff.module == "mod1-t2"
    col = f.matrix(1).column(f.source.index(1, (CellString("01", True), "1")))
    T = f.target
    assert {T.basis[1][r]: v for r, v in col.items()} == {
        (CellString("01", True), "1"): 1, (CellString("01", True), "t"): -1}
    for n in range(1, 9):
        assert verify_chain_map(tau(n))
        # tau commutes with stabilization
        lhs = compose(st_B(n, CoefficientSpec(ZZ, "mod1-t2")), tau(n))
        rhs = compose(tau(n + 1), st_B(n, CoefficientSpec(ZZ, "mod1+t")))
        assert all(lhs.matrix(i) == rhs.matrix(i) for i in lhs.source.degrees)


def test_tau_and_stabilization_commute_on_homology():
    F = GF(2)
    for n in (3, 4, 5):
        lhs = compose(st_B(n, CoefficientSpec(F, "mod1-t2")), tau(n, F))
        rhs = compose(tau(n + 1, F), st_B(n, CoefficientSpec(F, "mod1+t")))
        for i in range(n + 1):
            assert induced_on_homology(lhs, i).matrix == induced_on_homology(rhs, i).matrix


@pytest.mark.parametrize("u", sorted(SECTION_UNITS))
def test_section_model(u):
    for n in range(1, 9):
        s = section_model(n, ZZ, u)
        assert verify_chain_map(s)
    s = section_model(3, ZZ, u)
    got = image_bits(s, 0, "00")
    assert set(got) == {"000"}


def test_section_injective_on_h0_over_q():
    for n in range(2, 7):
        im = induced_on_homology(section_model(n, QQ, "1"), 0)
        assert matrix_rank(SparseMatrix.from_dense(QQ, im.matrix, im.shape[1])) == im.shape[1]


def test_mu_candidates():
    assert DEFAULT_CANDIDATE in MU_CANDIDATES
    for n in range(2, 9):
        f = mu_model(n)
        assert f.degree == 1 and f.source.n == n - 1 and f.target.n == n
        assert verify_chain_map(f)
    # the after-pole family is rejected with a witness
    chk = verify_chain_map(mu_model(3, ZZ, "insert-after-pole"))
    assert not chk and chk.cell[0] == CellString("01", True)
    assert get_candidate("prepend-pole").key == "prepend-pole/v1"
    with pytest.raises(KeyError):
        get_candidate("nope")


def test_mu_commutes_with_stabilization_on_homology():
    F = GF(2)
    coeff = CoefficientSpec(F, "mod1+t")
    for n in (3, 4, 5):
        lhs = compose(st_B(n, coeff), mu_model(n, F))
        rhs = compose(mu_model(n + 1, F), st_B(n - 1, coeff))
        for i in range(n):
            assert induced_on_homology(lhs, i).matrix == induced_on_homology(rhs, i).matrix


def test_stabilization_on_braid_h1_mod_2():
    for n in range(3, 8):
        im = induced_on_homology(st_A(n - 1, CoefficientSpec(GF(2), "trivial")), 1)
        assert im.shape == (1, 1) and im.matrix == [[1]]


def test_cone():
    s = section_model(4, ZZ)
    C = cone(s)
    assert C.check_d2() == []
    assert C.euler_characteristic() == s.target.euler_characteristic() - s.source.euler_characteristic()
    assert verify_chain_map(cone_inclusion(s, C))
    # the long exact sequence over Q: alternating sums of dimensions match
    dims = field_dims(cone(section_model(4, QQ)))
    assert sum((-1) ** i * d for i, d in dims.items()) == C.euler_characteristic()
    P = cone_projection(s, C)
    assert P.degree == -1


def test_map_triplets_are_deterministic():
    a = map_to_triplets(mu_model(4), "prepend-pole/v1")
    b = map_to_triplets(mu_model(4), "prepend-pole/v1")
    assert a == b and a["degree"] == 1 and a["entries"]
