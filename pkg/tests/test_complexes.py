from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from artin_homology.algebra import GF, QQ, ZZ, Poly, rank
from artin_homology.complexes import (
    MODULES,
    CellString,
    CoefficientSpec,
    UnsupportedCoefficientsError,
    boundary_A,
    boundary_B,
    braid_complex,
    build_A,
    build_B,
    cells,
    from_triplets,
    to_triplets,
)


def zp(*c):
    return Poly(ZZ, list(c))


def test_type_a_boundary_examples():
    assert boundary_A("11") == {"01": 1, "10": -1}
    assert boundary_A("10") == {} and boundary_A("01") == {}
    assert boundary_A("111") == {"101": -2}
    assert boundary_A("110") == {"010": 1, "100": -1}
    assert boundary_A("011") == {"001": 1, "010": -1}
    assert boundary_A("101") == {}
    assert boundary_A("1") == {}


def test_type_b_boundary_examples():
    assert boundary_B("1") == {"0": zp(1, 1)}
    assert boundary_B("11") == {"01": zp(1, 0, -1)}
    assert boundary_B("10") == {"00": zp(1, 1)}
    assert boundary_B("01") == {}


def test_cell_strings():
    c = CellString("0110", True)
    assert c.degree == 2
    assert CellString.from_code(c.code) == c
    assert CellString("01", True) != CellString("01", False)
    assert [x.bits for x in cells(3, 1)] == ["001", "010", "100"]


def test_dimensions():
    for n in range(1, 8):
        A = build_A(n)
        assert [A.dim(i) for i in range(n + 1)] == [comb(n, i) for i in range(n + 1)]
        B = build_B(n, CoefficientSpec(ZZ, "mod1-t2"))
        assert [B.dim(i) for i in range(n + 1)] == [2 * comb(n, i) for i in range(n + 1)]


def test_type_a_rejects_twisted_coefficients():
    with pytest.raises(UnsupportedCoefficientsError):
        build_A(3, CoefficientSpec(ZZ, "laurent"))


def test_braid_index_shift():
    assert braid_complex(4).key() == build_A(3).key()


def test_rank_of_small_boundary():
    assert rank(build_A(3, CoefficientSpec(QQ, "trivial")).boundary(2)) == 2


@pytest.mark.parametrize("module", MODULES)
def test_d_squared_zero(module):
    for n in range(1, 10):
        C = build_B(n, CoefficientSpec(ZZ if module != "laurent" else QQ, module))
        assert C.check_d2() == []
    assert build_A(9).check_d2() == []


def _subst(p: Poly, t: int) -> int:
    return sum(int(c) * t**k for k, c in enumerate(p.c))


@pytest.mark.parametrize("module,t", [("mod1+t", -1), ("mod1-t", 1)])
def test_quotient_matches_substitution(module, t):
    for n in range(1, 8):
        L = build_B(n, CoefficientSpec(QQ, "laurent"))
        Z = build_B(n, CoefficientSpec(ZZ, module))
        for i in L.degrees[1:]:
            lhs = L.boundary(i).to_dense()
            rhs = Z.boundary(i).to_dense()
            assert [[_subst(v, t) for v in row] for row in lhs] == rhs


def test_zero_pole_subcomplex_is_type_a():
    for n in range(2, 9):
        for c in cells(n, 2, True):
            if c.bits[0] == "0":
                want = {"0" + k: v for k, v in boundary_A(c.bits[1:]).items()}
                got = {k: _subst(v, 0) for k, v in boundary_B(c.bits).items()}
                assert got == want
                assert all(p.degree <= 0 for p in boundary_B(c.bits).values())


@settings(deadline=None, max_examples=25)
@given(st.integers(1, 9), st.sampled_from(["trivial", "mod1+t", "mod1-t", "mod1-t2"]), st.sampled_from([2, 3, 0]))
def test_euler_characteristic(n, module, p):
    from artin_homology.homology import field_dims

    C = build_B(n, CoefficientSpec(QQ if p == 0 else GF(p), module))
    assert C.euler_characteristic() == 0
    assert sum((-1) ** i * d for i, d in field_dims(C).items()) == 0


@pytest.mark.parametrize("family,module,base", [("A", "trivial", ZZ), ("B", "laurent", QQ),
                                                ("B", "mod1-t2", ZZ), ("B", "mod1+t", GF(3))])
def test_triplet_round_trip(family, module, base):
    coeff = CoefficientSpec(base, module)
    C = build_A(4, coeff) if family == "A" else build_B(4, coeff)
    data = to_triplets(C)
    D = from_triplets(data)
    assert D.key() == C.key()
    for i in C.degrees[1:]:
        assert D.boundary(i) == C.boundary(i)
    assert to_triplets(D) == data
