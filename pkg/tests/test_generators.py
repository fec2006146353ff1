import pytest

from artin_homology.algebra import GF, QQ, ZZ, Poly
from artin_homology.complexes import CellString, CoefficientSpec, build_A, build_B
from artin_homology.generators import (
    MalformedMonomialError,
    boundary_quotient,
    bprime_family,
    gamma_family,
    gamma_tilde,
    make_generator,
    mod2_first,
    mod2_laurent_family,
    mod2_second,
    monomial_bits,
    rational_laurent_family,
    verify_basis,
    x_string,
    y_generator,
)
from artin_homology.homology import is_boundary, is_cycle


def chain_bits(C, i, z):
    return {C.basis[i][k][0].bits: v for k, v in z.items()}


def test_monomial_strings():
    assert x_string(0) == "0" and x_string(1) == "10" and x_string(2) == "1110"
    assert x_string(1, 3) == "111110"
    assert monomial_bits(2, [0, 1]) == "11001"
    assert monomial_bits(1, []) == "1"
    assert monomial_bits(3, [0]) == "1110"
    assert monomial_bits(None, [1, 1]) == "101"


def test_y_generator_at_three():
    g = y_generator(1, 3)
    C = build_A(5)
    z = g.resolve(CoefficientSpec(ZZ, "trivial"))
    assert chain_bits(C, 4, z) == {"10111": -1, "11101": -1}
    assert is_cycle(C, 4, z)
    assert make_generator("y", i=1, p=3) == g
    with pytest.raises(MalformedMonomialError):
        y_generator(1, 2)


def test_boundary_quotient_n2():
    g = boundary_quotient(2, [], (1, 0, -1))
    C = build_B(2, CoefficientSpec(QQ, "laurent"))
    assert chain_bits(C, 1, g.resolve(CoefficientSpec(QQ, "laurent"))) == {"01": Poly(QQ, [1])}


def test_inexact_division_is_an_error():
    g = boundary_quotient(2, [], (1, 1, 1))
    with pytest.raises(ArithmeticError):
        g.resolve(CoefficientSpec(QQ, "laurent"))


def test_gamma_tilde_is_a_cycle_mod_two():
    coeff = CoefficientSpec(GF(2), "mod1-t2")
    for c, xs in [(0, (0,)), (2, (0, 1)), (0, (0, 0, 1)), (4, (0,))]:
        g = gamma_tilde(c, xs)
        assert is_cycle(g.complex(coeff), g.degree, g.resolve(coeff))


def test_malformed_monomials():
    with pytest.raises(MalformedMonomialError):
        mod2_second(4, 1, [0])  # indices must be >= i
    with pytest.raises(MalformedMonomialError):
        mod2_second(6, 2, [])  # 6 - 4 is not a multiple of 8
    with pytest.raises(MalformedMonomialError):
        mod2_first(2, [])
    with pytest.raises(MalformedMonomialError):
        mod2_first(1, [1, 0])
    with pytest.raises(MalformedMonomialError):
        gamma_tilde(1, (0,))
    with pytest.raises(ValueError):
        make_generator("nonsense")


def test_mod2_second_accepts_pure_power():
    g = mod2_second(2, 1, [])
    assert g.n == 2 and g.torsion == (1, 0, -1)
    g = mod2_second(4, 2, [])
    assert g.torsion == tuple((Poly(ZZ, [1, 0, -1]) ** 2).to_list())


@pytest.mark.parametrize("n", range(1, 7))
def test_rational_family_is_a_basis(n):
    rep = verify_basis(rational_laurent_family(n), "laurent", (QQ,), n=n)
    assert rep.ok, rep.lines


@pytest.mark.parametrize("n", range(1, 7))
def test_mod2_family_is_a_basis(n):
    rep = verify_basis(mod2_laurent_family(n), "laurent", (GF(2),), n=n)
    assert rep.ok, rep.lines


def test_one_plus_t_annihilates_first_kind():
    R = QQ
    for n in range(2, 6):
        coeff = CoefficientSpec(R, "laurent")
        C = build_B(n, coeff)
        for g in rational_laurent_family(n):
            if g.torsion == (1, 1):
                z = g.resolve(coeff)
                assert is_boundary(C, g.degree, {k: C.ring.mul(Poly(R, [1, 1]), v) for k, v in z.items()})
                assert not is_boundary(C, g.degree, z)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_bprime_independent_mod_primes(n):
    for e, module in ((1, "mod1+t"), (2, "mod1-t2")):
        gens = bprime_family(n, e)
        assert verify_basis(gens, module, (GF(2), GF(3), GF(5)), claim_basis=False).ok
    assert verify_basis(bprime_family(n, 2), "mod1-t2", (QQ,), claim_basis=True).ok


@pytest.mark.parametrize("n", [3, 5, 7])
def test_gamma_family_spans_mod_two(n):
    rep = verify_basis(gamma_family(n), "mod1-t2", (GF(2),), claim_basis=True)
    assert rep.ok, rep.lines


def test_empty_family():
    assert verify_basis([], "mod1+t", (GF(2),), claim_basis=True).ok
    assert not verify_basis([], "laurent", (QQ,), n=2).ok
