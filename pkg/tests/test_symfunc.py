from math import comb

import pytest

from conftest import random_laurent
from expfunctor import parse_functor
from laurent import LaurentPoly
from reprings import InvarianceError, Restriction, RingTag, element, restrict, torus_t
from su3 import chi_generators, q_pair
from symfunc import AntisymmetricElement, SymExpansion, bialternant, galois_row, h, psi, sym_expansion, vandermonde

SU3 = RingTag.SU3.names


def su3(text):
    return element(RingTag.SU3, text)


def test_complete_homogeneous_polynomials():
    assert h(-1) == 0
    assert h(0) == 1
    assert h(1) == su3("s1")
    assert h(2) == su3("s1^2 - s2")
    assert h(3) == su3("s1^3 - 2*s1*s2 + 1")


def test_h_restricts_to_the_sum_of_monomials():
    t1, t2, t3 = torus_t(1), torus_t(2), torus_t(3)
    expected = sum((t1 ** a * t2 ** b * t3 ** (2 - a - b) for a in range(3) for b in range(3 - a)),
                   LaurentPoly.zero(t1.names))
    assert restrict(h(2), Restriction.SU3_TO_TORUS) == expected


def test_psi_of_the_vandermonde():
    assert psi(vandermonde()) == 1


def test_antisymmetric_elements_are_checked():
    with pytest.raises(InvarianceError):
        AntisymmetricElement(torus_t(1) - torus_t(2))


def test_galois_row():
    assert galois_row(torus_t(1)) == [torus_t(1), torus_t(2), torus_t(3)]
    with pytest.raises(InvarianceError):
        galois_row(torus_t(2))


def test_bialternants():
    t1 = torus_t(1)
    one = LaurentPoly.one(t1.names)
    assert bialternant([t1 ** 2, t1, one]) == -1
    assert bialternant([t1 ** 3, t1, one]) == -h(1)
    assert bialternant([t1, t1, one]) == 0


@pytest.mark.parametrize("m", range(1, 11))
def test_top_exterior_power_closed_forms(m):
    F = parse_functor(f"ext_top^{m}")
    q_plus, q_minus = q_pair(F)
    assert psi(AntisymmetricElement(q_plus)) == -h(m - 2)
    assert psi(AntisymmetricElement(q_minus)) == h(m - 1)


@pytest.mark.parametrize("m", range(1, 9))
def test_full_exterior_algebra_closed_forms(m):
    F = parse_functor(f"ext_full^{m}")
    q_plus, q_minus = q_pair(F)
    zero = LaurentPoly.zero(SU3)
    chi1 = sum((h(l - 2) * comb(m, l) for l in range(m + 1)), zero)
    chi2 = sum((h(l - 1) * comb(m, l) for l in range(1, m + 1)), zero)
    assert psi(AntisymmetricElement(q_plus)) == -chi1
    assert psi(AntisymmetricElement(q_minus)) == chi2


def test_chi_generators_of_the_cube_of_the_full_algebra():
    chi1, chi2 = chi_generators((1 + torus_t(1)) ** 3)
    assert chi1 == su3("s1 + 3")
    assert chi2 == su3("s1^2 - s2 + 3*s1 + 3")


def test_sym_expansion():
    expansion = sym_expansion(parse_functor("ext_full^3"))
    assert expansion.first == ((3, 0), (1, 1))
    assert expansion.second == ((3, 0), (3, 1), (1, 2))
    assert SymExpansion.to_text(expansion.first) == "3*Sym^0(rho) + Sym^1(rho)"
    assert expansion.value(1) == su3("s1 + 3")
    assert sym_expansion(parse_functor("poly:(t^-1 + t)")) is None
    assert SymExpansion.to_text(()) == "0"


def test_psi_undoes_multiplication_by_the_vandermonde(rng):
    delta = vandermonde().value
    for _ in range(25):
        x = random_laurent(rng, SU3, n_terms=5, low=0, high=3)
        product = restrict(x, Restriction.SU3_TO_TORUS) * delta
        assert psi(AntisymmetricElement(product)) == x
