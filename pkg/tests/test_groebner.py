import pytest
import sympy as sp

from conftest import random_laurent
from groebner import (INFINITE, SU3_RING, Ideal, StepLimitExceeded, Submodule, from_sympy, groebner_basis,
                      image, kernel, quotient_dimension, saturate, submodule_contains, to_sympy)
from reprings import RingTag, element
from symfunc import h

SU3 = RingTag.SU3.names


def su3(text):
    return element(RingTag.SU3, text)


def test_reduced_basis():
    basis = groebner_basis([su3("s1^2 - s2"), su3("s2")])
    assert set(basis) == {su3("s1^2"), su3("s2")}


def test_sympy_conversion():
    p = su3("3*s1^2*s2 - 1/2")
    assert from_sympy(to_sympy(p), SU3) == p
    with pytest.raises(ValueError):
        to_sympy(su3("s1^-1"))


def test_random_bases_are_groebner(rng):
    for _ in range(10):
        generators = [random_laurent(rng, SU3, n_terms=3, low=0, high=3) for _ in range(3)]
        ideal = Ideal(generators)
        assert ideal.is_groebner()
        assert all(ideal.contains_element(g) for g in generators)


@pytest.mark.parametrize("generators, dimension", [
    (["s1", "s2"], 1),
    (["1"], 0),
    (["s1^2", "s2"], 2),
    (["s1"], INFINITE),
    (["s1^2 - s2", "s1^3 - 2*s1*s2 + 1"], 3),
])
def test_quotient_dimension(generators, dimension):
    assert quotient_dimension(Ideal([su3(g) for g in generators])) == dimension


def test_quotient_dimension_of_a_submodule():
    module = Submodule([(su3("s1"), 0), (su3("s2"), 0), (0, 1)], 2)
    assert module.quotient_dimension() == 1


def test_membership_and_reduction():
    ideal = Ideal([su3("s1^2 - s2"), su3("s2^2 - 1")])
    assert ideal.contains_element(su3("s1^4 - 1"))
    assert not ideal.contains_element(su3("s1"))
    assert ideal.reduce(su3("s1^2")) == to_sympy(su3("s2"))
    assert not ideal.is_unit()
    assert Ideal([su3("s1"), su3("s1 + 1")]).is_unit()


def test_colon_and_saturation():
    assert Ideal([su3("s1^2")]).colon(su3("s1")) == Ideal([su3("s1")])
    ideal = Ideal([su3("s1^2 + s1*s2 + 2*s1"), su3("s1*s2")])
    saturated = saturate(ideal, su3("s1"))
    assert saturated == Ideal([su3("s1 + 2"), su3("s2")])
    assert saturated.quotient_dimension() == 1
    assert saturate(saturated, su3("s1")) == saturated
    assert ideal.saturate(su3("3")) is ideal
    with pytest.raises(ValueError):
        ideal.saturate(su3("0"))


def test_saturation_of_a_unit_ideal():
    chi1, chi2 = h(0), h(1)
    assert Ideal([chi1, chi2]).saturate(su3("s1 + s2 + 2")).is_unit()


def test_kernel_of_a_row():
    syzygies = kernel([[su3("s1"), su3("s2")]])
    expected = Submodule([(su3("s2"), su3("-s1"))], 2)
    assert submodule_contains(syzygies, expected)
    assert submodule_contains(expected, syzygies)
    assert syzygies.contains_vector((su3("s1*s2"), su3("-s1^2")))


def test_kernel_of_a_repeated_column():
    assert kernel([[su3("s1"), su3("s1")]]).contains_vector((1, -1))


def test_kernel_of_the_identity_is_zero():
    assert kernel([[1, 0], [0, 1]]).is_zero()


def test_koszul_complex_is_exact_in_the_middle():
    boundary = image([[su3("s2")], [su3("-s1")]])
    cycles = kernel([[su3("s1"), su3("s2")]])
    assert boundary.contains(cycles) and cycles.contains(boundary)
    assert boundary == cycles


def test_image_quotient():
    assert image([[su3("s1"), su3("s2")]]).quotient_dimension() == 1


def test_step_limit():
    ideal = Ideal([su3("s1^2 - s2"), su3("s1*s2 - 1"), su3("s2^2 - s1")], step_limit=1)
    with pytest.raises(StepLimitExceeded) as excinfo:
        ideal.basis
    assert excinfo.value.limit == 1


def test_generators_text():
    assert Ideal([su3("s1^2 - s2"), su3("s2")]).generators_text() == [["s2"], ["s1^2"]]


def test_ring_mismatch():
    with pytest.raises(ValueError):
        Ideal([element(RingTag.U2, "s")], SU3_RING)


def _sympy_submodule(vectors, rank):
    ring = sp.QQ.old_poly_ring(*SU3_RING.symbols)
    module = ring.free_module(rank).submodule(*[[to_sympy(c).as_expr() for c in v] for v in vectors])
    return ring, module


def test_kernel_matches_sympy_syzygies():
    matrix = [[su3("s1"), su3("s2"), su3("s1*s2 + 1")],
              [su3("s2^2"), su3("s1"), su3("0")]]
    ours = kernel(matrix)
    columns = [[matrix[i][j] for i in range(2)] for j in range(3)]
    ring, module = _sympy_submodule(columns, 2)
    theirs = Submodule([[SU3_RING.from_expr(ring.to_sympy(c)) for c in g] for g in module.syzygy_module().gens], 3)
    assert not ours.is_zero()
    assert ours.contains(theirs) and theirs.contains(ours)


def test_membership_matches_sympy(rng):
    generators = [(su3("s1^2"), su3("s2")), (su3("s2"), su3("s1 - 1"))]
    ours = Submodule(generators, 2)
    _, theirs = _sympy_submodule(generators, 2)
    for _ in range(10):
        v = tuple(random_laurent(rng, SU3, n_terms=3, low=0, high=2) for _ in range(2))
        assert ours.contains_vector(v) == theirs.contains([to_sympy(c).as_expr() for c in v])
        a, b = (random_laurent(rng, SU3, n_terms=2, low=0, high=1) for _ in range(2))
        member = tuple(a * x + b * y for x, y in zip(*generators))
        assert ours.contains_vector(member)
        assert theirs.contains([to_sympy(c).as_expr() for c in member])
