import pytest

from expfunctor import parse_functor
from laurent import LaurentPoly
from reprings import RingTag, element
import su3 as su3_module
from su3 import (DecompositionError, SU3Report, bredon_identities, build_differentials, d0, d1, generic_rank_check,
                 k_groups_su3, koszul_route, matrices_from_export, matrices_to_export, orientation_check,
                 rational_cohomology, regular_sequence_check, thetas)
from symfunc import h

SU3 = RingTag.SU3.names


def su3(text):
    return element(RingTag.SU3, text)


@pytest.fixture(scope="module")
def full_complex():
    return build_differentials(parse_functor("ext_full"))


def test_thetas_sum_to_zero():
    theta12, theta23, theta31 = thetas(parse_functor("ext_full^2"))
    assert (theta12 + theta23 + theta31).is_zero()


@pytest.mark.parametrize("spec, chi1, chi2", [
    ("ext_top", "0", "1"),
    ("ext_top^3", "s1", "s1^2 - s2"),
    ("ext_full^3", "s1 + 3", "s1^2 - s2 + 3*s1 + 3"),
])
def test_koszul_generators(spec, chi1, chi2):
    result = koszul_route(parse_functor(spec))
    assert result.chi1 == su3(chi1)
    assert result.chi2 == su3(chi2)
    assert all(result.checks.values())


@pytest.mark.parametrize("m", range(2, 7))
def test_koszul_generators_of_top_powers(m):
    result = koszul_route(parse_functor(f"ext_top^{m}"))
    assert (result.chi1, result.chi2) == (h(m - 2), h(m - 1))


@pytest.mark.parametrize("spec, dimension", [
    ("ext_top", 0),
    ("ext_top^2", 0),
    ("ext_top^3", 1),
    ("ext_top^4", 3),
    ("ext_full", 0),
    ("ext_full^2", 0),
    ("ext_full^3", 1),
])
def test_k0_dimension(spec, dimension):
    report = k_groups_su3(parse_functor(spec))
    assert report.status == "ok"
    assert report.k0_dimension == dimension
    assert report.k1 == "0"
    assert report.ok


def test_report_fields_for_the_cube_of_the_top_power():
    report = k_groups_su3(parse_functor("ext_top^3"))
    assert report.j_saturated == ["s2", "s1"]
    assert report.sigma_expansions == {"sigma1": "Sym^1(rho)", "sigma2": "Sym^2(rho)"}
    assert report.regular_sequence == "certified"
    assert report.k1_certificate == "Koszul complex on a regular sequence"


@pytest.mark.parametrize("spec", ["ext_top", "ext_full", "ext_full^2", "fw(2)"])
def test_regular_sequence(spec):
    assert regular_sequence_check(parse_functor(spec)).certified


def test_regular_sequence_skipped_in_degree_zero():
    assert regular_sequence_check(parse_functor("poly:2")).status == "skipped"


@pytest.mark.parametrize("spec", ["poly:2", "poly:(t^-1 + 1)"])
def test_degree_zero_fails_the_hypothesis(spec):
    report = k_groups_su3(parse_functor(spec))
    assert report.status == "hypothesis_failed"
    assert report.k0_dimension is None
    assert not report.ok


def test_step_limit_aborts():
    report = k_groups_su3(parse_functor("ext_top^4"), step_limit=1)
    assert report.status == "aborted"
    assert report.diagnostics
    assert not report.ok


def test_unknown_route():
    with pytest.raises(ValueError):
        k_groups_su3(parse_functor("ext_top"), route="spectral")


def test_d0_on_basis_vectors():
    F = parse_functor("ext_full")
    one, zero = LaurentPoly.one(SU3), LaurentPoly.zero(SU3)
    assert d0(F, [one, zero, zero]) == (-1, 0, -1)


@pytest.mark.parametrize("spec", ["ext_top", "ext_full^2", "fw(3)"])
def test_d1_after_d0_vanishes(spec):
    F = parse_functor(spec)
    assert d1(F, d0(F, [su3("s1"), su3("s2^2 - 1"), su3("3")])).is_zero()


@pytest.mark.parametrize("spec", ["ext_top", "ext_full", "ext_top^2 * fw(2)"])
def test_bredon_identities(spec):
    checks = bredon_identities(parse_functor(spec))
    assert len(checks) == 7
    assert all(check.passed for check in checks)


def test_report_round_trip():
    report = k_groups_su3(parse_functor("ext_full^2"))
    data = report.to_dict()
    assert data["group"] == "su3"
    assert SU3Report.from_dict(data) == report


# ============================================================================
# Complex route
# ============================================================================

@pytest.mark.slow
def test_differentials_compose_to_zero(full_complex):
    assert len(full_complex.A) == 9 and len(full_complex.A[0]) == 3
    assert len(full_complex.B) == 6 and len(full_complex.B[0]) == 9
    assert full_complex.composition_vanishes()


@pytest.mark.slow
def test_bredon_identities_with_matrices(full_complex):
    checks = bredon_identities(full_complex.functor, full_complex)
    assert checks[-1].name == "B * A = 0"
    assert all(check.passed for check in checks)


@pytest.mark.slow
def test_generic_ranks(full_complex):
    ranks = generic_rank_check(full_complex, points=10, seed=3)
    assert ranks.passed


@pytest.mark.slow
def test_matrix_export_reimports(full_complex):
    data = matrices_to_export(full_complex)
    assert data["schema_version"] == "1.0"
    A, B, k = matrices_from_export(data)
    assert A == full_complex.A
    assert B == full_complex.B
    assert k == full_complex.k
    with pytest.raises(ValueError):
        matrices_from_export({**data, "schema_version": "0.1"})


@pytest.mark.slow
def test_rational_cohomology(full_complex):
    cohomology = rational_cohomology(full_complex)
    assert cohomology.status == "ok"
    assert cohomology.h0_zero
    assert cohomology.h1_zero
    assert cohomology.h2_dimension == 0


@pytest.mark.slow
@pytest.mark.parametrize("spec", ["ext_full", "ext_full^2", "ext_full^3", "ext_top^2", "ext_top^3", "ext_top^4"])
def test_routes_agree(spec):
    report = k_groups_su3(parse_functor(spec), route="both")
    assert report.cross_check
    assert report.complex_dimension == report.k0_dimension
    assert report.ok


@pytest.mark.slow
@pytest.mark.parametrize("spec", ["ext_top", "ext_top^2", "ext_top^3", "ext_top^4", "ext_full"])
def test_orientation_reversal_keeps_the_ideal(spec):
    assert orientation_check(parse_functor(spec)).equal


def _random_spec(rng):
    factors = []
    for atom in ("ext_top", "ext_full", f"fw({int(rng.integers(1, 5))})"):
        power = int(rng.integers(0, 3))
        if power:
            factors.append(f"{atom}^{power}")
    return " * ".join(factors) or "ext_top"


@pytest.mark.slow
def test_random_functors_give_complexes(rng):
    for _ in range(20):
        F = parse_functor(_random_spec(rng))
        complex_ = build_differentials(F)
        assert complex_.composition_vanishes()
        assert all(check.passed for check in bredon_identities(F, complex_))


def test_missing_edge_coordinates_raise_with_the_edge(monkeypatch):
    monkeypatch.setattr(su3_module, "fixed_submodule_decompose", lambda value, transposition: None)
    with pytest.raises(DecompositionError) as excinfo:
        build_differentials(parse_functor("ext_top^2"))
    assert excinfo.value.edge == (0, 1)
    assert "(0, 1)" in str(excinfo.value)
    assert "t1^-1" in str(excinfo.value)
