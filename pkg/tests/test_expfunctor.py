import pytest

from expfunctor import (ExponentialFunctor, derived_elements, f_of_lines, hypothesis_checks, parse_functor,
                        print_functor)
from laurent import LaurentPoly, ParseError
from reprings import Localized, Restriction, RingTag, element, restrict, torus_t


def line(text):
    return element(RingTag.TORUS_SU2, text)


@pytest.mark.parametrize("spec, character", [
    ("ext_top", "t"),
    ("ext_full", "t + 1"),
    ("ext_full^3", "t^3 + 3*t^2 + 3*t + 1"),
    ("fw(4)", "4*t + 1"),
    ("ext_top^2 * fw(3)", "3*t^3 + t^2"),
    ("(ext_full * ext_top)^2", "t^4 + 2*t^3 + t^2"),
    ("poly:(1 + t^2)", "t^2 + 1"),
    ("poly:2", "2"),
])
def test_parse_functor(spec, character):
    assert parse_functor(spec).character == line(character)


def test_formal_characters_are_flagged():
    assert not parse_functor("ext_full^2").formal
    assert parse_functor("poly:1 + t^2").formal
    assert parse_functor("ext_top * poly:(1 + t)").formal
    assert "formal character" in parse_functor("poly:(1 + t)").warnings


def test_printed_form_reparses():
    for spec in ("ext_full^4", "fw(2) * ext_top^3", "poly:(t^-1 + 2)"):
        F = parse_functor(spec)
        assert parse_functor(print_functor(F)).character == F.character


@pytest.mark.parametrize("spec, position", [
    ("ext_fool", 0),
    ("ext_top^", 8),
    ("fw(0)", 0),
    ("ext_full * ", 11),
    ("poly:(1 - t)", 5),
    ("poly:(1 + s)", 10),
    ("(ext_top", 8),
])
def test_bad_specs_report_position(spec, position):
    with pytest.raises(ParseError) as excinfo:
        parse_functor(spec)
    assert excinfo.value.position == position


def test_character_validation():
    with pytest.raises(ValueError):
        ExponentialFunctor(line("t - 1"))
    with pytest.raises(ValueError):
        ExponentialFunctor(LaurentPoly.zero(RingTag.TORUS_SU2.names))


def test_functor_arithmetic():
    F = parse_functor("ext_full")
    assert (F ** 3).character == parse_functor("ext_full^3").character
    assert (F * parse_functor("ext_top")).character == line("t^2 + t")
    assert (F ** 3).dimension == 8
    assert parse_functor("ext_top^2 * fw(3)").top_degree == 3
    assert parse_functor("poly:t^-1 + 1").min_degree == -1


def test_f_of_lines():
    F = parse_functor("ext_full")
    t1, t2 = torus_t(1), torus_t(2)
    assert f_of_lines(F, [t1, t2]) == (1 + t1) * (1 + t2)
    assert f_of_lines(F, [t1 ** -1]) == 1 + t1 ** -1
    assert f_of_lines(F, [], names=RingTag.TORUS_SU3.names) == 1
    with pytest.raises(ValueError):
        f_of_lines(F, [t1 + t2])


def test_derived_elements_for_the_full_exterior_algebra():
    derived = derived_elements(parse_functor("ext_full"))
    assert derived.F_rho_su2 == element(RingTag.SU2, "rho + 2")
    assert derived.F_rho_su3 == element(RingTag.SU3, "s1 + s2 + 2")
    assert derived.mu_F == element(RingTag.U2, "s + d + 1")
    assert derived.lambda_F == element(RingTag.U2, "d^-1 + 1")
    assert derived.lambda_F * derived.mu_F == derived.F_rho_u2


def test_derived_elements_for_the_top_exterior_power():
    derived = derived_elements(parse_functor("ext_top"))
    assert derived.F_rho_su3 == 1
    assert derived.lambda_F == element(RingTag.U2, "d^-1")
    assert restrict(derived.lambda_F, Restriction.U2_TO_TORUS, (0, 1)) == torus_t(1)


def test_restricted_factors_multiply_to_f_rho():
    F = parse_functor("ext_full^2")
    derived = derived_elements(F)
    t1, t3 = torus_t(1), torus_t(3)
    assert restrict(derived.mu_F, Restriction.U2_TO_TORUS, (1, 2)) == (1 + t1) ** 2 * (1 + t3) ** 2
    for edge in ((0, 1), (1, 2), (0, 2)):
        product = (restrict(derived.lambda_F, Restriction.U2_TO_TORUS, edge)
                   * restrict(derived.mu_F, Restriction.U2_TO_TORUS, edge))
        assert product == derived.F_rho_torus


@pytest.mark.parametrize("spec", ["ext_top", "ext_full^2", "fw(3) * ext_top"])
def test_unit_certificates(spec):
    F = parse_functor(spec)
    certificates = derived_elements(F).unit_certificates(F)
    assert [c.name for c in certificates][:3] == ["lambda_F", "mu_F", "nu_F"]
    assert all(c.holds for c in certificates)


def test_lambda_inverse():
    derived = derived_elements(parse_functor("ext_full"))
    assert derived.lambda_inverse() * derived.lambda_F == Localized(LaurentPoly.one(RingTag.U2.names), 0,
                                                                    derived.F_rho_u2)


@pytest.mark.parametrize("spec, su2_ok, su3_ok", [
    ("ext_top", True, True),
    ("ext_full^4", True, True),
    ("poly:2", False, False),
    ("poly:(t + t^-1)", False, True),
    ("poly:(t^-1 + 1)", True, False),
])
def test_hypotheses(spec, su2_ok, su3_ok):
    hypotheses = hypothesis_checks(parse_functor(spec))
    assert (hypotheses.su2_ok, hypotheses.su3_ok) == (su2_ok, su3_ok)
