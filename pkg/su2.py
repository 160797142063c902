"""
Twisted equivariant K-theory of SU(2)

K0 vanishes whenever F(t) differs from F(t^-1); K1 is the quotient of the
localized ring Z[rho][F(rho)^-1] by g2(F). Localization is handled by
stripping the factors g2 shares with F(rho) and recording the resultant of
what remains against F(rho).
"""

import logging
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import prod
from typing import Dict, List, Optional, Sequence, Tuple

import sympy as sp
from sympy.polys.polyerrors import NotInvertible

from expfunctor import ExponentialFunctor, derived_elements, hypothesis_checks
from laurent import LaurentPoly
from reprings import (Localized, Restriction, RingTag, SWAP, restrict, su2_decompose, weyl_act)

logger = logging.getLogger(__name__)

RHO = sp.Symbol("rho")
SU2 = RingTag.SU2.names


def to_poly(p: LaurentPoly, domain=sp.ZZ) -> sp.Poly:
    if p.names != SU2:
        raise ValueError(f"expected an element of R(SU(2)), got variables {p.names}")
    coefficients = {exps: sp.Rational(Fraction(c).numerator, Fraction(c).denominator) for exps, c in p.terms.items()}
    if not coefficients:
        return sp.Poly(0, RHO, domain=domain)
    return sp.Poly.from_dict(coefficients, RHO, domain=domain)


def from_poly(poly: sp.Poly) -> LaurentPoly:
    return LaurentPoly(SU2, {exps: Fraction(int(c.p), int(c.q)) for exps, c in poly.terms() if c != 0})


@lru_cache(maxsize=None)
def irrep_character(n: int) -> LaurentPoly:
    """rho_n, the character of the irreducible representation of highest weight n"""
    if n < -1:
        raise ValueError(f"no irreducible character rho_{n}")
    if n == -1:
        return LaurentPoly.zero(SU2)
    if n == 0:
        return LaurentPoly.one(SU2)
    rho = LaurentPoly.variable(SU2, "rho")
    return rho * irrep_character(n - 1) - irrep_character(n - 2)


def g_coefficients(F: ExponentialFunctor) -> Tuple[LaurentPoly, LaurentPoly]:
    return su2_decompose(F.character)


def mv_matrix(F: ExponentialFunctor) -> List[List[Localized]]:
    """Mayer-Vietoris differential [[1, -g1], [0, -g2]] over the localized ring"""
    g1, g2 = g_coefficients(F)
    unit = derived_elements(F).F_rho_su2
    return [[Localized(LaurentPoly.one(SU2), 0, unit), Localized(-g1, 0, unit)],
            [Localized(LaurentPoly.zero(SU2), 0, unit), Localized(-g2, 0, unit)]]


def fw_family_g2(bs: Sequence[int]) -> LaurentPoly:
    """sum over l of e_l(b) * rho_{l-1}, the g2 of fw(b_1) * ... * fw(b_n)"""
    total = LaurentPoly.zero(SU2)
    for size in range(1, len(bs) + 1):
        elementary = sum(prod(subset) for subset in combinations(bs, size))
        total = total + irrep_character(size - 1) * elementary
    return total


# ============================================================================
# LOCALIZATION
# ============================================================================

@dataclass(frozen=True)
class Saturation:
    saturated: LaurentPoly
    removed: LaurentPoly
    content: int


def saturate_g2(g2: LaurentPoly, F_rho: LaurentPoly) -> Saturation:
    """
    Strip every irreducible factor g2 shares with F(rho); g2 = content * removed * saturated

    Integer primes dividing the content of F(rho) are units after localization,
    so they move from the content into the removed factor as well.
    """
    g = to_poly(g2)
    f = to_poly(F_rho)
    removed = sp.Poly(1, RHO, domain=sp.ZZ)
    while True:
        common = g.gcd(f)
        if common.degree() <= 0:
            break
        g = g.exquo(common)
        removed = removed * common
    content, primitive = g.primitive()
    content = int(content)
    if primitive.LC() < 0:
        content, primitive = -content, -primitive
    f_content = abs(int(f.content()))
    while True:
        shared = sp.igcd(content, f_content)
        if shared == 1:
            break
        content //= shared
        removed = removed * shared
    logger.info(f"Saturated g2: removed {removed.as_expr()}, kept {primitive.as_expr()} with content {content}")
    return Saturation(from_poly(primitive), from_poly(removed), content)


def inverted_integer(g_saturated: LaurentPoly, F_rho: LaurentPoly) -> int:
    """|Res(g_saturated, F(rho))|"""
    g = to_poly(g_saturated)
    f = to_poly(F_rho)
    if f.degree() <= 0:
        return abs(int(f.LC())) ** max(g.degree(), 0)
    if g.degree() <= 0:
        return abs(int(g.LC())) ** f.degree()
    return abs(int(g.resultant(f)))


def fusion_relation(g_saturated: LaurentPoly) -> Optional[str]:
    """The relation g_saturated = 0 for x = [-rho], as 'x^r = ...'; None if not monic up to sign"""
    g = to_poly(g_saturated)
    r = g.degree()
    if r <= 0:
        return None
    x = sp.Symbol("x")
    p = sp.Poly(g.as_expr().subs(RHO, -x), x, domain=sp.ZZ)
    if abs(p.LC()) != 1:
        return None
    p = p * p.LC()
    rest = -(p - sp.Poly(x ** r, x, domain=sp.ZZ))
    lhs = LaurentPoly.monomial(("x",), (r,)).to_text()
    rhs = LaurentPoly(("x",), {exps: int(c) for exps, c in rest.terms() if c != 0}).to_text()
    return f"{lhs} = {rhs}"


@dataclass(frozen=True)
class UnitInverse:
    """element * inverse - 1 = quotient * modulus over Z[rho]"""
    element: LaurentPoly
    inverse: LaurentPoly
    modulus: LaurentPoly
    quotient: LaurentPoly

    def holds(self) -> bool:
        return self.element * self.inverse - 1 == self.quotient * self.modulus


def verify_unit(u: LaurentPoly, g_saturated: LaurentPoly) -> Optional[UnitInverse]:
    """Inverse of u in Z[rho]/(g_saturated), or None when u is not a unit there"""
    g = to_poly(g_saturated)
    a = to_poly(u)
    if g.degree() <= 0:
        # zero ring: every element is invertible
        inverse = sp.Poly(0, RHO, domain=sp.ZZ)
    else:
        try:
            inverse = a.to_field().invert(g.to_field())
        except (NotInvertible, ZeroDivisionError):
            logger.info(f"{u} is not a unit modulo {g_saturated}")
            return None
        if any(Fraction(int(c.p), int(c.q)).denominator != 1 for c in inverse.coeffs()):
            logger.info(f"Inverse of {u} modulo {g_saturated} is not integral")
            return None
        inverse = inverse.set_domain(sp.ZZ)
    quotient, remainder = (a * inverse - 1).div(g)
    if not remainder.is_zero:
        logger.error(f"Inverse certificate for {u} does not reduce to 1")
        raise AssertionError(f"inverse certificate for {u} failed")
    certificate = UnitInverse(u, from_poly(inverse), g_saturated, from_poly(quotient))
    if not certificate.holds():
        raise AssertionError(f"inverse certificate for {u} failed")
    return certificate


# ============================================================================
# REPORT
# ============================================================================

@dataclass
class SU2Report:
    functor: str
    character: str
    status: str
    g1: str
    g2: str
    g2_factored: str = ""
    g2_saturated: Optional[str] = None
    removed_factor: Optional[str] = None
    content: Optional[int] = None
    rank: Optional[int] = None
    inverted_integer: Optional[int] = None
    k0: Optional[str] = None
    k1: Optional[str] = None
    relation: Optional[str] = None
    unit_inverses: Dict[str, Optional[str]] = field(default_factory=dict)
    checks: Dict[str, bool] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == "ok" and all(self.checks.values())

    def to_dict(self) -> dict:
        data = asdict(self)
        data["group"] = "su2"
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "SU2Report":
        fields = {k: v for k, v in data.items() if k in cls.__dataclass_fields__}
        return cls(**fields)


def describe_k1(rank: int, N: int, g_saturated: LaurentPoly, content: int) -> str:
    """K1 as text; content holds only primes that stay non-units after inverting F(rho)"""
    if rank == 0 and abs(content) == 1:
        return "0"
    if abs(content) != 1:
        if rank == 0:
            return f"Z[rho][F(rho)^-1]/({abs(content)})"
        return f"Z[rho]/({content}*({g_saturated.to_text()})) localized at F(rho)"
    if N == 1:
        return f"Z^{rank} as the ring Z[rho]/({g_saturated.to_text()})"
    return f"free of rank {rank} over Z[1/{N}]"


def k_groups_su2(F: ExponentialFunctor) -> SU2Report:
    """
    Compute the twisted K-groups of SU(2)

    Args:
        F: Exponential functor whose line character defines the twist

    Returns:
        SU2Report with g1, g2, the saturated generator, rank, inverted integer and
        checks; status "hypothesis_failed" when F(t) = F(t^-1)
    """
    g1, g2 = g_coefficients(F)
    report = SU2Report(
        functor=F.label,
        character=F.character.to_text(),
        status="ok",
        g1=g1.to_text(),
        g2=g2.to_text(),
        g2_factored=str(sp.factor(to_poly(g2).as_expr())),
        warnings=list(F.warnings),
    )

    t = LaurentPoly.variable(RingTag.TORUS_SU2.names, "t")
    g1_torus = restrict(g1, Restriction.SU2_TO_TORUS)
    g2_torus = restrict(g2, Restriction.SU2_TO_TORUS)
    report.checks["decomposition F(t) = g1 + t*g2"] = g1_torus + t * g2_torus == F.character
    report.checks["g1, g2 Weyl invariant"] = (weyl_act(SWAP, g1_torus) == g1_torus
                                              and weyl_act(SWAP, g2_torus) == g2_torus)

    if not hypothesis_checks(F).su2_ok:
        logger.warning(f"{F.label}: F(t) = F(t^-1), the SU(2) computation does not apply")
        report.status = "hypothesis_failed"
        return report

    F_rho = derived_elements(F).F_rho_su2
    saturation = saturate_g2(g2, F_rho)
    g_sat = saturation.saturated
    rank = to_poly(g_sat).degree()
    N = inverted_integer(g_sat, F_rho)

    report.g2_saturated = g_sat.to_text()
    report.removed_factor = saturation.removed.to_text()
    report.content = saturation.content
    report.rank = rank
    report.inverted_integer = N
    report.k0 = "0"
    report.k1 = describe_k1(rank, N, g_sat, saturation.content)
    report.relation = fusion_relation(g_sat)
    report.checks["g2 = content * removed * saturated"] = (
        g_sat * saturation.removed * saturation.content == g2)
    report.checks["det of Mayer-Vietoris matrix is -g2"] = _mv_determinant(F) == Localized(-g2, 0, F_rho)

    if rank > 0 and N == 1:
        inverse = verify_unit(F_rho, g_sat)
        report.unit_inverses[F_rho.to_text()] = inverse.inverse.to_text() if inverse else None
        report.checks["F(rho) invertible in the quotient"] = inverse is not None and inverse.holds()

    logger.info(f"SU(2) K-groups for {F.label}: rank {rank}, inverted integer {N}")
    return report


def _mv_determinant(F: ExponentialFunctor) -> Localized:
    m = mv_matrix(F)
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]
