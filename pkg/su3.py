"""
Rational twisted equivariant K-theory of SU(3)

Two independent routes compute K0 (x) Q:

* Koszul route: the antisymmetric polynomials q+ and q- built from the
  differences F(t_j) - F(t_k), divided by the Vandermonde, give the generators
  chi1, chi2 of J_F; K0 (x) Q is R_F(SU(3)) (x) Q / J_F.
* Complex route: the E1 chain complex over the vertex, edge and face cells is
  written as matrices A (3 -> 9) and B (9 -> 6) over Q[s1, s2], and H^2 of the
  localized complex is read off a saturated module basis.

Localization at F(rho) is always expressed as saturation.
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from expfunctor import ExponentialFunctor, derived_elements, f_of_lines, hypothesis_checks
from groebner import (DEFAULT_STEP_LIMIT, SU3_RING, TORUS_RING, Ideal, StepLimitExceeded,
                      Submodule, from_sympy, image, kernel, to_sympy)
from laurent import LaurentPoly, parse_matrix
from reprings import (EDGE_FIXED, EDGE_PAIRS, EDGES, STEINBERG_LABELS, Localized, Restriction, RingTag,
                      edge_transposition, fixed_basis, fixed_submodule_decompose, restrict, steinberg_decompose, torus_t)
from symfunc import AntisymmetricElement, SymExpansion, bialternant, psi, sym_expansion

logger = logging.getLogger(__name__)

SU3 = RingTag.SU3.names
TORUS = RingTag.TORUS_SU3.names
EXPORT_SCHEMA_VERSION = "1.0"

Element = Union[LaurentPoly, Localized]


class IdentityFailure(AssertionError):
    """A structural identity of the chain complex does not hold"""


class DecompositionError(RuntimeError):
    """An edge value has no coordinates over the fixed-submodule basis"""

    def __init__(self, edge: Tuple[int, int], value: LaurentPoly):
        self.edge = edge
        self.value = value
        i = EDGE_FIXED[edge]
        super().__init__(f"edge {edge}: {value} has no coordinates over {{1, t{i}, t{i}^-1}}")


def _edge_assignment() -> str:
    return ", ".join(f"{{{a},{b}}} -> (t{j}, t{k})" for (a, b), (j, k) in EDGE_PAIRS.items())


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    passed: bool


def _line(F: ExponentialFunctor, i: int) -> LaurentPoly:
    return f_of_lines(F, [torus_t(i)])


# ============================================================================
# CHAIN COMPLEX
# ============================================================================

def d0(F: ExponentialFunctor, x: Sequence[Element]) -> Tuple[Localized, Localized, Localized]:
    """(-r(x0) + lambda*r(x1), -r(x1) + mu^-1*r(x2), -r(x0) + lambda^-1*r(x2)) on the edges 01, 12, 02"""
    derived = derived_elements(F)
    x = [v if isinstance(v, Localized) else Localized(v, 0, derived.F_rho_su3) for v in x]
    r0, r1, r2 = (restrict(v, Restriction.SU3_TO_U2) for v in x)
    return (-r0 + r1 * derived.lambda_F,
            -r1 + r2 * derived.mu_inverse(),
            -r0 + r2 * derived.lambda_inverse())


def d1(F: ExponentialFunctor, y: Sequence[Element]) -> Localized:
    """r01(y01) + nu * r12(y12) - r02(y02) on the face"""
    derived = derived_elements(F)
    y = [v if isinstance(v, Localized) else Localized(v, 0, derived.F_rho_u2) for v in y]
    y01, y12, y02 = (restrict(v, Restriction.U2_TO_TORUS, edge) for v, edge in zip(y, EDGES))
    return y01 + y12 * derived.nu_F - y02


def _matmul(left: Sequence[Sequence[LaurentPoly]], right: Sequence[Sequence[LaurentPoly]]) -> List[List[LaurentPoly]]:
    zero = LaurentPoly.zero(SU3)
    return [[sum((row[k] * right[k][j] for k in range(len(right))), zero) for j in range(len(right[0]))]
            for row in left]


@dataclass
class SU3ChainComplex:
    """A' = F(rho)^k * A (9 x 3) and B (6 x 9) over Z[s1, s2]"""
    functor: ExponentialFunctor
    A: List[List[LaurentPoly]]
    B: List[List[LaurentPoly]]
    k: int
    row_labels: Tuple[str, ...]
    face_labels: Tuple[str, ...]

    @property
    def unit(self) -> LaurentPoly:
        return derived_elements(self.functor).F_rho_su3

    def composition(self) -> List[List[LaurentPoly]]:
        return _matmul(self.B, self.A)

    def composition_vanishes(self) -> bool:
        return all(entry.is_zero() for row in self.composition() for entry in row)


def _edge_coordinates(y: Localized, edge: Tuple[int, int], k: int) -> Tuple[LaurentPoly, ...]:
    torus_value = restrict(y.cleared(k), Restriction.U2_TO_TORUS, edge)
    coefficients = fixed_submodule_decompose(torus_value, edge_transposition(edge))
    if coefficients is None:
        error = DecompositionError(edge, torus_value)
        logger.error(str(error))
        raise error
    return coefficients


def build_differentials(F: ExponentialFunctor) -> SU3ChainComplex:
    derived = derived_elements(F)
    one = LaurentPoly.one(SU3)
    zero = LaurentPoly.zero(SU3)
    columns = [d0(F, [one if i == j else zero for i in range(3)]) for j in range(3)]
    k = max(y.denom_exp for column in columns for y in column)

    A = [[None] * 3 for _ in range(9)]
    for j, column in enumerate(columns):
        for e, (edge, y) in enumerate(zip(EDGES, column)):
            for b, c in enumerate(_edge_coordinates(y, edge, k)):
                A[3 * e + b][j] = c

    # d1 in torus coordinates: component 12 carries nu, component 02 a sign
    factors = (LaurentPoly.one(TORUS), derived.nu_F, -LaurentPoly.one(TORUS))
    B = [[None] * 9 for _ in range(6)]
    for e, edge in enumerate(EDGES):
        for b, basis_element in enumerate(fixed_basis(EDGE_FIXED[edge])):
            for row, c in enumerate(steinberg_decompose(factors[e] * basis_element)):
                B[row][3 * e + b] = c

    row_labels = tuple(f"{a}{b}:{label}" for a, b in EDGES
                       for label in ("1", f"t{EDGE_FIXED[(a, b)]}", f"t{EDGE_FIXED[(a, b)]}^-1"))
    complex_ = SU3ChainComplex(F, A, B, k, row_labels, STEINBERG_LABELS)
    logger.info(f"Chain complex for {F.label} built with denominator exponent {k}")
    return complex_


# ============================================================================
# BREDON COMPARISON
# ============================================================================

def bredon_identities(F: ExponentialFunctor, complex_: Optional[SU3ChainComplex] = None) -> List[IdentityCheck]:
    """Restriction and comparison identities of the complex; raises IdentityFailure on the first failure"""
    derived = derived_elements(F)
    F1, F2, F3 = _line(F, 1), _line(F, 2), _line(F, 3)
    unit = derived.F_rho_torus

    def torus(x) -> Localized:
        return x if isinstance(x, Localized) else Localized(x, 0, unit)

    checks: List[IdentityCheck] = [
        IdentityCheck("r01(lambda_F) = F(t1)", restrict(derived.lambda_F, Restriction.U2_TO_TORUS, (0, 1)) == F1),
        IdentityCheck("r12(mu_F) = F(t1)F(t3)", restrict(derived.mu_F, Restriction.U2_TO_TORUS, (1, 2)) == F1 * F3),
        IdentityCheck("r02(lambda_F) = F(t3)", restrict(derived.lambda_F, Restriction.U2_TO_TORUS, (0, 2)) == F3),
    ]

    def d0_hat(X):
        return (-X[0] + X[1] * F1,
                -X[1] + X[2] * Localized(F2, 1, unit),
                -X[0] + X[2] * Localized(F1 * F2, 1, unit))

    def vertex_twist(X):
        return (X[0], X[1] * F1, X[2] * Localized(F1 * F2, 1, unit))

    def edge_twist(Y):
        return (Y[0], Y[1] * F1, Y[2])

    def cellular_d0(X):
        return (-X[0] + X[1], -X[1] + X[2], -X[0] + X[2])

    def cellular_d1(Y):
        return Y[0] + Y[1] - Y[2]

    one = LaurentPoly.one(SU3)
    zero = LaurentPoly.zero(SU3)
    restricted_ok = twisted_ok = face_ok = True
    for j in range(3):
        x = [one if i == j else zero for i in range(3)]
        X = tuple(torus(restrict(v, Restriction.SU3_TO_TORUS)) for v in x)
        image_ = d0(F, x)
        restricted = tuple(restrict(y, Restriction.U2_TO_TORUS, edge) for y, edge in zip(image_, EDGES))
        restricted_ok &= all(a == b for a, b in zip(restricted, d0_hat(X)))
        twisted_ok &= all(a == b for a, b in zip(cellular_d0(vertex_twist(X)), edge_twist(d0_hat(X))))

        Y = tuple(torus(LaurentPoly.one(TORUS) if i == j else LaurentPoly.zero(TORUS)) for i in range(3))
        face_ok &= cellular_d1(edge_twist(Y)) == Y[0] + Y[1] * derived.nu_F - Y[2]

    checks += [
        IdentityCheck("restriction intertwines d0 with the torus differential", restricted_ok),
        IdentityCheck("vertex and edge twists carry the torus d0 to the cellular d0", twisted_ok),
        IdentityCheck("edge twist carries the torus d1 to the cellular d1", face_ok),
    ]

    if complex_ is not None:
        checks.append(IdentityCheck("B * A = 0", complex_.composition_vanishes()))
    else:
        x = [Localized(one, 0, derived.F_rho_su3)] * 3
        checks.append(IdentityCheck("d1 d0 = 0", d1(F, d0(F, x)).is_zero()))

    for check in checks:
        if not check.passed:
            logger.error(f"Identity '{check.name}' failed for {F.label}")
            raise IdentityFailure(f"{check.name} fails for {F.label} with edge assignment {_edge_assignment()}")
    return checks


# ============================================================================
# KOSZUL ROUTE
# ============================================================================

@dataclass
class KoszulResult:
    q_plus: LaurentPoly
    q_minus: LaurentPoly
    psi_plus: LaurentPoly
    psi_minus: LaurentPoly
    chi1: LaurentPoly
    chi2: LaurentPoly
    ideal: Ideal
    expansion: Optional[SymExpansion]
    checks: Dict[str, bool] = field(default_factory=dict)


def thetas(F: ExponentialFunctor) -> Tuple[LaurentPoly, LaurentPoly, LaurentPoly]:
    """theta12, theta23, theta31 with theta_jk = F(t_j) - F(t_k)"""
    F1, F2, F3 = _line(F, 1), _line(F, 2), _line(F, 3)
    return F1 - F2, F2 - F3, F3 - F1


def q_pair(F: ExponentialFunctor) -> Tuple[LaurentPoly, LaurentPoly]:
    theta12, theta23, theta31 = thetas(F)
    t1, t2, t3 = torus_t(1), torus_t(2), torus_t(3)
    q_plus = theta12 * t3 + theta23 * t1 + theta31 * t2
    q_minus = theta12 * t3 ** -1 + theta23 * t1 ** -1 + theta31 * t2 ** -1
    return q_plus, q_minus


def chi_generators(seed: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    """chi1, chi2 from the determinants with first rows seed and seed*t"""
    t1 = torus_t(1)
    one = LaurentPoly.one(TORUS)
    return -bialternant([seed, t1, one]), -bialternant([seed * t1, t1, one])


def koszul_route(F: ExponentialFunctor, step_limit: int = DEFAULT_STEP_LIMIT) -> KoszulResult:
    theta12, theta23, theta31 = thetas(F)
    q_plus, q_minus = q_pair(F)
    psi_plus = psi(AntisymmetricElement(q_plus))
    psi_minus = psi(AntisymmetricElement(q_minus))
    chi1, chi2 = chi_generators(_line(F, 1))
    expansion = sym_expansion(F)

    checks = {
        "theta12 + theta23 + theta31 = 0": (theta12 + theta23 + theta31).is_zero(),
        "chi1 = -Psi(q+)": chi1 == -psi_plus,
        "chi2 = Psi(q-)": chi2 == psi_minus,
    }
    if expansion is not None:
        checks["chi1 matches its Sym expansion"] = expansion.value(1) == chi1
        checks["chi2 matches its Sym expansion"] = expansion.value(2) == chi2

    ideal = Ideal([to_sympy(chi1, SU3_RING), to_sympy(chi2, SU3_RING)], SU3_RING, step_limit)
    logger.info(f"Koszul route for {F.label}: chi1 = {chi1}, chi2 = {chi2}")
    return KoszulResult(q_plus, q_minus, psi_plus, psi_minus, chi1, chi2, ideal, expansion, checks)


# ============================================================================
# REGULAR SEQUENCE
# ============================================================================

@dataclass(frozen=True)
class RegularSequenceCertificate:
    status: str
    witness: Optional[str] = None

    @property
    def certified(self) -> bool:
        return self.status == "certified"


def regular_sequence_check(F: ExponentialFunctor, step_limit: int = DEFAULT_STEP_LIMIT) -> RegularSequenceCertificate:
    """
    Certify that F(t3) - F(t2) is a nonzerodivisor modulo F(t2) - F(t1) in the
    torus ring localized at F(rho).

    Both elements are cleared to Q[t1, t2]; the first generates I, saturated by
    t1 * t2 * F(rho), and the second is regular on Q[t1, t2]/I exactly when
    I : second = I.
    """
    if not hypothesis_checks(F).su3_ok:
        return RegularSequenceCertificate("skipped")
    F1, F2, F3 = _line(F, 1), _line(F, 2), _line(F, 3)
    first, _ = (F2 - F1).cleared()
    second, _ = (F3 - F2).cleared()
    unit, _ = derived_elements(F).F_rho_torus.cleared()
    if first.is_zero() or second.is_zero():
        return RegularSequenceCertificate("failed", "0")

    t1, t2 = torus_t(1), torus_t(2)
    f = to_sympy(t1 * t2 * unit, TORUS_RING)
    I = Ideal([to_sympy(first, TORUS_RING)], TORUS_RING, step_limit).saturate(f)
    quotient = I.colon(to_sympy(second, TORUS_RING))
    for p in quotient.polynomials:
        if not I.contains_element(p):
            witness = from_sympy(p, TORUS).to_text()
            logger.warning(f"{F.label}: {witness} is killed by the second element modulo the first")
            return RegularSequenceCertificate("failed", witness)
    if I.is_unit():
        logger.info(f"{F.label}: the first element is already a unit after localization")
    return RegularSequenceCertificate("certified")


# ============================================================================
# RATIONAL COHOMOLOGY
# ============================================================================

@dataclass
class CohomologyResult:
    status: str
    h0_zero: Optional[bool] = None
    h1_zero: Optional[bool] = None
    h1_certificate: Optional[str] = None
    h2_dimension: Optional[Union[int, str]] = None
    h2_generators: List[List[str]] = field(default_factory=list)
    diagnostics: List[str] = field(default_factory=list)


def _sympy_matrix(matrix: Sequence[Sequence[LaurentPoly]]) -> List[list]:
    return [[to_sympy(entry.to_rational(), SU3_RING) for entry in row] for row in matrix]


def rational_cohomology(complex_: SU3ChainComplex, step_limit: int = DEFAULT_STEP_LIMIT,
                        power_bound: int = 4) -> CohomologyResult:
    result = CohomologyResult("ok")
    f = to_sympy(complex_.unit, SU3_RING)
    A = _sympy_matrix(complex_.A)
    B = _sympy_matrix(complex_.B)
    try:
        ker_a = kernel(A, SU3_RING, step_limit)
        result.h0_zero = ker_a.is_zero()
        result.diagnostics.append(f"ker A: {len(ker_a.generators)} generators")

        ker_b = kernel(B, SU3_RING, step_limit)
        im_a = image(A, SU3_RING, step_limit)
        result.diagnostics.append(f"ker B: {len(ker_b.generators)} generators")
        if _power_membership(im_a, ker_b, f, power_bound):
            result.h1_zero, result.h1_certificate = True, "power membership"
        else:
            saturated = im_a.saturate(f)
            result.h1_zero = saturated.contains(ker_b)
            result.h1_certificate = "saturation" if result.h1_zero else None

        im_b = image(B, SU3_RING, step_limit).saturate(f)
        result.h2_dimension = im_b.quotient_dimension()
        result.h2_generators = im_b.generators_text()
    except StepLimitExceeded as e:
        logger.warning(f"Complex route aborted: {e}")
        result.status = "aborted"
        result.diagnostics.append(str(e))
    return result


def _power_membership(module: Submodule, vectors: Submodule, f, bound: int) -> bool:
    """Every generator v of vectors has f^j * v in module for some j <= bound"""
    for v in vectors.generators:
        scaled = v
        for _ in range(bound + 1):
            if module.contains_vector(scaled):
                break
            scaled = tuple(f * c for c in scaled)
        else:
            return False
    return True


@dataclass(frozen=True)
class RankCheck:
    ranks_a: Tuple[int, ...]
    ranks_b: Tuple[int, ...]

    @property
    def passed(self) -> bool:
        return all(r == 3 for r in self.ranks_a) and all(r == 6 for r in self.ranks_b)


def generic_rank_check(complex_: SU3ChainComplex, points: int = 20, seed: int = 0) -> RankCheck:
    """Ranks of A and B at random real points of Spec Q[s1, s2] away from F(rho) = 0"""
    rng = np.random.default_rng(seed)
    ranks_a, ranks_b = [], []
    while len(ranks_a) < points:
        point = rng.uniform(-2.0, 2.0, size=2)
        if abs(complex_.unit.evaluate(point)) < 1e-6:
            continue
        a = np.array([[entry.evaluate(point).real for entry in row] for row in complex_.A])
        b = np.array([[entry.evaluate(point).real for entry in row] for row in complex_.B])
        ranks_a.append(int(np.linalg.matrix_rank(a)))
        ranks_b.append(int(np.linalg.matrix_rank(b)))
    return RankCheck(tuple(ranks_a), tuple(ranks_b))


# ============================================================================
# ORIENTATION
# ============================================================================

@dataclass(frozen=True)
class OrientationResult:
    chi1: LaurentPoly
    chi2: LaurentPoly
    equal: bool


def orientation_check(F: ExponentialFunctor, step_limit: int = DEFAULT_STEP_LIMIT) -> OrientationResult:
    """Replace F(t_i) by F(t_i)^-1 = F(t_j)F(t_k)/F(rho) and compare the saturated ideals"""
    f = to_sympy(derived_elements(F).F_rho_su3, SU3_RING)
    chi1, chi2 = chi_generators(_line(F, 2) * _line(F, 3))
    inverted = Ideal([to_sympy(chi1, SU3_RING), to_sympy(chi2, SU3_RING)], SU3_RING, step_limit).saturate(f)
    original = koszul_route(F, step_limit).ideal.saturate(f)
    equal = inverted.contains(original) and original.contains(inverted)
    logger.info(f"Orientation check for {F.label}: {'equal' if equal else 'different'} saturations")
    return OrientationResult(chi1, chi2, equal)


# ============================================================================
# MATRIX EXPORT
# ============================================================================

def matrices_to_export(complex_: SU3ChainComplex) -> dict:
    for name, matrix in (("A", complex_.A), ("B", complex_.B)):
        if any(not entry.is_integral() for row in matrix for entry in row):
            logger.warning(f"Matrix {name} of {complex_.functor.label} has non-integral entries")
    return {
        "schema_version": EXPORT_SCHEMA_VERSION,
        "functor": complex_.functor.label,
        "denominator_exponent": complex_.k,
        "A": [[entry.to_text() for entry in row] for row in complex_.A],
        "B": [[entry.to_text() for entry in row] for row in complex_.B],
    }


def matrices_from_export(data: dict) -> Tuple[List[List[LaurentPoly]], List[List[LaurentPoly]], int]:
    if data.get("schema_version") != EXPORT_SCHEMA_VERSION:
        raise ValueError(f"unsupported export schema {data.get('schema_version')!r}")
    return parse_matrix(data["A"], SU3), parse_matrix(data["B"], SU3), int(data["denominator_exponent"])


# ============================================================================
# REPORT
# ============================================================================

@dataclass
class SU3Report:
    functor: str
    character: str
    status: str
    route: str
    chi1: Optional[str] = None
    chi2: Optional[str] = None
    psi_plus: Optional[str] = None
    psi_minus: Optional[str] = None
    j_generators: List[str] = field(default_factory=list)
    j_saturated: List[str] = field(default_factory=list)
    k0_dimension: Optional[Union[int, str]] = None
    k1: Optional[str] = None
    k1_certificate: Optional[str] = None
    sigma_expansions: Optional[Dict[str, str]] = None
    regular_sequence: Optional[str] = None
    regular_sequence_witness: Optional[str] = None
    complex_dimension: Optional[Union[int, str]] = None
    denominator_exponent: Optional[int] = None
    cross_check: Optional[bool] = None
    checks: Dict[str, bool] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)
    diagnostics: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == "ok" and all(self.checks.values()) and self.cross_check is not False

    def to_dict(self) -> dict:
        data = asdict(self)
        data["group"] = "su3"
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "SU3Report":
        fields = {k: v for k, v in data.items() if k in cls.__dataclass_fields__}
        return cls(**fields)


def k_groups_su3(F: ExponentialFunctor, route: str = "koszul", step_limit: int = DEFAULT_STEP_LIMIT) -> SU3Report:
    """
    Compute the rational twisted K-groups of SU(3)

    Args:
        F: Exponential functor whose line character defines the twist
        route: "koszul", "complex" or "both"; "both" cross-checks the quotient dimensions
        step_limit: Reduction steps allowed per Groebner basis

    Returns:
        SU3Report; status "hypothesis_failed" when F has no positive-degree term and
        "aborted" when a basis computation exceeds step_limit
    """
    if route not in ("koszul", "complex", "both"):
        raise ValueError(f"unknown route {route!r}")
    report = SU3Report(functor=F.label, character=F.character.to_text(), status="ok", route=route,
                       warnings=list(F.warnings))
    derived = derived_elements(F)
    f = to_sympy(derived.F_rho_su3, SU3_RING)

    koszul = koszul_route(F, step_limit)
    report.chi1, report.chi2 = koszul.chi1.to_text(), koszul.chi2.to_text()
    report.psi_plus, report.psi_minus = koszul.psi_plus.to_text(), koszul.psi_minus.to_text()
    report.checks.update(koszul.checks)
    if koszul.expansion is not None:
        report.sigma_expansions = {"sigma1": SymExpansion.to_text(koszul.expansion.first),
                                   "sigma2": SymExpansion.to_text(koszul.expansion.second)}

    if not hypothesis_checks(F).su3_ok:
        logger.warning(f"{F.label}: F(t) has degree 0, the SU(3) computation does not apply")
        report.status = "hypothesis_failed"
        return report

    try:
        report.j_generators = [p.to_text() for p in koszul.ideal.laurent_basis()]
        saturated = koszul.ideal.saturate(f)
        report.j_saturated = [p.to_text() for p in saturated.laurent_basis()]
        report.k0_dimension = saturated.quotient_dimension()

        certificate = regular_sequence_check(F, step_limit)
        report.regular_sequence = certificate.status
        report.regular_sequence_witness = certificate.witness
        if certificate.certified:
            report.k1, report.k1_certificate = "0", "Koszul complex on a regular sequence"
    except StepLimitExceeded as e:
        logger.warning(f"Koszul route aborted for {F.label}: {e}")
        report.status = "aborted"
        report.diagnostics.append(str(e))
        return report

    if route in ("complex", "both"):
        complex_ = build_differentials(F)
        report.denominator_exponent = complex_.k
        report.checks.update({check.name: check.passed for check in bredon_identities(F, complex_)})
        cohomology = rational_cohomology(complex_, step_limit)
        report.diagnostics.extend(cohomology.diagnostics)
        if cohomology.status == "aborted":
            report.status = "aborted"
            return report
        report.checks["H0 = 0"] = bool(cohomology.h0_zero)
        report.checks["H1 = 0"] = bool(cohomology.h1_zero)
        report.complex_dimension = cohomology.h2_dimension
        if cohomology.h1_zero:
            report.k1 = "0"
            if report.k1_certificate is None:
                report.k1_certificate = f"complex route ({cohomology.h1_certificate})"
        report.cross_check = report.complex_dimension == report.k0_dimension

    if report.k1 is None:
        report.k1, report.k1_certificate = "0", "theorem hypothesis deg F > 0"
    logger.info(f"SU(3) K-groups for {F.label}: dim K0 (x) Q = {report.k0_dimension}")
    return report
