"""
Representation rings of the maximal tori, U(2), SU(2) and SU(3)

Ring elements are LaurentPoly values over the variable set of their RingTag.
The SU(3) torus is stored eliminated: t3 is (t1*t2)^-1 and never appears.
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple, Union

from laurent import LaurentPoly, adjugate3, det_bareiss, det_cofactor3, exact_div, parse_laurent

logger = logging.getLogger(__name__)


class InvarianceError(ValueError):
    """Input is not invariant (or antisymmetric) under the required Weyl action"""


class RingTag(Enum):
    TORUS_SU2 = ("t",)
    TORUS_SU3 = ("t1", "t2")
    U2 = ("s", "d")
    SU2 = ("rho",)
    SU3 = ("s1", "s2")
    PAIR = ("x", "y")

    @property
    def names(self) -> Tuple[str, ...]:
        return self.value


def ring_tag(x: Union[LaurentPoly, "Localized"]) -> RingTag:
    names = x.numerator.names if isinstance(x, Localized) else x.names
    for tag in RingTag:
        if tag.names == names:
            return tag
    raise ValueError(f"variables {names} do not belong to a known ring")


def element(tag: RingTag, text: str) -> LaurentPoly:
    return parse_laurent(text, tag.names)


def gen(tag: RingTag, name: str) -> LaurentPoly:
    return LaurentPoly.variable(tag.names, name)


def one(tag: RingTag) -> LaurentPoly:
    return LaurentPoly.one(tag.names)


def torus_t(i: int) -> LaurentPoly:
    """Torus coordinate t_i, i in {1, 2, 3}, in eliminated form"""
    names = RingTag.TORUS_SU3.names
    if i == 1:
        return LaurentPoly.monomial(names, (1, 0))
    if i == 2:
        return LaurentPoly.monomial(names, (0, 1))
    if i == 3:
        return LaurentPoly.monomial(names, (-1, -1))
    raise ValueError(f"no torus coordinate t{i}")


# ============================================================================
# WEYL GROUPS
# ============================================================================

@dataclass(frozen=True)
class WeylElement:
    """Permutation w of {0, ..., n-1}; acts on torus coordinates by t_i -> t_{w(i)}"""
    perm: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError(f"{self.perm} is not a permutation")

    @classmethod
    def identity(cls, n: int = 3) -> "WeylElement":
        return cls(tuple(range(n)))

    @classmethod
    def transposition(cls, a: int, b: int, n: int = 3) -> "WeylElement":
        """Swap of the 1-based labels a and b"""
        perm = list(range(n))
        perm[a - 1], perm[b - 1] = perm[b - 1], perm[a - 1]
        return cls(tuple(perm))

    def __call__(self, i: int) -> int:
        return self.perm[i]

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        if len(other.perm) != len(self.perm):
            raise ValueError("Weyl elements of different groups")
        return WeylElement(tuple(self.perm[other.perm[i]] for i in range(len(self.perm))))

    def inverse(self) -> "WeylElement":
        inv = [0] * len(self.perm)
        for i, image in enumerate(self.perm):
            inv[image] = i
        return WeylElement(tuple(inv))

    @property
    def sign(self) -> int:
        inversions = sum(1 for i, j in itertools.combinations(range(len(self.perm)), 2)
                         if self.perm[i] > self.perm[j])
        return -1 if inversions % 2 else 1

    def fixed_points(self) -> List[int]:
        return [i for i, image in enumerate(self.perm) if i == image]

    def is_identity(self) -> bool:
        return all(i == image for i, image in enumerate(self.perm))

    def __str__(self) -> str:
        if self.is_identity():
            return "e"
        seen = set()
        cycles = []
        for start in range(len(self.perm)):
            if start in seen or self.perm[start] == start:
                continue
            cycle = []
            i = start
            while i not in seen:
                seen.add(i)
                cycle.append(str(i + 1))
                i = self.perm[i]
            cycles.append("(" + "".join(cycle) + ")")
        return "".join(cycles)


S2 = tuple(WeylElement(p) for p in itertools.permutations(range(2)))
S3 = tuple(WeylElement(p) for p in itertools.permutations(range(3)))
S3_GENERATORS = (WeylElement.transposition(1, 2), WeylElement.transposition(2, 3))
SWAP = WeylElement((1, 0))


def weyl_act(w: WeylElement, x: LaurentPoly) -> LaurentPoly:
    tag = ring_tag(x)
    if tag in (RingTag.SU2, RingTag.SU3, RingTag.U2):
        return x
    if tag == RingTag.TORUS_SU3:
        if len(w.perm) != 3:
            raise ValueError("the SU(3) torus needs an element of S3")
        return x.substitute({"t1": torus_t(w(0) + 1), "t2": torus_t(w(1) + 1)}, tag.names)
    if len(w.perm) != 2:
        raise ValueError(f"{tag.name} needs an element of S2")
    if w.is_identity():
        return x
    if tag == RingTag.TORUS_SU2:
        t = gen(tag, "t")
        return x.substitute({"t": t ** -1}, tag.names)
    return x.substitute({"x": gen(tag, "y"), "y": gen(tag, "x")}, tag.names)


def is_invariant(x: LaurentPoly) -> bool:
    tag = ring_tag(x)
    if tag == RingTag.TORUS_SU3:
        return all(weyl_act(w, x) == x for w in S3_GENERATORS)
    if tag in (RingTag.TORUS_SU2, RingTag.PAIR):
        return weyl_act(SWAP, x) == x
    return True


def is_antisymmetric(x: LaurentPoly) -> bool:
    return all(weyl_act(w, x) == -x for w in S3_GENERATORS)


def symmetrize(x: LaurentPoly) -> LaurentPoly:
    """Average of the S3 orbit of a torus element"""
    x = x.to_rational()
    total = LaurentPoly.zero(x.names).to_rational()
    for w in S3:
        total = total + weyl_act(w, x)
    return total * Fraction(1, 6)


def antisymmetrize(x: LaurentPoly) -> LaurentPoly:
    """Signed average (1/6) * sum of sign(w) * w.x"""
    x = x.to_rational()
    total = LaurentPoly.zero(x.names).to_rational()
    for w in S3:
        total = total + weyl_act(w, x) * w.sign
    return total * Fraction(1, 6)


# ============================================================================
# INVARIANT RINGS
# ============================================================================

@lru_cache(maxsize=None)
def _rho_power(n: int) -> LaurentPoly:
    t = gen(RingTag.TORUS_SU2, "t")
    return (t + t ** -1) ** n


@lru_cache(maxsize=None)
def _elementary_power(a: int, b: int) -> LaurentPoly:
    """Torus image of s1^a * s2^b"""
    e1 = torus_t(1) + torus_t(2) + torus_t(3)
    e2 = torus_t(1) * torus_t(2) + torus_t(1) * torus_t(3) + torus_t(2) * torus_t(3)
    return e1 ** a * e2 ** b


def _weight(exps: Tuple[int, int]) -> Tuple[int, int, int]:
    """Exponents of t1^a t2^b as a triple shifted to minimum zero (t1 t2 t3 = 1)"""
    triple = (exps[0], exps[1], 0)
    low = min(triple)
    return tuple(v - low for v in triple)


def _su2_rewrite(x: LaurentPoly) -> LaurentPoly:
    result: Dict[Tuple[int], object] = {}
    remainder = x
    while remainder:
        n = remainder.max_exponents()[0]
        c = remainder.coefficient((n,))
        if n < 0 or c == 0:
            raise AssertionError(f"symmetric rewrite stalled on {remainder}")
        result[(n,)] = result.get((n,), 0) + c
        remainder = remainder - _rho_power(n) * c
    return LaurentPoly(RingTag.SU2.names, result, x.domain)


def _su3_rewrite(x: LaurentPoly) -> LaurentPoly:
    result: Dict[Tuple[int, int], object] = {}
    remainder = x
    while remainder:
        exps, c = max(remainder.terms.items(), key=lambda item: (sum(_weight(item[0])), _weight(item[0])))
        lam = _weight(exps)
        if not lam[0] >= lam[1] >= lam[2]:
            raise AssertionError(f"leading weight {lam} is not dominant while rewriting {x}")
        a, b = lam[0] - lam[1], lam[1]
        result[(a, b)] = result.get((a, b), 0) + c
        remainder = remainder - _elementary_power(a, b) * c
    return LaurentPoly(RingTag.SU3.names, result, x.domain)


def _u2_rewrite(x: LaurentPoly) -> LaurentPoly:
    s = gen(RingTag.PAIR, "x") + gen(RingTag.PAIR, "y")
    d = gen(RingTag.PAIR, "x") * gen(RingTag.PAIR, "y")
    result: Dict[Tuple[int, int], object] = {}
    remainder = x
    while remainder:
        (a, b), c = max(remainder.terms.items(), key=lambda item: (item[0][0] - item[0][1], item[0][1]))
        h = a - b
        if h < 0:
            raise AssertionError(f"symmetric rewrite stalled on {remainder}")
        result[(h, b)] = result.get((h, b), 0) + c
        remainder = remainder - s ** h * d ** b * c
    return LaurentPoly(RingTag.U2.names, result, x.domain)


_REWRITES = {
    (RingTag.TORUS_SU2, RingTag.SU2): _su2_rewrite,
    (RingTag.TORUS_SU3, RingTag.SU3): _su3_rewrite,
    (RingTag.PAIR, RingTag.U2): _u2_rewrite,
}


def to_invariant_ring(x: LaurentPoly, target: RingTag) -> LaurentPoly:
    """Rewrite a Weyl-invariant torus element in the generators of the invariant ring"""
    source = ring_tag(x)
    rewrite = _REWRITES.get((source, target))
    if rewrite is None:
        raise ValueError(f"no invariant rewrite from {source.name} to {target.name}")
    if not is_invariant(x):
        raise InvarianceError(f"{x} is not Weyl invariant")
    return rewrite(x)


def from_invariant_ring(y: LaurentPoly) -> LaurentPoly:
    """Inverse of to_invariant_ring: the torus (or line pair) element represented by y"""
    tag = ring_tag(y)
    if tag == RingTag.SU2:
        return restrict(y, Restriction.SU2_TO_TORUS)
    if tag == RingTag.SU3:
        return restrict(y, Restriction.SU3_TO_TORUS)
    if tag == RingTag.U2:
        x, yy = gen(RingTag.PAIR, "x"), gen(RingTag.PAIR, "y")
        return y.substitute({"s": x + yy, "d": x * yy}, RingTag.PAIR.names)
    raise ValueError(f"{tag.name} is not an invariant ring")


# ============================================================================
# LOCALIZATION AT F(rho)
# ============================================================================

class Localized:
    """numerator / unit^denom_exp, kept with the smallest possible exponent"""

    __slots__ = ("numerator", "denom_exp", "unit")

    def __init__(self, numerator: LaurentPoly, denom_exp: int = 0, unit: Optional[LaurentPoly] = None):
        if unit is None:
            unit = LaurentPoly.one(numerator.names)
        if unit.names != numerator.names:
            raise ValueError("numerator and localizing element live in different rings")
        if unit.is_zero():
            raise ZeroDivisionError("cannot localize at zero")
        if denom_exp < 0:
            raise ValueError("denominator exponent must be nonnegative")
        while denom_exp > 0:
            reduced = exact_div(numerator, unit)
            if reduced is None:
                break
            numerator, denom_exp = reduced, denom_exp - 1
        self.numerator = numerator
        self.denom_exp = denom_exp
        self.unit = unit

    def _coerce(self, other) -> "Localized":
        if isinstance(other, Localized):
            if other.unit != self.unit:
                raise ValueError("localizations at different elements")
            return other
        if isinstance(other, (LaurentPoly, int, Fraction)):
            if isinstance(other, LaurentPoly):
                return Localized(other, 0, self.unit)
            return Localized(LaurentPoly.constant(self.unit.names, other), 0, self.unit)
        raise TypeError(f"cannot combine Localized with {type(other).__name__}")

    def cleared(self, k: int) -> LaurentPoly:
        """Numerator over unit^k, k at least denom_exp"""
        if k < self.denom_exp:
            raise ValueError(f"exponent {k} is below the denominator exponent {self.denom_exp}")
        return self.numerator * self.unit ** (k - self.denom_exp)

    def __add__(self, other) -> "Localized":
        other = self._coerce(other)
        k = max(self.denom_exp, other.denom_exp)
        return Localized(self.cleared(k) + other.cleared(k), k, self.unit)

    __radd__ = __add__

    def __neg__(self) -> "Localized":
        return Localized(-self.numerator, self.denom_exp, self.unit)

    def __sub__(self, other) -> "Localized":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Localized":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Localized":
        other = self._coerce(other)
        return Localized(self.numerator * other.numerator, self.denom_exp + other.denom_exp, self.unit)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.numerator * self.unit ** other.denom_exp == other.numerator * self.unit ** self.denom_exp

    __hash__ = None

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __repr__(self) -> str:
        if self.denom_exp == 0:
            return f"Localized({self.numerator})"
        return f"Localized(({self.numerator}) / ({self.unit})^{self.denom_exp})"


# ============================================================================
# RESTRICTIONS
# ============================================================================

class Restriction(Enum):
    SU3_TO_U2 = "SU3->U2"
    SU2_TO_TORUS = "SU2->TorusSU2"
    SU3_TO_TORUS = "SU3->TorusSU3"
    U2_TO_TORUS = "U2->TorusSU3"


EDGES = ((0, 1), (1, 2), (0, 2))
EDGE_PAIRS = {(0, 1): (2, 3), (1, 2): (1, 3), (0, 2): (1, 2)}
EDGE_FIXED = {(0, 1): 1, (1, 2): 2, (0, 2): 3}


def edge_transposition(edge: Tuple[int, int]) -> WeylElement:
    return WeylElement.transposition(*EDGE_PAIRS[edge])


def _assignment(hom: Restriction, edge: Optional[Tuple[int, int]]) -> Tuple[RingTag, Dict[str, LaurentPoly], RingTag]:
    if hom == Restriction.SU3_TO_U2:
        s, d = gen(RingTag.U2, "s"), gen(RingTag.U2, "d")
        return RingTag.SU3, {"s1": s + d ** -1, "s2": d ** -1 * s + d}, RingTag.U2
    if hom == Restriction.SU2_TO_TORUS:
        t = gen(RingTag.TORUS_SU2, "t")
        return RingTag.SU2, {"rho": t + t ** -1}, RingTag.TORUS_SU2
    if hom == Restriction.SU3_TO_TORUS:
        t1, t2, t3 = torus_t(1), torus_t(2), torus_t(3)
        return RingTag.SU3, {"s1": t1 + t2 + t3, "s2": t1 * t2 + t1 * t3 + t2 * t3}, RingTag.TORUS_SU3
    if hom == Restriction.U2_TO_TORUS:
        if edge not in EDGE_PAIRS:
            raise ValueError(f"edge {edge} is not one of {EDGES}")
        j, k = EDGE_PAIRS[edge]
        return RingTag.U2, {"s": torus_t(j) + torus_t(k), "d": torus_t(j) * torus_t(k)}, RingTag.TORUS_SU3
    raise ValueError(f"unknown restriction {hom}")


def restrict(x: Union[LaurentPoly, Localized], hom: Restriction,
             edge: Optional[Tuple[int, int]] = None) -> Union[LaurentPoly, Localized]:
    source, assignment, target = _assignment(hom, edge)
    if isinstance(x, Localized):
        return Localized(restrict(x.numerator, hom, edge), x.denom_exp, restrict(x.unit, hom, edge))
    if x.names != source.names:
        raise ValueError(f"{hom.value} cannot restrict an element over {x.names}")
    return x.substitute(assignment, target.names)


# ============================================================================
# BASIS DECOMPOSITIONS
# ============================================================================

def su2_decompose(f: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    """(g1, g2) in Z[rho] with f = g1 + t*g2"""
    if f.names != RingTag.TORUS_SU2.names:
        raise ValueError(f"expected an SU(2) torus element, got variables {f.names}")
    t = gen(RingTag.TORUS_SU2, "t")
    swapped = weyl_act(SWAP, f)
    den = t ** -1 - t
    g1 = exact_div(t ** -1 * f - t * swapped, den)
    g2 = exact_div(swapped - f, den)
    if g1 is None or g2 is None:
        logger.error(f"SU(2) decomposition of {f} did not divide exactly")
        raise AssertionError(f"SU(2) decomposition of {f} failed")
    return to_invariant_ring(g1, RingTag.SU2), to_invariant_ring(g2, RingTag.SU2)


STEINBERG_LABELS = ("1", "t2", "t3", "t2^-1", "t1^-1", "t1^-1*t3")


def steinberg_basis() -> Tuple[LaurentPoly, ...]:
    t1, t2, t3 = torus_t(1), torus_t(2), torus_t(3)
    return (one(RingTag.TORUS_SU3), t2, t3, t2 ** -1, t1 ** -1, t1 ** -1 * t3)


@lru_cache(maxsize=1)
def _steinberg_system() -> Tuple[LaurentPoly, Tuple[Tuple[LaurentPoly, ...], ...]]:
    """Determinant and adjugate of M[w][b] = w.b over the torus ring"""
    basis = steinberg_basis()
    matrix = [[weyl_act(w, b) for b in basis] for w in S3]
    det = det_bareiss(matrix)
    if det.is_zero():
        raise AssertionError("Steinberg matrix is singular")
    n = len(basis)
    adjugate = []
    for b in range(n):
        row = []
        for w in range(n):
            minor = [[matrix[i][j] for j in range(n) if j != b] for i in range(n) if i != w]
            cofactor = det_bareiss(minor)
            row.append(cofactor if (b + w) % 2 == 0 else -cofactor)
        adjugate.append(tuple(row))
    logger.info(f"Steinberg system ready, determinant has {len(det)} terms")
    return det, tuple(adjugate)


def steinberg_decompose(f: LaurentPoly) -> Tuple[LaurentPoly, ...]:
    """Coefficients c_b in Z[s1,s2] (or Q[s1,s2]) with f = sum c_b * b over the Steinberg basis"""
    if f.names != RingTag.TORUS_SU3.names:
        raise ValueError(f"expected an SU(3) torus element, got variables {f.names}")
    det, adjugate = _steinberg_system()
    rhs = [weyl_act(w, f) for w in S3]
    coefficients = []
    for b, row in enumerate(adjugate):
        numerator = LaurentPoly.zero(f.names)
        for cofactor, value in zip(row, rhs):
            numerator = numerator + cofactor * value
        c = exact_div(numerator, det)
        if c is None:
            logger.error(f"Steinberg coefficient {STEINBERG_LABELS[b]} of {f} is not a polynomial")
            raise AssertionError(f"Steinberg decomposition of {f} failed")
        coefficients.append(to_invariant_ring(c, RingTag.SU3))
    return tuple(coefficients)


def fixed_basis(i: int) -> Tuple[LaurentPoly, LaurentPoly, LaurentPoly]:
    """{1, t_i, t_i^-1}, basis of the invariants of the transposition fixing t_i"""
    t = torus_t(i)
    return one(RingTag.TORUS_SU3), t, t ** -1


def fixed_submodule_decompose(f: LaurentPoly, transposition: WeylElement) -> Optional[Tuple[LaurentPoly, ...]]:
    """
    Coefficients over {1, t_i, t_i^-1} of a transposition-invariant torus element.

    Returns None when the coefficients do not come out as exact invariants.
    """
    fixed = transposition.fixed_points()
    if len(transposition.perm) != 3 or len(fixed) != 1:
        raise ValueError(f"{transposition} is not a transposition of S3")
    if weyl_act(transposition, f) != f:
        raise InvarianceError(f"{f} is not invariant under {transposition}")
    i = fixed[0]
    basis = fixed_basis(i + 1)
    cosets = [WeylElement.transposition(i + 1, j + 1) if j != i else WeylElement.identity() for j in range(3)]
    matrix = [[weyl_act(g, b) for b in basis] for g in cosets]
    rhs = [weyl_act(g, f) for g in cosets]
    det = det_cofactor3(matrix)
    adjugate = adjugate3(matrix)

    coefficients = []
    for row in adjugate:
        numerator = row[0] * rhs[0] + row[1] * rhs[1] + row[2] * rhs[2]
        c = exact_div(numerator, det)
        if c is None:
            logger.warning(f"Fixed-submodule coefficient of {f} is not a polynomial")
            return None
        try:
            coefficients.append(to_invariant_ring(c, RingTag.SU3))
        except InvarianceError:
            logger.warning(f"Fixed-submodule coefficient {c} is not symmetric")
            return None

    recomposed = sum((restrict(c, Restriction.SU3_TO_TORUS) * b for c, b in zip(coefficients, basis)),
                     LaurentPoly.zero(f.names))
    if recomposed != f:
        logger.warning(f"Fixed-submodule recomposition of {f} failed")
        return None
    return tuple(coefficients)
