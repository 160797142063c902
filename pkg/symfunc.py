"""
Symmetric functions in t1, t2, t3 modulo t1*t2*t3 = 1
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from expfunctor import ExponentialFunctor
from laurent import LaurentPoly, det_cofactor3, exact_div
from reprings import (InvarianceError, RingTag, WeylElement, is_antisymmetric, to_invariant_ring,
                      torus_t, weyl_act)

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def h(k: int) -> LaurentPoly:
    """Complete homogeneous symmetric polynomial h_k in Z[s1, s2]; zero for k < 0"""
    names = RingTag.SU3.names
    if k < 0:
        return LaurentPoly.zero(names)
    if k == 0:
        return LaurentPoly.one(names)
    s1 = LaurentPoly.variable(names, "s1")
    s2 = LaurentPoly.variable(names, "s2")
    # h_k = e1 h_{k-1} - e2 h_{k-2} + e3 h_{k-3} with e3 = 1
    return s1 * h(k - 1) - s2 * h(k - 2) + h(k - 3)


@dataclass(frozen=True)
class AntisymmetricElement:
    value: LaurentPoly

    def __post_init__(self):
        if self.value.names != RingTag.TORUS_SU3.names:
            raise ValueError("antisymmetric elements live on the SU(3) torus")
        if not is_antisymmetric(self.value):
            raise InvarianceError(f"{self.value} is not antisymmetric")


@lru_cache(maxsize=1)
def vandermonde() -> AntisymmetricElement:
    """Alternant det[t_i^2; t_i; 1] = (t1 - t2)(t1 - t3)(t2 - t3)"""
    t1, t2, t3 = torus_t(1), torus_t(2), torus_t(3)
    return AntisymmetricElement((t1 - t2) * (t1 - t3) * (t2 - t3))


def psi(p: AntisymmetricElement) -> LaurentPoly:
    """Division by the Vandermonde, landing in R(SU(3))"""
    quotient = exact_div(p.value, vandermonde().value)
    if quotient is None:
        logger.error(f"Antisymmetric element {p.value} is not divisible by the Vandermonde")
        raise AssertionError("antisymmetric element not divisible by the Vandermonde")
    return to_invariant_ring(quotient, RingTag.SU3)


def galois_row(seed: LaurentPoly) -> List[LaurentPoly]:
    """[seed, (12).seed, (13).seed] for a seed fixed by the transposition (23)"""
    if weyl_act(WeylElement.transposition(2, 3), seed) != seed:
        raise InvarianceError(f"seed {seed} is not fixed by (23)")
    return [seed, weyl_act(WeylElement.transposition(1, 2), seed),
            weyl_act(WeylElement.transposition(1, 3), seed)]


def bialternant(seeds: Sequence[LaurentPoly]) -> LaurentPoly:
    """-(1/Delta) * det of the matrix whose rows are the Galois rows of three seeds"""
    if len(seeds) != 3:
        raise ValueError("a bialternant needs three seed rows")
    det = det_cofactor3([galois_row(seed) for seed in seeds])
    return -psi(AntisymmetricElement(det))


@dataclass(frozen=True)
class SymExpansion:
    """chi = sum of coefficient * Sym^degree(rho), stored as (coefficient, degree) pairs"""
    first: Tuple[Tuple[int, int], ...]
    second: Tuple[Tuple[int, int], ...]

    def value(self, which: int) -> LaurentPoly:
        terms = self.first if which == 1 else self.second
        total = LaurentPoly.zero(RingTag.SU3.names)
        for c, k in terms:
            total = total + h(k) * c
        return total

    @staticmethod
    def to_text(terms: Sequence[Tuple[int, int]]) -> str:
        if not terms:
            return "0"
        return " + ".join(f"Sym^{k}(rho)" if c == 1 else f"{c}*Sym^{k}(rho)" for c, k in terms)


def sym_expansion(F: ExponentialFunctor) -> Optional[SymExpansion]:
    """h-basis form of chi_1 and chi_2 for a polynomial character F = sum a_l t^l"""
    if F.min_degree < 0:
        return None
    coefficients = sorted((exps[0], int(c)) for exps, c in F.character.terms.items())
    return SymExpansion(
        first=tuple((c, l - 2) for l, c in coefficients if l >= 2),
        second=tuple((c, l - 1) for l, c in coefficients if l >= 1),
    )
