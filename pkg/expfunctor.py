"""
Exponential functors through their line character F(t)

DSL grammar:
    expr   := power ('*' power)*
    power  := atom ('^' INT)?
    atom   := 'ext_top' | 'ext_full' | 'fw(' INT ')' | 'poly:' body | '(' expr ')'

A poly body is either parenthesized, ``poly:(1 + t^2)``, or runs to the end of
the input, ``poly:2 + t^2``.
"""

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence

from laurent import LaurentPoly, ParseError, parse_laurent
from reprings import (Localized, Restriction, RingTag, gen, restrict, to_invariant_ring, torus_t)

logger = logging.getLogger(__name__)

LINE = RingTag.TORUS_SU2.names


def _t() -> LaurentPoly:
    return LaurentPoly.variable(LINE, "t")


@dataclass(frozen=True)
class ExponentialFunctor:
    """Character F(t) of an exponential functor; formal when typed in as a raw polynomial"""
    character: LaurentPoly
    name: Optional[str] = None
    formal: bool = False

    def __post_init__(self):
        if self.character.names != LINE:
            raise ValueError(f"functor character must be a polynomial in t, got variables {self.character.names}")
        if self.character.is_zero():
            raise ValueError("functor character is zero")
        for exps, c in self.character.terms.items():
            if c < 0 or Fraction(c).denominator != 1:
                raise ValueError(f"functor character has coefficient {c}; only nonnegative integers are allowed")

    @property
    def dimension(self) -> int:
        """d(F), the character at t = 1"""
        return int(sum(self.character.terms.values()))

    @property
    def top_degree(self) -> int:
        return self.character.max_exponents()[0]

    @property
    def min_degree(self) -> int:
        return self.character.min_exponents()[0]

    @property
    def warnings(self) -> List[str]:
        notes = []
        if self.min_degree < 0:
            notes.append("character has negative exponents")
        if self.formal:
            notes.append("formal character")
        return notes

    @property
    def label(self) -> str:
        return self.name or print_functor(self)

    def __mul__(self, other: "ExponentialFunctor") -> "ExponentialFunctor":
        name = f"{self.label} * {other.label}"
        return ExponentialFunctor(self.character * other.character, name, self.formal or other.formal)

    def __pow__(self, m: int) -> "ExponentialFunctor":
        if m < 0:
            raise ValueError("tensor powers must be nonnegative")
        return ExponentialFunctor(self.character ** m, f"({self.label})^{m}", self.formal)


def print_functor(F: ExponentialFunctor) -> str:
    return f"poly:{F.character.to_text()}"


# ============================================================================
# DSL PARSER
# ============================================================================

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT = re.compile(r"\d+")


class _FunctorParser:

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.formal = False

    def _error(self, reason: str, pos: Optional[int] = None) -> ParseError:
        return ParseError(reason, self.pos if pos is None else pos, self.text)

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _integer(self) -> int:
        self._skip()
        match = _INT.match(self.text, self.pos)
        if not match:
            raise self._error("expected an integer")
        self.pos = match.end()
        return int(match.group())

    def _expect(self, char: str):
        if self._peek() != char:
            raise self._error(f"expected {char!r}")
        self.pos += 1

    def parse(self) -> LaurentPoly:
        result = self._product()
        if self._peek():
            raise self._error(f"unexpected {self.text[self.pos]!r}")
        return result

    def _product(self) -> LaurentPoly:
        result = self._power()
        while self._peek() == "*":
            self.pos += 1
            result = result * self._power()
        return result

    def _power(self) -> LaurentPoly:
        base = self._atom()
        if self._peek() == "^":
            self.pos += 1
            base = base ** self._integer()
        return base

    def _poly_body(self) -> LaurentPoly:
        self._skip()
        start = self.pos
        if self._peek() == "(":
            depth = 0
            for end in range(self.pos, len(self.text)):
                if self.text[end] == "(":
                    depth += 1
                elif self.text[end] == ")":
                    depth -= 1
                    if depth == 0:
                        break
            else:
                raise self._error("unbalanced parentheses in poly body", start)
            body, body_start, self.pos = self.text[start + 1:end], start + 1, end + 1
        else:
            body, body_start, self.pos = self.text[start:], start, len(self.text)
        try:
            poly = parse_laurent(body, LINE, offset=body_start)
        except ParseError as e:
            raise ParseError(e.reason, e.position, self.text)
        if poly.is_zero():
            raise self._error("zero polynomial", start)
        if any(c < 0 for c in poly.terms.values()):
            raise self._error("negative coefficient in poly form", start)
        if not poly.is_integral():
            raise self._error("non-integral coefficient in poly form", start)
        self.formal = True
        return poly

    def _atom(self) -> LaurentPoly:
        char = self._peek()
        start = self.pos
        if char == "(":
            self.pos += 1
            inner = self._product()
            self._expect(")")
            return inner
        match = _NAME.match(self.text, self.pos)
        if not match:
            raise self._error("expected ext_top, ext_full, fw(b), poly:... or '('" if char else "unexpected end of input")
        word = match.group()
        self.pos = match.end()
        if word == "ext_top":
            return _t()
        if word == "ext_full":
            return 1 + _t()
        if word == "fw":
            self._expect("(")
            b = self._integer()
            if b < 1:
                raise self._error("fw(b) needs b >= 1", start)
            self._expect(")")
            return 1 + _t() * b
        if word == "poly":
            self._expect(":")
            return self._poly_body()
        raise self._error(f"unknown functor {word!r}", start)


def parse_functor(spec: str) -> ExponentialFunctor:
    """
    Parse the functor DSL

    Args:
        spec: Text such as "ext_full^3", "fw(2) * ext_top" or "poly:(1 + 3*t)"

    Returns:
        ExponentialFunctor; raw poly: forms are flagged formal

    Raises:
        ParseError: With the offending character position
    """
    parser = _FunctorParser(spec)
    character = parser.parse()
    functor = ExponentialFunctor(character, spec.strip(), parser.formal)
    for note in functor.warnings:
        if note != "formal character":
            logger.warning(f"Functor {functor.label}: {note}")
    return functor


# ============================================================================
# CHARACTERS AT LINES
# ============================================================================

def f_of_lines(F: ExponentialFunctor, lines: Sequence[LaurentPoly],
               names: Optional[Sequence[str]] = None) -> LaurentPoly:
    """F applied to a sum of lines: the product of F at each line"""
    if names is None:
        names = lines[0].names if lines else LINE
    names = tuple(names)
    result = LaurentPoly.one(names)
    for line in lines:
        if line.names != names:
            raise ValueError(f"line {line} is not over {names}")
        if not line.is_monomial() or next(iter(line.terms.values())) != 1:
            raise ValueError(f"line {line} is not a unit monomial")
        result = result * F.character.substitute({"t": line}, names)
    return result


@dataclass(frozen=True)
class UnitCertificate:
    name: str
    element: LaurentPoly
    inverse: Localized = field(compare=False)
    holds: bool


@dataclass(frozen=True)
class DerivedElements:
    F_rho_su2: LaurentPoly
    F_rho_su3: LaurentPoly
    lambda_F: LaurentPoly
    mu_F: LaurentPoly
    nu_F: LaurentPoly
    F_rho_torus: LaurentPoly
    F_rho_u2: LaurentPoly

    def unit(self, tag: RingTag) -> LaurentPoly:
        """Image of F(rho) in the given ring, the element inverted by localization"""
        units = {
            RingTag.SU2: self.F_rho_su2,
            RingTag.SU3: self.F_rho_su3,
            RingTag.U2: self.F_rho_u2,
            RingTag.TORUS_SU3: self.F_rho_torus,
            RingTag.TORUS_SU2: restrict(self.F_rho_su2, Restriction.SU2_TO_TORUS),
        }
        return units[tag]

    def localized(self, x: LaurentPoly, k: int = 0) -> Localized:
        tag = next(tag for tag in RingTag if tag.names == x.names)
        return Localized(x, k, self.unit(tag))

    def lambda_inverse(self) -> Localized:
        return Localized(self.mu_F, 1, self.F_rho_u2)

    def mu_inverse(self) -> Localized:
        return Localized(self.lambda_F, 1, self.F_rho_u2)

    def nu_inverse(self, F: ExponentialFunctor) -> Localized:
        return Localized(f_of_lines(F, [torus_t(2), torus_t(3)]), 1, self.F_rho_torus)

    def unit_certificates(self, F: ExponentialFunctor) -> List[UnitCertificate]:
        checks = [
            ("lambda_F", self.lambda_F, self.lambda_inverse()),
            ("mu_F", self.mu_F, self.mu_inverse()),
            ("nu_F", self.nu_F, self.nu_inverse(F)),
            ("F(rho) in R(SU(2))", self.F_rho_su2, Localized(LaurentPoly.one(RingTag.SU2.names), 1, self.F_rho_su2)),
            ("F(rho) in R(SU(3))", self.F_rho_su3, Localized(LaurentPoly.one(RingTag.SU3.names), 1, self.F_rho_su3)),
        ]
        return [UnitCertificate(name, value, inverse, inverse * value == 1) for name, value, inverse in checks]


@lru_cache(maxsize=128)
def derived_elements(F: ExponentialFunctor) -> DerivedElements:
    t = _t()
    t1, t2, t3 = torus_t(1), torus_t(2), torus_t(3)
    d = gen(RingTag.U2, "d")
    torus_rho = f_of_lines(F, [t1, t2, t3])
    F_rho_su3 = to_invariant_ring(torus_rho, RingTag.SU3)
    derived = DerivedElements(
        F_rho_su2=to_invariant_ring(f_of_lines(F, [t, t ** -1]), RingTag.SU2),
        F_rho_su3=F_rho_su3,
        lambda_F=f_of_lines(F, [d ** -1]),
        mu_F=to_invariant_ring(f_of_lines(F, [gen(RingTag.PAIR, "x"), gen(RingTag.PAIR, "y")]), RingTag.U2),
        nu_F=f_of_lines(F, [t1]),
        F_rho_torus=torus_rho,
        F_rho_u2=restrict(F_rho_su3, Restriction.SU3_TO_U2),
    )
    logger.info(f"Derived elements ready for {F.label}: F(rho) in R(SU(3)) has {len(F_rho_su3)} terms")
    return derived


@dataclass(frozen=True)
class Hypotheses:
    su2_ok: bool
    su3_ok: bool


def hypothesis_checks(F: ExponentialFunctor) -> Hypotheses:
    """SU(2): F(t) differs from F(t^-1). SU(3): F has positive top degree."""
    t = _t()
    flipped = F.character.substitute({"t": t ** -1}, LINE)
    return Hypotheses(su2_ok=flipped != F.character, su3_ok=F.top_degree > 0)
