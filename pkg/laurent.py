"""
Exact multivariate Laurent polynomials over the integers or the rationals.

Every character in the calculator is a LaurentPoly over a named ambient
variable set, e.g. ('t',), ('t1', 't2'), ('s', 'd'), ('rho',) or ('s1', 's2').
Values are immutable. Terms iterate in descending graded-lexicographic order.
"""

import logging
import re
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

logger = logging.getLogger(__name__)

Coefficient = Union[int, Fraction]
Exponents = Tuple[int, ...]

ZZ = "ZZ"
QQ = "QQ"


class ParseError(ValueError):
    """Syntax error in a polynomial or functor expression"""

    def __init__(self, reason: str, position: int, text: str = ""):
        self.reason = reason
        self.position = position
        self.text = text
        super().__init__(f"{reason} at position {position}")

    def diagnostic(self) -> str:
        """Two-line caret diagnostic for console output"""
        if not self.text:
            return str(self)
        return f"{self.text}\n{' ' * self.position}^ {self.reason}"


def order_key(exponents: Exponents) -> Tuple[int, Exponents]:
    """Graded lex key; shifting every exponent vector by the same amount keeps the order"""
    return (sum(exponents), exponents)


def _format_coefficient(c: Coefficient) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


class LaurentPoly:
    """Immutable Laurent polynomial: map from exponent tuple to nonzero coefficient"""

    __slots__ = ("names", "domain", "_terms", "_hash")

    def __init__(self, names: Sequence[str], terms: Optional[Mapping[Exponents, Coefficient]] = None,
                 domain: Optional[str] = None):
        names = tuple(names)
        clean: Dict[Exponents, Coefficient] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(names):
                raise ValueError(f"exponent vector {exps} does not match variables {names}")
            if c != 0:
                clean[exps] = c

        if domain is None:
            domain = QQ if any(isinstance(c, Fraction) and c.denominator != 1 for c in clean.values()) else ZZ
        if domain == ZZ:
            for exps, c in clean.items():
                if isinstance(c, Fraction):
                    if c.denominator != 1:
                        raise ValueError(f"non-integral coefficient {c} in an integer polynomial")
                    clean[exps] = c.numerator
                else:
                    clean[exps] = int(c)
        elif domain == QQ:
            for exps, c in clean.items():
                clean[exps] = Fraction(c)
        else:
            raise ValueError(f"unknown coefficient domain {domain!r}")

        self.names = names
        self.domain = domain
        self._terms = clean
        self._hash = None

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, names: Sequence[str]) -> "LaurentPoly":
        return cls(names)

    @classmethod
    def constant(cls, names: Sequence[str], c: Coefficient) -> "LaurentPoly":
        return cls(names, {(0,) * len(tuple(names)): c})

    @classmethod
    def one(cls, names: Sequence[str]) -> "LaurentPoly":
        return cls.constant(names, 1)

    @classmethod
    def monomial(cls, names: Sequence[str], exponents: Sequence[int], c: Coefficient = 1) -> "LaurentPoly":
        return cls(names, {tuple(exponents): c})

    @classmethod
    def variable(cls, names: Sequence[str], name: str) -> "LaurentPoly":
        names = tuple(names)
        if name not in names:
            raise ValueError(f"{name!r} is not one of {names}")
        return cls.monomial(names, tuple(1 if n == name else 0 for n in names))

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    @property
    def terms(self) -> Dict[Exponents, Coefficient]:
        return dict(self._terms)

    def items(self) -> List[Tuple[Exponents, Coefficient]]:
        """Terms in descending graded-lex order"""
        return sorted(self._terms.items(), key=lambda item: order_key(item[0]), reverse=True)

    def coefficient(self, exponents: Sequence[int]) -> Coefficient:
        return self._terms.get(tuple(exponents), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(exps) for exps in self._terms)

    def constant_value(self) -> Coefficient:
        return self._terms.get((0,) * len(self.names), 0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_unit_monomial(self) -> bool:
        """Single term with coefficient +1 or -1, i.e. a unit of the Laurent ring"""
        return len(self._terms) == 1 and next(iter(self._terms.values())) in (1, -1)

    def leading_term(self) -> Tuple[Exponents, Coefficient]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self._terms.items(), key=lambda item: order_key(item[0]))

    def min_exponents(self) -> Exponents:
        if not self._terms:
            return (0,) * len(self.names)
        return tuple(min(exps[i] for exps in self._terms) for i in range(len(self.names)))

    def max_exponents(self) -> Exponents:
        if not self._terms:
            return (0,) * len(self.names)
        return tuple(max(exps[i] for exps in self._terms) for i in range(len(self.names)))

    def is_polynomial(self) -> bool:
        return all(e >= 0 for exps in self._terms for e in exps)

    def is_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 for c in self._terms.values())

    def with_domain(self, domain: str) -> "LaurentPoly":
        if domain == self.domain:
            return self
        return LaurentPoly(self.names, self._terms, domain)

    def to_rational(self) -> "LaurentPoly":
        return self.with_domain(QQ)

    def renamed(self, names: Sequence[str]) -> "LaurentPoly":
        """Same terms over another ambient variable set of equal size"""
        names = tuple(names)
        if len(names) != len(self.names):
            raise ValueError(f"cannot rename {self.names} to {names}")
        return LaurentPoly(names, self._terms, self.domain)

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.names != self.names:
                raise ValueError(f"mismatched ambient variables {self.names} and {other.names}")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(self.names, other)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def _result_domain(self, other: "LaurentPoly") -> str:
        return QQ if QQ in (self.domain, other.domain) else ZZ

    def __add__(self, other) -> "LaurentPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self._terms)
        for exps, c in other._terms.items():
            terms[exps] = terms.get(exps, 0) + c
        return LaurentPoly(self.names, terms, self._result_domain(other))

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.names, {exps: -c for exps, c in self._terms.items()}, self.domain)

    def __sub__(self, other) -> "LaurentPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms: Dict[Exponents, Coefficient] = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                exps = tuple(a + b for a, b in zip(ea, eb))
                terms[exps] = terms.get(exps, 0) + ca * cb
        return LaurentPoly(self.names, terms, self._result_domain(other))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if not isinstance(n, int):
            raise TypeError("exponent must be an integer")
        if n < 0:
            if not self.is_unit_monomial():
                raise ValueError(f"negative power of the non-unit {self}")
            (exps, c), = self._terms.items()
            sign = c if (-n) % 2 else 1
            return LaurentPoly(self.names, {tuple(e * n for e in exps): sign}, self.domain)
        result = LaurentPoly.one(self.names).with_domain(self.domain)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shifted(self, exponents: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial with the given exponents"""
        shift = tuple(exponents)
        return LaurentPoly(self.names, {tuple(a + b for a, b in zip(exps, shift)): c
                                        for exps, c in self._terms.items()}, self.domain)

    def cleared(self) -> Tuple["LaurentPoly", Exponents]:
        """Polynomial obtained by removing the minimal exponents, and the shift removed"""
        low = self.min_exponents()
        return self.shifted(tuple(-e for e in low)), low

    # ------------------------------------------------------------------
    # Comparison
    # ------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self._terms
            return self._terms == {(0,) * len(self.names): other}
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.names == other.names and self._terms == other._terms

    def __ne__(self, other) -> bool:
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.names, frozenset(self._terms.items())))
        return self._hash

    # ------------------------------------------------------------------
    # Homomorphisms and evaluation
    # ------------------------------------------------------------------

    def substitute(self, assignment: Mapping[str, "LaurentPoly"],
                   target_names: Optional[Sequence[str]] = None) -> "LaurentPoly":
        """Image under the ring map sending each variable to the assigned value"""
        if target_names is None:
            values = list(assignment.values())
            if not values:
                raise ValueError("target variables required for an empty assignment")
            target_names = values[0].names
        target_names = tuple(target_names)

        used = {i for exps in self._terms for i, e in enumerate(exps) if e}
        missing = [self.names[i] for i in sorted(used) if self.names[i] not in assignment]
        if missing:
            raise ValueError(f"no value assigned to {', '.join(missing)}")

        powers: Dict[Tuple[int, int], LaurentPoly] = {}

        def power(index: int, e: int) -> LaurentPoly:
            key = (index, e)
            if key not in powers:
                value = assignment[self.names[index]]
                if value.names != target_names:
                    raise ValueError(f"assigned value for {self.names[index]} lives over {value.names}")
                if e < 0 and not value.is_unit_monomial():
                    raise ValueError(f"{self.names[index]} has negative exponent but its value {value} is not invertible")
                powers[key] = value ** e
            return powers[key]

        result = LaurentPoly.zero(target_names).with_domain(self.domain)
        for exps, c in self._terms.items():
            term = LaurentPoly.constant(target_names, c)
            for index, e in enumerate(exps):
                if e:
                    term = term * power(index, e)
            result = result + term
        return result

    def evaluate(self, point: Sequence[complex]) -> complex:
        return eval_complex(self, point)

    # ------------------------------------------------------------------
    # Text form
    # ------------------------------------------------------------------

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for exps, c in self.items():
            monomial = "*".join(name if e == 1 else f"{name}^{e}"
                                for name, e in zip(self.names, exps) if e != 0)
            magnitude = abs(c)
            if not monomial:
                body = _format_coefficient(magnitude)
            elif magnitude == 1:
                body = monomial
            else:
                body = f"{_format_coefficient(magnitude)}*{monomial}"
            if not out:
                out.append(f"-{body}" if c < 0 else body)
            else:
                out.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(out)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.names}, {self.to_text()!r})"


# ============================================================================
# EXACT DIVISION AND DETERMINANTS
# ============================================================================

def exact_div(num: LaurentPoly, den: LaurentPoly) -> Optional[LaurentPoly]:
    """
    Exact quotient num / den in the Laurent ring, or None if den does not divide num.

    Both operands are cleared to ordinary polynomials; den then has no monomial
    factor, so any Laurent quotient is a polynomial and long division by leading
    terms decides divisibility. Over ZZ a non-integral quotient coefficient also
    counts as non-exact.
    """
    if num.names != den.names:
        raise ValueError(f"mismatched ambient variables {num.names} and {den.names}")
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    domain = QQ if QQ in (num.domain, den.domain) else ZZ
    if num.is_zero():
        return LaurentPoly.zero(num.names).with_domain(domain)

    n_low = num.min_exponents()
    d_low = den.min_exponents()
    remainder = {tuple(a - b for a, b in zip(exps, n_low)): c for exps, c in num.terms.items()}
    divisor = {tuple(a - b for a, b in zip(exps, d_low)): c for exps, c in den.terms.items()}
    d_exps, d_coeff = max(divisor.items(), key=lambda item: order_key(item[0]))

    quotient: Dict[Exponents, Coefficient] = {}
    while remainder:
        r_exps = max(remainder, key=order_key)
        q_exps = tuple(a - b for a, b in zip(r_exps, d_exps))
        if any(e < 0 for e in q_exps):
            return None
        r_coeff = remainder[r_exps]
        if domain == ZZ:
            if r_coeff % d_coeff:
                return None
            q_coeff = r_coeff // d_coeff
        else:
            q_coeff = Fraction(r_coeff) / d_coeff
        quotient[q_exps] = q_coeff
        for exps, c in divisor.items():
            key = tuple(a + b for a, b in zip(q_exps, exps))
            value = remainder.get(key, 0) - q_coeff * c
            if value:
                remainder[key] = value
            else:
                remainder.pop(key, None)

    shift = tuple(a - b for a, b in zip(n_low, d_low))
    result = LaurentPoly(num.names, {tuple(a + b for a, b in zip(exps, shift)): c
                                     for exps, c in quotient.items()}, domain)
    if result * den != num:
        logger.error(f"Multiply-back check failed for ({num}) / ({den})")
        raise AssertionError("exact division produced a wrong quotient")
    return result


def det_cofactor3(m: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """3x3 determinant by cofactor expansion along the first row"""
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def adjugate3(m: Sequence[Sequence[LaurentPoly]]) -> List[List[LaurentPoly]]:
    """Adjugate of a 3x3 matrix: adj[i][j] is the (j, i) cofactor"""
    def minor(r: int, c: int) -> LaurentPoly:
        rows = [i for i in range(3) if i != r]
        cols = [j for j in range(3) if j != c]
        return m[rows[0]][cols[0]] * m[rows[1]][cols[1]] - m[rows[0]][cols[1]] * m[rows[1]][cols[0]]

    return [[minor(j, i) if (i + j) % 2 == 0 else -minor(j, i) for j in range(3)] for i in range(3)]


def det_bareiss(matrix: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Fraction-free determinant; every intermediate division is exact"""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    names = matrix[0][0].names
    a = [list(row) for row in matrix]
    sign = 1
    previous = LaurentPoly.one(names)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return LaurentPoly.zero(names)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                quotient = exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], previous)
                if quotient is None:
                    raise AssertionError("Bareiss step was not exact")
                a[i][j] = quotient
        previous = a[k][k]
    return a[n - 1][n - 1] if sign == 1 else -a[n - 1][n - 1]


def eval_complex(p: LaurentPoly, point: Sequence[complex]) -> complex:
    """Value of p at a point with one nonzero complex coordinate per variable"""
    if len(point) != len(p.names):
        raise ValueError(f"point has {len(point)} coordinates, expected {len(p.names)}")
    if any(z == 0 for z in point):
        raise ValueError("evaluation point has a zero coordinate")
    total = 0j
    for exps, c in p.terms.items():
        value = complex(float(c))
        for z, e in zip(point, exps):
            if e:
                value *= complex(z) ** e
        total += value
    return total


# ============================================================================
# PARSER
# ============================================================================

_TOKEN = re.compile(r"\s*(?:(?P<number>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*/^()]))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if not match:
            offset = len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[pos + offset]!r}", pos + offset, text)
        kind = match.lastgroup
        value = match.group(kind)
        start = match.start(kind)
        if value == "**":
            value = "^"
        tokens.append((kind, value, start))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _PolyParser:
    """Recursive descent: expr := [+-] term (('+'|'-') term)*, term := factor ('*' factor)*"""

    def __init__(self, text: str, names: Tuple[str, ...], offset: int):
        self.text = text
        self.names = names
        self.offset = offset
        self.tokens = _tokenize(text)
        self.index = 0

    def _error(self, reason: str, pos: Optional[int] = None) -> ParseError:
        if pos is None:
            pos = self.tokens[self.index][2]
        return ParseError(reason, pos + self.offset, self.text)

    def _peek(self) -> Tuple[str, str, int]:
        return self.tokens[self.index]

    def _advance(self) -> Tuple[str, str, int]:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def parse(self) -> LaurentPoly:
        result = self._expr()
        kind, value, pos = self._peek()
        if kind != "end":
            raise self._error(f"unexpected {value!r}", pos)
        return result

    def _expr(self) -> LaurentPoly:
        sign = 1
        if self._peek()[1] in ("+", "-"):
            sign = -1 if self._advance()[1] == "-" else 1
        result = self._term() * sign
        while self._peek()[1] in ("+", "-"):
            op = self._advance()[1]
            term = self._term()
            result = result + term if op == "+" else result - term
        return result

    def _term(self) -> LaurentPoly:
        result = self._factor()
        while self._peek()[1] == "*":
            self._advance()
            result = result * self._factor()
        return result

    def _exponent(self) -> int:
        sign = 1
        parenthesized = False
        if self._peek()[1] == "(":
            self._advance()
            parenthesized = True
        if self._peek()[1] in ("+", "-"):
            sign = -1 if self._advance()[1] == "-" else 1
        kind, value, pos = self._advance()
        if kind != "number":
            raise self._error("expected an integer exponent", pos)
        if parenthesized:
            if self._peek()[1] != ")":
                raise self._error("expected ')'")
            self._advance()
        return sign * int(value)

    def _factor(self) -> LaurentPoly:
        start = self._peek()[2]
        base = self._atom()
        if self._peek()[1] == "^":
            self._advance()
            exponent = self._exponent()
            try:
                base = base ** exponent
            except ValueError as e:
                raise self._error(str(e), start)
        return base

    def _atom(self) -> LaurentPoly:
        kind, value, pos = self._advance()
        if kind == "number":
            if self._peek()[1] == "/":
                self._advance()
                dkind, dvalue, dpos = self._advance()
                if dkind != "number" or int(dvalue) == 0:
                    raise self._error("expected a nonzero denominator", dpos)
                return LaurentPoly.constant(self.names, Fraction(int(value), int(dvalue)))
            return LaurentPoly.constant(self.names, int(value))
        if kind == "name":
            if value not in self.names:
                raise self._error(f"unknown variable {value!r}, expected one of {', '.join(self.names)}", pos)
            return LaurentPoly.variable(self.names, value)
        if value == "(":
            inner = self._expr()
            if self._peek()[1] != ")":
                raise self._error("expected ')'")
            self._advance()
            return inner
        raise self._error("expected a number, a variable or '('" if kind != "end" else "unexpected end of input", pos)


def parse_laurent(text: str, names: Sequence[str], offset: int = 0) -> LaurentPoly:
    """Parse the canonical text form (and simple parenthesized products) over the given variables"""
    if not text.strip():
        raise ParseError("empty polynomial", offset, text)
    return _PolyParser(text, tuple(names), offset).parse()


def parse_matrix(rows: Iterable[Iterable[str]], names: Sequence[str]) -> List[List[LaurentPoly]]:
    return [[parse_laurent(entry, names) for entry in row] for row in rows]
