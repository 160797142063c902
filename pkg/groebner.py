"""
Groebner bases for ideals and submodules of free modules over Q[x, y]

Polynomials are sympy PolyElements of a grevlex ring. A module element is a
tuple of them; its leading term is the leading term of its first nonzero
component (position over term, earlier positions larger). Kernels and colon
modules come from eliminating the leading block of an augmented module.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Set, Tuple, Union

import sympy as sp
from sympy.polys.monomials import monomial_div, monomial_lcm, monomial_mul

from laurent import LaurentPoly

logger = logging.getLogger(__name__)

DEFAULT_STEP_LIMIT = 10 ** 6
INFINITE = "infinite"

Vector = Tuple[sp.polys.rings.PolyElement, ...]
Lead = Tuple[int, Tuple[int, ...], object]


class StepLimitExceeded(RuntimeError):
    """Raised when a basis computation needs more reduction steps than allowed"""

    def __init__(self, limit: int, basis_size: int):
        self.limit = limit
        self.basis_size = basis_size
        super().__init__(f"Groebner step limit {limit} exceeded with {basis_size} basis elements")


@lru_cache(maxsize=None)
def polynomial_ring(names: Tuple[str, ...]):
    ring = sp.ring(",".join(names), sp.QQ, sp.grevlex)[0]
    return ring


SU3_RING = polynomial_ring(("s1", "s2"))
TORUS_RING = polynomial_ring(("t1", "t2"))


def ring_names(ring) -> Tuple[str, ...]:
    return tuple(str(symbol) for symbol in ring.symbols)


def to_sympy(p: LaurentPoly, ring=SU3_RING):
    if p.names != ring_names(ring):
        raise ValueError(f"{p} is not over {ring_names(ring)}")
    if not p.is_polynomial():
        raise ValueError(f"{p} has negative exponents")
    domain = ring.domain
    return ring.from_dict({exps: domain(Fraction(c).numerator, Fraction(c).denominator)
                           for exps, c in p.terms.items()})


def from_sympy(p, names: Optional[Sequence[str]] = None) -> LaurentPoly:
    names = tuple(names) if names else ring_names(p.ring)
    return LaurentPoly(names, {exps: Fraction(int(c.numerator), int(c.denominator)) for exps, c in p.terms()})


def _convert(value, ring):
    if isinstance(value, LaurentPoly):
        return to_sympy(value, ring)
    if isinstance(value, (int, Fraction)):
        value = Fraction(value)
        return ring.from_dict({(0,) * ring.ngens: ring.domain(value.numerator, value.denominator)})
    if getattr(value, "ring", None) == ring:
        return value
    raise TypeError(f"cannot use {value!r} as an element of {ring}")


# ============================================================================
# VECTOR ARITHMETIC
# ============================================================================

def _lead(v: Vector) -> Optional[Lead]:
    for pos, p in enumerate(v):
        if p:
            return pos, p.LM, p.LC
    return None


def _scaled(v: Vector, monom, coeff) -> Vector:
    return tuple(p.mul_term((monom, coeff)) for p in v)


def _sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def _monic(v: Vector) -> Vector:
    _, _, c = _lead(v)
    return tuple(p.quo_ground(c) for p in v)


class _Steps:

    def __init__(self, limit: int):
        self.limit = limit
        self.count = 0
        self.basis_size = 0

    def tick(self):
        self.count += 1
        if self.count > self.limit:
            raise StepLimitExceeded(self.limit, self.basis_size)


def _find_reducer(pos: int, monom, basis: Sequence[Vector], leads: Sequence[Lead]):
    for g, (g_pos, g_monom, g_coeff) in zip(basis, leads):
        if g_pos == pos:
            quotient = monomial_div(monom, g_monom)
            if quotient is not None:
                return g, quotient, g_coeff
    return None


def _top_reduce(v: Vector, basis: Sequence[Vector], leads: Sequence[Lead], steps: _Steps) -> Vector:
    while True:
        lead = _lead(v)
        if lead is None:
            return v
        pos, monom, coeff = lead
        found = _find_reducer(pos, monom, basis, leads)
        if found is None:
            return v
        g, quotient, g_coeff = found
        v = _sub(v, _scaled(g, quotient, coeff / g_coeff))
        steps.tick()


def _normal_form(v: Vector, basis: Sequence[Vector], leads: Sequence[Lead], ring, steps: _Steps) -> Vector:
    remainder = [ring.zero] * len(v)
    while True:
        lead = _lead(v)
        if lead is None:
            return tuple(remainder)
        pos, monom, coeff = lead
        found = _find_reducer(pos, monom, basis, leads)
        if found is None:
            term = ring.from_dict({monom: coeff})
            remainder[pos] = remainder[pos] + term
            v = v[:pos] + (v[pos] - term,) + v[pos + 1:]
        else:
            g, quotient, g_coeff = found
            v = _sub(v, _scaled(g, quotient, coeff / g_coeff))
            steps.tick()


# ============================================================================
# BUCHBERGER
# ============================================================================

def _update(leads: Sequence[Lead], pairs: Set[Tuple[int, int]], new: int, rank: int, ring) -> Set[Tuple[int, int]]:
    """Gebauer-Moeller pair update, restricted to leads in the same position"""
    pos, monom = leads[new][0], leads[new][1]

    kept = set()
    for i, j in pairs:
        if leads[i][0] != pos:
            kept.add((i, j))
            continue
        lij = monomial_lcm(leads[i][1], leads[j][1])
        if (monomial_div(lij, monom) is None
                or lij == monomial_lcm(leads[i][1], monom)
                or lij == monomial_lcm(leads[j][1], monom)):
            kept.add((i, j))

    by_lcm = {}
    for i in range(new):
        if leads[i][0] == pos:
            by_lcm.setdefault(monomial_lcm(leads[i][1], monom), []).append(i)
    minimal = []
    for lcm in sorted(by_lcm, key=ring.order):
        if all(monomial_div(lcm, other) is None for other in minimal):
            minimal.append(lcm)
    for lcm in minimal:
        # coprime leading monomials only certify the pair for ideals
        if rank == 1 and any(monomial_mul(leads[i][1], monom) == lcm for i in by_lcm[lcm]):
            continue
        kept.add((min(by_lcm[lcm]), new))
    return kept


def _buchberger(generators: Sequence[Vector], rank: int, ring, step_limit: int) -> Tuple[Vector, ...]:
    steps = _Steps(step_limit)
    basis: List[Vector] = []
    leads: List[Lead] = []
    pairs: Set[Tuple[int, int]] = set()

    def add(v: Vector):
        nonlocal pairs
        v = _monic(v)
        basis.append(v)
        leads.append(_lead(v))
        steps.basis_size = len(basis)
        pairs = _update(leads, pairs, len(basis) - 1, rank, ring)

    for g in generators:
        g = _top_reduce(g, basis, leads, steps)
        if _lead(g) is not None:
            add(g)

    while pairs:
        def key(pair):
            lcm = monomial_lcm(leads[pair[0]][1], leads[pair[1]][1])
            return (sum(lcm), ring.order(lcm), leads[pair[0]][0], pair)

        i, j = min(pairs, key=key)
        pairs.discard((i, j))
        lcm = monomial_lcm(leads[i][1], leads[j][1])
        one = ring.domain.one
        s = _sub(_scaled(basis[i], monomial_div(lcm, leads[i][1]), one),
                 _scaled(basis[j], monomial_div(lcm, leads[j][1]), one))
        steps.tick()
        r = _top_reduce(s, basis, leads, steps)
        if _lead(r) is not None:
            add(r)

    logger.debug(f"Buchberger finished after {steps.count} steps with {len(basis)} elements")
    return _reduce_basis(basis, ring, steps)


def _sort_key(ring):
    def key(v: Vector):
        pos, monom, _ = _lead(v)
        return (pos, ring.order(monom))
    return key


def _reduce_basis(basis: Sequence[Vector], ring, steps: _Steps) -> Tuple[Vector, ...]:
    minimal: List[Vector] = []
    for v in sorted(basis, key=_sort_key(ring)):
        pos, monom, _ = _lead(v)
        if all(not (_lead(g)[0] == pos and monomial_div(monom, _lead(g)[1]) is not None) for g in minimal):
            minimal.append(v)
    reduced = []
    for index, v in enumerate(minimal):
        others = minimal[:index] + minimal[index + 1:]
        nf = _normal_form(v, others, [_lead(g) for g in others], ring, steps)
        reduced.append(_monic(nf))
    return tuple(sorted(reduced, key=_sort_key(ring)))


# ============================================================================
# SUBMODULES AND IDEALS
# ============================================================================

class Submodule:
    """Submodule of the free module of the given rank; the reduced basis is computed on demand"""

    def __init__(self, generators: Iterable[Sequence], rank: int, ring=SU3_RING,
                 step_limit: int = DEFAULT_STEP_LIMIT):
        self.ring = ring
        self.rank = rank
        self.step_limit = step_limit
        vectors = []
        for g in generators:
            v = tuple(_convert(c, ring) for c in g)
            if len(v) != rank:
                raise ValueError(f"generator of length {len(v)} in a rank-{rank} module")
            if _lead(v) is not None:
                vectors.append(v)
        self.generators: Tuple[Vector, ...] = tuple(vectors)
        self._basis: Optional[Tuple[Vector, ...]] = None

    def _new(self, vectors: Iterable[Vector]) -> "Submodule":
        return Submodule(vectors, self.rank, self.ring, self.step_limit)

    @property
    def basis(self) -> Tuple[Vector, ...]:
        if self._basis is None:
            self._basis = _buchberger(self.generators, self.rank, self.ring, self.step_limit)
            logger.info(f"Reduced basis of a rank-{self.rank} module: {len(self.generators)} generators"
                        f" -> {len(self._basis)} elements")
        return self._basis

    def _leads(self) -> List[Lead]:
        return [_lead(v) for v in self.basis]

    def normal_form(self, v: Sequence) -> Vector:
        v = tuple(_convert(c, self.ring) for c in v)
        return _normal_form(v, self.basis, self._leads(), self.ring, _Steps(self.step_limit))

    def contains_vector(self, v: Sequence) -> bool:
        v = tuple(_convert(c, self.ring) for c in v)
        return _lead(_top_reduce(v, self.basis, self._leads(), _Steps(self.step_limit))) is None

    def contains(self, other: "Submodule") -> bool:
        if other.rank != self.rank:
            raise ValueError(f"rank mismatch: {self.rank} and {other.rank}")
        return all(self.contains_vector(v) for v in other.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def is_groebner(self) -> bool:
        """Every S-vector of the basis reduces to zero"""
        basis, leads = self.basis, self._leads()
        steps = _Steps(self.step_limit)
        one = self.ring.domain.one
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                if leads[i][0] != leads[j][0]:
                    continue
                lcm = monomial_lcm(leads[i][1], leads[j][1])
                s = _sub(_scaled(basis[i], monomial_div(lcm, leads[i][1]), one),
                         _scaled(basis[j], monomial_div(lcm, leads[j][1]), one))
                if _lead(_top_reduce(s, basis, leads, steps)) is not None:
                    return False
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, Submodule):
            return NotImplemented
        return self.rank == other.rank and self.basis == other.basis

    __hash__ = None

    def colon(self, f) -> "Submodule":
        """{v : f*v in self}"""
        f = _convert(f, self.ring)
        if not f:
            raise ValueError("colon by zero")
        r = self.rank
        zero, one = self.ring.zero, self.ring.one
        vectors = []
        for j in range(r):
            head = tuple(f if k == j else zero for k in range(r))
            tail = tuple(one if k == j else zero for k in range(r))
            vectors.append(head + tail)
        for g in self.basis:
            vectors.append(tuple(g) + (zero,) * r)
        return self._new(_eliminate(vectors, r, self.ring, self.step_limit))

    def saturate(self, f) -> "Submodule":
        """self : f^infinity by repeated colons"""
        f = _convert(f, self.ring)
        if not f:
            raise ValueError("saturation by zero")
        if f.is_ground:
            return self
        current = self
        rounds = 0
        while True:
            rounds += 1
            following = current.colon(f)
            if current.contains(following):
                logger.info(f"Saturation stabilized after {rounds} colon rounds")
                return current
            current = following

    def quotient_dimension(self) -> Union[int, str]:
        """Q-dimension of (free module)/self, counted on the staircase of each position"""
        if self.ring.ngens != 2:
            raise ValueError("staircase counting is implemented for two variables")
        total = 0
        leads = self._leads()
        for pos in range(self.rank):
            monomials = [m for p, m, _ in leads if p == pos]
            x_powers = [m[0] for m in monomials if m[1] == 0]
            y_powers = [m[1] for m in monomials if m[0] == 0]
            if not x_powers or not y_powers:
                return INFINITE
            for a in range(min(x_powers)):
                for b in range(min(y_powers)):
                    if all(monomial_div((a, b), m) is None for m in monomials):
                        total += 1
        return total

    def generators_text(self) -> List[List[str]]:
        names = ring_names(self.ring)
        return [[from_sympy(p, names).to_text() for p in v] for v in self.basis]


class Ideal(Submodule):
    """Ideal of the polynomial ring, a rank-one submodule"""

    def __init__(self, generators: Iterable, ring=SU3_RING, step_limit: int = DEFAULT_STEP_LIMIT):
        super().__init__([(g,) for g in generators], 1, ring, step_limit)

    def _new(self, vectors: Iterable[Vector]) -> "Ideal":
        return Ideal([v[0] for v in vectors], self.ring, self.step_limit)

    @property
    def polynomials(self) -> Tuple:
        return tuple(v[0] for v in self.basis)

    def contains_element(self, f) -> bool:
        return self.contains_vector((f,))

    def reduce(self, f):
        return self.normal_form((f,))[0]

    def laurent_basis(self) -> List[LaurentPoly]:
        names = ring_names(self.ring)
        return [from_sympy(p, names) for p in self.polynomials]

    def is_unit(self) -> bool:
        return any(p.is_ground for p in self.polynomials)


# ============================================================================
# OPERATIONS
# ============================================================================

def _eliminate(vectors: Sequence[Vector], keep_from: int, ring, step_limit: int) -> List[Vector]:
    """Basis elements supported on positions >= keep_from, truncated to that block"""
    basis = _buchberger(vectors, len(vectors[0]), ring, step_limit)
    return [v[keep_from:] for v in basis if not any(v[:keep_from])]


def groebner_basis(generators: Sequence, ring=SU3_RING, step_limit: int = DEFAULT_STEP_LIMIT) -> List[LaurentPoly]:
    """Reduced grevlex basis of the ideal generated by the given polynomials"""
    return Ideal(generators, ring, step_limit).laurent_basis()


def saturate(module: Submodule, f) -> Submodule:
    return module.saturate(f)


def quotient_dimension(module: Submodule) -> Union[int, str]:
    return module.quotient_dimension()


def submodule_contains(a: Submodule, b: Submodule) -> bool:
    return a.contains(b)


def image(matrix: Sequence[Sequence], ring=SU3_RING, step_limit: int = DEFAULT_STEP_LIMIT) -> Submodule:
    """Submodule spanned by the columns of an m x n matrix"""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    return Submodule([[matrix[i][j] for i in range(m)] for j in range(n)], m, ring, step_limit)


def kernel(matrix: Sequence[Sequence], ring=SU3_RING, step_limit: int = DEFAULT_STEP_LIMIT) -> Submodule:
    """Syzygies of the columns of an m x n matrix, as a submodule of rank n"""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    zero, one = ring.zero, ring.one
    vectors = []
    for j in range(n):
        column = tuple(_convert(matrix[i][j], ring) for i in range(m))
        unit = tuple(one if k == j else zero for k in range(n))
        vectors.append(column + unit)
    return Submodule(_eliminate(vectors, m, ring, step_limit), n, ring, step_limit)
