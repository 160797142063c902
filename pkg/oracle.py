"""
Numeric falsification of symbolic identities at random points of the maximal torus
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from expfunctor import ExponentialFunctor, derived_elements
from laurent import LaurentPoly
from reprings import EDGE_PAIRS, Localized, RingTag, ring_tag

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-8
REJECTION_THRESHOLD = 1e-6

GROUP_RINGS = {
    "su2": (RingTag.TORUS_SU2, RingTag.SU2),
    "su3": (RingTag.TORUS_SU3, RingTag.SU3, RingTag.U2, RingTag.PAIR),
}


@dataclass(frozen=True)
class TorusPoint:
    """Unit-modulus torus coordinates; (z, 1/z) for SU(2), (z1, z2, z3) with z1 z2 z3 = 1 for SU(3)"""
    group: str
    z: Tuple[complex, ...]
    seed: int


def sample_points(group: str, count: int, seed: int = 0,
                  F: Optional[ExponentialFunctor] = None) -> List[TorusPoint]:
    """Uniform angles from a seeded generator; with F given, points where |F(rho)| is tiny are redrawn"""
    if group not in GROUP_RINGS:
        raise ValueError(f"unknown group {group!r}")
    if count < 1:
        raise ValueError("at least one point is needed")
    rng = np.random.default_rng(seed)
    points: List[TorusPoint] = []
    rejected = 0
    while len(points) < count:
        if group == "su2":
            theta = rng.uniform(0.0, 2 * np.pi)
            z = complex(np.exp(1j * theta))
            point = TorusPoint(group, (z, 1 / z), seed)
        else:
            theta1, theta2 = rng.uniform(0.0, 2 * np.pi, size=2)
            z1, z2 = complex(np.exp(1j * theta1)), complex(np.exp(1j * theta2))
            point = TorusPoint(group, (z1, z2, complex(np.exp(-1j * (theta1 + theta2)))), seed)
        if F is not None and abs(_f_rho_value(F, point)) < REJECTION_THRESHOLD:
            rejected += 1
            continue
        points.append(point)
    if rejected > count // 10:
        logger.warning(f"Rejected {rejected} sample points near zeros of F(rho)")
    return points


def _f_rho_value(F: ExponentialFunctor, point: TorusPoint) -> complex:
    derived = derived_elements(F)
    unit = derived.F_rho_su2 if point.group == "su2" else derived.F_rho_su3
    return complex(evaluate(unit, [point])[0])


def _coordinates(tag: RingTag, points: Sequence[TorusPoint], edge: Tuple[int, int]) -> np.ndarray:
    z = np.array([p.z for p in points], dtype=complex)
    if tag == RingTag.TORUS_SU2:
        return z[:, :1]
    if tag == RingTag.SU2:
        return (z[:, 0] + z[:, 1])[:, None]
    if tag == RingTag.TORUS_SU3:
        return z[:, :2]
    if tag == RingTag.SU3:
        e1 = z[:, 0] + z[:, 1] + z[:, 2]
        e2 = z[:, 0] * z[:, 1] + z[:, 0] * z[:, 2] + z[:, 1] * z[:, 2]
        return np.stack([e1, e2], axis=1)
    j, k = (i - 1 for i in EDGE_PAIRS[edge])
    if tag == RingTag.U2:
        return np.stack([z[:, j] + z[:, k], z[:, j] * z[:, k]], axis=1)
    return np.stack([z[:, j], z[:, k]], axis=1)


def _evaluate_poly(p: LaurentPoly, coordinates: np.ndarray) -> np.ndarray:
    total = np.zeros(coordinates.shape[0], dtype=complex)
    for exps, c in p.terms.items():
        term = np.full(coordinates.shape[0], float(c), dtype=complex)
        for i, e in enumerate(exps):
            if e:
                term *= coordinates[:, i] ** e
        total += term
    return total


def evaluate(x: Union[LaurentPoly, Localized], points: Sequence[TorusPoint],
             edge: Tuple[int, int] = (0, 1)) -> np.ndarray:
    """Values of a ring element through the torus embedding of its ring; U(2) elements use the given edge"""
    tag = ring_tag(x)
    groups = {p.group for p in points}
    if len(groups) != 1 or tag not in GROUP_RINGS[groups.pop()]:
        raise ValueError(f"{tag.name} elements cannot be evaluated at these points")
    coordinates = _coordinates(tag, points, edge)
    if isinstance(x, Localized):
        return _evaluate_poly(x.numerator, coordinates) / _evaluate_poly(x.unit, coordinates) ** x.denom_exp
    return _evaluate_poly(x, coordinates)


@dataclass(frozen=True)
class OracleResult:
    max_abs_err: float
    passed: bool
    fraction_failed: float


def check_identity(lhs: Union[LaurentPoly, Localized], rhs: Union[LaurentPoly, Localized],
                   points: Sequence[TorusPoint], tolerance: float = DEFAULT_TOLERANCE,
                   edge: Tuple[int, int] = (0, 1), scaled: bool = False) -> OracleResult:
    """
    Compare two elements of the same ring numerically

    Args:
        lhs: Left-hand side, a polynomial or a Localized fraction
        rhs: Right-hand side in the same ring as lhs
        points: Torus points from sample_points, all of one group
        tolerance: Pass threshold on the error at every point
        edge: Edge used to embed U(2) and pair-ring elements
        scaled: Divide each error by max(1, |lhs|, |rhs|) before comparing

    Returns:
        OracleResult with the unscaled maximum error, the verdict and the failing fraction
    """
    if ring_tag(lhs) != ring_tag(rhs):
        raise ValueError(f"cannot compare {ring_tag(lhs).name} with {ring_tag(rhs).name}")
    left = evaluate(lhs, points, edge)
    right = evaluate(rhs, points, edge)
    error = np.abs(left - right)
    if scaled:
        error_used = error / np.maximum(1.0, np.maximum(np.abs(left), np.abs(right)))
    else:
        error_used = error
    failed = error_used >= tolerance
    return OracleResult(float(error.max()), not bool(failed.any()), float(failed.mean()))
