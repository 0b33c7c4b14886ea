"""
Root systems and weights in exact arithmetic
Epsilon-coordinate realizations of the finite types A, B, C, D, E6 and F4,
with the bilinear form normalized so that the highest root has square length 2
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple, Union

import numpy as np
import sympy

from src.utils.errors import (
    DimensionMismatchError,
    InternalInconsistencyError,
    NonDominantWeightError,
    UnsupportedLabelError,
)

logger = logging.getLogger('rootlie')

MAX_RANK = 16
HALF = Fraction(1, 2)

Rational = Union[int, Fraction]


class Series(Enum):
    """Cartan-Killing series"""
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"
    F = "F"


_MIN_RANK = {Series.A: 1, Series.B: 2, Series.C: 2, Series.D: 3}


@dataclass(frozen=True)
class SeriesLabel:
    """Type X_rank of a finite simple Lie algebra"""
    series: Series
    rank: int

    def __post_init__(self):
        if not isinstance(self.series, Series):
            try:
                object.__setattr__(self, 'series', Series(str(self.series).upper()))
            except ValueError:
                raise UnsupportedLabelError(f"Unknown series '{self.series}'")
        if not isinstance(self.rank, int) or isinstance(self.rank, bool):
            raise UnsupportedLabelError(f"Rank must be an integer, got {self.rank!r}")
        if self.series is Series.E and self.rank != 6:
            raise UnsupportedLabelError("Series E is supported only with rank 6")
        if self.series is Series.F and self.rank != 4:
            raise UnsupportedLabelError("Series F is supported only with rank 4")
        if self.series in _MIN_RANK:
            if self.rank < _MIN_RANK[self.series] or self.rank > MAX_RANK:
                raise UnsupportedLabelError(
                    f"{self.series.value}{self.rank} is outside the supported ranks "
                    f"{_MIN_RANK[self.series]}..{MAX_RANK}")

    @classmethod
    def parse(cls, text: str) -> "SeriesLabel":
        """Parse labels like 'E6' or 'd5'"""
        text = text.strip()
        if len(text) < 2 or not text[1:].isdigit():
            raise UnsupportedLabelError(f"Cannot parse series label '{text}'")
        return cls(text[0].upper(), int(text[1:]))

    def __str__(self) -> str:
        return f"{self.series.value}{self.rank}"


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, sympy.Basic):
        return Fraction(int(value.p), int(value.q))
    return Fraction(value)


@dataclass(frozen=True, order=True)
class Weight:
    """Exact rational vector in the epsilon realization"""
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, 'coords', tuple(_to_fraction(c) for c in self.coords))

    @classmethod
    def zero(cls, dim: int) -> "Weight":
        return cls((Fraction(0),) * dim)

    @classmethod
    def unit(cls, dim: int, index: int) -> "Weight":
        """The vector epsilon_{index+1} (index is 0-based)"""
        return cls(tuple(Fraction(1 if i == index else 0) for i in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def _check(self, other: "Weight") -> None:
        if self.dim != other.dim:
            raise DimensionMismatchError(
                f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def __mul__(self, scalar: Rational) -> "Weight":
        return Weight(tuple(a * scalar for a in self.coords))

    __rmul__ = __mul__

    def dot(self, other: "Weight") -> Fraction:
        """Standard Euclidean pairing of epsilon coordinates"""
        self._check(other)
        return sum((a * b for a, b in zip(self.coords, other.coords)), Fraction(0))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def to_strings(self) -> List[str]:
        return [str(c) for c in self.coords]

    def __str__(self) -> str:
        return "(" + ",".join(self.to_strings()) + ")"


@dataclass(frozen=True, eq=False)
class RootSystem:
    """
    Root datum of one finite type

    Positive roots are ordered by height, then lexicographically by epsilon
    coordinates. The stored form is form_scale times the Euclidean pairing.
    """
    label: SeriesLabel
    simple_roots: Tuple[Weight, ...]
    positive_roots: Tuple[Weight, ...]
    fundamental_weights: Tuple[Weight, ...]
    rho: Weight
    coxeter_dual: int
    dim_algebra: int
    form_scale: Fraction
    cartan_matrix: np.ndarray = field(repr=False)
    coefficients: Dict[Weight, Tuple[int, ...]] = field(repr=False)
    root_set: frozenset = field(repr=False)

    @property
    def rank(self) -> int:
        return self.label.rank

    @property
    def ambient_dim(self) -> int:
        return self.rho.dim

    @property
    def roots(self) -> Tuple[Weight, ...]:
        """All roots: positive roots followed by their negatives"""
        return self.positive_roots + tuple(-r for r in self.positive_roots)

    @property
    def highest_root(self) -> Weight:
        return self.positive_roots[-1]

    def is_root(self, weight: Weight) -> bool:
        return weight in self.root_set

    def is_positive(self, root: Weight) -> bool:
        return root in self.coefficients

    def height(self, root: Weight) -> int:
        if root in self.coefficients:
            return sum(self.coefficients[root])
        return -sum(self.coefficients[-root])

    def root_coefficients(self, root: Weight) -> Tuple[int, ...]:
        """Coordinates of a root in the basis of simple roots"""
        if root in self.coefficients:
            return self.coefficients[root]
        return tuple(-c for c in self.coefficients[-root])

    def form(self, a: Weight, b: Weight) -> Fraction:
        return self.form_scale * a.dot(b)

    def coroot_pairing(self, weight: Weight, i: int) -> Fraction:
        """<weight, alpha_i coroot>"""
        alpha = self.simple_roots[i]
        return 2 * weight.dot(alpha) / alpha.dot(alpha)

    def dynkin_labels(self, weight: Weight) -> Tuple[Fraction, ...]:
        return tuple(self.coroot_pairing(weight, i) for i in range(self.rank))

    def is_dominant_integral(self, weight: Weight) -> bool:
        return all(c.denominator == 1 and c >= 0 for c in self.dynkin_labels(weight))

    def from_fundamental(self, coeffs: Sequence[Rational]) -> Weight:
        """The weight sum c_i omega_i"""
        if len(coeffs) != self.rank:
            raise DimensionMismatchError(
                f"dimension mismatch: expected {self.rank} fundamental coordinates, got {len(coeffs)}")
        total = Weight.zero(self.ambient_dim)
        for c, omega in zip(coeffs, self.fundamental_weights):
            if c:
                total = total + omega * Fraction(c)
        return total

    def project(self, weight: Weight) -> Weight:
        """Orthogonal projection onto the span of the roots"""
        return self.from_fundamental(self.dynkin_labels(weight))

    def simple_reflection(self, i: int, weight: Weight) -> Weight:
        return weight - self.simple_roots[i] * self.coroot_pairing(weight, i)

    def coroot_in_simple_coroots(self, root: Weight) -> Tuple[Fraction, ...]:
        """Coordinates of the coroot of root in the basis of simple coroots"""
        norm = root.dot(root)
        return tuple(Fraction(k) * self.simple_roots[i].dot(self.simple_roots[i]) / norm
                     for i, k in enumerate(self.root_coefficients(root)))


def _vector(*values) -> Tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


def _epsilon_difference(dim: int, i: int, j: int, sign: int = -1) -> Tuple[Fraction, ...]:
    coords = [Fraction(0)] * dim
    coords[i] += 1
    coords[j] += sign
    return tuple(coords)


def _simple_roots(label: SeriesLabel) -> List[Tuple[Fraction, ...]]:
    """Bourbaki simple roots in epsilon coordinates"""
    n = label.rank
    s = label.series
    if s is Series.A:
        return [_epsilon_difference(n + 1, i, i + 1) for i in range(n)]
    if s in (Series.B, Series.C, Series.D):
        roots = [_epsilon_difference(n, i, i + 1) for i in range(n - 1)]
        last = [Fraction(0)] * n
        if s is Series.B:
            last[n - 1] = Fraction(1)
        elif s is Series.C:
            last[n - 1] = Fraction(2)
        else:
            last[n - 2] = Fraction(1)
            last[n - 1] = Fraction(1)
        roots.append(tuple(last))
        return roots
    if s is Series.E:
        return [
            tuple(HALF * c for c in (1, -1, -1, -1, -1, -1, -1, 1)),
            _vector(1, 1, 0, 0, 0, 0, 0, 0),
            _vector(-1, 1, 0, 0, 0, 0, 0, 0),
            _vector(0, -1, 1, 0, 0, 0, 0, 0),
            _vector(0, 0, -1, 1, 0, 0, 0, 0),
            _vector(0, 0, 0, -1, 1, 0, 0, 0),
        ]
    # F4
    return [
        _vector(0, 1, -1, 0),
        _vector(0, 0, 1, -1),
        _vector(0, 0, 0, 1),
        tuple(HALF * c for c in (1, -1, -1, -1)),
    ]


def _positive_roots(simple: List[Weight]) -> Dict[Weight, Tuple[int, ...]]:
    """Generate positive roots by simple root strings, layer by height"""
    rank = len(simple)
    coefficients: Dict[Weight, Tuple[int, ...]] = {}
    layer = []
    for i, alpha in enumerate(simple):
        coefficients[alpha] = tuple(1 if j == i else 0 for j in range(rank))
        layer.append(alpha)
    while layer:
        next_layer = []
        for beta in sorted(layer):
            for i, alpha in enumerate(simple):
                p = 0
                while beta - alpha * (p + 1) in coefficients:
                    p += 1
                q = p - 2 * beta.dot(alpha) / alpha.dot(alpha)
                gamma = beta + alpha
                if q > 0 and gamma not in coefficients:
                    coeffs = list(coefficients[beta])
                    coeffs[i] += 1
                    coefficients[gamma] = tuple(coeffs)
                    next_layer.append(gamma)
        layer = next_layer
    return coefficients


def _fundamental_weights(simple: List[Weight], cartan: np.ndarray) -> List[Weight]:
    # omega_i = sum_k c_ik alpha_k with c = (A^T)^{-1}
    inverse = sympy.Matrix(cartan.tolist()).T.inv()
    dim = simple[0].dim
    weights = []
    for i in range(len(simple)):
        total = Weight.zero(dim)
        for k, alpha in enumerate(simple):
            c = _to_fraction(inverse[i, k])
            if c:
                total = total + alpha * c
        weights.append(total)
    return weights


@lru_cache(maxsize=None)
def build_root_system(label: SeriesLabel) -> RootSystem:
    """Build the complete root datum for a supported type

    Args:
        label: Series and rank

    Returns:
        RootSystem: Roots, weights, rho and dual Coxeter number

    Raises:
        UnsupportedLabelError: If the label is outside the supported table
    """
    if not isinstance(label, SeriesLabel):
        raise UnsupportedLabelError(f"Expected a SeriesLabel, got {label!r}")
    simple = [Weight(c) for c in _simple_roots(label)]
    rank = len(simple)
    cartan = np.array(
        [[int(2 * a.dot(b) / a.dot(a)) for b in simple] for a in simple], dtype=np.int64)

    coefficients = _positive_roots(simple)
    positive = sorted(coefficients, key=lambda r: (sum(coefficients[r]), r.coords))
    theta = positive[-1]
    form_scale = Fraction(2) / theta.dot(theta)

    dim = simple[0].dim
    rho = Weight.zero(dim)
    for root in positive:
        rho = rho + root
    rho = rho * HALF

    fundamental = _fundamental_weights(simple, cartan)
    omega_sum = Weight.zero(dim)
    for omega in fundamental:
        omega_sum = omega_sum + omega
    if omega_sum != rho:
        raise InternalInconsistencyError(
            f"rho {rho} differs from the sum of fundamental weights {omega_sum} for {label}")

    dual = 1 + form_scale * rho.dot(theta)
    if dual.denominator != 1:
        raise InternalInconsistencyError(f"Non-integral dual Coxeter number {dual} for {label}")

    root_set = frozenset(positive) | frozenset(-r for r in positive)
    rs = RootSystem(
        label=label,
        simple_roots=tuple(simple),
        positive_roots=tuple(positive),
        fundamental_weights=tuple(fundamental),
        rho=rho,
        coxeter_dual=int(dual),
        dim_algebra=2 * len(positive) + rank,
        form_scale=form_scale,
        cartan_matrix=cartan,
        coefficients={r: coefficients[r] for r in positive},
        root_set=root_set,
    )
    logger.info(f"Built root system {label}: {len(positive)} positive roots, "
                f"dim {rs.dim_algebra}, dual Coxeter {rs.coxeter_dual}")
    return rs


def inner_product(rs: RootSystem, a: Weight, b: Weight) -> Fraction:
    """Normalized invariant form, (theta, theta) = 2

    Raises:
        DimensionMismatchError: If either weight is not in the realization of rs
    """
    if a.dim != rs.ambient_dim or b.dim != rs.ambient_dim:
        raise DimensionMismatchError(
            f"dimension mismatch: {rs.label} lives in dimension {rs.ambient_dim}")
    return rs.form(a, b)


def require_dominant_integral(rs: RootSystem, weight: Weight) -> None:
    if weight.dim != rs.ambient_dim:
        raise DimensionMismatchError(
            f"dimension mismatch: {rs.label} lives in dimension {rs.ambient_dim}")
    if not rs.is_dominant_integral(weight):
        raise NonDominantWeightError(
            f"{weight} is not dominant integral for {rs.label} "
            f"(Dynkin labels {[str(c) for c in rs.dynkin_labels(weight)]})")


def weyl_dimension(rs: RootSystem, lam: Weight) -> int:
    """Dimension of the irreducible module with highest weight lam

    Raises:
        NonDominantWeightError: If lam is not dominant integral
    """
    require_dominant_integral(rs, lam)
    shifted = lam + rs.rho
    value = Fraction(1)
    for alpha in rs.positive_roots:
        value *= shifted.dot(alpha) / rs.rho.dot(alpha)
    if value.denominator != 1:
        raise InternalInconsistencyError(f"Weyl dimension {value} is not an integer")
    return int(value)


def weights_from_fundamental(rs: RootSystem, rows: Iterable[Sequence[Rational]]) -> List[Weight]:
    return [rs.from_fundamental(row) for row in rows]
