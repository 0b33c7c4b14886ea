"""
Weyl vertex algebra M_l
Fock-space bases by conformal degree and charge, Weyl modes a_i^{+-}(r),
normally ordered gl(l) currents, the conformal vectors, singular-vector
scans and graded characters of the charge sectors.
"""

import logging
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.lie.chevalley import LieAlgebra, build_lie_algebra
from src.lie.rootlie import Series, SeriesLabel, weyl_dimension
from src.utils.errors import (
    BoundExceededError,
    NonIntegralQuotientError,
    UnsupportedLabelError,
)
from src.utils.linalg import add_scaled, kernel

logger = logging.getLogger('fock')

HALF = Fraction(1, 2)
DEFAULT_MAX_RANK = 6
DEFAULT_SCAN_DEGREE = Fraction(3)
DEFAULT_BASIS_BOUND = 10 ** 6


class Sign(IntEnum):
    """Which of the two fields a^+ or a^- a mode belongs to"""
    MINUS = -1
    PLUS = 1


@dataclass(frozen=True, order=True)
class WeylMode:
    """a_species^sign(index), index in 1/2 + Z"""
    index: Fraction
    species: int
    sign: Sign

    def __post_init__(self):
        index = Fraction(self.index)
        if (2 * index).denominator != 1 or (2 * index).numerator % 2 == 0:
            raise ValueError(f"Weyl mode index must lie in 1/2 + Z, got {index}")
        if self.species < 1:
            raise ValueError(f"Species must be positive, got {self.species}")
        object.__setattr__(self, 'index', index)
        object.__setattr__(self, 'sign', Sign(self.sign))

    @property
    def is_creation(self) -> bool:
        return self.index < 0

    def __str__(self) -> str:
        return f"a{self.species}{'+' if self.sign is Sign.PLUS else '-'}({self.index})"


# canonical sorted tuple of creation modes; () is the vacuum
FockMonomial = Tuple[WeylMode, ...]
VACUUM: FockMonomial = ()

Terms = Dict[FockMonomial, Fraction]


def monomial_degree(monomial: FockMonomial) -> Fraction:
    return -sum((m.index for m in monomial), Fraction(0))


def monomial_charge(monomial: FockMonomial) -> int:
    return sum(int(m.sign) for m in monomial)


def gl_weight(rank: int, monomial: FockMonomial) -> Tuple[int, ...]:
    """gl(rank) weight: a_i^+ adds e_i, a_i^- subtracts e_i"""
    weight = [0] * rank
    for m in monomial:
        weight[m.species - 1] += int(m.sign)
    return tuple(weight)


def monomial_name(monomial: FockMonomial) -> str:
    return "*".join(str(m) for m in monomial) if monomial else "1"


class FockVector:
    """Finite rational combination of Fock monomials"""

    def __init__(self, terms: Optional[Dict[FockMonomial, Fraction]] = None):
        self.terms: Terms = {m: Fraction(c) for m, c in (terms or {}).items() if c}

    @classmethod
    def vacuum(cls) -> "FockVector":
        return cls({VACUUM: Fraction(1)})

    @classmethod
    def of(cls, modes: Iterable[WeylMode]) -> "FockVector":
        """The vector obtained by applying creation modes to the vacuum"""
        modes = tuple(sorted(modes))
        if any(not m.is_creation for m in modes):
            raise ValueError("FockVector.of takes creation modes only")
        return cls({modes: Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: "FockVector") -> "FockVector":
        return FockVector(add_scaled(dict(self.terms), other.terms, 1))

    def __sub__(self, other: "FockVector") -> "FockVector":
        return FockVector(add_scaled(dict(self.terms), other.terms, -1))

    def __mul__(self, scalar) -> "FockVector":
        return FockVector({m: c * scalar for m, c in self.terms.items()})

    __rmul__ = __mul__

    def __neg__(self) -> "FockVector":
        return self * -1

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"FockVector({len(self.terms)} terms)"

    def degrees(self) -> set:
        return {monomial_degree(m) for m in self.terms}

    def charges(self) -> set:
        return {monomial_charge(m) for m in self.terms}

    def to_dict(self) -> Dict[str, str]:
        return {monomial_name(m): str(c) for m, c in sorted(self.terms.items())}


@dataclass(frozen=True)
class SectorIndex:
    """Charge sector M_l^(s) truncated at conformal degree D"""
    rank: int
    charge: int
    cutoff: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'cutoff', Fraction(self.cutoff))
        if self.rank < 1:
            raise UnsupportedLabelError(f"Fock rank must be positive, got {self.rank}")
        if (2 * self.cutoff).denominator != 1 or self.cutoff < 0:
            raise ValueError(f"Degree cutoff must lie in 1/2 Z >= 0, got {self.cutoff}")

    @property
    def lowest_degree(self) -> Fraction:
        return Fraction(abs(self.charge), 2)

    def degrees(self) -> List[Fraction]:
        """Degrees |s|/2 + n with n >= 0 up to the cutoff"""
        result = []
        d = self.lowest_degree
        while d <= self.cutoff:
            result.append(d)
            d += 1
        return result


# Weyl modes

def _insert(monomial: FockMonomial, mode: WeylMode) -> FockMonomial:
    modes = list(monomial)
    pos = 0
    while pos < len(modes) and modes[pos] < mode:
        pos += 1
    modes.insert(pos, mode)
    return tuple(modes)


def _mode_on_monomial(mode: WeylMode, monomial: FockMonomial) -> Terms:
    if mode.is_creation:
        return {_insert(monomial, mode): Fraction(1)}
    # a^+(r) = d/da^-(-r), a^-(r) = -d/da^+(-r) for r > 0
    partner = WeylMode(-mode.index, mode.species, Sign(-mode.sign))
    count = monomial.count(partner)
    if not count:
        return {}
    pos = monomial.index(partner)
    reduced = monomial[:pos] + monomial[pos + 1:]
    coefficient = count if mode.sign is Sign.PLUS else -count
    return {reduced: Fraction(coefficient)}


def _apply_mode_terms(mode: WeylMode, terms: Terms) -> Terms:
    result: Terms = {}
    for monomial, c in terms.items():
        add_scaled(result, _mode_on_monomial(mode, monomial), c)
    return result


def apply_weyl_mode(rank: int, mode: WeylMode, v: FockVector) -> FockVector:
    """Apply a_i^{+-}(r) to a Fock vector

    Creation modes multiply; annihilation modes contract with the matching
    creation mode of opposite sign and species.
    """
    if mode.species > rank:
        raise UnsupportedLabelError(f"Species {mode.species} exceeds rank {rank}")
    return FockVector(_apply_mode_terms(mode, v.terms))


# Currents

GlElement = Dict[Tuple[int, int], Fraction]
CurrentSpec = Union[str, Tuple[int, int], GlElement]


def gl_unit(i: int, j: int) -> GlElement:
    """The current X_ij = :a_i^+ a_j^-:, species 1-based"""
    return {(i, j): Fraction(1)}


def heisenberg_element(rank: int) -> GlElement:
    """H = -sum_i X_ii"""
    return {(i, i): Fraction(-1) for i in range(1, rank + 1)}


def gl_bracket(x: GlElement, y: GlElement) -> GlElement:
    """Zero-mode bracket [X_ij, X_kl] = d_il X_kj - d_jk X_il"""
    result: GlElement = {}
    for (i, j), a in x.items():
        for (k, l), b in y.items():
            if i == l:
                add_scaled(result, {(k, j): Fraction(1)}, a * b)
            if j == k:
                add_scaled(result, {(i, l): Fraction(1)}, -a * b)
    return result


def _as_gl(rank: int, x: CurrentSpec) -> GlElement:
    if isinstance(x, str):
        if x.upper() != "H":
            raise UnsupportedLabelError(f"Unknown current '{x}'")
        return heisenberg_element(rank)
    if isinstance(x, tuple):
        x = gl_unit(*x)
    for (i, j) in x:
        if not (1 <= i <= rank and 1 <= j <= rank):
            raise UnsupportedLabelError(f"Current X_{i}{j} outside rank {rank}")
    return x


def _odd_halves_between(low: Fraction, high: Fraction) -> List[Fraction]:
    """All r in 1/2 + Z with low < r < high"""
    r = math.floor(low) + HALF
    if r <= low:
        r += 1
    result = []
    while r < high:
        result.append(r)
        r += 1
    return result


@lru_cache(maxsize=200000)
def _unit_current(i: int, j: int, n: int, monomial: FockMonomial) -> Tuple[Tuple[FockMonomial, Fraction], ...]:
    # X_ij(n) = sum_r :a_i^+(r) a_j^-(n - r):, annihilating a_i^+(r > 0) moved right
    candidates = set(_odd_halves_between(Fraction(n), Fraction(0)))
    for m in monomial:
        if m.species == j and m.sign is Sign.PLUS:
            candidates.add(n + m.index)
        if m.species == i and m.sign is Sign.MINUS:
            candidates.add(-m.index)
    result: Terms = {}
    for r in sorted(candidates):
        plus = WeylMode(r, i, Sign.PLUS)
        minus = WeylMode(n - r, j, Sign.MINUS)
        first, second = (plus, minus) if r > 0 else (minus, plus)
        terms = _mode_on_monomial(first, monomial)
        if terms:
            add_scaled(result, _apply_mode_terms(second, terms), 1)
    return tuple(sorted(result.items()))


def _current_terms(x: GlElement, n: int, terms: Terms) -> Terms:
    result: Terms = {}
    for monomial, c in terms.items():
        for (i, j), a in x.items():
            for target, b in _unit_current(i, j, n, monomial):
                add_scaled(result, {target: b}, a * c)
    return result


def apply_current(rank: int, x: CurrentSpec, n: int, v: FockVector) -> FockVector:
    """Apply the mode x(n) of a gl(rank) current

    Args:
        rank: Number of Weyl pairs
        x: 'H', a species pair (i, j) for X_ij, or a combination {(i, j): c}
        n: Mode index; the result has conformal degree lowered by n
        v: Vector acted on

    Returns:
        FockVector: x(n) v
    """
    return FockVector(_current_terms(_as_gl(rank, x), n, v.terms))


# gl(l) realization of the Chevalley basis of sl(l)

@lru_cache(maxsize=None)
def _chevalley_images(rank: int) -> Tuple[LieAlgebra, Tuple[GlElement, ...]]:
    alg = build_lie_algebra(SeriesLabel(Series.A, rank - 1))
    rs = alg.rs
    images: Dict[int, GlElement] = {}
    for i in range(rs.rank):
        alpha = rs.simple_roots[i]
        images[alg.index_of_root(alpha)] = gl_unit(i + 1, i + 2)
        images[alg.index_of_root(-alpha)] = gl_unit(i + 2, i + 1)
        images[alg.cartan_index(i)] = {(i + 2, i + 2): Fraction(1), (i + 1, i + 1): Fraction(-1)}
    for xi in rs.positive_roots:
        if xi in alg.constants.extraspecial:
            alpha, beta = alg.constants.extraspecial[xi]
            n = alg.constants.n(alpha, beta)
            e = gl_bracket(images[alg.index_of_root(alpha)], images[alg.index_of_root(beta)])
            f = gl_bracket(images[alg.index_of_root(-alpha)], images[alg.index_of_root(-beta)])
            images[alg.index_of_root(xi)] = {k: v / n for k, v in e.items()}
            images[alg.index_of_root(-xi)] = {k: -v / n for k, v in f.items()}
    return alg, tuple(images[k] for k in range(alg.dim))


def chevalley_current(rank: int, index: int) -> GlElement:
    """gl(rank) current realizing basis element index of the A_{rank-1} Chevalley basis"""
    return _chevalley_images(rank)[1][index]


def phi_image(rank: int, expr) -> FockVector:
    """Image of a level -1 PBW vector of the A_{rank-1} universal algebra in M_rank

    Each PBW monomial x1(n1) ... xk(nk) 1 is evaluated by applying the
    realizing currents right to left on the vacuum.
    """
    if rank < 2:
        raise UnsupportedLabelError(f"phi_image needs rank >= 2, got {rank}")
    alg, images = _chevalley_images(rank)
    if expr.alg.rs.label != alg.rs.label:
        raise UnsupportedLabelError(
            f"PBW vector lives in {expr.alg.rs.label}, expected {alg.rs.label}")
    result: Terms = {}
    for monomial, c in expr.terms.items():
        terms: Terms = {VACUUM: Fraction(1)}
        for n, index in reversed(monomial):
            terms = _current_terms(images[index], n, terms)
            if not terms:
                break
        add_scaled(result, terms, c)
    return FockVector(result)


# Conformal vectors

def conformal_vectors(rank: int) -> Tuple[FockVector, FockVector, FockVector]:
    """The free-field conformal vector, the Sugawara vector and the Heisenberg vector

    Returns:
        Tuple of omega, omega_sug and omega_one as degree 2 charge 0 vectors
    """
    if rank < 2:
        raise UnsupportedLabelError(f"conformal_vectors needs rank >= 2, got {rank}")
    vac: Terms = {VACUUM: Fraction(1)}
    three_halves = Fraction(-3, 2)
    omega: Terms = {}
    for i in range(1, rank + 1):
        add_scaled(omega, {tuple(sorted((WeylMode(three_halves, i, Sign.MINUS),
                                         WeylMode(-HALF, i, Sign.PLUS)))): Fraction(1)}, HALF)
        add_scaled(omega, {tuple(sorted((WeylMode(three_halves, i, Sign.PLUS),
                                         WeylMode(-HALF, i, Sign.MINUS)))): Fraction(1)}, -HALF)

    sug: Terms = {}
    for i in range(1, rank + 1):
        for j in range(i + 1, rank + 1):
            e, f = gl_unit(i, j), gl_unit(j, i)
            add_scaled(sug, _current_terms(e, -1, _current_terms(f, -1, vac)), 1)
            add_scaled(sug, _current_terms(f, -1, _current_terms(e, -1, vac)), 1)
    for i in range(1, rank):
        h_i: GlElement = {(r, r): Fraction(-1) for r in range(1, i + 1)}
        h_i[(i + 1, i + 1)] = Fraction(i)
        square = _current_terms(h_i, -1, _current_terms(h_i, -1, vac))
        add_scaled(sug, square, Fraction(1, i * (i + 1)))
    sug = {m: c / (2 * (rank - 1)) for m, c in sug.items()}

    heis = heisenberg_element(rank)
    omega_one = _current_terms(heis, -1, _current_terms(heis, -1, vac))
    omega_one = {m: -c / (2 * rank) for m, c in omega_one.items()}
    return FockVector(omega), FockVector(sug), FockVector(omega_one)


def sugawara_identity_holds(rank: int) -> bool:
    omega, sug, one = conformal_vectors(rank)
    return omega == sug + one


# Bases

def _creation_modes(rank: int, degree2: int) -> List[Tuple[WeylMode, int]]:
    modes = []
    for k in range(1, degree2 + 1, 2):
        for species in range(1, rank + 1):
            for sign in (Sign.MINUS, Sign.PLUS):
                modes.append((WeylMode(Fraction(-k, 2), species, sign), k))
    return modes


@lru_cache(maxsize=256)
def _sector_monomials(rank: int, charge: int, degree: Fraction) -> Tuple[FockMonomial, ...]:
    degree2 = int(2 * degree)
    modes = _creation_modes(rank, degree2)
    found: List[FockMonomial] = []
    stack: List[WeylMode] = []

    def extend(pos: int, remaining: int, current: int) -> None:
        if abs(charge - current) > remaining:
            return
        if remaining == 0:
            if current == charge:
                found.append(tuple(sorted(stack)))
            return
        for p in range(pos, len(modes)):
            mode, cost = modes[p]
            if cost > remaining:
                continue
            stack.append(mode)
            extend(p, remaining - cost, current + int(mode.sign))
            stack.pop()

    extend(0, degree2, 0)
    return tuple(sorted(found))


def sector_basis(idx: SectorIndex, degree, bound: int = DEFAULT_BASIS_BOUND) -> List[FockMonomial]:
    """Monomials of conformal degree `degree` and charge idx.charge

    Raises:
        BoundExceededError: If degree exceeds the sector cutoff or the basis exceeds bound
    """
    degree = Fraction(degree)
    if degree > idx.cutoff:
        raise BoundExceededError(f"Degree {degree} is above the sector cutoff {idx.cutoff}",
                                 bound=idx.cutoff, requested=degree)
    if (2 * degree).denominator != 1 or degree < idx.lowest_degree \
            or (degree - idx.lowest_degree).denominator != 1:
        return []
    basis = list(_sector_monomials(idx.rank, idx.charge, degree))
    if len(basis) > bound:
        raise BoundExceededError(f"Sector basis of size {len(basis)} exceeds {bound}",
                                 bound=bound, requested=len(basis))
    return basis


def lowest_vector(rank: int, s: int) -> FockVector:
    """a_1^+(-1/2)^s 1 for s >= 0, a_rank^-(-1/2)^{-s} 1 for s < 0"""
    mode = WeylMode(-HALF, 1, Sign.PLUS) if s >= 0 else WeylMode(-HALF, rank, Sign.MINUS)
    return FockVector({(mode,) * abs(s): Fraction(1)})


# Singular vectors

def raising_operators(rank: int, degree: Fraction, lowest: Fraction) -> List[Tuple[GlElement, int]]:
    """e_i(0) for simple i, f_theta(1) and H(n) for 1 <= n <= degree - lowest"""
    ops = [(gl_unit(i, i + 1), 0) for i in range(1, rank)]
    ops.append((gl_unit(rank, 1), 1))
    heis = heisenberg_element(rank)
    for n in range(1, int(degree - lowest) + 1):
        ops.append((heis, n))
    return ops


def _kernel_vectors(basis: Sequence[FockMonomial], ops: Sequence[Tuple[GlElement, int]]) -> List[FockVector]:
    images = []
    for monomial in basis:
        stacked = {}
        for k, (x, n) in enumerate(ops):
            for target, c in _current_terms(x, n, {monomial: Fraction(1)}).items():
                stacked[(k, target)] = c
        images.append(stacked)
    return [FockVector({basis[j]: c for j, c in vec.items()}) for vec in kernel(images)]


def _by_weight(rank: int, basis: Sequence[FockMonomial]) -> Dict[Tuple[int, ...], List[FockMonomial]]:
    groups: Dict[Tuple[int, ...], List[FockMonomial]] = {}
    for monomial in basis:
        groups.setdefault(gl_weight(rank, monomial), []).append(monomial)
    return groups


@dataclass
class ScanDegree:
    """Singular vectors found at one conformal degree"""
    degree: Fraction
    dimension: int
    kernel_dimension: int
    extra: List[FockVector] = field(default_factory=list)

    def to_dict(self) -> Dict[str, object]:
        return {
            "degree": str(self.degree),
            "dimension": self.dimension,
            "kernel_dimension": self.kernel_dimension,
            "extra": [v.to_dict() for v in self.extra],
        }


@dataclass
class ScanResult:
    """Outcome of a singular-vector scan of one charge sector"""
    sector: SectorIndex
    degrees: List[ScanDegree] = field(default_factory=list)

    @property
    def extra_vectors(self) -> List[Tuple[Fraction, List[FockVector]]]:
        return [(d.degree, d.extra) for d in self.degrees if d.extra]

    @property
    def clean(self) -> bool:
        return not self.extra_vectors

    def to_dict(self) -> Dict[str, object]:
        return {
            "rank": self.sector.rank,
            "charge": self.sector.charge,
            "cutoff": str(self.sector.cutoff),
            "clean": self.clean,
            "degrees": [d.to_dict() for d in self.degrees],
        }


def singular_scan(idx: SectorIndex, degree_bound=DEFAULT_SCAN_DEGREE,
                  max_rank: int = DEFAULT_MAX_RANK,
                  bound: int = DEFAULT_BASIS_BOUND) -> ScanResult:
    """Singular vectors of M_l^(s) up to the sector cutoff

    At each degree the kernel of the stacked raising operators is computed
    exactly, one gl weight space at a time. The lowest-weight vector at the
    lowest degree is expected and not reported as extra.

    Raises:
        BoundExceededError: If the cutoff or the rank exceed the configured bounds
    """
    if idx.cutoff > Fraction(degree_bound):
        raise BoundExceededError(f"Scan cutoff {idx.cutoff} exceeds {degree_bound}",
                                 bound=degree_bound, requested=idx.cutoff)
    if idx.rank > max_rank:
        raise BoundExceededError(f"Fock rank {idx.rank} exceeds {max_rank}",
                                 bound=max_rank, requested=idx.rank)
    if idx.rank < 2:
        raise UnsupportedLabelError("singular_scan needs rank >= 2")

    lowest_monomial = next(iter(lowest_vector(idx.rank, idx.charge).terms))
    lowest_weight = gl_weight(idx.rank, lowest_monomial)
    result = ScanResult(sector=idx)
    for d in idx.degrees():
        basis = sector_basis(idx, d, bound)
        ops = raising_operators(idx.rank, d, idx.lowest_degree)
        entry = ScanDegree(degree=d, dimension=len(basis), kernel_dimension=0)
        for weight, group in sorted(_by_weight(idx.rank, basis).items()):
            vectors = _kernel_vectors(group, ops)
            entry.kernel_dimension += len(vectors)
            if d == idx.lowest_degree and weight == lowest_weight and len(vectors) == 1:
                continue
            entry.extra.extend(vectors)
        logger.debug(f"Scan rank {idx.rank} charge {idx.charge} degree {d}: "
                     f"dim {entry.dimension}, kernel {entry.kernel_dimension}")
        result.degrees.append(entry)
    if result.clean:
        logger.info(f"Sector rank {idx.rank} charge {idx.charge} has no extra singular vectors "
                    f"up to degree {idx.cutoff}")
    else:
        logger.warning(f"Sector rank {idx.rank} charge {idx.charge}: extra singular vectors at "
                       f"{[str(d) for d, _ in result.extra_vectors]}")
    return result


def invariant_dims(rank: int, max_degree: int, bound: int = DEFAULT_BASIS_BOUND) -> Dict[int, int]:
    """Dimensions of the gl(rank)-invariant part of M_rank in each integral degree

    Invariants are the charge 0, weight 0 vectors killed by every e_i(0) and f_i(0).
    """
    if rank < 2:
        raise UnsupportedLabelError("invariant_dims needs rank >= 2")
    ops = [(gl_unit(i, i + 1), 0) for i in range(1, rank)]
    ops += [(gl_unit(i + 1, i), 0) for i in range(1, rank)]
    idx = SectorIndex(rank, 0, Fraction(max_degree))
    zero = (0,) * rank
    dims = {}
    for d in idx.degrees():
        group = [m for m in sector_basis(idx, d, bound) if gl_weight(rank, m) == zero]
        dims[int(d)] = len(_kernel_vectors(group, ops))
    return dims


# Characters

@dataclass
class GradedCharacter:
    """Dimensions and gl weights of a charge sector by degree, with quotient series"""
    sector: SectorIndex
    dimensions: Dict[Fraction, int]
    weights: Dict[Fraction, Counter]
    quotient: List[int]
    top_weight_quotient: List[int]
    lowest_dimension: int

    def to_dict(self) -> Dict[str, object]:
        return {
            "rank": self.sector.rank,
            "charge": self.sector.charge,
            "cutoff": str(self.sector.cutoff),
            "dimensions": {str(d): n for d, n in self.dimensions.items()},
            "weights": {str(d): {",".join(str(x) for x in w): m for w, m in sorted(c.items())}
                        for d, c in self.weights.items()},
            "quotient": list(self.quotient),
            "top_weight_quotient": list(self.top_weight_quotient),
            "lowest_dimension": self.lowest_dimension,
        }


def heisenberg_inverse_series(length: int) -> np.ndarray:
    """Coefficients of prod_{n >= 1} (1 - q^n) up to q^(length - 1)"""
    series = np.zeros(length, dtype=np.int64)
    if length:
        series[0] = 1
    for n in range(1, length):
        factor = np.zeros(n + 1, dtype=np.int64)
        factor[0], factor[n] = 1, -1
        series = np.convolve(series, factor)[:length]
    return series


def _divide_heisenberg(series: Sequence[int], what: str) -> List[int]:
    values = np.asarray(series, dtype=np.int64)
    quotient = np.convolve(values, heisenberg_inverse_series(len(values)))[:len(values)]
    if (quotient < 0).any():
        raise NonIntegralQuotientError(
            f"{what} divided by the Heisenberg series has a negative coefficient",
            witness={"series": [int(x) for x in values], "quotient": [int(x) for x in quotient]})
    return [int(x) for x in quotient]


def graded_character(idx: SectorIndex, bound: int = DEFAULT_BASIS_BOUND) -> GradedCharacter:
    """Per-degree dimensions and weight multisets of M_l^(s)

    The dimension series is divided by the Heisenberg series
    prod (1 - q^n)^{-1}; its constant term is dim V(|s| w1) of sl(l).
    The same division applied to the weight space of the lowest vector has
    constant term 1.

    Raises:
        NonIntegralQuotientError: If a quotient coefficient is negative
    """
    dimensions: Dict[Fraction, int] = {}
    weights: Dict[Fraction, Counter] = {}
    top_series = []
    top_weight = gl_weight(idx.rank, next(iter(lowest_vector(idx.rank, idx.charge).terms)))
    for d in idx.degrees():
        basis = sector_basis(idx, d, bound)
        dimensions[d] = len(basis)
        weights[d] = Counter(gl_weight(idx.rank, m) for m in basis)
        top_series.append(weights[d][top_weight])
    what = f"Sector rank {idx.rank} charge {idx.charge}"
    quotient = _divide_heisenberg(list(dimensions.values()), what)
    top_quotient = _divide_heisenberg(top_series, what + " top weight space")
    if idx.rank >= 2:
        rs_label = SeriesLabel(Series.A, idx.rank - 1)
        alg = build_lie_algebra(rs_label)
        coeffs = [0] * (idx.rank - 1)
        coeffs[0 if idx.charge >= 0 else idx.rank - 2] = abs(idx.charge)
        lowest_dimension = weyl_dimension(alg.rs, alg.rs.from_fundamental(coeffs))
    else:
        lowest_dimension = 1
    return GradedCharacter(sector=idx, dimensions=dimensions, weights=weights, quotient=quotient,
                           top_weight_quotient=top_quotient, lowest_dimension=lowest_dimension)


# Sampled properties

def charge_additivity_failures(rank: int, samples: int, seed: int,
                               max_degree: int = 2) -> List[Dict[str, object]]:
    """Sample (operator, vector) pairs and test H(0)(X v) = (c_X + c_v)(X v)

    Operators are gl currents X_ij(n) of charge 0 and Weyl modes a_i^{+-}(r)
    of charge +-1; vectors are basis monomials of charge -1, 0 or 1.

    Returns:
        The failing samples; empty when additivity holds on all of them
    """
    rng = random.Random(seed)
    failures = []
    for _ in range(samples):
        charge = rng.randint(-1, 1)
        idx = SectorIndex(rank, charge, Fraction(abs(charge), 2) + max_degree)
        basis = sector_basis(idx, rng.choice(idx.degrees()))
        v = FockVector({rng.choice(basis): Fraction(1)})
        if rng.random() < 0.5:
            i, j = rng.randint(1, rank), rng.randint(1, rank)
            n = rng.randint(-2, 2)
            image = apply_current(rank, (i, j), n, v)
            operator, operator_charge = f"X{i}{j}({n})", 0
        else:
            mode = WeylMode(Fraction(rng.choice((-3, -1, 1, 3)), 2), rng.randint(1, rank),
                            rng.choice((Sign.PLUS, Sign.MINUS)))
            image = apply_weyl_mode(rank, mode, v)
            operator, operator_charge = str(mode), int(mode.sign)
        if apply_current(rank, "H", 0, image) != image * (charge + operator_charge):
            failures.append({"operator": operator, "vector": v.to_dict(), "charge": charge})
    logger.info(f"Charge additivity on {samples} samples (seed {seed}): {len(failures)} failures")
    return failures
