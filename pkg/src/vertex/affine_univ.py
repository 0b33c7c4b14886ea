"""
Universal affine vertex algebra N(k Lambda_0)
PBW bases truncated by conformal degree, mode actions computed by
straightening with the Chevalley structure constants, the explicit singular
vectors of types A, D and E6, and graded dimensions of the ideals they generate.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from src.lie.chevalley import (
    E6,
    EmbeddingSpec,
    LieAlgebra,
    build_lie_algebra,
    resolve_root_label,
)
from src.lie.rootlie import Series, SeriesLabel, Weight, build_root_system
from src.utils.errors import (
    BoundExceededError,
    UnsupportedLabelError,
    VerificationFailedError,
)
from src.utils.linalg import EchelonBasis, add_scaled, kernel

logger = logging.getLogger('affine_univ')

DEFAULT_DEGREE_CUTOFF = 3

# ((n, basis index), ...) sorted, n < 0; x1(n1) ... xk(nk) 1 with the first factor leftmost
PBWMonomial = Tuple[Tuple[int, int], ...]
Terms = Dict[PBWMonomial, Fraction]
Element = Dict[int, Fraction]


@dataclass(frozen=True)
class AffineLevel:
    """Affine algebra of a finite type at level k"""
    label: SeriesLabel
    k: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'k', Fraction(self.k))

    @property
    def alg(self) -> LieAlgebra:
        return build_lie_algebra(self.label)

    def __str__(self) -> str:
        return f"{self.label}(k={self.k})"


def monomial_degree(monomial: PBWMonomial) -> int:
    return -sum(n for n, _ in monomial)


class PBWVector:
    """Finite rational combination of PBW monomials at a fixed level"""

    def __init__(self, level: AffineLevel, terms: Optional[Terms] = None,
                 cutoff: int = DEFAULT_DEGREE_CUTOFF):
        self.level = level
        self.cutoff = cutoff
        self.terms: Terms = {m: Fraction(c) for m, c in (terms or {}).items() if c}

    @property
    def alg(self) -> LieAlgebra:
        return self.level.alg

    @classmethod
    def vacuum(cls, level: AffineLevel, cutoff: int = DEFAULT_DEGREE_CUTOFF) -> "PBWVector":
        return cls(level, {(): Fraction(1)}, cutoff)

    def is_zero(self) -> bool:
        return not self.terms

    def with_terms(self, terms: Terms) -> "PBWVector":
        return PBWVector(self.level, terms, self.cutoff)

    def at_level(self, level: AffineLevel) -> "PBWVector":
        if level.label != self.level.label:
            raise UnsupportedLabelError(f"Cannot move a {self.level.label} vector to {level.label}")
        return PBWVector(level, self.terms, self.cutoff)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PBWVector):
            return NotImplemented
        return self.level == other.level and self.terms == other.terms

    def __add__(self, other: "PBWVector") -> "PBWVector":
        return self.with_terms(add_scaled(dict(self.terms), other.terms, 1))

    def __sub__(self, other: "PBWVector") -> "PBWVector":
        return self.with_terms(add_scaled(dict(self.terms), other.terms, -1))

    def __mul__(self, scalar) -> "PBWVector":
        return self.with_terms({m: c * scalar for m, c in self.terms.items()})

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"PBWVector({self.level}, {len(self.terms)} terms)"

    def degrees(self) -> set:
        return {monomial_degree(m) for m in self.terms}

    def monomial_name(self, monomial: PBWMonomial) -> str:
        if not monomial:
            return "1"
        return "*".join(f"{self.alg.basis_name(b)}({n})" for n, b in monomial)

    def to_dict(self) -> Dict[str, str]:
        return {self.monomial_name(m): str(c) for m, c in sorted(self.terms.items())}


class _Straightener:
    """Memoized x(n) action on PBW monomials at one level"""

    def __init__(self, level: AffineLevel):
        self.level = level
        self.alg = level.alg
        self.memo: Dict[Tuple[int, int, PBWMonomial], Terms] = {}

    def act(self, b: int, n: int, monomial: PBWMonomial) -> Terms:
        key = (b, n, monomial)
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        result = self._act(b, n, monomial)
        self.memo[key] = result
        return result

    def act_terms(self, b: int, n: int, terms: Terms) -> Terms:
        result: Terms = {}
        for monomial, c in terms.items():
            add_scaled(result, self.act(b, n, monomial), c)
        return result

    def _act(self, b: int, n: int, monomial: PBWMonomial) -> Terms:
        if not monomial:
            return {} if n >= 0 else {((n, b),): Fraction(1)}
        first, rest = monomial[0], monomial[1:]
        if n < 0 and (n, b) <= first:
            return {((n, b),) + monomial: Fraction(1)}
        # x(n) y(m) rest = y(m) x(n) rest + [x, y](n + m) rest + n d_{n+m,0} k <x, y> rest
        m, c = first
        result = self.act_terms(c, m, self.act(b, n, rest))
        for z, coefficient in self.alg.basis_bracket(b, c).items():
            add_scaled(result, self.act(z, n + m, rest), coefficient)
        if n + m == 0:
            central = n * self.level.k * self.alg.basis_form(b, c)
            if central:
                add_scaled(result, {rest: Fraction(1)}, central)
        return result


@lru_cache(maxsize=None)
def _straightener(level: AffineLevel) -> _Straightener:
    return _Straightener(level)


def _check_cutoff(v: PBWVector, n: int) -> None:
    for degree in v.degrees():
        if degree - n > v.cutoff:
            raise BoundExceededError(
                f"Degree {degree - n} exceeds the cutoff {v.cutoff}", bound=v.cutoff,
                requested=degree - n)


def act_mode(level: AffineLevel, x: int, n: int, v: PBWVector) -> PBWVector:
    """Apply the mode x(n) of a Chevalley basis element to a PBW vector

    Args:
        level: Affine algebra and level
        x: Basis index in the Chevalley basis of level.alg
        n: Mode index
        v: Vector acted on

    Raises:
        BoundExceededError: If the result would exceed the degree cutoff
    """
    _check_cutoff(v, n)
    return v.with_terms(_straightener(level).act_terms(x, n, v.terms))


def act_element(level: AffineLevel, x: Element, n: int, v: PBWVector) -> PBWVector:
    """Apply x(n) for an arbitrary Lie algebra element x"""
    _check_cutoff(v, n)
    engine = _straightener(level)
    result: Terms = {}
    for b, c in x.items():
        add_scaled(result, engine.act_terms(b, n, v.terms), c)
    return v.with_terms(result)


def pbw_monomial_vector(level: AffineLevel, factors: Sequence[Tuple[int, int]],
                        cutoff: int = DEFAULT_DEGREE_CUTOFF) -> PBWVector:
    """x1(n1) ... xk(nk) 1 for factors [(x1, n1), ...], straightened"""
    v = PBWVector.vacuum(level, cutoff)
    for b, n in reversed(factors):
        v = act_mode(level, b, n, v)
    return v


def pbw_basis(level: AffineLevel, degree: int, weight: Optional[Weight] = None,
              cutoff: int = DEFAULT_DEGREE_CUTOFF) -> List[PBWMonomial]:
    """Canonical PBW monomials of the given degree, optionally of one g-weight

    Raises:
        BoundExceededError: If degree exceeds cutoff
    """
    if degree > cutoff:
        raise BoundExceededError(f"Degree {degree} exceeds the cutoff {cutoff}",
                                 bound=cutoff, requested=degree)
    alg = level.alg
    letters = [(n, b) for n in range(-degree, 0) for b in range(alg.dim)]
    found: List[PBWMonomial] = []
    stack: List[Tuple[int, int]] = []

    def extend(pos: int, remaining: int) -> None:
        if remaining == 0:
            found.append(tuple(stack))
            return
        for p in range(pos, len(letters)):
            n, b = letters[p]
            if -n > remaining:
                continue
            stack.append((n, b))
            extend(p, remaining + n)
            stack.pop()

    extend(0, degree)
    if weight is not None:
        found = [m for m in found if _monomial_weight(alg, m) == weight]
    return sorted(found)


def _monomial_weight(alg: LieAlgebra, monomial: PBWMonomial) -> Weight:
    total = Weight.zero(alg.rs.ambient_dim)
    for _, b in monomial:
        total = total + alg.weight_of(b)
    return total


def vector_weight(level: AffineLevel, v: PBWVector) -> Optional[Weight]:
    """g-weight of a weight-homogeneous vector, None if v is zero or inhomogeneous"""
    weights = {_monomial_weight(level.alg, m) for m in v.terms}
    return weights.pop() if len(weights) == 1 else None


# Singularity

Raising = List[Tuple[str, Element, int]]


def affine_raising(alg: LieAlgebra) -> Raising:
    """e_i(0) for the simple roots and f_theta(1)"""
    ops = [(f"e{i + 1}(0)", alg.e(alpha), 0) for i, alpha in enumerate(alg.rs.simple_roots)]
    ops.append(("f_theta(1)", alg.f(alg.rs.highest_root), 1))
    return ops


def subalgebra_raising(spec: EmbeddingSpec) -> Raising:
    """Affine raising operators of a root-generated subalgebra inside its ambient algebra"""
    if spec.sub_roots is None:
        raise UnsupportedLabelError(f"{spec.name.value} is not generated by root vectors")
    sub = build_root_system(spec.sub_label)
    theta = Weight.zero(spec.ambient.rs.ambient_dim)
    for c, root in zip(sub.root_coefficients(sub.highest_root), spec.sub_roots):
        theta = theta + root * c
    ops = [(f"e{i + 1}(0)", e, 0) for i, e in enumerate(spec.e_images)]
    ops.append(("f_theta(1)", spec.ambient.f(theta), 1))
    return ops


@dataclass
class SingularCheck:
    """Result of a singularity test with the first nonzero witness"""
    singular: bool
    operator: Optional[str] = None
    witness: Optional[PBWVector] = None

    def __bool__(self) -> bool:
        return self.singular

    def to_dict(self) -> Dict[str, object]:
        return {
            "singular": self.singular,
            "operator": self.operator,
            "witness": None if self.witness is None else self.witness.to_dict(),
        }


def is_singular_for(level: AffineLevel, v: PBWVector, raising: Raising) -> SingularCheck:
    """True iff every listed raising operator kills v"""
    for name, x, n in raising:
        image = act_element(level, x, n, v)
        if not image.is_zero():
            logger.debug(f"{name} does not annihilate the vector at {level}")
            return SingularCheck(singular=False, operator=name, witness=image)
    return SingularCheck(singular=True)


def is_singular(level: AffineLevel, v: PBWVector) -> SingularCheck:
    """True iff e_i(0) v = 0 for all simple i and f_theta(1) v = 0"""
    return is_singular_for(level, v, affine_raising(level.alg))


# The explicit singular vectors

class ExplicitVector(Enum):
    """Families of explicit singular vectors"""
    A_TYPE = "A_type"
    D_TYPE = "D_type"
    E6 = "E6"


# each term: (sign, [(root label, basis kind, mode)]); kind is 'e', 'f' or 'h'
TermSpec = Tuple[int, List[Tuple[str, str, int]]]


def _eps(i: int, j: int, sign: str = "-") -> str:
    return f"e{i}{sign}e{j}"


def _explicit_terms(which: ExplicitVector, rank: int) -> Tuple[SeriesLabel, Fraction, List[TermSpec]]:
    if which is ExplicitVector.A_TYPE:
        if rank < 3:
            raise UnsupportedLabelError(f"A_type vector needs l >= 3, got {rank}")
        label = SeriesLabel(Series.A, rank - 1)
        if rank == 3:
            terms = [
                (1, [(_eps(2, 3), "e", -1), (_eps(2, 3), "e", -1), (_eps(1, 2), "e", -1)]),
                (-1, [(_eps(1, 3), "e", -1), (_eps(2, 3), "e", -1), (_eps(1, 2), "h", -1)]),
                (-1, [(_eps(1, 3), "e", -1), (_eps(1, 3), "e", -1), (_eps(1, 2), "f", -1)]),
            ]
        else:
            terms = [
                (1, [(_eps(1, rank), "e", -1), (_eps(2, rank - 1), "e", -1)]),
                (-1, [(_eps(2, rank), "e", -1), (_eps(1, rank - 1), "e", -1)]),
            ]
        return label, Fraction(-1), terms
    if which is ExplicitVector.D_TYPE:
        if rank < 3:
            raise UnsupportedLabelError(f"D_type vector needs l >= 3, got {rank}")
        terms = [(1, [(_eps(1, i), "e", -1), (_eps(1, i, "+"), "e", -1)]) for i in range(2, rank + 1)]
        return SeriesLabel(Series.D, rank), Fraction(2 - rank), terms
    terms = [
        (1, [("(5)", "e", -1), ("(12345)", "e", -1)]),
        (1, [("(125)", "e", -1), ("(345)", "e", -1)]),
        (1, [("(135)", "e", -1), ("(245)", "e", -1)]),
        (1, [("(235)", "e", -1), ("(145)", "e", -1)]),
    ]
    return E6, Fraction(-3), terms


# Term signs in the Chevalley basis of chevalley_constants. The written formulas
# use matrix-unit (types A, D) or unnormalized (E6) root vectors; these are the
# same vectors rewritten in the basis fixed by the extraspecial pairs.
_A_TYPE_SIGNS = {3: (1, -1, -1)}
_A_TYPE_DEFAULT_SIGNS = (1, -1)
_E6_SIGNS = (1, 1, -1, 1)


def basis_signs(which: ExplicitVector, rank: int = 0) -> List[int]:
    """Signs of the terms of an explicit vector in the Chevalley basis used here

    D_type(l) alternates along i = 2..l.
    """
    which = ExplicitVector(which)
    _explicit_terms(which, rank)
    if which is ExplicitVector.A_TYPE:
        return list(_A_TYPE_SIGNS.get(rank, _A_TYPE_DEFAULT_SIGNS))
    if which is ExplicitVector.D_TYPE:
        return [(-1) ** i for i in range(rank - 1)]
    return list(_E6_SIGNS)


def _factor_index(alg: LieAlgebra, label: str, kind: str) -> Element:
    root = resolve_root_label(label, alg.rs.ambient_dim)
    if kind == "e":
        return alg.e(root)
    if kind == "f":
        return alg.f(root)
    return alg.cartan_of_root(root)


def _term_vector(level: AffineLevel, factors: List[Tuple[str, str, int]], cutoff: int) -> PBWVector:
    alg = level.alg
    v = PBWVector.vacuum(level, cutoff)
    for label, kind, n in reversed(factors):
        v = act_element(level, _factor_index(alg, label, kind), n, v)
    return v


@dataclass
class SignResolution:
    """Signs of the terms of an explicit vector in the Chevalley basis used here"""
    which: ExplicitVector
    rank: int
    written: List[int]
    resolved: List[int]
    table: List[int]

    @property
    def flips(self) -> List[int]:
        return [i for i, (a, b) in enumerate(zip(self.written, self.resolved)) if a != b]

    @property
    def matches_table(self) -> bool:
        return self.resolved == self.table

    def to_dict(self) -> Dict[str, object]:
        return {"vector": self.which.value, "rank": self.rank, "written": self.written,
                "resolved": self.resolved, "flipped_terms": self.flips,
                "matches_table": self.matches_table}


@lru_cache(maxsize=None)
def resolve_signs(which: ExplicitVector, rank: int = 0) -> SignResolution:
    """Recompute the term signs of an explicit vector from the raising operators

    The written terms are only determined up to the signs of the root vectors.
    The combination killed by all raising operators is computed exactly; it must
    be unique up to scale with every coefficient of absolute value one.

    Raises:
        VerificationFailedError: If no such combination exists
    """
    label, k, written_terms = _explicit_terms(which, rank)
    level = AffineLevel(label, k)
    cutoff = max(sum(-n for _, _, n in factors) for _, factors in written_terms) + 1
    vectors = [_term_vector(level, factors, cutoff) for _, factors in written_terms]
    raising = affine_raising(level.alg)
    images = []
    for v in vectors:
        stacked = {}
        for k_op, (_, x, n) in enumerate(raising):
            for monomial, c in act_element(level, x, n, v).terms.items():
                stacked[(k_op, monomial)] = c
        images.append(stacked)
    solutions = kernel(images)
    if len(solutions) != 1 or len(solutions[0]) != len(vectors):
        raise VerificationFailedError(
            f"{which.value} vector: raising kernel on the written terms has dimension {len(solutions)}",
            witness={"kernel_dimension": len(solutions)})
    solution = solutions[0]
    written = [sign for sign, _ in written_terms]
    scale = solution[0] * written[0]
    resolved = []
    for j in range(len(vectors)):
        c = solution[j] / scale
        if abs(c) != 1:
            raise VerificationFailedError(
                f"{which.value} vector: term {j} needs coefficient {c}",
                witness={"term": j, "coefficient": str(c)})
        resolved.append(int(c))
    resolution = SignResolution(which=which, rank=rank, written=written, resolved=resolved,
                                table=basis_signs(which, rank))
    if resolution.flips:
        logger.info(f"{which.value} vector: signs of terms {resolution.flips} flipped "
                    f"in this Chevalley basis")
    if not resolution.matches_table:
        logger.warning(f"{which.value} vector: kernel signs {resolved} differ from "
                       f"the sign table {resolution.table}")
    return resolution


def build_explicit_vector(which: ExplicitVector, rank: int = 0,
                       cutoff: int = DEFAULT_DEGREE_CUTOFF) -> Tuple[PBWVector, AffineLevel]:
    """The explicit singular vector of a family at its level

    A_type(l): level -1 in the A_{l-1} universal algebra;
    D_type(l): level -l+2 in D_l; E6: level -3.

    Raises:
        UnresolvedRootLabelError: If a root label is not in the table
    """
    which = ExplicitVector(which)
    label, k, written_terms = _explicit_terms(which, rank)
    level = AffineLevel(label, k)
    result: Terms = {}
    for sign, (_, factors) in zip(basis_signs(which, rank), written_terms):
        add_scaled(result, _term_vector(level, factors, cutoff).terms, sign)
    return PBWVector(level, result, cutoff), level


def build_explicit_vector_at(which: ExplicitVector, rank: int, k) -> PBWVector:
    """The same vector placed at another level"""
    v, level = build_explicit_vector(which, rank)
    return v.at_level(AffineLevel(level.label, k))


def ideal_graded_dims(level: AffineLevel, v: PBWVector, max_degree: int) -> Dict[int, int]:
    """Graded dimensions of the submodule generated by v up to max_degree

    Saturates span(v) under every x(n) whose result stays within degree max_degree.

    Raises:
        BoundExceededError: If max_degree exceeds the cutoff of v
    """
    if max_degree > v.cutoff:
        raise BoundExceededError(f"Degree {max_degree} exceeds the cutoff {v.cutoff}",
                                 bound=v.cutoff, requested=max_degree)
    alg = level.alg
    engine = _straightener(level)
    bases: Dict[int, EchelonBasis] = {d: EchelonBasis() for d in range(max_degree + 1)}

    def split(terms: Terms) -> Dict[int, Terms]:
        parts: Dict[int, Terms] = {}
        for monomial, c in terms.items():
            parts.setdefault(monomial_degree(monomial), {})[monomial] = c
        return parts

    frontier: List[Tuple[int, Terms]] = []
    for d, part in split(v.terms).items():
        if d <= max_degree and bases[d].add(part):
            frontier.append((d, part))
    while frontier:
        d, terms = frontier.pop()
        for n in range(d - max_degree, d + 1):
            for b in range(alg.dim):
                image = engine.act_terms(b, n, terms)
                if image and bases[d - n].add(image):
                    frontier.append((d - n, image))
    dims = {d: basis.rank for d, basis in bases.items()}
    logger.info(f"Ideal graded dimensions at {level}: {dims}")
    return dims
