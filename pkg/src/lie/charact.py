"""
Characters and tensor product decompositions
Freudenthal multiplicities, a convolution-and-peeling oracle for tensor
products, and the closed-form type A and type D rules checked against it.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from src.lie.rootlie import (
    RootSystem,
    Series,
    SeriesLabel,
    Weight,
    build_root_system,
    require_dominant_integral,
    weyl_dimension,
)
from src.utils.errors import (
    BoundExceededError,
    InternalInconsistencyError,
    UnsupportedLabelError,
)

logger = logging.getLogger('charact')

DEFAULT_DIMENSION_BOUND = 10 ** 6


def fundamental_to_epsilon(rs: RootSystem, coeffs: Sequence) -> Weight:
    """Weight with the given fundamental-weight coordinates"""
    return rs.from_fundamental(coeffs)


def epsilon_to_fundamental(rs: RootSystem, weight: Weight) -> Tuple[Fraction, ...]:
    """Fundamental-weight (Dynkin) coordinates of a weight"""
    return rs.dynkin_labels(weight)


def _peel_key(rs: RootSystem, weight: Weight) -> Tuple:
    # graded by (weight, rho), ties broken lexicographically
    return (weight.dot(rs.rho), weight.coords)


def format_fundamental(labels: Sequence[Fraction]) -> str:
    terms = []
    for i, c in enumerate(labels):
        if not c:
            continue
        terms.append(f"w{i + 1}" if c == 1 else f"{c}*w{i + 1}")
    return "+".join(terms) if terms else "0"


@dataclass(frozen=True, eq=False)
class CharacterTable:
    """Weight multiplicities of the irreducible module V(highest_weight)"""
    label: SeriesLabel
    highest_weight: Weight
    entries: Dict[Weight, int] = field(repr=False)

    @property
    def dimension(self) -> int:
        return sum(self.entries.values())

    def multiplicity(self, weight: Weight) -> int:
        return self.entries.get(weight, 0)

    def to_dict(self) -> Dict[str, object]:
        return {
            "label": str(self.label),
            "highest_weight": self.highest_weight.to_strings(),
            "dimension": self.dimension,
            "weights": [{"weight": w.to_strings(), "multiplicity": m}
                        for w, m in sorted(self.entries.items(), reverse=True)],
        }


@dataclass(frozen=True)
class DecompositionList:
    """Irreducible summands V(mu) with multiplicities, highest summand first"""
    label: SeriesLabel
    entries: Tuple[Tuple[Weight, int], ...]

    @classmethod
    def from_counts(cls, rs: RootSystem, counts: Dict[Weight, int]) -> "DecompositionList":
        ordered = sorted(counts.items(), key=lambda item: _peel_key(rs, item[0]), reverse=True)
        return cls(label=rs.label, entries=tuple((w, m) for w, m in ordered if m))

    def as_map(self) -> Dict[Weight, int]:
        return dict(self.entries)

    def weights(self) -> List[Weight]:
        return [w for w, _ in self.entries]

    def total_dimension(self) -> int:
        rs = build_root_system(self.label)
        return sum(m * weyl_dimension(rs, w) for w, m in self.entries)

    def same_as(self, other: "DecompositionList") -> bool:
        return self.label == other.label and self.as_map() == other.as_map()

    def to_dict(self) -> Dict[str, object]:
        rs = build_root_system(self.label)
        return {
            "label": str(self.label),
            "summands": [
                {
                    "highest_weight": w.to_strings(),
                    "fundamental": format_fundamental(rs.dynkin_labels(w)),
                    "multiplicity": m,
                    "dimension": weyl_dimension(rs, w),
                }
                for w, m in self.entries
            ],
        }


def _check_bound(value: int, bound: int, what: str) -> None:
    if value > bound:
        raise BoundExceededError(f"{what} {value} exceeds the bound {bound}", bound=bound, requested=value)


@lru_cache(maxsize=2048)
def _freudenthal(rs: RootSystem, lam: Weight) -> Dict[Weight, int]:
    shifted = lam + rs.rho
    top = shifted.dot(shifted)
    ceiling = lam.dot(rs.rho)
    mults: Dict[Weight, int] = {lam: 1}
    layer = [lam]
    depth = 0
    while layer:
        depth += 1
        candidates = sorted({w - alpha for w in layer for alpha in rs.simple_roots}, reverse=True)
        next_layer = []
        for mu in candidates:
            if mu in mults:
                continue
            total = Fraction(0)
            for alpha in rs.positive_roots:
                nu = mu + alpha
                while nu.dot(rs.rho) <= ceiling:
                    m = mults.get(nu)
                    if m:
                        total += m * nu.dot(alpha)
                    nu = nu + alpha
            if not total:
                continue
            moved = mu + rs.rho
            value = 2 * total / (top - moved.dot(moved))
            if value.denominator != 1 or value < 0:
                raise InternalInconsistencyError(
                    f"Freudenthal recursion gave multiplicity {value} at {mu}")
            if value:
                mults[mu] = int(value)
                next_layer.append(mu)
        layer = next_layer
    logger.debug(f"Freudenthal: {len(mults)} weights for {rs.label} at depth {depth}")
    return mults


def weight_multiplicities(rs: RootSystem, lam: Weight,
                          bound: int = DEFAULT_DIMENSION_BOUND) -> CharacterTable:
    """Full character of V(lam) via the Freudenthal recursion

    Args:
        rs: Root system
        lam: Dominant integral highest weight
        bound: Largest allowed module dimension

    Returns:
        CharacterTable: Every weight with its multiplicity

    Raises:
        NonDominantWeightError: If lam is not dominant integral
        BoundExceededError: If dim V(lam) exceeds bound
    """
    dim = weyl_dimension(rs, lam)
    _check_bound(dim, bound, f"dim V({lam})")
    entries = _freudenthal(rs, lam)
    if sum(entries.values()) != dim:
        raise InternalInconsistencyError(
            f"Character of V({lam}) has dimension {sum(entries.values())}, Weyl gives {dim}")
    return CharacterTable(label=rs.label, highest_weight=lam, entries=dict(entries))


def dominant_character(table: CharacterTable) -> Dict[Weight, int]:
    """Restriction of a character to its dominant weights"""
    rs = build_root_system(table.label)
    return {w: m for w, m in table.entries.items() if rs.is_dominant_integral(w)}


def is_reflection_invariant(rs: RootSystem, table: CharacterTable,
                            weights: Optional[Iterable[Weight]] = None) -> bool:
    """Multiplicity is unchanged by every simple reflection on the sampled weights"""
    sample = table.entries if weights is None else weights
    for w in sample:
        for i in range(rs.rank):
            if table.multiplicity(rs.simple_reflection(i, w)) != table.multiplicity(w):
                return False
    return True


def tensor_decompose(rs: RootSystem, lam: Weight, mu: Weight,
                     bound: int = DEFAULT_DIMENSION_BOUND) -> DecompositionList:
    """Decompose V(lam) (x) V(mu) by character convolution and highest-weight peeling

    Raises:
        NonDominantWeightError: If either weight is not dominant integral
        BoundExceededError: If dim V(lam) * dim V(mu) exceeds bound
        InternalInconsistencyError: If peeling produces a negative multiplicity
    """
    require_dominant_integral(rs, lam)
    require_dominant_integral(rs, mu)
    dim = weyl_dimension(rs, lam) * weyl_dimension(rs, mu)
    _check_bound(dim, bound, f"dim V({lam}) (x) V({mu})")
    first = weight_multiplicities(rs, lam, bound)
    second = weight_multiplicities(rs, mu, bound)

    remaining: Counter = Counter()
    for w1, m1 in first.entries.items():
        for w2, m2 in second.entries.items():
            w = w1 + w2
            if rs.is_dominant_integral(w):
                remaining[w] += m1 * m2

    counts: Dict[Weight, int] = {}
    while remaining:
        top = max(remaining, key=lambda w: _peel_key(rs, w))
        m = remaining[top]
        if m < 0:
            raise InternalInconsistencyError(
                f"Peeling produced multiplicity {m} at {top} for V({lam}) (x) V({mu})")
        counts[top] = m
        for w, k in dominant_character(weight_multiplicities(rs, top, bound)).items():
            remaining[w] -= m * k
            if remaining[w] == 0:
                del remaining[w]

    result = DecompositionList.from_counts(rs, counts)
    if result.total_dimension() != dim:
        raise InternalInconsistencyError(
            f"Dimension balance fails: {result.total_dimension()} != {dim}")
    logger.info(f"Decomposed V({lam}) (x) V({mu}) for {rs.label} into {len(counts)} summands")
    return result


class RuleCase(Enum):
    """Cases of the type A rules: w1 (x) w1, w_l (x) w_l and w1 (x) w_l"""
    I = "i"
    II = "ii"
    III = "iii"


def type_a_rule(rank: int, case: RuleCase, r: int, s: int) -> DecompositionList:
    """Closed-form decompositions of symmetric powers of the defining module of A_rank

    case i:   V(r w1)  (x) V(s w1)  = sum_k V((r+s-2k) w1 + k w2)
    case ii:  V(r wl)  (x) V(s wl)  = sum_k V((r+s-2k) wl + k w_{l-1})
    case iii: V(r w1)  (x) V(s wl)  = sum_k V((r-s+k) w1 + k wl)
    with 0 <= k <= s and every multiplicity one.

    Raises:
        ValueError: If r < s or s < 0
    """
    case = RuleCase(case)
    if s < 0 or r < s:
        raise ValueError(f"type_a_rule needs r >= s >= 0, got r={r}, s={s}")
    rs = build_root_system(SeriesLabel(Series.A, rank))
    if rank < 2:
        raise UnsupportedLabelError(f"type_a_rule needs rank >= 2, got {rank}")

    counts: Dict[Weight, int] = {}
    for k in range(s + 1):
        coeffs = [0] * rank
        if case is RuleCase.I:
            coeffs[0] += r + s - 2 * k
            coeffs[1] += k
        elif case is RuleCase.II:
            coeffs[rank - 1] += r + s - 2 * k
            coeffs[rank - 2] += k
        else:
            coeffs[0] += r - s + k
            coeffs[rank - 1] += k
        counts[rs.from_fundamental(coeffs)] = 1
    return DecompositionList.from_counts(rs, counts)


def type_a_factors(rank: int, case: RuleCase, r: int, s: int) -> Tuple[Weight, Weight]:
    """The two highest weights a type_a_rule case decomposes"""
    rs = build_root_system(SeriesLabel(Series.A, rank))
    case = RuleCase(case)
    first = [0] * rank
    second = [0] * rank
    first[0 if case in (RuleCase.I, RuleCase.III) else rank - 1] = r
    second[0 if case is RuleCase.I else rank - 1] = s
    return rs.from_fundamental(first), rs.from_fundamental(second)


def okada_module(rs: RootSystem, s: int) -> Weight:
    """Highest weight of U(s): s w_{l-1} for s >= 0, -s w_l for s < 0"""
    coeffs = [0] * rs.rank
    if s >= 0:
        coeffs[rs.rank - 2] = s
    else:
        coeffs[rs.rank - 1] = -s
    return rs.from_fundamental(coeffs)


def okada_index(rs: RootSystem, weight: Weight) -> Optional[int]:
    """t with weight the highest weight of U(t), or None"""
    labels = rs.dynkin_labels(weight)
    head, a, b = labels[:-2], labels[-2], labels[-1]
    if any(head):
        return None
    if b == 0:
        return int(a)
    if a == 0:
        return -int(b)
    return None


@dataclass
class MembershipAnswer:
    """Which U(t) occur in U(r) (x) U(s), found by the oracle"""
    rank: int
    r: int
    s: int
    found: Dict[int, int] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.found == {self.r + self.s: 1}

    def to_dict(self) -> Dict[str, object]:
        return {
            "rank": self.rank,
            "r": self.r,
            "s": self.s,
            "expected_t": self.r + self.s,
            "found": {str(t): m for t, m in sorted(self.found.items())},
            "holds": self.holds,
        }


def _okada_rs(rank: int) -> RootSystem:
    if rank < 3 or rank % 2 == 0:
        raise UnsupportedLabelError(
            f"okada_rule is available for odd rank >= 3 only, got {rank}")
    return build_root_system(SeriesLabel(Series.D, rank))


def okada_rule(rank: int, r: int, s: int, bound: int = DEFAULT_DIMENSION_BOUND):
    """Decomposition of U(r) (x) U(s) for D_rank with rank odd

    For r, s of equal sign: the multiplicity-free list of
    mu = k1 w1 + k3 w3 + ... + k_{l-2} w_{l-2} + k_{l-1} w_{l-1} with
    2(k1 + k3 + ... + k_{l-2}) + k_{l-1} = |r| + |s| and
    k_{l-1} >= ||r| - |s||, mirrored to w_l when both are negative.
    For mixed signs only the membership answer is produced, from tensor_decompose.

    Returns:
        DecompositionList or MembershipAnswer

    Raises:
        UnsupportedLabelError: For even or too small rank
    """
    rs = _okada_rs(rank)
    if r * s < 0:
        return okada_membership(rank, r, s, bound)

    negative = r < 0 or s < 0
    total = abs(r) + abs(s)
    floor = abs(abs(r) - abs(s))
    odd_nodes = list(range(0, rank - 2, 2))
    counts: Dict[Weight, int] = {}
    budget = (total - floor) // 2
    for ks in product(range(budget + 1), repeat=len(odd_nodes)):
        used = sum(ks)
        if used > budget:
            continue
        coeffs = [0] * rank
        for node, k in zip(odd_nodes, ks):
            coeffs[node] = k
        coeffs[rank - 1 if negative else rank - 2] = total - 2 * used
        counts[rs.from_fundamental(coeffs)] = 1
    return DecompositionList.from_counts(rs, counts)


def okada_membership(rank: int, r: int, s: int,
                     bound: int = DEFAULT_DIMENSION_BOUND) -> MembershipAnswer:
    """Which U(t) appear in U(r) (x) U(s), by the tensor_decompose oracle"""
    rs = _okada_rs(rank)
    decomposition = tensor_decompose(rs, okada_module(rs, r), okada_module(rs, s), bound)
    answer = MembershipAnswer(rank=rank, r=r, s=s)
    for weight, m in decomposition.entries:
        t = okada_index(rs, weight)
        if t is not None:
            answer.found[t] = m
    if not answer.holds:
        logger.warning(f"U(r) (x) U(s) membership for r={r}, s={s} found {answer.found}")
    return answer
