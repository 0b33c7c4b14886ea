"""
Exact sparse linear algebra over the rationals
Vectors are dicts mapping a sortable column key to a nonzero Fraction.
Elimination is fraction-based with deterministic pivoting: the pivot of a
row is its smallest column key.
"""

import logging
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Tuple

logger = logging.getLogger('linalg')

SparseVector = Dict[Hashable, Fraction]


def add_scaled(target: SparseVector, source: SparseVector, scale) -> SparseVector:
    """target += scale * source, in place, dropping zeros"""
    if not scale:
        return target
    for key, value in source.items():
        updated = target.get(key, 0) + scale * value
        if updated:
            target[key] = updated
        else:
            target.pop(key, None)
    return target


def scaled(source: SparseVector, scale) -> SparseVector:
    if not scale:
        return {}
    return {key: value * scale for key, value in source.items()}


class EchelonBasis:
    """
    Row-echelon basis grown one vector at a time

    Each stored row has its pivot (smallest key) normalized to 1. Rows can
    carry a companion combination vector, which is how kernels are tracked.
    """

    def __init__(self):
        self._rows: Dict[Hashable, Tuple[SparseVector, SparseVector]] = {}

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vector: SparseVector,
               combo: SparseVector = None) -> Tuple[SparseVector, SparseVector]:
        """Reduce a vector against the stored rows

        Args:
            vector: Vector to reduce (not modified)
            combo: Companion vector updated alongside (not modified)

        Returns:
            Tuple of the reduced vector and the updated companion
        """
        v = {k: Fraction(c) for k, c in vector.items() if c}
        w = dict(combo) if combo else {}
        while v:
            reducible = [k for k in v if k in self._rows]
            if not reducible:
                break
            # rows only introduce keys above their pivot, so this terminates
            pivot = min(reducible)
            row = self._rows[pivot]
            factor = v[pivot]
            add_scaled(v, row[0], -factor)
            if row[1]:
                add_scaled(w, row[1], -factor)
        return v, w

    def add(self, vector: SparseVector, combo: SparseVector = None) -> bool:
        """Insert a vector if it is independent of the stored rows

        Returns:
            bool: True if the rank grew
        """
        v, w = self.reduce(vector, combo)
        if not v:
            return False
        pivot = min(v)
        inv = 1 / v[pivot]
        self._rows[pivot] = (scaled(v, inv), scaled(w, inv))
        return True

    def contains(self, vector: SparseVector) -> bool:
        v, _ = self.reduce(vector)
        return not v


def rank(vectors: Iterable[SparseVector]) -> int:
    """Rank of a family of sparse vectors"""
    basis = EchelonBasis()
    for vector in vectors:
        basis.add(vector)
    return basis.rank


def kernel(images: List[SparseVector]) -> List[SparseVector]:
    """Kernel of the linear map sending basis vector j to images[j]

    Args:
        images: Image of each domain basis vector, as sparse vectors

    Returns:
        List of kernel vectors, each a sparse map from domain index to Fraction
    """
    basis = EchelonBasis()
    result = []
    for j, image in enumerate(images):
        v, w = basis.reduce(image, {j: Fraction(1)})
        if not v:
            result.append(w)
            continue
        pivot = min(v)
        inv = 1 / v[pivot]
        basis._rows[pivot] = (scaled(v, inv), scaled(w, inv))
    logger.debug(f"Kernel of {len(images)} columns has dimension {len(result)}")
    return result
