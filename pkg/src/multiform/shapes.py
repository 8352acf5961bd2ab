"""Shapes of multi-forms and canonical index blocks.

A multi-form of signature (p_1, ..., p_N) in dimension D stores one
antisymmetric index block per slot.  Blocks are canonical when strictly
increasing; ``canonicalize`` folds arbitrary index lists onto canonical
blocks with the antisymmetry sign, or kills terms with repeated indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import DomainError, ShapeError


@dataclass(frozen=True)
class Shape:
    """Signature of a multi-form space: dimension, slot degrees, Young label.

    ``label`` is attached only where a projection onto a principal
    subspace is in play; it must then be weakly decreasing with
    label_i <= p_i.  Raw differentials drop the label.
    """

    dim: int
    signature: tuple
    label: tuple | None = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "signature", tuple(int(p) for p in self.signature))
        if self.dim < 1:
            raise ShapeError("dimension must be positive")
        if len(self.signature) < 1:
            raise ShapeError("need at least one slot")
        for p in self.signature:
            if not 0 <= p <= self.dim:
                raise ShapeError(f"slot degree {p} outside [0, {self.dim}]")
        if self.label is not None:
            lab = tuple(int(x) for x in self.label)
            object.__setattr__(self, "label", lab)
            if len(lab) != len(self.signature):
                raise ShapeError("label length must match signature length")
            if any(lab[i] > self.signature[i] for i in range(len(lab))):
                raise ShapeError("label entries cannot exceed slot degrees")
            if any(lab[i] < lab[i + 1] for i in range(len(lab) - 1)):
                raise ShapeError(f"Young label {lab} is not weakly decreasing")
            if any(x < 0 for x in lab):
                raise ShapeError("negative label entry")

    @property
    def n_slots(self) -> int:
        return len(self.signature)

    def unlabelled(self) -> "Shape":
        if self.label is None:
            return self
        return Shape(self.dim, self.signature)

    def principal(self) -> "Shape":
        """Attach the Young label equal to the signature itself."""
        return Shape(self.dim, self.signature, self.signature)

    def is_principal(self) -> bool:
        return self.label is not None and self.label == self.signature

    def block_count(self) -> int:
        n = 1
        for p in self.signature:
            n *= _binom(self.dim, p)
        return n

    def block_tuples(self):
        """All canonical block tuples of this shape, lexicographically."""
        per_slot = [
            list(itertools.combinations(range(self.dim), p)) for p in self.signature
        ]
        return [tuple(bt) for bt in itertools.product(*per_slot)]

    def __repr__(self):
        sig = "x".join(str(p) for p in self.signature)
        lab = "" if self.label is None else f";{list(self.label)}"
        return f"Shape(D={self.dim},{sig}{lab})"


def _binom(n, k):
    if k < 0 or k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def sort_with_sign(indices):
    """Sort an index list, returning (tuple, sign); sign 0 on repeats."""
    idx = list(indices)
    seen = set()
    for v in idx:
        if v in seen:
            return tuple(sorted(idx)), 0
        seen.add(v)
    sign = 1
    # insertion sort; small blocks, and the swap count gives the parity
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return tuple(idx), sign


def canonicalize(raw_blocks, dim: int):
    """Canonicalize one term's index blocks.

    Returns (block_tuple, sign) with sign in {-1, 0, +1}; sign 0 signals a
    repeated index inside some block (the term is zero by antisymmetry).
    """
    blocks = []
    total_sign = 1
    for raw in raw_blocks:
        for v in raw:
            if not 0 <= int(v) < dim:
                raise DomainError(f"index {v} outside [0, {dim - 1}]")
        block, sign = sort_with_sign(int(v) for v in raw)
        if sign == 0:
            return tuple(tuple(sorted(set(map(int, r)))) for r in raw_blocks), 0
        total_sign *= sign
        blocks.append(block)
    return tuple(blocks), total_sign


def insert_index(block, value):
    """Insert ``value`` into a sorted block: (new_block, sign) or (None, 0)."""
    if value in block:
        return None, 0
    pos = 0
    while pos < len(block) and block[pos] < value:
        pos += 1
    sign = -1 if pos % 2 else 1
    return block[:pos] + (value,) + block[pos:], sign


def remove_index(block, value):
    """Remove ``value`` from a sorted block: (new_block, sign) or (None, 0).

    Sign is the parity of the position, matching interior contraction with
    the first slot of the wedge.
    """
    if value not in block:
        return None, 0
    pos = block.index(value)
    sign = -1 if pos % 2 else 1
    return block[:pos] + block[pos + 1 :], sign


def complement_block(block, dim):
    """The complementary sorted block and the permutation sign of (block, rest).

    The sign is the signature of the permutation sending (0, ..., dim-1)
    to the concatenation block + complement.
    """
    rest = tuple(i for i in range(dim) if i not in block)
    perm = list(block) + list(rest)
    _, sign = sort_with_sign(perm)
    return rest, sign
