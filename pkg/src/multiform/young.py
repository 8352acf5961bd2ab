"""Young projection onto principal subspaces of the block-tuple basis.

The projector for a signature (p_1 >= ... >= p_N) is built from the
tableau whose i-th column holds slot i's indices: symmetrize along rows,
antisymmetrize along columns (the trailing antisymmetrizer of the
sandwich is the identity on the wedge basis and is omitted).  The raw
operator y satisfies y.y = alpha.y; the normalization alpha is detected
by comparing y.y against y entrywise and dividing, which guarantees exact
idempotence without quoting hook-length constants.

The operator preserves the multiset of indices of a term, so it is
stored block-diagonally per index multiset; groups are computed lazily.
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction

from .errors import DomainError, InternalConsistencyError, ShapeError
from .forms import MultiForm
from .linalg import bareiss_rank, integer_matrix_is_idempotent
from .shapes import Shape, sort_with_sign


def _diagram_rows(signature):
    """Row r of the diagram lists the slots whose column reaches row r."""
    height = signature[0] if signature else 0
    return [[i for i, p in enumerate(signature) if p > r] for r in range(height)]


def _signed_permutations(values):
    """All orderings of ``values`` with the permutation sign."""
    out = []
    for perm in itertools.permutations(range(len(values))):
        _, sign = sort_with_sign(perm)
        out.append((tuple(values[i] for i in perm), sign))
    return out


class ProjectorMatrix:
    """Exact idempotent projector on the span of canonical block tuples.

    Entries are count/kappa with integer counts and one integer kappa, so
    idempotence and rank checks run on integer matrices.
    """

    def __init__(self, shape: Shape):
        sig = shape.signature
        if any(sig[i] < sig[i + 1] for i in range(len(sig) - 1)):
            raise ShapeError(
                f"signature {sig} is not weakly decreasing: no Young diagram"
            )
        if shape.label is not None and shape.label != sig:
            raise DomainError(
                "projector is defined on principal subspaces (label == signature)"
            )
        self.shape = Shape(shape.dim, sig, sig)
        self._rows = _diagram_rows(sig)
        self._row_perms = self._enumerate_row_perms()
        self._groups = {}
        self._kappa = None

    # -- raw operator -------------------------------------------------------
    def _enumerate_row_perms(self):
        per_row = []
        for row_slots in self._rows:
            per_row.append(
                [perm for perm in itertools.permutations(range(len(row_slots)))]
            )
        return per_row

    def _raw_column(self, blocks):
        """Integer column of the unnormalized operator applied to e_blocks."""
        rows = self._rows
        per_slot = [_signed_permutations(b) for b in blocks]
        out = {}
        for arrangement in itertools.product(*per_slot):
            sign1 = 1
            cols = []
            for values, s in arrangement:
                sign1 *= s
                cols.append(list(values))
            for row_choice in itertools.product(*self._row_perms):
                filled = [list(c) for c in cols]
                for r, perm in enumerate(row_choice):
                    slots = rows[r]
                    vals = [cols[i][r] for i in slots]
                    for k, i in enumerate(slots):
                        filled[i][r] = vals[perm[k]]
                sign2 = 1
                sorted_blocks = []
                for col in filled:
                    block, s = sort_with_sign(col)
                    if s == 0:
                        sign2 = 0
                        break
                    sign2 *= s
                    sorted_blocks.append(block)
                if sign2 == 0:
                    continue
                key = tuple(sorted_blocks)
                out[key] = out.get(key, 0) + sign1 * sign2
        return {k: v for k, v in out.items() if v}

    # -- multiset groups -----------------------------------------------------
    @staticmethod
    def multiset_of(blocks):
        return tuple(sorted(v for b in blocks for v in b))

    def group_basis(self, multiset):
        """All canonical block tuples over a given index multiset."""
        sig = self.shape.signature
        counts = Counter(multiset)

        def rec(slot, counter):
            if slot == len(sig):
                if sum(counter.values()) == 0:
                    yield ()
                return
            p = sig[slot]
            available = sorted(v for v, c in counter.items() if c > 0)
            for combo in itertools.combinations(available, p):
                for v in combo:
                    counter[v] -= 1
                for rest in rec(slot + 1, counter):
                    yield (combo,) + rest
                for v in combo:
                    counter[v] += 1

        return list(rec(0, counts))

    def group(self, multiset):
        cached = self._groups.get(multiset)
        if cached is not None:
            return cached
        basis = self.group_basis(multiset)
        cols = {b: self._raw_column(b) for b in basis}
        entry = {"basis": basis, "cols": cols}
        self._groups[multiset] = entry
        if self._kappa is None and any(cols.values()):
            self._detect_kappa(entry)
        return entry

    def _detect_kappa(self, entry):
        cols = entry["cols"]
        for b, col in cols.items():
            for b2, count in col.items():
                # (M.M)[b2, b] = sum_k M[b2, k] M[k, b]
                square = sum(cols[k].get(b2, 0) * v for k, v in col.items())
                if count:
                    if square % count:
                        raise InternalConsistencyError(
                            "projector normalization is not an integer"
                        )
                    kappa = square // count
                    if kappa <= 0:
                        raise InternalConsistencyError(
                            "projector normalization must be positive"
                        )
                    self._kappa = kappa
                    if not integer_matrix_is_idempotent(cols, kappa):
                        raise InternalConsistencyError(
                            "raw Young operator is not proportional to an idempotent"
                        )
                    return

    @property
    def kappa(self) -> int:
        if self._kappa is None:
            # force evaluation over groups until a nonzero column appears
            for multiset in self._all_multisets():
                self.group(multiset)
                if self._kappa is not None:
                    return self._kappa
            raise InternalConsistencyError("Young operator vanished identically")
        return self._kappa

    def _all_multisets(self):
        seen = set()
        for blocks in self.shape.block_tuples():
            m = self.multiset_of(blocks)
            if m not in seen:
                seen.add(m)
                yield m

    # -- public surface -------------------------------------------------------
    def column(self, blocks):
        """Projector column for one basis element, as {blocks: Fraction}."""
        entry = self.group(self.multiset_of(blocks))
        kappa = self.kappa
        return {b: Fraction(c, kappa) for b, c in entry["cols"][blocks].items()}

    def is_idempotent(self) -> bool:
        kappa = self.kappa
        return all(
            integer_matrix_is_idempotent(self.group(m)["cols"], kappa)
            for m in self._all_multisets()
        )

    def rank(self) -> int:
        """Exact rank, i.e. the dimension of the principal subspace."""
        total = 0
        for m in self._all_multisets():
            entry = self.group(m)
            basis = entry["basis"]
            pos = {b: i for i, b in enumerate(basis)}
            rows = [[0] * len(basis) for _ in basis]
            for j, b in enumerate(basis):
                for b2, c in entry["cols"][b].items():
                    rows[pos[b2]][j] = c
            total += bareiss_rank(rows)
        return total

    def dense(self):
        """Assembled dense Fraction matrix on the full block-tuple basis."""
        basis = self.shape.block_tuples()
        pos = {b: i for i, b in enumerate(basis)}
        kappa = self.kappa
        mat = [[Fraction(0)] * len(basis) for _ in basis]
        for j, b in enumerate(basis):
            entry = self.group(self.multiset_of(b))
            for b2, c in entry["cols"][b].items():
                mat[pos[b2]][j] = Fraction(c, kappa)
        return basis, mat


_PROJECTOR_CACHE: dict = {}


def young_projector(shape: Shape) -> ProjectorMatrix:
    """The idempotent projector onto the principal subspace of ``shape``."""
    key = (shape.dim, shape.signature)
    proj = _PROJECTOR_CACHE.get(key)
    if proj is None:
        proj = ProjectorMatrix(shape)
        _PROJECTOR_CACHE[key] = proj
    return proj


def project(form: MultiForm, projector: ProjectorMatrix) -> MultiForm:
    """Apply the projector coefficient-wise; the result carries the label."""
    if form.shape.unlabelled() != projector.shape.unlabelled():
        raise DomainError(
            f"projector shape {projector.shape} does not match form {form.shape}"
        )
    kappa = projector.kappa
    acc = {}
    for blocks, coeff in form.terms.items():
        entry = projector.group(projector.multiset_of(blocks))
        for b2, count in entry["cols"][blocks].items():
            add = coeff.scale(Fraction(count, kappa))
            prev = acc.get(b2)
            s = add if prev is None else prev + add
            if s.is_zero():
                acc.pop(b2, None)
            else:
                acc[b2] = s
    return MultiForm(projector.shape, form.domain, acc)


def irrep_dimension(shape: Shape) -> int:
    """Dimension of the GL(D) irrep with the given column heights.

    Hook content product.  The independent brute-force oracle is
    ``projector_rank``; the two must agree wherever both run.
    """
    sig = tuple(p for p in shape.signature if p > 0)
    if any(sig[i] < sig[i + 1] for i in range(len(sig) - 1)):
        raise ShapeError(f"no Young diagram for signature {shape.signature}")
    if not sig:
        return 1
    d = shape.dim
    height = sig[0]
    mu = [sum(1 for p in sig if p > r) for r in range(height)]  # row lengths
    num = Fraction(1)
    for r in range(len(mu)):
        for c in range(mu[r]):
            content = d + c - r
            hook = (mu[r] - c) + (sig[c] - r) - 1
            num *= Fraction(content, hook)
    if num.denominator != 1:
        raise InternalConsistencyError("hook content product is not an integer")
    return int(num)


def projector_rank(shape: Shape) -> int:
    """Brute-force oracle: exact rank of the assembled projector."""
    return young_projector(shape).rank()
