"""Exact linear algebra on sparse columns.

Everything here is either exact (Fraction / Gaussian rational / integer
Bareiss) or exact-modular (row reduction over a large prime ring, used
only as a certified accelerator: a modular rank is a lower bound on the
rational rank, which certifies h = 0 answers through the dimension
sandwich).  No floating point.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import InternalConsistencyError
from .scalars import scalar_inverse

MOD_PRIMES = (2147483629, 2147483587)


class ColumnSpace:
    """Incremental exact column echelon with expression tracking.

    Columns are dicts mapping row keys (any totally ordered hashables,
    normally ints) to exact scalars.  Stored pivot columns are fully
    reduced (Gauss-Jordan), with a unit leading entry at their pivot row,
    so membership reduction is a single pass.
    """

    def __init__(self, track=True):
        self.track = track
        self.pivots = {}  # pivot row -> (column dict, combo dict | None)
        self.order = []  # pivot rows, insertion order

    @property
    def rank(self):
        return len(self.order)

    def reduce(self, col, combo=None):
        """Reduce ``col`` against the stored pivots.

        Returns (residual, combo).  The invariant maintained is
        residual == sum(combo[tag] * original_column[tag]) + constant part,
        i.e. the quantity (column - sum(combo * originals)) never changes.
        """
        col = {k: v for k, v in col.items() if v}
        combo = dict(combo or {})
        for prow in self.order:
            factor = col.get(prow)
            if not factor:
                continue
            pcol, pcombo = self.pivots[prow]
            for r, v in pcol.items():
                s = col.get(r, 0) - factor * v
                if s:
                    col[r] = s
                else:
                    col.pop(r, None)
            if self.track and pcombo:
                for t, v in pcombo.items():
                    s = combo.get(t, 0) - factor * v
                    if s:
                        combo[t] = s
                    else:
                        combo.pop(t, None)
        return col, combo

    def add(self, col, tag=None):
        """Insert a column; returns True if it enlarged the span."""
        combo0 = {tag: 1} if (self.track and tag is not None) else {}
        residual, combo = self.reduce(col, combo0)
        if not residual:
            return False
        prow = min(residual)
        inv = scalar_inverse(residual[prow])
        new_col = {r: v * inv for r, v in residual.items()}
        new_combo = {t: v * inv for t, v in combo.items()} if self.track else None
        # keep stored pivots fully reduced against the new pivot row
        for other in self.order:
            ocol, ocombo = self.pivots[other]
            f = ocol.get(prow)
            if not f:
                continue
            for r, v in new_col.items():
                s = ocol.get(r, 0) - f * v
                if s:
                    ocol[r] = s
                else:
                    ocol.pop(r, None)
            if self.track and ocombo is not None and new_combo:
                for t, v in new_combo.items():
                    s = ocombo.get(t, 0) - f * v
                    if s:
                        ocombo[t] = s
                    else:
                        ocombo.pop(t, None)
        self.pivots[prow] = (new_col, new_combo)
        self.order.append(prow)
        self.order.sort()
        return True

    def membership(self, col):
        """If ``col`` is in the span, return the combination dict, else None."""
        if not self.track:
            raise InternalConsistencyError("membership needs a tracking ColumnSpace")
        residual, combo = self.reduce(col)
        if residual:
            return None
        return {t: -v for t, v in combo.items()}


def sparse_rank(columns):
    """Exact rank of a list of sparse columns."""
    space = ColumnSpace(track=False)
    for col in columns:
        space.add(col)
    return space.rank


def bareiss_rank(rows):
    """Fraction-free rank of a dense integer matrix (list of row lists)."""
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    if n == 0:
        return 0
    m = len(a[0])
    rank = 0
    prev = 1
    row = 0
    for col in range(m):
        piv = None
        for r in range(row, n):
            if a[r][col]:
                piv = r
                break
        if piv is None:
            continue
        if piv != row:
            a[row], a[piv] = a[piv], a[row]
        pivot = a[row][col]
        for r in range(row + 1, n):
            arc = a[r][col]
            ar = a[r]
            ap = a[row]
            for c in range(col, m):
                ar[c] = (pivot * ar[c] - arc * ap[c]) // prev
        prev = pivot
        rank += 1
        row += 1
        if row == n:
            break
    return rank


def integer_matrix_is_idempotent(cols, denominator):
    """Check (M/den)^2 == M/den for integer sparse columns M."""
    den = int(denominator)
    for j, col in cols.items():
        acc = {}
        for k, v in col.items():
            inner = cols.get(k)
            if not inner:
                continue
            for r, w in inner.items():
                acc[r] = acc.get(r, 0) + v * w
        for r in set(acc) | set(col):
            if acc.get(r, 0) != den * col.get(r, 0):
                return False
    return True


def columns_to_int_dense(columns, row_index):
    """Clear denominators per column; returns np.int64 dense (rows x cols).

    Rank is column-scaling invariant, so each column is scaled by the lcm
    of its denominators and divided by the gcd of the numerators.
    """
    import math

    nrows = len(row_index)
    out = np.zeros((nrows, len(columns)), dtype=object)
    for j, col in enumerate(columns):
        if not col:
            continue
        lcm = 1
        for v in col.values():
            f = Fraction(v)
            lcm = lcm * f.denominator // math.gcd(lcm, f.denominator)
        ints = {r: int(Fraction(v) * lcm) for r, v in col.items()}
        g = 0
        for v in ints.values():
            g = math.gcd(g, v)
        if g > 1:
            ints = {r: v // g for r, v in ints.items()}
        for r, v in ints.items():
            out[row_index[r], j] = v
    return out


def modular_rank(dense_obj_matrix, prime):
    """Row-reduction rank of an integer matrix modulo ``prime``."""
    a = np.array(dense_obj_matrix % prime, dtype=np.int64)
    n, m = a.shape
    rank = 0
    row = 0
    for col in range(m):
        sub = a[row:, col]
        nz = np.nonzero(sub)[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
        inv = pow(int(a[row, col]), prime - 2, prime)
        a[row] = (a[row] * inv) % prime
        below = a[row + 1 :, col]
        mask = np.nonzero(below)[0]
        if mask.size:
            rows = row + 1 + mask
            factors = a[rows, col][:, None]
            a[rows] = (a[rows] - factors * a[row][None, :]) % prime
        rank += 1
        row += 1
        if row == n:
            break
    return rank


def modular_rank_lower_bound(columns, nrows_keys):
    """Best modular rank over the configured primes: a lower bound on rank_Q."""
    row_index = {k: i for i, k in enumerate(sorted(nrows_keys))}
    dense = columns_to_int_dense(columns, row_index)
    return max(modular_rank(dense, p) for p in MOD_PRIMES)
