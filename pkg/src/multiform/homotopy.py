"""Constructive inverse of the composite differential on polyintervals.

Given a closed principal multi-form with polynomial coefficients on a box
containing the origin, produce a potential whose composite differential
reproduces it exactly.

The construction is grade-wise over homogeneous coefficient degree.  For
each grade the fast path contracts every slot with the Euler vector field
(the radial homotopy scaled to the grade) and detects the proportionality
constant exactly; when the contraction is not proportional to the input,
an exact sparse linear solve over the monomial-block basis steps in.
Either way the witness is verified before it is returned, so a defective
potential can never escape.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .calculus import delta, raw_composite_differential
from .coefficients import POLY_BOX, Coefficient, CoefficientDomain
from .errors import (
    InternalConsistencyError,
    NotClosedError,
    PreconditionError,
    UnsupportedDomainError,
)
from .forms import MultiForm
from .linalg import ColumnSpace
from .shapes import Shape, remove_index
from .young import project, young_projector


@dataclass(frozen=True)
class HomotopyWitness:
    """A potential together with the closed form it reproduces."""

    potential: MultiForm
    target: MultiForm

    def __post_init__(self):
        if delta(self.potential) != self.target:
            raise InternalConsistencyError(
                "homotopy witness does not reproduce its target"
            )


def euler_contraction(form: MultiForm, slot: int) -> MultiForm:
    """Interior product of one slot with the Euler vector x^j d_j."""
    i = slot - 1
    sig = form.shape.signature
    if sig[i] == 0:
        return MultiForm.zero(
            Shape(form.shape.dim, sig), form.domain
        )
    target = Shape(form.shape.dim, sig[:i] + (sig[i] - 1,) + sig[i + 1 :])
    acc = {}
    for blocks, coeff in form.terms.items():
        block = blocks[i]
        for b in block:
            new_block, sign = remove_index(block, b)
            add = coeff.mul_coordinate(b)
            if sign != 1:
                add = add.scale(sign)
            new_blocks = blocks[:i] + (new_block,) + blocks[i + 1 :]
            prev = acc.get(new_blocks)
            s = add if prev is None else prev + add
            if s.is_zero():
                acc.pop(new_blocks, None)
            else:
                acc[new_blocks] = s
    return MultiForm(target, form.domain, acc)


def _homogeneous_parts(form: MultiForm):
    buckets = {}
    for blocks, coeff in form.terms.items():
        for g, part in coeff.homogeneous_parts().items():
            buckets.setdefault(g, {})[blocks] = part
    return {
        g: MultiForm(form.shape, form.domain, terms)
        for g, terms in sorted(buckets.items())
    }


def _proportionality(candidate: MultiForm, target: MultiForm):
    """If candidate == c * target with c != 0, return c, else None."""
    if target.is_zero() or candidate.is_zero():
        return None
    blocks, coeff = next(iter(target.terms.items()))
    other = candidate.terms.get(blocks)
    if other is None:
        return None
    key, val = next(iter(coeff.terms.items()))
    oval = other.terms.get(key)
    if not oval:
        return None
    c = oval / val
    if candidate == target.scale(c):
        return c
    return None


def _euler_grade_potential(part: MultiForm):
    """Fast path: full Euler contraction, normalized by exact detection."""
    n = part.shape.n_slots
    k = part
    for slot in range(n, 0, -1):
        k = euler_contraction(k, slot)
        if k.is_zero():
            return None
    image = raw_composite_differential(k, range(1, n + 1))
    c = _proportionality(image, part)
    if c is None:
        return None
    return k.scale(1 / c)


def _solve_grade_potential(part: MultiForm, grade: int):
    """Exact sparse solve of the composite differential at one grade."""
    shape = part.shape
    n = shape.n_slots
    dim = shape.dim
    src_sig = tuple(p - 1 for p in shape.signature)
    src_shape = Shape(dim, src_sig)
    dom = part.domain
    mono = [
        key
        for key in dom.basis_keys(cap_override=grade + n)
        if sum(key) == grade + n
    ]
    space = ColumnSpace(track=True)
    originals = {}
    for blocks in src_shape.block_tuples():
        for key in mono:
            gen = MultiForm(
                src_shape, dom, {blocks: Coefficient(dom, {key: Fraction(1)})}
            )
            img = raw_composite_differential(gen, range(1, n + 1))
            col = {
                (b, k): v
                for b, c in img.terms.items()
                for k, v in c.terms.items()
            }
            if not col:
                continue
            tag = (blocks, key)
            originals[tag] = gen
            space.add(col, tag)
    target_col = {
        (b, k): v for b, c in part.terms.items() for k, v in c.terms.items()
    }
    combo = space.membership(target_col)
    if combo is None:
        return None
    out = MultiForm.zero(src_shape, dom)
    for tag, weight in combo.items():
        out = out + originals[tag].scale(weight)
    return out


def poincare_homotopy(form: MultiForm) -> HomotopyWitness:
    """Potential for a closed principal polynomial multi-form.

    Raises NotClosedError (with the residual) when the input is not
    closed, UnsupportedDomainError off polynomial domains, and
    PreconditionError when a slot degree is zero or the input is not in
    the principal subspace.
    """
    if form.domain.kind != POLY_BOX:
        raise UnsupportedDomainError(
            "the homotopy is defined on polyinterval polynomial domains only"
        )
    sig = form.shape.signature
    if any(p < 1 for p in sig):
        raise PreconditionError("homotopy needs every slot degree >= 1")
    if any(sig[i] < sig[i + 1] for i in range(len(sig) - 1)):
        raise PreconditionError(f"signature {sig} admits no Young label")
    dim = form.shape.dim
    src_shape = Shape(dim, tuple(p - 1 for p in sig))
    if form.is_zero():
        return HomotopyWitness(MultiForm.zero(src_shape, form.domain), form)
    principal = project(form, young_projector(Shape(dim, sig, sig)))
    if principal != form:
        raise PreconditionError(
            "input is not in the principal subspace; no potential exists"
        )
    residual = delta(form)
    if not residual.is_zero():
        raise NotClosedError("input is not closed", residual=residual)
    potential = MultiForm.zero(src_shape, form.domain)
    for grade, part in _homogeneous_parts(form).items():
        s = _euler_grade_potential(part)
        if s is None:
            s = _solve_grade_potential(part, grade)
        if s is None:
            raise InternalConsistencyError(
                f"closed principal input has no polynomial potential at grade {grade}"
            )
        potential = potential + s
    return HomotopyWitness(potential, form)
