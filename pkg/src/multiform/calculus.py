"""Slot differentials, the composite nilpotent differential, field
strengths, and slot Hodge maps.

Conventions fixed here once:

* Slot differentials carry no cross-slot sign, so d_i and d_j commute
  exactly (rather than anticommute) for i != j.
* The composite differential raises every slot degree by one and then
  projects onto the principal subspace of the raised signature.  On
  principal inputs the projection fixes the image pointwise (checked in
  the test suite), so nilpotency reduces to the raw commuting case.
* A slot at top degree D differentiates to the zero multiform; the zero
  result keeps the input shape as its carrier since the target space is
  the zero space.  This is flagged by ``is_zero`` rather than an error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coefficients import Coefficient
from .errors import DomainError, NotMeaningfulError
from .forms import MultiForm
from .shapes import Shape, complement_block, insert_index
from .young import project, young_projector


@dataclass(frozen=True)
class Metric:
    """Diagonal metric: +1/-1 flags per coordinate."""

    dim: int
    flags: tuple

    def __post_init__(self):
        flags = tuple(int(f) for f in self.flags)
        object.__setattr__(self, "flags", flags)
        if len(flags) != self.dim:
            raise DomainError("metric needs one flag per coordinate")
        if any(f not in (1, -1) for f in flags):
            raise DomainError("metric flags must be +1 or -1")

    @staticmethod
    def euclidean(dim: int) -> "Metric":
        return Metric(dim, (1,) * dim)

    @staticmethod
    def minkowski(dim: int) -> "Metric":
        return Metric(dim, (-1,) + (1,) * (dim - 1))

    @property
    def det_sign(self) -> int:
        s = 1
        for f in self.flags:
            s *= f
        return s


def slot_differential(form: MultiForm, slot: int) -> MultiForm:
    """d acting on one slot (1-based), antisymmetrized derivative components."""
    n = form.shape.n_slots
    if not 1 <= slot <= n:
        raise DomainError(f"slot {slot} outside [1, {n}]")
    i = slot - 1
    sig = form.shape.signature
    dim = form.shape.dim
    if sig[i] == dim:
        # top slot degree: the target space is zero
        return MultiForm.zero(form.shape.unlabelled(), form.domain)
    target = Shape(dim, sig[:i] + (sig[i] + 1,) + sig[i + 1 :])
    acc = {}
    for blocks, coeff in form.terms.items():
        block = blocks[i]
        for h in range(dim):
            if h in block:
                continue
            dc = coeff.diff(h)
            if dc.is_zero():
                continue
            new_block, sign = insert_index(block, h)
            new_blocks = blocks[:i] + (new_block,) + blocks[i + 1 :]
            add = dc if sign == 1 else dc.scale(sign)
            prev = acc.get(new_blocks)
            s = add if prev is None else prev + add
            if s.is_zero():
                acc.pop(new_blocks, None)
            else:
                acc[new_blocks] = s
    return MultiForm(target, form.domain, acc)


def raw_composite_differential(form: MultiForm, slots) -> MultiForm:
    out = form
    for s in slots:
        out = slot_differential(out, s)
        if out.is_zero():
            return out
    return out


def _project_onto_label(form: MultiForm, label) -> MultiForm:
    label = tuple(label)
    if any(label[i] < label[i + 1] for i in range(len(label) - 1)):
        raise NotMeaningfulError(
            f"target Young label {label} is not weakly decreasing: "
            "field strength is not meaningful"
        )
    proj = young_projector(Shape(form.shape.dim, label, label))
    return project(form, proj)


def field_strength(form: MultiForm, slots) -> MultiForm:
    """Differentials on the given slots (1-based) followed by projection."""
    slots = list(slots)
    sig = list(form.shape.signature)
    dim = form.shape.dim
    for s in slots:
        if not 1 <= s <= len(sig):
            raise DomainError(f"slot {s} outside [1, {len(sig)}]")
        sig[s - 1] += 1
    target_label = tuple(sig)
    if any(p < q for p, q in zip(target_label, target_label[1:])):
        raise NotMeaningfulError(
            f"target Young label {target_label} is not weakly decreasing: "
            "field strength is not meaningful"
        )
    if any(p > dim for p in target_label):
        # some slot passed top degree; the target space is zero
        return MultiForm.zero(form.shape.unlabelled(), form.domain)
    raw = raw_composite_differential(form, slots)
    if raw.is_zero():
        return MultiForm.zero(
            Shape(dim, target_label, target_label), form.domain
        )
    return _project_onto_label(raw, target_label)


def delta(form: MultiForm) -> MultiForm:
    """The composite differential: all slots raised, then projected.

    Squares to zero exactly, including the interleaved projections.
    """
    n = form.shape.n_slots
    return field_strength(form, range(1, n + 1))


def slot_field_strength(form: MultiForm, slot: int) -> MultiForm:
    """Partial field strength from a single slot differential."""
    return field_strength(form, [slot])


def cumulative_field_strength(form: MultiForm, k: int) -> MultiForm:
    """Differentials on slots 1..k, projected; k = N is the full strength."""
    n = form.shape.n_slots
    if not 1 <= k <= n:
        raise DomainError(f"cumulative order {k} outside [1, {n}]")
    return field_strength(form, range(1, k + 1))


def slot_hodge(form: MultiForm, slot: int, metric: Metric) -> MultiForm:
    """Hodge map on one slot (1-based) for a diagonal metric.

    Acting on a basis wedge, the slot block is replaced by its sorted
    complement with the permutation sign of (block, complement) and the
    product of metric flags over the block indices.  Applying the same
    slot twice gives (-1)^(p(D-p)) * det_sign * identity.
    """
    n = form.shape.n_slots
    if not 1 <= slot <= n:
        raise DomainError(f"slot {slot} outside [1, {n}]")
    dim = form.shape.dim
    if metric.dim != dim:
        raise DomainError("metric dimension differs from form dimension")
    i = slot - 1
    sig = form.shape.signature
    target = Shape(dim, sig[:i] + (dim - sig[i],) + sig[i + 1 :])
    acc = {}
    for blocks, coeff in form.terms.items():
        block = blocks[i]
        comp, sign = complement_block(block, dim)
        for b in block:
            sign *= metric.flags[b]
        new_blocks = blocks[:i] + (comp,) + blocks[i + 1 :]
        add = coeff if sign == 1 else coeff.scale(sign)
        prev = acc.get(new_blocks)
        acc[new_blocks] = add if prev is None else prev + add
    return MultiForm(target, form.domain, acc)


def full_hodge(form: MultiForm, metric: Metric, slots=None) -> MultiForm:
    """Hodge on the given slots (default all), slot order immaterial."""
    n = form.shape.n_slots
    out = form
    for s in slots if slots is not None else range(1, n + 1):
        out = slot_hodge(out, s, metric)
    return out


def contract(a: MultiForm, b: MultiForm, metric: Metric) -> Fraction:
    """Full metric contraction of the constant components, block by block.

    Linear in both arguments; used as the desk-scale charge pairing.
    """
    if a.shape.unlabelled() != b.shape.unlabelled():
        raise DomainError("contraction needs equal shapes")
    total = Fraction(0)
    for blocks, ca in a.terms.items():
        cb = b.terms.get(blocks)
        if cb is None:
            continue
        weight = 1
        for block in blocks:
            for v in block:
                weight *= metric.flags[v]
        total += weight * ca.constant_component() * cb.constant_component()
    return total
