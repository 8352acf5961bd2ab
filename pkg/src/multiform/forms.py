"""The multi-form carrier: sparse terms keyed by canonical block tuples.

A MultiForm is a finite sum  sum_B  c_B(x) dx_{B_1} (x) ... (x) dx_{B_N}
with every B_i strictly increasing and all coefficients drawn from one
CoefficientDomain.  Values are immutable after construction; operations
are pure functions, so instances are safe to share across threads.
"""

from __future__ import annotations

from .coefficients import Coefficient, CoefficientDomain
from .errors import DomainError
from .shapes import Shape, canonicalize


class MultiForm:
    __slots__ = ("shape", "domain", "terms")

    def __init__(self, shape: Shape, domain: CoefficientDomain, terms: dict):
        if domain.dim != shape.dim:
            raise DomainError("coefficient domain dimension differs from shape")
        self.shape = shape
        self.domain = domain
        clean = {}
        for blocks, coeff in terms.items():
            if coeff.is_zero():
                continue
            if coeff.domain != domain:
                raise DomainError("mixed coefficient domains in one multiform")
            self._check_blocks(blocks)
            clean[blocks] = coeff
        self.terms = clean

    def _check_blocks(self, blocks):
        sig = self.shape.signature
        if len(blocks) != len(sig):
            raise DomainError(f"term has {len(blocks)} blocks, expected {len(sig)}")
        for block, degree in zip(blocks, sig):
            if len(block) != degree:
                raise DomainError(f"block {block} has wrong degree (want {degree})")
            if any(not 0 <= v < self.shape.dim for v in block):
                raise DomainError(f"index out of range in block {block}")
            if any(block[i] >= block[i + 1] for i in range(len(block) - 1)):
                raise DomainError(f"non-canonical block {block}")

    # -- constructors -----------------------------------------------------
    @staticmethod
    def zero(shape: Shape, domain: CoefficientDomain) -> "MultiForm":
        return MultiForm(shape, domain, {})

    @staticmethod
    def from_raw_terms(shape: Shape, domain: CoefficientDomain, raw_terms):
        """Assemble from (index_lists, Coefficient) pairs, canonicalizing blocks."""
        acc = {}
        for raw_blocks, coeff in raw_terms:
            blocks, sign = canonicalize(raw_blocks, shape.dim)
            if sign == 0 or coeff.is_zero():
                continue
            signed = coeff if sign == 1 else coeff.scale(sign)
            prev = acc.get(blocks)
            acc[blocks] = signed if prev is None else prev + signed
        return MultiForm(shape, domain, acc)

    @staticmethod
    def single(shape: Shape, domain: CoefficientDomain, blocks, coeff) -> "MultiForm":
        return MultiForm.from_raw_terms(shape, domain, [(blocks, coeff)])

    # -- linear structure --------------------------------------------------
    def _check_compatible(self, other: "MultiForm"):
        if self.shape.unlabelled() != other.shape.unlabelled():
            raise DomainError(f"shape mismatch: {self.shape} vs {other.shape}")
        if self.domain != other.domain:
            raise DomainError("coefficient domain mismatch")

    def __add__(self, other: "MultiForm") -> "MultiForm":
        self._check_compatible(other)
        out = dict(self.terms)
        for blocks, coeff in other.terms.items():
            prev = out.get(blocks)
            s = coeff if prev is None else prev + coeff
            if s.is_zero():
                out.pop(blocks, None)
            else:
                out[blocks] = s
        return MultiForm(self.shape, self.domain, out)

    def __neg__(self) -> "MultiForm":
        return MultiForm(
            self.shape, self.domain, {b: -c for b, c in self.terms.items()}
        )

    def __sub__(self, other: "MultiForm") -> "MultiForm":
        return self + (-other)

    def scale(self, s) -> "MultiForm":
        if not s:
            return MultiForm.zero(self.shape, self.domain)
        return MultiForm(
            self.shape, self.domain, {b: c.scale(s) for b, c in self.terms.items()}
        )

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, MultiForm):
            return NotImplemented
        return (
            self.shape.unlabelled() == other.shape.unlabelled()
            and self.domain == other.domain
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(
            (self.shape.unlabelled(), frozenset((b, c) for b, c in self.terms.items()))
        )

    def coefficient(self, blocks) -> Coefficient:
        return self.terms.get(tuple(tuple(b) for b in blocks)) or Coefficient.zero(
            self.domain
        )

    def with_label(self, label) -> "MultiForm":
        return MultiForm(
            Shape(self.shape.dim, self.shape.signature, label), self.domain, self.terms
        )

    def max_coefficient_degree(self):
        degs = [c.total_degree() for c in self.terms.values()]
        degs = [d for d in degs if d is not None]
        return max(degs) if degs else None

    def __repr__(self):
        if not self.terms:
            return f"MultiForm({self.shape}, 0)"
        keys = sorted(self.terms)
        inner = ", ".join(f"{k}: {self.terms[k]!r}" for k in keys[:4])
        if len(keys) > 4:
            inner += f", ... {len(keys)} terms"
        return f"MultiForm({self.shape}, {inner})"
