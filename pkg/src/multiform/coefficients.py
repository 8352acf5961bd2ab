"""Scalar coefficient fields attached to multi-form components.

Three variants share one sparse representation (dict from basis key to
exact scalar):

* ``rational``   -- a single constant; key is ``()``.
* ``poly_box``   -- polynomials on a polyinterval containing the origin;
                    keys are exponent tuples, scalars are Fractions.
* ``trig_torus`` -- trigonometric polynomials on the D-torus written as
                    complex waves e^{i k.x}; keys are frequency tuples with
                    |k_j| <= freq_cap, scalars are Gaussian rationals.

Differentiation never leaves a variant.  The definite integral from the
origin (used by the homotopy) is defined for polynomials only and may
raise the total degree above the domain's cap; the cap is a basis
enumeration bound, not an arithmetic invariant.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import DocumentError, DomainError, UnsupportedDomainError
from .scalars import GaussianRational, I_UNIT

RATIONAL = "rational"
POLY_BOX = "poly_box"
TRIG_TORUS = "trig_torus"

_KINDS = (RATIONAL, POLY_BOX, TRIG_TORUS)


@dataclass(frozen=True)
class CoefficientDomain:
    """Where coefficients live: kind + dimension + enumeration caps.

    ``box`` is the open polyinterval for poly_box domains, stored as
    (lo, hi) Fraction pairs; it must contain the origin.  The default box
    is (-1, 1)^dim.
    """

    kind: str
    dim: int
    degree_cap: int | None = None
    freq_cap: int | None = None
    box: tuple | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DocumentError(f"unknown coefficient domain kind {self.kind!r}")
        if self.dim < 1:
            raise DocumentError("coefficient domain needs dim >= 1")
        if self.kind == POLY_BOX:
            if self.degree_cap is None or self.degree_cap < 0:
                raise DocumentError("poly_box domain needs degree_cap >= 0")
            box = self.box
            if box is None:
                box = tuple((Fraction(-1), Fraction(1)) for _ in range(self.dim))
                object.__setattr__(self, "box", box)
            else:
                box = tuple((Fraction(lo), Fraction(hi)) for lo, hi in box)
                object.__setattr__(self, "box", box)
                if len(box) != self.dim:
                    raise DocumentError("box length must equal dim")
                for lo, hi in box:
                    if not (lo < 0 < hi):
                        raise DocumentError("box must contain the origin")
        elif self.kind == TRIG_TORUS:
            if self.freq_cap is None or self.freq_cap < 0:
                raise DocumentError("trig_torus domain needs freq_cap >= 0")

    # -- constructors -----------------------------------------------------
    @staticmethod
    def rational(dim: int) -> "CoefficientDomain":
        return CoefficientDomain(RATIONAL, dim)

    @staticmethod
    def box(dim: int, degree_cap: int, box=None) -> "CoefficientDomain":
        return CoefficientDomain(POLY_BOX, dim, degree_cap=degree_cap, box=box)

    @staticmethod
    def torus(dim: int, freq_cap: int) -> "CoefficientDomain":
        return CoefficientDomain(TRIG_TORUS, dim, freq_cap=freq_cap)

    # -- basis enumeration -------------------------------------------------
    def basis_keys(self, cap_override=None):
        """All basis keys within the cap, in a fixed deterministic order."""
        if self.kind == RATIONAL:
            return [()]
        if self.kind == POLY_BOX:
            cap = self.degree_cap if cap_override is None else cap_override
            if cap < 0:
                return []
            return sorted(_monomials_upto(self.dim, cap))
        cap = self.freq_cap if cap_override is None else cap_override
        rng = range(-cap, cap + 1)
        return sorted(itertools.product(rng, repeat=self.dim))

    def zero_scalar(self):
        return GaussianRational() if self.kind == TRIG_TORUS else Fraction(0)

    def coerce_scalar(self, s):
        if self.kind == TRIG_TORUS:
            if isinstance(s, GaussianRational):
                return s
            return GaussianRational(s, 0)
        if isinstance(s, GaussianRational):
            if s.im != 0:
                raise DomainError("complex scalar in a rational coefficient domain")
            return s.re
        return Fraction(s)

    def validate_key(self, key):
        if self.kind == RATIONAL:
            if key != ():
                raise DocumentError("rational coefficients have a single unit key")
            return ()
        key = tuple(int(k) for k in key)
        if len(key) != self.dim:
            raise DocumentError(f"key {key} has wrong length for dim {self.dim}")
        if self.kind == POLY_BOX:
            if any(e < 0 for e in key):
                raise DocumentError(f"negative exponent in {key}")
        else:
            if any(abs(k) > self.freq_cap for k in key):
                raise DocumentError(f"frequency {key} exceeds cap {self.freq_cap}")
        return key


def _monomials_upto(dim, cap):
    def rec(remaining_slots, budget):
        if remaining_slots == 1:
            for e in range(budget + 1):
                yield (e,)
            return
        for e in range(budget + 1):
            for rest in rec(remaining_slots - 1, budget - e):
                yield (e,) + rest

    return list(rec(dim, cap))


class Coefficient:
    """One exact scalar field: sparse map from basis key to scalar.

    Instances are immutable by convention; all operations return fresh
    objects and callers never mutate ``terms``.
    """

    __slots__ = ("domain", "terms")

    def __init__(self, domain: CoefficientDomain, terms: dict):
        self.domain = domain
        self.terms = {k: v for k, v in terms.items() if v}

    # -- constructors -----------------------------------------------------
    @staticmethod
    def zero(domain: CoefficientDomain) -> "Coefficient":
        return Coefficient(domain, {})

    @staticmethod
    def constant(domain: CoefficientDomain, value) -> "Coefficient":
        value = domain.coerce_scalar(value)
        if domain.kind == RATIONAL:
            return Coefficient(domain, {(): value})
        if domain.kind == POLY_BOX:
            return Coefficient(domain, {(0,) * domain.dim: value})
        return Coefficient(domain, {(0,) * domain.dim: value})

    @staticmethod
    def monomial(domain: CoefficientDomain, exponents, value=1) -> "Coefficient":
        if domain.kind != POLY_BOX:
            raise DomainError("monomial coefficients need a poly_box domain")
        key = domain.validate_key(tuple(exponents))
        return Coefficient(domain, {key: Fraction(value)})

    @staticmethod
    def wave(domain: CoefficientDomain, freq, amplitude=1) -> "Coefficient":
        if domain.kind != TRIG_TORUS:
            raise DomainError("wave coefficients need a trig_torus domain")
        key = domain.validate_key(tuple(freq))
        return Coefficient(domain, {key: domain.coerce_scalar(amplitude)})

    # -- ring operations ---------------------------------------------------
    def _check_same_domain(self, other: "Coefficient"):
        if self.domain != other.domain:
            raise DomainError("coefficients from different domains")

    def __add__(self, other: "Coefficient") -> "Coefficient":
        self._check_same_domain(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        return Coefficient(self.domain, out)

    def __neg__(self) -> "Coefficient":
        return Coefficient(self.domain, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "Coefficient") -> "Coefficient":
        return self + (-other)

    def scale(self, s) -> "Coefficient":
        if not s:
            return Coefficient.zero(self.domain)
        s = self.domain.coerce_scalar(s) if not isinstance(s, (int, Fraction)) else s
        return Coefficient(self.domain, {k: v * s for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Coefficient):
            return NotImplemented
        return self.domain == other.domain and self.terms == other.terms

    def __hash__(self):
        return hash((self.domain, frozenset(self.terms.items())))

    # -- calculus ----------------------------------------------------------
    def diff(self, j: int) -> "Coefficient":
        """Partial derivative with respect to coordinate j."""
        if not 0 <= j < self.domain.dim:
            raise DomainError(f"coordinate {j} out of range")
        kind = self.domain.kind
        if kind == RATIONAL:
            return Coefficient.zero(self.domain)
        out = {}
        if kind == POLY_BOX:
            for key, v in self.terms.items():
                e = key[j]
                if e == 0:
                    continue
                nk = key[:j] + (e - 1,) + key[j + 1 :]
                s = out.get(nk)
                s = v * e if s is None else s + v * e
                if s:
                    out[nk] = s
                elif nk in out:
                    del out[nk]
        else:
            for key, v in self.terms.items():
                k_j = key[j]
                if k_j == 0:
                    continue
                out[key] = v * GaussianRational(0, k_j)
        return Coefficient(self.domain, out)

    def mul_coordinate(self, j: int) -> "Coefficient":
        """Multiply by the coordinate x_j (polynomials only)."""
        if self.domain.kind != POLY_BOX:
            raise UnsupportedDomainError("coordinate multiplication needs polynomials")
        out = {}
        for key, v in self.terms.items():
            nk = key[:j] + (key[j] + 1,) + key[j + 1 :]
            out[nk] = v
        return Coefficient(self.domain, out)

    def integrate_from_zero(self, j: int) -> "Coefficient":
        """Definite integral from 0 to x_j in coordinate j (polynomials only).

        Raises total degree by one; the homotopy is the only caller and the
        domain cap is an enumeration bound, so no cap check happens here.
        """
        if self.domain.kind != POLY_BOX:
            raise UnsupportedDomainError(
                "integration from the origin is defined on polyinterval domains only"
            )
        out = {}
        for key, v in self.terms.items():
            e = key[j]
            nk = key[:j] + (e + 1,) + key[j + 1 :]
            out[nk] = v / (e + 1)
        return Coefficient(self.domain, out)

    def constant_component(self):
        """The zero-frequency / degree-zero scalar part."""
        if self.domain.kind == RATIONAL:
            key = ()
        else:
            key = (0,) * self.domain.dim
        return self.terms.get(key, self.domain.zero_scalar())

    # -- structure ----------------------------------------------------------
    def total_degree(self):
        """Max total degree (poly) or max |k|_inf (trig); None for constants."""
        if not self.terms:
            return None
        if self.domain.kind == POLY_BOX:
            return max(sum(k) for k in self.terms)
        if self.domain.kind == TRIG_TORUS:
            return max(max(abs(c) for c in k) if k else 0 for k in self.terms)
        return 0

    def homogeneous_parts(self):
        """Split a polynomial by total degree; returns {degree: Coefficient}."""
        if self.domain.kind != POLY_BOX:
            raise UnsupportedDomainError("homogeneous split needs polynomials")
        buckets = {}
        for key, v in self.terms.items():
            buckets.setdefault(sum(key), {})[key] = v
        return {g: Coefficient(self.domain, t) for g, t in sorted(buckets.items())}

    def __repr__(self):
        if not self.terms:
            return "Coefficient(0)"
        bits = [f"{v!r}*{k}" for k, v in sorted(self.terms.items())]
        return "Coefficient(" + " + ".join(bits) + ")"
