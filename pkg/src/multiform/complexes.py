"""Augmented composite-differential complexes and their cohomology.

A complex of total length D starts at the all-zero signature.  The
augmentation (k_1, ..., k_{N-1}) spends k_j steps raising slots 1..j
(one unit each), in order; the remaining D - sum(k) spine steps raise
all N slots.  Nodes are principal subspaces.

Cohomology follows the defining arity ladder: at a node with exactly i
positive slot degrees (i < N), the closedness operator acts on slots
1..i+1 while the exactness operator is the node's incoming arrow; at
all-positive nodes both are the full composite differential.  Ranks are
exact; on torus domains they decompose per frequency, and on box domains
per homogeneous coefficient degree, with an exact-modular accelerator
only ever used to confirm vanishing cohomology through the dimension
sandwich (modular rank <= rational rank and h >= 0).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .coefficients import Coefficient, CoefficientDomain
from .errors import (
    DomainError,
    InternalConsistencyError,
    PreconditionError,
    ResourceLimitError,
)
from .forms import MultiForm
from .linalg import ColumnSpace, modular_rank_lower_bound, sparse_rank
from .shapes import Shape
from .young import irrep_dimension, project, young_projector

TORUS = "torus"
BOX = "box"

EXACT_COLUMN_LIMIT = 320


@dataclass(frozen=True)
class ComplexSpec:
    """Node/edge layout of one augmented complex."""

    dim: int
    n_slots: int
    augmentation: tuple
    nodes: tuple  # Shapes with principal labels
    edge_arities: tuple

    @property
    def length(self) -> int:
        return len(self.edge_arities)

    def edge_source(self, e: int) -> Shape:
        return self.nodes[e]

    def edge_target(self, e: int) -> Shape:
        return self.nodes[e + 1]

    def describe(self):
        return {
            "D": self.dim,
            "N": self.n_slots,
            "augmentation": list(self.augmentation),
            "nodes": [list(s.signature) for s in self.nodes],
            "edge_arities": list(self.edge_arities),
        }


def build_complex(dim: int, n_slots: int, augmentation) -> ComplexSpec:
    """Assemble the node/edge sequence of an augmented complex."""
    aug = tuple(int(k) for k in augmentation)
    if n_slots < 1:
        raise DomainError("need at least one slot")
    if len(aug) != n_slots - 1:
        raise DomainError(
            f"augmentation needs {n_slots - 1} entries for {n_slots} slots"
        )
    if any(k < 0 for k in aug):
        raise DomainError("augmentation entries must be nonnegative")
    if sum(aug) > dim:
        raise DomainError(
            f"augmentation length {sum(aug)} exceeds the complex length {dim}"
        )
    sig = [0] * n_slots
    nodes = [Shape(dim, tuple(sig), tuple(sig))]
    arities = []
    for j, k_j in enumerate(aug, start=1):
        for _ in range(k_j):
            for s in range(j):
                sig[s] += 1
            nodes.append(Shape(dim, tuple(sig), tuple(sig)))
            arities.append(j)
    for _ in range(dim - sum(aug)):
        for s in range(n_slots):
            sig[s] += 1
        nodes.append(Shape(dim, tuple(sig), tuple(sig)))
        arities.append(n_slots)
    return ComplexSpec(dim, n_slots, aug, tuple(nodes), tuple(arities))


@dataclass(frozen=True)
class Truncation:
    """Finite-dimensional slice of a complex.

    Torus slices keep every integer frequency with |k_j| <= freq_cap at
    every node (differentials preserve the frequency).  Box slices cap
    the coefficient degree at the first node; every edge of arity a
    lowers polynomial degree by a, so node caps decrease along the
    complex and each edge maps its truncated source onto the full
    relevant degree range of its target.
    """

    kind: str
    freq_cap: int | None = None
    degree_cap: int | None = None
    max_dim: int = 500_000
    nonzero_frequencies_only: bool = False

    def __post_init__(self):
        if self.kind not in (TORUS, BOX):
            raise DomainError(f"unknown truncation kind {self.kind!r}")
        if self.kind == TORUS and (self.freq_cap is None or self.freq_cap < 0):
            raise DomainError("torus truncation needs freq_cap >= 0")
        if self.kind == BOX and (self.degree_cap is None or self.degree_cap < 0):
            raise DomainError("box truncation needs degree_cap >= 0")

    def node_cap(self, spec: ComplexSpec, position: int) -> int:
        if self.kind == TORUS:
            return self.freq_cap
        return self.degree_cap - sum(spec.edge_arities[:position])

    def node_domain(self, spec: ComplexSpec, position: int) -> CoefficientDomain:
        if self.kind == TORUS:
            return CoefficientDomain.torus(spec.dim, self.freq_cap)
        return CoefficientDomain.box(
            spec.dim, max(self.node_cap(spec, position), 0)
        )

    def coefficient_keys(self, spec: ComplexSpec, position: int):
        cap = self.node_cap(spec, position)
        if self.kind == BOX and cap < 0:
            return []
        dom = self.node_domain(spec, position)
        keys = dom.basis_keys(cap_override=cap if self.kind == BOX else None)
        if self.kind == TORUS and self.nonzero_frequencies_only:
            zero = (0,) * spec.dim
            keys = [k for k in keys if k != zero]
        return keys

    def guard(self, spec: ComplexSpec):
        total = 0
        for pos, node in enumerate(spec.nodes):
            total += node.block_count() * max(len(self.coefficient_keys(spec, pos)), 0)
        if total > self.max_dim:
            raise ResourceLimitError(
                f"truncated complex dimension {total} exceeds guard {self.max_dim}"
            )
        return total


def _operator_on_slots(form: MultiForm, arity: int):
    """Raw differential on slots 1..arity followed by target projection.

    Unlike the field-strength wrapper this tolerates empty results and
    returns None when the target leaves the valid degree range.
    """
    from .calculus import raw_composite_differential

    sig = list(form.shape.signature)
    for s in range(arity):
        sig[s] += 1
    if any(p > form.shape.dim for p in sig):
        return None
    target = tuple(sig)
    raw = raw_composite_differential(form, range(1, arity + 1))
    if raw.is_zero():
        return MultiForm.zero(Shape(form.shape.dim, target, target), form.domain)
    proj = young_projector(Shape(form.shape.dim, target, target))
    return project(raw, proj)


@dataclass
class EdgeOperator:
    """Sparse exact matrix of one projected differential on a truncation."""

    spec: ComplexSpec
    position: int  # source node position
    arity: int
    source_shape: Shape
    target_shape: Shape | None
    source_keys: list = field(default_factory=list)
    columns: dict = field(default_factory=dict)  # (blocks, key) -> {(blocks', key'): scalar}

    def rank_profile(self, kind: str):
        """Exact rank, block-decomposed; returns (rank, per_block, certification)."""
        if not self.columns:
            return 0, {}, "exact"
        blocks = {}
        for tag, col in self.columns.items():
            bkey = _block_key(kind, tag)
            blocks.setdefault(bkey, []).append(col)
        total = 0
        per_block = {}
        certification = "exact"
        for bkey in sorted(blocks):
            cols = blocks[bkey]
            if kind == TORUS or len(cols) <= EXACT_COLUMN_LIMIT:
                r = sparse_rank(cols)
            else:
                rows = set()
                for c in cols:
                    rows.update(c)
                r = modular_rank_lower_bound(cols, rows)
                certification = "modular-lower-bound"
            per_block[bkey] = r
            total += r
        return total, per_block, certification


def _block_key(kind, tag):
    blocks, key = tag
    if kind == TORUS:
        return key  # frequency is preserved by the differential
    return sum(key)  # homogeneous coefficient degree


def assemble_operator(
    spec: ComplexSpec,
    edge: int,
    trunc: Truncation,
    position: int | None = None,
    arity: int | None = None,
) -> EdgeOperator:
    """Matrix of one differential on the truncated block x coefficient basis.

    By default this is the complex's drawn arrow ``edge``; the cohomology
    ladder passes an explicit (position, arity) pair when the closedness
    operator is not the drawn arrow.
    """
    if position is None:
        position = edge
    if arity is None:
        arity = spec.edge_arities[edge]
    trunc.guard(spec)
    source = spec.nodes[position]
    dom = trunc.node_domain(spec, position)
    keys = trunc.coefficient_keys(spec, position)
    sig = list(source.signature)
    for s in range(arity):
        sig[s] += 1
    target_shape = None
    if all(p <= spec.dim for p in sig):
        target_shape = Shape(spec.dim, tuple(sig), tuple(sig))
    op = EdgeOperator(spec, position, arity, source, target_shape)
    zero_key = (0,) * spec.dim
    for blocks in source.unlabelled().block_tuples():
        for key in keys:
            if trunc.kind == TORUS:
                coeff = Coefficient.wave(dom, key)
            else:
                coeff = Coefficient(dom, {key: Fraction(1)})
            gen = MultiForm(source.unlabelled(), dom, {blocks: coeff})
            img = _operator_on_slots(gen, arity)
            tag = (blocks, key)
            op.source_keys.append(tag)
            if img is None or img.is_zero():
                op.columns[tag] = {}
                continue
            col = {}
            for b2, c2 in img.terms.items():
                for k2, v in c2.terms.items():
                    col[(b2, k2)] = v
            op.columns[tag] = col
    # torus sanity: frequencies never move
    if trunc.kind == TORUS:
        for (blocks, key), col in op.columns.items():
            for (_, k2) in col:
                if k2 != key:
                    raise InternalConsistencyError("differential moved a frequency")
    return op


def _node_dimension(spec, trunc, position) -> int:
    node = spec.nodes[position]
    n_coeff = len(trunc.coefficient_keys(spec, position))
    if n_coeff == 0:
        return 0
    return irrep_dimension(node) * n_coeff


def _closedness_operator(spec, trunc, position) -> EdgeOperator:
    node = spec.nodes[position]
    positive = sum(1 for p in node.signature if p > 0)
    arity = spec.n_slots if positive >= spec.n_slots else positive + 1
    return assemble_operator(spec, 0, trunc, position=position, arity=arity)


@dataclass
class PositionReport:
    position: int
    signature: tuple
    dimension: int
    kernel_dim: int
    image_dim: int
    h: int
    h_zero_modes: int | None
    h_nonzero: int | None
    certification: str

    def to_json(self):
        return {
            "position": self.position,
            "signature": list(self.signature),
            "dimension": self.dimension,
            "kernel_dim": self.kernel_dim,
            "image_dim": self.image_dim,
            "h": self.h,
            "h_zero_modes": self.h_zero_modes,
            "h_nonzero": self.h_nonzero,
            "certification": self.certification,
        }


@dataclass
class CohomologyReport:
    spec: ComplexSpec
    truncation: Truncation
    positions: list

    @property
    def dims(self):
        return tuple(p.h for p in self.positions)

    def to_json(self):
        doc = {
            "complex": self.spec.describe(),
            "truncation": {
                "kind": self.truncation.kind,
                "freq_cap": self.truncation.freq_cap,
                "degree_cap": self.truncation.degree_cap,
                "nonzero_frequencies_only": self.truncation.nonzero_frequencies_only,
            },
            "positions": [p.to_json() for p in self.positions],
            "dims": list(self.dims),
        }
        return doc


def cohomology(spec: ComplexSpec, trunc: Truncation) -> CohomologyReport:
    """Exact cohomology dimensions per position of the truncated complex."""
    trunc.guard(spec)
    reports = []
    in_ranks = {}
    in_blocks = {}
    for e in range(spec.length):
        op = assemble_operator(spec, e, trunc)
        r, per_block, cert = op.rank_profile(trunc.kind)
        in_ranks[e + 1] = (r, cert)
        in_blocks[e + 1] = per_block
    for pos in range(len(spec.nodes)):
        dim_v = _node_dimension(spec, trunc, pos)
        zop = _closedness_operator(spec, trunc, pos)
        z_rank, z_blocks, z_cert = zop.rank_profile(trunc.kind)
        b_rank, b_cert = in_ranks.get(pos, (0, "exact"))
        b_blocks = in_blocks.get(pos, {})
        kernel = dim_v - z_rank
        h = kernel - b_rank
        h_zero = h_nonzero = None
        if trunc.kind == TORUS:
            node = spec.nodes[pos]
            per_freq_dim = irrep_dimension(node)
            zero = (0,) * spec.dim
            freqs = trunc.coefficient_keys(spec, pos)
            h_zero = 0
            h_nonzero = 0
            for k in freqs:
                hk = (
                    per_freq_dim
                    - z_blocks.get(k, 0)
                    - b_blocks.get(k, 0)
                )
                if k == zero:
                    h_zero += hk
                else:
                    h_nonzero += hk
            if h_zero + h_nonzero != h:
                raise InternalConsistencyError(
                    "frequency-block cohomology does not sum to the total"
                )
        cert = "exact"
        if "modular-lower-bound" in (z_cert, b_cert):
            cert = "sandwich-zero" if h == 0 else "modular-estimate"
        reports.append(
            PositionReport(
                pos,
                spec.nodes[pos].signature,
                dim_v,
                kernel,
                b_rank,
                h,
                h_zero,
                h_nonzero,
                cert,
            )
        )
    return CohomologyReport(spec, trunc, reports)


def de_rham_reference(dim: int, trunc: Truncation) -> tuple:
    """Reference dimensions from the single-slot complex, never quoted.

    Runs the N = 1 complex on an equivalent truncation and returns its
    per-position dimensions; used as the comparison target for every
    higher-arity run and as the topological gate for AS reductions.
    """
    spec = build_complex(dim, 1, ())
    if trunc.kind == TORUS:
        t = Truncation(
            TORUS,
            freq_cap=trunc.freq_cap,
            max_dim=trunc.max_dim,
            nonzero_frequencies_only=trunc.nonzero_frequencies_only,
        )
    else:
        t = Truncation(BOX, degree_cap=trunc.degree_cap, max_dim=trunc.max_dim)
    return cohomology(spec, t).dims


@dataclass
class ASCertificate:
    """Certified reduction to asymptotic-symmetry spaces at one position.

    ``source_forms`` span a section of gauge fields (kernel directions
    removed), ``image_space`` is the tracked echelon of their strengths:
    membership against it inverts the differential on the section, which
    is the certified bijection.
    """

    spec: ComplexSpec
    position: int
    truncation: Truncation
    source_shape: Shape
    target_shape: Shape
    n: int
    source_forms: list
    image_space: ColumnSpace
    reference_dims: tuple
    truncated_h: tuple

    def strength_coordinates(self, strength: MultiForm):
        """Coordinates of a strength in the section basis, or None."""
        col = {
            (b, k): v
            for b, c in strength.terms.items()
            for k, v in c.terms.items()
        }
        return self.image_space.membership(col)

    def to_json(self):
        return {
            "position": self.position,
            "source_signature": list(self.source_shape.signature),
            "target_signature": list(self.target_shape.signature),
            "n": self.n,
            "reference_dims": list(self.reference_dims),
            "truncated_h": list(self.truncated_h),
        }


def as_reduction(spec: ComplexSpec, position: int, trunc: Truncation) -> ASCertificate:
    """Certify that the composite differential is a bijection between the
    reduced gauge-field space and the strength space at one position.

    The gate is topological: the reference groups at the paired degrees
    (position and position + 1) must vanish on this domain.  Constants on
    the torus (zero-frequency modes) violate it; restricting a torus
    truncation to nonzero frequencies or using a box domain passes for
    positions >= 1.
    """
    if not 0 <= position < len(spec.nodes) - 1:
        raise DomainError(f"position {position} has no outgoing edge")
    if spec.edge_arities[position] != spec.n_slots:
        raise PreconditionError(
            "asymptotic reduction needs a full composite-differential edge"
        )
    reference = de_rham_reference(spec.dim, trunc)
    offending = []
    for degree in (position, position + 1):
        if degree < len(reference) and reference[degree] != 0:
            offending.append((degree, reference[degree]))
    if offending:
        names = ", ".join(
            f"H^{deg} (dimension {dim}, constants are closed but not exact)"
            for deg, dim in offending
        )
        raise PreconditionError(
            f"nonvanishing reference cohomology blocks the reduction: {names}"
        )
    op = assemble_operator(spec, position, trunc)
    source = spec.nodes[position]
    target = spec.nodes[position + 1]
    dom = trunc.node_domain(spec, position)
    proj = young_projector(source)
    image_space = ColumnSpace(track=True)
    source_forms = []
    for tag in op.source_keys:
        col = op.columns[tag]
        if not col:
            continue
        if image_space.add(col, tag=len(source_forms)):
            blocks, key = tag
            if trunc.kind == TORUS:
                coeff = Coefficient.wave(dom, key)
            else:
                coeff = Coefficient(dom, {key: Fraction(1)})
            gen = MultiForm(source.unlabelled(), dom, {blocks: coeff})
            source_forms.append(project(gen, proj))
    n = image_space.rank
    if n != len(source_forms):
        raise InternalConsistencyError("section size differs from image rank")
    # truncated defining-ladder cohomology at the two positions, reported
    # for transparency (it is not the gate; see the decisions ledger)
    report = cohomology(spec, trunc)
    truncated_h = (report.positions[position].h, report.positions[position + 1].h)
    return ASCertificate(
        spec,
        position,
        trunc,
        source,
        target,
        n,
        source_forms,
        image_space,
        tuple(reference),
        truncated_h,
    )
