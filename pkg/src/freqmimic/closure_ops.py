"""Closure operators over finite statement languages.

Two representations live here.  ``SourceConditionalOperator`` is the
symbolic family: it attaches a fixed statement set to any premise set
containing the source and leaves every other premise set alone.  For
brute-force work (axiom checking, lattice joins, finite products) any
operator can be tabulated into an ``ExtensionalOperator``, a total map on
the power set of a small carrier.  Carrier elements are statements, or
statement tuples for product operators.

Axiom vocabulary: an operator is a closure operator when it is extensive
(``Y`` is contained in its image), idempotent, bounded by the carrier,
monotone, and finitary (the image of ``Y`` is the union of the images of
the subsets of ``Y``; on a finite carrier this also forces monotonicity).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import AbstractSet, Iterable, Iterator, Mapping, Sequence

from .language_core import Language, Statement, StatementKind, statement_key

MAX_CARRIER = 12


class CapacityError(ValueError):
    """Carrier too large to tabulate or enumerate exhaustively."""


def render_element(element: object) -> str:
    """Deterministic text for a carrier element (statement or tuple)."""
    if isinstance(element, tuple):
        return "(" + ",".join(render_element(e) for e in element) + ")"
    return str(element)


def _element_key(element: object):
    if isinstance(element, tuple):
        return tuple(_element_key(e) for e in element)
    return statement_key(element)


def render_statement_set(statements: AbstractSet) -> str:
    ordered = sorted(statements, key=_element_key)
    return "{" + ",".join(render_element(s) for s in ordered) + "}"


@dataclass(frozen=True)
class SourceConditionalOperator:
    """The operator C(X, {G}): adjoin X whenever G is among the premises."""

    attachments: frozenset[Statement]
    source: Statement

    def __post_init__(self) -> None:
        object.__setattr__(self, "attachments", frozenset(self.attachments))
        if self.source.kind is not StatementKind.SOURCE:
            raise ValueError("operator source must be a source statement")

    def __str__(self) -> str:
        return canonical_form(self)

    def __repr__(self) -> str:
        return str(self)


def canonical_form(op: SourceConditionalOperator) -> str:
    """Render as ``C({E_1,E'_2},{G})`` with label-ordered attachments."""
    return f"C({render_statement_set(op.attachments)},{{{op.source}}})"


def apply(op: SourceConditionalOperator, premises: AbstractSet[Statement]) -> frozenset[Statement]:
    premises = frozenset(premises)
    if op.source in premises:
        return premises | op.attachments
    return premises


def realize(op: SourceConditionalOperator, premises: AbstractSet[Statement]) -> frozenset[Statement]:
    """New conclusions only: the image of the premises minus the premises."""
    premises = frozenset(premises)
    return apply(op, premises) - premises


def join_family(
    op1: SourceConditionalOperator, op2: SourceConditionalOperator
) -> SourceConditionalOperator:
    """Least upper bound within the source-conditional family."""
    if op1.source != op2.source:
        raise ValueError("operators must share their source statement")
    return SourceConditionalOperator(op1.attachments | op2.attachments, op1.source)


@dataclass(frozen=True)
class ExtensionalOperator:
    """A total map from every subset of a finite carrier to a subset.

    The table is exhaustive by construction, which is what makes the
    brute-force axiom checks and lattice computations possible; carriers
    are capped at ``MAX_CARRIER`` elements.
    """

    carrier: frozenset
    table: Mapping[frozenset, frozenset]

    def __post_init__(self) -> None:
        carrier = frozenset(self.carrier)
        object.__setattr__(self, "carrier", carrier)
        if len(carrier) > MAX_CARRIER:
            raise CapacityError(
                f"carrier has {len(carrier)} elements, limit is {MAX_CARRIER}"
            )
        table = dict(self.table)
        object.__setattr__(self, "table", table)
        if len(table) != 1 << len(carrier):
            raise ValueError("table must cover every subset of the carrier")
        for key, value in table.items():
            if not key <= carrier or not value <= carrier:
                raise ValueError("table entries must stay within the carrier")

    def __call__(self, subset: AbstractSet) -> frozenset:
        return self.table[frozenset(subset)]


def all_subsets(elements: Iterable) -> list[frozenset]:
    """All subsets ordered by size, then lexicographically by rendering."""
    ordered = sorted(elements, key=render_element)
    out: list[frozenset] = []
    for size in range(len(ordered) + 1):
        for combo in itertools.combinations(ordered, size):
            out.append(frozenset(combo))
    return out


def extensionalize(op: SourceConditionalOperator, language: Language) -> ExtensionalOperator:
    """Tabulate a family operator over the full power set of a language."""
    carrier = frozenset(language.statements)
    if len(carrier) > MAX_CARRIER:
        raise CapacityError(
            f"language has {len(carrier)} statements, limit is {MAX_CARRIER}"
        )
    if not (op.attachments | {op.source}) <= carrier:
        raise ValueError("operator statements must belong to the language")
    table = {subset: apply(op, subset) for subset in all_subsets(carrier)}
    return ExtensionalOperator(carrier, table)


def identity_extensional(carrier: Iterable) -> ExtensionalOperator:
    subsets = all_subsets(frozenset(carrier))
    return ExtensionalOperator(frozenset(carrier), {s: s for s in subsets})


def top_extensional(carrier: Iterable) -> ExtensionalOperator:
    """The closure mapping every subset to the whole carrier."""
    carrier = frozenset(carrier)
    return ExtensionalOperator(carrier, {s: carrier for s in all_subsets(carrier)})


@dataclass(frozen=True)
class AxiomReport:
    """Verdicts from an exhaustive closure-axiom check.

    ``counterexample`` is present exactly when some verdict is false and
    holds the first witnessing subset (or subset pair for monotonicity) in
    size-then-rendering order.
    """

    extensive_idempotent: bool
    monotone: bool
    finitary: bool
    counterexample: tuple[frozenset, ...] | None

    @property
    def all_ok(self) -> bool:
        return self.extensive_idempotent and self.monotone and self.finitary


class _MaskView:
    """Bitmask view of an extensional table for fast exhaustive scans."""

    def __init__(self, ext: ExtensionalOperator):
        self.elements = sorted(ext.carrier, key=render_element)
        self.n = len(self.elements)
        index = {e: i for i, e in enumerate(self.elements)}
        self.full = (1 << self.n) - 1
        table = [0] * (1 << self.n)
        for key, value in ext.table.items():
            k = 0
            for e in key:
                k |= 1 << index[e]
            v = 0
            for e in value:
                v |= 1 << index[e]
            table[k] = v
        self.table = table
        # size-then-rendering order; elements are pre-sorted by rendering,
        # so comparing ascending bit-position tuples matches it
        self.masks = sorted(
            range(1 << self.n), key=lambda m: (bin(m).count("1"), _bit_positions(m))
        )
        self.key = lambda m: (bin(m).count("1"), _bit_positions(m))

    def unmask(self, mask: int) -> frozenset:
        return frozenset(self.elements[i] for i in _bit_positions(mask))


def _bit_positions(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def check_axioms(ext: ExtensionalOperator) -> AxiomReport:
    """Exhaustively check the closure axioms over the whole power set."""
    view = _MaskView(ext)
    table = view.table

    ext_ok = True
    ext_witness = None
    for mask in view.masks:
        image = table[mask]
        if mask & ~image or table[image] != image:
            ext_ok = False
            ext_witness = (view.unmask(mask),)
            break

    mono_ok = True
    mono_witness = None
    for mask in view.masks:
        image = table[mask]
        rest = view.full & ~mask
        violated = any(image & ~table[mask | s] for s in _submasks(rest))
        if violated:
            supersets = sorted((mask | s for s in _submasks(rest)), key=view.key)
            bad = next(z for z in supersets if image & ~table[z])
            mono_ok = False
            mono_witness = (view.unmask(mask), view.unmask(bad))
            break

    fin_ok = True
    fin_witness = None
    for mask in view.masks:
        union = 0
        for sub in _submasks(mask):
            union |= table[sub]
        if union != table[mask]:
            fin_ok = False
            fin_witness = (view.unmask(mask),)
            break

    counterexample = ext_witness or mono_witness or fin_witness
    return AxiomReport(ext_ok, mono_ok, fin_ok, counterexample)


def enumerate_self_maps(language: Language) -> Iterator[ExtensionalOperator]:
    """Every total map on the power set of a tiny language, tabulated."""
    carrier = frozenset(language.statements)
    if len(carrier) > 2:
        raise CapacityError("self-map enumeration is limited to 2 statements")
    subsets = all_subsets(carrier)
    for images in itertools.product(subsets, repeat=len(subsets)):
        yield ExtensionalOperator(carrier, dict(zip(subsets, images)))


def monotonicity_implied(language: Language) -> bool:
    """True when every extensive, idempotent, finitary self-map is monotone.

    Exhaustive over all power-set self-maps, so the language is capped at
    two statements (256 maps); one statement gives 4 maps.
    """
    for candidate in enumerate_self_maps(language):
        report = check_axioms(candidate)
        if report.extensive_idempotent and report.finitary and not report.monotone:
            return False
    return True


def lub_extensional(e1: ExtensionalOperator, e2: ExtensionalOperator) -> ExtensionalOperator:
    """Least upper bound of two closures by alternating-image fixpoints.

    For each subset the iteration Z <- e1(e2(Z)) grows monotonically inside
    the carrier, so it stabilizes within ``|carrier|`` rounds at the least
    set closed under both operators.
    """
    if e1.carrier != e2.carrier:
        raise ValueError("operators must share a carrier")
    for e in (e1, e2):
        report = check_axioms(e)
        if not (report.extensive_idempotent and report.monotone):
            raise ValueError("join requires extensive, idempotent, monotone inputs")
    table = {}
    for subset in all_subsets(e1.carrier):
        current = subset
        for _ in range(len(e1.carrier) + 1):
            advanced = e1.table[e2.table[current]]
            if advanced == current:
                break
            current = advanced
        table[subset] = current
    return ExtensionalOperator(e1.carrier, table)


def is_axiomless(ext: ExtensionalOperator) -> bool:
    """True when the operator proves nothing from no premises."""
    return ext.table[frozenset()] == frozenset()


def _check_tuples(tuple_set: AbstractSet[tuple], arity: int) -> frozenset[tuple]:
    checked = frozenset(tuple_set)
    for item in checked:
        if not isinstance(item, tuple) or len(item) != arity:
            raise ValueError(f"expected statement tuples of arity {arity}")
    return checked


def product_apply(
    ops: Sequence[SourceConditionalOperator], tuple_set: AbstractSet[tuple]
) -> frozenset[tuple]:
    """Coordinatewise image: apply each factor to its projection, re-product."""
    if not ops:
        raise ValueError("product needs at least one factor")
    tuples = _check_tuples(tuple_set, len(ops))
    if not tuples:
        return frozenset()
    projections = [frozenset(t[k] for t in tuples) for k in range(len(ops))]
    images = [apply(op, proj) for op, proj in zip(ops, projections)]
    return frozenset(itertools.product(*images))


def realize_product(
    ops: Sequence[SourceConditionalOperator], tuple_set: AbstractSet[tuple]
) -> frozenset[tuple]:
    """Coordinatewise realization: realize each projection, re-product."""
    if not ops:
        raise ValueError("product needs at least one factor")
    tuples = _check_tuples(tuple_set, len(ops))
    if not tuples:
        return frozenset()
    projections = [frozenset(t[k] for t in tuples) for k in range(len(ops))]
    realized = [realize(op, proj) for op, proj in zip(ops, projections)]
    return frozenset(itertools.product(*realized))


def extensionalize_product(
    ops: Sequence[SourceConditionalOperator], languages: Sequence[Language]
) -> ExtensionalOperator:
    """Tabulate a product operator over the tuple carrier L1 x ... x Lm."""
    if not ops:
        raise ValueError("product needs at least one factor")
    if len(ops) != len(languages):
        raise ValueError("one language per factor is required")
    for op, language in zip(ops, languages):
        if not (op.attachments | {op.source}) <= language.statements:
            raise ValueError("operator statements must belong to their language")
    factors = [sorted(lang.statements, key=statement_key) for lang in languages]
    carrier = frozenset(itertools.product(*factors))
    if len(carrier) > MAX_CARRIER:
        raise CapacityError(
            f"tuple carrier has {len(carrier)} elements, limit is {MAX_CARRIER}"
        )
    table = {subset: product_apply(ops, subset) for subset in all_subsets(carrier)}
    return ExtensionalOperator(carrier, table)


def render_table(ext: ExtensionalOperator) -> str:
    """Golden-file rendering: one ``{...} -> {...}`` line per subset."""
    lines = []
    for subset in all_subsets(ext.carrier):
        lines.append(
            f"{render_statement_set(subset)} -> {render_statement_set(ext.table[subset])}"
        )
    return "\n".join(lines)
