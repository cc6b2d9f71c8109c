"""Labeled trial outcomes and their source-conditional generators.

A cumulative-success prefix determines one binary outcome per trial (its
difference sequence), each trial gets a labeled statement (``E_j`` on
success, ``E'_j`` otherwise), and the whole labeled prefix becomes the
attachment set of a single source-conditional operator.  Realizing that
operator on the bare source recovers exactly the labeled outcomes, and
the operator itself is the join of the per-trial singleton operators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .closure_ops import SourceConditionalOperator, join_family, realize
from .freq_seq import CumulativeSequence, canonical_prefix
from .language_core import Statement, StatementKind, event, non_event, source_statement


@dataclass(frozen=True)
class BinaryTrialSequence:
    """Immutable 0/1 outcomes, one per trial."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "bits", tuple(self.bits))
        for i, bit in enumerate(self.bits, 1):
            if bit not in (0, 1):
                raise ValueError(f"trial {i} outcome must be 0 or 1")

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)

    @property
    def ones(self) -> int:
        return sum(self.bits)


@dataclass(frozen=True)
class LabeledEventSequence:
    """Outcome statements for trials 1..n, in trial order."""

    entries: tuple[Statement, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        for j, entry in enumerate(self.entries, 1):
            if entry.kind is StatementKind.SOURCE or entry.label != j:
                raise ValueError(f"entry {j} must be an outcome statement labeled {j}")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Statement]:
        return iter(self.entries)

    def text(self) -> str:
        return " ".join(str(entry) for entry in self.entries)

    def rows(self) -> list[dict]:
        return [
            {"trial": j, "event": entry.kind is StatementKind.EVENT}
            for j, entry in enumerate(self.entries, 1)
        ]


def to_binary(seq: CumulativeSequence) -> BinaryTrialSequence:
    """Difference sequence: bit j = a(j) - a(j-1) with a(0) = 0.

    Prefixes are stable: the first m bits depend only on the first m terms.
    """
    bits = []
    prev = 0
    for term in seq.terms:
        bits.append(term - prev)
        prev = term
    return BinaryTrialSequence(tuple(bits))


def from_binary(bits: Iterable[int]) -> CumulativeSequence:
    """Prefix sums; inverse of ``to_binary``."""
    checked = BinaryTrialSequence(tuple(bits))
    return CumulativeSequence(tuple(itertools.accumulate(checked.bits)))


def label_events(bits: BinaryTrialSequence) -> LabeledEventSequence:
    """Trial j becomes E_j on outcome 1 and E'_j on outcome 0."""
    entries = tuple(
        event(j) if bit else non_event(j) for j, bit in enumerate(bits.bits, 1)
    )
    return LabeledEventSequence(entries)


def trace_operator(p: Fraction | int, n: int) -> SourceConditionalOperator:
    """The source-conditional operator attaching the n labeled outcomes for p.

    Equal to the join of the n single-outcome operators; built directly
    from the union since the join within the family is attachment union.
    """
    labeled = label_events(to_binary(canonical_prefix(p, n)))
    return SourceConditionalOperator(frozenset(labeled.entries), source_statement())


def singleton_operators(p: Fraction | int, n: int) -> list[SourceConditionalOperator]:
    """One operator per trial, each attaching a single labeled outcome."""
    labeled = label_events(to_binary(canonical_prefix(p, n)))
    source = source_statement()
    return [
        SourceConditionalOperator(frozenset({entry}), source) for entry in labeled.entries
    ]


def fold_singletons(p: Fraction | int, n: int) -> SourceConditionalOperator:
    """Join all single-outcome operators; must agree with ``trace_operator``."""
    source = source_statement()
    combined = SourceConditionalOperator(frozenset(), source)
    for op in singleton_operators(p, n):
        combined = join_family(combined, op)
    return combined


def realize_trace(p: Fraction | int, n: int) -> LabeledEventSequence:
    """Realize the trace operator on the bare source, in trial order.

    Goes through the operator: realize C(outcomes, {G}) on {G} and sort the
    produced statements by trial label.
    """
    op = trace_operator(p, n)
    produced = realize(op, {op.source})
    ordered = sorted(produced, key=lambda s: s.label or 0)
    return LabeledEventSequence(tuple(ordered))
