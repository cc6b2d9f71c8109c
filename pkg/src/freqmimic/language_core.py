"""Finite statement language for labeled trial outcomes.

A language holds at most one source statement ``G`` together with
trial-labeled outcome statements: ``E_j`` asserts that the event occurred
on trial ``j``, ``E'_j`` that it did not.  Labels are positive integers
and abbreviate tally marks; ``tick_render`` recovers the tally form.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator

TICK = "|"


class StatementKind(enum.Enum):
    SOURCE = "source"
    EVENT = "event"
    NON_EVENT = "non_event"


_KIND_RANK = {
    StatementKind.SOURCE: 0,
    StatementKind.EVENT: 1,
    StatementKind.NON_EVENT: 2,
}


@dataclass(frozen=True)
class Statement:
    """One language element: the source ``G``, an ``E_j``, or an ``E'_j``.

    An event and a non-event with the same label are distinct statements;
    equality is by kind and label.
    """

    kind: StatementKind
    label: int | None = None

    def __post_init__(self) -> None:
        if self.kind is StatementKind.SOURCE:
            if self.label is not None:
                raise ValueError("source statement carries no label")
        else:
            if self.label is None:
                raise ValueError(f"{self.kind.value} statement requires a label")
            if not isinstance(self.label, int) or self.label < 1:
                raise ValueError("statement labels are positive integers")

    def __str__(self) -> str:
        if self.kind is StatementKind.SOURCE:
            return "G"
        if self.kind is StatementKind.EVENT:
            return f"E_{self.label}"
        return f"E'_{self.label}"

    def __repr__(self) -> str:
        return str(self)


def make_statement(kind: StatementKind, label: int | None = None) -> Statement:
    return Statement(kind, label)


def source_statement() -> Statement:
    return Statement(StatementKind.SOURCE)


def event(label: int) -> Statement:
    return Statement(StatementKind.EVENT, label)


def non_event(label: int) -> Statement:
    return Statement(StatementKind.NON_EVENT, label)


def statement_key(statement: Statement) -> tuple[int, int]:
    """Sort key giving the display order G, E_1, E'_1, E_2, E'_2, ..."""
    return (statement.label or 0, _KIND_RANK[statement.kind])


def tick_render(label: int) -> str:
    """Expand a label to its tally-mark string; label n renders as n ticks."""
    if not isinstance(label, int) or label < 1:
        raise ValueError("tick labels are positive integers")
    return TICK * label


@dataclass(frozen=True)
class Language:
    """A non-empty finite set of statements with at most one source."""

    statements: frozenset[Statement]

    def __post_init__(self) -> None:
        object.__setattr__(self, "statements", frozenset(self.statements))
        if not self.statements:
            raise ValueError("language must be non-empty")
        sources = [s for s in self.statements if s.kind is StatementKind.SOURCE]
        if len(sources) > 1:
            raise ValueError("language holds at most one source statement")

    def __len__(self) -> int:
        return len(self.statements)

    def __iter__(self) -> Iterator[Statement]:
        return iter(self.statements)

    def __contains__(self, statement: object) -> bool:
        return statement in self.statements

    @property
    def source(self) -> Statement | None:
        for s in self.statements:
            if s.kind is StatementKind.SOURCE:
                return s
        return None


def language_of(statements: Iterable[Statement]) -> Language:
    return Language(frozenset(statements))


def trial_language(trials: int) -> Language:
    """The source plus both outcome statements for trials 1..trials."""
    if trials < 0:
        raise ValueError("trial count must be non-negative")
    members = {source_statement()}
    for j in range(1, trials + 1):
        members.add(event(j))
        members.add(non_event(j))
    return Language(frozenset(members))


def prefix_language(size: int) -> Language:
    """The first ``size`` statements of G, E_1, E'_1, E_2, E'_2, ..."""
    if size < 1:
        raise ValueError("language size must be positive")
    members = [source_statement()]
    j = 1
    while len(members) < size:
        members.append(event(j))
        if len(members) < size:
            members.append(non_event(j))
        j += 1
    return Language(frozenset(members))
