"""Cumulative-success sequences with prescribed limiting frequencies.

A cumulative-success sequence counts successes through trial k: its first
term is 0 or 1 and consecutive terms grow by 0 or 1.  The canonical
prefix construction for a rational probability p keeps the running
frequency within 1/k of p at every trial k; companion constructions give
distinct sequences with the same limit, frozen tails, and oscillating
frequencies that never converge.  All core arithmetic is exact: p is a
``fractions.Fraction`` and comparisons use integer cross-multiplication.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple

Probability = Fraction


def parse_probability(text: str) -> Fraction:
    """Parse 'num/den' or exact decimal text ('0.25' becomes 1/4)."""
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse probability: {text!r}") from exc
    return check_probability(value)


def check_probability(value: Fraction | int) -> Fraction:
    value = Fraction(value)
    if value < 0 or value > 1:
        raise ValueError(f"probability out of range: {value}")
    return value


class FormCheck(NamedTuple):
    ok: bool
    violation_index: int | None  # 1-based index of the first bad term


def check_cumulative_form(terms: Iterable[int]) -> FormCheck:
    """Check the cumulative-success constraints: a(1) in {0, 1}, unit steps."""
    terms = list(terms)
    if terms:
        if not 0 <= terms[0] <= 1:
            return FormCheck(False, 1)
        prev = terms[0]
        for i in range(1, len(terms)):
            step = terms[i] - prev
            if step < 0 or step > 1:
                return FormCheck(False, i + 1)
            prev = terms[i]
    return FormCheck(True, None)


@dataclass(frozen=True)
class CumulativeSequence:
    """An immutable success-count prefix a(1), ..., a(n)."""

    terms: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(self.terms))
        ok, index = check_cumulative_form(self.terms)
        if not ok:
            raise ValueError(f"not a cumulative-success sequence at index {index}")

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[int]:
        return iter(self.terms)


class FrequencyPoint(NamedTuple):
    """A (trial, successes) pair; the pair itself is the datum, unreduced."""

    trial: int
    successes: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.successes, self.trial)


def frequency_points(seq: CumulativeSequence) -> list[FrequencyPoint]:
    return [FrequencyPoint(k, a) for k, a in enumerate(seq.terms, 1)]


def canonical_prefix(p: Fraction | int, n: int) -> CumulativeSequence:
    """First n terms of the canonical sequence tracking probability p.

    For p < 1 term k is the unique j with j/k <= p < (j+1)/k, which is
    floor(k*p); this covers p = 0.  For p = 1 no such half-open bracket
    exists, so the all-success sequence a(k) = k is used directly.
    """
    p = check_probability(p)
    if n < 0:
        raise ValueError("prefix length must be non-negative")
    if p == 1:
        return CumulativeSequence(tuple(range(1, n + 1)))
    num, den = p.numerator, p.denominator
    return CumulativeSequence(tuple((k * num) // den for k in range(1, n + 1)))


class DeviationCheck(NamedTuple):
    max_deviation: Fraction
    within_bound: bool  # every |a(k)/k - p| <= 1/k


def max_deviation(seq: CumulativeSequence, p: Fraction | int) -> DeviationCheck:
    """Exact max of |a(k)/k - p| plus the pointwise 1/k bound verdict.

    Works in integers: |a(k)/k - p| = |a(k)*den - k*num| / (k*den), and the
    1/k bound holds iff |a(k)*den - k*num| <= den.
    """
    p = check_probability(p)
    num, den = p.numerator, p.denominator
    best_num, best_den = 0, 1
    within = True
    for k, a in enumerate(seq.terms, 1):
        diff = abs(a * den - k * num)
        if diff > den:
            within = False
        if diff * best_den > best_num * k * den:
            best_num, best_den = diff, k * den
    return DeviationCheck(Fraction(best_num, best_den), within)


def variant_to_zero(m: int, n: int) -> CumulativeSequence:
    """Rise for m steps, then freeze: a(k) = min(k - 1, m); frequency -> 0."""
    if m < 2:
        raise ValueError("variant parameter m must be at least 2")
    if n < 0:
        raise ValueError("prefix length must be non-negative")
    return CumulativeSequence(tuple(min(k - 1, m) for k in range(1, n + 1)))


def variant_to_one(m: int, n: int) -> CumulativeSequence:
    """Hold zero through trial m, then rise: a(k) = max(0, k - m); frequency -> 1."""
    if m < 2:
        raise ValueError("variant parameter m must be at least 2")
    if n < 0:
        raise ValueError("prefix length must be non-negative")
    return CumulativeSequence(tuple(max(0, k - m) for k in range(1, n + 1)))


def backshift_variant(seq: CumulativeSequence, block_index: int) -> CumulativeSequence:
    """Shift success counts down by one before a repeated-count block.

    Terms at and after ``block_index`` are kept verbatim.  Walking backwards
    from there, each earlier term drops by one until a term would reach or
    pass zero; that term and everything before it become zero.  To keep the
    unit-step form at the junction, the term at ``block_index`` must repeat
    its predecessor (any index inside a repeated block works).
    """
    n = len(seq)
    if not 1 <= block_index <= n:
        raise ValueError("block index out of range")
    terms = list(seq.terms)
    if block_index > 1 and terms[block_index - 1] != terms[block_index - 2]:
        raise ValueError("block index must sit inside a repeated-count block")
    out = terms[:]
    for k in range(block_index - 1, 0, -1):
        lowered = terms[k - 1] - 1
        if lowered <= 0:
            for j in range(k):
                out[j] = 0
            break
        out[k - 1] = lowered
    return CumulativeSequence(out)


def truncate_freeze(seq: CumulativeSequence, m: int, n: int) -> CumulativeSequence:
    """Copy a(1..m), then hold a(m) constant through trial n."""
    if not 1 <= m <= len(seq):
        raise ValueError("freeze index out of range")
    if n < m:
        raise ValueError("target length must be at least the freeze index")
    terms = seq.terms[:m] + (seq.terms[m - 1],) * (n - m)
    return CumulativeSequence(terms)


def build_nonconvergent(low: Fraction, high: Fraction, n: int) -> CumulativeSequence:
    """Oscillating sequence whose frequency never settles.

    Two phases alternate: an up phase adds a success each trial until the
    running frequency reaches ``high`` (equality counts as arrival), then a
    down phase holds the count until the frequency falls to ``low``.  The
    sequence starts at a(1) = 0, where the down phase has already arrived,
    so counting begins immediately.
    """
    low = check_probability(low)
    high = check_probability(high)
    if low >= high:
        raise ValueError("low bound must be strictly below high bound")
    if n < 1:
        raise ValueError("prefix length must be positive")
    low_num, low_den = low.numerator, low.denominator
    high_num, high_den = high.numerator, high.denominator
    terms = [0]
    a = 0
    up = True  # 0/1 <= low holds for any low >= 0
    for k in range(2, n + 1):
        if up:
            a += 1
        terms.append(a)
        if up:
            if a * high_den >= k * high_num:
                up = False
        elif a * low_den <= k * low_num:
            up = True
    return CumulativeSequence(terms)


def count_phase_switches(seq: CumulativeSequence) -> int:
    """Number of boundaries between counting runs and holding runs."""
    terms = seq.terms
    switches = 0
    prev_step = None
    for i in range(1, len(terms)):
        step = terms[i] - terms[i - 1]
        if prev_step is not None and step != prev_step:
            switches += 1
        prev_step = step
    return switches


CSV_HEADER = ("n", "a_n", "freq_num", "freq_den")


def sequence_csv(seq: CumulativeSequence) -> str:
    """CSV with columns n, a_n, freq_num, freq_den (frequency unreduced)."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for k, a in enumerate(seq.terms, 1):
        writer.writerow((k, a, a, k))
    return out.getvalue()


def sequence_from_csv(text: str) -> CumulativeSequence:
    """Parse ``sequence_csv`` output back into a sequence, checking columns."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise ValueError("missing sequence CSV header")
    terms = []
    for expected, row in enumerate(rows[1:], 1):
        k, a, num, den = (int(field) for field in row)
        if k != expected or num != a or den != k:
            raise ValueError(f"inconsistent sequence CSV row {expected}")
        terms.append(a)
    return CumulativeSequence(terms)


def sequence_json_rows(seq: CumulativeSequence) -> list[dict]:
    return [
        {"n": k, "a": a, "freq": [a, k]} for k, a in enumerate(seq.terms, 1)
    ]
