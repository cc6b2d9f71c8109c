"""Classical randomness tests plus a deterministic reference generator.

The harness is self-contained: critical values are embedded constants
(two-sided normal at alpha 0.05 and 0.01, upper-tail chi-square through
10 degrees of freedom), counts are exact integers, and only the final
statistics live in double precision.

The reference generator is SplitMix64 (Steele, Lea, and Flood's 64-bit
mixer): state advances by the constant 0x9E3779B97F4A7C15 and each output
is the state scrambled by two xor-shift-multiply rounds.  It is hand-rolled
rather than taken from the platform so that seeded streams are reproducible
bit-for-bit across interpreter versions and machines; the version tag below
is carried in reports so recorded results stay attributable.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .event_seq import BinaryTrialSequence
from .freq_seq import check_probability

PRNG_VERSION = "splitmix64-v1"

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

# Two-sided standard normal critical values.
NORMAL_CRITICAL = {0.05: 1.95996, 0.01: 2.57583}

# Upper-tail chi-square critical values by degrees of freedom.
CHI_SQUARE_CRITICAL = {
    0.05: {
        1: 3.84146, 2: 5.99146, 3: 7.81473, 4: 9.48773, 5: 11.07050,
        6: 12.59159, 7: 14.06714, 8: 15.50731, 9: 16.91898, 10: 18.30704,
    },
    0.01: {
        1: 6.63490, 2: 9.21034, 3: 11.34487, 4: 13.27670, 5: 15.08627,
        6: 16.81189, 7: 18.47531, 8: 20.09024, 9: 21.66599, 10: 23.20925,
    },
}


def _normal_critical(alpha: float) -> float:
    try:
        return NORMAL_CRITICAL[alpha]
    except KeyError:
        raise ValueError(f"unsupported alpha: {alpha}") from None


def bernoulli_prng(p: Fraction | int, n: int, seed: int) -> BinaryTrialSequence:
    """n seeded pseudo-random trials with success probability p.

    Each SplitMix64 output z (uniform over [0, 2**64)) yields a success
    exactly when z / 2**64 < p, decided by the integer comparison
    z * p.denominator < p.numerator << 64, so the draw is exact: p = 0
    never succeeds and p = 1 always does.
    """
    p = check_probability(p)
    if n < 0:
        raise ValueError("trial count must be non-negative")
    num, den = p.numerator, p.denominator
    threshold = num << 64
    state = seed & _MASK64
    bits = []
    for _ in range(n):
        state = (state + _GAMMA) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        z ^= z >> 31
        bits.append(1 if z * den < threshold else 0)
    return BinaryTrialSequence(tuple(bits))


@dataclass(frozen=True)
class TestReport:
    """Outcome of one statistical test on one bit stream."""

    __test__ = False  # not a pytest class despite the name

    test: str
    stream: str
    statistic: float
    alpha: float
    passed: bool
    n: int
    seed: int | None = None
    prng_version: str | None = None

    def as_json_dict(self) -> dict:
        out = {
            "test": self.test,
            "stream": self.stream,
            "statistic": self.statistic,
            "alpha": self.alpha,
            "pass": self.passed,
            "n": self.n,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        if self.prng_version is not None:
            out["prng_version"] = self.prng_version
        return out


def frequency_test(
    bits: BinaryTrialSequence,
    p: Fraction | int,
    alpha: float,
    stream: str = "designed",
) -> TestReport:
    """One-proportion z-test: z = (x - n*p) / sqrt(n*p*(1-p))."""
    p = check_probability(p)
    n = len(bits)
    if n < 30:
        raise ValueError("frequency test needs at least 30 trials")
    if p == 0 or p == 1:
        raise ValueError("frequency test needs 0 < p < 1")
    crit = _normal_critical(alpha)
    x = bits.ones
    z = float(x - n * p) / math.sqrt(float(n * p * (1 - p)))
    return TestReport("frequency", stream, z, alpha, abs(z) <= crit, n)


def runs_test(
    bits: BinaryTrialSequence, alpha: float, stream: str = "designed"
) -> TestReport:
    """Wald-Wolfowitz runs test against the exchangeable null.

    With n0 zeros and n1 ones the null run count has mean 2*n0*n1/n + 1
    and variance 2*n0*n1*(2*n0*n1 - n) / (n^2 * (n-1)).
    """
    n = len(bits)
    if n < 30:
        raise ValueError("runs test needs at least 30 trials")
    n1 = bits.ones
    n0 = n - n1
    if n0 == 0 or n1 == 0:
        raise ValueError("runs test needs both outcomes present")
    crit = _normal_critical(alpha)
    seq = bits.bits
    runs = 1 + sum(1 for i in range(1, n) if seq[i] != seq[i - 1])
    pairs = 2 * n0 * n1
    mean = Fraction(pairs, n) + 1
    variance = Fraction(pairs * (pairs - n), n * n * (n - 1))
    z = float(runs - mean) / math.sqrt(float(variance))
    return TestReport("runs", stream, z, alpha, abs(z) <= crit, n)


def chi_square_cells(
    counts: Sequence[int],
    n: int,
    probs: Sequence[Fraction],
    alpha: float,
    stream: str = "designed",
) -> TestReport:
    """Goodness of fit of cell counts against expectations n*p_k.

    Statistic sum((c_k - n*p_k)^2 / (n*p_k)) at m - 1 degrees of freedom;
    every expected count must be at least 1 and the table covers degrees
    of freedom 1 through 10.
    """
    counts = list(counts)
    probs = [Fraction(p) for p in probs]
    if len(counts) != len(probs):
        raise ValueError("one count per cell is required")
    if len(counts) < 2:
        raise ValueError("chi-square needs at least two cells")
    if sum(counts) != n:
        raise ValueError("cell counts must sum to the trial count")
    df = len(counts) - 1
    try:
        crit = CHI_SQUARE_CRITICAL[alpha][df]
    except KeyError:
        raise ValueError(f"no critical value for alpha={alpha}, df={df}") from None
    statistic = Fraction(0)
    for c, p in zip(counts, probs):
        expected = n * p
        if expected < 1:
            raise ValueError("every expected cell count must be at least 1")
        statistic += Fraction((c - expected) ** 2, expected)
    value = float(statistic)
    return TestReport("chi_square", stream, value, alpha, value <= crit, n)


def compare(
    designed: BinaryTrialSequence,
    p: Fraction | int,
    seed: int,
    alpha: float,
) -> list[TestReport]:
    """Run frequency and runs tests on a designed stream and a seeded one.

    Returns four reports in fixed order: frequency then runs for the
    designed stream, then the same pair for the generator stream, which
    carries the seed and generator version.
    """
    p = check_probability(p)
    generated = bernoulli_prng(p, len(designed), seed)
    tagged = [
        frequency_test(generated, p, alpha, stream="prng"),
        runs_test(generated, alpha, stream="prng"),
    ]
    tagged = [
        dataclasses.replace(r, seed=seed, prng_version=PRNG_VERSION) for r in tagged
    ]
    return [
        frequency_test(designed, p, alpha, stream="designed"),
        runs_test(designed, alpha, stream="designed"),
        tagged[0],
        tagged[1],
    ]


REPORT_CSV_HEADER = (
    "test", "stream", "statistic", "alpha", "pass", "n", "seed", "prng_version"
)


def reports_csv(reports: Sequence[TestReport]) -> str:
    lines = [",".join(REPORT_CSV_HEADER)]
    for r in reports:
        lines.append(
            ",".join(
                (
                    r.test,
                    r.stream,
                    repr(r.statistic),
                    repr(r.alpha),
                    "true" if r.passed else "false",
                    str(r.n),
                    "" if r.seed is None else str(r.seed),
                    "" if r.prng_version is None else r.prng_version,
                )
            )
        )
    return "\n".join(lines) + "\n"


def reports_from_csv(text: str) -> list[TestReport]:
    lines = [line for line in text.splitlines() if line]
    if not lines or tuple(lines[0].split(",")) != REPORT_CSV_HEADER:
        raise ValueError("missing report CSV header")
    out = []
    for line in lines[1:]:
        test, stream, statistic, alpha, passed, n, seed, version = line.split(",")
        out.append(
            TestReport(
                test=test,
                stream=stream,
                statistic=float(statistic),
                alpha=float(alpha),
                passed=passed == "true",
                n=int(n),
                seed=int(seed) if seed else None,
                prng_version=version or None,
            )
        )
    return out
