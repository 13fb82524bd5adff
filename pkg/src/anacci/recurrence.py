"""Weighted n-step Fibonacci-type sequences and their ratio limits.

A spec (weight p, order n, initial terms a_0..a_{n-1}) generates

    F_k = p * (F_{k-1} + ... + F_{k-n})        for k >= n.

With rational p and initial terms the arithmetic is exact (Python
ints/Fractions); in floating mode the sliding window sum is recomputed
from scratch periodically so it cannot drift.  The ratio F_{k+1}/F_k
converges to the dominant characteristic root; ratio estimation skips
indices at or before the last zero term and detects convergence from a
run of consecutive small ratio deltas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import AllZeroInit, NoConvergence, NonPositiveInput

# steps between full recomputations of the float window sum (and between
# renormalizations during ratio estimation)
_RESYNC_EVERY = 64


@dataclass(frozen=True)
class RecurrenceSpec:
    """Weight, order, and initial terms of one recurrence.

    ``init`` must hold exactly ``n`` entries, not all zero.
    """

    p: float | int | Fraction
    n: int
    init: tuple

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"order n must be a positive integer, got {self.n!r}")
        if not self.p > 0:
            raise NonPositiveInput(f"weight p must be > 0, got {self.p!r}")
        object.__setattr__(self, "init", tuple(self.init))
        if len(self.init) != self.n:
            raise ValueError(
                f"init must have exactly n={self.n} entries, got {len(self.init)}"
            )
        if all(term == 0 for term in self.init):
            raise AllZeroInit("initial terms must not all be zero")

    @property
    def exact(self) -> bool:
        """True when every input is rational, enabling exact arithmetic."""
        return isinstance(self.p, Rational) and all(
            isinstance(term, Rational) for term in self.init
        )


@dataclass(frozen=True)
class RatioEstimate:
    """Result of estimating the ratio limit of a sequence.

    ``k0`` is the largest index at which a zero term was seen (-1 if none);
    ratios are only formed past it.  ``k_used`` is the term index of the
    final ratio.
    """

    value: float
    k_used: int
    k0: int
    converged: bool


def canonical_init(n: int) -> tuple:
    """The delta start (0, ..., 0, 1) whose ratio limit always exists."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"order n must be a positive integer, got {n!r}")
    return (0,) * (n - 1) + (1,)


def generate(spec: RecurrenceSpec, count: int) -> list:
    """First ``count`` terms of the sequence (count >= n).

    Exact inputs stay exact: all-int specs yield ints, rational specs yield
    Fractions.  Float mode keeps the window sum incrementally but recomputes
    it by compensated summation every 64 steps.
    """
    if count < spec.n:
        raise ValueError(f"count must be >= n = {spec.n}, got {count}")
    n = spec.n
    if spec.exact:
        p = spec.p if isinstance(spec.p, int) else Fraction(spec.p)
        terms = [t if isinstance(t, int) else Fraction(t) for t in spec.init]
        window_sum = sum(terms)
        for _ in range(count - n):
            new = p * window_sum
            terms.append(new)
            window_sum += new - terms[-n - 1]
        return terms[:count]

    p = float(spec.p)
    terms = [float(t) for t in spec.init]
    window_sum = math.fsum(terms)
    for k in range(count - n):
        new = p * window_sum
        terms.append(new)
        if (k + 1) % _RESYNC_EVERY == 0:
            window_sum = math.fsum(terms[-n:])
        else:
            window_sum += new - terms[-n - 1]
    return terms[:count]


def ratio_limit(
    spec: RecurrenceSpec, tol: float = 1e-12, max_terms: int = 500
) -> RatioEstimate:
    """Estimate lim F_{k+1}/F_k by iterating until the ratios settle.

    Converged means the last max(3, n) consecutive ratio deltas are <= tol:
    these ratio sequences oscillate around their limit, so a single small
    delta can be a coincidence, and the first terms after an n-step seed
    can produce up to n-2 exactly equal ratios (a delta start yields a
    plain doubling run) that a fixed-length detector would mistake for
    convergence.  A zero term resets the detector and advances k0.  Terms
    are iterated in floating point and renormalized every 64 steps, so
    arbitrarily long runs cannot overflow.

    Raises NoConvergence when max_terms is exhausted: either the budget is
    too small or the initial condition has no component along the dominant
    direction — reported, not guessed.
    """
    if tol < 0:
        raise ValueError(f"tol must be >= 0, got {tol!r}")
    if max_terms < 2 * spec.n:
        raise ValueError(f"max_terms must be >= 2n = {2 * spec.n}, got {max_terms}")
    n = spec.n
    p = float(spec.p)
    window = [float(t) for t in spec.init]

    k0 = -1
    for i, term in enumerate(window):
        if term == 0.0:
            k0 = i

    window_sum = math.fsum(window)
    needed = max(3, n)
    last_ratio = None
    small_deltas = 0
    for k in range(n, max_terms):
        new = p * window_sum
        prev = window[-1]
        if new == 0.0:
            k0 = k
            last_ratio = None
            small_deltas = 0
        elif prev != 0.0 and k - 1 > k0:
            ratio = new / prev
            if last_ratio is not None:
                if abs(ratio - last_ratio) <= tol:
                    small_deltas += 1
                    if small_deltas >= needed:
                        return RatioEstimate(ratio, k, k0, True)
                else:
                    small_deltas = 0
            last_ratio = ratio
        window = window[1:] + [new]
        if (k - n + 1) % _RESYNC_EVERY == 0:
            scale = abs(new)
            if scale > 0.0:
                window = [t / scale for t in window]
        window_sum = math.fsum(window)
    raise NoConvergence(
        f"ratios did not settle within {max_terms} terms (tol={tol}); "
        "either raise the budget or check the initial condition"
    )


def horadam_check(m: int, a1: int, a2: int, count: int) -> list:
    """Integer order-2 sequence with weight m starting (a1, a2).

    These are the classical Horadam sequences w_k(a1, a2; m, -m): the
    second-order members of the equal-weight family, in exact integer
    arithmetic.
    """
    if not isinstance(m, int) or m < 1:
        raise NonPositiveInput(f"weight m must be a positive integer, got {m!r}")
    if count < 2:
        raise ValueError(f"count must be >= 2, got {count}")
    return generate(RecurrenceSpec(p=m, n=2, init=(a1, a2)), count)
