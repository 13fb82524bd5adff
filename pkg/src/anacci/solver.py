"""Root solver for the ratio-limit function lam(p, q) and its calculus.

For every (p, q) with p*q != 1 the kernel function Q has exactly one
positive zero besides 1; that zero is the ratio limit of the order-q,
weight-p recurrence family (the dominant characteristic root at integer q).
This module locates it with certified bracketing — bisection to a safe
width, then a bracket-guarded Newton polish — and provides the inverse map
p(lam, q), both implicit partial derivatives, and the closed-form bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from numbers import Rational

from .errors import CriticalRegime, NoConvergence, NonPositiveInput
from .qkernel import (
    RegionClass,
    _check_positive,
    _ln,
    classify,
    dq_value,
    lambda_min,
    q_value,
)

DEFAULT_TOL = 1e-14
MAX_ITERATIONS = 200
_BISECT_STEPS = 40
# smallest bracket endpoint probed in the sub-critical regime; below this the
# zero itself is not representable as a positive double
_LAMBDA_FLOOR = 1e-300


@dataclass(frozen=True)
class AnacciConstant:
    """A solved zero lam(p, q) with its certifying bracket.

    ``bracket_lo <= value <= bracket_hi`` always holds; ``residual`` is the
    signed Q(value, p, q).  In the critical regime (p*q = 1) the value is
    exactly 1 with zero residual and a collapsed bracket.
    """

    p: float
    q: float
    value: float
    bracket_lo: float
    bracket_hi: float
    residual: float
    iterations: int

    @property
    def regime(self) -> RegionClass:
        return classify(self.p, self.q)


class BoundSource(Enum):
    BASIC = "basic"      # (p+1)q/(q+1), valid for all q > 0
    REFINED = "refined"  # p+1-1/(p+1), valid for q >= 2 and p > 1/phi


@dataclass(frozen=True)
class BoundPair:
    """A lower/upper enclosure for a ratio limit."""

    lower: float
    upper: float
    source: BoundSource


def _midpoint(lo: float, hi: float) -> float:
    """Arithmetic midpoint, or geometric when the bracket spans orders of
    magnitude (sub-critical zeros can sit hundreds of decades below 1)."""
    if hi > 4.0 * lo:
        return math.sqrt(lo) * math.sqrt(hi)
    return 0.5 * (lo + hi)


def _bisect(lo, flo, hi, fhi, p, q, stop_width, max_steps):
    """Shrink a sign-change bracket; returns (lo, flo, hi, fhi, steps)."""
    steps = 0
    neg_low = flo < 0.0
    while steps < max_steps and (hi - lo) > stop_width * abs(hi):
        mid = _midpoint(lo, hi)
        if mid <= lo or mid >= hi:
            break  # bracket at machine resolution
        fm = q_value(mid, p, q)
        steps += 1
        if fm == 0.0:
            return mid, 0.0, mid, 0.0, steps
        if (fm < 0.0) == neg_low:
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    return lo, flo, hi, fhi, steps


def solve_lambda(p, q, tol: float = DEFAULT_TOL) -> AnacciConstant:
    """Locate the unique positive zero of Q(., p, q) other than 1.

    Bracketing is regime-specific: for p*q > 1 the zero lies in
    [lambda_min, p+1] (Q negative then positive), for p*q < 1 it lies below
    lambda_min with Q(0+) = p > 0, so the lower endpoint starts at
    lambda_min/2 and halves until the sign flips.  Bisection runs until the
    bracket is within 1e-3 of the value, then Newton finishes, rejecting any
    step that would leave the bracket.  Convergence: |Q| <= tol*(1+p) or
    bracket width <= tol*value.  On the hyperbola p*q = 1 the zero branches
    merge and exactly 1.0 is returned with zero residual.

    Raises NonPositiveInput for a bad domain and NoConvergence if the
    iteration cap (200) is hit — a tolerance misconfiguration or a zero
    below the positive double range, not a math failure.
    """
    if not p > 0 or not q > 0:
        raise NonPositiveInput(f"p and q must be > 0, got p={p!r}, q={q!r}")
    if not tol > 0:
        raise ValueError(f"tol must be > 0, got {tol!r}")
    regime = classify(p, q)
    pf, qf = float(p), float(q)
    if regime is RegionClass.CRITICAL:
        return AnacciConstant(pf, qf, 1.0, 1.0, 1.0, 0.0, 0)

    if regime is RegionClass.SUPER:
        lo = float(lambda_min(pf, qf))
        hi = pf + 1.0
        flo = q_value(lo, pf, qf)
        fhi = pf  # Q(p+1, p, q) = p exactly
        if not flo < 0.0:
            raise NoConvergence(
                f"no sign change on [{lo}, {hi}]: p*q too close to 1 "
                f"(p={pf}, q={qf})"
            )
    else:
        hi = float(lambda_min(pf, qf))
        fhi = q_value(hi, pf, qf)
        if not fhi < 0.0:
            raise NoConvergence(
                f"Q not negative at the minimum: p*q too close to 1 "
                f"(p={pf}, q={qf})"
            )
        lo = 0.5 * hi
        flo = q_value(lo, pf, qf)
        while flo <= 0.0:
            lo *= 0.5
            if lo < _LAMBDA_FLOOR:
                raise NoConvergence(
                    f"zero of Q below the representable range for "
                    f"p={pf}, q={qf}"
                )
            flo = q_value(lo, pf, qf)

    ftol = tol * (1.0 + pf)
    lo, flo, hi, fhi, iterations = _bisect(
        lo, flo, hi, fhi, pf, qf, 1e-3, _BISECT_STEPS
    )

    neg_low = flo < 0.0
    x = _midpoint(lo, hi)
    fx = q_value(x, pf, qf)
    iterations += 1
    while True:
        if fx == 0.0:
            lo = hi = x
            break
        # fold the newest evaluation into the bracket before anything else
        if (fx < 0.0) == neg_low:
            lo, flo = x, fx
        else:
            hi, fhi = x, fx
        if abs(fx) <= ftol or (hi - lo) <= tol * abs(x):
            break
        if iterations >= MAX_ITERATIONS:
            raise NoConvergence(
                f"no convergence after {iterations} iterations "
                f"(p={pf}, q={qf}, tol={tol})"
            )
        dfx = dq_value(x, pf, qf)
        if math.isfinite(fx) and math.isfinite(dfx) and dfx != 0.0:
            x_new = x - fx / dfx
            if not (lo < x_new < hi) or x_new == x:
                x_new = _midpoint(lo, hi)  # Newton stalled or left the bracket
        else:
            x_new = _midpoint(lo, hi)  # Q overflowed: signs still steer us
        if x_new == lo or x_new == hi or x_new == x:
            break  # bracket at machine resolution
        x = x_new
        fx = q_value(x, pf, qf)
        iterations += 1

    # the stopping tests guarantee minimum quality; a couple of in-bracket
    # Newton steps accepted only when they shrink |Q| usually reach 1 ulp
    for _ in range(2):
        if fx == 0.0:
            break
        dfx = dq_value(x, pf, qf)
        if not (math.isfinite(fx) and math.isfinite(dfx)) or dfx == 0.0:
            break
        x_new = x - fx / dfx
        if not (lo <= x_new <= hi) or x_new == x:
            break
        f_new = q_value(x_new, pf, qf)
        iterations += 1
        if abs(f_new) >= abs(fx):
            break
        x, fx = x_new, f_new
        if fx == 0.0:
            lo = hi = x
        elif (fx < 0.0) == neg_low:
            lo, flo = x, fx
        else:
            hi, fhi = x, fx

    return AnacciConstant(pf, qf, x, lo, hi, fx, iterations)


def inverse_p(lam: float, q: float) -> float:
    """Weight p(lam, q) whose ratio limit at order q equals lam.

    Closed form lam^q (lam-1) / (lam^q - 1) for lam != 1, rearranged as
    (lam-1) / (1 - lam^(-q)) via expm1/log1p so it is stable both near
    lam = 1 (where the limit is 1/q, returned exactly at lam = 1) and for
    exponents where lam^q itself would overflow or underflow.
    """
    _check_positive(lam=lam, q=q)
    if lam == 1.0:
        return 1.0 / q
    t = q * _ln(lam)
    if -t > 700.0:
        # lam^q underflows: p ~ lam^q * (1 - lam)
        return math.exp(t) * (1.0 - lam)
    return (lam - 1.0) / (-math.expm1(-t))


def inverse_p_integer(m_lambda, n: int):
    """p(lam, n) = lam^n / (lam^(n-1) + ... + 1) at integer order n.

    With a rational lam (int/Fraction) the arithmetic is exact and a
    Fraction is returned; integral targets lam = m then land strictly
    between m-1 and m whenever n > 1.
    """
    _check_positive(m_lambda=m_lambda)
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"order n must be a positive integer, got {n!r}")
    if isinstance(m_lambda, Rational):
        lam = Fraction(m_lambda)
        return lam**n / sum(lam**k for k in range(n))
    lam = float(m_lambda)
    return lam**n / math.fsum(lam**k for k in range(n))


def _derivative_parts(p: float, q: float) -> tuple[float, float]:
    """Solve for lam and return (lam, the shared denominator).

    Raises CriticalRegime on the hyperbola, where dQ/dlam vanishes at the
    merged root and the implicit-function derivatives degenerate.
    """
    if classify(p, q) is RegionClass.CRITICAL:
        raise CriticalRegime(
            f"derivatives undefined on p*q = 1 (p={p!r}, q={q!r})"
        )
    lam = solve_lambda(p, q).value
    return lam, lam * (q + 1.0) - (p + 1.0) * q


def dlambda_dp(p: float, q: float) -> float:
    """Partial derivative of lam(p, q) in p, by the implicit function theorem.

    Equals (lam^q - 1) / (lam^(q-1) * [lam(q+1) - (p+1)q]); evaluated in the
    overflow-free arrangement lam*(1 - lam^(-q)) / [...].  Strictly positive
    off the hyperbola: numerator and denominator share their sign in both
    regimes.
    """
    lam, denom = _derivative_parts(p, q)
    t = q * _ln(lam)
    if -t > 700.0:
        numer = -lam * math.exp(-t)  # 1 - lam^(-q) ~ -lam^(-q)
    else:
        numer = lam * (-math.expm1(-t))
    return numer / denom


def dlambda_dq(p: float, q: float) -> float:
    """Partial derivative of lam(p, q) in q, by the implicit function theorem.

    Equals [p+1-lam] * lam^q * ln(lam) / (lam^(q-1) * [lam(q+1) - (p+1)q]),
    i.e. (p+1-lam) * lam * ln(lam) / [...] after cancelling the powers.
    The leading gap is evaluated through the identity p+1-lam = p*lam^(-q)
    (exact at the zero), which stays positive long after the solved lam has
    saturated onto p+1 in doubles and direct subtraction would return 0.
    Strictly positive off the hyperbola, down to subnormal underflow.
    """
    lam, denom = _derivative_parts(p, q)
    t = q * _ln(lam)
    if t > -700.0:
        gap = p * math.exp(-t)
    else:
        gap = p + 1.0 - lam  # lam far below 1: the subtraction is benign
    return gap * lam * _ln(lam) / denom


def lower_bound_basic(p: float, q: float) -> float:
    """(p+1)q/(q+1): strict lower bound on lam(p, q) when p*q > 1, strict
    upper bound when p*q < 1 (it is the minimum locus of Q)."""
    return float(lambda_min(p, q))


def lower_bound_refined(p: float) -> float:
    """p+1-1/(p+1): sharper lower bound, valid for q >= 2 and p > 1/phi.

    The caller checks applicability; the value alone is defined for any
    positive p.
    """
    _check_positive(p=p)
    return p + 1.0 - 1.0 / (p + 1.0)


def bound_crossover(p: float) -> float:
    """(p+1)^2 - 1: the q at and below which the basic bound does not exceed
    the refined bound."""
    if p < 0:
        raise NonPositiveInput(f"p must be >= 0, got {p!r}")
    return (p + 1.0) ** 2 - 1.0
