"""The integer lattice of anacci constants and its monotone structure.

phi(m, n) denotes the ratio limit of the order-n recurrence with integer
weight m — the classical golden ratio at (1, 2), the tribonacci constant
at (1, 3), and so on.  Solved values are memoized per (m, n) since the
geometry and figure layers revisit the same lattice points heavily.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import OrderOne
from .solver import BoundPair, BoundSource, solve_lambda

_CACHE: dict[tuple[int, int], float] = {}


@dataclass(frozen=True)
class AnacciIndex:
    """A lattice point: integer weight m >= 1 and integer order n >= 1."""

    m: int
    n: int

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")


def _as_index(idx) -> AnacciIndex:
    return idx if isinstance(idx, AnacciIndex) else AnacciIndex(*idx)


def anacci(idx) -> float:
    """phi(m, n), memoized; accepts an AnacciIndex or an (m, n) pair."""
    idx = _as_index(idx)
    key = (idx.m, idx.n)
    value = _CACHE.get(key)
    if value is None:
        value = solve_lambda(idx.m, idx.n).value
        _CACHE[key] = value
    return value


def clear_cache() -> None:
    """Drop all memoized values (mainly for tests of cache transparency)."""
    _CACHE.clear()


def bounds_eq37(idx) -> BoundPair:
    """The enclosure m+1-1/(m+1) < phi(m, n) < m+1, valid for n > 1.

    At n = 1 the constant equals m exactly and the enclosure is undefined.
    """
    idx = _as_index(idx)
    if idx.n == 1:
        raise OrderOne(f"phi(m, 1) = m exactly; no enclosure at n = 1 (m={idx.m})")
    m = idx.m
    return BoundPair(m + 1.0 - 1.0 / (m + 1.0), m + 1.0, BoundSource.REFINED)


def compare(a, b) -> int:
    """-1, 0, or +1 as phi(a) is below, equal to, or above phi(b).

    Ordering is by the solved values themselves.  (The simple rule "larger
    n always wins" only holds with the other index fixed: phi(1, 2) < 3 =
    phi(3, 1), so order-dominance is not true across arbitrary weights.)
    """
    va, vb = anacci(a), anacci(b)
    if va < vb:
        return -1
    if va > vb:
        return 1
    return 0


def seq_fixed_m(m: int, n_max: int) -> list[float]:
    """(phi(m, n))_{n=1..n_max}: strictly increasing toward m+1."""
    return [anacci((m, n)) for n in range(1, n_max + 1)]


def seq_fixed_n(n: int, m_max: int) -> list[float]:
    """(phi(m, n))_{m=1..m_max}: strictly increasing in the weight."""
    return [anacci((m, n)) for m in range(1, m_max + 1)]


def seq_diagonal(k: int, count: int, which: str) -> list[float]:
    """Diagonal sequences through the lattice, strictly increasing.

    which="kn": (phi(k*n, n))_{n=1..count} — weight grows with the order.
    which="km": (phi(m, k*m))_{m=1..count} — order grows with the weight.
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    if which == "kn":
        return [anacci((k * n, n)) for n in range(1, count + 1)]
    if which == "km":
        return [anacci((m, k * m)) for m in range(1, count + 1)]
    raise ValueError(f"which must be 'kn' or 'km', got {which!r}")


def scaled_seq_A(n: int, m_max: int) -> list[float]:
    """((m+1)/m * phi(m, n))_{m=1..m_max}: strictly increasing for every n."""
    return [(m + 1) / m * anacci((m, n)) for m in range(1, m_max + 1)]


def scaled_seq_B(n: int, m_max: int) -> list[float]:
    """(phi(m, n)/m)_{m=1..m_max}: strictly decreasing toward 1 for n > 1.

    At n = 1 the sequence is identically 1 and OrderOne is raised.
    """
    if n == 1:
        raise OrderOne("phi(m, 1)/m = 1 for every m; sequence is constant")
    return [anacci((m, n)) / m for m in range(1, m_max + 1)]
