"""Graded Fock basis: occupation vectors for n-1 bosonic and m fermionic modes.

States are tuples (l_1, ..., l_{r-1}) with r = n + m.  Modes i < n are
bosonic (unbounded occupation), modes i >= n are fermionic (occupation
0 or 1).  Mode indices are 1-based throughout, matching the generator
index conventions of the presentation module.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

FockState = tuple[int, ...]

EVEN, ODD = 0, 1


@dataclass(frozen=True)
class Signature:
    """Shape (n, m) of the algebra; the oscillator system has n-1 bosonic
    and m fermionic modes.

    n = 1 is excluded: the first-mode and fermionic-sector formulas of the
    oscillator realizations overlap there and are mutually inconsistent.
    """

    n: int
    m: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.m < 0:
            raise ValueError("m must be nonnegative")

    @property
    def r(self) -> int:
        return self.n + self.m

    @property
    def num_modes(self) -> int:
        return self.r - 1

    def is_fermionic(self, i: int) -> bool:
        """Whether mode i (1-based) is fermionic."""
        return i >= self.n


def mode_parity(sig: Signature, i: int) -> int:
    """Parity of mode i: EVEN for i < n, ODD for i >= n."""
    if not 1 <= i <= sig.num_modes:
        raise IndexError(f"mode index {i} out of range 1..{sig.num_modes}")
    return ODD if sig.is_fermionic(i) else EVEN


def total(state: FockState) -> int:
    return sum(state)


def vacuum(sig: Signature) -> FockState:
    return (0,) * sig.num_modes


class BasisIndex:
    """An ordered list of states plus the inverse position lookup."""

    def __init__(self, states: list[FockState]):
        self.states = list(states)
        self.index = {s: k for k, s in enumerate(self.states)}
        if len(self.index) != len(self.states):
            raise ValueError("duplicate states in basis")

    def __len__(self):
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __contains__(self, state):
        return state in self.index


def _states_of_degree(sig: Signature, d: int) -> list[FockState]:
    out = []
    nb = sig.n - 1
    for ferm in itertools.product((0, 1), repeat=sig.m):
        rest = d - sum(ferm)
        if rest < 0:
            continue
        for bos in _bosonic_fill(nb, rest):
            out.append(bos + ferm)
    out.sort()
    return out


def _bosonic_fill(k: int, d: int):
    """All k-tuples of nonnegative integers summing to exactly d."""
    if k == 0:
        if d == 0:
            yield ()
        return
    for first in range(d + 1):
        for rest in _bosonic_fill(k - 1, d - first):
            yield (first,) + rest


def enumerate_up_to(sig: Signature, cap: int) -> BasisIndex:
    """All states of total occupation <= cap, in graded-lex order
    (total degree ascending, then lexicographic on the occupation tuple)."""
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    states = []
    for d in range(cap + 1):
        states.extend(_states_of_degree(sig, d))
    return BasisIndex(states)


def dim_F0(sig: Signature, p: int) -> int:
    """Dimension of the total-occupation <= p subspace, in closed form:
    sum over the number f of occupied fermionic modes of
    C(m, f) * C(p - f + n - 1, n - 1)."""
    if p < 0:
        raise ValueError("p must be nonnegative")
    return sum(
        math.comb(sig.m, f) * math.comb(p - f + sig.n - 1, sig.n - 1)
        for f in range(min(sig.m, p) + 1)
    )


def split_F0_F1(sig: Signature, p: int, cap: int) -> tuple[BasisIndex, BasisIndex]:
    """Partition the enumeration up to cap into the total <= p part and
    the total > p slice."""
    if cap < p + 1:
        raise ValueError("cap must be at least p + 1")
    full = enumerate_up_to(sig, cap)
    low = [s for s in full if total(s) <= p]
    high = [s for s in full if total(s) > p]
    return BasisIndex(low), BasisIndex(high)
