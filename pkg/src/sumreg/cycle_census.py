"""Cycle counts of the pure (PSR) and complementary (CSR) summing registers.

Everything is indexed by register order n, so cycle lengths d run over the
divisors of n + 1.  (Golomb's classical totals are usually quoted for a
register of length n - 1 with d | n; that is the same thing shifted by one.)
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from . import fsr
from .errors import ConsistencyError, OrderError
from .numtheory import divisors, mobius, totient

__all__ = ["CensusTable", "psr_count", "csr_count", "golomb_totals", "census",
           "weight_census", "extended_weight"]

CONVENTION = "order n registers; cycle lengths d divide n + 1"


def _exact(num: int, den: int, what: str) -> int:
    q, r = divmod(num, den)
    if r:
        raise ConsistencyError(f"{what}: {num}/{den} is not an integer")
    return q


def _check_divisor(n: int, d: int) -> None:
    if n < fsr.MIN_ORDER:
        raise OrderError(f"register order must be at least {fsr.MIN_ORDER}, got {n}")
    if d < 1 or (n + 1) % d:
        raise ValueError(f"cycle length {d} does not divide n + 1 = {n + 1}")


def _mobius_sum(d: int, which: str = "all") -> int:
    total = 0
    for dp in divisors(d):
        if which == "even" and dp % 2:
            continue
        if which == "odd" and not dp % 2:
            continue
        total += mobius(dp) << (d // dp)
    return total


def psr_count(n: int, d: int) -> int:
    """Number of cycles of length d in PSR_n."""
    _check_divisor(n, d)
    if n % 2 == 0 or ((n + 1) // d) % 2:
        num = _mobius_sum(d) + _mobius_sum(d, "even")
        return _exact(num, 2 * d, f"psr_count({n}, {d})")
    return _exact(_mobius_sum(d), d, f"psr_count({n}, {d})")


def csr_count(n: int, d: int) -> int:
    """Number of cycles of length d in CSR_n (zero when n is odd and (n+1)/d even)."""
    _check_divisor(n, d)
    if n % 2 == 0:
        return _exact(_mobius_sum(d), 2 * d, f"csr_count({n}, {d})")
    if ((n + 1) // d) % 2 == 0:
        return 0
    return _exact(_mobius_sum(d, "odd"), 2 * d, f"csr_count({n}, {d})")


def golomb_totals(n: int) -> tuple[int, int]:
    """Total cycle counts (PSR_n, CSR_n) from the totient sums."""
    if n < fsr.MIN_ORDER:
        raise OrderError(f"register order must be at least {fsr.MIN_ORDER}, got {n}")
    m = n + 1
    terms = {d: totient(d) << (m // d) for d in divisors(m)}
    every = sum(terms.values())
    even = sum(t for d, t in terms.items() if d % 2 == 0)
    odd = every - even
    s = _exact(every, 2 * m, "S") + _exact(even, 2 * m, "S even part")
    s_star = _exact(odd, 2 * m, "S*")
    return s, s_star


@dataclass
class CensusTable:
    """Cycle length -> number of cycles, keys ascending, zero counts omitted."""

    kind: fsr.Kind
    n: int
    entries: dict[int, int]
    source: str
    convention: str = field(default=CONVENTION, repr=False)

    @property
    def total_cycles(self) -> int:
        return sum(self.entries.values())

    @property
    def total_states(self) -> int:
        return sum(d * c for d, c in self.entries.items())

    def check(self) -> None:
        """Raise ConsistencyError if the table breaks a structural invariant."""
        for d in self.entries:
            if (self.n + 1) % d:
                raise ConsistencyError(f"cycle length {d} does not divide {self.n + 1}")
        if self.total_states != 1 << self.n:
            raise ConsistencyError(f"{self.total_states} states counted, expected {1 << self.n}")
        s, s_star = golomb_totals(self.n)
        expected = s if self.kind is fsr.Kind.PSR else s_star
        if self.total_cycles != expected:
            raise ConsistencyError(f"{self.total_cycles} cycles counted, Golomb total is {expected}")


def _register(kind, n: int) -> fsr.FeedbackSpec:
    kind = fsr.Kind(str(kind).upper() if not isinstance(kind, fsr.Kind) else kind)
    if kind is fsr.Kind.PSR:
        return fsr.FeedbackSpec.psr(n)
    if kind is fsr.Kind.CSR:
        return fsr.FeedbackSpec.csr(n)
    raise ValueError("census is defined for PSR and CSR only")


def census(kind, n: int, source: str = "formula", cap: int = fsr.DEFAULT_CAP) -> CensusTable:
    """Cycle-length census of PSR_n or CSR_n from the formulas or by enumeration."""
    f = _register(kind, n)
    if source == "formula":
        count = psr_count if f.kind is fsr.Kind.PSR else csr_count
        entries = {d: count(n, d) for d in divisors(n + 1)}
        entries = {d: c for d, c in entries.items() if c}
    elif source == "enumeration":
        entries = dict(sorted(Counter(fsr.cycle_lengths(f, cap)).items()))
    else:
        raise ValueError(f"source must be 'formula' or 'enumeration', got {source!r}")
    table = CensusTable(f.kind, n, entries, source)
    table.check()
    return table


def extended_weight(f: fsr.FeedbackSpec, value: int) -> int:
    """Weight of the (n+1)-bit extension of the state ``value``."""
    return value.bit_count() + (f.step(value) & 1)


def weight_census(n: int, cap: int = fsr.DEFAULT_CAP) -> dict[int, int]:
    """Number of CSR_n cycles of each extended weight, by enumeration."""
    f = fsr.FeedbackSpec.csr(n)
    fsr._check_cap(n, cap)
    order, lengths = fsr._traverse(f)
    counts: Counter[int] = Counter()
    pos = 0
    for l in lengths:
        counts[extended_weight(f, order[pos])] += 1
        pos += l
    return dict(sorted(counts.items()))
