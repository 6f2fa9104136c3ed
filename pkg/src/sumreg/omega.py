"""Registers whose cycle lengths all divide n + 1, and symmetric functions.

Only the pure and complementary summing registers qualify.  The searches
here confirm that directly: exhaustively over every g for small n, and over
symmetric g (value vectors) for larger n.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from . import fsr
from ._backend import kernels
from .errors import CapExceeded, OrderError
from .fsr import CycleRep, FeedbackSpec, State

__all__ = [
    "EXHAUSTIVE_MAX_ORDER", "SymFn", "OmegaReport", "omega_witness", "in_omega",
    "extended_weight_constant", "enumerate_omega", "restriction_profile",
    "profile_pattern", "is_symmetric", "value_to_anf", "anf_to_value",
    "eval_symmetric", "precedes", "symmetric_table",
]

EXHAUSTIVE_MAX_ORDER = 5


def omega_witness(f: FeedbackSpec, cap: int = fsr.DEFAULT_CAP) -> CycleRep | None:
    """A cycle of f whose length does not divide n + 1, or None."""
    fsr._check_cap(f.n, cap)
    hit = kernels.omega_violation(f.n, f.g_table)
    return None if hit < 0 else fsr.cycle_of(f, State(hit, f.n))


def in_omega(f: FeedbackSpec, cap: int = fsr.DEFAULT_CAP) -> bool:
    return omega_witness(f, cap) is None


def extended_weight_constant(f: FeedbackSpec, c: CycleRep) -> bool:
    """True if every state of c has the same extended weight."""
    weights = {v.bit_count() + (f.step(v) & 1) for v in c.state_values()}
    return len(weights) == 1


def precedes(a: int, b: int) -> bool:
    """a is below b in the bitwise dominance order."""
    return a & b == a


def _submask_transform(vec: Sequence[int]) -> tuple[int, ...]:
    size = 1
    while size < len(vec):
        size <<= 1
    out = list(vec) + [0] * (size - len(vec))
    h = 1
    while h < size:
        for i in range(size):
            if i & h:
                out[i] ^= out[i ^ h]
        h <<= 1
    return tuple(out[:len(vec)])


def _check_vector(vec: Sequence[int]) -> None:
    if len(vec) < 1 or any(b not in (0, 1) for b in vec):
        raise ValueError(f"expected a non-empty 0/1 vector, got {vec!r}")


def value_to_anf(v: Sequence[int]) -> tuple[int, ...]:
    """Simplified value vector -> simplified ANF vector."""
    _check_vector(v)
    return _submask_transform(v)


def anf_to_value(lam: Sequence[int]) -> tuple[int, ...]:
    """Inverse of :func:`value_to_anf` (the transform is its own inverse)."""
    _check_vector(lam)
    return _submask_transform(lam)


@dataclass(frozen=True)
class SymFn:
    """Symmetric function of n variables, f(x) = value[wt(x)]."""

    n: int
    value: tuple[int, ...]
    anf: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        if len(self.value) != self.n + 1:
            raise ValueError(f"value vector for {self.n} variables needs {self.n + 1} entries")
        object.__setattr__(self, "value", tuple(self.value))
        object.__setattr__(self, "anf", value_to_anf(self.value))

    @classmethod
    def from_anf(cls, n: int, anf: Sequence[int]) -> SymFn:
        return cls(n, anf_to_value(anf))


def eval_symmetric(sf: SymFn, x: Sequence[int], route: str = "value") -> int:
    """Evaluate by value-vector lookup or by the ANF over elementary
    symmetric polynomials, X_i(x) = C(wt(x), i) mod 2 (Lucas)."""
    if len(x) != sf.n:
        raise OrderError(f"input has {len(x)} variables, function has {sf.n}")
    w = sum(x)
    if route == "value":
        return sf.value[w]
    if route == "anf":
        out = 0
        for i, coeff in enumerate(sf.anf):
            if coeff and precedes(i, w):
                out ^= 1
        return out
    raise ValueError(f"route must be 'value' or 'anf', got {route!r}")


def symmetric_table(v: Sequence[int]) -> bytes:
    """Truth table over m = len(v) - 1 variables of x -> v[wt(x)]."""
    m = len(v) - 1
    return bytes(v[x.bit_count()] for x in range(1 << m))


def restriction_profile(g: Sequence[int], m: int) -> tuple[int | None, ...]:
    """For each weight k = 0..m: 0 or 1 if g is constant on weight-k inputs,
    None if it takes both values there."""
    if len(g) != 1 << m:
        raise ValueError(f"truth table over {m} variables needs {1 << m} entries")
    seen: list[set[int]] = [set() for _ in range(m + 1)]
    for x, b in enumerate(g):
        seen[x.bit_count()].add(b)
    return tuple(s.pop() if len(s) == 1 else None for s in seen)


def profile_pattern(profile: Sequence[int | None]) -> str | None:
    """'PSR' for 0,1,0,1,..., 'CSR' for 1,0,1,0,..., else None."""
    if all(b == k % 2 for k, b in enumerate(profile)):
        return fsr.Kind.PSR.value
    if all(b == 1 - k % 2 for k, b in enumerate(profile)):
        return fsr.Kind.CSR.value
    return None


def is_symmetric(g: Sequence[int], m: int) -> bool:
    """g depends only on the weight of its input."""
    return None not in restriction_profile(g, m)


@dataclass
class OmegaReport:
    """Outcome of a membership search.

    ``members`` are the registers found in the class; ``witnesses`` maps
    each rejected candidate index to a state on an offending cycle.
    Candidate i is the truth table whose entries are the bits of i (entry
    0 least significant) or, for the symmetric scope, the value vector
    built the same way.
    """

    n: int
    scope: str
    tested: int
    members: list[FeedbackSpec]
    witnesses: dict[int, int] = field(repr=False)

    def candidate(self, index: int) -> FeedbackSpec:
        if self.scope == "exhaustive":
            return FeedbackSpec(self.n, _index_bits(index, 1 << (self.n - 1)))
        return FeedbackSpec(self.n, symmetric_table(_index_bits(index, self.n)))

    def offending_cycle(self, index: int) -> CycleRep:
        f = self.candidate(index)
        return fsr.cycle_of(f, State(self.witnesses[index], self.n))

    @property
    def kinds(self) -> list[str]:
        return [f.kind.value for f in self.members]


def _index_bits(index: int, width: int) -> bytes:
    return bytes((index >> j) & 1 for j in range(width))


def _scan(args):
    n, scope, lo, hi = args
    found, witnesses = [], {}
    width = 1 << (n - 1) if scope == "exhaustive" else n
    check = kernels.omega_violation if scope == "exhaustive" else kernels.omega_violation_symmetric
    for index in range(lo, hi):
        hit = check(n, _index_bits(index, width))
        if hit < 0:
            found.append(index)
        else:
            witnesses[index] = hit
    return found, witnesses


def enumerate_omega(n: int, scope: str = "exhaustive", cap: int = fsr.DEFAULT_CAP,
                    workers: int = 1) -> OmegaReport:
    """Test every candidate g and keep the registers in the class.

    ``exhaustive`` covers all 2^(2^(n-1)) tables and is limited to
    n <= 5; ``symmetric-only`` covers the 2^n value vectors of symmetric g.
    """
    if n < fsr.MIN_ORDER:
        raise OrderError(f"register order must be at least {fsr.MIN_ORDER}, got {n}")
    if scope == "exhaustive":
        if n > EXHAUSTIVE_MAX_ORDER:
            raise CapExceeded(
                f"exhaustive search is limited to n <= {EXHAUSTIVE_MAX_ORDER} "
                f"(2^{1 << (n - 1)} candidates at n = {n}); use the symmetric-only scope")
        total = 1 << (1 << (n - 1))
    elif scope == "symmetric-only":
        fsr._check_cap(n, cap)
        total = 1 << n
    else:
        raise ValueError(f"scope must be 'exhaustive' or 'symmetric-only', got {scope!r}")
    shards = max(1, workers)
    bounds = [total * i // shards for i in range(shards + 1)]
    jobs = [(n, scope, lo, hi) for lo, hi in zip(bounds, bounds[1:])]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_scan, jobs))
    else:
        results = [_scan(job) for job in jobs]
    found = sorted(itertools.chain.from_iterable(r[0] for r in results))
    witnesses = {}
    for r in results:
        witnesses.update(r[1])
    report = OmegaReport(n, scope, total, [], witnesses)
    report.members = [report.candidate(i) for i in found]
    return report
