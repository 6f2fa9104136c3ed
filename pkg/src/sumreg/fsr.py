"""Register states, nonsingular feedback functions and cycle decomposition.

States are n-bit integers with the first stage a_1 as the most significant
bit, so ``State.decimal_label`` (value + 1) numbers the states 1 .. 2^n in
the order (0,...,0) .. (1,...,1).
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from ._backend import kernels
from .errors import CapExceeded, JoinError, OrderError

__all__ = [
    "MIN_ORDER", "DEFAULT_CAP", "Kind", "State", "FeedbackSpec", "CycleRep",
    "AdjacencyGraph", "evaluate", "next_state", "previous_state", "conjugate",
    "companion", "decompose", "cycle_lengths", "cycle_of", "adjacency_graph",
    "join_cycles", "least_rotation",
]

MIN_ORDER = 2
DEFAULT_CAP = 22


def _check_order(n: int) -> None:
    if n < MIN_ORDER:
        raise OrderError(f"register order must be at least {MIN_ORDER}, got {n}")


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise CapExceeded(
            f"order {n} exceeds the enumeration cap {cap} "
            f"({1 << n} states); pass a larger cap explicitly if intended")


@dataclass(frozen=True, order=True)
class State:
    """Register content (a_1, ..., a_n) stored as an n-bit integer."""

    value: int
    n: int

    def __post_init__(self):
        _check_order(self.n)
        if not 0 <= self.value < (1 << self.n):
            raise ValueError(f"state value {self.value} does not fit in {self.n} bits")

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> State:
        bits = tuple(bits)
        value = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"state bits must be 0 or 1, got {b!r}")
            value = (value << 1) | b
        return cls(value, len(bits))

    @classmethod
    def from_string(cls, text: str) -> State:
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a bit string: {text!r}")
        return cls(int(text, 2), len(text))

    @classmethod
    def from_decimal_label(cls, number: int, n: int) -> State:
        return cls(number - 1, n)

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> (self.n - 1 - i)) & 1 for i in range(self.n))

    @property
    def weight(self) -> int:
        return self.value.bit_count()

    @property
    def decimal_label(self) -> int:
        return self.value + 1

    def __str__(self) -> str:
        return format(self.value, f"0{self.n}b")


class Kind(str, enum.Enum):
    PSR = "PSR"
    CSR = "CSR"
    GENERAL = "GENERAL"


def _parity_table(m: int, complement: int) -> bytes:
    return bytes((x.bit_count() & 1) ^ complement for x in range(1 << m))


@dataclass(frozen=True)
class FeedbackSpec:
    """Nonsingular feedback f(x_1..x_n) = x_1 xor g(x_2..x_n).

    ``g_table[x]`` is g at the (n-1)-bit integer x, x_2 most significant.
    ``kind`` is derived from the table.
    """

    n: int
    g_table: bytes
    kind: Kind = field(init=False, compare=False)

    def __post_init__(self):
        _check_order(self.n)
        table = bytes(self.g_table)
        if len(table) != 1 << (self.n - 1):
            raise ValueError(
                f"g table for order {self.n} needs {1 << (self.n - 1)} entries, got {len(table)}")
        if any(b > 1 for b in table):
            raise ValueError("g table entries must be 0 or 1")
        object.__setattr__(self, "g_table", table)
        m = self.n - 1
        if table == _parity_table(m, 0):
            kind = Kind.PSR
        elif table == _parity_table(m, 1):
            kind = Kind.CSR
        else:
            kind = Kind.GENERAL
        object.__setattr__(self, "kind", kind)

    @classmethod
    def psr(cls, n: int) -> FeedbackSpec:
        _check_order(n)
        return cls(n, _parity_table(n - 1, 0))

    @classmethod
    def csr(cls, n: int) -> FeedbackSpec:
        _check_order(n)
        return cls(n, _parity_table(n - 1, 1))

    @classmethod
    def from_function(cls, n: int, g: Callable[[int], int]) -> FeedbackSpec:
        """Tabulate g over the integers 0 .. 2^(n-1) - 1."""
        _check_order(n)
        return cls(n, bytes(g(x) & 1 for x in range(1 << (n - 1))))

    def __call__(self, state: State) -> int:
        return evaluate(self, state)

    def step(self, value: int) -> int:
        """next_state on raw integers; no validation."""
        n = self.n
        return ((value << 1) & ((1 << n) - 1)) | ((value >> (n - 1)) ^ self.g_table[value & ((1 << (n - 1)) - 1)])

    def __repr__(self) -> str:
        return f"FeedbackSpec(n={self.n}, kind={self.kind.value})"


def _same_order(f: FeedbackSpec, s: State) -> None:
    if s.n != f.n:
        raise OrderError(f"state has order {s.n} but the register has order {f.n}")


def evaluate(f: FeedbackSpec, s: State) -> int:
    """Feedback bit a_1 xor g(a_2, ..., a_n)."""
    _same_order(f, s)
    n = f.n
    return (s.value >> (n - 1)) ^ f.g_table[s.value & ((1 << (n - 1)) - 1)]


def next_state(f: FeedbackSpec, s: State) -> State:
    _same_order(f, s)
    return State(f.step(s.value), f.n)


def previous_state(f: FeedbackSpec, s: State) -> State:
    """The unique predecessor (b, a_1, ..., a_{n-1}) of s."""
    _same_order(f, s)
    n = f.n
    head = s.value >> 1
    b = (s.value & 1) ^ f.g_table[head]
    return State((b << (n - 1)) | head, n)


def conjugate(s: State) -> State:
    """Flip a_1."""
    return State(s.value ^ (1 << (s.n - 1)), s.n)


def companion(s: State) -> State:
    """Flip a_n."""
    return State(s.value ^ 1, s.n)


def least_rotation(digits: Sequence[int]) -> int:
    """Start index of the lexicographically least rotation (Booth's algorithm)."""
    s = list(digits) * 2
    fail = [-1] * len(s)
    k = 0
    for j in range(1, len(s)):
        sj = s[j]
        i = fail[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = fail[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            fail[j - k] = -1
        else:
            fail[j - k] = i + 1
    return k % len(digits) if digits else 0


@dataclass(frozen=True)
class CycleRep:
    """A cycle stored as the first digit of each of its states, in order.

    Built through :meth:`from_values` the digits are the least rotation.
    """

    digits: tuple[int, ...]
    n: int

    @classmethod
    def from_values(cls, values: Sequence[int], n: int) -> CycleRep:
        """Canonical cycle from its states listed in successor order."""
        top = n - 1
        digits = [v >> top for v in values]
        k = least_rotation(digits)
        return cls(tuple(digits[k:] + digits[:k]), n)

    @property
    def length(self) -> int:
        return len(self.digits)

    def state_values(self) -> list[int]:
        """States in cycle order, the first one starting with ``digits[0]``."""
        n, l, d = self.n, len(self.digits), self.digits
        mask = (1 << n) - 1
        s = 0
        for j in range(n):
            s = (s << 1) | d[j % l]
        out = []
        for i in range(l):
            out.append(s)
            s = ((s << 1) & mask) | d[(i + n) % l]
        return out

    def states(self) -> list[State]:
        return [State(v, self.n) for v in self.state_values()]

    def __contains__(self, s: State) -> bool:
        return s.n == self.n and s.value in self.state_values()

    def sort_key(self):
        return (len(self.digits), self.digits)

    def __str__(self) -> str:
        return "".join(map(str, self.digits))


def _traverse(f: FeedbackSpec):
    return kernels.traverse(f.n, f.g_table)


def _cycle_values(f: FeedbackSpec) -> list[list[int]]:
    order, lengths = _traverse(f)
    out, pos = [], 0
    for l in lengths:
        out.append(list(order[pos:pos + l]))
        pos += l
    return out


def decompose(f: FeedbackSpec, cap: int = DEFAULT_CAP) -> list[CycleRep]:
    """All cycles of f, canonicalized and sorted by (length, digits)."""
    _check_cap(f.n, cap)
    cycles = [CycleRep.from_values(vals, f.n) for vals in _cycle_values(f)]
    cycles.sort(key=CycleRep.sort_key)
    return cycles


def cycle_lengths(f: FeedbackSpec, cap: int = DEFAULT_CAP) -> list[int]:
    """Cycle lengths only, in traversal order (cheaper than decompose)."""
    _check_cap(f.n, cap)
    return list(_traverse(f)[1])


def cycle_of(f: FeedbackSpec, s: State) -> CycleRep:
    _same_order(f, s)
    vals = [s.value]
    x = f.step(s.value)
    while x != s.value:
        vals.append(x)
        x = f.step(x)
    return CycleRep.from_values(vals, f.n)


@dataclass
class AdjacencyGraph:
    """Cycles of a register joined by shared conjugate pairs.

    ``edges[(i, j)]`` (i < j) holds the weights wt(a_2..a_n) of every
    conjugate pair split between cycles i and j.  Companion pairs give the
    same edge set, since the successors of a conjugate pair are companions.
    """

    cycles: list[CycleRep]
    edges: dict[tuple[int, int], frozenset[int]]

    def neighbours(self, i: int) -> set[int]:
        out = set()
        for a, b in self.edges:
            if a == i:
                out.add(b)
            elif b == i:
                out.add(a)
        return out

    def is_connected(self) -> bool:
        if len(self.cycles) <= 1:
            return True
        adj: dict[int, list[int]] = {i: [] for i in range(len(self.cycles))}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        seen = {0}
        todo = deque([0])
        while todo:
            for j in adj[todo.popleft()]:
                if j not in seen:
                    seen.add(j)
                    todo.append(j)
        return len(seen) == len(self.cycles)


def _labels(cycles: list[CycleRep], n: int) -> list[int]:
    label = [0] * (1 << n)
    for i, c in enumerate(cycles):
        for v in c.state_values():
            label[v] = i
    return label


def adjacency_graph(f: FeedbackSpec, cap: int = DEFAULT_CAP,
                    pair: str = "conjugate") -> AdjacencyGraph:
    """Build the cycle adjacency graph from conjugate (or companion) pairs."""
    if pair not in ("conjugate", "companion"):
        raise ValueError(f"pair must be 'conjugate' or 'companion', got {pair!r}")
    cycles = decompose(f, cap)
    n = f.n
    label = _labels(cycles, n)
    flip = 1 << (n - 1) if pair == "conjugate" else 1
    shared_mask = (1 << (n - 1)) - 1
    edges: dict[tuple[int, int], set[int]] = {}
    for v in range(1 << n):
        if v & flip:
            continue
        i, j = label[v], label[v | flip]
        if i != j:
            rest = v & shared_mask if pair == "conjugate" else v >> 1
            edges.setdefault((min(i, j), max(i, j)), set()).add(rest.bit_count())
    return AdjacencyGraph(cycles, {e: frozenset(ks) for e, ks in sorted(edges.items())})


def join_cycles(f: FeedbackSpec, c1: CycleRep, c2: CycleRep, s: State,
                pair: str = "companion") -> CycleRep:
    """Merge c1 and c2 through the pair (s, partner), s on c1, partner on c2.

    For a companion pair the predecessors of s and s' exchange successors;
    for a conjugate pair s and its conjugate exchange successors.
    """
    _same_order(f, s)
    if pair == "companion":
        partner = companion(s)
    elif pair == "conjugate":
        partner = conjugate(s)
    else:
        raise ValueError(f"pair must be 'companion' or 'conjugate', got {pair!r}")
    on1, on2 = set(c1.state_values()), set(c2.state_values())
    if s.value not in on1 or partner.value not in on2:
        raise JoinError(f"pair ({s}, {partner}) is not shared by the two cycles")
    if pair == "companion":
        a, b = previous_state(f, s).value, previous_state(f, partner).value
        override = {a: partner.value, b: s.value}
    else:
        override = {s.value: f.step(partner.value), partner.value: f.step(s.value)}
    vals = [s.value]
    x = override.get(s.value, f.step(s.value))
    while x != s.value:
        vals.append(x)
        x = override.get(x, f.step(x))
    if len(vals) != c1.length + c2.length:
        raise JoinError(f"joined cycle has length {len(vals)}, "
                        f"expected {c1.length + c2.length}")
    return CycleRep.from_values(vals, f.n)
