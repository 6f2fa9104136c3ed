"""De Bruijn cycles from the complementary summing register by cycle joining.

Two routes produce the same cycle.  :func:`build_main_cycle` and
:func:`joined_cycle` materialize the CSR cycles and splice them together
explicitly; :func:`generate` never looks at a cycle and decides every bit
from the current window alone, in O(n) memory.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from math import comb, prod
from typing import Iterable

from . import fsr
from ._backend import kernels
from .errors import ConsistencyError, GenerationError, OrderError
from .fsr import FeedbackSpec, State

__all__ = [
    "MAX_GENERATE_ORDER", "ExtRep", "PreferredState", "UTable", "GeneratorState",
    "MainCycle", "extended_rep", "is_run_cycle", "longest_cyclic_run",
    "run_profile", "preferred_state", "build_main_cycle", "joined_cycle", "default_utable",
    "validate_utable", "bridge_choices", "count_utables", "random_utable",
    "generator_step", "generate", "verify_debruijn", "first_repeated_window",
    "rotation_offset",
]

MAX_GENERATE_ORDER = 30


def _require_csr(f: FeedbackSpec) -> None:
    if f.kind is not fsr.Kind.CSR:
        raise ValueError(f"preferred states are defined for CSR registers only, got {f.kind.value}")


@dataclass(frozen=True)
class ExtRep:
    """A state followed by its feedback bit: (x_1, ..., x_n, f(x_1..x_n))."""

    bits: tuple[int, ...]

    @property
    def weight(self) -> int:
        return sum(self.bits)

    @property
    def value(self) -> int:
        return int(self.text, 2)

    @property
    def text(self) -> str:
        return "".join(map(str, self.bits))


def extended_rep(f: FeedbackSpec, s: State) -> ExtRep:
    return ExtRep(s.bits + (fsr.evaluate(f, s),))


def _bits(e) -> tuple[int, ...]:
    return e.bits if isinstance(e, ExtRep) else tuple(e)


def is_run_cycle(e) -> bool:
    """True if the ones of e form a single cyclic block (all ones included)."""
    text = "".join(map(str, _bits(e)))
    if "1" not in text:
        return False
    if "0" not in text:
        return True
    # rotate so the string starts with a zero; then count blocks of ones
    k = text.index("0")
    rotated = text[k:] + text[:k]
    return len([run for run in rotated.split("0") if run]) == 1


def run_profile(e) -> tuple[int, ...]:
    """Lengths of the cyclic runs of ones in e, longest first."""
    text = "".join(map(str, _bits(e)))
    if "0" not in text:
        return (len(text),)
    k = text.index("0")
    rotated = text[k:] + text[:k]
    return tuple(sorted((len(run) for run in rotated.split("0") if run), reverse=True))


def longest_cyclic_run(e) -> int:
    profile = run_profile(e)
    return profile[0] if profile else 0


@dataclass(frozen=True)
class PreferredState:
    state: State
    r: int
    t: int
    run_cycle: bool


def preferred_state(f: FeedbackSpec, c: fsr.CycleRep) -> PreferredState:
    """Preferred state of a CSR cycle.

    A run cycle of extended weight 2k+1 gets 1^(2k+1) 0^(n-2k-1).  Otherwise
    take, over the extended representations of the cycle's states, the
    base-2 largest one shaped 0^r 1^t 0 ... 1 0 with t the longest cyclic
    run of ones, and drop its last bit.
    """
    _require_csr(f)
    n = f.n
    exts = [extended_rep(f, s) for s in c.states()]
    first = exts[0]
    if is_run_cycle(first):
        ones = min(first.weight, n)
        state = State.from_bits((1,) * ones + (0,) * (n - ones))
        return PreferredState(state, 0, first.weight, True)
    t = longest_cyclic_run(first)
    shape = re.compile(rf"(0*)1{{{t}}}0[01]*10")
    candidates = [e.text for e in exts if shape.fullmatch(e.text)]
    if not candidates:
        raise ConsistencyError(f"cycle {c} has no extended representation of preferred shape")
    best = max(candidates)
    r = len(best) - len(best.lstrip("0"))
    return PreferredState(State(int(best[:-1], 2), n), r, t, False)


@dataclass
class MainCycle:
    """MC_k: every CSR cycle of extended weight 2k+1 joined into one.

    ``states`` starts at 0^(n-2k) 1^(2k), the natural entry point on the
    initial run cycle; ``joins`` lists the (P(C), P(C)') pairs in join order.
    """

    n: int
    k: int
    states: list[State]
    joins: list[tuple[State, State]]

    @property
    def cycle(self) -> fsr.CycleRep:
        return fsr.CycleRep.from_values([s.value for s in self.states], self.n)

    def decimal_labels(self) -> list[int]:
        return [s.decimal_label for s in self.states]

    def join_decimals(self) -> list[tuple[int, int]]:
        return [(p.decimal_label, q.decimal_label) for p, q in self.joins]


class _Splicer:
    """Successor/predecessor maps for a growing joined cycle."""

    def __init__(self, f: FeedbackSpec, values: Iterable[int]):
        self.f = f
        self.succ: dict[int, int] = {}
        self.pred: dict[int, int] = {}
        self.add(values)

    def add(self, values: Iterable[int]) -> None:
        for v in values:
            w = self.f.step(v)
            self.succ[v] = w
            self.pred[w] = v

    def swap_predecessors(self, x: int, y: int) -> None:
        a, b = self.pred[x], self.pred[y]
        self.succ[a], self.succ[b] = y, x
        self.pred[y], self.pred[x] = a, b

    def walk(self, start: int) -> list[int]:
        out = [start]
        v = self.succ[start]
        while v != start:
            out.append(v)
            v = self.succ[v]
        return out


def _check_k(n: int, k: int) -> None:
    if not 0 <= k <= n // 2:
        raise ValueError(f"weight index k must lie in 0..{n // 2}, got {k}")


def _entry_state(n: int, k: int) -> int:
    return (1 << (2 * k)) - 1


TIE_BREAKS = ("run-profile", "preferred-state")


def build_main_cycle(f: FeedbackSpec, k: int, cap: int = fsr.DEFAULT_CAP,
                     tie_break: str = "run-profile") -> MainCycle:
    """Join all CSR cycles of extended weight 2k+1, starting from the run cycle.

    Each cycle C is spliced in at (P(C), P(C)'), and P(C)' must already lie
    on the main cycle.  Among the cycles joinable at that moment the one
    with the longest run of ones goes first.  Ties are broken by

    ``"run-profile"``
        the remaining run lengths, longest first, then the larger
        preferred state; reproduces the published n = 7 join orders.
    ``"preferred-state"``
        the larger preferred state directly.

    The resulting cycle is the same either way; only ``joins`` differs.
    """
    _require_csr(f)
    n = f.n
    _check_k(n, k)
    if tie_break not in TIE_BREAKS:
        raise ValueError(f"tie_break must be one of {TIE_BREAKS}, got {tie_break!r}")
    weight = 2 * k + 1
    cycles = [c for c in fsr.decompose(f, cap)
              if extended_rep(f, c.states()[0]).weight == weight]
    prefs = {c: preferred_state(f, c) for c in cycles}
    runs = [c for c in cycles if prefs[c].run_cycle]
    if len(runs) != 1:
        raise ConsistencyError(f"expected one run cycle of extended weight {weight}, found {len(runs)}")
    main = _Splicer(f, runs[0].state_values())
    rest = [c for c in cycles if c is not runs[0]]
    joins = []
    if tie_break == "run-profile":
        rank = {c: (run_profile(extended_rep(f, prefs[c].state)), prefs[c].state.value)
                for c in rest}
    else:
        rank = {c: (prefs[c].t, prefs[c].state.value) for c in rest}
    while rest:
        ready = [c for c in rest if prefs[c].state.value ^ 1 in main.succ]
        if not ready:
            raise ConsistencyError(
                f"no remaining weight-{weight} cycle has its preferred companion on the main cycle")
        c = max(ready, key=rank.__getitem__)
        rest.remove(c)
        p = prefs[c].state
        q = fsr.companion(p)
        main.add(c.state_values())
        main.swap_predecessors(p.value, q.value)
        joins.append((p, q))
    values = main.walk(_entry_state(n, k))
    if len(values) != sum(c.length for c in cycles):
        raise ConsistencyError("main cycle does not cover its member cycles")
    return MainCycle(n, k, [State(v, n) for v in values], joins)


@dataclass
class UTable:
    """Bridge states: ``bridges[k]`` is U_(2k+1) for k = 1 .. n // 2."""

    n: int
    bridges: dict[int, State] = field(default_factory=dict)

    def __getitem__(self, k: int) -> State:
        return self.bridges[k]

    def kernel_list(self) -> list[int]:
        return [0] + [self.bridges[k].value for k in range(1, self.n // 2 + 1)]

    def dumps(self) -> str:
        return "".join(f"{k}: {self.bridges[k]}\n" for k in sorted(self.bridges))


def _default_bridge(n: int, k: int) -> State:
    return State.from_bits((1,) * (2 * k - 1) + (0,) * (n - 2 * k) + (1,))


def default_utable(n: int) -> UTable:
    """U_(2k+1) = 1^(2k-1) 0^(n-2k) 1 for every k."""
    if n < fsr.MIN_ORDER:
        raise OrderError(f"register order must be at least {fsr.MIN_ORDER}, got {n}")
    return UTable(n, {k: _default_bridge(n, k) for k in range(1, n // 2 + 1)})


def validate_utable(n: int, u: UTable) -> list[str]:
    """Violations of the bridge-state rules; an empty list means valid."""
    problems = []
    if u.n != n:
        problems.append(f"table is for order {u.n}, expected {n}")
    wanted = set(range(1, n // 2 + 1))
    for k in sorted(wanted - set(u.bridges)):
        problems.append(f"k={k}: missing")
    for k in sorted(set(u.bridges) - wanted):
        problems.append(f"k={k}: out of range 1..{n // 2}")
    for k in sorted(wanted & set(u.bridges)):
        s = u.bridges[k]
        if s.n != n:
            problems.append(f"k={k}: {s} has length {s.n}, expected {n}")
            continue
        if not s.value & 1:
            problems.append(f"k={k}: {s} does not end in 1")
        if s.weight != 2 * k:
            problems.append(f"k={k}: {s} has weight {s.weight}, expected {2 * k}")
    return problems


def bridge_choices(n: int, k: int) -> list[State]:
    """Every admissible U_(2k+1): last bit 1 and weight 2k."""
    _check_k(n, k)
    return [State(v, n) for v in range(1, 1 << n, 2) if v.bit_count() == 2 * k]


def count_utables(n: int) -> int:
    if n < fsr.MIN_ORDER:
        raise OrderError(f"register order must be at least {fsr.MIN_ORDER}, got {n}")
    return prod(comb(n - 1, 2 * k - 1) for k in range(1, n // 2 + 1))


def random_utable(n: int, rng: random.Random | None = None) -> UTable:
    rng = rng or random.Random()
    bridges = {}
    for k in range(1, n // 2 + 1):
        ones = rng.sample(range(n - 1), 2 * k - 1)
        bits = [0] * (n - 1) + [1]
        for i in ones:
            bits[i] = 1
        bridges[k] = State.from_bits(bits)
    return UTable(n, bridges)


def joined_cycle(n: int, u: UTable | None = None, cap: int = fsr.DEFAULT_CAP) -> list[State]:
    """The full 2^n cycle obtained by splicing MC_(k-1) into MC_k at (U, U')
    for k = n // 2 down to 1.  Starts at the entry state of the top MC."""
    u = u or default_utable(n)
    problems = validate_utable(n, u)
    if problems:
        raise ValueError("invalid bridge table: " + "; ".join(problems))
    f = FeedbackSpec.csr(n)
    top = n // 2
    mains = {k: build_main_cycle(f, k, cap) for k in range(top + 1)}
    whole = _Splicer(f, ())
    # rebuild the splice maps from the already joined main cycles
    for mc in mains.values():
        vals = [s.value for s in mc.states]
        for a, b in zip(vals, vals[1:] + vals[:1]):
            whole.succ[a] = b
            whole.pred[b] = a
    for k in range(top, 0, -1):
        x = u[k].value
        whole.swap_predecessors(x, x ^ 1)
    values = whole.walk(_entry_state(n, top))
    if len(values) != 1 << n:
        raise ConsistencyError(f"joined cycle has {len(values)} states, expected {1 << n}")
    return [State(v, n) for v in values]


@dataclass(frozen=True)
class GeneratorState:
    """Current window with its running parity and weight."""

    window: State
    parity: int
    weight: int
    steps: int = 0

    @classmethod
    def start(cls, s0: State) -> GeneratorState:
        return cls(s0, s0.weight & 1, s0.weight)

    def check(self) -> None:
        if self.weight != self.window.weight or self.parity != (self.window.weight & 1):
            raise ConsistencyError(
                f"generator state out of sync at step {self.steps}: window {self.window}, "
                f"parity {self.parity}, weight {self.weight}")


def generator_step(gs: GeneratorState, u: UTable) -> tuple[int, GeneratorState]:
    """Produce the next bit and advance the window.

    With p xor a_1 = 1 the successor is swapped exactly when
    (a_2..a_n, 1) is the bridge state of weight index (w - a_1 + 1) / 2;
    with p xor a_1 = 0 it is swapped exactly when (a_2..a_n, 1, 0) is the
    preferred extended representation of its (non-run) cycle.
    """
    gs.check()
    n = gs.window.n
    s = gs.window.value
    a = s >> (n - 1)
    suffix = s & ((1 << (n - 1)) - 1)
    p, w = gs.parity, gs.weight
    if p ^ a:
        swap = u[(w - a + 1) // 2].value == (suffix << 1) | 1
    else:
        swap = kernels.is_preferred_ext((suffix << 2) | 2, n + 1)
    if swap:
        bit, parity = p, a
    else:
        bit, parity = p ^ 1, a ^ 1
    nxt = GeneratorState(State(((s << 1) & ((1 << n) - 1)) | bit, n), parity,
                         w - a + bit, gs.steps + 1)
    return bit, nxt


def _default_seed(n: int) -> State:
    return State((1 << (n - 1)) - 1, n)


def generate(n: int, u: UTable | None = None, s0: State | None = None,
             debug: bool = False) -> str:
    """Emit the 2^n-bit de Bruijn cycle as a '0'/'1' string.

    Each step appends the newly produced bit, so the output starts with the
    bit that follows the seed window (default seed 0 1^(n-1)).  With
    ``debug`` the pure-Python step runs and rechecks parity and weight
    every step.
    """
    if not fsr.MIN_ORDER <= n <= MAX_GENERATE_ORDER:
        raise OrderError(f"order must lie in {fsr.MIN_ORDER}..{MAX_GENERATE_ORDER}, got {n}")
    u = u or default_utable(n)
    problems = validate_utable(n, u)
    if problems:
        raise ValueError("invalid bridge table: " + "; ".join(problems))
    s0 = s0 or _default_seed(n)
    if s0.n != n:
        raise OrderError(f"seed has order {s0.n}, expected {n}")
    size = 1 << n
    if debug:
        gs = GeneratorState.start(s0)
        out = []
        while True:
            bit, gs = generator_step(gs, u)
            out.append(bit)
            if gs.window == s0 or gs.steps > size:
                break
        gs.check()
        bits, steps = bytes(out), gs.steps
    else:
        bits, steps = kernels.debruijn(n, u.kernel_list(), s0.value)
    if steps != size:
        raise GenerationError(
            f"generator returned to the seed after {steps} steps, expected {size}", steps)
    return bits.translate(_ASCII).decode("ascii")


_ASCII = bytes.maketrans(b"\x00\x01", b"01")


def _as_bytes(seq) -> bytes:
    if isinstance(seq, str):
        text = "".join(seq.split())
        if set(text) - {"0", "1"}:
            raise ValueError("bit sequence may contain only '0' and '1'")
        return text.encode("ascii").translate(bytes.maketrans(b"01", b"\x00\x01"))
    out = bytes(seq)
    if any(b > 1 for b in out):
        raise ValueError("bit sequence may contain only 0 and 1")
    return out


def first_repeated_window(seq, n: int) -> str | None:
    """First cyclic n-window seen twice, as a bit string, else None."""
    hit = kernels.first_repeat(_as_bytes(seq), n)
    return None if hit < 0 else format(hit, f"0{n}b")


def verify_debruijn(seq, n: int) -> bool:
    """True iff seq has length 2^n and all its cyclic n-windows differ."""
    bits = _as_bytes(seq)
    return len(bits) == 1 << n and kernels.first_repeat(bits, n) < 0


def rotation_offset(seq: str, reference: str) -> int | None:
    """j with reference == seq[j:] + seq[:j], or None."""
    if len(seq) != len(reference):
        return None
    j = (seq + seq).find(reference)
    return None if j < 0 else j
