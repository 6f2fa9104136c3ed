"""Pure-Python hot loops.

Mirrors ``_ckernels.pyx`` function for function; ``_backend`` picks one at
import.  States are ints with the first register stage as the most
significant of n bits.  A feedback table ``g`` is indexed by the low n-1
bits of the state, so ``next = (s << 1 | s >> (n-1) ^ g[s & low]) & mask``.
"""
from array import array

NAME = "python"


def traverse(n, g):
    """Walk every cycle of the register.

    Returns ``(order, lengths)``: ``order`` lists all 2^n states cycle by
    cycle, each cycle starting at its smallest unvisited state, and
    ``lengths`` gives the cycle sizes in the same order.
    """
    size = 1 << n
    mask = size - 1
    low = mask >> 1
    top = n - 1
    seen = bytearray(size)
    order = array("I", bytes(4 * size))
    lengths = []
    pos = 0
    for start in range(size):
        if seen[start]:
            continue
        s = start
        first = pos
        while not seen[s]:
            seen[s] = 1
            order[pos] = s
            pos += 1
            s = ((s << 1) & mask) | ((s >> top) ^ g[s & low])
        lengths.append(pos - first)
    return order, lengths


def omega_violation(n, g):
    """A state on some cycle whose length does not divide n + 1, else -1."""
    size = 1 << n
    mask = size - 1
    low = mask >> 1
    top = n - 1
    period = n + 1
    seen = bytearray(size)
    for start in range(size):
        if seen[start]:
            continue
        s = start
        length = 0
        while True:
            seen[s] = 1
            s = ((s << 1) & mask) | ((s >> top) ^ g[s & low])
            length += 1
            if s == start:
                break
            if length > period:
                return start
        if period % length:
            return start
    return -1


def omega_violation_symmetric(n, v):
    """Same as :func:`omega_violation` for g(x) = v[wt(x)] (len(v) == n)."""
    size = 1 << n
    mask = size - 1
    top = n - 1
    period = n + 1
    seen = bytearray(size)
    for start in range(size):
        if seen[start]:
            continue
        s = start
        w = start.bit_count()
        length = 0
        while True:
            seen[s] = 1
            head = s >> top
            bit = head ^ v[w - head]
            s = ((s << 1) & mask) | bit
            w += bit - head
            length += 1
            if s == start:
                break
            if length > period:
                return start
        if period % length:
            return start
    return -1


def _rot_down(x, width):
    # bit at string position j moves to position j + 1 (cyclic)
    return (x >> 1) | ((x & 1) << (width - 1))


def longest_run(e, width):
    """Longest cyclic run of ones in a width-bit vector (width if all ones)."""
    full = (1 << width) - 1
    if e == full:
        return width
    t = 0
    while e:
        e &= _rot_down(e, width)
        t += 1
    return t


def is_run(e, width):
    full = (1 << width) - 1
    if e == full:
        return True
    starts = e & ~_rot_down(e, width) & full
    return starts.bit_count() == 1


def _lead_run(r, width, full):
    """Length of the first block of ones after the leading zeros."""
    z = width - r.bit_length()
    inv = ~(r << z) & full
    return width - inv.bit_length()


def is_preferred_ext(e, width):
    """True if e is the base-2 largest rotation of the form 0^r 1^t 0 ... 1 0.

    t is the longest cyclic run of ones.  Run vectors never qualify.
    """
    full = (1 << width) - 1
    if (e & 3) != 2 or is_run(e, width):
        return False
    t = longest_run(e, width)
    if _lead_run(e, width, full) != t:
        return False
    r = e
    for _ in range(width - 1):
        r = _rot_down(r, width)
        if r > e and (r & 3) == 2 and _lead_run(r, width, full) == t:
            return False
    return True


def debruijn(n, utable, s0):
    """Run the bit-level generator from window s0.

    ``utable[k]`` is the bridge state for extended weight 2k + 1 (index 0
    unused).  Stops when the window returns to s0 or after 2^n + 1 steps.
    Returns ``(bits, steps)``.
    """
    size = 1 << n
    mask = size - 1
    low = mask >> 1
    top = n - 1
    width = n + 1
    s = s0
    w = s0.bit_count()
    p = w & 1
    out = bytearray()
    steps = 0
    while True:
        a = s >> top
        suffix = s & low
        if p ^ a:
            swap = utable[(w - a + 1) >> 1] == ((suffix << 1) | 1)
        else:
            swap = is_preferred_ext((suffix << 2) | 2, width)
        if swap:
            bit = p
            p = a
        else:
            bit = p ^ 1
            p = a ^ 1
        w += bit - a
        s = ((s << 1) & mask) | bit
        out.append(bit)
        steps += 1
        if s == s0 or steps > size:
            break
    return bytes(out), steps


def first_repeat(bits, n):
    """First cyclic n-window that occurs twice in ``bits``, else -1."""
    length = len(bits)
    if length == 0:
        return -1
    mask = (1 << n) - 1
    seen = bytearray(1 << n)
    s = 0
    for j in range(n - 1):
        s = (s << 1) | bits[j % length]
    for i in range(length):
        s = ((s << 1) & mask) | bits[(i + n - 1) % length]
        if seen[s]:
            return s
        seen[s] = 1
    return -1
