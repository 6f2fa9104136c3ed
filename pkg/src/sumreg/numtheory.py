"""Small-integer arithmetic functions used by the cycle-count formulas.

Arguments here are divisors of n + 1 for register orders that can be
enumerated or printed, so trial division is plenty.
"""
from functools import lru_cache

__all__ = ["factorize", "divisors", "mobius", "totient"]


@lru_cache(maxsize=None)
def factorize(m: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of m as ((p, e), ...) with ascending p."""
    if m < 1:
        raise ValueError(f"factorize expects a positive integer, got {m}")
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return tuple(out)


@lru_cache(maxsize=None)
def divisors(m: int) -> tuple[int, ...]:
    """All positive divisors of m in ascending order."""
    divs = [1]
    for p, e in factorize(m):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return tuple(sorted(divs))


@lru_cache(maxsize=None)
def mobius(m: int) -> int:
    fac = factorize(m)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


@lru_cache(maxsize=None)
def totient(m: int) -> int:
    out = m
    for p, _ in factorize(m):
        out -= out // p
    return out
