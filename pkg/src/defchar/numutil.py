"""Small exact number-theory helpers used across the package."""

from __future__ import annotations


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 by trial division."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    m = n
    while m % 2 == 0:
        out[2] = out.get(2, 0) + 1
        m //= 2
    f = 3
    while f * f <= m:
        while m % f == 0:
            out[f] = out.get(f, 0) + 1
            m //= f
        f += 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def is_prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q = p**k, k >= 1, or None."""
    if q < 2:
        return None
    fac = factorize(q)
    if len(fac) != 1:
        return None
    p, k = next(iter(fac.items()))
    return p, k


def euler_phi(n: int) -> int:
    """Euler totient of n >= 1."""
    res = n
    for p in factorize(n):
        res = res // p * (p - 1)
    return res


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of n >= 1."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def coprime_part(n: int, p: int) -> int:
    """Largest divisor of n coprime to the prime p."""
    if n == 0:
        raise ValueError("coprime_part of 0 is undefined")
    m = abs(n)
    while m % p == 0:
        m //= p
    return m
