"""Exact integer arithmetic: primality, factorization, valuations, squarefree tests.

Primality is deterministic below 3.3e24 (Miller-Rabin with the first thirteen
prime bases). Above that bound ``is_prime`` runs the Baillie-PSW test, which
has no known counterexample but is not a proof.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, prod
from typing import Iterable, Mapping

__all__ = [
    "Effort",
    "FactoredInteger",
    "SquarefreeStatus",
    "UndefinedValuationError",
    "NoPrimesInClassError",
    "primes_up_to",
    "is_prime",
    "factorize",
    "padic_valuation",
    "squarefull_split",
    "is_squarefree",
    "find_prime_in_class",
]

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# Smallest strong pseudoprime to all of _MR_BASES.
_MR_DETERMINISTIC_LIMIT = 3317044064679887385961981


class UndefinedValuationError(ValueError):
    """Raised for the p-adic valuation of zero."""


class NoPrimesInClassError(ValueError):
    """Raised when a residue class cannot contain infinitely many primes."""


@dataclass(frozen=True)
class Effort:
    """Factorization budget: trial division bound and Pollard rho iteration cap."""

    trial_bound: int = 10**6
    rho_iterations: int = 200_000

    def __post_init__(self) -> None:
        if self.trial_bound < 2:
            raise ValueError("trial_bound must be at least 2")
        if self.rho_iterations < 0:
            raise ValueError("rho_iterations must be nonnegative")


DEFAULT_EFFORT = Effort()


@lru_cache(maxsize=32)
def primes_up_to(n: int) -> tuple[int, ...]:
    """All primes <= n by the sieve of Eratosthenes."""
    if n < 2:
        return ()
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


@lru_cache(maxsize=8)
def _prime_blocks(bound: int, size: int = 512) -> tuple[tuple[int, tuple[int, ...]], ...]:
    # (product, primes) chunks so one gcd can skip a whole block during trial division
    ps = primes_up_to(bound)
    return tuple((prod(ps[i : i + size]), ps[i : i + size]) for i in range(0, len(ps), size))


# ---------------------------------------------------------------------------
# primality


def _miller_rabin(n: int, bases: Iterable[int]) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas(n: int) -> bool:
    # Selfridge method A parameters
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4

    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    def half(x: int) -> int:
        return (x + n) // 2 % n if x % 2 else x // 2 % n

    U, V, Qk = 1, P % n, Q % n
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = half(P * U + V), half(D * U + P * V)
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    """Return True iff ``n`` is prime.

    Exact for n < 3.3e24; Baillie-PSW (no known counterexample) above.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n < 43 * 43:
        return True
    if n < _MR_DETERMINISTIC_LIMIT:
        return _miller_rabin(n, _MR_BASES)
    if isqrt(n) ** 2 == n:
        return False
    return _miller_rabin(n, (2,)) and _strong_lucas(n)


# ---------------------------------------------------------------------------
# factorization


@dataclass(frozen=True)
class FactoredInteger:
    """sign * prod(p**e) * cofactor, with the cofactor left unsplit.

    ``sf_bound`` certifies that the cofactor has no prime divisor (hence no
    square divisor p**2) with p <= sf_bound. A cofactor of 1 means the
    factorization is complete.
    """

    sign: int
    factors: Mapping[int, int] = field(default_factory=dict)
    cofactor: int = 1
    sf_bound: int = 0

    def __post_init__(self) -> None:
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or 1")
        if self.cofactor < 1 and self.sign != 0:
            raise ValueError("cofactor must be positive")
        object.__setattr__(self, "factors", dict(sorted(self.factors.items())))

    @property
    def value(self) -> int:
        return self.sign * prod(p**e for p, e in self.factors.items()) * self.cofactor

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def to_json(self) -> dict:
        return {
            "sign": self.sign,
            "factors": {str(p): str(e) for p, e in self.factors.items()},
            "cofactor": str(self.cofactor),
            "sf_bound": str(self.sf_bound),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "FactoredInteger":
        return cls(
            sign=int(data["sign"]),
            factors={int(p): int(e) for p, e in data["factors"].items()},
            cofactor=int(data["cofactor"]),
            sf_bound=int(data["sf_bound"]),
        )

    def __str__(self) -> str:
        parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors.items()]
        if self.cofactor != 1:
            parts.append(f"[{self.cofactor}]")
        body = " * ".join(parts) or "1"
        return f"-{body}" if self.sign < 0 else body


def _trial_divide(n: int, bound: int) -> tuple[dict[int, int], int]:
    """Strip every prime <= bound from n > 0."""
    factors: dict[int, int] = {}
    for block, ps in _prime_blocks(bound):
        if n == 1:
            break
        if gcd(n, block) == 1:
            continue
        for p in ps:
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                factors[p] = e
    return factors, n


def _perfect_power(n: int) -> tuple[int, int]:
    """Return (root, k) with root**k == n and k maximal; k == 1 if none."""
    bits = n.bit_length()
    for k in primes_up_to(1 << max(12, bits.bit_length())):
        r = _iroot(n, k)
        if r < 2:
            break
        if r**k == n:
            root, j = _perfect_power(r)
            return root, j * k
    return n, 1


def _iroot(n: int, k: int) -> int:
    if n < 2:
        return n
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def _brent_rho(n: int, budget: list[int]) -> int | None:
    """Find a nontrivial factor of composite odd n, spending from ``budget[0]``."""
    for c in range(1, 64):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                steps = min(m, r - k)
                if budget[0] < steps:
                    return None
                budget[0] -= steps
                for _ in range(steps):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += steps
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    return None


def _split(n: int, budget: list[int], factors: dict[int, int], leftover: list[int], mult: int = 1) -> None:
    """Split n (no prime factor <= trial bound) into primes, recording multiplicity ``mult``."""
    if n == 1:
        return
    if is_prime(n):
        factors[n] = factors.get(n, 0) + mult
        return
    root, k = _perfect_power(n)
    if k > 1:
        _split(root, budget, factors, leftover, mult * k)
        return
    d = _brent_rho(n, budget)
    if d is None:
        leftover.extend([n] * mult)
        return
    _split(d, budget, factors, leftover, mult)
    _split(n // d, budget, factors, leftover, mult)


def factorize(n: int, effort: Effort = DEFAULT_EFFORT) -> FactoredInteger:
    """Factor ``n`` within ``effort``; whatever cannot be split stays in the cofactor."""
    if n == 0:
        raise ValueError("cannot factor 0")
    sign = 1 if n > 0 else -1
    factors, rest = _trial_divide(abs(n), effort.trial_bound)
    leftover: list[int] = []
    _split(rest, [effort.rho_iterations], factors, leftover)
    return FactoredInteger(sign, factors, prod(leftover), effort.trial_bound)


def padic_valuation(n: int | Fraction, p: int) -> int:
    """Largest k with p**k dividing n; for a fraction, v(num) - v(den)."""
    if n == 0:
        raise UndefinedValuationError("valuation of 0 is undefined")
    if isinstance(n, Fraction):
        return padic_valuation(n.numerator, p) - padic_valuation(n.denominator, p)
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def squarefull_split(f: FactoredInteger) -> tuple[FactoredInteger, FactoredInteger]:
    """Partition into (exponent >= 2 part, exponent 1 part).

    An unsplit cofactor is assigned to the squarefree side; that assignment is
    only as good as ``f.sf_bound`` and callers should check ``f.complete``.
    """
    if f.sign == 0:
        raise ValueError("cannot split 0")
    full = {p: e for p, e in f.factors.items() if e >= 2}
    free = {p: e for p, e in f.factors.items() if e == 1}
    return (
        FactoredInteger(1, full, 1, f.sf_bound),
        FactoredInteger(f.sign, free, f.cofactor, f.sf_bound),
    )


@dataclass(frozen=True)
class SquarefreeStatus:
    """Outcome of a squarefree test.

    ``certified`` is False only for the weak positive answer "no p**2 divides n
    with p <= bound".
    """

    squarefree: bool
    certified: bool
    bound: int | None = None

    def __bool__(self) -> bool:
        return self.squarefree

    def __str__(self) -> str:
        if not self.squarefree:
            return "false"
        return "true" if self.certified else f"true-up-to-bound({self.bound})"

    def to_json(self) -> str:
        return str(self)


SQUAREFREE = SquarefreeStatus(True, True)
NOT_SQUAREFREE = SquarefreeStatus(False, True)


def squarefree_status(f: FactoredInteger) -> SquarefreeStatus:
    if any(e > 1 for e in f.factors.values()):
        return NOT_SQUAREFREE
    if f.cofactor == 1:
        return SQUAREFREE
    if _perfect_power(f.cofactor)[1] > 1:
        return NOT_SQUAREFREE
    return SquarefreeStatus(True, False, f.sf_bound)


def is_squarefree(n: int, effort: Effort = DEFAULT_EFFORT) -> SquarefreeStatus:
    if n == 0:
        raise ValueError("0 is not squarefree-testable")
    factors, rest = _trial_divide(abs(n), effort.trial_bound)
    if any(e > 1 for e in factors.values()):
        return NOT_SQUAREFREE
    leftover: list[int] = []
    _split(rest, [effort.rho_iterations], factors, leftover)
    return squarefree_status(FactoredInteger(1, factors, prod(leftover), effort.trial_bound))


def find_prime_in_class(modulus: int, residue: int, start: int = 2) -> int:
    """Smallest prime >= start congruent to residue mod modulus."""
    if modulus < 1:
        raise ValueError("modulus must be positive")
    residue %= modulus
    if gcd(residue, modulus) != 1:
        # the class holds at most one prime (a divisor of the modulus)
        raise NoPrimesInClassError(f"gcd({residue}, {modulus}) != 1")
    n = start + (residue - start) % modulus
    while not is_prime(n):
        n += modulus
    return n
