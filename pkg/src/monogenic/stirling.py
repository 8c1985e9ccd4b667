"""Stirling numbers of the first kind, Bernoulli numbers, and regular primes.

Stirling numbers here are the unsigned ones: s(n, k) is the coefficient of
x**k in the rising factorial x(x+1)...(x+n-1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .arith import is_prime, padic_valuation
from .poly import IntegerPolynomial

__all__ = [
    "DEFAULT_TABLE_CAP",
    "StirlingTable",
    "stirling_table",
    "bernoulli",
    "is_regular_prime",
    "ValuationRow",
    "ValuationReport",
    "verify_stirling_valuations",
    "HypothesisError",
    "rising_factorial",
    "stirling_family_polynomial",
]

DEFAULT_TABLE_CAP = 200


class HypothesisError(ValueError):
    """An input violates a stated hypothesis (irregular prime, range, ...)."""


@dataclass(frozen=True)
class StirlingTable:
    rows: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.rows) - 1

    def __call__(self, n: int, k: int) -> int:
        if k < 0 or k > n:
            return 0
        return self.rows[n][k]

    def row(self, n: int) -> list[int]:
        return list(self.rows[n])


def stirling_table(N: int, cap: int = DEFAULT_TABLE_CAP) -> StirlingTable:
    """Rows 0..N by s(n+1, k) = s(n, k-1) + n*s(n, k)."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    if N > cap:
        raise ValueError(f"table size {N} exceeds cap {cap}")
    rows = [(1,)]
    for n in range(N):
        prev = rows[-1]
        nxt = [0] * (n + 2)
        for k in range(1, n + 2):
            nxt[k] = (prev[k - 1] if k - 1 <= n else 0) + (n * prev[k] if k <= n else 0)
        rows.append(tuple(nxt))
    return StirlingTable(tuple(rows))


def bernoulli(N: int) -> tuple[Fraction, ...]:
    """B_0..B_N from sum_{j<=m} C(m+1, j) B_j = 0, so B_1 = -1/2."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    B = [Fraction(1)]
    for m in range(1, N + 1):
        if m % 2 == 1 and m > 1:
            B.append(Fraction(0))
            continue
        acc = sum(comb(m + 1, j) * B[j] for j in range(m))
        B.append(-acc / (m + 1))
    return tuple(B)


def is_regular_prime(p: int) -> bool:
    if p == 2 or not is_prime(p):
        raise HypothesisError(f"{p} is not an odd prime")
    return all(b.numerator % p != 0 for b in bernoulli(max(p - 3, 0))[::2] if b)


@dataclass(frozen=True)
class ValuationRow:
    k: int
    measured: int
    predicted: int | None
    part: str | None  # which prediction applies: "a=1", "periodic", "regular-range" or None
    asserted: bool

    @property
    def matches(self) -> bool:
        return self.predicted is None or self.measured == self.predicted


@dataclass(frozen=True)
class ValuationReport:
    p: int
    a: int
    rows: tuple[ValuationRow, ...] = field(default_factory=tuple)

    @property
    def mismatches(self) -> list[ValuationRow]:
        return [r for r in self.rows if r.asserted and not r.matches]

    @property
    def unasserted_mismatches(self) -> list[ValuationRow]:
        return [r for r in self.rows if not r.asserted and not r.matches]

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "a": self.a,
            "rows": [
                {
                    "k": r.k,
                    "measured": r.measured,
                    "predicted": r.predicted,
                    "part": r.part,
                    "asserted": r.asserted,
                    "matches": r.matches,
                }
                for r in self.rows
            ],
            "mismatches": [r.k for r in self.mismatches],
            "unasserted_mismatches": [r.k for r in self.unasserted_mismatches],
        }


def verify_stirling_valuations(p: int, a: int = 1, table: StirlingTable | None = None) -> ValuationReport:
    """Compare measured v_p(s(ap, ap-k)) with the predicted valuations.

    eps_k is 1 for odd k and 0 for even k. For a == 1 every k in [2, p-2] is
    checked against eps_k + 1. For a > 1 the value (v_p(k) + 1) * eps_k is
    asserted where k = eps_k (mod p-1). For other k up to a(p-1) - 1 the value
    (v_p(k) + 1) * eps_k + 1 is reported but not asserted.
    """
    if p < 5 or not is_prime(p):
        raise HypothesisError(f"p = {p} must be a prime >= 5")
    if not is_regular_prime(p):
        raise HypothesisError(f"p = {p} is irregular")
    if not 1 <= a <= p - 1:
        raise HypothesisError(f"a = {a} must lie in [1, {p - 1}]")
    n = a * p
    if table is None or table.size < n:
        table = stirling_table(n, cap=max(n, DEFAULT_TABLE_CAP))
    rows = []
    for k in range(2, n - 1):
        measured = padic_valuation(table(n, n - k), p)
        eps = k % 2
        if a == 1:
            rows.append(ValuationRow(k, measured, eps + 1, "a=1", True))
        elif k % (p - 1) == eps % (p - 1):
            rows.append(ValuationRow(k, measured, (padic_valuation(k, p) + 1) * eps, "periodic", True))
        elif k <= a * (p - 1) - 1:
            rows.append(ValuationRow(k, measured, (padic_valuation(k, p) + 1) * eps + 1, "regular-range", False))
        else:
            rows.append(ValuationRow(k, measured, None, None, False))
    return ValuationReport(p, a, tuple(rows))


def rising_factorial(n: int) -> IntegerPolynomial:
    """x(x+1)...(x+n-1)."""
    out = IntegerPolynomial([1])
    for j in range(n):
        out = out * IntegerPolynomial([j, 1])
    return out


def stirling_family_polynomial(p: int, s: int) -> IntegerPolynomial:
    """x(x+1)...(x+p-1) - (p-1)! x + p**s for a regular prime p >= 7 and s >= 2."""
    if p < 7 or not is_prime(p):
        raise HypothesisError(f"p = {p} must be a prime >= 7")
    if not is_regular_prime(p):
        raise HypothesisError(f"p = {p} is irregular")
    if s < 2:
        raise HypothesisError(f"s = {s} must be >= 2")
    return rising_factorial(p) - IntegerPolynomial([0, factorial(p - 1)]) + p**s
