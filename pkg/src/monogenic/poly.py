"""Dense univariate polynomials with arbitrary-precision integer coefficients."""

from __future__ import annotations

import json
import re
from functools import reduce
from typing import Iterable, Sequence

from . import gf

__all__ = [
    "IntegerPolynomial",
    "NonIntegralCoefficientError",
    "PolynomialParseError",
    "linear_product",
    "phi_expand",
    "irreducible_mod_p_witness",
    "parse_polynomial",
]


class NonIntegralCoefficientError(ArithmeticError):
    """An antiderivative coefficient c/(u+1) is not an integer."""

    def __init__(self, degree: int, coefficient: int):
        self.degree = degree
        self.coefficient = coefficient
        super().__init__(
            f"coefficient {coefficient} of x^{degree} is not divisible by {degree + 1}"
        )


class PolynomialParseError(ValueError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")


class IntegerPolynomial:
    """Immutable polynomial; ``coeffs[i]`` is the coefficient of x**i.

    Trailing zeros are stripped, so the zero polynomial has ``coeffs == ()``
    and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntegerPolynomial is immutable")

    @classmethod
    def monomial(cls, degree: int, coefficient: int = 1) -> "IntegerPolynomial":
        return cls([0] * degree + [coefficient])

    @classmethod
    def constant(cls, c: int) -> "IntegerPolynomial":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntegerPolynomial([other])
        return isinstance(other, IntegerPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntegerPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        return self.pretty()

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other) -> "IntegerPolynomial":
        if isinstance(other, int):
            other = IntegerPolynomial([other])
        if not isinstance(other, IntegerPolynomial):
            return NotImplemented
        n = max(len(self), len(other))
        return IntegerPolynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "IntegerPolynomial":
        return IntegerPolynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> "IntegerPolynomial":
        if isinstance(other, int):
            other = IntegerPolynomial([other])
        if not isinstance(other, IntegerPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "IntegerPolynomial":
        return (-self) + other

    def __mul__(self, other) -> "IntegerPolynomial":
        if isinstance(other, int):
            return IntegerPolynomial(c * other for c in self.coeffs)
        if not isinstance(other, IntegerPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntegerPolynomial()
        # schoolbook convolution: gamma_k = sum_l alpha_{k-l} beta_l
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntegerPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntegerPolynomial":
        if n < 0:
            raise ValueError("negative power")
        result, base = IntegerPolynomial([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x: int) -> int:
        return self.evaluate(x)

    def evaluate(self, x: int, modulus: int | None = None) -> int:
        acc = 0
        if modulus is None:
            for c in reversed(self.coeffs):
                acc = acc * x + c
        else:
            for c in reversed(self.coeffs):
                acc = (acc * x + c) % modulus
        return acc

    def divmod_monic(self, divisor: "IntegerPolynomial") -> tuple["IntegerPolynomial", "IntegerPolynomial"]:
        """Euclidean division by a monic divisor; exact over the integers."""
        if not divisor.is_monic():
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        dd = divisor.degree
        if len(rem) - 1 < dd:
            return IntegerPolynomial(), self
        quot = [0] * (len(rem) - dd)
        dc = divisor.coeffs
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c:
                quot[k - dd] = c
                for j in range(dd + 1):
                    rem[k - dd + j] -= c * dc[j]
        return IntegerPolynomial(quot), IntegerPolynomial(rem[:dd])

    def exact_div(self, n: int) -> "IntegerPolynomial":
        if any(c % n for c in self.coeffs):
            raise ArithmeticError(f"{n} does not divide every coefficient")
        return IntegerPolynomial(c // n for c in self.coeffs)

    # -- calculus ------------------------------------------------------------

    def derivative(self) -> "IntegerPolynomial":
        return IntegerPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def antiderivative_from_zero(self) -> "IntegerPolynomial":
        """The integral from 0 to x, which must have integer coefficients."""
        out = [0]
        for u, c in enumerate(self.coeffs):
            q, r = divmod(c, u + 1)
            if r:
                raise NonIntegralCoefficientError(u, c)
            out.append(q)
        return IntegerPolynomial(out)

    # -- structure -----------------------------------------------------------

    def reciprocal(self) -> "IntegerPolynomial":
        """x**deg * f(1/x)."""
        if not self.coeffs or self.coeffs[0] == 0:
            raise ValueError("reciprocal needs a nonzero constant term")
        return IntegerPolynomial(reversed(self.coeffs))

    def is_eisenstein(self, q: int) -> bool:
        if self.degree < 1:
            return False
        *lower, lead = self.coeffs
        return lead % q != 0 and all(c % q == 0 for c in lower) and lower[0] % (q * q) != 0

    def reduce_mod(self, n: int) -> "IntegerPolynomial":
        if n < 2:
            raise ValueError("modulus must be at least 2")
        return IntegerPolynomial(c % n for c in self.coeffs)

    # -- text formats --------------------------------------------------------

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def pretty(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


_DECIMAL = re.compile(r"[+-]?[0-9]+")


def parse_polynomial(text: str) -> IntegerPolynomial:
    """Parse an ascending coefficient array such as ``"[-5, 0, 1]"``.

    Entries may be JSON integers or decimal strings.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PolynomialParseError(exc.msg, exc.pos) from None
    if not isinstance(data, list):
        raise PolynomialParseError("expected a JSON array", 0)
    coeffs = []
    for i, item in enumerate(data):
        if isinstance(item, bool) or not isinstance(item, (int, str)):
            raise PolynomialParseError(f"entry {i} is not an integer", _entry_position(text, i))
        if isinstance(item, str):
            if not _DECIMAL.fullmatch(item):
                raise PolynomialParseError(
                    f"entry {i} is not a decimal integer", _entry_position(text, i)
                )
            item = int(item)
        coeffs.append(item)
    return IntegerPolynomial(coeffs)


def _entry_position(text: str, index: int) -> int:
    # character offset of the index-th top-level array entry
    depth, count, in_str = 0, 0, False
    for pos, ch in enumerate(text):
        if in_str:
            in_str = ch != '"'
            continue
        if ch == '"':
            in_str = True
            if depth == 1 and count == index:
                return pos
        elif ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == "," and depth == 1:
            count += 1
        elif depth == 1 and count == index and not ch.isspace():
            return pos
    return len(text)


def linear_product(shifts: Sequence[int]) -> IntegerPolynomial:
    """prod(x + t) over ``shifts``; the coefficient of x**(N-n) is e_n(shifts)."""
    return reduce(lambda acc, t: acc * IntegerPolynomial([t, 1]), shifts, IntegerPolynomial([1]))


def phi_expand(f: IntegerPolynomial, phi: IntegerPolynomial) -> list[IntegerPolynomial]:
    """Digits a_0..a_t of f = sum a_i * phi**i with deg a_i < deg phi."""
    if phi.degree < 1 or not phi.is_monic():
        raise ValueError("phi must be monic of degree >= 1")
    digits = []
    rest = f
    while not rest.is_zero():
        rest, a = rest.divmod_monic(phi)
        digits.append(a)
    return digits


def irreducible_mod_p_witness(f: IntegerPolynomial, primes: Iterable[int]) -> int | None:
    """First prime p with f mod p of full degree and irreducible over F_p, else None.

    None means inconclusive, never reducible.
    """
    if f.degree < 1:
        raise ValueError("degree must be at least 1")
    for p in primes:
        fp = [c % p for c in f.coeffs]
        if fp[-1] == 0:
            continue
        if gf.is_irreducible(fp, p):
            return p
    return None
