"""Resultants and discriminants via the Sylvester matrix.

The determinant is taken by fraction-free (Bareiss) elimination, so every
intermediate value is an exact integer.
"""

from __future__ import annotations

from .poly import IntegerPolynomial

__all__ = ["sylvester_matrix", "bareiss_determinant", "resultant", "discriminant"]


def sylvester_matrix(f: IntegerPolynomial, g: IntegerPolynomial) -> list[list[int]]:
    """Square matrix of size deg f + deg g: deg g shifted rows of f, then deg f rows of g."""
    m, n = f.degree, g.degree
    size = m + n
    fd = list(reversed(f.coeffs))
    gd = list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + fd + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gd + [0] * (size - n - 1 - i))
    return rows


def bareiss_determinant(matrix: list[list[int]]) -> int:
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                # division is exact by Sylvester's identity
                rowi[j] = (akk * rowi[j] - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def resultant(f: IntegerPolynomial, g: IntegerPolynomial) -> int:
    """R(f, g) = lc(f)**deg g * prod g(alpha) over the roots alpha of f."""
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of the zero polynomial is undefined")
    if f.degree + g.degree < 1:
        raise ValueError("resultant needs deg f + deg g >= 1")
    return bareiss_determinant(sylvester_matrix(f, g))


def discriminant(f: IntegerPolynomial) -> int:
    """(-1)**(m(m-1)/2) * R(f, f') / lc(f)."""
    m = f.degree
    if m < 1:
        raise ValueError("discriminant needs degree >= 1")
    r = resultant(f, f.derivative())
    q, rem = divmod(r, f.leading)
    # always exact; a remainder means an arithmetic bug
    assert rem == 0, "R(f, f') not divisible by the leading coefficient"
    return -q if (m * (m - 1) // 2) % 2 else q
