"""phi-Newton polygons and lower bounds on the p-part of a polynomial index.

Two bounds are offered. ``ore_bound`` sums phi-indices (lattice counts under
the phi-Newton polygon) over the irreducible factors of f mod p.
``jk_bound`` writes f = prod phi_i**e_i + p**l N and evaluates the u_i
formula of Jakhar and Khanduja.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, gcd
from typing import Iterable, Sequence

from . import gf
from .arith import is_prime, padic_valuation, primes_up_to
from .poly import IntegerPolynomial, irreducible_mod_p_witness, phi_expand
from .stirling import stirling_family_polynomial

__all__ = [
    "NewtonPolygon",
    "phi_newton_polygon",
    "phi_index",
    "lower_hull",
    "OreFactor",
    "JKFactor",
    "IndexBoundReport",
    "DegenerateInputError",
    "ore_bound",
    "jk_bound",
    "NonMonogenicityReport",
    "certify_non_monogenic",
    "DEFAULT_WITNESS_PRIMES",
]

Point = tuple[int, int]

DEFAULT_WITNESS_PRIMES = primes_up_to(2000)
REPORT_SCHEMA_VERSION = "1"


class DegenerateInputError(ValueError):
    """f equals prod phi_i**e_i exactly, so no p**l N term exists."""


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points: Iterable[Point]) -> list[Point]:
    """Lower convex hull by monotone chain; collinear points are dropped."""
    pts = sorted(set(points))
    hull: list[Point] = []
    for pt in pts:
        # for equal abscissae only the lowest point survives
        if hull and hull[-1][0] == pt[0]:
            continue
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    return hull


@dataclass(frozen=True)
class NewtonPolygon:
    points: tuple[Point, ...]
    vertices: tuple[Point, ...]
    p: int
    phi_degree: int = 1

    @property
    def slopes(self) -> list[Fraction]:
        v = self.vertices
        return [Fraction(b[1] - a[1], b[0] - a[0]) for a, b in zip(v, v[1:])]

    def height(self, x: int | Fraction) -> Fraction | None:
        """Ordinate of the polygon above x, or None outside its abscissa range."""
        v = self.vertices
        if not v or x < v[0][0] or x > v[-1][0]:
            return None
        for a, b in zip(v, v[1:]):
            if a[0] <= x <= b[0]:
                return Fraction(a[1]) + Fraction(b[1] - a[1], b[0] - a[0]) * (x - a[0])
        return Fraction(v[0][1])

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "phi_degree": self.phi_degree,
            "points": [list(pt) for pt in self.points],
            "vertices": [list(pt) for pt in self.vertices],
            "slopes": [str(s) for s in self.slopes],
        }


def _gauss_valuation(a: IntegerPolynomial, p: int) -> int:
    return min(padic_valuation(c, p) for c in a.coeffs if c)


def phi_newton_polygon(f: IntegerPolynomial, phi: IntegerPolynomial, p: int) -> NewtonPolygon:
    if f.is_zero():
        raise ValueError("Newton polygon of the zero polynomial")
    digits = phi_expand(f, phi)
    points = tuple((i, _gauss_valuation(a, p)) for i, a in enumerate(digits) if not a.is_zero())
    return NewtonPolygon(points, tuple(lower_hull(points)), p, phi.degree)


def phi_index(polygon: NewtonPolygon) -> int:
    """deg(phi) times the lattice points (x >= 1, y >= 1) on or below the polygon."""
    v = polygon.vertices
    if not v:
        return 0
    count = 0
    for x in range(max(1, v[0][0]), v[-1][0] + 1):
        h = polygon.height(x)
        if h is not None and h >= 1:
            count += floor(h)
    return polygon.phi_degree * count


@dataclass(frozen=True)
class OreFactor:
    phi: IntegerPolynomial
    multiplicity: int
    polygon: NewtonPolygon
    index: int

    def to_json(self) -> dict:
        return {
            "phi": self.phi.to_json(),
            "multiplicity": self.multiplicity,
            "polygon": self.polygon.to_json(),
            "ind_phi": self.index,
        }


@dataclass(frozen=True)
class JKFactor:
    phi: IntegerPolynomial
    e: int
    l: int
    t: int
    u: int
    branch: str  # "first" when t > e/(l+1), else "second"
    first_branch_value: int
    second_branch_value: int

    @property
    def at_threshold(self) -> bool:
        return Fraction(self.t) == Fraction(self.e, self.l + 1)

    @property
    def branches_disagree(self) -> bool:
        return self.first_branch_value != self.second_branch_value

    def to_json(self) -> dict:
        return {
            "phi": self.phi.to_json(),
            "e": self.e,
            "l": self.l,
            "t": self.t,
            "u": self.u,
            "branch": self.branch,
            "first_branch_value": self.first_branch_value,
            "second_branch_value": self.second_branch_value,
            "at_threshold": self.at_threshold,
            "threshold_flag": self.at_threshold and self.branches_disagree,
        }


@dataclass(frozen=True)
class IndexBoundReport:
    p: int
    method: str
    factor_data: tuple
    total_lower_bound: int
    irreducibility_witness: int | None = None
    N: IntegerPolynomial | None = None

    @property
    def verdict(self) -> str:
        if self.total_lower_bound >= 1 and self.irreducibility_witness is not None:
            return "non-monogenic"
        return "inconclusive"

    def to_json(self) -> dict:
        out = {
            "p": self.p,
            "method": self.method,
            "factor_data": [fd.to_json() for fd in self.factor_data],
            "total_lower_bound": self.total_lower_bound,
            "irreducibility_witness": self.irreducibility_witness,
            "verdict": self.verdict,
        }
        if self.N is not None:
            out["N"] = self.N.to_json()
        return out


def _residual_factors(f: IntegerPolynomial, p: int) -> list[tuple[IntegerPolynomial, int]]:
    if not f.is_monic():
        raise ValueError("f must be monic")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return [(IntegerPolynomial(g), e) for g, e in gf.factor(list(f.coeffs), p)]


def ore_bound(f: IntegerPolynomial, p: int, witness: int | None = None) -> IndexBoundReport:
    data = []
    for phi, e in _residual_factors(f, p):
        polygon = phi_newton_polygon(f, phi, p)
        data.append(OreFactor(phi, e, polygon, phi_index(polygon)))
    return IndexBoundReport(p, "ore", tuple(data), sum(d.index for d in data), witness)


def _u_branches(e: int, l: int, t: int) -> tuple[int, int]:
    first, r1 = divmod((e - 1) * l + gcd(e, l + 1) - 1, 2)
    second_half, r2 = divmod((e - 1) * (l - 1) + gcd(e, l) - 1, 2)
    if r1 or r2:
        raise ArithmeticError(f"u formula not integral for e={e}, l={l}")
    return first, max(l * t, second_half)


def jk_bound(f: IntegerPolynomial, p: int, witness: int | None = None) -> IndexBoundReport:
    factors = _residual_factors(f, p)
    lifted = IntegerPolynomial([1])
    for phi, e in factors:
        lifted = lifted * phi**e
    diff = f - lifted
    if diff.is_zero():
        raise DegenerateInputError("f is exactly the product of its residual factor lifts")
    l = _gauss_valuation(diff, p)
    N = diff.exact_div(p**l)
    n_bar = gf.norm(list(N.coeffs), p)
    data = []
    for phi, e in factors:
        t = gf.multiplicity(n_bar, list(phi.coeffs), p)
        first, second = _u_branches(e, l, t)
        if Fraction(t) > Fraction(e, l + 1):
            u, branch = first, "first"
        else:
            u, branch = second, "second"
        data.append(JKFactor(phi, e, l, t, u, branch, first, second))
    total = sum(d.u * d.phi.degree for d in data)
    return IndexBoundReport(p, "jakhar-khanduja", tuple(data), total, witness, N)


@dataclass(frozen=True)
class NonMonogenicityReport:
    p: int
    s: int
    f: IntegerPolynomial
    witness: int | None
    ore: IndexBoundReport
    jk: IndexBoundReport
    expected_vertices: tuple[Point, ...]
    vertices_match: bool
    unit_point_below: bool
    notes: tuple[str, ...] = field(default_factory=tuple)
    witness_prime_bound: int = 0

    @property
    def verdict(self) -> str:
        ok = (
            self.witness is not None
            and min(self.ore.total_lower_bound, self.jk.total_lower_bound) >= 1
        )
        return "non-monogenic" if ok else "inconclusive"

    def to_json(self) -> dict:
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "kind": "non-monogenicity-report",
            "witness_prime_bound": self.witness_prime_bound,
            "p": self.p,
            "s": self.s,
            "f": self.f.to_json(),
            "irreducibility_witness": self.witness,
            "ore": self.ore.to_json(),
            "jk": self.jk.to_json(),
            "expected_vertices": [list(v) for v in self.expected_vertices],
            "vertices_match": self.vertices_match,
            "unit_point_below": self.unit_point_below,
            "notes": list(self.notes),
            "verdict": self.verdict,
        }


def expected_vertices(p: int, s: int) -> tuple[Point, ...]:
    if s <= 4:
        return ((0, s), (3, 1), (p, 0))
    return ((0, s), (2, 2), (3, 1), (p, 0))


def certify_non_monogenic(
    p: int, s: int, witness_primes: Sequence[int] = DEFAULT_WITNESS_PRIMES
) -> NonMonogenicityReport:
    """Both index bounds for x(x+1)...(x+p-1) - (p-1)! x + p**s at p."""
    f = stirling_family_polynomial(p, s)
    witness = irreducible_mod_p_witness(f, witness_primes)
    ore = ore_bound(f, p, witness)
    jk = jk_bound(f, p, witness)
    polygon = ore.factor_data[0].polygon if len(ore.factor_data) == 1 else None
    exp = expected_vertices(p, s)
    vertices_match = polygon is not None and polygon.vertices == exp
    h1 = polygon.height(1) if polygon is not None else None
    notes = [
        "(x)_p read as the rising factorial x(x+1)...(x+p-1)",
        "N defined by f = prod phi_i^e_i + p^l N",
    ]
    if witness is None:
        notes.append("no irreducibility witness among the configured primes")
    return NonMonogenicityReport(
        p, s, f, witness, ore, jk, exp, vertices_match, h1 is not None and h1 > 1, tuple(notes),
        max(witness_primes, default=0),
    )
