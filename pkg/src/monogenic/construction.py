"""Monogenic prime-degree polynomials with non-squarefree discriminant.

Given primes q0 < q1 with q = q0 + q1 - 1 prime, an integer d >= 1, a
squarefree m and a prime q2 = -1 (mod q), set t = m * (q-1)! and

    a(x) = prod_{i<q0} (x + i*q2*t),   b(x) = prod_{j<q1} (x + j*t),
    G = q*a*b,   F0 = integral_0^x G,   F = F0 + q*m*p**d.

This module builds those polynomials, checks every intermediate claim with
exact arithmetic, searches for primes p that make F(x) monogenic, and emits a
certificate recording the evidence.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial, gcd, prod

import numpy as np

from .arith import (
    DEFAULT_EFFORT,
    Effort,
    FactoredInteger,
    SquarefreeStatus,
    _split,
    _trial_divide,
    factorize,
    is_prime,
    primes_up_to,
    squarefree_status,
)
from .poly import IntegerPolynomial, NonIntegralCoefficientError, linear_product
from .resultants import discriminant

__all__ = [
    "SCHEMA_VERSION",
    "ConstructionParams",
    "Violation",
    "InvalidParametersError",
    "ConstructionError",
    "NoWitnessError",
    "validate_params",
    "minimal_m",
    "Construction",
    "build_construction",
    "CDValues",
    "compute_cd",
    "assemble_F",
    "IdentityCheck",
    "discriminant_identity_check",
    "FProduct",
    "build_f_product",
    "SolubilityWitness",
    "local_solubility_witness",
    "DensityConstant",
    "density_constant",
    "AdmissiblePrime",
    "search_admissible_prime",
    "MonogenicityCertificate",
    "certify_monogenic",
]

SCHEMA_VERSION = "1"


# ---------------------------------------------------------------------------
# parameters


@dataclass(frozen=True)
class ConstructionParams:
    q0: int
    q1: int
    q: int
    d: int
    m: int
    q2: int
    p: int | None = None

    @property
    def base(self) -> "ConstructionParams":
        return replace(self, p=None)

    @property
    def t(self) -> int:
        return self.m * factorial(self.q - 1)

    def m_primes(self) -> list[int]:
        return sorted(factorize(self.m).factors) if self.m > 1 else []

    def to_json(self) -> dict:
        out = {k: str(v) for k, v in (
            ("q0", self.q0), ("q1", self.q1), ("q", self.q), ("d", self.d),
            ("m", self.m), ("q2", self.q2),
        )}
        out["p"] = None if self.p is None else str(self.p)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "ConstructionParams":
        p = data.get("p")
        return cls(
            int(data["q0"]), int(data["q1"]), int(data["q"]), int(data["d"]),
            int(data["m"]), int(data["q2"]), None if p is None else int(p),
        )


@dataclass(frozen=True)
class Violation:
    condition: str
    message: str

    def to_json(self) -> dict:
        return {"condition": self.condition, "message": self.message}


class InvalidParametersError(ValueError):
    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(v.message for v in violations))


class ConstructionError(ArithmeticError):
    """An identity the construction guarantees failed to hold."""

    def __init__(self, link: str, message: str):
        self.link = link
        super().__init__(f"{link}: {message}")


class NoWitnessError(ArithmeticError):
    pass


def _required_primes(q: int, d: int) -> list[int]:
    # primes r with q < r < d(q-1) + 1
    upper = d * (q - 1) + 1
    return [r for r in primes_up_to(upper) if q < r < upper]


def minimal_m(q: int, d: int) -> int:
    """Smallest admissible m: the product of the primes strictly between q and d(q-1)+1."""
    return prod(_required_primes(q, d))


def validate_params(
    q0: int, q1: int, q: int | None, d: int, m: int, q2: int, p: int | None = None
) -> ConstructionParams:
    """Check every hypothesis; raise InvalidParametersError listing all failures."""
    bad: list[Violation] = []

    def fail(condition: str, message: str) -> None:
        bad.append(Violation(condition, message))

    if q is None:
        q = q0 + q1 - 1
    for name, val in (("q0", q0), ("q1", q1)):
        if not is_prime(val):
            fail(f"{name}-prime", f"{name} = {val} is not prime")
    if not q0 < q1:
        fail("q0<q1", f"q0 = {q0} is not less than q1 = {q1}")
    if q != q0 + q1 - 1:
        fail("q=q0+q1-1", f"q = {q} differs from q0 + q1 - 1 = {q0 + q1 - 1}")
    if q < 3 or not is_prime(q):
        fail("q-prime", f"q = {q} is not a prime >= 3")
    if d < 1:
        fail("d>=1", f"d = {d} must be at least 1")
    if m < 1:
        fail("m>=1", f"m = {m} must be at least 1")
    else:
        fm = factorize(m)
        for r, e in fm.factors.items():
            if e > 1:
                fail("m-squarefree", f"m = {m} is not squarefree ({r}^2 | m)")
        if q >= 2 and m % q == 0:
            fail("q∤m", f"{q} | m")
        if d >= 1 and q >= 3:
            for r in _required_primes(q, d):
                if m % r:
                    fail("r|m", f"{r} ∤ m (every prime {q} < r < {d * (q - 1) + 1} must divide m)")
    if not is_prime(q2):
        fail("q2-prime", f"q2 = {q2} is not prime")
    if q >= 2 and (q2 + 1) % q:
        fail("q2≡-1", f"q2 = {q2} is not -1 mod {q}")
    if p is not None:
        if not is_prime(p):
            fail("p-prime", f"p = {p} is not prime")
        if p <= m:
            fail("p>m", f"p = {p} is not greater than m = {m}")
        if p == q:
            fail("p≠q", f"p equals q = {q}")
    if bad:
        raise InvalidParametersError(bad)
    return ConstructionParams(q0, q1, q, d, m, q2, p)


# ---------------------------------------------------------------------------
# construction


@dataclass(frozen=True)
class Construction:
    params: ConstructionParams
    a: IntegerPolynomial
    b: IntegerPolynomial
    G: IntegerPolynomial
    F0: IntegerPolynomial

    @property
    def a_shifts(self) -> list[int]:
        return [i * self.params.q2 * self.params.t for i in range(1, self.params.q0)]

    @property
    def b_shifts(self) -> list[int]:
        return [j * self.params.t for j in range(1, self.params.q1)]


@lru_cache(maxsize=64)
def _build(params: ConstructionParams) -> Construction:
    t = params.t
    a = linear_product([i * params.q2 * t for i in range(1, params.q0)])
    b = linear_product([j * t for j in range(1, params.q1)])
    G = a * b * params.q
    try:
        F0 = G.antiderivative_from_zero()
    except NonIntegralCoefficientError as exc:
        raise ConstructionError("antiderivative-integrality", str(exc)) from exc
    if F0.degree != params.q or not F0.is_monic():
        raise ConstructionError("antiderivative-integrality", "F0 is not monic of degree q")
    return Construction(params, a, b, G, F0)


def build_construction(params: ConstructionParams) -> Construction:
    """a, b, G = q*a*b and F0 = integral of G from 0 (integer coefficients)."""
    return _build(params.base)


@dataclass(frozen=True)
class CDValues:
    C: tuple[int, ...]
    D: tuple[int, ...]

    def to_json(self) -> dict:
        return {"C": [str(c) for c in self.C], "D": [str(d) for d in self.D]}


def compute_cd(params: ConstructionParams, F0: IntegerPolynomial) -> CDValues:
    """C_i = F0(-i q2 t)/m and D_j = F0(-j t)/m, with all invariants asserted."""
    q, m, t = params.q, params.m, params.t

    def value(x: int, label: str) -> int:
        v, r = divmod(F0(-x), m)
        if r:
            raise ConstructionError("shift-congruences", f"m does not divide F0(-{x}) for {label}")
        return v

    C = tuple(value(i * params.q2 * t, f"C_{i}") for i in range(1, params.q0))
    D = tuple(value(j * t, f"D_{j}") for j in range(1, params.q1))
    for i, c in enumerate(C, 1):
        if (c - i * params.q2) % q:
            raise ConstructionError("shift-congruences", f"C_{i} is not i*q2 mod q")
    for j, dj in enumerate(D, 1):
        if (dj - j) % q:
            raise ConstructionError("shift-congruences", f"D_{j} is not j mod q")
    if len(set(C)) != len(C) or len(set(D)) != len(D) or set(C) & set(D):
        raise ConstructionError("shift-congruences", "C and D values are not pairwise distinct")
    if any(v % m for v in C + D):
        raise ConstructionError("shift-congruences", "some C_i or D_j is not divisible by m")
    return CDValues(C, D)


def assemble_F(params: ConstructionParams, F0: IntegerPolynomial) -> IntegerPolynomial:
    if params.p is None:
        raise ValueError("p is required to assemble F")
    F = F0 + params.q * params.m * params.p**params.d
    for r in [params.q, *params.m_primes()]:
        if not F.is_eisenstein(r):
            raise ConstructionError("eisenstein", f"F is not {r}-Eisenstein")
    return F


@dataclass(frozen=True)
class IdentityCheck:
    lhs: int
    rhs: int
    discriminant: int

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def discriminant_identity_check(
    params: ConstructionParams, F: IntegerPolynomial, cd: CDValues
) -> IdentityCheck:
    """|disc F| from the resultant versus q^q m^(q-1) prod|q p^d + C_i| prod|q p^d + D_j|."""
    if params.p is None:
        raise ValueError("p is required")
    disc = discriminant(F)
    qpd = params.q * params.p**params.d
    rhs = params.q**params.q * params.m ** (params.q - 1)
    for v in cd.C + cd.D:
        rhs *= abs(qpd + v)
    check = IdentityCheck(abs(disc), rhs, disc)
    if not check.equal:
        raise ConstructionError("discriminant-identity", "resultant and closed form differ")
    return check


@dataclass(frozen=True)
class FProduct:
    f: IntegerPolynomial
    h: tuple[IntegerPolynomial, ...]
    k: tuple[IntegerPolynomial, ...]


def build_f_product(params: ConstructionParams, cd: CDValues) -> FProduct:
    """f = prod (q x^d + C_i) * prod (q x^d + D_j)."""
    q, d = params.q, params.d

    def factor(c: int) -> IntegerPolynomial:
        return IntegerPolynomial.monomial(d, q) + c

    h = tuple(factor(c) for c in cd.C)
    k = tuple(factor(v) for v in cd.D)
    if len(set(h + k)) != len(h + k):
        raise ConstructionError("shift-congruences", "repeated factor in f")
    for g in h + k:
        if not g.reciprocal().is_eisenstein(q):
            raise ConstructionError("reciprocal-eisenstein", f"reciprocal of {g} is not {q}-Eisenstein")
    f = IntegerPolynomial([1])
    for g in h + k:
        f = f * g
    return FProduct(f, h, k)


# ---------------------------------------------------------------------------
# local conditions and density


@dataclass(frozen=True)
class SolubilityWitness:
    r: int
    z: int
    case: int
    predicted_z: int | None
    predicted_ok: bool | None

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "z": self.z,
            "case": self.case,
            "predicted_z": self.predicted_z,
            "predicted_ok": self.predicted_ok,
        }


def solubility_case(r: int, q: int, d: int) -> int:
    if r < q:
        return 1
    if r == q:
        return 2
    if r <= d * (q - 1) + 1:
        return 3
    return 4


def local_solubility_witness(f: IntegerPolynomial, r: int, q: int, d: int) -> SolubilityWitness:
    """Smallest z coprime to r with f(z) != 0 mod r^2, found by scanning z = 1, 2, ..."""
    mod = r * r
    reduced = f.reduce_mod(mod)
    z = next(
        (z for z in range(1, mod) if z % r and reduced.evaluate(z, mod) != 0),
        None,
    )
    if z is None:
        raise NoWitnessError(f"f vanishes mod {r}^2 on every unit")
    case = solubility_case(r, q, d)
    predicted = 1 if case in (1, 2, 3) else None
    predicted_ok = None if predicted is None else reduced.evaluate(predicted, mod) != 0
    return SolubilityWitness(r, z, case, predicted, predicted_ok)


@dataclass(frozen=True)
class DensityConstant:
    prime_bound: int
    product: Fraction
    rho: tuple[tuple[int, int], ...]
    zero_factor_primes: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "prime_bound": self.prime_bound,
            "product": f"{self.product.numerator}/{self.product.denominator}",
            "rho": {str(r): n for r, n in self.rho},
            "zero_factor_primes": list(self.zero_factor_primes),
        }


def count_unit_roots_mod_square(f: IntegerPolynomial, r: int) -> int:
    """#{z in (Z/r^2)* : f(z) = 0 mod r^2} by exhaustive scan."""
    mod = r * r
    coeffs = [c % mod for c in f.coeffs]
    if not coeffs:
        return r * (r - 1)
    if mod < 3 * 10**9:
        z = np.arange(1, mod, dtype=np.int64)
        z = z[z % r != 0]
        acc = np.zeros_like(z)
        for c in reversed(coeffs):
            acc = (acc * z + c) % mod
        return int(np.count_nonzero(acc == 0))
    return sum(
        1 for z in range(1, mod) if z % r and IntegerPolynomial(coeffs).evaluate(z, mod) == 0
    )


def density_constant(f: IntegerPolynomial, prime_bound: int) -> DensityConstant:
    """prod over primes r <= bound of (1 - rho(r^2) / (r(r-1)))."""
    if prime_bound < 2:
        raise ValueError("prime_bound must be at least 2")
    product = Fraction(1)
    table = []
    zeros = []
    for r in primes_up_to(prime_bound):
        rho = count_unit_roots_mod_square(f, r)
        table.append((r, rho))
        if rho == r * (r - 1):
            zeros.append(r)
        product *= 1 - Fraction(rho, r * (r - 1))
    return DensityConstant(prime_bound, product, tuple(table), tuple(zeros))


# ---------------------------------------------------------------------------
# admissible primes


@dataclass(frozen=True)
class AdmissiblePrime:
    p: int
    squarefree_status: SquarefreeStatus
    coprimality_ok: bool
    f_value: FactoredInteger

    def to_json(self) -> dict:
        return {
            "p": str(self.p),
            "squarefree_status": str(self.squarefree_status),
            "coprimality_ok": self.coprimality_ok,
            "f_value": self.f_value.to_json(),
        }


def factor_values(values: list[int], effort: Effort) -> tuple[FactoredInteger | None, bool]:
    """Factor the product of ``values``, stopping early once a square divisor is proven.

    Returns (factorization or None, proven_not_squarefree).
    """
    sign = 1
    merged: dict[int, int] = {}
    rests = []
    for v in values:
        if v == 0:
            return None, True
        sign *= 1 if v > 0 else -1
        fs, rest = _trial_divide(abs(v), effort.trial_bound)
        for r, e in fs.items():
            merged[r] = merged.get(r, 0) + e
            if merged[r] > 1:
                return None, True
        rests.append(rest)
    for x, y in combinations(rests, 2):
        if gcd(x, y) > 1:
            return None, True
    leftover: list[int] = []
    for rest in rests:
        _split(rest, [effort.rho_iterations], merged, leftover)
    fi = FactoredInteger(sign, merged, prod(leftover), effort.trial_bound)
    return fi, not squarefree_status(fi).squarefree


def _f_values(params: ConstructionParams, cd: CDValues, p: int) -> list[int]:
    qpd = params.q * p**params.d
    return [qpd + v for v in cd.C + cd.D]


def search_admissible_prime(
    params: ConstructionParams,
    search_limit: int,
    effort: Effort = DEFAULT_EFFORT,
    max_results: int | None = None,
    start: int | None = None,
) -> list[AdmissiblePrime]:
    """Primes m < p <= search_limit, p != q, with f(p) squarefree and coprime to q*m.

    Squarefreeness may be certified or only up to the effort's trial bound.
    """
    base = params.base
    cons = build_construction(base)
    cd = compute_cd(base, cons.F0)
    qm = base.q * base.m
    lo = max(base.m + 1, start or 0)
    out: list[AdmissiblePrime] = []
    for p in primes_up_to(search_limit):
        if p < lo or p == base.q:
            continue
        values = _f_values(base, cd, p)
        if any(gcd(qm, v) != 1 for v in values):
            continue
        fi, square = factor_values(values, effort)
        if square or fi is None:
            continue
        out.append(AdmissiblePrime(p, squarefree_status(fi), True, fi))
        if max_results is not None and len(out) >= max_results:
            break
    return out


# ---------------------------------------------------------------------------
# certificate


@dataclass(frozen=True)
class Link:
    name: str
    ok: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass(frozen=True)
class PrimeEvidence:
    """For a prime r | disc F: v_r(disc F), a lower bound on v_r(disc K), and the
    resulting upper bound floor((v_F - v_K)/2) on v_r of the index."""

    r: int
    disc_valuation: int
    field_disc_lower_bound: int
    index_valuation_upper_bound: int
    reason: str

    def to_json(self) -> dict:
        return {
            "r": str(self.r),
            "disc_valuation": self.disc_valuation,
            "field_disc_lower_bound": self.field_disc_lower_bound,
            "index_valuation_upper_bound": self.index_valuation_upper_bound,
            "reason": self.reason,
        }


@dataclass(frozen=True)
class MonogenicityCertificate:
    params: ConstructionParams
    F: IntegerPolynomial | None
    delta: FactoredInteger | None
    forced_part: FactoredInteger | None
    variable_part: FactoredInteger | None
    eisenstein_primes: tuple[int, ...]
    identity_checked: bool
    squarefree_status: SquarefreeStatus | None
    coprime_to_qm: bool
    evidence: tuple[PrimeEvidence, ...]
    links: tuple[Link, ...]
    notes: tuple[str, ...] = field(default_factory=tuple)
    effort: Effort = DEFAULT_EFFORT

    @property
    def verdict(self) -> str:
        needed = {self.params.q, *self.params.m_primes()}
        ok = (
            all(link.ok for link in self.links)
            and self.identity_checked
            and needed <= set(self.eisenstein_primes)
            and self.squarefree_status is not None
            and self.squarefree_status.squarefree
            and self.squarefree_status.certified
            and self.coprime_to_qm
            and bool(self.evidence)
            and all(e.index_valuation_upper_bound == 0 for e in self.evidence)
        )
        return "monogenic" if ok else "inconclusive"

    @property
    def failing_link(self) -> str | None:
        return next((link.name for link in self.links if not link.ok), None)

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "monogenicity-certificate",
            "params": self.params.to_json(),
            "F": None if self.F is None else self.F.to_json(),
            "delta": None if self.delta is None else self.delta.to_json(),
            "forced_part": None if self.forced_part is None else self.forced_part.to_json(),
            "variable_part": None if self.variable_part is None else self.variable_part.to_json(),
            "eisenstein_primes": [str(r) for r in self.eisenstein_primes],
            "identity_checked": self.identity_checked,
            "squarefree_status": None if self.squarefree_status is None else str(self.squarefree_status),
            "coprime_to_qm": self.coprime_to_qm,
            "evidence": [e.to_json() for e in self.evidence],
            "links": [link.to_json() for link in self.links],
            "notes": list(self.notes),
            "effort": {
                "trial_bound": str(self.effort.trial_bound),
                "rho_iterations": str(self.effort.rho_iterations),
            },
            "verdict": self.verdict,
            "failing_link": self.failing_link,
        }


def certify_monogenic(params: ConstructionParams, effort: Effort = DEFAULT_EFFORT) -> MonogenicityCertificate:
    """Run every link of the argument and collect the evidence.

    The verdict is "monogenic" only when every link holds and the squarefree
    part of disc F is certified; otherwise "inconclusive" naming the first
    failing link. A negative answer is never produced.
    """
    params = validate_params(
        params.q0, params.q1, params.q, params.d, params.m, params.q2, params.p
    )
    if params.p is None:
        raise ValueError("p is required")
    notes = [
        "the field discriminant lower bounds use the primes of m",
    ]
    links: list[Link] = []
    F = delta = forced = variable = None
    eisenstein: tuple[int, ...] = ()
    identity_ok = False
    status = None
    coprime = False
    evidence: list[PrimeEvidence] = []

    def result() -> MonogenicityCertificate:
        return MonogenicityCertificate(
            params, F, delta, forced, variable, eisenstein, identity_ok, status,
            coprime, tuple(evidence), tuple(links), tuple(notes), effort,
        )

    try:
        cons = build_construction(params)
        links.append(Link("antiderivative-integrality", True, "F0 has integer coefficients"))
        cd = compute_cd(params, cons.F0)
        links.append(Link("shift-congruences", True, "C_i, D_j congruences and distinctness hold"))
        F = cons.F0 + params.q * params.m * params.p**params.d
        candidates = [params.q, *params.m_primes()]
        eisenstein = tuple(r for r in candidates if F.is_eisenstein(r))
        links.append(Link(
            "eisenstein", set(candidates) <= set(eisenstein),
            f"F is Eisenstein at {', '.join(map(str, eisenstein))}",
        ))
        check = discriminant_identity_check(params, F, cd)
        identity_ok = True
        links.append(Link("discriminant-identity", True, "resultant equals closed form"))
    except ConstructionError as exc:
        links.append(Link(exc.link, False, str(exc)))
        return result()

    values = _f_values(params, cd, params.p)
    coprime = all(gcd(params.q * params.m, v) == 1 for v in values)
    links.append(Link("coprimality", coprime, "gcd(q*m, h_i(p)) = gcd(q*m, k_j(p)) = 1"))
    fi, _ = factor_values(values, effort)
    if fi is None:
        # a square divisor was already proven; a trial-only factorization suffices
        fi = factorize(prod(values), replace(effort, rho_iterations=0))
    variable = fi
    status = squarefree_status(fi)
    links.append(Link("variable-part-squarefree", status.squarefree and status.certified, str(status)))

    forced_factors = {params.q: params.q}
    for r in params.m_primes():
        forced_factors[r] = params.q - 1
    forced = FactoredInteger(1, forced_factors, 1, effort.trial_bound)
    delta_factors = dict(forced_factors)
    for r, e in fi.factors.items():
        delta_factors[r] = delta_factors.get(r, 0) + e
    delta = FactoredInteger(
        1 if check.discriminant > 0 else -1, delta_factors, fi.cofactor, fi.sf_bound
    )
    if delta.value != check.discriminant:
        links.append(Link("factorization", False, "factored discriminant does not reconstruct"))
        return result()

    for r, e in delta.factors.items():
        if r == params.q:
            lb, why = params.q, "q-Eisenstein of degree q = 0 mod q: q^q | disc K"
        elif r in forced_factors:
            lb, why = params.q - 1, f"{r}-Eisenstein of degree q with {r} ∤ q: {r}^(q-1) || disc K"
        elif e == 1:
            lb, why = 1, "exponent 1 in disc F forces the prime into disc K"
        else:
            lb, why = 0, "no lower bound available"
        evidence.append(PrimeEvidence(r, e, lb, (e - lb) // 2, why))
    if delta.cofactor != 1:
        links.append(Link("index-bounds", False, "unfactored cofactor in disc F"))
    else:
        ok = all(ev.index_valuation_upper_bound == 0 for ev in evidence)
        links.append(Link("index-bounds", ok, "every prime of disc F has index exponent 0" if ok else "index bound slack"))
    return result()
