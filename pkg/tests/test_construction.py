import random
from fractions import Fraction
from math import factorial, gcd, prod

import pytest
import sympy

from monogenic.arith import Effort, padic_valuation
from monogenic.construction import (
    ConstructionParams,
    InvalidParametersError,
    assemble_F,
    build_construction,
    build_f_product,
    certify_monogenic,
    compute_cd,
    count_unit_roots_mod_square,
    density_constant,
    discriminant_identity_check,
    factor_values,
    local_solubility_witness,
    minimal_m,
    search_admissible_prime,
    solubility_case,
    validate_params,
)
from monogenic.poly import IntegerPolynomial as P
from monogenic.resultants import discriminant

# q = 7 grid: (q0, q1, d, m, q2)
GRID7 = [(3, 5, d, minimal_m(7, d), q2) for d in (1, 2) for q2 in (13, 41)]


def params(q0, q1, d, m, q2, p=None):
    return validate_params(q0, q1, None, d, m, q2, p)


class TestValidation:
    def test_valid_examples(self):
        assert params(3, 5, 2, 11, 13) == ConstructionParams(3, 5, 7, 2, 11, 13)
        assert params(3, 5, 1, 1, 13).q == 7

    def test_missing_required_prime(self):
        with pytest.raises(InvalidParametersError) as err:
            params(3, 5, 2, 5, 13)
        assert [v.condition for v in err.value.violations] == ["r|m"]
        assert "11 ∤ m" in str(err.value)

    def test_collects_every_violation(self):
        with pytest.raises(InvalidParametersError) as err:
            validate_params(5, 3, 9, 0, 4, 10, 4)
        conditions = {v.condition for v in err.value.violations}
        assert {"q0<q1", "q=q0+q1-1", "q-prime", "d>=1", "m-squarefree", "q2-prime", "p-prime"} <= conditions

    @pytest.mark.parametrize("kw", [dict(m=77), dict(q2=11), dict(p=11), dict(p=7)])
    def test_individual_rejections(self, kw):
        base = dict(q0=3, q1=5, q=None, d=2, m=11, q2=13, p=None)
        base.update(kw)
        with pytest.raises(InvalidParametersError):
            validate_params(**base)

    def test_minimal_m(self):
        assert minimal_m(7, 1) == 1 and minimal_m(7, 2) == 11
        assert minimal_m(11, 2) == 13 * 17 * 19 and minimal_m(13, 2) == 17 * 19 * 23

    def test_json_roundtrip(self):
        p = params(3, 5, 2, 11, 13, 19)
        assert ConstructionParams.from_json(p.to_json()) == p
        assert p.to_json()["p"] == "19" and p.base.p is None


class TestConstruction:
    @pytest.mark.parametrize("g", GRID7)
    def test_polynomials(self, g):
        prm = params(*g)
        cons = build_construction(prm)
        t = prm.m * factorial(prm.q - 1)
        assert cons.a == prod((P([i * prm.q2 * t, 1]) for i in range(1, prm.q0)), start=P([1]))
        assert cons.b == prod((P([j * t, 1]) for j in range(1, prm.q1)), start=P([1]))
        assert cons.F0.derivative() == cons.G and cons.F0[0] == 0
        assert cons.F0.is_monic() and cons.F0.degree == prm.q

    @pytest.mark.parametrize("g", GRID7)
    def test_cd_invariants(self, g):
        prm = params(*g)
        F0 = build_construction(prm).F0
        cd = compute_cd(prm, F0)
        t, q = prm.t, prm.q
        C = [Fraction(F0(-i * prm.q2 * t), prm.m) for i in range(1, prm.q0)]
        D = [Fraction(F0(-j * t), prm.m) for j in range(1, prm.q1)]
        assert list(cd.C) == C and list(cd.D) == D
        assert all(c.denominator == 1 for c in C + D)
        assert all((c - i * prm.q2) % q == 0 for i, c in enumerate(cd.C, 1))
        assert all((v - j) % q == 0 for j, v in enumerate(cd.D, 1))
        assert len(set(cd.C + cd.D)) == len(cd.C + cd.D)
        assert all(v % prm.m == 0 for v in cd.C + cd.D)

    def test_example_polynomial(self):
        prm = params(3, 5, 2, 11, 13, 19)
        F = assemble_F(prm, build_construction(prm).F0)
        assert F[6] == 452760 and F[0] == 7 * 11 * 19**2 and F.degree == 7
        assert F.is_eisenstein(7) and F.is_eisenstein(11)

    def test_identity_small(self):
        prm = params(3, 5, 1, 1, 13, 11)
        F0 = build_construction(prm).F0
        cd = compute_cd(prm, F0)
        check = discriminant_identity_check(prm, assemble_F(prm, F0), cd)
        assert check.equal and check.lhs == abs(discriminant(assemble_F(prm, F0)))

    @pytest.mark.parametrize("g", GRID7)
    def test_f_product(self, g):
        prm = params(*g)
        cd = compute_cd(prm, build_construction(prm).F0)
        fp = build_f_product(prm, cd)
        assert fp.f.degree == prm.d * (prm.q0 + prm.q1 - 2)
        for h, c in zip(fp.h + fp.k, cd.C + cd.D):
            assert h == P.monomial(prm.d, prm.q) + c
            assert h.reciprocal().is_eisenstein(prm.q)
        for p in (2, 3, 17):
            assert fp.f(p) == prod(prm.q * p**prm.d + v for v in cd.C + cd.D)


class TestLocalConditions:
    def test_cases(self):
        assert [solubility_case(r, 7, 2) for r in (2, 5, 7, 11, 13, 17)] == [1, 1, 2, 3, 3, 4]

    @pytest.mark.parametrize("g", GRID7)
    def test_witnesses(self, g):
        prm = params(*g)
        f = build_f_product(prm, compute_cd(prm, build_construction(prm).F0)).f
        for r in sympy.primerange(2, 40):
            w = local_solubility_witness(f, r, prm.q, prm.d)
            assert w.z % r and f(w.z) % (r * r)
            assert all(f(z) % (r * r) == 0 for z in range(1, w.z) if z % r)
            if w.case < 4:
                assert w.predicted_ok

    def test_unit_roots_match_scan(self):
        rng = random.Random(3)
        for _ in range(60):
            f = P([rng.randrange(-50, 50) for _ in range(rng.randrange(2, 6))] + [1])
            r = rng.choice([2, 3, 5, 7, 11])
            mod = r * r
            brute = sum(1 for z in range(1, mod) if z % r and f(z) % mod == 0)
            assert count_unit_roots_mod_square(f, r) == brute

    def test_unit_roots_hensel(self):
        # for r not dividing disc f, every simple root mod r lifts uniquely to r^2
        rng = random.Random(4)
        checked = 0
        while checked < 40:
            f = P([rng.randrange(-30, 30) for _ in range(3)] + [1])
            r = rng.choice([5, 7, 11, 13, 17])
            disc = discriminant(f)
            if disc == 0 or disc % r == 0:
                continue
            roots = sum(1 for z in range(1, r) if f(z) % r == 0)
            assert count_unit_roots_mod_square(f, r) == roots
            checked += 1

    def test_density_zero_factor(self):
        dc = density_constant(P([-1, 0, 1]), 2)
        assert dc.rho == ((2, 2),) and dc.product == 0 and dc.zero_factor_primes == (2,)

    def test_density_partial_products(self):
        prm = params(3, 5, 2, 11, 13)
        f = build_f_product(prm, compute_cd(prm, build_construction(prm).F0)).f
        dc = density_constant(f, 100)
        partial, running = [], Fraction(1)
        for r, rho in dc.rho:
            running *= 1 - Fraction(rho, r * (r - 1))
            partial.append(running)
        assert running == dc.product and dc.zero_factor_primes == ()
        assert all(0 < x <= 1 for x in partial)
        assert all(a >= b for a, b in zip(partial, partial[1:]))


class TestSearch:
    def test_small_example(self):
        prm = params(3, 5, 1, 1, 13)
        hits = search_admissible_prime(prm, 100)
        assert hits and hits[0].squarefree_status.certified

    def test_hits_are_exactly_admissible(self):
        prm = params(3, 5, 2, 11, 13)
        cd = compute_cd(prm, build_construction(prm).F0)
        hits = {h.p for h in search_admissible_prime(prm, 31)}
        for p in sympy.primerange(prm.m + 1, 32):
            values = [prm.q * p**prm.d + v for v in cd.C + cd.D]
            exponents = {}
            for v in values:
                for r, e in sympy.factorint(abs(v)).items():
                    exponents[r] = exponents.get(r, 0) + e
            ok = all(gcd(prm.q * prm.m, v) == 1 for v in values) and max(exponents.values()) == 1
            assert (p in hits) == ok, p
        assert min(hits) == 19

    def test_factor_values_early_exit(self):
        fi, square = factor_values([6, 10], Effort(100, 10))
        assert fi is None and square
        fi, square = factor_values([6, 35], Effort(100, 10))
        assert fi.value == 210 and not square


class TestCertify:
    def test_small_family_member(self):
        cert = certify_monogenic(params(3, 5, 1, 1, 13, 17))
        assert cert.verdict == "monogenic" and cert.failing_link is None

    def test_example(self):
        prm = params(3, 5, 2, 11, 13, 19)
        cert = certify_monogenic(prm)
        assert cert.verdict == "monogenic"
        assert cert.delta.factors[7] == 7 and cert.delta.factors[11] == 6
        F = assemble_F(prm, build_construction(prm).F0)
        disc = discriminant(F)
        assert cert.delta.value == disc
        assert padic_valuation(disc, 7) == 7 and padic_valuation(disc, 11) == 6
        assert [link.name for link in cert.links] == [
            "antiderivative-integrality", "shift-congruences", "eisenstein", "discriminant-identity",
            "coprimality", "variable-part-squarefree", "index-bounds",
        ]

    def test_tiny_effort_is_inconclusive(self):
        cert = certify_monogenic(params(3, 5, 2, 11, 13, 19), Effort(trial_bound=10, rho_iterations=1))
        assert cert.verdict == "inconclusive"
        assert cert.failing_link == "variable-part-squarefree"
        assert str(cert.squarefree_status) == "true-up-to-bound(10)"

    def test_non_admissible_p_is_inconclusive(self):
        cert = certify_monogenic(params(3, 5, 2, 11, 13, 17))
        assert cert.verdict == "inconclusive" and cert.failing_link is not None

    def test_json_integers_are_strings(self):
        data = certify_monogenic(params(3, 5, 1, 1, 13, 17)).to_json()
        assert data["schema_version"] == "1" and data["kind"] == "monogenicity-certificate"
        assert all(isinstance(c, str) for c in data["F"])
