"""Command-line interface.

Exit codes: 0 success or positive verdict, 2 hypothesis violation,
3 inconclusive, 64 usage error (including malformed polynomial literals).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .arith import FactoredInteger, factorize, is_prime, primes_up_to
from .config import ENV_VAR, ConfigError, RunConfig, load_config
from .construction import (
    ConstructionError,
    ConstructionParams,
    InvalidParametersError,
    build_construction,
    build_f_product,
    certify_monogenic,
    compute_cd,
    density_constant,
    local_solubility_witness,
    search_admissible_prime,
    solubility_case,
    validate_params,
)
from .corpus import UnknownDocumentError, load_document, non_monogenic_document, reverify
from .newton import (
    DegenerateInputError,
    certify_non_monogenic,
    jk_bound,
    ore_bound,
    phi_newton_polygon,
    phi_index,
)
from .poly import IntegerPolynomial, PolynomialParseError, irreducible_mod_p_witness, parse_polynomial
from .render import ascii_polygon, canonical_json, render_text, svg_polygon
from .resultants import discriminant
from .stirling import HypothesisError, bernoulli, stirling_table, verify_stirling_valuations

EXIT_OK = 0
EXIT_HYPOTHESIS = 2
EXIT_INCONCLUSIVE = 3
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class Hypothesis(Exception):
    """Raised by command bodies to report a violated hypothesis."""

    def __init__(self, message: str, violations: list[dict] | None = None):
        self.violations = violations or [{"condition": "hypothesis", "message": message}]
        super().__init__(message)


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class Outcome:
    payload: dict
    code: int = EXIT_OK


def _polynomial(text: str) -> IntegerPolynomial:
    try:
        return parse_polynomial(text)
    except PolynomialParseError as exc:
        raise argparse.ArgumentTypeError(
            f"malformed polynomial: {exc}"
        ) from None


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return value


def _integer(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


# ---------------------------------------------------------------------------
# shared pieces


def _params(args, with_p: bool = True) -> ConstructionParams:
    try:
        return validate_params(
            args.q0, args.q1, args.q, args.d, args.m, args.q2,
            getattr(args, "p", None) if with_p else None,
        )
    except InvalidParametersError as exc:
        raise Hypothesis(str(exc), [v.to_json() for v in exc.violations]) from None


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise Hypothesis(f"p = {p} is not prime")


def _witness_primes(config: RunConfig) -> tuple[int, ...]:
    return primes_up_to(config.witness_prime_bound)


# ---------------------------------------------------------------------------
# commands


def cmd_construct(args, config: RunConfig) -> Outcome:
    params = _params(args)
    cons = build_construction(params)
    cd = compute_cd(params, cons.F0)
    fprod = build_f_product(params, cd)
    out = {
        "params": params.to_json(),
        "t": params.t,
        "a": cons.a.to_json(),
        "b": cons.b.to_json(),
        "G": cons.G.to_json(),
        "F0": cons.F0.to_json(),
        "cd": cd.to_json(),
        "f": fprod.f.to_json(),
        "F": None,
        "F_pretty": None,
    }
    if params.p is not None:
        F = cons.F0 + params.q * params.m * params.p**params.d
        out["F"] = F.to_json()
        out["F_pretty"] = F.pretty()
        out["eisenstein_primes"] = [r for r in [params.q, *params.m_primes()] if F.is_eisenstein(r)]
    return Outcome(out)


def cmd_verify_monogenic(args, config: RunConfig) -> Outcome:
    if args.certificate:
        result = _reverify_file(args.certificate, "monogenicity-certificate")
        ok = result.matches and result.verdict == "monogenic"
        return Outcome(result.to_json(), EXIT_OK if ok else EXIT_INCONCLUSIVE)
    for name in ("q0", "q1", "d", "m", "q2"):
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required unless --certificate is given")
    params = _params(args)
    if params.p is None:
        hits = search_admissible_prime(params, config.search_limit, config.effort, max_results=1)
        if not hits:
            return Outcome(
                {"params": params.to_json(), "verdict": "inconclusive",
                 "failing_link": "search", "detail": f"no admissible p up to {config.search_limit}"},
                EXIT_INCONCLUSIVE,
            )
        params = validate_params(params.q0, params.q1, params.q, params.d, params.m, params.q2, hits[0].p)
    cert = certify_monogenic(params, config.effort)
    code = EXIT_OK if cert.verdict == "monogenic" else EXIT_INCONCLUSIVE
    return Outcome(cert.to_json(), code)


def _reverify_file(path: str, kind: str):
    try:
        document = load_document(path)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read certificate {path}: {exc}") from None
    if document.get("kind") != kind:
        raise UsageError(f"{path} holds a {document.get('kind')!r} document, expected {kind!r}")
    try:
        return reverify(document, str(path))
    except (KeyError, TypeError, UnknownDocumentError) as exc:
        raise UsageError(f"malformed certificate {path}: {exc}") from None


def cmd_non_monogenic(args, config: RunConfig) -> Outcome:
    if args.certificate:
        result = _reverify_file(args.certificate, "non-monogenicity-report")
        ok = result.matches and result.verdict == "non-monogenic"
        return Outcome(result.to_json(), EXIT_OK if ok else EXIT_INCONCLUSIVE)
    if args.p is None or args.s is None:
        raise UsageError("--p and --s are required unless --certificate is given")
    report = certify_non_monogenic(args.p, args.s, _witness_primes(config))
    return Outcome(non_monogenic_document(report), EXIT_OK if report.verdict == "non-monogenic" else EXIT_INCONCLUSIVE)


def cmd_newton(args, config: RunConfig) -> Outcome:
    _require_prime(args.p)
    if args.f.is_zero():
        raise Hypothesis("f must be nonzero")
    phi = args.phi if args.phi is not None else IntegerPolynomial([0, 1])
    if phi.degree < 1 or not phi.is_monic():
        raise Hypothesis("phi must be monic of degree >= 1")
    polygon = phi_newton_polygon(args.f, phi, args.p)
    out = {
        "f": args.f.to_json(),
        "phi": phi.to_json(),
        "polygon": polygon.to_json(),
        "phi_index": phi_index(polygon),
        "ascii": ascii_polygon(polygon),
    }
    if args.svg:
        Path(args.svg).write_text(svg_polygon(polygon))
        out["svg"] = args.svg
    return Outcome(out)


def cmd_index_bound(args, config: RunConfig) -> Outcome:
    _require_prime(args.p)
    if not args.f.is_monic() or args.f.degree < 1:
        raise Hypothesis("f must be monic of degree >= 1")
    witness = irreducible_mod_p_witness(args.f, _witness_primes(config))
    out: dict = {"f": args.f.to_json(), "p": args.p, "irreducibility_witness": witness}
    if args.method in ("ore", "both"):
        ore = ore_bound(args.f, args.p, witness)
        out["ore"] = ore.to_json()
        out["ascii"] = "".join(
            f"phi = {fd.phi.pretty()}\n" + ascii_polygon(fd.polygon) for fd in ore.factor_data
        )
        if args.svg and len(ore.factor_data) == 1:
            Path(args.svg).write_text(svg_polygon(ore.factor_data[0].polygon))
            out["svg"] = args.svg
    if args.method in ("jk", "both"):
        try:
            out["jk"] = jk_bound(args.f, args.p, witness).to_json()
        except DegenerateInputError as exc:
            raise Hypothesis(str(exc)) from None
    return Outcome(out)


def cmd_stirling(args, config: RunConfig) -> Outcome:
    if args.row is not None:
        table = stirling_table(_capped(args.row, config), cap=config.table_cap)
        return Outcome({"n": args.row, "row": table.row(args.row)})
    if args.table is not None:
        table = stirling_table(_capped(args.table, config), cap=config.table_cap)
        return Outcome({"n": args.table, "rows": [list(r) for r in table.rows]})
    _capped(args.valuations * args.a, config)
    report = verify_stirling_valuations(args.valuations, args.a)
    code = EXIT_OK if not report.mismatches else EXIT_INCONCLUSIVE
    return Outcome(report.to_json(), code)


def _capped(n: int, config: RunConfig) -> int:
    if n < 0:
        raise UsageError(f"n = {n} must be nonnegative")
    if n > config.table_cap:
        raise UsageError(f"n = {n} exceeds the table cap {config.table_cap}")
    return n


def cmd_bernoulli(args, config: RunConfig) -> Outcome:
    n = _capped(args.n, config)
    values = bernoulli(n)
    return Outcome({"n": n, "values": [f"{b.numerator}/{b.denominator}" for b in values]})


def cmd_density(args, config: RunConfig) -> Outcome:
    params = _params(args, with_p=False)
    bound = args.bound or config.density_bound
    cons = build_construction(params)
    cd = compute_cd(params, cons.F0)
    f = build_f_product(params, cd).f
    dc = density_constant(f, bound)
    witnesses = [
        local_solubility_witness(f, r, params.q, params.d).to_json()
        for r in primes_up_to(min(bound, params.d * (params.q - 1) + 1))
        if solubility_case(r, params.q, params.d) < 4
    ]
    out = dc.to_json()
    out["approx"] = f"{float(dc.product):.15g}"
    out["params"] = params.to_json()
    out["f"] = f.to_json()
    out["solubility_witnesses"] = witnesses
    return Outcome(out)


def cmd_discriminant(args, config: RunConfig) -> Outcome:
    if args.f.degree < 1:
        raise Hypothesis("discriminant needs degree >= 1")
    disc = discriminant(args.f)
    factored: FactoredInteger | None = factorize(disc, config.effort) if disc else None
    return Outcome({
        "f": args.f.to_json(),
        "discriminant": disc,
        "factored": None if factored is None else factored.to_json(),
    })


def cmd_search_primes(args, config: RunConfig) -> Outcome:
    params = _params(args, with_p=False)
    limit = args.limit or config.search_limit
    hits = search_admissible_prime(params, limit, config.effort, max_results=args.max_results, start=args.start)
    out = {"params": params.to_json(), "search_limit": limit, "admissible": [h.to_json() for h in hits]}
    return Outcome(out, EXIT_OK if hits else EXIT_INCONCLUSIVE)


# ---------------------------------------------------------------------------
# parser


def _common() -> argparse.ArgumentParser:
    common = ArgumentParser(add_help=False)
    g = common.add_argument_group("run configuration")
    g.add_argument("--config", help=f"JSON config file (default: ${ENV_VAR})")
    g.add_argument("--format", dest="output_format", choices=("json", "text"))
    g.add_argument("--trial-bound", type=_positive)
    g.add_argument("--rho-iterations", type=_positive)
    g.add_argument("--search-limit", type=_positive)
    g.add_argument("--table-cap", type=_positive)
    g.add_argument("--witness-prime-bound", type=_positive)
    return common


def _param_flags(required: bool) -> argparse.ArgumentParser:
    parent = ArgumentParser(add_help=False)
    g = parent.add_argument_group("construction parameters")
    for name, text in (
        ("q0", "smaller prime"),
        ("q1", "larger prime"),
        ("d", "exponent of p"),
        ("m", "squarefree multiplier"),
        ("q2", "prime congruent to -1 mod q"),
    ):
        g.add_argument(f"--{name}", type=_integer, required=required, help=text)
    g.add_argument("--q", type=_integer, help="prime q0 + q1 - 1 (derived when omitted)")
    return parent


COMMANDS: dict[str, Callable] = {}


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="monogenic", description="Monogenic polynomial families, certified.")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=ArgumentParser)
    sub.required = True
    common = _common()

    def add(name: str, func: Callable, help: str, parents=()) -> ArgumentParser:
        COMMANDS[name] = func
        return sub.add_parser(name, help=help, description=help, parents=[common, *parents])

    p = add("construct", cmd_construct, "build F0, the C/D values, f and (given p) F", [_param_flags(True)])
    p.add_argument("--p", type=_integer)

    p = add("verify-monogenic", cmd_verify_monogenic, "certify F monogenic or re-verify a stored certificate",
            [_param_flags(False)])
    p.add_argument("--p", type=_integer, help="defaults to the smallest admissible prime")
    p.add_argument("--certificate", help="stored certificate to re-verify")

    p = add("non-monogenic", cmd_non_monogenic, "index bounds for the Stirling-coefficient family")
    p.add_argument("--p", type=_integer)
    p.add_argument("--s", type=_integer)
    p.add_argument("--certificate", help="stored report to re-verify")

    p = add("newton", cmd_newton, "phi-Newton polygon with ASCII plot and optional SVG")
    p.add_argument("f", type=_polynomial, help='ascending coefficients, e.g. "[-5, 0, 1]"')
    p.add_argument("--p", type=_integer, required=True)
    p.add_argument("--phi", type=_polynomial, help="monic phi (default x)")
    p.add_argument("--svg", help="write the polygon as SVG to this path")

    p = add("index-bound", cmd_index_bound, "lower bounds on the p-adic valuation of the index")
    p.add_argument("f", type=_polynomial)
    p.add_argument("--p", type=_integer, required=True)
    p.add_argument("--method", choices=("ore", "jk", "both"), default="both")
    p.add_argument("--svg", help="write the polygon as SVG (single residual factor only)")

    p = add("stirling", cmd_stirling, "Stirling numbers of the first kind and their valuations")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--row", type=_integer, metavar="N")
    g.add_argument("--table", type=_integer, metavar="N")
    g.add_argument("--valuations", type=_integer, metavar="P")
    p.add_argument("--a", type=_positive, default=1)

    p = add("bernoulli", cmd_bernoulli, "Bernoulli numbers B_0..B_N as num/den")
    p.add_argument("n", type=_integer)

    p = add("density", cmd_density, "density constant of f = prod (q x^d + C_i)(q x^d + D_j)",
            [_param_flags(True)])
    p.add_argument("--bound", type=_positive, help="prime bound (default from config)")

    p = add("discriminant", cmd_discriminant, "discriminant of an integer polynomial")
    p.add_argument("f", type=_polynomial)

    p = add("search-primes", cmd_search_primes, "admissible primes p for the construction",
            [_param_flags(True)])
    p.add_argument("--limit", type=_positive, help="search bound (default from config)")
    p.add_argument("--max-results", type=_positive, default=10)
    p.add_argument("--start", type=_integer)
    return parser


def _config(args) -> RunConfig:
    base = load_config(args.config)
    return base.updated(
        output_format=args.output_format,
        trial_bound=args.trial_bound,
        rho_iterations=args.rho_iterations,
        search_limit=args.search_limit,
        table_cap=args.table_cap,
        witness_prime_bound=args.witness_prime_bound,
    )


def _emit(payload: dict, config: RunConfig | None) -> None:
    fmt = config.output_format if config is not None else "json"
    sys.stdout.write(render_text(payload) if fmt == "text" else canonical_json(payload))


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = None
    try:
        config = _config(args)
        outcome = COMMANDS[args.command](args, config)
    except (UsageError, ConfigError) as exc:
        print(f"monogenic {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (Hypothesis, HypothesisError) as exc:
        violations = getattr(exc, "violations", [{"condition": "hypothesis", "message": str(exc)}])
        _emit({"error": "hypothesis-violation", "violations": violations}, config)
        print(f"monogenic {args.command}: hypothesis violated: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except ConstructionError as exc:
        _emit({"error": "construction-failed", "failing_link": exc.link, "detail": str(exc)}, config)
        return EXIT_INCONCLUSIVE
    _emit(outcome.payload, config)
    return outcome.code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
