"""
Command-line interface for heckelab.

Every subcommand prints one report on stdout. Exit codes: 0 when the value was
produced or every check passed, 1 when a check found failures, 2 on usage,
input or resource errors.
"""

from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence
import argparse
import logging
import sys

from .config import load_config, resolve_cache_dir, Settings
from .exceptions import HeckelabError, InputError, ProportionalityError
from .models.abelian import AbelianType
from .models.modular_form import ModularForm
from .models.qseries import CoeffRing, QSeries
from .data_providers.coefficient_cache import CACHE_KINDS, CoefficientCache
from .data_providers.delta_provider import DeltaPowerProvider, set_default_provider
from .reports.generator import OUTPUT_FORMATS, ReportGenerator
from .calculators import arith, galois, hecke, maeda, modforms, subgroups

logger = logging.getLogger(__name__)

FORMS = ("delta", "delta-power", "c4", "c6", "eisenstein", "one")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2


@dataclass
class CommandResult:
    """Payload of a subcommand, its exit code and an optional plain-text rendering."""

    payload: Dict[str, Any]
    exit_code: int = EXIT_OK
    text: Optional[str] = None


@dataclass
class Context:
    settings: Settings
    provider: DeltaPowerProvider
    cache: CoefficientCache
    jobs: int


def _checked(payload: Dict[str, Any]) -> CommandResult:
    return CommandResult(payload, EXIT_OK if payload.get("passed", True) else EXIT_FAILED)


def _ring(modulus: int) -> CoeffRing:
    return CoeffRing.from_modulus(modulus)


def _build_form(args: argparse.Namespace, precision: int, ctx: Context) -> ModularForm:
    """The form named by --form, to the given precision."""
    ring = _ring(args.modulus)
    if args.form == "delta":
        return modforms.delta(precision, ring, ctx.provider)
    if args.form == "delta-power":
        return modforms.delta_power(args.i, precision, ring, ctx.provider)
    if args.form == "c4":
        return modforms.c4(precision, ring)
    if args.form == "c6":
        return modforms.c6(precision, ring)
    if args.form == "eisenstein":
        return modforms.eisenstein_series(args.weight, precision, ring)
    if args.modulus:
        raise InputError("The constant form 'one' is taken over the rationals")
    return ModularForm(0, QSeries.one(CoeffRing.rationals(), precision))


def _series_result(label: str, form: ModularForm) -> CommandResult:
    coefficients = form.series.to_list()
    payload = {
        "form": label,
        "weight": form.weight,
        "ring": str(form.ring),
        "precision": form.precision,
        "coefficients": coefficients,
        "rows": [{"index": i, "coefficient": c} for i, c in enumerate(coefficients)],
    }
    return CommandResult(payload, text=" ".join(str(c) for c in coefficients))


def cmd_tau(args, ctx: Context) -> CommandResult:
    value = modforms.tau(args.n, ctx.provider)
    return CommandResult({"n": args.n, "tau": value}, text=str(value))


def cmd_qexp(args, ctx: Context) -> CommandResult:
    return _series_result(args.form, _build_form(args, args.precision, ctx))


def cmd_hecke_apply(args, ctx: Context) -> CommandResult:
    source = _build_form(args, args.n * (args.precision - 1) + 1, ctx)
    image = hecke.hecke_apply(source, args.n, args.precision)
    return _series_result(f"T_{args.n}({args.form})", image)


def cmd_compose_check(args, ctx: Context) -> CommandResult:
    report = hecke.composition_check(args.m, args.n, args.k, args.precision,
                                     normalization=args.normalization, provider=ctx.provider)
    return _checked(report.to_dict())


def cmd_eigen(args, ctx: Context) -> CommandResult:
    form = _build_form(args, args.n * (args.precision - 1) + 1, ctx)
    payload = {"form": args.form, "n": args.n, "weight": form.weight, "ring": str(form.ring)}
    try:
        value = hecke.eigenvalue(form, args.n)
    except ProportionalityError as e:
        logger.warning(f"eigen: {e}")
        payload.update(eigenvalue=None, passed=False, failures=[{"index": e.index}])
        return CommandResult(payload, EXIT_FAILED, text=f"not an eigenform (index {e.index})")
    payload.update(eigenvalue=value, passed=True, failures=[])
    return CommandResult(payload, text=str(value))


def cmd_bcoeff(args, ctx: Context) -> CommandResult:
    value = hecke.b_coefficient(args.n, args.e, args.modulus, ctx.provider,
                                budget=ctx.settings.coefficient_budget)
    return CommandResult({"n": args.n, "e": args.e, "modulus": args.modulus, "b": value},
                         text=str(value))


def cmd_subgroup_count(args, ctx: Context) -> CommandResult:
    value = subgroups.c_formula(args.m, args.n, args.d, args.e)
    payload = {
        "m": args.m, "n": args.n, "d": args.d, "e": args.e,
        "count": value,
        "regime": subgroups.c_regime(args.m, args.n, args.d, args.e),
        "fibre_product_index": subgroups.fibre_product_index(args.m, args.n, args.d, args.e),
    }
    if args.census:
        counted = subgroups.count_by_type(
            AbelianType.from_cyclic_factors([args.e, args.m * args.n // args.e]),
            AbelianType.from_cyclic_factors([args.d, args.m // args.d]),
            ctx.settings.census_bound)
        payload["census"] = counted
        payload["passed"] = counted == value
        return _checked(payload)
    return CommandResult(payload, text=str(value))


def cmd_subgroup_poly(args, ctx: Context) -> CommandResult:
    return _checked(subgroups.c_polynomial_identity(args.m, args.n).to_dict())


def cmd_census(args, ctx: Context) -> CommandResult:
    if args.table:
        if args.m is None:
            raise InputError("--table needs --m as well as --n")
        frame = subgroups.exponent_table_frame(args.m, args.n)
        rows = [{"e": index, **row} for index, row in zip(frame.index, frame.to_dict("records"))]
        return CommandResult({"m": args.m, "n": args.n, "rows": rows},
                             text=frame.to_string())
    report = subgroups.census_identities(args.n, args.m, ctx.settings.census_bound)
    return _checked(report.to_dict())


def cmd_charpoly(args, ctx: Context) -> CommandResult:
    matrix = galois.hecke_matrix(args.n, args.d, ctx.provider, ctx.settings.coefficient_budget)
    polynomial = galois.char_poly(matrix)
    payload = {"n": args.n, "d": args.d, "weight": 12 * args.d, "matrix": matrix,
               "coefficients": polynomial.descending(), "polynomial": str(polynomial)}
    return CommandResult(payload, text=str(polynomial))


def cmd_certify_galois(args, ctx: Context) -> CommandResult:
    budget = args.prime_budget or ctx.settings.prime_budget
    first = ctx.settings.first_prime
    if args.dmax is not None:
        report = galois.t2_crosscheck(args.dmax, budget, first, ctx.jobs)
        return _checked(report.to_dict())
    if args.d is None:
        raise InputError("certify-galois needs --d or --dmax")
    matrix = galois.hecke_matrix(args.n, args.d, ctx.provider, ctx.settings.coefficient_budget)
    verdict = galois.certify_maeda(galois.char_poly(matrix), budget, first, ctx.jobs)
    payload = {"n": args.n, "d": args.d, **verdict.to_dict()}
    return CommandResult(payload, EXIT_OK if verdict.certified else EXIT_FAILED)


def cmd_maeda_scan3(args, ctx: Context) -> CommandResult:
    if args.probe:
        return _checked(maeda.p3_pattern_probe(args.dmax, ctx.provider).to_dict())
    return _checked(maeda.p3_scan_report(args.dmax, ctx.provider).to_dict())


def cmd_maeda_scan2(args, ctx: Context) -> CommandResult:
    return _checked(maeda.p2_scan_report(args.dmax, args.mode, ctx.provider).to_dict())


def cmd_maeda_cert(args, ctx: Context) -> CommandResult:
    certificate = maeda.maeda_certificate(args.d, args.n, args.side, ctx.provider)
    payload = certificate.to_dict()
    passed = certificate.verdict
    if args.verify:
        payload["verified"] = maeda.verify_certificate(certificate)
        passed = passed and payload["verified"]
    return CommandResult(payload, EXIT_OK if passed else EXIT_FAILED)


def cmd_ramanujan_scan(args, ctx: Context) -> CommandResult:
    report = maeda.ramanujan_scan(args.nmax, args.modulus, args.form, ctx.provider)
    return _checked(report.to_dict())


def cmd_thme_scan(args, ctx: Context) -> CommandResult:
    report = maeda.thmE_scan(args.emax, args.nmax, ctx.provider, ctx.jobs,
                             ctx.settings.coefficient_budget)
    return _checked(report.to_dict())


def cmd_cache(args, ctx: Context) -> CommandResult:
    if args.action == "verify":
        return _checked(maeda.cache_verify(ctx.cache).to_dict())
    if args.precision is None:
        raise InputError(f"cache {args.action} needs --precision")
    if args.action == "store":
        path = maeda.cache_store(ctx.cache, args.kind, args.precision, args.i, args.modulus, ctx.provider)
        return CommandResult({"action": "store", "kind": args.kind, "path": str(path)}, text=str(path))
    values = maeda.cache_load(ctx.cache, args.kind, args.precision, args.i, args.modulus)
    return CommandResult({"action": "load", "kind": args.kind, "i": args.i, "modulus": args.modulus,
                          "precision": args.precision, "coefficients": list(values)},
                         text=" ".join(str(v) for v in values))


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=OUTPUT_FORMATS, default="plain",
                        help="Output format (default plain)")
    common.add_argument("--json", dest="output", action="store_const", const="json",
                        help="Shorthand for --output json")
    common.add_argument("--excel", metavar="PATH", help="Also export the report to an .xlsx file")
    common.add_argument("--cache-dir", help="Coefficient cache directory")
    common.add_argument("--jobs", type=int, help="Worker processes for scans")
    common.add_argument("--config", help="Path to config.ini")
    common.add_argument("--verbose", action="store_true", help="Log at DEBUG level")
    return common


def _form_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--form", choices=FORMS, default="delta")
    parser.add_argument("--weight", type=int, default=4, help="Weight of --form eisenstein")
    parser.add_argument("--i", type=int, default=1, help="Exponent of --form delta-power")
    parser.add_argument("--modulus", type=int, default=0, help="Work modulo M (0 = exact)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="heckelab",
                                     description="Hecke operators, congruences and Maeda scans")
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = _common_options()

    def add(name: str, handler: Callable, help_text: str) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        sub.set_defaults(handler=handler)
        return sub

    sub = add("tau", cmd_tau, "Ramanujan's tau(n)")
    sub.add_argument("--n", type=int, required=True)

    sub = add("qexp", cmd_qexp, "q-expansion of a form")
    _form_options(sub)
    sub.add_argument("--precision", type=int, default=10)

    sub = add("hecke-apply", cmd_hecke_apply, "Apply T_n to a form")
    _form_options(sub)
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--precision", type=int, default=10, help="Output precision")

    sub = add("compose-check", cmd_compose_check, "Check the Hecke composition identity")
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--precision", type=int, default=20)
    sub.add_argument("--normalization", choices=hecke.NORMALIZATIONS, default="classical")

    sub = add("eigen", cmd_eigen, "Eigenvalue of T_n on an eigenform")
    _form_options(sub)
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--precision", type=int, default=5, help="Coefficients of T_n f compared")

    sub = add("bcoeff", cmd_bcoeff, "Delta^e coordinate b_n^e of T_n(Delta^e)")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--e", type=int, required=True)
    sub.add_argument("--modulus", type=int, default=0)

    sub = add("subgroup-count", cmd_subgroup_count, "c_{m,n}(d, e) by the closed formula")
    for name in ("m", "n", "d", "e"):
        sub.add_argument(f"--{name}", type=int, required=True)
    sub.add_argument("--census", action="store_true", help="Compare with a brute-force census")

    sub = add("subgroup-poly", cmd_subgroup_poly, "Check the subgroup-count polynomial identity")
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--n", type=int, required=True)

    sub = add("census", cmd_census, "Census identities in C_n x C_n, or a prime-power table")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--m", type=int)
    sub.add_argument("--table", action="store_true",
                     help="Print the prime-power exponent table for exponents (m, n)")

    sub = add("charpoly", cmd_charpoly, "Characteristic polynomial of T_n on S_12d")
    sub.add_argument("--n", type=int, default=2)
    sub.add_argument("--d", type=int, required=True)

    sub = add("certify-galois", cmd_certify_galois, "Certify full symmetric Galois group")
    sub.add_argument("--n", type=int, default=2)
    sub.add_argument("--d", type=int)
    sub.add_argument("--dmax", type=int, help="Cross-check T_2 for every d up to dmax")
    sub.add_argument("--prime-budget", type=int)

    sub = add("maeda-scan3", cmd_maeda_scan3, "Scan the p = 3 condition")
    sub.add_argument("--dmax", type=int, default=maeda.PUBLISHED_SCAN_LIMIT)
    sub.add_argument("--probe", action="store_true", help="Compare with the 3^k, 2*3^k pattern")

    sub = add("maeda-scan2", cmd_maeda_scan2, "Scan the p = 2 condition")
    sub.add_argument("--dmax", type=int, default=maeda.PUBLISHED_SCAN_LIMIT)
    sub.add_argument("--mode", choices=maeda.P2_MODES, default="as_stated")

    sub = add("maeda-cert", cmd_maeda_cert, "Maeda certificate for T_dn on S_12d")
    sub.add_argument("--d", type=int, required=True)
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--side", type=int, choices=(2, 3), default=3)
    sub.add_argument("--verify", action="store_true", help="Recompute the value from scratch")

    sub = add("ramanujan-scan", cmd_ramanujan_scan, "Check n tau(n) = sigma(n) mod 3, 8 or 16")
    sub.add_argument("--nmax", type=int, required=True)
    sub.add_argument("--modulus", type=int, choices=maeda.RAMANUJAN_MODULI, required=True)
    sub.add_argument("--form", choices=maeda.RAMANUJAN_FORMS, default="stable")

    sub = add("thmE-scan", cmd_thme_scan, "Check n b_n^e = sigma(n) congruences")
    sub.add_argument("--emax", type=int, required=True)
    sub.add_argument("--nmax", type=int, required=True)

    sub = add("cache", cmd_cache, "Store, load or verify cached coefficient tables")
    sub.add_argument("action", choices=("store", "load", "verify"))
    sub.add_argument("--kind", choices=CACHE_KINDS, default="tau")
    sub.add_argument("--i", type=int, default=1)
    sub.add_argument("--precision", type=int)
    sub.add_argument("--modulus", type=int, default=0)

    return parser


def _configure_logging(settings: Settings, verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, settings.log_level.upper(), logging.INFO)
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if settings.log_file:
        handlers.append(logging.FileHandler(settings.log_file, encoding="utf-8"))
    logging.basicConfig(level=level, handlers=handlers, force=True,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, run one subcommand and print its report.

    Returns:
        Process exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR

    try:
        settings = load_config(args.config)
        _configure_logging(settings, args.verbose)
        arith.configure_sieve(settings.sieve_bound)

        jobs = args.jobs if args.jobs is not None else settings.jobs
        if jobs < 1:
            raise InputError(f"--jobs must be at least 1, got {jobs}")
        cache = CoefficientCache(resolve_cache_dir(args.cache_dir, settings))
        provider = DeltaPowerProvider(cache)
        set_default_provider(provider)
        ctx = Context(settings, provider, cache, jobs)

        result = args.handler(args, ctx)
        generator = ReportGenerator()
        if args.output == "plain" and result.text is not None:
            sys.stdout.write(result.text + "\n")
        else:
            sys.stdout.write(generator.render(result.payload, args.output))
        if args.excel:
            generator.export_excel(result.payload, args.excel)
        return result.exit_code
    except HeckelabError as e:
        logger.error(f"{args.command}: {e}")
        return EXIT_ERROR
    finally:
        set_default_provider(None)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
