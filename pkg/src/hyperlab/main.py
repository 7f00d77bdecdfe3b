"""
Verify separable coordinate systems on the two-sheeted hyperboloid H2 and the
one-sheeted hyperboloid H~2. Symmetry operators are classified into their
canonical orbits, every coordinate chart can be sampled and exported, and the
contractions of the charts to the flat planes E2 and E11 are checked for R ->
infinity.
"""

# copyright: B1 Systems GmbH <info@b1-systems.de>, 2021
# license:   GPLv3+, http://www.gnu.org/licenses/gpl-3.0.html
# author:    Tilman Lüttje <luettje@b1-systems.de>

import json
import logging
import re
from argparse import ArgumentDefaultsHelpFormatter, ArgumentParser, FileType
from datetime import datetime, timezone
from inspect import cleandoc
from os import getenv, path
from pathlib import Path
from sys import stderr
from textwrap import indent
from typing import Any, Callable, Final, NoReturn, Optional, TextIO, TypedDict, Union, cast

import mpmath
import structlog
from mpmath import mp
from pydantic import ValidationError
from sympy import Rational
from tomli import TOMLDecodeError

from hyperlab import __author__, __license__, __version__
from hyperlab.chart_base import CHARTS_BY_ID, Space, get_chart, write_grid_csv
from hyperlab.classify import (
    FirstOrderElement,
    SecondOrderForm,
    classify_first_order,
    classify_second_order,
    first_order_invariant,
)
from hyperlab.config import (
    EXTENDED_DPS,
    Config,
    ContractionConfig,
    load_config,
    precision_from_env,
)
from hyperlab.contraction import (
    ConvergenceReport,
    beltrami_metric_convergence,
    catalog_cases,
    get_case,
    parabolic_II_compound,
)
from hyperlab.elliptic import EllipticModulus, Shift, complete_K, jacobi_real, jacobi_shifted
from hyperlab.errors import (
    DegenerateFormError,
    DivergenceError,
    HyperlabError,
    InvalidParameterError,
    UnknownIdError,
    UsageError,
    ZeroVectorError,
)
from hyperlab.orbits import Orbit
from hyperlab.runner import run_cases
from hyperlab.suites import SUITES_BY_ID, CheckResult, run_suites

EXIT_OK: Final[int] = 0
EXIT_FAILED: Final[int] = 1
EXIT_DEGENERATE: Final[int] = 2
EXIT_USAGE: Final[int] = 64
EXIT_IO: Final[int] = 74

CONFIG_FILE_NAME: Final[str] = "hyperlab.toml"


class HyperlabArgumentParser(ArgumentParser):
    "Reports parse errors as `UsageError` instead of exiting with status 2"

    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}")


class CommandLineArguments(TypedDict, total=False):
    "Helper class to type parsed command line arguments"
    log_level: Union[int, str]
    config: Optional[TextIO]
    validate_config: bool
    json_log: bool
    command: str
    seed: Optional[int]
    tol: Optional[float]
    out: Optional[str]
    json: bool
    param: list[str]
    params: dict[str, Any]
    # classify
    second: Optional[list[float]]
    first: Optional[list[float]]
    # verify
    suite: str
    chart: Optional[str]
    orbit: Optional[str]
    # contract
    case: str
    r_values: Optional[list[float]]
    points: Optional[int]
    # grid
    n1: int
    n2: int
    output: str
    # elliptic
    u: float
    k: float
    shift: Optional[str]
    # catalog
    kind: str


def parameter_value(text: str) -> Any:
    "Integers stay integers, decimals and fractions become exact rationals"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return Rational(text)
    except (TypeError, ValueError):
        raise UsageError(f"`{text}` is not a number")


def parse_parameters(pairs: list[str], extra: list[str]) -> dict[str, Any]:
    """`--param name=value` pairs and unknown `--name value` options.

    Both spellings may be mixed, later values win.
    """
    params: dict[str, Any] = {}
    for pair in pairs:
        name, separator, value = pair.partition("=")
        if not separator or not name:
            raise UsageError(f"--param expects name=value, got `{pair}`")
        params[name.strip()] = parameter_value(value.strip())
    remaining = list(extra)
    while remaining:
        option = remaining.pop(0)
        if not option.startswith("--") or len(option) <= 2:
            raise UsageError(f"unrecognized argument `{option}`")
        name, separator, value = option[2:].partition("=")
        if not separator:
            if not remaining:
                raise UsageError(f"option `{option}` expects a value")
            value = remaining.pop(0)
        params[name] = parameter_value(value)
    return params


def generated() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def dump(document: Any, stream: Optional[TextIO] = None) -> str:
    text = json.dumps(document, indent=2)
    if stream is not None:
        stream.write(text + "\n")
    return text


def _number(value: Any) -> Any:
    "JSON representation of a real or complex mpmath value"
    value = complex(value)
    if value.imag == 0:
        return value.real
    return {"re": value.real, "im": value.imag}


def case_file_name(case_id: str) -> str:
    return re.sub(r"[^A-Za-z0-9.-]+", "_", case_id).strip("_") + ".csv"


# commands


def cmd_classify(args: CommandLineArguments, config: Config) -> int:
    if args.get("second") is not None:
        form = SecondOrderForm(*cast(list[float], args["second"]))
        result = classify_second_order(form, config.tolerances)
        document = {
            "class": result.orbit.tag.value,
            "params": dict(result.orbit.parameters),
            "invariants": result.invariants.as_dict(),
            "word": result.word.as_list(),
            "shift": result.shift,
            "residual": result.residual,
        }
    else:
        element = FirstOrderElement(*cast(list[float], args["first"]))
        kind, word = classify_first_order(element, config.tolerances)
        document = {
            "class": kind.value,
            "params": {},
            "invariants": {"a2+b2-c2": float(first_order_invariant(element))},
            "word": word.as_list(),
        }
    print(dump(document))
    return EXIT_OK


def _print_checks(checks: list[CheckResult]) -> None:
    for result in checks:
        print(
            f"{'ok' if result.passed else 'FAILED':6} {result.name} "
            f"{result.max_residual:.3e} (tolerance {result.tolerance:.1e})"
        )


def cmd_verify(args: CommandLineArguments, config: Config) -> int:
    logger = structlog.get_logger(thread="main", command="verify")
    orbit = Orbit.from_tag(cast(str, args["orbit"])) if args.get("orbit") else None
    checks = run_suites(
        [args["suite"]],
        config,
        chart=args.get("chart"),
        orbit=orbit,
        params=args.get("params", {}),
    )
    report = {
        "generated": generated(),
        "suite": args["suite"],
        "checks": [result.as_record() for result in checks],
        "pass": all(result.passed for result in checks),
    }
    if args.get("out"):
        with open(cast(str, args["out"]), "w") as stream:
            dump(report, stream)
        logger.info("Wrote verification report", out=args["out"])
    if args.get("json"):
        print(dump(report))
    else:
        _print_checks(checks)
    failed = sum(1 for result in checks if not result.passed)
    logger.info("Finished verification", checks=len(checks), failed=failed)
    return EXIT_OK if checks and not failed else EXIT_FAILED


def contraction_config(args: CommandLineArguments, config: Config) -> ContractionConfig:
    update: dict[str, Any] = {}
    if args.get("r_values"):
        update["r_values"] = args["r_values"]
    if args.get("points"):
        update["flat_points"] = args["points"]
    if not update:
        return config.contraction
    # revalidates the overridden values
    return ContractionConfig.model_validate({**config.contraction.model_dump(), **update})


def cmd_contract(args: CommandLineArguments, config: Config) -> int:
    logger = structlog.get_logger(thread="main", command="contract")
    contraction = contraction_config(args, config)
    seed = config.sampling.seed
    reports: list[ConvergenceReport]
    if args["case"] == "all":
        reports = run_cases(catalog_cases(), contraction, seed=seed)
        reports.append(parabolic_II_compound(1, contraction, seed=seed))
        reports.extend(
            beltrami_metric_convergence(space, contraction, seed=seed)
            for space in (Space.H2, Space.H2_TILDE)
        )
    else:
        reports = run_cases([get_case(args["case"])], contraction, seed=seed)
    document = {
        "generated": generated(),
        "cases": [report.as_record() for report in reports],
        "pass": all(report.passed for report in reports),
    }
    if args.get("out"):
        directory = Path(cast(str, args["out"]))
        directory.mkdir(parents=True, exist_ok=True)
        with open(directory / "report.json", "w") as stream:
            dump(document, stream)
        for report in reports:
            if report.r_values:
                with open(directory / case_file_name(report.case_id), "w") as stream:
                    report.write_csv(stream)
        logger.info("Wrote contraction report", out=str(directory))
    if args.get("json"):
        print(dump(document))
    else:
        for report in reports:
            order = "-" if report.fitted_order is None else f"{report.fitted_order:.3f}"
            print(f"{report.status.value:15} {report.case_id} order {order}")
    logger.info(
        "Finished contractions",
        cases=len(reports),
        passed=sum(1 for report in reports if report.passed),
    )
    return EXIT_OK if all(report.passed for report in reports) else EXIT_FAILED


def cmd_grid(args: CommandLineArguments, config: Config) -> int:
    params = args.get("params", {})
    # unknown parameter names are rejected by the chart
    chart = get_chart(
        cast(str, args["chart"]), 1, **{name: float(value) for name, value in params.items()}
    )
    rows = chart.grid(args["n1"], args["n2"])
    with open(args["output"], "w") as stream:
        write_grid_csv(rows, stream)
    structlog.get_logger(thread="main", command="grid").info(
        "Wrote grid", chart=chart.chart_id, rows=len(rows), out=args["output"]
    )
    return EXIT_OK


def _complete(modulus: EllipticModulus) -> Optional[float]:
    try:
        return float(complete_K(modulus))
    except DivergenceError:
        return None


def cmd_elliptic(args: CommandLineArguments, config: Config) -> int:
    with mp.workdps(EXTENDED_DPS):
        modulus = EllipticModulus.from_k(mpmath.mpf(repr(args["k"])))
        u = mpmath.mpf(repr(args["u"]))
        if args.get("shift"):
            triple = jacobi_shifted(u, Shift.from_tag(cast(str, args["shift"])), modulus)
        else:
            triple = jacobi_real(u, modulus)
        document = {
            "sn": _number(triple.sn),
            "cn": _number(triple.cn),
            "dn": _number(triple.dn),
            "K": _complete(modulus),
            "Kprime": _complete(modulus.complement),
        }
    print(dump(document))
    return EXIT_OK


def print_catalog(kind: str = "all", as_json: bool = False) -> None:
    "Charts and contraction cases with their descriptions"
    if as_json:
        document: dict[str, Any] = {}
        if kind in ("all", "charts"):
            document["charts"] = [CHARTS_BY_ID[i].info() for i in sorted(CHARTS_BY_ID)]
        if kind in ("all", "cases"):
            document["cases"] = [
                {
                    "id": case.case_id,
                    "source": case.source_id,
                    "target": case.target_id,
                    "positive": case.positive,
                    "anchor": case.anchor,
                    "reason": case.negative,
                }
                for case in catalog_cases()
            ]
        print(dump(document))
        return
    description_indent = "  "
    if kind in ("all", "charts"):
        for chart_id in sorted(CHARTS_BY_ID):
            cls = CHARTS_BY_ID[chart_id]
            # ANSI bold escape codes
            print("\033[1m", chart_id, "\033[0m", sep="")
            print(indent(cleandoc(cls.__doc__ or "No description available"), description_indent))
            if cls.targets:
                print(indent("contracts to " + ", ".join(cls.targets), description_indent))
            print()
    if kind in ("all", "cases"):
        for case in catalog_cases():
            print("\033[1m", case.case_id, "\033[0m", sep="")
            print(indent(case.anchor or case.negative or "No description available", description_indent))
            print()


def cmd_catalog(args: CommandLineArguments, config: Config) -> int:
    print_catalog(args.get("kind", "all"), bool(args.get("json")))
    return EXIT_OK


COMMANDS: Final[dict[str, Callable[[CommandLineArguments, Config], int]]] = {
    "classify": cmd_classify,
    "verify": cmd_verify,
    "contract": cmd_contract,
    "grid": cmd_grid,
    "elliptic": cmd_elliptic,
    "catalog": cmd_catalog,
}


def create_parser(xdg_config_home: Path) -> ArgumentParser:
    parser = HyperlabArgumentParser(
        prog="hyperlab",
        description=__doc__,
        formatter_class=ArgumentDefaultsHelpFormatter,
        epilog=f"v{__version__}, {__license__} @ {__author__}",
        allow_abbrev=False,
    )
    parser.set_defaults(log_level="INFO")
    verbosity_args = parser.add_mutually_exclusive_group()
    verbosity_args.add_argument(
        "-s",
        "--silent",
        action="store_const",
        dest="log_level",
        const=logging.WARNING,
        help="Switch to WARNING log level.",
    )
    verbosity_args.add_argument(
        "-d",
        "--debug",
        action="store_const",
        dest="log_level",
        const=logging.DEBUG,
        help="""Switch to DEBUG log level.""",
    )
    parser.add_argument(
        "-c",
        "--config",
        help=f"""Configuration file to use. Without it
        {xdg_config_home / CONFIG_FILE_NAME} is read if it exists, otherwise the
        built-in defaults apply.""",
        type=FileType("r"),
        default=None,
    )
    parser.add_argument(
        "-v",
        "--validate-config",
        action="store_true",
        help="Only validate the structure (not the content) of the configuration file.",
    )
    parser.add_argument(
        "-j",
        "--json-log",
        action="store_true",
        help="Output log messages as single line JSON instead of plain text.",
    )

    # flags shared by every command
    common = HyperlabArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument(
        "--seed", type=int, default=None, help="Overrides `sampling.seed` of the config."
    )
    common.add_argument(
        "--tol",
        type=float,
        default=None,
        help="Scales every tolerance of the config by this factor.",
    )
    common.add_argument(
        "--out", default=None, help="Report file (verify) or report directory (contract)."
    )
    common.add_argument(
        "--json", action="store_true", help="Print the report as JSON to stdout."
    )
    common.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="NAME=VALUE",
        help="""Chart or orbit parameter, e.g. `--param gamma=2`. May be
        repeated, `--gamma 2` is accepted as well.""",
    )

    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    # not required for -v/--validate-config
    commands.required = False

    def command(name: str, help: str) -> ArgumentParser:
        return commands.add_parser(
            name,
            help=help,
            description=help,
            parents=[common],
            formatter_class=ArgumentDefaultsHelpFormatter,
            allow_abbrev=False,
        )

    classify = command("classify", "Classify a first- or second-order symmetry element.")
    element = classify.add_mutually_exclusive_group(required=True)
    element.add_argument(
        "--second",
        nargs=6,
        type=float,
        metavar=("A", "B", "C", "D", "E", "F"),
        help="""Symmetric matrix [[a, b, d], [b, c, e], [d, e, f]] over (K1, K2, L).""",
    )
    element.add_argument(
        "--first",
        nargs=3,
        type=float,
        metavar=("A", "B", "C"),
        help="First-order element a K1 + b K2 + c L.",
    )

    verify = command("verify", "Run verification suites.")
    verify.add_argument("suite", choices=[*sorted(SUITES_BY_ID), "all"])
    verify.add_argument("--chart", default=None, help="Restrict the checks to one chart id.")
    verify.add_argument(
        "--class",
        dest="orbit",
        default=None,
        help="Restrict the checks to one orbit class, e.g. SH.",
    )

    contract = command("contract", "Run contraction cases, a case id or `all`.")
    contract.add_argument("case")
    contract.add_argument(
        "--r-values",
        nargs="+",
        type=float,
        default=None,
        help="Increasing radii, overrides `contraction.r_values`.",
    )
    contract.add_argument(
        "--points",
        type=int,
        default=None,
        help="Number of flat sample points, overrides `contraction.flat_points`.",
    )

    grid = command("grid", "Export a coordinate mesh of a chart as CSV.")
    grid.add_argument("chart")
    grid.add_argument("n1", type=int)
    grid.add_argument("n2", type=int)
    grid.add_argument("output")

    elliptic = command("elliptic", "Evaluate sn, cn, dn and the quarter periods.")
    elliptic.add_argument("u", type=float)
    elliptic.add_argument("k", type=float)
    elliptic.add_argument("--shift", choices=[shift.value for shift in Shift], default=None)

    catalog = command("catalog", "List charts and contraction cases.")
    catalog.add_argument("kind", nargs="?", choices=["all", "charts", "cases"], default="all")
    return parser


def configure_logging(args: CommandLineArguments) -> None:
    structlog_processors = [
        structlog.processors.add_log_level,
        structlog.processors.StackInfoRenderer(),
        structlog.dev.set_exc_info,
        structlog.processors.format_exc_info,
        structlog.processors.TimeStamper("%Y-%m-%d %H:%M:%S"),
    ]
    if args["json_log"]:
        structlog_processors.append(structlog.processors.JSONRenderer(sort_keys=True))
    else:
        # we do not want any ANSI color codes inside our JSON messages
        structlog_processors.append(
            structlog.dev.ConsoleRenderer(),
        )
    structlog.configure(
        processors=structlog_processors,  # type: ignore
        # filter messages according to passed log_level (-s/-d)
        wrapper_class=structlog.make_filtering_bound_logger(
            # default value is the string "INFO" (since it is shown as default
            # inside the help-message) not the equivalent level
            args["log_level"]
            if isinstance(args["log_level"], int)
            else logging.INFO
        ),
        # stdout is reserved for reports
        logger_factory=structlog.PrintLoggerFactory(file=stderr),
    )


def read_config(args: CommandLineArguments, xdg_config_home: Path) -> Config:
    "Raises `pydantic.ValidationError` and `tomli.TOMLDecodeError`"
    stream = args.get("config")
    if stream is not None:
        return load_config(stream.read())
    default = xdg_config_home / CONFIG_FILE_NAME
    if default.is_file():
        return load_config(default.read_text())
    return Config()


def apply_overrides(config: Config, args: CommandLineArguments) -> Config:
    if args.get("seed") is not None:
        config = config.model_copy(
            update={"sampling": config.sampling.model_copy(update={"seed": args["seed"]})}
        )
    if args.get("tol") is not None:
        factor = cast(float, args["tol"])
        if not factor > 0:
            raise InvalidParameterError("--tol > 0")
        config = config.model_copy(update={"tolerances": config.tolerances.scaled(factor)})
    return config


def main(argv: Optional[list[str]] = None) -> int:

    xdg_config_home_str = getenv("XDG_CONFIG_HOME")
    if xdg_config_home_str and path.isabs(xdg_config_home_str):
        xdg_config_home = Path(xdg_config_home_str)
    else:
        xdg_config_home = Path.home() / ".config"

    parser = create_parser(xdg_config_home)
    try:
        namespace, extra = parser.parse_known_args(argv)
        args = cast(CommandLineArguments, vars(namespace))
        args["params"] = parse_parameters(args.get("param", []), extra)
        if not args.get("command") and not args["validate_config"]:
            raise UsageError("a command is required")
        if args["params"] and args.get("command") in ("classify", "elliptic", "catalog"):
            raise UsageError(f"{args['command']} takes no parameters")
    except UsageError as exc:
        parser.print_usage(stderr)
        print(exc, file=stderr)
        return EXIT_USAGE

    configure_logging(args)
    logger = structlog.get_logger(thread="main")
    try:
        config = read_config(args, xdg_config_home)
    except (ValidationError, TOMLDecodeError) as exc:
        print(exc)
        return EXIT_FAILED
    if args["validate_config"]:
        print("Config is structurally valid")
        return EXIT_OK
    logger.debug("Running with arguments", **(args))

    try:
        precision = precision_from_env()
        config = apply_overrides(config, args)
        logger.debug("Running with config", precision=precision.value, **config.model_dump())
        return COMMANDS[args["command"]](args, config)
    except (DegenerateFormError, ZeroVectorError) as exc:
        logger.warning("degenerate_input", error=str(exc))
        return EXIT_DEGENERATE
    except (UsageError, UnknownIdError, InvalidParameterError) as exc:
        logger.error("invalid_arguments", error=str(exc))
        return EXIT_USAGE
    except OSError as exc:
        logger.error("io_error", error=str(exc))
        return EXIT_IO
    except ValidationError as exc:
        logger.error("invalid_override", error=str(exc))
        return EXIT_USAGE
    except HyperlabError as exc:
        logger.error("command_failed", error=f"{type(exc).__name__}: {exc}")
        return EXIT_FAILED


if __name__ == "__main__":
    main()
