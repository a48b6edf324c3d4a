"""
involute command line.

    involute laws [--suite NAME] [--instance NAME] [--list]
    involute word {normalize,involve,eval} EXPR [--mode M] [--target T --map a=1,b=2]
    involute alg {mul,involve,check,load} ALGEBRA [--x X] [--y Y]
    involute gns {gram,state,checka,checkb,roundtrip} ALGEBRA INPUT
    involute mset {eta,nu,dst,map} VALUE... --scalars S [--map x=y]

Results go to stdout (JSON lines or text), diagnostics to stderr. Exit
codes: 0 all checks pass, 1 a law or condition is violated, 2 bad input.
"""

import argparse
import json
import platform
import random
import sys
import traceback
from typing import Any, Callable, Dict, List, Optional, Sequence

from . import __version__, console
from .codec import (
    decode_form, decode_functional, decode_multiset, decode_vector, encode_algebra,
    encode_form, encode_functional, encode_multiset, encode_vector,
    load_algebra, load_json_file, parse_json_text,
)
from .config import CONFIG_FILE, CliConfig, load_config, resolve_settings
from .errors import ConditionViolation, InputError, PreconditionError
from .gns import check_condition_a, check_condition_b, check_roundtrip, ip2state, state2ip
from .multiset import mset_dst, mset_eta, mset_map, mset_nu
from .report import Report, first_failure
from .scalars import SEMIRINGS, get_semiring
from .staralg import StarAlgebra, alg_involve, alg_mul, check_action, check_star_laws, regular_action
from .suites import SUITES, run_suites
from .words import (
    TARGETS, Mode, format_target_value, format_word, get_target, parse_target_value,
    parse_word, word_extend, word_involve, word_to_json,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2

DEFAULT_FORMATS = {"laws": "json", "gns": "json", "mset": "json", "word": "text", "alg": "text"}


# Argument helpers

def _split(values: Optional[Sequence[str]]) -> List[str]:
    """Flatten repeated and comma-separated option values."""
    out: List[str] = []
    for value in values or []:
        out.extend(v.strip() for v in value.split(",") if v.strip())
    return out


def _parse_map(text: Optional[str], parse_value: Callable[[str], Any]) -> Dict[str, Any]:
    """"a=2,b=5" -> {"a": parse_value("2"), "b": parse_value("5")}."""
    mapping: Dict[str, Any] = {}
    if not text:
        return mapping
    for item in text.split(","):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or not key:
            raise InputError(f"bad --map entry {item!r}; expected name=value")
        if key in mapping:
            raise InputError(f"symbol {key!r} mapped twice")
        mapping[key] = parse_value(value)
    return mapping


def _load_document(ref: str) -> Any:
    """A path ending in .json, or inline JSON text."""
    if ref.endswith(".json"):
        return load_json_file(ref)
    return parse_json_text(ref)


def _emit_document(obj: Any, settings: CliConfig) -> None:
    if settings.format == "json":
        console.emit_json(obj)
    else:
        console.emit_text(json.dumps(obj, sort_keys=True, indent=2))


def _emit_reports(reports: List[Report], settings: CliConfig, no_color: bool) -> int:
    if settings.format == "json":
        for report in reports:
            for record in report.to_records():
                console.emit_json(record)
    else:
        console.render_reports(reports, no_color=no_color)

    failure = first_failure(reports)
    if failure is not None:
        console.error(f"{failure.suite} {failure.instance}: law {failure.law} failed")
        return EXIT_VIOLATION
    checked = sum(r.checked for report in reports for r in report.results.values())
    console.success(f"{sum(len(r.results) for r in reports)} laws passed ({checked} cases)")
    return EXIT_OK


def _checked_algebra(ref: str, settings: CliConfig) -> StarAlgebra:
    """Load an algebra and refuse it unless it passes the star-algebra laws."""
    A = load_algebra(ref)
    report = check_star_laws(A, rng=random.Random(f"{settings.seed}/algebra/{A.name}"))
    failures = report.failures()
    if failures:
        raise ConditionViolation(f"algebra {A.name} fails {failures[0].law}", failures[0].witness)
    return A


def _element(A: StarAlgebra, text: Optional[str], flag: str) -> Any:
    """A basis name such as E12, or JSON coordinates."""
    if text is None:
        raise InputError(f"{flag} is required")
    if text in A.module.basis:
        return A.e(text)
    return decode_vector(parse_json_text(text), A.module)


# Commands

def cmd_laws(args: argparse.Namespace, settings: CliConfig) -> int:
    if args.list:
        for suite in SUITES.values():
            console.emit_text(f"{suite.name:<14} {suite.description} [{', '.join(suite.instances)}]")
        return EXIT_OK
    reports = run_suites(
        _split(args.suite), _split(args.instance),
        seed=settings.seed, budget=settings.sample_budget, defaults=settings.instances,
    )
    return _emit_reports(reports, settings, args.no_color)


def cmd_word(args: argparse.Namespace, settings: CliConfig) -> int:
    mode = Mode.parse(args.mode) if args.mode else None

    if args.action == "eval":
        if not args.target:
            raise InputError(f"word eval needs --target (one of {', '.join(sorted(TARGETS))})")
        M = get_target(args.target, mode or Mode.NON_REVERSING)
        mode = mode or M.mode
        values = _parse_map(args.map, lambda text: parse_target_value(M, text))
        w = parse_word(args.expr, mode, alphabet=list(values))
        value = word_extend(values, M, w, mode)
        if settings.format == "json":
            console.emit_json({"target": M.name, "mode": mode.value, "value": M.encode(value)})
        else:
            console.emit_text(format_target_value(M, value))
        return EXIT_OK

    mode = mode or Mode.NON_REVERSING
    w = parse_word(args.expr, mode)
    if args.action == "involve":
        w = word_involve(w, mode)
    if settings.format == "json":
        console.emit_json({"mode": mode.value, "word": format_word(w), "letters": word_to_json(w)})
    else:
        console.emit_text(format_word(w))
    return EXIT_OK


def cmd_alg(args: argparse.Namespace, settings: CliConfig) -> int:
    if args.action == "check":
        A = load_algebra(args.algebra)
        report = Report("star", A.name)
        report.merge(check_star_laws(A, rng=random.Random(f"{settings.seed}/algebra/{A.name}")))
        if A.mode is Mode.NON_REVERSING:
            report.merge(check_action(regular_action(A)))
        return _emit_reports([report], settings, args.no_color)

    A = _checked_algebra(args.algebra, settings)

    if args.action == "load":
        if settings.format == "json":
            console.emit_json(encode_algebra(A))
            return EXIT_OK
        names = A.module.basis
        console.emit_text(f"{A.name}: {A.dim}-dimensional over {A.scalars.name}, {A.mode.value}, unit {A.unit}")
        rows = [
            [a] + [str(alg_mul(A, A.e(a), A.e(b))) for b in names] + [str(alg_involve(A, A.e(a)))]
            for a in names
        ]
        console.render_grid("Multiplication", ["*"] + list(names) + ["involution"], rows, no_color=args.no_color)
        return EXIT_OK

    x = _element(A, args.x, "--x")
    if args.action == "mul":
        result = alg_mul(A, x, _element(A, args.y, "--y"))
    else:
        result = alg_involve(A, x)
    if settings.format == "json":
        console.emit_json(encode_vector(result))
    else:
        console.emit_text(str(result))
    return EXIT_OK


def cmd_gns(args: argparse.Namespace, settings: CliConfig) -> int:
    A = _checked_algebra(args.algebra, settings)
    doc = _load_document(args.input)

    if args.action == "gram":
        _emit_document(encode_form(state2ip(decode_functional(doc, A))), settings)
        return EXIT_OK
    if args.action == "state":
        _emit_document(encode_functional(ip2state(decode_form(doc, A))), settings)
        return EXIT_OK
    if args.action == "roundtrip":
        report = check_roundtrip(decode_functional(doc, A))
    elif args.action == "checka":
        report = check_condition_a(decode_form(doc, A))
    else:
        report = check_condition_b(decode_form(doc, A))
    return _emit_reports([report], settings, args.no_color)


def cmd_mset(args: argparse.Namespace, settings: CliConfig) -> int:
    S = get_semiring(args.scalars)
    expected = {"eta": 1, "nu": 1, "map": 1, "dst": 2}[args.action]
    if len(args.values) != expected:
        raise InputError(f"mset {args.action} takes {expected} argument(s), got {len(args.values)}")

    if args.action == "eta":
        result = mset_eta(args.values[0], S)
    else:
        phis = [decode_multiset(_load_document(v), S) for v in args.values]
        if args.action == "nu":
            result = mset_nu(phis[0])
        elif args.action == "dst":
            result = mset_dst(phis[0], phis[1])
        else:
            relabel = _parse_map(args.map, str.strip)
            result = mset_map(lambda k: relabel.get(k, k), phis[0])

    if settings.format == "json":
        console.emit_json(encode_multiset(result))
    else:
        console.emit_text(str(result))
    return EXIT_OK


COMMANDS = {
    "laws": cmd_laws,
    "word": cmd_word,
    "alg": cmd_alg,
    "gns": cmd_gns,
    "mset": cmd_mset,
}


# Parser

def _seed_arg(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")


def _budget_arg(text: str) -> int:
    value = _seed_arg(text)
    if value < 1:
        raise argparse.ArgumentTypeError("budget must be at least 1")
    return value


def _add_common(parser: argparse.ArgumentParser, nested: bool) -> None:
    """Options accepted both before and after the command name."""
    unset = argparse.SUPPRESS if nested else None
    flag = argparse.SUPPRESS if nested else False
    parser.add_argument('--seed', type=_seed_arg, default=unset, help='Seed for sampled checks (default 0, or $INVOLUTE_SEED)')
    parser.add_argument('--budget', type=_budget_arg, default=unset, help='Sample budget for non-enumerable instances')
    parser.add_argument('--format', choices=['json', 'text'], default=unset, help='Output format')
    parser.add_argument('--config', type=str, default=argparse.SUPPRESS if nested else CONFIG_FILE, help='Path to config file')
    parser.add_argument('--debug', action='store_true', default=flag, help='Print diagnostics to stderr')
    parser.add_argument('--no-color', action='store_true', default=flag, help='Disable colored output')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="involute", description="Law checks for involutive structures")
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    _add_common(parser, nested=False)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    laws = sub.add_parser("laws", help="Run law suites")
    laws.add_argument('--suite', action='append', help='Suite name (repeatable, comma-separated)')
    laws.add_argument('--instance', action='append', help='Instance name (repeatable, comma-separated)')
    laws.add_argument('--list', action='store_true', help='List suites and their default instances')
    _add_common(laws, nested=True)

    word = sub.add_parser("word", help="Normalize, involve or evaluate a signed word")
    word.add_argument('action', choices=['normalize', 'involve', 'eval'])
    word.add_argument('expr', help='Word expression, e.g. "a * ~(b * c)"')
    word.add_argument('--mode', choices=[m.value for m in Mode], help='Involution mode (default non-reversing)')
    word.add_argument('--target', help=f'Evaluation target: {", ".join(sorted(TARGETS))}')
    word.add_argument('--map', help='Generator values, e.g. a=2,b=5')
    _add_common(word, nested=True)

    alg = sub.add_parser("alg", help="Inspect a star algebra")
    alg.add_argument('action', choices=['mul', 'involve', 'check', 'load'])
    alg.add_argument('algebra', help='Algebra JSON file or instance name such as mat2-gauss')
    alg.add_argument('--x', help='Basis name or JSON coordinates')
    alg.add_argument('--y', help='Basis name or JSON coordinates')
    _add_common(alg, nested=True)

    gns = sub.add_parser("gns", help="Hermitian functionals and inner products")
    gns.add_argument('action', choices=['gram', 'state', 'checka', 'checkb', 'roundtrip'])
    gns.add_argument('algebra', help='Algebra JSON file or instance name')
    gns.add_argument('input', help='Functional or Gram JSON file (or inline JSON)')
    _add_common(gns, nested=True)

    mset = sub.add_parser("mset", help="Multiset monad operations")
    mset.add_argument('action', choices=['eta', 'nu', 'dst', 'map'])
    mset.add_argument('values', nargs='+', help='Key (eta) or multiset JSON / file')
    mset.add_argument('--scalars', choices=sorted(SEMIRINGS), default='gauss', help='Scalar semiring')
    mset.add_argument('--map', help='Key relabelling for map, e.g. x=y,y=x')
    _add_common(mset, nested=True)
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """Parse command line arguments."""
    return build_parser().parse_args(argv)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit code."""
    args = parse_args(argv)
    console.setup(no_color=args.no_color, debug=args.debug)
    config = load_config(args.config)
    try:
        settings = resolve_settings(args.command, args, config, DEFAULT_FORMATS[args.command])
    except InputError as e:
        console.error(f"Error: {e}")
        return EXIT_INPUT

    console.debug("Debug mode enabled")
    console.debug(f"Python version: {sys.version.split()[0]}")
    console.debug(f"Operating system: {platform.platform()}")
    console.debug(f"Config file path: {args.config}")
    console.debug(f"Seed {settings.seed}, budget {settings.sample_budget}, format {settings.format}")

    try:
        return COMMANDS[args.command](args, settings)
    except ConditionViolation as e:
        console.error(str(e))
        payload = {"error": str(e), "witness": e.witness}
        if settings.format == "json":
            console.emit_json(payload)
        else:
            console.emit_text(json.dumps(payload, sort_keys=True, indent=2))
        return EXIT_VIOLATION
    except (InputError, PreconditionError) as e:
        console.error(f"Error: {e}")
        return EXIT_INPUT
    except KeyboardInterrupt:
        console.warn("Interrupted")
        return EXIT_VIOLATION
    except Exception as e:
        console.error(f"An unexpected error occurred: {str(e)}")
        if args.debug:
            traceback.print_exc()
        return EXIT_VIOLATION


def main() -> None:
    """Console-script entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
