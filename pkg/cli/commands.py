"""
Subcommands: cosets, build, table
"""
import argparse
import logging
from pathlib import Path
from typing import List, Optional

from core.aqecc import CSS_FAMILIES, build_css, css_family
from core.blockcodes import build_family
from core.convolutional import CONV_FAMILY_TAGS, build_conv_family, conv_profile, free_distance_search
from core.cosets import CosetProfile, CosetShape, partition_Orn, predict_partition
from core.distance import certify_distance
from core.errors import ProfileError
from core.families import BLOCK_FAMILIES, block_family
from core.field import FieldOptions
from core.tables import CONV_COLUMNS, CSS_COLUMNS, TABLE_TITLES, regenerate_table
from cli.report import RunReport
from utils.constants import APP_NAME, APP_VERSION, DEFAULT_OUTPUT_FORMAT, EXIT_TABLE_MISMATCH, OUTPUT_FORMATS
from utils.settings import Settings
from utils.system_utils import default_worker_count

logger = logging.getLogger(__name__)

FAMILY_TAGS = tuple(BLOCK_FAMILIES) + CONV_FAMILY_TAGS + tuple(CSS_FAMILIES)


def _format_set(elements) -> str:
    return "{" + ", ".join(str(e) for e in elements) + "}"


def _field_options(settings: Settings) -> FieldOptions:
    return FieldOptions(settings.modulus_table, settings.field_ceiling, settings.search_moduli)


def cmd_cosets(args: argparse.Namespace, settings: Settings) -> RunReport:
    """Computes the coset partition of O_rn and compares it with the closed form."""
    if args.r is None or args.n is None:
        raise ProfileError("cosets needs --q, --r and --n")
    profile = CosetProfile(args.q, args.r, args.n)
    computed = partition_Orn(profile)
    report = RunReport(command={"subcommand": "cosets", "q": args.q, "r": args.r, "n": args.n})

    predicted = None
    if profile.shape is not CosetShape.OTHER:
        predicted = predict_partition(profile)
    agree = None if predicted is None else predicted.as_sets() == computed.as_sets()

    report.payload = {
        "profile": profile.to_dict(),
        "cosets": computed.to_list(),
        "sizes": computed.sizes(),
        "predicted": predicted.to_list() if predicted is not None else None,
    }
    report.verdicts = {"predicted_matches_computed": agree}
    report.title = f"q={profile.q} r={profile.r} n={profile.n} rn={profile.rn} shape {profile.tag}"
    report.lines = [f"{len(computed.cosets)} cosets"]
    report.lines += [_format_set(coset.elements) for coset in computed.cosets]
    report.csv_columns = ("representative", "size", "elements")
    report.csv_rows = [
        {"representative": c.representative, "size": len(c), "elements": " ".join(map(str, c.elements))}
        for c in computed.cosets
    ]
    if agree is False:
        logger.error(f"Closed-form partition disagrees with orbits for {profile}")
        report.exit_code = EXIT_TABLE_MISMATCH
    return report


def _build_block(args, settings: Settings, report: RunReport) -> None:
    family = block_family(args.family)
    tower = _field_options(settings).tower(family.profile(args.q, args.r, args.n))
    code = build_family(args.family, tower, args.i)
    cert = certify_distance(code, settings.budget)
    claim = code.claim
    singleton = code.n - code.dim + 1
    distance = str(cert.lower) if cert.exact else f"{cert.lower}..{cert.upper}"

    report.payload = {
        "kind": "block",
        "code": code.to_dict(),
        "certificate": cert.to_dict(),
        "singleton": singleton,
        "label": f"[{code.n}, {code.dim}, {distance}]_{code.q}",
    }
    report.verdicts = {
        "meets_claim": claim.verdict(cert.lower, cert.upper),
        "mds": cert.lower == singleton if cert.exact else None,
        "defect": singleton - cert.lower if cert.exact else None,
    }
    report.title = f"{args.family}: {report.payload['label']} (claim {claim.label(code.q)})"
    report.lines = [
        f"defining set {_format_set(code.defining_set)}",
        f"g(x) coefficients {code.generator_coeffs()}",
        f"distance via {cert.method.value}, work {cert.work}",
    ]


def _build_conv(args, settings: Settings, report: RunReport) -> None:
    tower = _field_options(settings).tower(conv_profile(args.family, args.q, args.r, args.n))
    conv = build_conv_family(args.family, tower, i=args.i, c1=args.c1, c2=args.c2, budget=settings.budget)
    report.payload = {"kind": "convolutional", "code": conv.to_dict()}
    report.verdicts = {
        "meets_claim": conv.meets_claim(),
        "mds": conv.mds if conv.exact else None,
        "defect": conv.defect,
    }
    report.title = f"{args.family}: V⊥ = {conv.label}"
    if conv.claim is not None:
        report.title += f" (claim {conv.claim.label(conv.q)})"
    report.lines = [
        f"row counts {list(conv.split.row_counts)}, generalized Singleton {conv.singleton}",
    ]
    report.lines += [
        f"{name}: [{cert.lower}, {cert.upper}] via {cert.method.value}"
        for name, cert in sorted(conv.certificates.items())
    ]
    if args.search_depth is not None:
        found = free_distance_search(conv, args.search_depth, settings.budget, side="dual")
        report.payload["search"] = {"depth": args.search_depth, "weight": found}
        report.verdicts["search_inside_squeeze"] = None if found is None else conv.df_lower <= found <= conv.df_upper
        least = "undecided" if found is None else found
        report.lines.append(f"search depth {args.search_depth}: least weight {least}")


def _build_css(args, settings: Settings, report: RunReport) -> None:
    block = block_family(css_family(args.family).block_tag)
    tower = _field_options(settings).tower(block.profile(args.q, args.r, args.n))
    record = build_css(args.family, settings.budget, tower=tower, i=args.i, j=args.j)
    report.payload = {"kind": "quantum", "code": record.to_dict()}
    report.verdicts = {
        "meets_claim": record.meets_claim(),
        "mds": record.mds if record.dz is not None and record.dx is not None else None,
        "purity": record.purity.value,
    }
    report.title = f"{args.family}: {record.label} (claim {record.claim.label(record.q)})"
    report.lines = [
        f"C1 {record.C1.label} Z={_format_set(record.C1.defining_set)}",
        f"C2perp {record.C2perp.label} Z={_format_set(record.C2perp.defining_set)}",
    ]


def cmd_build(args: argparse.Namespace, settings: Settings) -> RunReport:
    """Builds and certifies one member of a named construction."""
    if args.family is None:
        raise ProfileError(f"build needs --family, one of {', '.join(FAMILY_TAGS)}")
    command = {
        "subcommand": "build", "family": args.family, "q": args.q, "r": args.r, "n": args.n,
        "i": args.i, "j": args.j, "c1": args.c1, "c2": args.c2, "budget": settings.budget,
    }
    report = RunReport(command=command)
    if args.family in BLOCK_FAMILIES:
        _build_block(args, settings, report)
    elif args.family in CONV_FAMILY_TAGS:
        _build_conv(args, settings, report)
    elif args.family in CSS_FAMILIES:
        _build_css(args, settings, report)
    else:
        raise ProfileError(f"unknown family {args.family!r}")
    return report


def cmd_table(args: argparse.Namespace, settings: Settings) -> RunReport:
    """Regenerates a published table row by row."""
    workers = settings.workers or default_worker_count()
    results = regenerate_table(args.which, settings.budget, workers, _field_options(settings))
    failures = [result.index for result in results if not result.ok]

    report = RunReport(command={"subcommand": "table", "which": args.which, "budget": settings.budget})
    report.payload = {
        "table": args.which,
        "title": TABLE_TITLES[args.which],
        "listed_rows": len(results),
        "passed": len(results) - len(failures),
        "rows": [result.to_dict() for result in results],
    }
    report.verdicts = {"all_rows_regenerated": not failures, "failed_rows": failures}
    report.title = f"Table {args.which}: {TABLE_TITLES[args.which]} ({len(results) - len(failures)}/{len(results)} ok)"
    report.lines = [
        f"{result.index:>2} {result.status:<8} {result.row.expected_label:<28} {result.label or result.message}"
        + (f"  [{result.row.note}]" if result.row.note else "")
        for result in results
    ]
    report.csv_columns = CONV_COLUMNS if args.which == 1 else CSS_COLUMNS
    report.csv_rows = [result.columns for result in results]
    if failures:
        report.exit_code = EXIT_TABLE_MISMATCH
    return report


COMMANDS = {"cosets": cmd_cosets, "build": cmd_build, "table": cmd_table}


def _positive_int(text: str) -> int:
    try:
        value = int(text.replace("_", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    """Parser with the shared options on every subcommand."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=OUTPUT_FORMATS, default=None, help="output format")
    common.add_argument("--json", action="store_const", const="json", dest="json_alias",
                        help="same as --format json")
    common.add_argument("--budget", type=_positive_int, help="operation budget per certificate")
    common.add_argument("--modulus-table", type=Path, help="alternative modulus table")
    common.add_argument("--field-ceiling", type=_positive_int, help="largest field order to build")
    common.add_argument("--no-search", action="store_true", help="fail on fields missing from the modulus table")
    common.add_argument("--workers", type=_positive_int, help="processes for table regeneration")
    common.add_argument("--settings", type=Path, help="settings file (JSON)")
    common.add_argument("--log-level", choices=("DEBUG", "INFO", "WARNING", "ERROR"), help="logging level")
    common.add_argument("--log-file", action="store_true", help="also log to the config directory")

    parser = argparse.ArgumentParser(prog=APP_NAME, description="Constacyclic code workbench")
    parser.add_argument("--version", action="version", version=f"{APP_NAME} {APP_VERSION}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    cosets = sub.add_parser("cosets", parents=[common], help="coset partition of O_rn")
    cosets.add_argument("--q", type=int, required=True)
    cosets.add_argument("--r", type=int)
    cosets.add_argument("--n", type=int)

    build = sub.add_parser("build", parents=[common], help="build and certify a family member")
    build.add_argument("--family", choices=FAMILY_TAGS)
    build.add_argument("--q", type=int, required=True)
    build.add_argument("--r", type=int)
    build.add_argument("--n", type=int)
    build.add_argument("--i", type=int)
    build.add_argument("--j", type=int)
    build.add_argument("--c1", type=int)
    build.add_argument("--c2", type=int)
    build.add_argument("--search-depth", type=int, help="also search V⊥ words up to this degree")

    table = sub.add_parser("table", parents=[common], help="regenerate a published table")
    table.add_argument("--which", type=int, choices=sorted(TABLE_TITLES), required=True)
    return parser


def output_format(args: argparse.Namespace) -> str:
    return args.json_alias or args.format or DEFAULT_OUTPUT_FORMAT


def settings_overrides(args: argparse.Namespace) -> dict:
    return {
        "budget": args.budget,
        "modulus_table": args.modulus_table,
        "field_ceiling": args.field_ceiling,
        "search_moduli": False if args.no_search else None,
        "workers": args.workers,
        "log_level": args.log_level,
        "log_to_file": True if args.log_file else None,
    }


def run_command(args: argparse.Namespace, settings: Settings) -> RunReport:
    return COMMANDS[args.subcommand](args, settings).finish()


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)
