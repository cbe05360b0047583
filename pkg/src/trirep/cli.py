"""Command-line interface for trirep."""

import sys
import json
import argparse
import logging
from typing import Any, Dict

from trirep import representations
from trirep.codealg import analyze_code, find_two_basis, format_code, read_code
from trirep.config import load_config
from trirep.exactgeom import export_off, project_r4
from trirep.exceptions import DimensionError, EmptyGraphError, FormatError, TrirepError
from trirep.graphspace import cut_space, cycle_space, format_graph, graph_from_two_basis, read_graph
from trirep.representation import (
    VerificationReport,
    read_bundle,
    verify_representation,
    write_bundle,
)

# Configure logging
logging.basicConfig(
    level=logging.INFO, format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
)
logger = logging.getLogger(__name__)


def setup_argparse() -> argparse.ArgumentParser:
    """Set up command-line argument parser."""
    parser = argparse.ArgumentParser(
        description="Geometric representations of binary linear codes",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )

    # Global arguments
    parser.add_argument(
        "--verbose", "-v", action="store_true", help="Enable verbose output"
    )
    parser.add_argument(
        "--config", help="YAML file with construction constants", default=None
    )
    parser.add_argument(
        "--json", action="store_true", help="Print a machine-readable report"
    )

    subparsers = parser.add_subparsers(dest="command", help="Command to execute")

    # 'analyze' command
    analyze_parser = subparsers.add_parser(
        "analyze",
        help="Decide the minimal representation dimension of a code",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    analyze_parser.add_argument("code_file", help="Generator rows, one per line")

    # 'build' command
    build_parser = subparsers.add_parser(
        "build",
        help="Build and verify a representation bundle",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    build_parser.add_argument("code_file", help="Generator rows, one per line")
    build_parser.add_argument(
        "--dim", choices=["3", "4", "auto"], default="auto", help="Ambient dimension"
    )
    build_parser.add_argument("--output", "-o", required=True, help="Bundle directory")

    # 'verify' command
    verify_parser = subparsers.add_parser(
        "verify",
        help="Re-run every check on a bundle",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    verify_parser.add_argument("code_file", help="Generator rows, one per line")
    verify_parser.add_argument("bundle", help="Bundle directory")

    # 'export' command
    export_parser = subparsers.add_parser(
        "export",
        help="Write a bundle as an OFF mesh",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    export_parser.add_argument("bundle", help="Bundle directory")
    export_parser.add_argument("--output", "-o", required=True, help="OFF file")
    export_parser.add_argument(
        "--project",
        choices=["drop-w"],
        default=None,
        help="Projection for R^4 bundles (output is not certified)",
    )

    # 'graph' command
    graph_parser = subparsers.add_parser(
        "graph",
        help="Convert between graphs and codes",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    graph_subparsers = graph_parser.add_subparsers(dest="graph_command", help="Graph command")
    cut_parser = graph_subparsers.add_parser(
        "cut-space",
        help="Print the cut space of a graph as a code",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    cut_parser.add_argument("graph_file", help="Graph file ('V n' then 'a b' lines)")
    cycle_parser = graph_subparsers.add_parser(
        "cycle-space",
        help="Print the cycle space of a graph as a code",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    cycle_parser.add_argument("graph_file", help="Graph file ('V n' then 'a b' lines)")
    basis_parser = graph_subparsers.add_parser(
        "from-basis",
        help="Print a graph whose cut space is the code",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    basis_parser.add_argument("code_file", help="Generator rows, one per line")

    # 'builders' command
    builders_parser = subparsers.add_parser(
        "builders",
        help="Manage representation builders",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    builders_subparsers = builders_parser.add_subparsers(
        dest="builders_command", help="Builders command"
    )
    builders_subparsers.add_parser(
        "list",
        help="List active builders",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    builders_subparsers.add_parser(
        "status",
        help="Show builder status",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )

    return parser


def _emit_json(data: Dict[str, Any]) -> None:
    print(json.dumps(data, indent=2, sort_keys=True))


def _print_verification(report: VerificationReport) -> None:
    for check in report.checks:
        mark = "ok" if check.passed else "FAILED"
        detail = f" ({check.detail})" if check.detail else ""
        print(f"  {check.name:<16} {mark}{detail}")
    if report.geometry is not None:
        geo = report.geometry
        print(f"  {'geometry':<16} {'ok' if geo.passed else 'FAILED'} ({geo.pairs_checked} pairs)")
        for v in geo.violations:
            print(f"    {v.kind} {list(v.triangles)} {v.detail}")
    algebra = "OK" if report.algebra_ok else "FAILED"
    geometry = "OK" if report.geometry_ok else "FAILED"
    print(f"verified: algebra {algebra}, geometry {geometry}")


def handle_analyze_command(args: argparse.Namespace) -> int:
    """Handle the 'analyze' command."""
    code = read_code(args.code_file)
    analysis = analyze_code(code)
    if args.json:
        _emit_json(analysis.to_dict())
        return 0

    print(f"n={analysis.length}")
    print(f"dim={analysis.dim}")
    print(f"2-basis: {'yes' if analysis.two_basis.found else 'no'}")
    if analysis.two_basis.found:
        print("witness:")
        for b in analysis.two_basis.basis or []:
            print(f"  {b.to_string()}")
        print(f"coordinate-load: {' '.join(str(x) for x in analysis.two_basis.coordinate_load)}")
    print(f"min-dim: {analysis.min_dim}")
    if analysis.graph is not None:
        print("graph:")
        for line in format_graph(analysis.graph).splitlines():
            print(f"  {line}")
    for note in analysis.notes:
        print(f"note: {note}")
    return 0


def handle_build_command(args: argparse.Namespace) -> int:
    """Handle the 'build' command."""
    config = load_config(args.config)
    code = read_code(args.code_file)
    search = find_two_basis(code)
    dim = representations.resolve_dimension(code, args.dim, search)
    if dim == 3 and not search.found:
        logger.error(
            f"Code n={code.length}, d={code.dim} has no 2-basis and cannot be represented in R^3"
        )
        return 1

    builder = representations.get_builder(dim)
    logger.info(f"Building n={code.length}, d={code.dim} in R^{dim} with '{builder.name}'")
    basis = search.basis if dim == 3 else None
    rep = representations.build(code, dimension=dim, basis=basis, config=config)
    logger.info(f"Verifying {len(rep.complex.triangles)} triangles")
    report = verify_representation(code, rep, geometry=True, workers=config["workers"])
    if args.json:
        _emit_json({"dim": dim, "bundle": args.output, **report.to_dict()})
    else:
        _print_verification(report)
    if not report.passed:
        logger.error("Verification failed; no bundle written")
        return 1

    write_bundle(rep, args.output)
    if not args.json:
        print(f"wrote R^{dim} bundle to {args.output}")
    return 0


def handle_verify_command(args: argparse.Namespace) -> int:
    """Handle the 'verify' command."""
    config = load_config(args.config)
    code = read_code(args.code_file)
    rep = read_bundle(args.bundle)
    report = verify_representation(code, rep, geometry=True, workers=config["workers"])
    if args.json:
        _emit_json(report.to_dict())
    else:
        _print_verification(report)
    if not report.passed:
        logger.error(f"Bundle {args.bundle} does not represent {args.code_file}")
        return 1
    return 0


def handle_export_command(args: argparse.Namespace) -> int:
    """Handle the 'export' command."""
    rep = read_bundle(args.bundle)
    emb = rep.embedding
    if emb.dimension == 4:
        if args.project is None:
            raise DimensionError("R^4 bundle needs --project drop-w")
        emb = project_r4(emb)
        logger.warning("Exporting a projection; the mesh is not certified")
    with open(args.output, "wb") as f:
        f.write(export_off(rep.complex, emb))
    print(f"wrote {len(rep.complex.triangles)} faces to {args.output}")
    return 0


def handle_graph_command(args: argparse.Namespace) -> int:
    """Handle the 'graph' command and its subcommands."""
    if not args.graph_command:
        logger.error("No graph subcommand specified")
        return 1

    if args.graph_command in ("cut-space", "cycle-space"):
        graph = read_graph(args.graph_file)
        if args.graph_command == "cut-space":
            code, _ = cut_space(graph)
        else:
            code = cycle_space(graph)
        sys.stdout.write(format_code(code))
        return 0
    elif args.graph_command == "from-basis":
        code = read_code(args.code_file)
        report = find_two_basis(code)
        if not report.found:
            logger.error(f"Code n={code.length}, d={code.dim} has no 2-basis; it is not a cut space")
            return 1
        sys.stdout.write(format_graph(graph_from_two_basis(report.basis or [], code.length)))
        return 0
    else:
        logger.error(f"Unknown graph subcommand: {args.graph_command}")
        return 1


def handle_builders_list_command(args: argparse.Namespace) -> int:
    """Handle the 'builders list' command."""
    names = representations.get_builders()
    if not names:
        print("No active builders")
        return 0
    print("Active builders:")
    for name in names:
        print(f"  - {name}")
    return 0


def handle_builders_status_command(args: argparse.Namespace) -> int:
    """Handle the 'builders status' command."""
    status = representations.get_builder_status()
    if not status:
        print("No builders registered")
        return 0

    print("Builder status:")
    max_name_length = max(len(name) for name in status)
    print(f"  {'BUILDER':{max_name_length}}  {'DIM':<5}  {'PRIORITY':<10}  {'STATUS':<10}  {'CLASS'}")
    print(f"  {'-' * max_name_length}  {'-' * 5}  {'-' * 10}  {'-' * 10}  {'-' * 20}")
    for name, info in sorted(status.items(), key=lambda x: x[1]["priority"]):
        state = "Enabled" if info["enabled"] else "Disabled"
        print(
            f"  {name:{max_name_length}}  {info['dimension']:<5}  {info['priority']:<10}  {state:<10}  {info['class']}"
        )
    return 0


def handle_builders_command(args: argparse.Namespace) -> int:
    """Handle the 'builders' command and its subcommands."""
    if not args.builders_command:
        logger.error("No builders subcommand specified")
        return 1

    if args.builders_command == "list":
        return handle_builders_list_command(args)
    elif args.builders_command == "status":
        return handle_builders_status_command(args)
    else:
        logger.error(f"Unknown builders subcommand: {args.builders_command}")
        return 1


HANDLERS = {
    "analyze": handle_analyze_command,
    "build": handle_build_command,
    "verify": handle_verify_command,
    "export": handle_export_command,
    "graph": handle_graph_command,
    "builders": handle_builders_command,
}


def main(argv=None) -> int:
    """Main entry point for the CLI."""
    parser = setup_argparse()
    args = parser.parse_args(argv)

    # Set up logging based on verbosity flag
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    # If no command is specified, show help
    if not args.command:
        parser.print_help()
        return 1

    handler = HANDLERS.get(args.command)
    if handler is None:
        logger.error(f"Unknown command: {args.command}")
        parser.print_help()
        return 1

    try:
        return handler(args)
    except (FormatError, OSError, DimensionError, EmptyGraphError) as e:
        logger.error(f"{args.command}: {e}")
        return 2
    except TrirepError as e:
        logger.error(f"{args.command}: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
