"""
ydtwist - exact Hopf algebra, Nichols algebra and two-cocycle twist toolkit

Runs scenario files through the construction and verification pipelines and
exports the resulting structure constants.
"""

import argparse
import sys
from typing import List, Optional

from app import __version__
from app.cli.commands import export_command, gallery_command, list_objects_command, run_command
from app.cli.gallery import GALLERY
from app.core.logging import setup_logging


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ydtwist",
        description="Build and verify biproducts of truncated Nichols algebras and their cocycle twists.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None,
                        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
                        help="Override LOG_LEVEL from the environment")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Run every pipeline a scenario requests")
    run.add_argument("scenario", help="Scenario JSON file")
    run.add_argument("--out", default=None, help="Output directory for the reports")
    run.add_argument("--cap", type=int, default=None, help="Nichols truncation degree")

    gallery = sub.add_parser("gallery", help="Emit a canonical scenario")
    gallery.add_argument("name", choices=sorted(GALLERY))
    gallery.add_argument("--out", default=None, help="Write to this file instead of stdout")

    export = sub.add_parser("export", help="Export one constructed object as JSON")
    export.add_argument("scenario", help="Scenario JSON file")
    export.add_argument("object_id", help="Object id, see list-objects")
    export.add_argument("out", help="Destination JSON file")
    export.add_argument("--cap", type=int, default=None, help="Nichols truncation degree")

    objects = sub.add_parser("list-objects", help="List the exportable objects of a scenario")
    objects.add_argument("scenario", help="Scenario JSON file")
    objects.add_argument("--cap", type=int, default=None, help="Nichols truncation degree")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)

    if args.command == "run":
        return run_command(args.scenario, args.out, args.cap)
    if args.command == "gallery":
        return gallery_command(args.name, args.out)
    if args.command == "export":
        return export_command(args.scenario, args.object_id, args.out, args.cap)
    return list_objects_command(args.scenario, args.cap)


if __name__ == "__main__":
    sys.exit(main())
