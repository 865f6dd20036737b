"""
Command implementations behind the ydtwist CLI
"""

from pathlib import Path
from typing import Optional

from app.cli.gallery import gallery_scenario
from app.core.config import settings
from app.core.exceptions import handle_cli_exception
from app.core.logging import get_logger
from app.services.pipeline import PipelineRunner, render_text_report
from app.services.serialization import dump_scenario, load_scenario, write_json, write_model

logger = get_logger(__name__)


def run_command(scenario_path: str, out_dir: Optional[str] = None, cap: Optional[int] = None) -> int:
    """
    Run a scenario and write its reports

    Writes report.json, report.txt, hilbert.json and relations.txt into
    ``out_dir``. The exit code is 0 only when every suite passed.
    """
    try:
        scenario = load_scenario(Path(scenario_path))
        runner = PipelineRunner(scenario, cap=cap)
        report = runner.run()
        out = Path(out_dir or settings.OUTPUT_DIR)
        write_model(report, out / "report.json")
        (out / "report.txt").write_text(render_text_report(report), encoding="utf-8")
        write_json(report.hilbert, out / "hilbert.json")
        relations = []
        for name, lines in sorted(report.relations.items()):
            relations.append(f"# {name}")
            relations.extend(lines)
            relations.append("")
        (out / "relations.txt").write_text("\n".join(relations), encoding="utf-8")
        logger.info("run_finished", scenario=scenario.name, status=report.status.value,
                    exit_code=report.exit_code, out=str(out))
        print(f"{scenario.name}: {report.status.value} ({len(report.suites)} suites) -> {out}")
        return report.exit_code
    except Exception as exc:
        return handle_cli_exception(exc, "run")


def gallery_command(name: str, out: Optional[str] = None) -> int:
    """Write the canonical scenario ``name`` to ``out``, or print it"""
    try:
        scenario = gallery_scenario(name)
        text = dump_scenario(scenario, Path(out) if out else None)
        if out is None:
            print(text, end="")
        else:
            logger.info("gallery_written", name=name, path=out)
        return 0
    except Exception as exc:
        return handle_cli_exception(exc, "gallery")


def export_command(scenario_path: str, object_id: str, out: str, cap: Optional[int] = None) -> int:
    """Re-run a scenario and export one constructed object as structure-constant JSON"""
    try:
        runner = PipelineRunner(load_scenario(Path(scenario_path)), cap=cap)
        runner.run()
        write_model(runner.export(object_id), Path(out))
        logger.info("object_exported", object_id=object_id, path=out)
        return 0
    except Exception as exc:
        return handle_cli_exception(exc, "export")


def list_objects_command(scenario_path: str, cap: Optional[int] = None) -> int:
    """Print the exportable object ids of a scenario, one per line"""
    try:
        runner = PipelineRunner(load_scenario(Path(scenario_path)), cap=cap)
        runner.run()
        for object_id in runner.objects:
            print(object_id)
        return 0
    except Exception as exc:
        return handle_cli_exception(exc, "list-objects")
