"""Command-line entry points.

    squiggle add-template   --library FILE NAME GESTURE_FILE
    squiggle recognize      --library FILE GESTURE_FILE
    squiggle bench          --library FILE --dataset DIR
    squiggle export-shadow  --library FILE GESTURE_FILE OUT_SVG
    squiggle serve          --library FILE --port PORT

Every command accepts the engine tuning flags (--n, --segment-length, --m,
--allow, --line-epsilon, --orientation/--no-orientation,
--similarity-threshold); defaults reproduce the reference behavior.

Exit codes: 0 success/match, 2 tap, 3 no surviving match, 1 any error.
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from . import bench as bench_mod
from .errors import SquiggleError
from .ntm import Dimensionality
from .recognizer import RecognizerConfig, add_template, analyze, recognize_analyzed
from .service import match_payload, serve as run_service
from .store import (
    fixture_library_path,
    load_gesture_dataset,
    load_gesture_file,
    load_library,
    save_library,
)
from .svgexport import render_match_svg

EXIT_MATCH = 0
EXIT_ERROR = 1
EXIT_TAP = 2
EXIT_NO_MATCH = 3

_DEFAULTS = RecognizerConfig()


def config_options(fn):
    """Engine tuning flags shared by every command."""
    opts = [
        click.option("--n", type=int, default=_DEFAULTS.n, show_default=True,
                      help="Milestone count per path."),
        click.option("--segment-length", type=float,
                      default=_DEFAULTS.segment_length, show_default=True,
                      help="Regularization step, px."),
        click.option("--m", type=int, default=_DEFAULTS.m, show_default=True,
                      help="Target number of pivot triangles."),
        click.option("--allow", type=int, default=_DEFAULTS.allow,
                      show_default=True, help="Pivot count slack."),
        click.option("--line-epsilon", type=float,
                      default=_DEFAULTS.line_epsilon, show_default=True,
                      help="Line-glyph threshold on |matrix entries|."),
        click.option("--orientation/--no-orientation",
                      default=_DEFAULTS.orientation_enabled, show_default=True,
                      help="Gate matches on triangle orientation similarity."),
        click.option("--similarity-threshold", type=float,
                      default=_DEFAULTS.similarity_threshold, show_default=True,
                      help="Orientation-gate threshold in (-3, 3)."),
    ]
    for opt in reversed(opts):
        fn = opt(fn)

    @functools.wraps(fn)
    def wrapper(*args, **kw):
        cfg = RecognizerConfig(
            n=kw.pop("n"),
            segment_length=kw.pop("segment_length"),
            m=kw.pop("m"),
            allow=kw.pop("allow"),
            line_epsilon=kw.pop("line_epsilon"),
            orientation_enabled=kw.pop("orientation"),
            similarity_threshold=kw.pop("similarity_threshold"),
        )
        return fn(*args, cfg=cfg, **kw)

    return wrapper


def _fail(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_ERROR)


def _load_library_arg(library: str, cfg: RecognizerConfig):
    path = Path(library)
    if not path.exists():
        fixture = fixture_library_path(path.stem) if path.suffix == "" else None
        if fixture is not None and Path(fixture).exists():
            path = Path(fixture)
    return load_library(path, cfg)


@click.group()
@click.version_option(package_name="squiggle")
def main():
    """Glyph recognition by largest-triangle affine matching."""


@main.command("add-template")
@click.option("--library", required=True, help="Library file (created if missing).")
@click.option("--mirror/--no-mirror", "mirror_allowed", default=True,
              show_default=True, help="Allow mirrored matches of this template.")
@click.option("--orientation-gate/--no-orientation-gate", default=True,
              show_default=True,
              help="Subject this template to the orientation gate when enabled.")
@click.argument("name")
@click.argument("gesture_file")
@config_options
def cli_add_template(library, mirror_allowed, orientation_gate, name,
                     gesture_file, cfg):
    """Add GESTURE_FILE to the library as template NAME."""
    try:
        lib = load_library(library, cfg) if Path(library).exists() else []
        points = load_gesture_file(gesture_file)
        add_template(lib, name, points, mirror_allowed=mirror_allowed,
                     cfg=cfg, orientation_gate=orientation_gate)
        save_library(lib, library)
    except (SquiggleError, OSError, ValueError) as exc:
        _fail(str(exc))
    click.echo(f"added {name!r}; library now holds {len(lib)} templates")


def _recognized(library, gesture_file, cfg):
    lib = _load_library_arg(library, cfg)
    points = load_gesture_file(gesture_file)
    ana = analyze(points, cfg)
    return points, ana, recognize_analyzed(ana, lib, cfg)


@main.command("recognize")
@click.option("--library", required=True, help="Library file or fixture name.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
@click.argument("gesture_file")
@config_options
def cli_recognize(library, as_json, gesture_file, cfg):
    """Recognize GESTURE_FILE against the library."""
    try:
        _, ana, result = _recognized(library, gesture_file, cfg)
    except (SquiggleError, OSError, ValueError) as exc:
        _fail(str(exc))
    if ana.dimensionality is Dimensionality.TAP:
        click.echo(json.dumps({"result": "tap"}) if as_json else "tap")
        sys.exit(EXIT_TAP)
    payload = match_payload(result, ana)
    if payload is None:
        click.echo(json.dumps({"result": "no-match"}) if as_json else "no match")
        sys.exit(EXIT_NO_MATCH)
    if as_json:
        click.echo(json.dumps({"result": "match", "match": payload}))
    else:
        a, b, c = payload["triangle"]
        click.echo(f"template:       {payload['template']}")
        click.echo(f"metric:         {payload['metric']:.6f}")
        click.echo(f"normalized:     {payload['normalized_metric']:.8f}")
        click.echo(f"triangle:       ({a}, {b}, {c})")
        click.echo(f"dimensionality: {payload['dimensionality']}")
    sys.exit(EXIT_MATCH)


@main.command("export-shadow")
@click.option("--library", required=True, help="Library file or fixture name.")
@click.argument("gesture_file")
@click.argument("out_svg")
@config_options
def cli_export_shadow(library, gesture_file, out_svg, cfg):
    """Render GESTURE_FILE, its largest triangle, and the winning shadow
    to OUT_SVG. No file is written on tap or no-match."""
    try:
        points, ana, result = _recognized(library, gesture_file, cfg)
    except (SquiggleError, OSError, ValueError) as exc:
        _fail(str(exc))
    if ana.dimensionality is Dimensionality.TAP:
        click.echo("tap", err=True)
        sys.exit(EXIT_TAP)
    if result is None:
        click.echo("no match", err=True)
        sys.exit(EXIT_NO_MATCH)
    try:
        Path(out_svg).write_text(render_match_svg(points, ana, result))
    except OSError as exc:
        _fail(str(exc))
    click.echo(f"wrote {out_svg} ({result.template_name})")
    sys.exit(EXIT_MATCH)


@main.command("bench")
@click.option("--library", required=True, help="Library file or fixture name.")
@click.option("--dataset", required=True,
              help="Root directory of the gesture corpus.")
@click.option("--repeats", type=int, default=1, show_default=True,
              help="Timing repetitions per sample.")
@click.option("--out-text", default="squiggle-bench.txt", show_default=True)
@click.option("--out-csv", default="squiggle-bench.csv", show_default=True)
@config_options
def cli_bench(library, dataset, repeats, out_text, out_csv, cfg):
    """Run the recognition benchmark over a gesture corpus."""
    try:
        lib = _load_library_arg(library, cfg)
        loaded = load_gesture_dataset(dataset)
        report = bench_mod.run_benchmark(loaded.samples, lib, cfg,
                                         repeats=repeats)
        Path(out_text).write_text(bench_mod.render_report(report, "text"))
        Path(out_csv).write_text(bench_mod.render_report(report, "csv"))
    except (SquiggleError, OSError, ValueError) as exc:
        _fail(str(exc))
    for w in loaded.warnings:
        click.echo(f"warning: {w}", err=True)
    click.echo(
        f"{report.correct}/{report.total} correct "
        f"({report.accuracy * 100:.2f}%), "
        f"{report.per_sample_ms:.3f} ms/sample; "
        f"reports: {out_text}, {out_csv}"
    )
    sys.exit(EXIT_MATCH)


@main.command("serve")
@click.option("--library", required=True,
              help="Library file; mutations persist here (created if missing).")
@click.option("--port", type=int, default=8765, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True,
              help="Bind address; local-only unless overridden.")
@config_options
def cli_serve(library, port, host, cfg):
    """Run the streaming recognition service until interrupted."""
    try:
        run_service(library, port=port, cfg=cfg, host=host)
    except (SquiggleError, OSError, ValueError) as exc:
        _fail(str(exc))


if __name__ == "__main__":
    main()
