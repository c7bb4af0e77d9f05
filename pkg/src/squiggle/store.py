"""Library persistence and gesture-corpus ingestion.

Library files are versioned JSON: milestone points only (matrices are cheap
and rebuilt on load), serialized with full float round-trip precision —
save-then-load reproduces coordinates bit-for-bit.

The dataset reader ingests the common unistroke-corpus layout: one XML file
per gesture, ``<Point X=".." Y=".." T=".."/>`` children under a ``<Gesture>``
root, organized in per-subject (and usually per-speed) directories.
"""

from __future__ import annotations

import json
import math
import os
import re
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence
from xml.etree import ElementTree

from .errors import (
    DuplicateName,
    IoFailure,
    NoSamplesFound,
    ParseError,
    VersionMismatch,
)
from .pipeline import DEFAULT_MILESTONES
from .recognizer import RecognizerConfig, Template, template_from_milestones

LIBRARY_FORMAT = "squiggle-library"
LIBRARY_VERSION = 1

_SPEEDS = ("fast", "medium", "slow")


# ---------------------------------------------------------------------------
# library files


def save_library(library: Sequence[Template], destination) -> None:
    """Write *library* to *destination* atomically (temp file + rename).

    Raises ValueError on an empty library and IoFailure on filesystem
    trouble. Output is indented JSON with keys in a stable order, so library
    files diff cleanly under version control.
    """
    if not library:
        raise ValueError("cannot save an empty library")
    write_library_document(library, destination)


def write_library_document(library: Sequence[Template], destination,
                           n: Optional[int] = None) -> None:
    """Like save_library but permits an empty template list (the streaming
    service may legitimately persist a library the user has emptied out).
    *n* is only consulted when the library is empty."""
    n = len(library[0].milestones) if library else (n or DEFAULT_MILESTONES)
    doc = {
        "format": LIBRARY_FORMAT,
        "version": LIBRARY_VERSION,
        "n": n,
        "templates": [
            {
                "name": t.name,
                "mirror_allowed": t.mirror_allowed,
                "orientation_gate": t.orientation_gate,
                "milestones": [[p[0], p[1]] for p in t.milestones],
            }
            for t in library
        ],
    }
    destination = os.fspath(destination)
    directory = os.path.dirname(destination) or "."
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(doc, fh, indent=2)
                fh.write("\n")
            umask = os.umask(0)
            os.umask(umask)
            os.chmod(tmp, 0o666 & ~umask)
            os.replace(tmp, destination)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise
    except OSError as exc:
        raise IoFailure(f"cannot write library to {destination}: {exc}") from exc


def load_library(source, cfg: Optional[RecognizerConfig] = None) -> list[Template]:
    """Read a library file back into Template objects, rebuilding matrices.

    Raises ParseError (with line/position where available), VersionMismatch,
    or DuplicateName. When *cfg* is given, its n must agree with the file's.
    """
    source = os.fspath(source)
    try:
        text = Path(source).read_text()
    except OSError as exc:
        raise IoFailure(f"cannot read library from {source}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: invalid JSON: {exc.msg}",
                         line=exc.lineno, position=exc.colno) from exc
    if not isinstance(doc, dict) or doc.get("format") != LIBRARY_FORMAT:
        raise ParseError(f"{source}: not a {LIBRARY_FORMAT} file")
    version = doc.get("version")
    if version != LIBRARY_VERSION:
        raise VersionMismatch(
            f"{source}: file version {version!r}, supported version {LIBRARY_VERSION}")
    n = doc.get("n")
    if not isinstance(n, int) or n < 3:
        raise ParseError(f"{source}: bad milestone count n={n!r}")
    if cfg is not None and cfg.n != n:
        raise ParseError(f"{source}: library has n={n}, config expects n={cfg.n}")
    entries = doc.get("templates")
    if not isinstance(entries, list):
        raise ParseError(f"{source}: templates must be a list")
    line_epsilon = (cfg or RecognizerConfig()).line_epsilon
    library: list[Template] = []
    seen = set()
    for i, item in enumerate(entries):
        where = f"{source}: templates[{i}]"
        if not isinstance(item, dict):
            raise ParseError(f"{where}: not an object", position=i)
        name = item.get("name")
        if not isinstance(name, str) or not name:
            raise ParseError(f"{where}: bad name {name!r}", position=i)
        if name in seen:
            raise DuplicateName(f"{source}: duplicate template name {name!r}")
        seen.add(name)
        milestones = item.get("milestones")
        if not isinstance(milestones, list) or len(milestones) != n:
            got = len(milestones) if isinstance(milestones, list) else milestones
            raise ParseError(
                f"{where} ({name}): milestone list must have n={n} points, got {got!r}",
                position=i)
        for p in milestones:
            if (not isinstance(p, (list, tuple)) or len(p) != 2
                    or not all(isinstance(v, (int, float)) and math.isfinite(v) for v in p)):
                raise ParseError(f"{where} ({name}): bad point {p!r}", position=i)
        library.append(template_from_milestones(
            name, milestones,
            mirror_allowed=bool(item.get("mirror_allowed", True)),
            orientation_gate=bool(item.get("orientation_gate", True)),
            line_epsilon=line_epsilon,
        ))
    return library


def fixture_library_path(name: str) -> Path:
    """Path of a fixture library shipped with the package ("demo15" or
    "prototype33"), or the raw dense sources behind demo15 ("demo15_raw")."""
    data_dir = Path(__file__).parent / "data"
    p = data_dir / f"{name}.json"
    if not p.is_file():
        available = sorted(f.stem for f in data_dir.glob("*.json"))
        raise ValueError(f"no fixture {name!r}; available: {available}")
    return p


# ---------------------------------------------------------------------------
# gesture files and datasets


@dataclass(frozen=True)
class GestureSample:
    subject: str
    glyph_label: str
    speed: str  # fast | medium | slow
    raw: list  # list of (x, y) or (x, y, t_ms)


@dataclass(frozen=True)
class DatasetLoadResult:
    samples: list
    warnings: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.samples)


def _strip_label(stem: str) -> str:
    return re.sub(r"[\s_\-~]*\d+$", "", stem)


def _parse_gesture_xml(path: Path):
    """(label_stem, subject, speed, points) from one gesture XML file."""
    tree = ElementTree.parse(path)
    root = tree.getroot()
    points = []
    for el in root.iter():
        if el.tag.lower() != "point":
            continue
        attrs = {k.lower(): v for k, v in el.attrib.items()}
        x = float(attrs["x"])
        y = float(attrs["y"])
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ValueError(f"non-finite point in {path}")
        t = attrs.get("t", attrs.get("time"))
        points.append((x, y, float(t)) if t is not None else (x, y))
    attrs = {k.lower(): v for k, v in root.attrib.items()}
    stem = attrs.get("name") or path.stem
    subject = attrs.get("subject")
    speed = attrs.get("speed")
    if speed is not None:
        speed = speed.lower()
    return stem, subject, speed, points


def load_gesture_dataset(root_path) -> DatasetLoadResult:
    """Walk *root_path* for per-gesture XML files (sorted, so runs are
    reproducible), deriving labels from gesture names with trailing sample
    digits stripped ("circle01" -> "circle"). Unreadable or malformed files
    become warnings, not failures; an empty harvest raises NoSamplesFound.
    """
    root = Path(root_path)
    samples: list[GestureSample] = []
    warnings: list[str] = []
    files = sorted(root.rglob("*.xml")) if root.is_dir() else []
    for f in files:
        try:
            stem, subject, speed, points = _parse_gesture_xml(f)
        except (OSError, ValueError, KeyError, ElementTree.ParseError) as exc:
            warnings.append(f"{f}: {exc}")
            continue
        if not points:
            warnings.append(f"{f}: no points")
            continue
        rel_parts = [p.lower() for p in f.relative_to(root).parts[:-1]]
        if subject is None:
            subject = rel_parts[0] if rel_parts else ""
        if speed not in _SPEEDS:
            speed = next((p for p in rel_parts if p in _SPEEDS), "medium")
        label = _strip_label(stem).lower()
        if not label:
            warnings.append(f"{f}: empty label after stripping digits from {stem!r}")
            continue
        samples.append(GestureSample(subject=subject, glyph_label=label,
                                     speed=speed, raw=points))
    if not samples:
        raise NoSamplesFound(f"no gesture samples under {root}")
    return DatasetLoadResult(samples=samples, warnings=warnings)


def load_gesture_file(path) -> list:
    """One gesture path from a file: either a dataset-style XML file or JSON
    (a bare [[x, y], ...] array, or an object with a "points" member)."""
    p = Path(path)
    if p.suffix.lower() == ".xml":
        _, _, _, points = _parse_gesture_xml(p)
        if not points:
            raise ParseError(f"{p}: no points")
        return points
    try:
        doc = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{p}: invalid JSON: {exc.msg}",
                         line=exc.lineno, position=exc.colno) from exc
    except OSError as exc:
        raise IoFailure(f"cannot read gesture from {p}: {exc}") from exc
    if isinstance(doc, dict):
        doc = doc.get("points")
    if not isinstance(doc, list) or not doc:
        raise ParseError(f"{p}: expected a non-empty point array")
    return [tuple(float(v) for v in pt) for pt in doc]
