"""squiggle — affine-invariant glyph and gesture recognition.

A drawn pen path is reduced to 16 equidistant milestone points; the signed
areas of all 560 milestone triangles form a normalized triangle matrix, whose
largest entries pick alignment triangles; affine maps pinned at those
triangles project each template onto the input, and the smallest summed
squared error wins. Matching is invariant to rotation, scale, translation
and (optionally, per template) reflection.
"""

from .errors import (
    DegenerateEdge,
    DuplicateName,
    IndexOutOfRange,
    IoFailure,
    LabelMismatch,
    LengthMismatch,
    NoSamplesFound,
    ParseError,
    PathTooShort,
    SingularTransform,
    SquiggleError,
    VersionMismatch,
    ZeroLengthPath,
)
from .geometry import (
    AffineTransform,
    Point,
    apply,
    det2,
    inverse,
    multiply,
    transform_from_triangle,
)
from .pipeline import RegularPath, interpolate, path_length, regularize
from .ntm import (
    Dimensionality,
    Ntm,
    TriangleIndex,
    build,
    classify,
    entry,
    pivot_for,
    pivot_set,
    top_entry,
)
from .recognizer import (
    AnalyzedPath,
    MatchResult,
    RecognizerConfig,
    Template,
    add_template,
    analyze,
    geometric_metric,
    match,
    project,
    recognize,
    recognize_analyzed,
    template_from_milestones,
    tri_similarity,
)
from .estimator import SquiggleClassifier
from .store import (
    DatasetLoadResult,
    GestureSample,
    fixture_library_path,
    load_gesture_dataset,
    load_gesture_file,
    load_library,
    save_library,
)
from .bench import BenchReport, render_report, run_benchmark
from .svgexport import render_match_svg

__version__ = "0.1.0"

__all__ = [
    "AffineTransform",
    "AnalyzedPath",
    "BenchReport",
    "DatasetLoadResult",
    "DegenerateEdge",
    "Dimensionality",
    "DuplicateName",
    "GestureSample",
    "IndexOutOfRange",
    "IoFailure",
    "LabelMismatch",
    "LengthMismatch",
    "MatchResult",
    "NoSamplesFound",
    "Ntm",
    "ParseError",
    "PathTooShort",
    "Point",
    "RecognizerConfig",
    "RegularPath",
    "SingularTransform",
    "SquiggleClassifier",
    "SquiggleError",
    "Template",
    "TriangleIndex",
    "VersionMismatch",
    "ZeroLengthPath",
    "add_template",
    "analyze",
    "apply",
    "build",
    "classify",
    "det2",
    "entry",
    "fixture_library_path",
    "geometric_metric",
    "interpolate",
    "inverse",
    "load_gesture_dataset",
    "load_gesture_file",
    "load_library",
    "match",
    "multiply",
    "path_length",
    "pivot_for",
    "pivot_set",
    "project",
    "recognize",
    "recognize_analyzed",
    "regularize",
    "render_match_svg",
    "render_report",
    "run_benchmark",
    "save_library",
    "template_from_milestones",
    "top_entry",
    "transform_from_triangle",
    "tri_similarity",
    "__version__",
]
