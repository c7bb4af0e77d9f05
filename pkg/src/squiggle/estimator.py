"""scikit-learn style wrapper around the recognizer.

X is a sequence of raw paths (each a sequence of (x, y) or (x, y, t) pairs —
ragged, so no ndarray coercion), y the glyph labels. fit() turns every
sample into a template; predict() recognizes. Repeated labels are fine:
each occurrence becomes its own template and predictions report the label,
not the internal template name.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin

from .recognizer import RecognizerConfig, add_template, recognize


class SquiggleClassifier(BaseEstimator, ClassifierMixin):
    """Template matcher with the estimator API.

    Parameters mirror RecognizerConfig, plus the per-template flags applied
    to all fitted templates. predict() returns labels, or None (object
    dtype) for inputs that resolve to taps or survive no gate.
    """

    def __init__(self, n=16, segment_length=3.0, m=8, allow=2,
                 line_epsilon=0.004, degenerate_epsilon=1e-8,
                 similarity_threshold=2.12, orientation_enabled=False,
                 mirror_allowed=True, orientation_gate=True):
        self.n = n
        self.segment_length = segment_length
        self.m = m
        self.allow = allow
        self.line_epsilon = line_epsilon
        self.degenerate_epsilon = degenerate_epsilon
        self.similarity_threshold = similarity_threshold
        self.orientation_enabled = orientation_enabled
        self.mirror_allowed = mirror_allowed
        self.orientation_gate = orientation_gate

    def _config(self) -> RecognizerConfig:
        return RecognizerConfig(
            n=self.n,
            segment_length=self.segment_length,
            m=self.m,
            allow=self.allow,
            line_epsilon=self.line_epsilon,
            degenerate_epsilon=self.degenerate_epsilon,
            similarity_threshold=self.similarity_threshold,
            orientation_enabled=self.orientation_enabled,
        )

    def fit(self, X, y):
        if len(X) != len(y):
            raise ValueError(f"X and y lengths differ: {len(X)} vs {len(y)}")
        if len(X) == 0:
            raise ValueError("cannot fit on an empty sample set")
        cfg = self._config()
        library = []
        labels = {}
        for i, (path, label) in enumerate(zip(X, y)):
            name = f"{label}#{i}"
            add_template(library, name, path,
                         mirror_allowed=self.mirror_allowed, cfg=cfg,
                         orientation_gate=self.orientation_gate)
            labels[name] = label
        self.library_ = library
        self.labels_ = labels
        self.classes_ = np.unique(np.asarray(list(y), dtype=object))
        self.config_ = cfg
        return self

    def predict(self, X):
        if not hasattr(self, "library_"):
            raise AttributeError("estimator is not fitted; call fit first")
        out = []
        for path in X:
            result = recognize(path, self.library_, self.config_)
            if result is None or result.template_name is None:
                out.append(None)
            else:
                out.append(self.labels_[result.template_name])
        return np.asarray(out, dtype=object)
