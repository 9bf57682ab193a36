"""Versioned JSON persistence for boosted models.

A model file carries the format version, the prior score and learning rate,
every tree as a flat node array with child indices, the embedded encoding
plan (so prediction-time encoding needs nothing but the model file), a
SHA-256 digest of the plan, and free-form training metadata.  Serialization
is canonical: sorted keys, fixed separators, floats written with full
round-trip precision.  Saving the same model with the same metadata twice
produces identical bytes, and a load reproduces predictions bit for bit.
"""

from __future__ import annotations

import hashlib
import json

from .boost import BoostedModel
from .encode import EncodingPlan
from .errors import CorruptModelError, ModelIOError, VersionMismatchError
from .tree import RegressionTree

FORMAT_VERSION = 1


def _canonical(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _plan_digest(plan_doc) -> str:
    return hashlib.sha256(_canonical(plan_doc).encode("utf-8")).hexdigest()


def model_to_doc(model: BoostedModel, metadata: dict | None = None) -> dict:
    plan_doc = model.plan.to_doc() if model.plan is not None else None
    return {
        "format_version": FORMAT_VERSION,
        "f0": model.f0,
        "learning_rate": model.learning_rate,
        "n_features": model.n_features,
        "trees": [t.to_doc() for t in model.trees],
        "encoding_plan": plan_doc,
        "schema_digest": _plan_digest(plan_doc),
        "metadata": metadata or {},
    }


def model_from_doc(doc: dict) -> tuple[BoostedModel, dict]:
    """Rebuild (model, metadata); validates structure and the plan digest."""
    if not isinstance(doc, dict) or "format_version" not in doc:
        raise CorruptModelError("not a model document")
    if doc["format_version"] != FORMAT_VERSION:
        raise VersionMismatchError(
            f"model format {doc['format_version']!r}, expected {FORMAT_VERSION}"
        )
    try:
        plan_doc = doc["encoding_plan"]
        if _plan_digest(plan_doc) != doc["schema_digest"]:
            raise CorruptModelError("schema digest mismatch")
        plan = EncodingPlan.from_doc(plan_doc) if plan_doc is not None else None
        model = BoostedModel(
            f0=float(doc["f0"]),
            learning_rate=float(doc["learning_rate"]),
            trees=tuple(RegressionTree.from_doc(t) for t in doc["trees"]),
            n_features=int(doc["n_features"]),
            plan=plan,
        )
        return model, doc.get("metadata", {})
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptModelError(f"malformed model file: {exc}") from None


def save_model(model: BoostedModel, path, metadata: dict | None = None) -> None:
    """Write the model as canonical JSON.

    Raises:
        ModelIOError: the path cannot be written.
    """
    text = _canonical(model_to_doc(model, metadata))
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
            fh.write("\n")
    except OSError as exc:
        raise ModelIOError(f"cannot write model to {path}: {exc}") from None


def load_model(path) -> tuple[BoostedModel, dict]:
    """Read a model file back; returns (model, metadata).

    Raises:
        ModelIOError: the path cannot be read.
        VersionMismatchError: unknown format version.
        CorruptModelError: structural validation failure.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ModelIOError(f"cannot read model from {path}: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorruptModelError(f"not valid JSON: {exc}") from None
    return model_from_doc(doc)
