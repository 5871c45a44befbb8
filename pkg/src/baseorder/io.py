"""JSON interchange for matroids and critical graphs.

A matroid is written as its labelled cyclic flats::

    {"ground": [labels...], "cyclic_flats": [{"set": [labels...], "rank": int}, ...]}

Members of a flat are listed in ground order and flats are sorted by size,
then by their member indices, so equal matroids serialize to equal bytes.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .core import DomainError, Matroid, bits, validate_presentation, Presentation, PresentationError


class FormatError(DomainError):
    """Input is not in the JSON matroid format."""


def matroid_to_dict(m: Matroid) -> dict:
    flats = sorted(m.flats, key=lambda fr: (len(bits(fr[0])), bits(fr[0])))
    return {
        "ground": list(m.labels),
        "cyclic_flats": [{"set": [m.labels[e] for e in bits(f)], "rank": int(r)}
                         for f, r in flats],
    }


def matroid_from_dict(d: dict) -> Matroid:
    try:
        labels = [str(x) for x in d["ground"]]
        raw = [(f["set"], f["rank"]) for f in d["cyclic_flats"]]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"missing field: {exc}") from None
    if len(set(labels)) != len(labels):
        raise FormatError("duplicate labels in ground set")
    index = {x: i for i, x in enumerate(labels)}
    flats = []
    for members, r in raw:
        unknown = [x for x in members if str(x) not in index]
        if unknown:
            raise FormatError(f"flat mentions unknown elements {unknown}")
        if not isinstance(r, int) or isinstance(r, bool):
            raise FormatError(f"rank {r!r} is not an integer")
        flats.append((sum(1 << index[str(x)] for x in members), r))
    p = Presentation.build(len(labels), flats, labels)
    report = validate_presentation(p)
    if not report.ok:
        raise PresentationError(report)
    return Matroid(p, validate=False)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def canonical_hash(m: Matroid) -> str:
    """sha256 of the normalized presentation; labels are part of the identity."""
    return hashlib.sha256(canonical_json(matroid_to_dict(m)).encode()).hexdigest()


def dumps(m: Matroid, provenance: dict | None = None) -> str:
    d = matroid_to_dict(m)
    if provenance is not None:
        d = {"provenance": provenance, **d}
    return json.dumps(d, indent=1)


def loads(text: str) -> Matroid:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    return matroid_from_dict(d)


def load(path) -> Matroid:
    return loads(Path(path).read_text())


def save(m: Matroid, path, provenance: dict | None = None) -> None:
    Path(path).write_text(dumps(m, provenance) + "\n")
