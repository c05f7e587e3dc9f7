"""Deterministic JSON text and atomic file output for the CLI."""

from __future__ import annotations

import json
import os
import tempfile


def dump_json(obj) -> str:
    """Stable JSON text: fixed key order (insertion), lossless floats,
    trailing newline."""
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def atomic_write_text(path: str, text: str) -> None:
    """Write via a sibling temp file and rename, so failures leave nothing
    partial behind."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def atomic_write_many(outputs: dict[str, str]) -> None:
    """Write a set of files all-or-nothing: stage every temp first, then
    rename. An error while staging removes all temps and writes no target."""
    staged: list[tuple[str, str]] = []
    try:
        for path, text in outputs.items():
            directory = os.path.dirname(os.path.abspath(path))
            fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
            staged.append((tmp, path))
    except BaseException:
        for tmp, _ in staged:
            try:
                os.unlink(tmp)
            except OSError:
                pass
        raise
    for tmp, path in staged:
        os.replace(tmp, path)
