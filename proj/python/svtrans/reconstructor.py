"""Glue for writing an external reconstructor in Python.

The cloud node runs the configured command with a working directory that
holds ``lr.raw`` (+ ``lr.hdr``), ``key_NNNNNN.png`` named by original frame
index and ``indices.txt`` (key indices, then redundant indices, one
comma-separated line each). The command must leave ``hr.raw`` there.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _core


@dataclass
class Request:
    lr: np.ndarray  # surviving LR frames
    fps: tuple[int, int]
    keys: list[int]  # original 1-based positions
    redundant: list[int]
    keyframes: list[np.ndarray]  # aligned with keys

    def key_slots(self) -> list[int]:
        """Key positions within the surviving LR frames (1-based)."""
        red = set(self.redundant)
        slots = []
        for k in self.keys:
            slots.append(k - sum(1 for r in red if r < k))
        return slots


def _parse_line(line: str) -> list[int]:
    line = line.strip()
    return [int(v) for v in line.split(",")] if line else []


def load_request(workdir: str) -> Request:
    lr, fps = _core.read_raw(os.path.join(workdir, "lr.raw"))
    with open(os.path.join(workdir, "indices.txt")) as f:
        lines = f.read().split("\n")
    keys = _parse_line(lines[0]) if lines else []
    redundant = _parse_line(lines[1]) if len(lines) > 1 else []
    keyframes = [_core.read_png(os.path.join(workdir, f"key_{k:06d}.png")) for k in keys]
    return Request(lr, tuple(fps), keys, redundant, keyframes)


def run_external_reconstructor(model: Callable[[Request], np.ndarray], argv: list[str] | None = None) -> int:
    """Entry point for ``python -m yourmodel WORKDIR``; model returns HR frames."""
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) != 1:
        print("usage: reconstructor WORKDIR", file=sys.stderr)
        return 1
    req = load_request(argv[0])
    hr = np.ascontiguousarray(model(req), dtype=np.uint8)
    _core.write_raw(os.path.join(argv[0], "hr.raw"), hr, *req.fps)
    return 0


def bicubic(req: Request) -> np.ndarray:
    """Reference model: bicubic upsampling with key frames substituted."""
    out = np.stack([_core.upsample(f) for f in req.lr])
    for slot, key in zip(req.key_slots(), req.keyframes):
        out[slot - 1] = key
    return out


if __name__ == "__main__":
    sys.exit(run_external_reconstructor(bicubic))
