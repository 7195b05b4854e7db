"""Exact on-disk cache of correlator tensors and the calibration record.

One JSON file per (f, g, h, kernel sign, shift-recursion sign), holding the
tensor with rationals serialized as decimal ``p/q`` strings, a format
version and a content checksum.  A version or checksum mismatch triggers
recomputation; stale files are never silently reused.  The calibration
record (``conventions.json``) persists the signs discovered on first use of
a cache directory, plus the global energy sign once an energy run has
established it.
"""

from __future__ import annotations

import hashlib
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .recursion import Conventions, CorrDiff
from .scalars import format_rational, parse_rational

FORMAT_VERSION = 1
ENV_CACHE_DIR = "EOREC_CACHE_DIR"


def _canonical(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _checksum(payload: dict) -> str:
    return hashlib.sha256(_canonical(payload).encode("utf-8")).hexdigest()


def corrdiff_payload(w: CorrDiff, conventions: Conventions) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "f": w.f,
        "g": w.g,
        "h": w.h,
        "sigma_kernel": conventions.sigma_kernel,
        "sigma_psirec": conventions.sigma_psirec,
        "terms": [
            {"n": list(idx), "c": format_rational(c)}
            for idx, c in sorted(w.coeffs.items())
        ],
    }


def corrdiff_from_payload(payload: dict) -> CorrDiff:
    coeffs = {tuple(t["n"]): parse_rational(t["c"]) for t in payload["terms"]}
    return CorrDiff(g=payload["g"], h=payload["h"], f=payload["f"], coeffs=coeffs)


class CorrCache:
    def __init__(self, directory: str | os.PathLike):
        self.dir = Path(directory)
        self.dir.mkdir(parents=True, exist_ok=True)

    def _path(self, f: int, g: int, h: int, conv: Conventions) -> Path:
        name = f"corr_f{f}_g{g}_h{h}_k{conv.sigma_kernel}_p{conv.sigma_psirec}.json"
        return self.dir / name

    def load(self, f: int, g: int, h: int, conv: Conventions) -> CorrDiff | None:
        path = self._path(f, g, h, conv)
        if not path.exists():
            return None
        try:
            blob = json.loads(path.read_text(encoding="utf-8"))
            stored = blob.pop("checksum")
        except (json.JSONDecodeError, KeyError, OSError):
            print(f"eorec: unreadable cache file {path.name}, recomputing",
                  file=sys.stderr)
            return None
        if blob.get("format_version") != FORMAT_VERSION or stored != _checksum(blob):
            print(f"eorec: stale or corrupt cache file {path.name}, recomputing",
                  file=sys.stderr)
            return None
        key = (blob.get("f"), blob.get("g"), blob.get("h"),
               blob.get("sigma_kernel"), blob.get("sigma_psirec"))
        if key != (f, g, h, conv.sigma_kernel, conv.sigma_psirec):
            print(f"eorec: mismatched cache key in {path.name}, recomputing",
                  file=sys.stderr)
            return None
        return corrdiff_from_payload(blob)

    def store(self, w: CorrDiff, conv: Conventions) -> None:
        payload = corrdiff_payload(w, conv)
        payload["checksum"] = _checksum(
            {k: v for k, v in payload.items() if k != "checksum"})
        path = self._path(w.f, w.g, w.h, conv)
        path.write_text(_canonical(payload) + "\n", encoding="utf-8")

    # -- calibration record -------------------------------------------

    def _conv_path(self) -> Path:
        return self.dir / "conventions.json"

    def load_conventions(self) -> tuple[Conventions, int | None] | None:
        path = self._conv_path()
        if not path.exists():
            return None
        try:
            blob = json.loads(path.read_text(encoding="utf-8"))
            stored = blob.pop("checksum")
        except (json.JSONDecodeError, KeyError, OSError):
            return None
        if blob.get("format_version") != FORMAT_VERSION or stored != _checksum(blob):
            print("eorec: stale calibration record, recalibrating", file=sys.stderr)
            return None
        conv = Conventions(sigma_kernel=blob["sigma_kernel"],
                           sigma_psirec=blob["sigma_psirec"])
        return conv, blob.get("epsilon")

    def store_conventions(self, conv: Conventions, epsilon: int | None) -> None:
        payload = {
            "format_version": FORMAT_VERSION,
            "sigma_kernel": conv.sigma_kernel,
            "sigma_psirec": conv.sigma_psirec,
            "epsilon": epsilon,
        }
        payload["checksum"] = _checksum(payload)
        self._conv_path().write_text(_canonical(payload) + "\n", encoding="utf-8")


def default_cache_dir() -> str | None:
    return os.environ.get(ENV_CACHE_DIR) or None
