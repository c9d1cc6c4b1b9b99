"""The closed set of coverage criteria and the ``name[:param]`` spec grammar."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path as FsPath

from .errors import SchemaError

KINDS = ("NC", "EC", "BC", "EPC", "APC", "PPC", "SPC", "SRTC", "CRTC", "BPC",
         "WMC", "NSC", "BIC")


@dataclass(frozen=True)
class Criterion:
    kind: str
    param: int = None
    specified: tuple = None
    depth_bound: int = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SchemaError(f"unknown criterion {self.kind!r}")
        if self.kind == "NSC" and (self.param is None or self.param < 0):
            raise SchemaError("NSC needs a switch count N >= 0")
        if self.kind == "SPC" and self.specified is None:
            object.__setattr__(self, "specified", ())
        if self.kind == "BIC":
            bound = 1 if self.depth_bound is None else self.depth_bound
            if bound < 1:
                raise SchemaError("BIC depth bound must be at least 1")
            object.__setattr__(self, "depth_bound", bound)

    @property
    def label(self) -> str:
        if self.kind == "NSC":
            return f"NSC({self.param})"
        if self.kind == "BIC" and self.depth_bound != 1:
            return f"BIC({self.depth_bound})"
        return self.kind

    def __str__(self):
        return self.label


NC, EC, BC, EPC, PPC, SRTC, CRTC, BPC, WMC, APC, BIC = (
    Criterion(k) for k in
    ("NC", "EC", "BC", "EPC", "PPC", "SRTC", "CRTC", "BPC", "WMC", "APC", "BIC"))


def nsc(n: int) -> Criterion:
    return Criterion("NSC", param=n)


def spc(paths) -> Criterion:
    return Criterion("SPC", specified=tuple(tuple(p) for p in paths))


def parse_criterion(spec: str, base_dir=None) -> Criterion:
    """Parse ``ppc``, ``nsc:2``, ``bic:1`` or ``spc:@paths.json``.

    An SPC file holds either a bare list of paths or a suite document
    ``{"paths": [...]}``.
    """
    name, _, arg = spec.strip().partition(":")
    kind = name.upper()
    if kind not in KINDS:
        raise SchemaError(f"unknown criterion {name!r}")
    if kind == "NSC":
        if not arg.isdigit():
            raise SchemaError("nsc needs a non-negative integer, e.g. nsc:2")
        return nsc(int(arg))
    if kind == "BIC":
        if arg and not arg.isdigit():
            raise SchemaError("bic takes an optional positive depth bound, e.g. bic:1")
        return Criterion("BIC", depth_bound=int(arg) if arg else None)
    if kind == "SPC":
        if not arg.startswith("@"):
            raise SchemaError("spc needs a path file, e.g. spc:@paths.json")
        path = FsPath(arg[1:])
        if base_dir is not None and not path.is_absolute():
            path = FsPath(base_dir) / path
        try:
            doc = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise SchemaError(f"cannot read specified paths: {exc}") from exc
        if isinstance(doc, dict):
            doc = doc.get("paths")
        if not isinstance(doc, list) or not all(isinstance(p, list) for p in doc):
            raise SchemaError("specified paths must be a list of edge-id lists")
        return spc(doc)
    if arg:
        raise SchemaError(f"{name} takes no parameter")
    return Criterion(kind)
