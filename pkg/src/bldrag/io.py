"""
File formats and deterministic report output.

Profile CSV::

    # name = run42
    # nu = 1.5e-05
    # U_inf = 10.0
    # u_tau = 0.36
    y,u
    0.0012,5.31
    ...

Summary CSV: header ``source,re_eff,re_theta,cf``; an empty field marks an
absent optional Reynolds number.

Data files are written with shortest round-trip float representation so
that reading a written file gives back identical values.  Reports use a
fixed 9-significant-digit format.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from pathlib import Path

import numpy as np

from .comparison import DragSample
from .profile import VelocityProfile

__all__ = [
    "DataFormatError",
    "format_number",
    "dumps_report",
    "read_profile",
    "parse_profile",
    "write_profile",
    "profile_text",
    "read_samples",
    "parse_samples",
    "samples_text",
    "table_text",
    "digest",
]

PROFILE_KEYS = ("name", "nu", "U_inf", "u_tau")
SUMMARY_HEADER = ("source", "re_eff", "re_theta", "cf")
SIG_DIGITS = 9
FIXED_RANGE = (1e-4, 1e7)


class DataFormatError(ValueError):
    def __init__(self, message, line=None, source=None):
        where = []
        if source is not None:
            where.append(str(source))
        if line is not None:
            where.append(f"line {line}")
        if where:
            message = f"{':'.join(where)}: {message}"
        super().__init__(message)
        self.line = line


def format_number(x) -> str:
    """
    Format a float with 9 significant digits.

    Fixed-point when 1e-4 <= |x| < 1e7, lowercase scientific otherwise.

    >>> format_number(0.26)
    '0.260000000'
    >>> format_number(1076137.596)
    '1076137.60'
    >>> format_number(3.2690173724e7)
    '3.26901737e+07'
    """
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot format non-finite value {x!r}")
    if x == 0:
        return "0." + "0" * (SIG_DIGITS - 1)
    sci = f"{x:.{SIG_DIGITS - 1}e}"
    exponent = int(sci.split("e")[1])
    lo, hi = FIXED_RANGE
    if lo <= abs(float(sci)) < hi:
        return f"{x:.{max(0, SIG_DIGITS - 1 - exponent)}f}"
    return sci


def _emit(value, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            return "null"
        return format_number(value)
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_emit(v, indent, level + 1)}"
                 for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        if not any(isinstance(v, (dict, list, tuple, str)) for v in value):
            return "[" + ", ".join(_emit(v, indent, level + 1) for v in value) + "]"
        items = [pad + _emit(v, indent, level + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps_report(doc, indent=2) -> str:
    """
    JSON text with keys in insertion order and 9-significant-digit floats.
    """
    return _emit(doc, indent, 0) + "\n"


def digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


# profiles ---------------------------------------------------------------

def _float(text, line, source, what):
    try:
        val = float(text)
    except ValueError:
        raise DataFormatError(f"invalid number for {what}: {text.strip()!r}", line, source) from None
    if not math.isfinite(val):
        raise DataFormatError(f"non-finite value for {what}: {text.strip()!r}", line, source)
    return val


def parse_profile(text: str, source=None) -> VelocityProfile:
    meta = {}
    ys, us = [], []
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:]
            if "=" in body:
                key, _, val = body.partition("=")
                meta[key.strip()] = (val.strip(), lineno)
            continue
        fields = [f.strip() for f in line.split(",")]
        if not header_seen:
            if fields != ["y", "u"]:
                raise DataFormatError(f"expected header 'y,u', got {line!r}", lineno, source)
            header_seen = True
            continue
        if len(fields) != 2:
            raise DataFormatError(f"expected 2 fields, got {len(fields)}", lineno, source)
        ys.append(_float(fields[0], lineno, source, "y"))
        us.append(_float(fields[1], lineno, source, "u"))
    if not header_seen:
        raise DataFormatError("missing 'y,u' header", None, source)
    for key in PROFILE_KEYS:
        if key not in meta:
            raise DataFormatError(f"missing header key {key!r}", None, source)
    values = {k: _float(meta[k][0], meta[k][1], source, k) for k in ("nu", "U_inf", "u_tau")}
    return VelocityProfile(name=meta["name"][0], y=ys, u=us, **values)


def read_profile(path) -> VelocityProfile:
    path = Path(path)
    return parse_profile(path.read_text(encoding="utf-8"), source=path.name)


def profile_text(p: VelocityProfile) -> str:
    out = [f"# name = {p.name}",
           f"# nu = {p.nu!r}",
           f"# U_inf = {p.U_inf!r}",
           f"# u_tau = {p.u_tau!r}",
           "y,u"]
    out += [f"{float(y)!r},{float(u)!r}" for y, u in zip(p.y, p.u)]
    return "\n".join(out) + "\n"


def write_profile(p: VelocityProfile, path):
    Path(path).write_text(profile_text(p), encoding="utf-8", newline="\n")


# drag samples -----------------------------------------------------------

def parse_samples(text: str, source=None, require=()):
    """
    Parse a summary CSV into DragSample objects.

    ``require`` lists optional columns ('re_eff', 're_theta') that must be
    present in the header.
    """
    reader = csv.DictReader(io.StringIO(text))
    header = reader.fieldnames or []
    for col in ("source", "cf", *require):
        if col not in header:
            raise DataFormatError(f"missing column {col!r}", 1, source)
    if "re_eff" not in header and "re_theta" not in header:
        raise DataFormatError("need a re_eff or re_theta column", 1, source)
    samples = []
    for row in reader:
        line = reader.line_num
        if None in row or any(v is None for v in row.values()):
            raise DataFormatError("wrong number of fields", line, source)
        vals = {}
        for col in ("re_eff", "re_theta"):
            text_val = (row.get(col) or "").strip()
            vals[col] = _float(text_val, line, source, col) if text_val else None
        cf = _float(row["cf"], line, source, "cf")
        try:
            samples.append(DragSample(cf=cf, source=row["source"].strip(), **vals))
        except ValueError as exc:
            raise DataFormatError(str(exc), line, source) from None
    return samples


def read_samples(path, require=()):
    path = Path(path)
    return parse_samples(path.read_text(encoding="utf-8"), source=path.name, require=require)


def _cell(v, exact):
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v)) if exact else format_number(v)


def table_text(rows, columns, exact=False) -> str:
    """CSV text for a list of dict rows; None becomes an empty field."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_cell(row.get(c), exact) for c in columns])
    return buf.getvalue()


def samples_text(samples) -> str:
    rows = [{"source": s.source, "re_eff": s.re_eff, "re_theta": s.re_theta, "cf": s.cf}
            for s in samples]
    return table_text(rows, SUMMARY_HEADER, exact=True)
