"""Decimal-string serialization and run manifests shared by the command line."""

from __future__ import annotations

import csv
import io
import json
import math
import re
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from decimal import Decimal, localcontext
from fractions import Fraction
from importlib import metadata

import mpmath
from mpmath import mpf

from .numeric import session_precision

_TRAILING_ZERO = re.compile(r"\.0(?=e|$)")


def version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0+unknown"


def digits_for(bits: int) -> int:
    """Significant decimal digits that round-trip a ``bits``-bit mantissa.

    ceil(bits * log10 2) digits can be one short when the decimal and binary
    grids straddle, so one more digit is added.
    """
    return math.ceil(bits * 0.302) + 1


def fmt(x, bits: int | None = None) -> str:
    """Decimal string of ``x`` that parses back to the same value at ``bits``."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    bits = session_precision() if bits is None else bits
    s = mpmath.nstr(mpf(x), digits_for(bits), min_fixed=-8, max_fixed=digits_for(bits))
    return _TRAILING_ZERO.sub("", s)


def exact_decimal(x) -> str:
    """Exact decimal form of a Fraction grid point (``p/q`` if it does not
    terminate); other numbers go through :func:`fmt`."""
    if isinstance(x, int):
        x = Fraction(x)
    if not isinstance(x, Fraction):
        return fmt(x)
    d = x.denominator
    while d % 2 == 0:
        d //= 2
    while d % 5 == 0:
        d //= 5
    if d != 1:
        return f"{x.numerator}/{x.denominator}"
    with localcontext() as ctx:
        ctx.prec = len(str(x.numerator)) + 4 * len(str(x.denominator)) + 4
        v = (Decimal(x.numerator) / Decimal(x.denominator)).normalize()
    return format(v, "f") if v else "0"


def jsonable(obj, bits: int | None = None):
    """Recursively replace mpf values by decimal strings."""
    if isinstance(obj, mpf):
        return fmt(obj, bits)
    if isinstance(obj, float):
        return fmt(mpf(obj), bits)
    if isinstance(obj, dict):
        return {str(k): jsonable(v, bits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v, bits) for v in obj]
    return obj


@dataclass(frozen=True)
class RunManifest:
    command: str
    precision_bits: int
    seed: int | None
    version: str
    timestamp: str

    @classmethod
    def create(cls, argv, bits: int, seed) -> RunManifest:
        stamp = datetime.now(timezone.utc).replace(microsecond=0).isoformat()
        return cls(" ".join(["mopz", *argv]), bits, seed, version(), stamp)

    def as_dict(self) -> dict:
        return asdict(self)

    def comment_lines(self) -> list:
        return [f"# {k}: {'' if v is None else v}" for k, v in self.as_dict().items()]


def dump_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def dump_csv(header, rows, comments=()) -> str:
    buf = io.StringIO()
    for line in comments:
        buf.write(line + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(row)
    return buf.getvalue()
