"""Eigenforms represented by their Hecke eigenvalues at primes and prime squares.

Eigenvalues are exact rationals. Analytic quantities (normalized eigenvalues,
Satake parameters, series coefficients) are derived from them on demand at a
configurable binary precision.

File format (UTF-8)::

    # comment
    label=SK(f18)
    weight=10
    kind=saito-kurokawa
    precision=192          # optional: rows are approximations of irrational values
    2 240 135424
    3 ...

Each row is ``<p> <mu(p)> <mu(p^2)>`` with values written as ``a`` or ``a/b``
(decimal fractions such as ``1.25`` are accepted on input).
"""

from __future__ import annotations

import enum
import io
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, TextIO

from sympy import isprime

from .errors import InvalidIndexError, ParseError
from .precision import DEFAULT_CONTEXT, PrecisionContext


class Kind(enum.Enum):
    INGESTED = "ingested"
    SAITO_KUROKAWA = "saito-kurokawa"
    SYNTHETIC = "synthetic"


@dataclass(frozen=True)
class LocalHeckeEigenvalues:
    p: int
    mu_p: Fraction
    mu_p2: Fraction

    def __post_init__(self):
        if not isprime(self.p):
            raise ValueError(f"{self.p} is not prime")
        object.__setattr__(self, "mu_p", Fraction(self.mu_p))
        object.__setattr__(self, "mu_p2", Fraction(self.mu_p2))


@dataclass(frozen=True)
class EigenformData:
    """Weight and local Hecke data of a degree-2 Siegel eigenform.

    ``precision`` is None when the eigenvalues are exact; otherwise the rows
    are binary approximations carried at that many bits and zero tests fall
    back to a tolerance.
    """

    label: str
    weight: int
    kind: Kind
    local: Mapping[int, LocalHeckeEigenvalues] = field(default_factory=dict)
    precision: int | None = None

    def __post_init__(self):
        if not self.label or any(ch in self.label for ch in "\n\r#"):
            raise ValueError("label must be a nonempty single line without '#'")
        if self.weight < 4:
            raise ValueError(f"weight must be >= 4, got {self.weight}")
        object.__setattr__(self, "kind", Kind(self.kind))
        ordered = {}
        for p in sorted(self.local):
            loc = self.local[p]
            if loc.p != p:
                raise ValueError(f"local entry keyed {p} holds data for {loc.p}")
            ordered[p] = loc
        object.__setattr__(self, "local", ordered)
        if self.precision is not None and self.precision < 64:
            raise ValueError("precision must be >= 64 bits")

    @classmethod
    def from_locals(cls, label, weight, kind, locals_: Iterable[LocalHeckeEigenvalues],
                    precision=None) -> EigenformData:
        return cls(label, weight, Kind(kind), {loc.p: loc for loc in locals_}, precision)

    @property
    def exact(self) -> bool:
        return self.precision is None

    @property
    def primes(self) -> list[int]:
        return list(self.local)

    def __contains__(self, p):
        return p in self.local


def normalize(mu, n: int, k: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Normalized eigenvalue mu * n^(3/2 - k) at the context precision."""
    if n < 1:
        raise InvalidIndexError(f"index must be >= 1, got {n}")
    mp = ctx.mp
    if n == 1:
        return ctx.mpf(Fraction(mu))
    with mp.extraprec(32):
        scale = mp.mpf(n) ** (k - 2) * mp.sqrt(n)
        value = ctx.mpf(Fraction(mu)) / scale
    return +value


# ---------------------------------------------------------------- file format

_HEADER = re.compile(r"^([a-z]+)\s*=\s*(.*)$")
_INTEGER = re.compile(r"^[+-]?\d+$")
_RATIO = re.compile(r"^[+-]?\d+/\d+$")
_DECIMAL = re.compile(r"^[+-]?(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?$")


def _parse_rational(token: str, line: int) -> Fraction:
    if _INTEGER.match(token) or _RATIO.match(token) or _DECIMAL.match(token):
        try:
            return Fraction(token)
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in {token!r}", line) from None
    raise ParseError(f"cannot parse rational {token!r}", line)


def _format_rational(x: Fraction) -> str:
    return str(x)


def parse_eigenform(stream: TextIO | str) -> EigenformData:
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    headers: dict[str, str] = {}
    rows: dict[int, LocalHeckeEigenvalues] = {}
    for lineno, raw in enumerate(stream, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        m = _HEADER.match(text)
        if m:
            key, value = m.group(1), m.group(2).strip()
            if rows:
                raise ParseError(f"header {key!r} after data rows", lineno)
            if key not in ("label", "weight", "kind", "precision"):
                raise ParseError(f"unknown header {key!r}", lineno)
            if key in headers:
                raise ParseError(f"duplicate header {key!r}", lineno)
            headers[key] = value
            continue
        parts = text.split()
        if len(parts) != 3:
            raise ParseError(f"expected '<p> <mu_p> <mu_p2>', got {text!r}", lineno)
        if not _INTEGER.match(parts[0]):
            raise ParseError(f"row key {parts[0]!r} is not an integer", lineno)
        p = int(parts[0])
        if not isprime(p):
            raise ParseError(f"{p} not prime", lineno)
        if p in rows:
            raise ParseError(f"duplicate row for prime {p}", lineno)
        rows[p] = LocalHeckeEigenvalues(
            p, _parse_rational(parts[1], lineno), _parse_rational(parts[2], lineno)
        )
    for key in ("label", "weight", "kind"):
        if key not in headers:
            raise ParseError(f"missing header {key!r}")
    try:
        weight = int(headers["weight"])
        kind = Kind(headers["kind"])
        precision = int(headers["precision"]) if "precision" in headers else None
        return EigenformData(headers["label"], weight, kind, rows, precision)
    except ValueError as exc:
        raise ParseError(f"malformed header: {exc}") from None


def serialize_eigenform(form: EigenformData) -> str:
    lines = [
        f"label={form.label}",
        f"weight={form.weight}",
        f"kind={form.kind.value}",
    ]
    if form.precision is not None:
        lines.append(f"precision={form.precision}")
    for p, loc in form.local.items():
        lines.append(f"{p} {_format_rational(loc.mu_p)} {_format_rational(loc.mu_p2)}")
    return "\n".join(lines) + "\n"


def load_eigenform(path) -> EigenformData:
    with open(path, encoding="utf-8") as fh:
        return parse_eigenform(fh)


def save_eigenform(form: EigenformData, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_eigenform(form))
