from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from mpmath import MPContext
from mpmath import libmp


@lru_cache(maxsize=None)
def _mp_context(bits: int) -> MPContext:
    ctx = MPContext()
    ctx.prec = bits
    return ctx


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision and the tolerances derived checks are held to.

    ``max_bits`` bounds the automatic precision escalation in the Satake
    solver; it defaults to four times ``mantissa_bits``.
    """

    mantissa_bits: int = 192
    tol_roundtrip: float = 1e-20
    tol_classify: float = 1e-12
    tol_degree: float = 1e-18
    max_bits: int | None = None

    def __post_init__(self):
        if self.mantissa_bits < 64:
            raise ValueError("mantissa_bits must be >= 64")
        for name in ("tol_roundtrip", "tol_classify", "tol_degree"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.max_bits is not None and self.max_bits < self.mantissa_bits:
            raise ValueError("max_bits must be >= mantissa_bits")

    @property
    def mp(self) -> MPContext:
        return _mp_context(self.mantissa_bits)

    @property
    def bit_ceiling(self) -> int:
        return self.max_bits if self.max_bits is not None else 4 * self.mantissa_bits

    @property
    def digits(self) -> int:
        """Significant decimal digits carried by the mantissa."""
        return int(self.mantissa_bits * math.log10(2))

    def with_bits(self, bits: int) -> PrecisionContext:
        return replace(self, mantissa_bits=bits, max_bits=max(bits, self.bit_ceiling))

    def mpf(self, x):
        """Correctly rounded conversion; accepts Fraction as well as mpmath inputs."""
        if isinstance(x, Fraction):
            return self.mp.make_mpf(
                libmp.from_rational(x.numerator, x.denominator, self.mp.prec, "n")
            )
        return self.mp.mpf(x)

    def fmt(self, x) -> str:
        return self.mp.nstr(x, self.digits)


DEFAULT_CONTEXT = PrecisionContext()


def to_fraction(x) -> Fraction:
    """Exact value of a binary floating number (mpf or float) as a Fraction."""
    if isinstance(x, float):
        return Fraction(x)
    sign, man, exp, _ = x._mpf_
    if not man and exp:
        raise ValueError(f"cannot convert non-finite value {x} to Fraction")
    man = -int(man) if sign else int(man)
    if exp >= 0:
        return Fraction(man << exp)
    return Fraction(man, 1 << -exp)
