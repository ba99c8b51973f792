"""Hecke polynomial at p and its roots as normalized Satake parameters.

The quartic X^4 + a3 X^3 + a2 X^2 + a1 X + a0 has a1 = a3 q and a0 = q^2 with
q = p^(2k-3), so its roots come in pairs (X, q/X). Dividing by X^2 and putting
Y = X + q/X leaves a quadratic in Y; each Y then splits into one pair. We work
in normalized units (X = p^(k-3/2) beta) so the pairs multiply to 1.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .eigenform import LocalHeckeEigenvalues
from .errors import PrecisionExhaustedError
from .precision import DEFAULT_CONTEXT, PrecisionContext


@dataclass(frozen=True)
class HeckePolynomial:
    p: int
    k: int
    a3: Fraction
    a2: Fraction
    a1: Fraction
    a0: Fraction

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        """Leading coefficient first."""
        return (Fraction(1), self.a3, self.a2, self.a1, self.a0)

    @property
    def pairing_product(self) -> int:
        return self.p ** (2 * self.k - 3)

    def structure_holds(self) -> bool:
        q = self.pairing_product
        return self.a1 == self.a3 * q and self.a0 == q * q


def build_hecke_polynomial(loc: LocalHeckeEigenvalues, k: int) -> HeckePolynomial:
    p = loc.p
    a3 = -loc.mu_p
    a2 = loc.mu_p**2 - loc.mu_p2 - Fraction(p) ** (2 * k - 4)
    a1 = a3 * p ** (2 * k - 3)
    a0 = Fraction(p) ** (4 * k - 6)
    return HeckePolynomial(p, k, a3, a2, a1, a0)


class SatakeClass(enum.Enum):
    TEMPERED = "tempered"
    SK_TYPE = "sk-type"
    OTHER = "other"


@dataclass(frozen=True)
class SatakeParameters:
    """Four normalized Satake parameters with beta[0]*beta[3] = beta[1]*beta[2] = 1.

    ``residual`` is the largest back-substitution error of the unnormalized
    roots in the Hecke polynomial, relative to p^(4k-6); zero for parameters
    that were not obtained by solving.
    """

    p: int
    beta: tuple
    residual: object = 0

    def __post_init__(self):
        if len(self.beta) != 4:
            raise ValueError("need exactly four Satake parameters")

    @property
    def pairs(self):
        return (self.beta[0], self.beta[3]), (self.beta[1], self.beta[2])

    def invariant_errors(self) -> dict[str, float]:
        b = self.beta
        total = sum(b)
        conj_gap = max(min(abs(x.conjugate() - y) for y in b) for x in b)
        return {
            "pair_14": float(abs(b[0] * b[3] - 1)),
            "pair_23": float(abs(b[1] * b[2] - 1)),
            "conjugation": float(conj_gap),
            "trace_imag": float(abs(total.imag)),
        }

    def is_valid(self, tol: float) -> bool:
        return all(v < tol for v in self.invariant_errors().values())


def _sort_key(z, mp):
    arg = mp.arg(z)
    if arg < 0:
        arg += 2 * mp.pi
    return (arg, abs(z))


def order_pairs(pairs, mp) -> tuple:
    """Deterministic order that keeps the inversion pairing in slots (1,4), (2,3).

    Each pair is written smaller-key first; pairs are ordered by their first
    element. Key = (argument in [0, 2pi), modulus).
    """
    normed = []
    for u, v in pairs:
        if _sort_key(v, mp) < _sort_key(u, mp):
            u, v = v, u
        normed.append((u, v))
    normed.sort(key=lambda uv: _sort_key(uv[0], mp))
    (b1, b4), (b2, b3) = normed
    return (b1, b2, b3, b4)


def _stable_quadratic(b, c, mp):
    """Roots of t^2 + b t + c with real b, c."""
    disc = b * b - 4 * c
    if disc >= 0:
        r = mp.sqrt(disc)
        big = -(b + r) / 2 if b >= 0 else (-b + r) / 2
        if big == 0:
            return mp.mpc(0), mp.mpc(0)
        return mp.mpc(big), mp.mpc(c / big)
    r = mp.sqrt(-disc)
    return mp.mpc(-b / 2, r / 2), mp.mpc(-b / 2, -r / 2)


def _split_pair(y, mp):
    """Roots of beta^2 - y beta + 1 as (u, 1/u)."""
    if y.imag == 0:
        y = y.real
        d = y * y - 4
        if d >= 0:
            r = mp.sqrt(d)
            big = (y + r) / 2 if y >= 0 else (y - r) / 2
            return mp.mpc(big), mp.mpc(1 / big)
        r = mp.sqrt(-d)
        return mp.mpc(y / 2, r / 2), mp.mpc(y / 2, -r / 2)
    r = mp.sqrt(y * y - 4)
    u1, u2 = (y + r) / 2, (y - r) / 2
    big = u1 if abs(u1) >= abs(u2) else u2
    return big, 1 / big


def _relative_residual(poly: HeckePolynomial, betas, ctx: PrecisionContext):
    mp = ctx.mp
    with mp.extraprec(16):
        scale = mp.mpf(poly.p) ** (poly.k - 2) * mp.sqrt(poly.p)
        coeffs = [ctx.mpf(c) for c in poly.coefficients]
        a0 = ctx.mpf(poly.a0)
        worst = mp.mpf(0)
        for b in betas:
            x = scale * b
            acc = mp.mpc(0)
            for c in coeffs:
                acc = acc * x + c
            worst = max(worst, abs(acc) / a0)
    return +worst


def _solve_at(poly: HeckePolynomial, ctx: PrecisionContext) -> SatakeParameters:
    mp = ctx.mp
    p, k = poly.p, poly.k
    scale = mp.mpf(p) ** (k - 2) * mp.sqrt(p)
    # Y' = beta + 1/beta solves Y'^2 + (a3/s) Y' + (a2/s^2 - 2) = 0
    b = ctx.mpf(poly.a3) / scale
    c = ctx.mpf(poly.a2) / (scale * scale) - 2
    y1, y2 = _stable_quadratic(b, c, mp)
    betas = order_pairs([_split_pair(y1, mp), _split_pair(y2, mp)], mp)
    return SatakeParameters(p, betas, _relative_residual(poly, betas, ctx))


def solve_satake(poly: HeckePolynomial, ctx: PrecisionContext = DEFAULT_CONTEXT) -> SatakeParameters:
    """Normalized Satake parameters of ``poly``, escalating precision if needed."""
    bits = ctx.mantissa_bits
    while True:
        work = ctx.with_bits(bits)
        sp = _solve_at(poly, work)
        if sp.residual < ctx.tol_roundtrip:
            if bits == ctx.mantissa_bits:
                return sp
            mp = ctx.mp
            return SatakeParameters(sp.p, tuple(mp.mpc(z) for z in sp.beta), mp.mpf(sp.residual))
        if bits >= ctx.bit_ceiling:
            raise PrecisionExhaustedError(
                f"Hecke polynomial at p={poly.p}: residual {float(sp.residual):.3e} "
                f"exceeds {ctx.tol_roundtrip:g} at {bits} bits"
            )
        bits = min(2 * bits, ctx.bit_ceiling)


def solve_local(loc: LocalHeckeEigenvalues, k: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
    return solve_satake(build_hecke_polynomial(loc, k), ctx)


def classify(sp: SatakeParameters, tol: float, ctx: PrecisionContext = DEFAULT_CONTEXT) -> SatakeClass:
    mp = ctx.mp
    if max(abs(abs(b) - 1) for b in sp.beta) < tol:
        return SatakeClass.TEMPERED
    root_p = mp.sqrt(sp.p)
    sk_pairs = 0
    unit_pairs = 0
    for u, v in sp.pairs:
        real = abs(u.imag) < tol and abs(v.imag) < tol
        lo, hi = sorted((u.real, v.real))
        if real and abs(hi - root_p) < tol and abs(lo - 1 / root_p) < tol:
            sk_pairs += 1
        elif abs(abs(u) - 1) < tol and abs(abs(v) - 1) < tol:
            unit_pairs += 1
    if sk_pairs == 1 and unit_pairs == 1:
        return SatakeClass.SK_TYPE
    return SatakeClass.OTHER


def multiset_distance(xs, ys) -> float:
    """Smallest max-abs error over all matchings of two 4-element multisets."""
    best = None
    for perm in itertools.permutations(ys):
        err = max(abs(x - y) for x, y in zip(xs, perm))
        if best is None or err < best:
            best = err
    return best
