"""Pair analytics for two eigenforms F, G at a prime p.

The local series sum_r lambda_F(p^r) lambda_G(p^r) x^r is rational with
denominator prod_{i,j} (1 - beta_i delta_j x) of degree 16; its numerator g_p
has degree at most 14. ``gp_polynomial`` multiplies the truncated series by the
denominator and measures what is left above degree 14; ``gp_residue_form``
builds the numerator in closed form from residues at z = delta_j, so the two
are independent routes to the same polynomial.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .errors import InvalidIndexError, PreconditionError, RepeatedParameterError
from .precision import DEFAULT_CONTEXT, PrecisionContext
from .satake import SatakeParameters
from .spinor import SpinorForm, lambda_values, local_lambda_series

GP_DEGREE = 14


class ZeroPolicy(enum.Enum):
    """How zero values enter sign comparisons.

    SKIP: zeros are dropped (sign changes are read across them; in density
    counts indices with a zero value leave numerator and denominator).
    STRICT: sign(0) = 0 is a sign of its own; zeros break runs of signs.
    OPPOSITE: density counts only strictly opposite signs (product < 0).
    """

    SKIP = "skip"
    STRICT = "strict"
    OPPOSITE = "opposite"


def signum(x, tol=0.0) -> int:
    if abs(x) <= tol:
        return 0
    return 1 if x > 0 else -1


def _same_prime(spF: SatakeParameters, spG: SatakeParameters):
    if spF.p != spG.p:
        raise PreconditionError(f"prime mismatch: {spF.p} vs {spG.p}")


def hadamard_local_series(spF: SatakeParameters, spG: SatakeParameters, R: int,
                          ctx: PrecisionContext = DEFAULT_CONTEXT) -> list:
    """c_r = lambda_F(p^r) lambda_G(p^r) for r = 0..R."""
    _same_prime(spF, spG)
    lf = local_lambda_series(spF, R, ctx).coeffs
    lg = local_lambda_series(spG, R, ctx).coeffs
    return [x * y for x, y in zip(lf, lg)]


def poly_from_roots(roots, mp) -> list:
    """Coefficients (ascending) of prod(1 - r x)."""
    c = [mp.mpc(1)]
    for r in roots:
        c = [a - r * b for a, b in zip(c + [0], [0] + c)]
    return c


def _real_coeffs(coeffs, tol, what):
    scale = max(1, max(abs(c) for c in coeffs))
    worst = max(abs(c.imag) for c in coeffs)
    if worst > tol * scale:
        raise PreconditionError(f"{what}: imaginary part {float(worst):.3e} is not negligible")
    return [c.real for c in coeffs]


def pair_denominator(spF: SatakeParameters, spG: SatakeParameters,
                     ctx: PrecisionContext = DEFAULT_CONTEXT) -> list:
    """prod_{i,j}(1 - beta_i delta_j x), 17 real coefficients."""
    prods = [b * d for b in spF.beta for d in spG.beta]
    return _real_coeffs(poly_from_roots(prods, ctx.mp), ctx.tol_roundtrip, "pair denominator")


@dataclass(frozen=True)
class GpResult:
    coeffs: tuple  # g_0..g_14
    tail_max: object
    depth: int

    def tail_vanishes(self, tol: float) -> bool:
        return self.tail_max < tol


def gp_polynomial(spF: SatakeParameters, spG: SatakeParameters, R: int = 64,
                  ctx: PrecisionContext = DEFAULT_CONTEXT) -> GpResult:
    """Numerator of the Hadamard local series via truncated multiplication.

    Non-tempered inputs are accepted; their tail is reported, not raised.
    """
    if R < 32:
        raise InvalidIndexError("truncation depth must be >= 32")
    c = hadamard_local_series(spF, spG, R, ctx)
    den = pair_denominator(spF, spG, ctx)
    mp = ctx.mp
    prod = []
    for m in range(R + 1):
        acc = mp.mpf(0)
        for j in range(min(m, 16) + 1):
            acc += den[j] * c[m - j]
        prod.append(acc)
    tail = max((abs(x) for x in prod[GP_DEGREE + 1 :]), default=mp.mpf(0))
    return GpResult(tuple(prod[: GP_DEGREE + 1]), tail, R)


def gp_residue_form(spF: SatakeParameters, spG: SatakeParameters,
                    ctx: PrecisionContext = DEFAULT_CONTEXT) -> tuple:
    """g_0..g_14 as a finite sum of residues.

    With Phi_F(x) = (1 - x^2/p) / prod_i(1 - beta_i x) the Hadamard product is
    sum_j w_j Phi_F(delta_j x), w_j = delta_j (delta_j^2 - 1/p) / prod_{i!=j}(delta_j - delta_i).
    Clearing the denominator leaves
    g(x) = sum_j w_j (1 - delta_j^2 x^2 / p) prod_i prod_{j'!=j}(1 - beta_i delta_j' x).
    """
    _same_prime(spF, spG)
    mp = ctx.mp
    delta = spG.beta
    for a, b in itertools.combinations(delta, 2):
        if abs(a - b) < ctx.tol_classify:
            raise RepeatedParameterError(
                f"repeated Satake parameter at p={spG.p}; use gp_polynomial instead"
            )
    inv_p = 1 / mp.mpf(spG.p)
    total = [mp.mpc(0)] * (GP_DEGREE + 1)
    for j, dj in enumerate(delta):
        w = dj * (dj * dj - inv_p)
        for i, di in enumerate(delta):
            if i != j:
                w /= dj - di
        others = [b * d for b in spF.beta for jj, d in enumerate(delta) if jj != j]
        poly = poly_from_roots(others, mp)  # degree 12
        quad = [mp.mpc(1), mp.mpc(0), -dj * dj * inv_p]
        for a, qa in enumerate(quad):
            for b, pb in enumerate(poly):
                total[a + b] += w * qa * pb
    return tuple(_real_coeffs(total, ctx.tol_roundtrip, "residue numerator"))


def satake_distinctness(spF: SatakeParameters, spG: SatakeParameters, tol: float):
    """(all eight parameters pairwise more than tol apart, smallest pairwise gap)."""
    _same_prime(spF, spG)
    vals = list(spF.beta) + list(spG.beta)
    gap = min(abs(a - b) for a, b in itertools.combinations(vals, 2))
    return gap > tol, gap


@dataclass(frozen=True)
class SignChanges:
    positions: list
    zeros: list

    def __len__(self):
        return len(self.positions)


def sign_change_indices(seq, zero_policy: ZeroPolicy = ZeroPolicy.SKIP, tol=0.0) -> SignChanges:
    """Indices i where seq[i] starts a new sign.

    SKIP compares each nonzero entry with the previous nonzero one. STRICT
    only records changes between adjacent nonzero entries; a zero resets the
    run. Zero positions are reported under both policies.
    """
    zero_policy = ZeroPolicy(zero_policy)
    if zero_policy is ZeroPolicy.OPPOSITE:
        raise PreconditionError("sign changes use the skip or strict policy")
    positions, zeros = [], []
    prev = 0
    for i, x in enumerate(seq):
        s = signum(x, tol)
        if s == 0:
            zeros.append(i)
            if zero_policy is ZeroPolicy.STRICT:
                prev = 0
            continue
        if prev and s != prev:
            positions.append(i)
        prev = s
    return SignChanges(positions, zeros)


@dataclass(frozen=True)
class SignDisagreementReport:
    X: int
    count: int
    considered: int
    excluded: int
    density: float
    zero_policy: ZeroPolicy
    zero_tol: float


def _disagree(sf, sg, policy):
    if policy is ZeroPolicy.OPPOSITE:
        return sf * sg < 0
    return sf != sg


def sign_disagreement_density(F: SpinorForm, G: SpinorForm, X: int,
                              zero_policy: ZeroPolicy = ZeroPolicy.STRICT) -> SignDisagreementReport:
    """#{n <= X : sign lambda_F(n) != sign lambda_G(n)} and its proportion."""
    zero_policy = ZeroPolicy(zero_policy)
    if X < 1:
        raise InvalidIndexError("X must be >= 1")
    lf, lg = lambda_values(F, X), lambda_values(G, X)
    tol = F.ctx.tol_classify
    count = excluded = 0
    for n in range(1, X + 1):
        sf, sg = signum(lf[n], tol), signum(lg[n], tol)
        if zero_policy is ZeroPolicy.SKIP and (sf == 0 or sg == 0):
            excluded += 1
            continue
        if _disagree(sf, sg, zero_policy):
            count += 1
    considered = X - excluded
    density = count / considered if considered else 0.0
    return SignDisagreementReport(X, count, considered, excluded, density, zero_policy, tol)


@dataclass(frozen=True)
class PairLocalReport:
    p: int
    c: list
    gp: tuple
    tail_max: object
    sign_changes: list
    distinct: bool
    min_gap: object
    gp_residue: tuple | None = None


def pair_local_report(spF: SatakeParameters, spG: SatakeParameters, R: int = 64,
                      ctx: PrecisionContext = DEFAULT_CONTEXT) -> PairLocalReport:
    gp = gp_polynomial(spF, spG, R, ctx)
    c = hadamard_local_series(spF, spG, R, ctx)
    distinct, gap = satake_distinctness(spF, spG, ctx.tol_classify)
    try:
        residue = gp_residue_form(spF, spG, ctx)
    except RepeatedParameterError:
        residue = None
    changes = sign_change_indices(c, ZeroPolicy.SKIP, ctx.tol_classify).positions
    return PairLocalReport(spF.p, c, gp.coeffs, gp.tail_max, changes, distinct, gap, residue)
