"""Test-data generators: Saito-Kurokawa lifts and synthetic tempered eigenforms."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from sympy import primerange

from .eigenform import EigenformData, Kind, LocalHeckeEigenvalues
from .errors import MissingPrimeError, PreconditionError
from .precision import DEFAULT_CONTEXT, PrecisionContext, to_fraction
from .qexp import EllipticEigenform, one_dim_eigenform
from .satake import SatakeParameters, order_pairs
from .spinor import real_elementary


@lru_cache(maxsize=16)
def cached_eigenform(w: int, N: int) -> EllipticEigenform:
    return one_dim_eigenform(w, N)


def sk_lift_local(f: EllipticEigenform, p: int) -> LocalHeckeEigenvalues:
    """Hecke data at p of the weight k = w/2 + 1 lift of f.

    The unnormalized roots are p^(k-1), p^(k-2) and the two roots of
    X^2 - a_f(p) X + p^(2k-3).
    """
    k = f.weight // 2 + 1
    if not 1 <= p <= f.N:
        raise MissingPrimeError(p, f"elliptic weight {f.weight} (N={f.N})")
    ap = f.a(p)
    u, v, q = p ** (k - 1), p ** (k - 2), p ** (2 * k - 3)
    e1 = u + v + ap
    e2 = u * v + (u + v) * ap + q
    return LocalHeckeEigenvalues(p, e1, e1 * e1 - e2 - p ** (2 * k - 4))


def sk_lift(k: int, P: int, label: str | None = None) -> EigenformData:
    """Saito-Kurokawa lift of the weight 2k-2 eigenform, Hecke data for primes <= P."""
    if k % 2:
        raise PreconditionError(f"Saito-Kurokawa lifts need even weight, got k={k}")
    f = cached_eigenform(2 * k - 2, max(P, 2))
    locs = [sk_lift_local(f, p) for p in primerange(2, P + 1)]
    return EigenformData.from_locals(label or f"SK(f{2 * k - 2})", k, Kind.SAITO_KUROKAWA, locs)


@dataclass(frozen=True)
class TorusSample:
    p: int
    theta1: float
    theta2: float


def torus_satake(p: int, theta1, theta2, ctx: PrecisionContext = DEFAULT_CONTEXT) -> SatakeParameters:
    """Tempered parameters {e^(+-i theta1), e^(+-i theta2)} in solver order."""
    mp = ctx.mp
    pairs = []
    for th in (theta1, theta2):
        z = mp.expj(ctx.mpf(th))
        pairs.append((z, mp.conj(z)))
    return SatakeParameters(p, order_pairs(pairs, mp))


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def sample_tempered_satake(seed, p: int, min_gap: float = 0.0,
                           ctx: PrecisionContext = DEFAULT_CONTEXT, max_tries: int = 10_000):
    """Uniform angles in [0, pi], redrawn until the four parameters are min_gap apart."""
    if min_gap < 0:
        raise PreconditionError("min_gap must be >= 0")
    rng = _rng(seed)
    for _ in range(max_tries):
        t1, t2 = (float(t) for t in rng.uniform(0.0, np.pi, size=2))
        pts = np.exp(1j * np.array([t1, -t1, t2, -t2]))
        gaps = np.abs(pts[:, None] - pts[None, :])[np.triu_indices(4, 1)]
        if gaps.min() >= min_gap:
            return TorusSample(p, t1, t2), torus_satake(p, t1, t2, ctx)
    raise PreconditionError(f"no sample with min_gap={min_gap} after {max_tries} draws")


def eigen_from_satake(sp: SatakeParameters, p: int, k: int,
                      ctx: PrecisionContext = DEFAULT_CONTEXT) -> LocalHeckeEigenvalues:
    """Inverse of the Satake solve: mu(p), mu(p^2) from normalized parameters.

    Values are rounded to the context precision and stored as the exact
    binary rationals they round to.
    """
    mp = ctx.mp
    e = real_elementary(sp, ctx)
    with mp.extraprec(16):
        q = mp.mpf(p) ** (2 * k - 3)
        mu_p = mp.mpf(p) ** (k - 2) * mp.sqrt(p) * e[1]
        mu_p2 = mu_p * mu_p - q * e[2] - mp.mpf(p) ** (2 * k - 4)
    return LocalHeckeEigenvalues(p, to_fraction(+mu_p), to_fraction(+mu_p2))


def synthetic_samples(seed, P: int, min_gap: float = 0.0,
                      ctx: PrecisionContext = DEFAULT_CONTEXT) -> dict[int, tuple[TorusSample, SatakeParameters]]:
    rng = _rng(seed)
    return {p: sample_tempered_satake(rng, p, min_gap, ctx) for p in primerange(2, P + 1)}


def build_synthetic_eigenform(seed: int, k: int, P: int, min_gap: float = 0.0,
                              ctx: PrecisionContext = DEFAULT_CONTEXT,
                              label: str | None = None) -> EigenformData:
    """Tempered eigenform data with independent torus samples at each prime <= P."""
    if k < 4:
        raise PreconditionError("weight must be >= 4")
    samples = synthetic_samples(seed, P, min_gap, ctx)
    locs = [eigen_from_satake(sp, p, k, ctx) for p, (_, sp) in samples.items()]
    return EigenformData.from_locals(
        label or f"synthetic-k{k}-seed{seed}", k, Kind.SYNTHETIC, locs, ctx.mantissa_bits
    )


def with_local(data: EigenformData, loc: LocalHeckeEigenvalues, label: str | None = None) -> EigenformData:
    """Copy of ``data`` with the entry at loc.p replaced (used to inject zeros)."""
    local = dict(data.local)
    if loc.p not in local:
        raise MissingPrimeError(loc.p, data.label)
    local[loc.p] = loc
    return EigenformData(label or data.label, data.weight, data.kind, local, data.precision)
