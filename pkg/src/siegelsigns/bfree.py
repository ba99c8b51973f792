"""B-free numbers and the constructive lower bound for sign disagreements.

For a pair F, G and a prime p0 the exceptional set is

    B = {p0} u {p != p0 : lambda_F(p) lambda_G(p) = 0} u {p^2 : p != p0, lambda_F(p) lambda_G(p) != 0}

truncated at a prime bound. B-free numbers are then squarefree, coprime to
p0, and have nonzero lambda_F lambda_G; multiplying those with a positive
product by p0^t (where the product at p0^t is negative) flips the sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np
from sympy import isprime, primerange

from .errors import ConsistencyError, InvalidIndexError, PreconditionError
from .pairs import signum
from .spinor import SpinorForm, lambda_values


@dataclass(frozen=True)
class BSet:
    elements: tuple
    prime_bound: int | None = None

    def __post_init__(self):
        els = tuple(int(b) for b in self.elements)
        if any(b <= 1 for b in els):
            raise PreconditionError("elements of B must exceed 1")
        if any(a >= b for a, b in zip(els, els[1:])):
            raise PreconditionError("elements of B must be strictly increasing")
        object.__setattr__(self, "elements", els)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def is_pairwise_coprime(self) -> bool:
        return all(math.gcd(a, b) == 1 for a, b in combinations(self.elements, 2))

    def reciprocal_sum(self) -> float:
        return math.fsum(1 / b for b in self.elements)


def prime_squares(P: int) -> BSet:
    return BSet(tuple(p * p for p in primerange(2, P + 1)), P)


def build_exceptional_set(F: SpinorForm, G: SpinorForm, p0: int, P: int) -> BSet:
    if P < 2:
        raise PreconditionError(f"empty prime range (P={P})")
    if not isprime(p0) or p0 > P:
        raise PreconditionError(f"p0={p0} must be a prime <= P={P}")
    F.require_primes(P)
    G.require_primes(P)
    els = {p0}
    for p in primerange(2, P + 1):
        if p == p0:
            continue
        zero = F.lambda_is_zero_at_prime(p) or G.lambda_is_zero_at_prime(p)
        els.add(p if zero else p * p)
    return BSet(tuple(sorted(els)), P)


@dataclass(frozen=True)
class SieveResult:
    x: int
    count: int
    indicator: np.ndarray | None = None  # indicator[n] for 0 <= n <= x; index 0 unused

    @property
    def fraction(self) -> float:
        return self.count / self.x if self.x else 0.0


def sieve_bfree(B: BSet, x: int, keep_indicator: bool = False,
                segment_size: int = 1 << 20) -> SieveResult:
    """Count n <= x divisible by no element of B with a segmented bitmap.

    Memory is bounded by ``segment_size`` bytes unless the full indicator is
    requested.
    """
    if x < 1:
        return SieveResult(max(x, 0), 0, np.zeros(1, dtype=bool) if keep_indicator else None)
    if segment_size < 1:
        raise PreconditionError("segment_size must be positive")
    full = np.zeros(x + 1, dtype=bool) if keep_indicator else None
    count = 0
    for lo in range(1, x + 1, segment_size):
        hi = min(lo + segment_size, x + 1)
        seg = np.ones(hi - lo, dtype=bool)
        for b in B.elements:
            if b >= hi:
                break
            start = -lo % b
            seg[start::b] = False
        count += int(seg.sum())
        if full is not None:
            full[lo:hi] = seg
    return SieveResult(x, count, full)


def erdos_density(B: BSet) -> float:
    """prod (1 - 1/b) over the finite set B."""
    return math.prod(1 - 1 / b for b in B.elements)


def find_negative_prime_power(F: SpinorForm, G: SpinorForm, P: int, R: int):
    """Smallest (p, t) in lexicographic order with lambda_F(p^t) lambda_G(p^t) < 0.

    Returns None when no such pair exists for p <= P, 1 <= t <= R.
    """
    tol = F.ctx.tol_classify
    F.require_primes(P)
    G.require_primes(P)
    for p in primerange(2, P + 1):
        for t in range(1, R + 1):
            if F.lambda_pp(p, t) * G.lambda_pp(p, t) < -tol:
                return p, t
    return None


@dataclass(frozen=True)
class WitnessReport:
    x: int
    p0: int
    t: int
    from_a1: int
    from_a2: int
    bset_size: int

    @property
    def count(self) -> int:
        return self.from_a1 + self.from_a2

    @property
    def fraction(self) -> float:
        return self.count / self.x if self.x >= 1 else 0.0


def lower_density_witness(F: SpinorForm, G: SpinorForm, p0: int, t: int, x: int) -> WitnessReport:
    """Count n <= x in A1 u p0^t A2 and check each has sign lambda_F(n) != sign lambda_G(n).

    A1, A2 are the B-free numbers with negative and positive product
    lambda_F lambda_G; B is built with prime bound x.
    """
    if x < 1:
        return WitnessReport(max(x, 0), p0, t, 0, 0, 0)
    if t < 1:
        raise InvalidIndexError("t must be >= 1")
    P = max(x, p0)
    F.require_primes(P)
    G.require_primes(P)
    if not F.lambda_pp(p0, t) * G.lambda_pp(p0, t) < -F.ctx.tol_classify:
        raise PreconditionError(f"lambda_F lambda_G at {p0}^{t} is not negative")
    B = build_exceptional_set(F, G, p0, P)
    A = sieve_bfree(B, x, keep_indicator=True).indicator
    lf, lg = lambda_values(F, x, check=False), lambda_values(G, x, check=False)
    tol = F.ctx.tol_classify
    shift = p0**t
    from_a1 = from_a2 = 0
    for n in np.flatnonzero(A):
        n = int(n)
        prod = lf[n] * lg[n]
        if prod == 0:
            raise ConsistencyError(f"B-free n={n} has a vanishing eigenvalue")
        m = n if prod < 0 else n * shift
        if m > x:
            continue
        if signum(lf[m], tol) == signum(lg[m], tol):
            raise ConsistencyError(f"witness n={m} does not have opposite signs")
        if prod < 0:
            from_a1 += 1
        else:
            from_a2 += 1
    return WitnessReport(x, p0, t, from_a1, from_a2, len(B))


def zero_eigenvalue_prime_count(F: SpinorForm, X: int) -> int:
    """#{p <= X : lambda_F(p) = 0}."""
    F.require_primes(X)
    return sum(1 for p in primerange(2, X + 1) if F.lambda_is_zero_at_prime(p))
