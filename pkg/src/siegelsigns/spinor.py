"""Local spinor factors, their coefficient series, and the global eigenvalues.

Everything here is derived from Satake parameters; the only stored data are
the exact eigenvalues mu(p), mu(p^2).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from sympy import factorint, mobius, primerange

from .eigenform import EigenformData
from .errors import ConsistencyError, InvalidIndexError, MissingPrimeError
from .precision import DEFAULT_CONTEXT, PrecisionContext
from .satake import SatakeParameters, solve_local


@dataclass(frozen=True)
class TruncatedSeries:
    p: int
    coeffs: tuple

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, r):
        return self.coeffs[r]

    def __len__(self):
        return len(self.coeffs)


@dataclass(frozen=True)
class LocalSpinFactor:
    """Coefficients c0..c4 of prod(1 - beta_i x)."""

    p: int
    coeffs: tuple


def elementary_symmetric(values, mp):
    """e_0..e_n of ``values`` (complex), by the usual product expansion."""
    e = [mp.mpc(1)] + [mp.mpc(0)] * len(values)
    for v in values:
        for j in range(len(e) - 1, 0, -1):
            e[j] += v * e[j - 1]
    return e


def real_elementary(sp: SatakeParameters, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """e_0..e_4 of the Satake parameters; they are real for real Hecke data."""
    mp = ctx.mp
    e = elementary_symmetric(sp.beta, mp)
    scale = max(1, max(abs(x) for x in e))
    if max(abs(x.imag) for x in e) > ctx.tol_roundtrip * scale:
        raise ConsistencyError(f"non-real symmetric functions at p={sp.p}")
    return [x.real for x in e]


def local_spin_inverse(sp: SatakeParameters, ctx: PrecisionContext = DEFAULT_CONTEXT) -> LocalSpinFactor:
    e = real_elementary(sp, ctx)
    return LocalSpinFactor(sp.p, tuple((-1) ** j * e[j] for j in range(5)))


def _a_coefficients(e, R, mp):
    # h_r = e1 h_{r-1} - e2 h_{r-2} + e3 h_{r-3} - e4 h_{r-4}
    h = [mp.mpf(1)]
    for r in range(1, R + 1):
        acc = mp.mpf(0)
        for j in range(1, min(r, 4) + 1):
            term = e[j] * h[r - j]
            acc = acc + term if j % 2 else acc - term
        h.append(acc)
    return h


def local_a_series(sp: SatakeParameters, R: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> TruncatedSeries:
    """a(p^r) for r <= R: coefficients of prod(1 - beta_i x)^(-1)."""
    if R < 0:
        raise InvalidIndexError("series order must be >= 0")
    return TruncatedSeries(sp.p, tuple(_a_coefficients(real_elementary(sp, ctx), R, ctx.mp)))


def local_lambda_series(sp: SatakeParameters, R: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> TruncatedSeries:
    """lambda(p^r) for r <= R: coefficients of (1 - x^2/p) prod(1 - beta_i x)^(-1)."""
    if R < 0:
        raise InvalidIndexError("series order must be >= 0")
    mp = ctx.mp
    h = _a_coefficients(real_elementary(sp, ctx), R, mp)
    inv_p = 1 / mp.mpf(sp.p)
    lam = [h[r] - (h[r - 2] * inv_p if r >= 2 else 0) for r in range(R + 1)]
    return TruncatedSeries(sp.p, tuple(lam))


def d4(n: int) -> int:
    """Number of ordered factorizations n = abcd."""
    if n < 1:
        raise InvalidIndexError("d4 needs n >= 1")
    out = 1
    for e in factorint(n).values():
        out *= comb(e + 3, 3)
    return out


class SpinorForm:
    """An eigenform together with its (lazily) solved Satake parameters.

    Local series are cached per prime and extended on demand.
    """

    def __init__(self, data: EigenformData, ctx: PrecisionContext = DEFAULT_CONTEXT):
        self.data = data
        self.ctx = ctx
        self._satake: dict[int, SatakeParameters] = {}
        self._a: dict[int, list] = {}
        self._lam: dict[int, list] = {}

    def __repr__(self):
        return f"SpinorForm({self.data.label!r}, weight={self.weight})"

    @property
    def label(self):
        return self.data.label

    @property
    def weight(self):
        return self.data.weight

    def satake(self, p: int) -> SatakeParameters:
        sp = self._satake.get(p)
        if sp is None:
            if p not in self.data.local:
                raise MissingPrimeError(p, self.data.label)
            sp = solve_local(self.data.local[p], self.weight, self.ctx)
            self._satake[p] = sp
        return sp

    def _extend(self, p, r):
        if r >= len(self._a.get(p, ())):
            R = max(r, 2 * len(self._a.get(p, ())), 8)
            sp = self.satake(p)
            self._a[p] = list(local_a_series(sp, R, self.ctx).coeffs)
            self._lam[p] = list(local_lambda_series(sp, R, self.ctx).coeffs)

    def a_pp(self, p: int, r: int):
        self._extend(p, r)
        return self._a[p][r]

    def lambda_pp(self, p: int, r: int):
        self._extend(p, r)
        return self._lam[p][r]

    def lambda_is_zero_at_prime(self, p: int) -> bool:
        """lambda(p) = 0, exactly for exact data, else within tol_classify."""
        if p not in self.data.local:
            raise MissingPrimeError(p, self.data.label)
        if self.data.exact:
            return self.data.local[p].mu_p == 0
        return abs(self.lambda_pp(p, 1)) < self.ctx.tol_classify

    def require_primes(self, X: int) -> None:
        for p in primerange(2, X + 1):
            if p not in self.data.local:
                raise MissingPrimeError(p, self.data.label)


def solve_form(data: EigenformData, ctx: PrecisionContext = DEFAULT_CONTEXT) -> SpinorForm:
    return SpinorForm(data, ctx)


def _factor(n):
    if n < 1:
        raise InvalidIndexError(f"index must be >= 1, got {n}")
    return factorint(n)


def global_a(F: SpinorForm, n: int):
    out = F.ctx.mp.mpf(1)
    for p, e in _factor(n).items():
        out *= F.a_pp(p, e)
    return out


def lambda_euler(F: SpinorForm, n: int):
    """lambda(n) as the product of local lambda(p^e)."""
    out = F.ctx.mp.mpf(1)
    for p, e in _factor(n).items():
        out *= F.lambda_pp(p, e)
    return out


def lambda_mobius(F: SpinorForm, n: int):
    """lambda(n) = sum over d^2 | n of mu(d)/d * a(n/d^2)."""
    fac = _factor(n)
    for p in fac:
        if p not in F.data.local:
            raise MissingPrimeError(p, F.label)
    square_primes = [p for p, e in fac.items() if e >= 2]
    total = F.ctx.mp.mpf(0)
    for size in range(len(square_primes) + 1):
        for subset in itertools.combinations(square_primes, size):
            d = 1
            for p in subset:
                d *= p
            term = global_a(F, n // (d * d)) / d
            total = total - term if size % 2 else total + term
    return total


def global_lambda(F: SpinorForm, n: int):
    """lambda(n), computed by the Euler product and checked against the Moebius sum."""
    euler = lambda_euler(F, n)
    via_sum = lambda_mobius(F, n)
    if abs(euler - via_sum) > F.ctx.tol_roundtrip * max(1, abs(euler)):
        raise ConsistencyError(
            f"{F.label}: lambda({n}) Euler product {F.ctx.fmt(euler)} "
            f"!= Moebius sum {F.ctx.fmt(via_sum)}"
        )
    return euler


def _spf_table(X):
    spf = list(range(X + 1))
    i = 2
    while i * i <= X:
        if spf[i] == i:
            for j in range(i * i, X + 1, i):
                if spf[j] == j:
                    spf[j] = i
        i += 1
    return spf


def _multiplicative_table(X, local):
    """f(0..X) for multiplicative f given by local(p, e); f(0) is set to 0."""
    spf = _spf_table(X)
    out = [0] * (X + 1)
    if X >= 1:
        out[1] = 1
    for n in range(2, X + 1):
        p = spf[n]
        m, e = n, 0
        while m % p == 0:
            m //= p
            e += 1
        out[n] = local(p, e) * out[m]
    return out


def euler_lambda_table(F: SpinorForm, X: int) -> list:
    F.require_primes(X)
    table = _multiplicative_table(X, F.lambda_pp)
    table[1] = F.ctx.mp.mpf(1)
    return table


def a_table(F: SpinorForm, X: int) -> list:
    F.require_primes(X)
    table = _multiplicative_table(X, F.a_pp)
    table[1] = F.ctx.mp.mpf(1)
    return table


def mobius_lambda_table(F: SpinorForm, X: int) -> list:
    """lambda(1..X) via the Moebius sum over a(n); index 0 is unused."""
    a = a_table(F, X)
    mp = F.ctx.mp
    lam = [mp.mpf(0)] * (X + 1)
    d = 1
    while d * d <= X:
        mu_d = int(mobius(d))
        if mu_d:
            for m in range(1, X // (d * d) + 1):
                lam[d * d * m] += mu_d * a[m] / d
        d += 1
    return lam


def lambda_values(F: SpinorForm, X: int, check: bool = True) -> list:
    """lambda(0..X) (index 0 unused); with ``check`` both routes must agree."""
    euler = euler_lambda_table(F, X)
    if check:
        via_sum = mobius_lambda_table(F, X)
        tol = F.ctx.tol_roundtrip
        for n in range(1, X + 1):
            if abs(euler[n] - via_sum[n]) > tol * max(1, abs(euler[n])):
                raise ConsistencyError(f"{F.label}: lambda({n}) Euler/Moebius mismatch")
    return euler


def epsilon_bound_scan(F: SpinorForm, X: int, eps: float):
    """max over n <= X of |lambda(n)| / n^eps, and the n attaining it."""
    if X < 1:
        raise InvalidIndexError("scan range must be >= 1")
    lam = lambda_values(F, X)
    mp = F.ctx.mp
    best, arg = None, None
    for n in range(1, X + 1):
        v = abs(lam[n]) / mp.power(n, eps)
        if best is None or v > best:
            best, arg = v, n
    return best, arg
