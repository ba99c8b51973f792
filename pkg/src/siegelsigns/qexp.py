"""Exact q-expansions of level-1 Eisenstein series and the dimension-one cusp forms.

Products of truncated expansions use Kronecker substitution: each coefficient
list is packed into one big integer, multiplied once, and unpacked. This keeps
expansions to q^10000 well under a second.
"""

from __future__ import annotations

from dataclasses import dataclass

from sympy import primerange

from .errors import ConsistencyError, PreconditionError

SUPPORTED_CUSP_WEIGHTS = (12, 16, 18, 20, 22, 26)


def divisor_power_sums(k: int, N: int) -> list[int]:
    """sigma_k(n) for 0 <= n <= N (sigma_k(0) = 0)."""
    sig = [0] * (N + 1)
    for d in range(1, N + 1):
        dk = d**k
        for m in range(d, N + 1, d):
            sig[m] += dk
    return sig


def _hex_width(bits):
    return (bits + 3) // 4


def _pack(coeffs, width):
    off = 1 << (4 * width - 1)
    text = "".join(format(c + off, f"0{width}x") for c in reversed(coeffs))
    return int(text, 16) - int(("8" + "0" * (width - 1)) * len(coeffs), 16)


def _unpack(value, width, count):
    off = 1 << (4 * width - 1)
    biased = value + int(("8" + "0" * (width - 1)) * count, 16)
    text = format(biased, "x").rjust(width * count, "0")
    if len(text) != width * count:
        raise ConsistencyError("Kronecker unpacking overflow")
    return [int(text[i : i + width], 16) - off for i in range(len(text) - width, -1, -width)]


def mul_trunc(a: list[int], b: list[int], N: int) -> list[int]:
    """Coefficients 0..N of the product of two integer series."""
    a, b = a[: N + 1], b[: N + 1]
    if not a or not b:
        return [0] * (N + 1)
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    width = _hex_width(bound.bit_length() + 2)
    prod = _pack(a, width) * _pack(b, width)
    out = _unpack(prod, width, len(a) + len(b) - 1)[: N + 1]
    return out + [0] * (N + 1 - len(out))


def eisenstein_expansion(w: int, N: int) -> list[int]:
    """E_4 or E_6 to q^N, constant term 1."""
    if N < 1:
        raise PreconditionError("expansion length N must be >= 1")
    if w == 4:
        sig, c = divisor_power_sums(3, N), 240
    elif w == 6:
        sig, c = divisor_power_sums(5, N), -504
    else:
        raise PreconditionError(f"only E_4 and E_6 are generators, got weight {w}")
    return [1] + [c * s for s in sig[1:]]


def delta_expansion(N: int) -> list[int]:
    """Delta = (E_4^3 - E_6^2)/1728 to q^N; every coefficient must divide exactly."""
    e4, e6 = eisenstein_expansion(4, N), eisenstein_expansion(6, N)
    num = mul_trunc(mul_trunc(e4, e4, N), e4, N)
    e6sq = mul_trunc(e6, e6, N)
    out = []
    for n in range(N + 1):
        q, r = divmod(num[n] - e6sq[n], 1728)
        if r:
            raise ConsistencyError(f"E4^3 - E6^2 not divisible by 1728 at q^{n}")
        out.append(q)
    return out


def _eisenstein_factor(w, N):
    if w == 0:
        return [1] + [0] * N
    e4, e6 = eisenstein_expansion(4, N), eisenstein_expansion(6, N)
    if w == 4:
        return e4
    if w == 6:
        return e6
    if w == 8:
        return mul_trunc(e4, e4, N)
    if w == 10:
        return mul_trunc(e4, e6, N)
    if w == 14:
        return mul_trunc(mul_trunc(e4, e4, N), e6, N)
    raise PreconditionError(f"no Eisenstein factor of weight {w}")


@dataclass(frozen=True)
class EllipticEigenform:
    weight: int
    coeffs: tuple  # coeffs[n] = a(n), coeffs[0] = 0

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def a(self, n: int) -> int:
        if not 1 <= n <= self.N:
            raise IndexError(f"a({n}) outside computed range 1..{self.N}")
        return self.coeffs[n]


def one_dim_eigenform(w: int, N: int) -> EllipticEigenform:
    """Normalized cusp eigenform of weight w on SL2(Z) for the one-dimensional spaces."""
    if w not in SUPPORTED_CUSP_WEIGHTS:
        raise PreconditionError(
            f"weight {w} unsupported; choose one of {SUPPORTED_CUSP_WEIGHTS}"
        )
    coeffs = mul_trunc(delta_expansion(N), _eisenstein_factor(w - 12, N), N)
    if N >= 1 and coeffs[1] != 1:
        raise ConsistencyError("eigenform not normalized")
    f = EllipticEigenform(w, tuple(coeffs))
    _check_hecke(f)
    return f


def _check_hecke(f: EllipticEigenform) -> None:
    for p in primerange(2, int(f.N**0.5) + 1):
        if f.a(p * p) != f.a(p) ** 2 - p ** (f.weight - 1):
            raise ConsistencyError(f"Hecke relation fails at p={p}, weight {f.weight}")
