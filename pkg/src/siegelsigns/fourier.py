"""Fourier coefficients along a ray n*T0 and admissibility of T0.

When -det(2 T0) = -D0 is a fundamental discriminant of class number one,
A(n T0) = A(T0) mu(n) for all n >= 1, so the signs along the ray are the
signs of the normalized eigenvalues.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from sympy import factorint

from .errors import ConsistencyError, InvalidIndexError, PreconditionError
from .pairs import ZeroPolicy, sign_change_indices, signum
from .spinor import SpinorForm, lambda_values


@dataclass(frozen=True)
class RayIndex:
    """T0 = [[a, b/2], [b/2, c]]."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a <= 0 or self.D0 <= 0:
            raise PreconditionError(f"T0 = ({self.a}, {self.b}, {self.c}) is not positive definite")

    @property
    def D0(self) -> int:
        return 4 * self.a * self.c - self.b * self.b


def _squarefree(n: int) -> bool:
    return all(e == 1 for e in factorint(n).values())


def is_fundamental_discriminant(d: int) -> bool:
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return _squarefree(abs(d))
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(abs(m))
    return False


def reduced_forms(D: int, primitive: bool = True) -> list[tuple[int, int, int]]:
    """Reduced positive-definite forms (a, b, c) with b^2 - 4ac = -D.

    Reduced means |b| <= a <= c, with b >= 0 whenever |b| = a or a = c.
    """
    if D <= 0 or (-D) % 4 not in (0, 1):
        raise PreconditionError(f"-{D} is not a discriminant")
    out = []
    a = 1
    while 3 * a * a <= D:
        for b in range(-a + 1, a + 1):
            if (b * b + D) % (4 * a):
                continue
            c = (b * b + D) // (4 * a)
            if c < a or (b < 0 and a == c):
                continue
            if primitive and math.gcd(math.gcd(a, b), c) != 1:
                continue
            out.append((a, b, c))
        a += 1
    return out


def class_number(D: int, primitive: bool = True) -> int:
    """h(-D) by enumeration of reduced forms."""
    return len(reduced_forms(D, primitive))


def class_number_one_discriminants(bound: int) -> list[int]:
    """Fundamental D <= bound with h(-D) = 1, by enumeration."""
    return [D for D in range(3, bound + 1)
            if is_fundamental_discriminant(-D) and class_number(D) == 1]


def validate_t0(idx: RayIndex) -> bool:
    D0 = idx.D0
    return is_fundamental_discriminant(-D0) and class_number(D0) == 1


def _require_valid(idx: RayIndex):
    if not validate_t0(idx):
        raise PreconditionError(
            f"T0 = ({idx.a}, {idx.b}, {idx.c}) with D0 = {idx.D0}: -D0 must be a "
            "fundamental discriminant of class number 1"
        )


def mu_values(F: SpinorForm, X: int) -> list:
    """mu(n) = n^(k - 3/2) lambda(n) for n = 0..X (index 0 unused)."""
    lam = lambda_values(F, X)
    mp = F.ctx.mp
    k = F.weight
    out = [mp.mpf(0)]
    for n in range(1, X + 1):
        out.append(lam[n] * mp.mpf(n) ** (k - 2) * mp.sqrt(n))
    return out


@dataclass(frozen=True)
class RayCoefficient:
    n: int
    value: object
    sign: int


def fourier_along_ray(A_T0, F: SpinorForm, X: int, t0: RayIndex) -> list[RayCoefficient]:
    """A(n T0) = A(T0) mu(n) for 1 <= n <= X."""
    _require_valid(t0)
    if A_T0 == 0:
        raise PreconditionError("A(T0) must be nonzero")
    if X < 1:
        raise InvalidIndexError("X must be >= 1")
    lam = lambda_values(F, X)
    mp = F.ctx.mp
    tol = F.ctx.tol_classify
    a = F.ctx.mpf(A_T0)
    k = F.weight
    out = []
    for n in range(1, X + 1):
        scale = mp.mpf(n) ** (k - 2) * mp.sqrt(n)
        value = a * lam[n] * scale
        out.append(RayCoefficient(n, value, signum(value, tol * abs(a) * scale)))
    return out


def ray_sign_report(F: SpinorForm, G: SpinorForm, idx: RayIndex, p: int, R: int):
    """Sign changes of A_F(p^r T0) A_G(p^r T0), r = 0..R, with A_F(T0) = A_G(T0) = 1.

    Cross-checked against the sign changes of lambda_F(p^r) lambda_G(p^r).
    Returns (products, SignChanges).
    """
    _require_valid(idx)
    if R < 0:
        raise InvalidIndexError("R must be >= 0")
    mp = F.ctx.mp
    tol = F.ctx.tol_classify
    kF, kG = F.weight, G.weight
    products, lam_products, ray_signs = [], [], []
    for r in range(R + 1):
        lf, lg = F.lambda_pp(p, r), G.lambda_pp(p, r)
        n = mp.mpf(p) ** r
        muf = lf * n ** (kF - 2) * mp.sqrt(n)
        mug = lg * n ** (kG - 2) * mp.sqrt(n)
        prod = muf * mug
        products.append(prod)
        lam_products.append(lf * lg)
        # zero threshold scaled by the positive factor n^(kF + kG - 3)
        ray_signs.append(signum(prod, tol * n ** (kF + kG - 3)))
    changes = sign_change_indices(ray_signs, ZeroPolicy.SKIP)
    reference = sign_change_indices(lam_products, ZeroPolicy.SKIP, tol)
    if changes.positions != reference.positions:
        raise ConsistencyError("ray sign changes differ from the eigenvalue sign changes")
    return products, changes
