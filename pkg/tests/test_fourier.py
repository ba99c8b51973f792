from fractions import Fraction

import pytest

from oracles import class_number_bruteforce
from siegelsigns.eigenform import LocalHeckeEigenvalues
from siegelsigns.errors import PreconditionError
from siegelsigns.fourier import (
    RayIndex,
    class_number,
    class_number_one_discriminants,
    fourier_along_ray,
    is_fundamental_discriminant,
    mu_values,
    ray_sign_report,
    reduced_forms,
    validate_t0,
)
from siegelsigns.pairs import ZeroPolicy, sign_change_indices
from siegelsigns.spinor import SpinorForm
from siegelsigns.synthetic import with_local

T_GAUSS = RayIndex(1, 0, 1)


@pytest.mark.parametrize("D, h", [(3, 1), (4, 1), (23, 3), (20, 2), (56, 4), (163, 1)])
def test_class_numbers(D, h):
    assert class_number(D) == h == class_number_bruteforce(D)


def test_class_number_matches_oracle_range():
    for D in range(3, 300):
        if (-D) % 4 in (0, 1):
            assert class_number(D) == class_number_bruteforce(D), D


def test_reduced_forms_example():
    assert reduced_forms(23) == [(1, 1, 6), (2, -1, 3), (2, 1, 3)]
    # non-primitive 2x^2 + 2xy + 2y^2 only appears when asked for
    assert (2, 2, 2) in reduced_forms(12, primitive=False)
    assert (2, 2, 2) not in reduced_forms(12)


def test_fundamental_discriminants():
    assert [d for d in range(-20, 0) if is_fundamental_discriminant(d)] == [-20, -19, -15, -11, -8, -7, -4, -3]


def test_class_number_one_list():
    assert class_number_one_discriminants(200) == [3, 4, 7, 8, 11, 19, 43, 67, 163]


@pytest.mark.parametrize("abc, ok", [((1, 1, 1), True), ((1, 0, 1), True), ((1, 0, 3), False),
                                     ((1, 0, 5), False), ((2, 1, 3), False), ((1, 1, 41), True)])
def test_validate_t0(abc, ok):
    assert validate_t0(RayIndex(*abc)) is ok


def test_not_positive_definite():
    with pytest.raises(PreconditionError):
        RayIndex(1, 3, 1)
    with pytest.raises(PreconditionError):
        RayIndex(-1, 0, -1)


def test_ray_first_coefficient(ctx, synth_small):
    F = SpinorForm(synth_small, ctx)
    ray = fourier_along_ray(Fraction(-7, 2), F, 10, T_GAUSS)
    assert ray[0].n == 1 and ray[0].value == ctx.mpf(Fraction(-7, 2)) and ray[0].sign == -1


def test_ray_sk_values(ctx, sk10_small):
    F = SpinorForm(sk10_small, ctx)
    ray = fourier_along_ray(3, F, 100, RayIndex(1, 1, 1))
    assert abs(ray[1].value - 3 * 240) < 1e-40
    assert abs(ray[3].value - 3 * 135424) < 1e-35
    assert all(c.sign == 1 for c in ray)


def test_ray_signs_follow_lambda(ctx, synth_small):
    F = SpinorForm(synth_small, ctx)
    mu = mu_values(F, 60)
    ray = fourier_along_ray(-1, F, 60, T_GAUSS)
    assert all(c.sign == -(1 if mu[c.n] > 0 else -1) for c in ray)


def test_ray_rejects_bad_t0(ctx, synth_small):
    F = SpinorForm(synth_small, ctx)
    with pytest.raises(PreconditionError, match="class number"):
        fourier_along_ray(1, F, 10, RayIndex(1, 0, 5))
    with pytest.raises(PreconditionError):
        fourier_along_ray(0, F, 10, T_GAUSS)


def test_ray_sign_report(ctx, synth_small):
    loc = synth_small.local[2]
    G = with_local(synth_small, LocalHeckeEigenvalues(2, -loc.mu_p, loc.mu_p2), "flipped")
    F, G = SpinorForm(synth_small, ctx), SpinorForm(G, ctx)
    products, changes = ray_sign_report(F, G, T_GAUSS, 2, 30)
    lam = [F.lambda_pp(2, r) * G.lambda_pp(2, r) for r in range(31)]
    assert changes.positions == sign_change_indices(lam, ZeroPolicy.SKIP, ctx.tol_classify).positions
    assert len(products) == 31 and products[0] == 1
    # negating beta at p flips lambda(p^r) for odd r only
    assert products[1] < 0 and changes.positions[0] == 1


def test_ray_sign_report_self(ctx, synth_small):
    F = SpinorForm(synth_small, ctx)
    _, changes = ray_sign_report(F, F, RayIndex(1, 1, 1), 3, 20)
    assert changes.positions == []
