from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import quartic_roots
from siegelsigns.eigenform import LocalHeckeEigenvalues
from siegelsigns.errors import PrecisionExhaustedError
from siegelsigns.precision import PrecisionContext
from siegelsigns.satake import (
    SatakeClass,
    SatakeParameters,
    build_hecke_polynomial,
    classify,
    multiset_distance,
    solve_satake,
)
from siegelsigns.synthetic import eigen_from_satake, sample_tempered_satake, torus_satake


def test_sk_polynomial_coefficients():
    poly = build_hecke_polynomial(LocalHeckeEigenvalues(2, 240, 135424), 10)
    assert poly.coefficients == (1, -240, -143360, -31457280, 2**34)
    assert poly.structure_holds()


@pytest.mark.parametrize("p, k", [(2, 10), (3, 12), (7, 20)])
def test_zero_eigenvalue_polynomial(p, k):
    poly = build_hecke_polynomial(LocalHeckeEigenvalues(p, 0, 0), k)
    assert poly.coefficients == (1, 0, -Fraction(p) ** (2 * k - 4), 0, Fraction(p) ** (4 * k - 6))


@settings(max_examples=200, deadline=None)
@given(p=st.sampled_from([2, 3, 5, 7, 11, 97]), k=st.integers(4, 30),
       mu_p=st.fractions(), mu_p2=st.fractions())
def test_structure_exact_for_any_data(p, k, mu_p, mu_p2):
    poly = build_hecke_polynomial(LocalHeckeEigenvalues(p, mu_p, mu_p2), k)
    assert poly.a1 == poly.a3 * p ** (2 * k - 3)
    assert poly.a0 == Fraction(p) ** (4 * k - 6)


def test_sk_solution(ctx):
    sp = solve_satake(build_hecke_polynomial(LocalHeckeEigenvalues(2, 240, 135424), 10), ctx)
    mp = ctx.mp
    reals = sorted(b.real for b in sp.beta if b.imag == 0)
    assert len(reals) == 2
    assert abs(reals[0] - 1 / mp.sqrt(2)) < 1e-50
    assert abs(reals[1] - mp.sqrt(2)) < 1e-50
    unit = [b for b in sp.beta if b.imag != 0]
    assert abs(unit[0] - mp.conj(unit[1])) < 1e-50
    assert all(abs(abs(u) - 1) < 1e-50 for u in unit)
    assert classify(sp, 1e-12, ctx) is SatakeClass.SK_TYPE


def test_zero_eigenvalues_solution(ctx):
    # X^4 - p^(2k-4) X^2 + p^(4k-6): normalized roots are +-i p^(+-1/2)... checked by back substitution
    p, k = 3, 10
    poly = build_hecke_polynomial(LocalHeckeEigenvalues(p, 0, 0), k)
    sp = solve_satake(poly, ctx)
    assert sp.residual < ctx.tol_roundtrip
    with mpmath.workprec(400):
        ref = quartic_roots(poly.coefficients)
        s = mpmath.mpf(p) ** (k - 2) * mpmath.sqrt(p)
        ref = [mpmath.mpc(r) / s for r in ref]
        got = [mpmath.mpc(b) for b in sp.beta]
        assert multiset_distance(got, ref) < 1e-40
    # beta + 1/beta solves Y^2 + 1/p + 2 - 2 ... pairs multiply to 1
    for u, v in sp.pairs:
        assert abs(u * v - 1) < 1e-50


def test_matches_polyroots_oracle(ctx):
    for seed in range(20):
        _, truth = sample_tempered_satake(seed, 5, 0.01, ctx)
        loc = eigen_from_satake(truth, 5, 14, ctx)
        poly = build_hecke_polynomial(loc, 14)
        sp = solve_satake(poly, ctx)
        with mpmath.workprec(400):
            s = mpmath.mpf(5) ** 12 * mpmath.sqrt(5)
            ref = [mpmath.mpc(r) / s for r in quartic_roots(poly.coefficients)]
            assert multiset_distance([mpmath.mpc(b) for b in sp.beta], ref) < 1e-40


def test_invariants_hold(ctx, synth_small, sk10_small):
    for data in (synth_small, sk10_small):
        for p, loc in list(data.local.items())[:10]:
            sp = solve_satake(build_hecke_polynomial(loc, data.weight), ctx)
            assert sp.is_valid(ctx.tol_roundtrip)
            prod = sp.beta[0] * sp.beta[1] * sp.beta[2] * sp.beta[3]
            assert abs(prod - 1) < ctx.tol_roundtrip


def test_torus_round_trip(ctx):
    for seed in range(50):
        _, truth = sample_tempered_satake(seed, 7, 1e-3, ctx)
        sp = solve_satake(build_hecke_polynomial(eigen_from_satake(truth, 7, 12, ctx), 12), ctx)
        assert multiset_distance(sp.beta, truth.beta) < ctx.tol_roundtrip
        assert classify(sp, ctx.tol_classify, ctx) is SatakeClass.TEMPERED


def test_ordering_is_deterministic_and_pairs_slots(ctx):
    sp = torus_satake(2, 2.0, 0.5, ctx)
    solved = solve_satake(build_hecke_polynomial(eigen_from_satake(sp, 2, 10, ctx), 10), ctx)
    args = [float(mpmath.arg(b)) % (2 * mpmath.pi) for b in solved.beta]
    assert args == sorted(args)
    assert abs(solved.beta[0] * solved.beta[3] - 1) < 1e-40
    assert abs(solved.beta[1] * solved.beta[2] - 1) < 1e-40
    assert max(abs(a - b) for a, b in zip(solved.beta, sp.beta)) < 1e-40


def test_classify_other(ctx):
    mp = ctx.mp
    z = mp.expj(mp.mpf("0.7"))
    sp = SatakeParameters(3, (mp.mpc(0.5), z, mp.conj(z), mp.mpc(2)))
    assert classify(sp, 1e-12, ctx) is SatakeClass.OTHER


def test_classify_tempered_torus(ctx):
    assert classify(torus_satake(5, 0.3, 1.9, ctx), 1e-12, ctx) is SatakeClass.TEMPERED


def test_repeated_roots_are_reported(ctx):
    # all beta = 1: a double double root
    sp = torus_satake(2, 0.0, 0.0, ctx)
    solved = solve_satake(build_hecke_polynomial(eigen_from_satake(sp, 2, 10, ctx), 10), ctx)
    assert multiset_distance(solved.beta, sp.beta) < 1e-20


def test_precision_exhaustion():
    # a tolerance below what even the ceiling precision can meet
    ctx = PrecisionContext(mantissa_bits=64, tol_roundtrip=1e-300, max_bits=128)
    poly = build_hecke_polynomial(LocalHeckeEigenvalues(3, Fraction(1, 3), Fraction(2, 7)), 10)
    with pytest.raises(PrecisionExhaustedError):
        solve_satake(poly, ctx)


def test_precision_escalation_succeeds():
    ctx = PrecisionContext(mantissa_bits=64, tol_roundtrip=1e-25)
    poly = build_hecke_polynomial(LocalHeckeEigenvalues(2, 240, 135424), 10)
    sp = solve_satake(poly, ctx)
    assert sp.residual < 1e-25
