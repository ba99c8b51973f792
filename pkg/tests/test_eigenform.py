import io
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from siegelsigns.eigenform import (
    EigenformData,
    Kind,
    LocalHeckeEigenvalues,
    normalize,
    parse_eigenform,
    serialize_eigenform,
)
from siegelsigns.errors import InvalidIndexError, ParseError
from siegelsigns.precision import PrecisionContext, to_fraction


MINIMAL = """\
# one prime only
label=tiny
weight=10
kind=ingested
2 240 135424
"""


def test_normalize_sk_value(ctx):
    # 240 * 2^(3/2 - 10) = 240 / 2^8.5
    with mpmath.workprec(400):
        expected = mpmath.mpf(240) / mpmath.power(2, mpmath.mpf(17) / 2)
    got = normalize(240, 2, 10, ctx)
    assert abs(got - expected) < mpmath.mpf(2) ** -185
    assert float(got) == pytest.approx(0.6629126074, abs=1e-10)


def test_normalize_n1_exact(ctx):
    assert normalize(Fraction(7, 3), 1, 12, ctx) == ctx.mpf(Fraction(7, 3))


def test_normalize_prime_square():
    # 135424 * 4^(3/2 - 10) = 135424 / 2^17 exactly
    assert normalize(135424, 4, 10) == mpmath.mpf(135424) / 2**17
    assert float(normalize(135424, 4, 10)) == pytest.approx(1.033203125)


def test_normalize_rejects_bad_index():
    with pytest.raises(InvalidIndexError):
        normalize(1, 0, 10)


@settings(max_examples=60, deadline=None)
@given(mu=st.fractions(), n=st.integers(1, 10**6), k=st.integers(4, 40))
def test_normalize_recovers_mu_within_one_ulp(mu, n, k):
    ctx = PrecisionContext()
    lam = normalize(mu, n, k, ctx)
    with mpmath.workprec(ctx.mantissa_bits + 64):
        # arithmetic on lam itself would round to its own 192-bit context
        back = mpmath.mpf(lam) * mpmath.mpf(n) ** (k - 2) * mpmath.sqrt(n)
        target = mpmath.mpf(mu.numerator) / mu.denominator
        ulp = mpmath.mpf(2) ** (mpmath.floor(mpmath.log(abs(target), 2)) + 1 - ctx.mantissa_bits) if mu else 0
        assert abs(back - target) <= ulp


def test_parse_minimal():
    form = parse_eigenform(MINIMAL)
    assert form.label == "tiny" and form.weight == 10 and form.kind is Kind.INGESTED
    assert list(form.local) == [2]
    assert form.local[2].mu_p == 240 and form.local[2].mu_p2 == 135424
    assert form.exact


def test_parse_rejects_non_prime_row():
    with pytest.raises(ParseError, match="line 4: 4 not prime"):
        parse_eigenform("label=x\nweight=10\nkind=synthetic\n4 1 1\n")


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("label=x\nweight=10\n2 1 1\n", "missing header 'kind'"),
        ("label=x\nweight=ten\nkind=ingested\n", "malformed header"),
        ("label=x\nweight=10\nkind=other\n", "malformed header"),
        ("label=x\nweight=10\nkind=ingested\n2 1/0 1\n", "line 4: zero denominator"),
        ("label=x\nweight=10\nkind=ingested\n2 abc 1\n", "line 4: cannot parse"),
        ("label=x\nweight=10\nkind=ingested\n2 1\n", "line 4: expected"),
        ("label=x\nweight=10\nkind=ingested\n2 1 1\ncolor=red\n", "line 5"),
        ("label=x\nweight=3\nkind=ingested\n", "weight must be >= 4"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_eigenform(text)


def test_sk_fixture_file(sk10_small):
    text = serialize_eigenform(sk10_small)
    assert "\n2 240 135424\n" in text
    back = parse_eigenform(io.StringIO(text))
    assert back.local[2] == LocalHeckeEigenvalues(2, 240, 135424)


def test_decimal_input_is_exact():
    form = parse_eigenform("label=d\nweight=8\nkind=ingested\nprecision=128\n3 1.25 -2.5e-3\n")
    assert form.local[3].mu_p == Fraction(5, 4)
    assert form.local[3].mu_p2 == Fraction(-1, 400)
    assert not form.exact


def test_synthetic_round_trip_bit_exact(synth_small):
    text = serialize_eigenform(synth_small)
    back = parse_eigenform(text)
    assert back == synth_small
    assert serialize_eigenform(back) == text


primes = st.sampled_from([2, 3, 5, 7, 11, 13, 101, 7919])
locals_ = st.builds(LocalHeckeEigenvalues, primes, st.fractions(), st.fractions())


@settings(max_examples=100, deadline=None)
@given(
    label=st.text(st.characters(blacklist_characters="#\n\r", blacklist_categories=("Cs", "Cc")),
                  min_size=1, max_size=20).filter(lambda s: s.strip() == s and s),
    weight=st.integers(4, 60),
    kind=st.sampled_from(list(Kind)),
    locs=st.lists(locals_, max_size=8, unique_by=lambda l: l.p),
    precision=st.one_of(st.none(), st.integers(64, 1024)),
)
def test_round_trip_property(label, weight, kind, locs, precision):
    form = EigenformData.from_locals(label, weight, kind, locs, precision)
    assert parse_eigenform(serialize_eigenform(form)) == form


def test_invalid_construction():
    with pytest.raises(ValueError):
        LocalHeckeEigenvalues(9, 1, 1)
    with pytest.raises(ValueError):
        EigenformData("", 10, Kind.INGESTED)
    with pytest.raises(ValueError):
        EigenformData("x", 2, Kind.INGESTED)
    with pytest.raises(ValueError):
        PrecisionContext(mantissa_bits=32)


def test_to_fraction_signs():
    assert to_fraction(mpmath.mpf(-1.5)) == Fraction(-3, 2)
    assert to_fraction(mpmath.mpf(0)) == 0
    assert to_fraction(mpmath.mpf(2) ** 70) == 2**70
