"""Distribution kinds, parsing, and the interval-mass functionals."""

import math

import numpy as np
import pytest

from rmfperc import (
    Exponential,
    Normal,
    ParameterError,
    PiecewiseLinearCdf,
    Uniform,
    UnsupportedDistributionError,
    locate_interval,
    max_mass,
    min_mass,
    parse_distribution,
)

# analytic value of the largest unit-interval mass of the standard normal,
# attained symmetrically about the mean: Phi(1/2) - Phi(-1/2)
NORMAL_UNIT_MASS = 0.38292492254802624


def triangular_pwl(a=0.0, m=0.5, b=1.0, knots=2001):
    """Triangular distribution realized as a piecewise-linear CDF."""
    xs = np.linspace(a, b, knots)
    fs = np.where(
        xs <= m,
        (xs - a) ** 2 / ((b - a) * (m - a)),
        1.0 - (b - xs) ** 2 / ((b - a) * (b - m)),
    )
    fs[0], fs[-1] = 0.0, 1.0
    return PiecewiseLinearCdf(xs, fs)


def test_uniform_cdf_quantile_roundtrip():
    d = Uniform(2.0, 5.0)
    u = np.linspace(0.01, 0.99, 50)
    assert np.allclose(d.cdf(d.quantile(u)), u)
    assert d.support == (2.0, 5.0)


def test_normal_quantile_matches_cdf():
    d = Normal(1.0, 2.0)
    u = np.linspace(0.001, 0.999, 101)
    assert np.allclose(d.cdf(d.quantile(u)), u, atol=1e-12)


def test_exponential_quantile_matches_cdf():
    d = Exponential(2.5)
    u = np.linspace(0.001, 0.999, 101)
    assert np.allclose(d.cdf(d.quantile(u)), u, atol=1e-12)


def test_parse_distribution_literals():
    assert isinstance(parse_distribution("uniform:0,1"), Uniform)
    assert isinstance(parse_distribution("normal:0,1"), Normal)
    assert isinstance(parse_distribution("exp:1"), Exponential)
    with pytest.raises(ParameterError):
        parse_distribution("cauchy:0,1")
    with pytest.raises(ParameterError):
        parse_distribution("uniform:1,0")


def test_parse_label_roundtrip():
    for lit in ("uniform:0,1", "normal:0,1", "exp:2"):
        d = parse_distribution(lit)
        d2 = parse_distribution(d.label())
        assert type(d) is type(d2)


def test_max_mass_uniform_closed_form():
    d = Uniform(0.0, 1.0)
    for c in np.linspace(0.01, 2.0, 100):
        iv = max_mass(d, float(c))
        assert abs(iv.mass - min(c, 1.0)) < 1e-12


def test_max_mass_normal_unit_interval():
    iv = max_mass(Normal(0.0, 1.0), 1.0)
    assert abs(iv.mass - NORMAL_UNIT_MASS) < 1e-12
    assert abs(iv.x_left + 0.5) < 1e-12


def test_max_mass_exponential_at_origin():
    iv = max_mass(Exponential(2.0), 0.5)
    assert abs(iv.x_left) < 1e-12
    assert abs(iv.mass - (1.0 - math.exp(-1.0))) < 1e-12


def test_max_mass_dominates_random_intervals():
    rng = np.random.default_rng(7)
    for d in (Normal(0, 1), Exponential(1.0), triangular_pwl()):
        for c in (0.2, 0.7):
            best = max_mass(d, c).mass
            xs = rng.uniform(-3, 3, 200)
            masses = np.asarray(d.cdf(xs + c)) - np.asarray(d.cdf(xs))
            assert best >= masses.max() - 1e-9


def test_min_mass_uniform():
    iv = min_mass(Uniform(0, 1), 0.5)
    assert abs(iv.mass - 0.5) < 1e-12


def test_min_mass_triangular_at_support_edge():
    d = triangular_pwl()
    iv = min_mass(d, 0.25)
    # the density vanishes at the support endpoints, so the lightest
    # quarter-length window hugs one edge
    assert min(abs(iv.x_left - 0.0), abs(iv.x_left + 0.25 - 1.0)) < 1e-9
    assert iv.mass == pytest.approx(0.125, rel=1e-2)
    rng = np.random.default_rng(3)
    xs = rng.uniform(0, 0.75, 200)
    masses = np.asarray(d.cdf(xs + 0.25)) - np.asarray(d.cdf(xs))
    assert iv.mass <= masses.min() + 1e-9


def test_min_mass_rejects_unbounded_support():
    with pytest.raises(UnsupportedDistributionError):
        min_mass(Normal(0, 1), 0.5)
    with pytest.raises(UnsupportedDistributionError):
        min_mass(Exponential(1.0), 0.5)


def test_min_mass_rejects_interval_longer_than_support():
    with pytest.raises(ParameterError):
        min_mass(Uniform(0, 1), 1.5)


def test_locate_interval_normal_case():
    iv = locate_interval(Normal(0, 1), -2.0, 4.0, 1.0)
    assert (iv.x_left, iv.length) == (-1.0, 1.0)
    assert iv.mass == pytest.approx(0.3413447460685429, abs=1e-12)


def test_locate_interval_mass_guarantee_random():
    rng = np.random.default_rng(11)
    dists = [Uniform(0, 1), Normal(0, 1), Exponential(1.0), triangular_pwl()]
    for i in range(100):
        d = dists[i % len(dists)]
        x1 = float(rng.uniform(-1, 0.5))
        eps1 = float(rng.uniform(0.5, 4.0))
        k = int(rng.integers(1, 8))
        m0 = d.cdf(x1 + eps1) - d.cdf(x1)
        if not m0 > 0:
            continue
        iv = locate_interval(d, x1, eps1, eps1 / 2**k)
        assert iv.mass >= m0 / 2**k - 1e-12
        assert x1 - 1e-12 <= iv.x_left <= x1 + eps1 + 1e-12


def test_locate_interval_rejects_non_dyadic_target():
    with pytest.raises(ParameterError):
        locate_interval(Uniform(0, 1), 0.0, 1.0, 0.3)


def test_locate_interval_rejects_empty_start():
    with pytest.raises(ParameterError):
        locate_interval(Uniform(0, 1), 5.0, 1.0, 0.5)


def test_pwl_quantile_roundtrip():
    d = triangular_pwl()
    u = np.linspace(0.01, 0.99, 99)
    assert np.allclose(d.cdf(d.quantile(u)), u, atol=1e-9)
