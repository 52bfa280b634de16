"""Label distributions and interval-mass functionals.

A label distribution is described by its CDF and quantile map; the two
functionals of interest are the largest and the smallest probability mass
a length-``c`` interval can capture, plus the bisection construction that
locates a dyadic subinterval keeping at least its share of the mass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.special import ndtr, ndtri

from .errors import ParameterError, UnsupportedDistributionError

# Inline quantile codes understood by the compiled sweep kernels.
DIST_UNIFORM = 0
DIST_EXPONENTIAL = 1


@dataclass(frozen=True)
class IntervalMass:
    """An interval ``(x_left, x_left + length]`` and its probability mass."""

    x_left: float
    length: float
    mass: float


class Distribution:
    """Base class: a real distribution with CDF, quantile and optional density."""

    kind = "base"

    #: (lo, hi) endpoints of the support; may be +-inf.
    support = (-math.inf, math.inf)

    has_density = False

    def cdf(self, x):
        raise NotImplementedError

    def quantile(self, u):
        raise NotImplementedError

    def density(self, x):
        raise NotImplementedError

    @property
    def bounded_support(self) -> bool:
        lo, hi = self.support
        return math.isfinite(lo) and math.isfinite(hi)

    def inline_code(self):
        """(code, p0, p1) consumed by the compiled kernels, or None."""
        return None

    def label(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.label()}>"


class Uniform(Distribution):
    kind = "uniform"

    def __init__(self, a: float, b: float):
        if not (b > a):
            raise ParameterError(f"uniform needs a < b, got a={a}, b={b}")
        self.a = float(a)
        self.b = float(b)
        self.support = (self.a, self.b)
        self.has_density = True

    def cdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        out = np.clip((x - self.a) / (self.b - self.a), 0.0, 1.0)
        return float(out) if out.ndim == 0 else out

    def quantile(self, u):
        u = np.asarray(u, dtype=np.float64)
        out = self.a + (self.b - self.a) * u
        return float(out) if out.ndim == 0 else out

    def density(self, x):
        x = np.asarray(x, dtype=np.float64)
        out = np.where((x >= self.a) & (x <= self.b), 1.0 / (self.b - self.a), 0.0)
        return float(out) if out.ndim == 0 else out

    def inline_code(self):
        return (DIST_UNIFORM, self.a, self.b - self.a)

    def label(self):
        return f"uniform:{self.a:g},{self.b:g}"


class Normal(Distribution):
    kind = "normal"

    def __init__(self, mu: float, sigma: float):
        if not (sigma > 0):
            raise ParameterError(f"normal needs sigma > 0, got {sigma}")
        self.mu = float(mu)
        self.sigma = float(sigma)
        self.has_density = True

    def cdf(self, x):
        out = ndtr((np.asarray(x, dtype=np.float64) - self.mu) / self.sigma)
        return float(out) if np.ndim(out) == 0 else out

    def quantile(self, u):
        out = self.mu + self.sigma * ndtri(np.asarray(u, dtype=np.float64))
        return float(out) if np.ndim(out) == 0 else out

    def density(self, x):
        z = (np.asarray(x, dtype=np.float64) - self.mu) / self.sigma
        out = np.exp(-0.5 * z * z) / (self.sigma * math.sqrt(2.0 * math.pi))
        return float(out) if out.ndim == 0 else out

    def label(self):
        return f"normal:{self.mu:g},{self.sigma:g}"


class Exponential(Distribution):
    kind = "exponential"

    def __init__(self, rate: float):
        if not (rate > 0):
            raise ParameterError(f"exponential needs rate > 0, got {rate}")
        self.rate = float(rate)
        self.support = (0.0, math.inf)
        self.has_density = True

    def cdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        out = np.where(x > 0, -np.expm1(-self.rate * np.maximum(x, 0.0)), 0.0)
        return float(out) if out.ndim == 0 else out

    def quantile(self, u):
        u = np.asarray(u, dtype=np.float64)
        out = -np.log1p(-u) / self.rate
        return float(out) if out.ndim == 0 else out

    def density(self, x):
        x = np.asarray(x, dtype=np.float64)
        out = np.where(x >= 0, self.rate * np.exp(-self.rate * np.maximum(x, 0.0)), 0.0)
        return float(out) if out.ndim == 0 else out

    def inline_code(self):
        return (DIST_EXPONENTIAL, self.rate, 0.0)

    def label(self):
        return f"exp:{self.rate:g}"


class PiecewiseLinearCdf(Distribution):
    """CDF given as sorted breakpoints, linearly interpolated between them.

    Breakpoints must have strictly increasing x and nondecreasing CDF values
    running from 0 to 1; the implied density is piecewise constant.
    """

    kind = "pwl"

    def __init__(self, xs, fs, source: str | None = None):
        xs = np.asarray(xs, dtype=np.float64)
        fs = np.asarray(fs, dtype=np.float64)
        if xs.ndim != 1 or xs.shape != fs.shape or xs.size < 2:
            raise ParameterError("pwl needs matching 1-d x and F arrays, length >= 2")
        if not np.all(np.diff(xs) > 0):
            raise ParameterError("pwl x breakpoints must be strictly increasing")
        if not np.all(np.diff(fs) >= 0):
            raise ParameterError("pwl CDF values must be nondecreasing")
        if abs(fs[0]) > 1e-12 or abs(fs[-1] - 1.0) > 1e-12:
            raise ParameterError("pwl CDF must start at 0 and end at 1")
        self.xs = xs
        self.fs = fs
        self.support = (float(xs[0]), float(xs[-1]))
        self.has_density = True
        self._source = source
        # Drop duplicate CDF values (flat segments) for the inverse map.
        keep = np.concatenate(([True], np.diff(fs) > 0))
        self._qf = fs[keep]
        self._qx = xs[keep]

    def cdf(self, x):
        out = np.interp(np.asarray(x, dtype=np.float64), self.xs, self.fs)
        return float(out) if np.ndim(out) == 0 else out

    def quantile(self, u):
        out = np.interp(np.asarray(u, dtype=np.float64), self._qf, self._qx)
        return float(out) if np.ndim(out) == 0 else out

    def density(self, x):
        x = np.asarray(x, dtype=np.float64)
        slopes = np.diff(self.fs) / np.diff(self.xs)
        idx = np.clip(np.searchsorted(self.xs, x, side="right") - 1, 0, len(slopes) - 1)
        inside = (x >= self.xs[0]) & (x <= self.xs[-1])
        out = np.where(inside, slopes[idx], 0.0)
        return float(out) if out.ndim == 0 else out

    def label(self):
        return f"pwl:@{self._source}" if self._source else "pwl:<inline>"


def parse_distribution(text: str) -> Distribution:
    """Parse a distribution literal such as ``uniform:0,1`` or ``pwl:@f.csv``."""
    try:
        kind, _, rest = text.partition(":")
        kind = kind.strip().lower()
        if kind == "uniform":
            a, b = (float(t) for t in rest.split(","))
            return Uniform(a, b)
        if kind == "normal":
            mu, sigma = (float(t) for t in rest.split(","))
            return Normal(mu, sigma)
        if kind == "exp":
            return Exponential(float(rest))
        if kind == "pwl":
            if not rest.startswith("@"):
                raise ParameterError("pwl literal must reference a CSV file: pwl:@file.csv")
            path = rest[1:]
            data = np.loadtxt(Path(path), delimiter=",", dtype=np.float64)
            return PiecewiseLinearCdf(data[:, 0], data[:, 1], source=path)
    except ParameterError:
        raise
    except Exception as exc:
        raise ParameterError(f"cannot parse distribution literal {text!r}: {exc}") from exc
    raise ParameterError(f"unknown distribution kind in {text!r}")


def _interval(dist: Distribution, x_left: float, length: float) -> IntervalMass:
    mass = dist.cdf(x_left + length) - dist.cdf(x_left)
    return IntervalMass(float(x_left), float(length), float(mass))


def _numeric_max(dist: Distribution, c: float) -> IntervalMass:
    # Coarse grid over the quantile range, then local ternary refinement.
    qlo = dist.quantile(1e-6)
    qhi = dist.quantile(1.0 - 1e-6)
    xs = np.linspace(qlo - c, qhi, 10_000)
    masses = np.asarray(dist.cdf(xs + c)) - np.asarray(dist.cdf(xs))
    i = int(np.argmax(masses))
    step = xs[1] - xs[0]
    lo = xs[i] - step
    hi = xs[i] + step
    for _ in range(60):
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if dist.cdf(m1 + c) - dist.cdf(m1) >= dist.cdf(m2 + c) - dist.cdf(m2):
            hi = m2
        else:
            lo = m1
    x = 0.5 * (lo + hi)
    return _interval(dist, x, c)


def max_mass(dist: Distribution, c: float) -> IntervalMass:
    """Largest probability mass of ``dist`` on an interval of length ``c``.

    Closed forms are used for the uniform (flat), normal (symmetric about
    the mean) and exponential (mode at the support's left end) kinds;
    anything else falls back to grid search plus local refinement.
    """
    if not (c > 0):
        raise ParameterError(f"interval length must be positive, got {c}")
    if isinstance(dist, Uniform):
        if c >= dist.b - dist.a:
            return IntervalMass(dist.a, c, 1.0)
        return IntervalMass(dist.a, c, c / (dist.b - dist.a))
    if isinstance(dist, Normal):
        return _interval(dist, dist.mu - c / 2.0, c)
    if isinstance(dist, Exponential):
        return _interval(dist, 0.0, c)
    if isinstance(dist, PiecewiseLinearCdf):
        # Mass is piecewise linear in x_left; the maximum sits at a kink.
        cand = np.unique(np.concatenate((dist.xs, dist.xs - c)))
        masses = np.asarray(dist.cdf(cand + c)) - np.asarray(dist.cdf(cand))
        i = int(np.argmax(masses))
        return IntervalMass(float(cand[i]), float(c), float(masses[i]))
    return _numeric_max(dist, c)


def min_mass(dist: Distribution, c: float) -> IntervalMass:
    """Smallest probability mass of the density on a length-``c`` interval
    fully inside the support.

    Requires a density with connected bounded support.  For supports that
    are open intervals the infimum over closed subintervals of the closure
    is reported.
    """
    if not (c > 0):
        raise ParameterError(f"interval length must be positive, got {c}")
    if not dist.has_density or not dist.bounded_support:
        raise UnsupportedDistributionError(
            f"min_mass needs a density with bounded connected support; {dist.label()} has not"
        )
    lo, hi = dist.support
    if c > hi - lo:
        raise ParameterError(f"interval length {c} exceeds support length {hi - lo}")
    if isinstance(dist, Uniform):
        return IntervalMass(lo, c, c / (hi - lo) if hi - lo > c else 1.0)
    if isinstance(dist, PiecewiseLinearCdf):
        cand = np.unique(np.clip(np.concatenate((dist.xs, dist.xs - c)), lo, hi - c))
        masses = np.asarray(dist.cdf(cand + c)) - np.asarray(dist.cdf(cand))
        i = int(np.argmin(masses))
        return IntervalMass(float(cand[i]), float(c), float(masses[i]))
    raise UnsupportedDistributionError(
        f"min_mass not implemented for distribution kind {dist.kind!r}"
    )


def locate_interval(
    dist: Distribution, x1: float, eps1: float, eps_target: float
) -> IntervalMass:
    """Bisection interval construction.

    Starting from ``(x1, x1 + eps1]`` with positive mass, repeatedly keep
    the half with the larger mass (ties keep the left half) until the
    interval length is ``eps_target``, which must be ``2**-k * eps1``.
    The result keeps at least a ``2**-k`` share of the initial mass.
    """
    if not (eps1 > 0) or not (eps_target > 0):
        raise ParameterError("interval lengths must be positive")
    if eps_target > eps1:
        raise ParameterError("target length exceeds the initial length")
    ratio = eps1 / eps_target
    k = round(math.log2(ratio))
    if k < 0 or abs(eps_target * 2.0**k - eps1) > 1e-9 * eps1:
        raise ParameterError(
            f"target length {eps_target} is not a dyadic fraction of {eps1}; "
            "round it down to the nearest 2**-k multiple"
        )
    if not (dist.cdf(x1 + eps1) - dist.cdf(x1) > 0):
        raise ParameterError("initial interval carries no probability mass")
    a, b = float(x1), float(x1 + eps1)
    for _ in range(k):
        mid = 0.5 * (a + b)
        if dist.cdf(mid) - dist.cdf(a) >= dist.cdf(b) - dist.cdf(mid):
            b = mid
        else:
            a = mid
    return IntervalMass(a, b - a, float(dist.cdf(b) - dist.cdf(a)))
