"""Fitness and site fields with deterministic per-vertex randomness.

A fitness field assigns each vertex an i.i.d. label drawn through the
distribution's quantile from a hash of (seed, vertex key), plus a drift
times the vertex's level.  A site field marks vertices open or closed,
optionally with a reduced probability on a merge of levels.  A coupled
site field is derived from the labels of a fitness field: a vertex is
open exactly when its label falls in a fixed length-``drift`` window, so
every open path is automatically accessible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

from . import rng
from .distributions import Distribution
from .errors import ParameterError
from .graphs import LeveledDag

BOUNDARY_NONE = "none"
BOUNDARY_SOURCE_NEG_INF = "source_neg_inf"
BOUNDARY_SOURCE_SINK_INF = "source_neg_inf_and_sink_pos_inf"

FITNESS_BOUNDARIES = (BOUNDARY_NONE, BOUNDARY_SOURCE_NEG_INF, BOUNDARY_SOURCE_SINK_INF)

SITE_SOURCE_OPEN = "source_open"
SITE_SOURCE_AND_SINKS_OPEN = "source_and_sinks_open"


@dataclass(frozen=True)
class FitnessField:
    dag: LeveledDag
    dist: Distribution
    drift: float
    seed: int
    boundary: str = BOUNDARY_NONE

    def __post_init__(self):
        if self.drift < 0:
            raise ParameterError(f"drift must be nonnegative, got {self.drift}")
        if self.boundary not in FITNESS_BOUNDARIES:
            raise ParameterError(f"unknown boundary rule {self.boundary!r}")
        if self.boundary == BOUNDARY_SOURCE_SINK_INF and not self.dag.finite:
            raise ParameterError("sink boundary labels need a finite graph family")
        object.__setattr__(self, "_state0", rng.init_state(self.seed))

    def eta(self, key) -> float:
        """The i.i.d. label of a vertex; a pure function of (seed, key)."""
        state = self._state0
        for w in self.dag.key_words(key):
            state = rng.absorb(state, w)
        return float(self.dist.quantile(rng.unit_open(rng.finalize(state))))

    def omega(self, key) -> float:
        """Fitness: label plus drift times level, with boundary overrides."""
        if self.boundary != BOUNDARY_NONE and key == self.dag.source():
            return -math.inf
        if self.boundary == BOUNDARY_SOURCE_SINK_INF and self.dag.is_sink(key):
            return math.inf
        return self.eta(key) + self.drift * self.dag.level_of(key)

    def descriptor(self) -> dict:
        return {
            "type": "fitness",
            "family": self.dag.label(),
            "distribution": self.dist.label(),
            "drift": self.drift,
            "seed": self.seed,
            "boundary": self.boundary,
        }


def _validate_merge(dag: LeveledDag, levels, p: float, p_tilde: float):
    levels = frozenset(int(v) for v in levels)
    if not (0 < p_tilde <= p):
        raise ParameterError(f"merge needs 0 < p_tilde <= p, got p_tilde={p_tilde}, p={p}")
    forbidden = {0}
    if dag.family == "hypercube":
        forbidden.add(dag.num_levels())
    bad = levels & forbidden
    if bad:
        raise ParameterError(f"merge levels {sorted(bad)} are forbidden for {dag.label()}")
    if dag.finite and any(v > dag.num_levels() for v in levels):
        raise ParameterError("merge level beyond the last level of the family")
    if any(v < 0 for v in levels):
        raise ParameterError("merge levels must be nonnegative")
    return levels


@dataclass(frozen=True)
class SiteField:
    """Bernoulli site marks: open with probability ``p`` (``p_tilde`` on the
    merge levels); the source, and for ``source_and_sinks_open`` also the
    sinks, are always open."""

    dag: LeveledDag
    p: float
    seed: int
    merge_levels: frozenset = dc_field(default_factory=frozenset)
    p_tilde: float = 1.0
    boundary: str = SITE_SOURCE_OPEN

    def __post_init__(self):
        if not (0.0 <= self.p <= 1.0):
            raise ParameterError(f"open probability must be in [0, 1], got {self.p}")
        if self.boundary not in (SITE_SOURCE_OPEN, SITE_SOURCE_AND_SINKS_OPEN):
            raise ParameterError(f"unknown site boundary rule {self.boundary!r}")
        if self.boundary == SITE_SOURCE_AND_SINKS_OPEN and not self.dag.finite:
            raise ParameterError("sink boundary needs a finite graph family")
        if self.merge_levels:
            levels = _validate_merge(self.dag, self.merge_levels, self.p, self.p_tilde)
            object.__setattr__(self, "merge_levels", levels)
        object.__setattr__(self, "_state0", rng.init_state(self.seed))

    def open_probability(self, level: int) -> float:
        return self.p_tilde if level in self.merge_levels else self.p

    def nu(self, key) -> bool:
        if key == self.dag.source():
            return True
        if self.boundary == SITE_SOURCE_AND_SINKS_OPEN and self.dag.is_sink(key):
            return True
        state = self._state0
        for w in self.dag.key_words(key):
            state = rng.absorb(state, w)
        u = rng.unit_open(rng.finalize(state))
        return u < self.open_probability(self.dag.level_of(key))

    def descriptor(self) -> dict:
        return {
            "type": "site",
            "family": self.dag.label(),
            "p": self.p,
            "seed": self.seed,
            "merge_levels": sorted(self.merge_levels),
            "p_tilde": self.p_tilde if self.merge_levels else None,
            "boundary": self.boundary,
        }


@dataclass(frozen=True)
class CoupledSiteField:
    """Site marks read off a fitness field's labels: open iff the label
    lies in ``(x_left, x_left + drift]``."""

    source_field: FitnessField
    x_left: float

    @property
    def dag(self) -> LeveledDag:
        return self.source_field.dag

    @property
    def open_probability_value(self) -> float:
        d = self.source_field.dist
        return float(d.cdf(self.x_left + self.source_field.drift) - d.cdf(self.x_left))

    def nu(self, key) -> bool:
        eta = self.source_field.eta(key)
        return self.x_left < eta <= self.x_left + self.source_field.drift

    def descriptor(self) -> dict:
        d = self.source_field.descriptor()
        d.update({"type": "coupled_site", "x_left": self.x_left})
        return d


def fitness_field(
    dag: LeveledDag,
    dist: Distribution,
    drift: float,
    seed: int,
    boundary: str = BOUNDARY_NONE,
) -> FitnessField:
    return FitnessField(dag, dist, drift, seed, boundary)


def site_field(
    dag: LeveledDag,
    p: float,
    seed: int,
    merge_levels=(),
    p_tilde: float = 1.0,
    boundary: str = SITE_SOURCE_OPEN,
) -> SiteField:
    return SiteField(dag, p, seed, frozenset(merge_levels), p_tilde, boundary)


def couple(field: FitnessField, x_left: float) -> CoupledSiteField:
    """Couple a fitness field to a Bernoulli site field on the same labels.

    Requires positive drift: along an edge with both endpoints open the
    fitness gain is the label difference plus the drift, which is strictly
    positive because both labels sit in a window of the drift's width.
    """
    if not (field.drift > 0):
        raise ParameterError("coupling needs strictly positive drift")
    return CoupledSiteField(field, float(x_left))
