"""Deciding and counting large accessible/open paths.

Finite families get an exact level-order DP count (Python big integers;
hypercube counts reach n!) and a brute-force enumeration oracle.  The
infinite families get a frontier sweep that reports how deep an
accessible path reaches, dispatched to the compiled kernels when the
distribution has an inline quantile and falling back to numpy or to a
plain Python sweep otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._kernels import sweep_numpy
from .distributions import Distribution
from .errors import ParameterError, ResourceGuardError
from .fields import (
    BOUNDARY_NONE,
    BOUNDARY_SOURCE_NEG_INF,
    CoupledSiteField,
    FitnessField,
    couple,
)
from .graphs import LeveledDag

DEFAULT_FRONTIER_GUARD = 10_000_000


@dataclass(frozen=True)
class PathCount:
    count: int
    mode: str  # "accessible" | "open"
    dag_label: str
    field_descriptor: dict


@dataclass(frozen=True)
class SurvivalResult:
    reached: int
    target: int
    survived: bool
    censored: bool = False
    frontier_sizes: tuple | None = None


def _is_fitness(field) -> bool:
    return isinstance(field, FitnessField)


def count_large_paths(dag: LeveledDag, field) -> PathCount:
    """Exact count of large paths by a level-order dynamic program.

    For a fitness field a step is admissible when the fitness strictly
    increases; for a site field a path counts when every vertex on it is
    open.  Counts are exact big integers.
    """
    if not dag.finite:
        raise ParameterError("exact counting needs a finite graph family")
    fitness = _is_fitness(field)
    mode = "accessible" if fitness else "open"
    src = dag.source()
    if fitness:
        prev = {src: (field.omega(src), 1)}
    else:
        prev = {src: 1} if field.nu(src) else {}
    total = 0
    n_levels = dag.num_levels()
    if dag.is_sink(src):
        total += 1 if prev else 0
    for lvl in range(1, n_levels + 1):
        cur = {}
        for v in dag.level_vertices(lvl):
            if fitness:
                wv = field.omega(v)
                c = 0
                for u in dag.predecessors(v):
                    entry = prev.get(u)
                    if entry is not None and entry[0] < wv:
                        c += entry[1]
                if c:
                    cur[v] = (wv, c)
            else:
                if not field.nu(v):
                    continue
                c = 0
                for u in dag.predecessors(v):
                    c += prev.get(u, 0)
                if c:
                    cur[v] = c
        prev = cur
        for v, entry in cur.items():
            if dag.is_sink(v):
                total += entry[1] if fitness else entry
    return PathCount(total, mode, dag.label(), field.descriptor())


def _total_paths(dag: LeveledDag) -> int:
    prev = {dag.source(): 1}
    total = 1 if dag.is_sink(dag.source()) else 0
    for lvl in range(1, dag.num_levels() + 1):
        cur = {}
        for v in dag.level_vertices(lvl):
            c = sum(prev.get(u, 0) for u in dag.predecessors(v))
            if c:
                cur[v] = c
                if dag.is_sink(v):
                    total += c
        prev = cur
    return total


def enumerate_large_paths(dag: LeveledDag, field, guard: int = 1_000_000):
    """Explicit DFS enumeration of all large admissible paths.

    The test oracle for the DP count.  Refuses when the number of
    source-to-sink paths exceeds ``guard``.  Paths come out in
    lexicographic successor order.
    """
    if not dag.finite:
        raise ParameterError("enumeration needs a finite graph family")
    if _total_paths(dag) > guard:
        raise ResourceGuardError(f"family has more than {guard} source-to-sink paths")
    fitness = _is_fitness(field)
    src = dag.source()
    out = []
    if not fitness and not field.nu(src):
        return out

    def walk(v, wv, path):
        if dag.is_sink(v):
            out.append(tuple(path))
            return
        for s in dag.successors(v):
            if fitness:
                ws = field.omega(s)
                if ws > wv:
                    path.append(s)
                    walk(s, ws, path)
                    path.pop()
            else:
                if field.nu(s):
                    path.append(s)
                    walk(s, None, path)
                    path.pop()

    walk(src, field.omega(src) if fitness else None, [src])
    return out


def count_open_vs_accessible(dag: LeveledDag, field: FitnessField, x_left: float):
    """(open count, accessible count) from the same label realization.

    The open count uses the site marks coupled to the field at
    ``x_left``; every open path is accessible, so open <= accessible on
    every realization, not just in expectation.
    """
    site = couple(field, x_left)
    open_count = count_large_paths(dag, site).count
    acc_count = count_large_paths(dag, field).count
    return open_count, acc_count


def _sweep_dispatch(dag: LeveledDag):
    if dag.family == "l2":
        return "lattice", _kernels.LATTICE_SQUARE, None
    if dag.family == "l2alt":
        return "lattice", _kernels.LATTICE_ALT, None
    if dag.family == "rtree":
        return "tree", None, dag.d
    raise ParameterError(f"survival sweeps need an infinite family, got {dag.label()}")


def survival_depths(
    dag: LeveledDag,
    dist: Distribution,
    drift: float,
    seeds,
    target_height: int,
    boundary: str = BOUNDARY_NONE,
    guard: int = DEFAULT_FRONTIER_GUARD,
    backend: str | None = None,
    mode: int = sweep_numpy.MODE_RMF,
    x_left: float = 0.0,
):
    """Batch frontier sweep; returns (reached, censored) int arrays.

    ``mode`` selects RMF accessibility or the coupled site process (open
    iff the label falls in ``(x_left, x_left + drift]``).  Seeds are used
    directly as per-run field seeds.
    """
    if target_height < 1:
        raise ParameterError("target height must be >= 1")
    if boundary not in (BOUNDARY_NONE, BOUNDARY_SOURCE_NEG_INF):
        raise ParameterError(f"boundary {boundary!r} is not valid on infinite families")
    shape, kind, d = _sweep_dispatch(dag)
    code = dist.inline_code()
    if code is None:
        kern = sweep_numpy
        dcode, p0, p1 = sweep_numpy.DCODE_GENERIC, 0.0, 0.0
        quantile_fn = dist.quantile
    else:
        kern = _kernels.get_backend(backend)
        dcode, p0, p1 = code
        quantile_fn = None
    src_neg_inf = boundary == BOUNDARY_SOURCE_NEG_INF
    if shape == "lattice":
        reached = kern.lattice_sweep(
            kind, seeds, target_height, drift, mode, x_left,
            dcode, p0, p1, src_neg_inf, quantile_fn=quantile_fn,
        )
        censored = np.zeros(len(reached), dtype=np.uint8)
        return reached, censored
    return kern.tree_sweep(
        d, seeds, target_height, drift, mode, x_left,
        dcode, p0, p1, src_neg_inf, guard=guard, quantile_fn=quantile_fn,
    )


def _survival_python(dag, field, target_height, guard, trace):
    src = dag.source()
    if _is_fitness(field):
        frontier = {src: field.omega(src)}
    else:
        frontier = {src: 0.0} if field.nu(src) else {}
    sizes = [len(frontier)]
    if not frontier:
        return SurvivalResult(-1, target_height, False, False, tuple(sizes) if trace else None)
    reached = 0
    censored = False
    for lvl in range(1, target_height + 1):
        nxt = {}
        if _is_fitness(field):
            cache = {}
            for u, wu in frontier.items():
                for v in dag.successors(u):
                    wv = cache.get(v)
                    if wv is None:
                        wv = field.omega(v)
                        cache[v] = wv
                    if wv > wu and (v not in nxt):
                        nxt[v] = wv
        else:
            cache = {}
            for u in frontier:
                for v in dag.successors(u):
                    if v in nxt:
                        continue
                    ok = cache.get(v)
                    if ok is None:
                        ok = field.nu(v)
                        cache[v] = ok
                    if ok:
                        nxt[v] = 0.0
        if trace:
            sizes.append(len(nxt))
        if not nxt:
            break
        reached = lvl
        if len(nxt) > guard:
            censored = True
            break
        frontier = nxt
    return SurvivalResult(
        reached, target_height, reached == target_height, censored,
        tuple(sizes) if trace else None,
    )


def survival_depth(
    dag: LeveledDag,
    field,
    target_height: int,
    guard: int = DEFAULT_FRONTIER_GUARD,
    trace: bool = False,
    engine: str = "auto",
) -> SurvivalResult:
    """Depth reached by an accessible (or open) path in one realization.

    Memory is bounded by the frontier width; a frontier exceeding
    ``guard`` stops the run and is reported as censored, an outcome
    distinct from death.  ``trace`` records frontier sizes per level and
    forces the plain Python sweep.
    """
    if dag.finite:
        raise ParameterError("survival sweeps need an infinite family")
    if target_height < 1:
        raise ParameterError("target height must be >= 1")
    use_python = trace or engine == "python"
    if not use_python and isinstance(field, (FitnessField, CoupledSiteField)):
        if isinstance(field, CoupledSiteField):
            base = field.source_field
            mode, x_left = sweep_numpy.MODE_COUPLED, field.x_left
        else:
            base = field
            mode, x_left = sweep_numpy.MODE_RMF, 0.0
        reached, censored = survival_depths(
            dag, base.dist, base.drift, [base.seed], target_height,
            boundary=base.boundary, guard=guard, mode=mode, x_left=x_left,
        )
        r = int(reached[0])
        return SurvivalResult(r, target_height, r == target_height, bool(censored[0]))
    return _survival_python(dag, field, target_height, guard, trace)
