"""Moment formulas, counting experiments, and the survival-curve harness.

The Monte Carlo layers here are vectorized across realizations: open/site
marks and labels come from the same counter-based hashing the field
objects use, so a vectorized experiment with seed ``s`` reproduces the
per-vertex values of the corresponding field object exactly.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import __version__ as _pkg_version
from . import rng
from .distributions import Distribution
from .errors import NoBracketError, ParameterError
from .fields import BOUNDARY_NONE, _validate_merge
from .graphs import Hypercube, LeveledDag, NaryTree
from .paths import DEFAULT_FRONTIER_GUARD, survival_depths
from ._kernels import MODE_COUPLED

_CHUNK = 2000
_INT64_COUNT_LIMIT = 20  # 21! overflows int64


# ---------------------------------------------------------------------------
# Vectorized per-level structure of the two finite families


def _level_layout(dag: LeveledDag):
    """Per level: vertex list, hash words array, predecessor index matrix."""
    layouts = []
    prev_index = None
    for lvl in range(dag.num_levels() + 1):
        verts = list(dag.level_vertices(lvl))
        index = {v: i for i, v in enumerate(verts)}
        if isinstance(dag, Hypercube):
            words = [np.asarray(verts, dtype=np.uint64)]
        else:
            # tree keys: child indices absorbed one word at a time
            words = [
                np.asarray([v[i] for v in verts], dtype=np.uint64) for i in range(lvl)
            ]
        if lvl == 0:
            preds = None
        else:
            preds = np.asarray(
                [[prev_index[u] for u in dag.predecessors(v)] for v in verts],
                dtype=np.intp,
            )
        layouts.append((verts, words, preds))
        prev_index = index
    return layouts


def _level_unit(seeds: np.ndarray, words) -> np.ndarray:
    """(runs, width) uniforms for one level, matching the field objects."""
    state = rng.init_state_vec(seeds)[:, None]
    for w in words:
        state = rng.absorb_vec(state, w[None, :])
    return rng.unit_open_vec(rng.finalize_vec(state))


def _check_count_guard(dag: LeveledDag):
    if isinstance(dag, Hypercube) and dag.n > _INT64_COUNT_LIMIT:
        raise ParameterError(
            f"vectorized counting is limited to n <= {_INT64_COUNT_LIMIT}"
        )


# ---------------------------------------------------------------------------
# First and second moments of the open-path count


def expected_open_paths(
    dag: LeveledDag, p: float, merge_levels=(), p_tilde: float = 1.0
) -> float:
    """Closed-form expected number of open large paths.

    Hypercube (source and sink always open): ``n! * pt**m * p**(n-m-1)``;
    n-ary tree (root always open): ``n**h * pt**m * p**(h-m)`` where ``m``
    is the number of merge levels.
    """
    merge_levels = frozenset(merge_levels)
    if merge_levels:
        _validate_merge(dag, merge_levels, p, p_tilde)
    m = len(merge_levels)
    if isinstance(dag, Hypercube):
        return math.factorial(dag.n) * p_tilde**m * p ** (dag.n - m - 1)
    if isinstance(dag, NaryTree):
        return float(dag.n**dag.h) * p_tilde**m * p ** (dag.h - m)
    raise ParameterError(f"no closed-form expectation for family {dag.label()}")


def open_path_counts_mc(
    dag: LeveledDag, p: float, seeds, merge_levels=(), p_tilde: float = 1.0
) -> np.ndarray:
    """Exact open-path counts for a batch of site-field seeds.

    The hypercube keeps source and sink always open, the tree only the
    root, matching the inhomogeneous Bernoulli setups the moment formulas
    describe.  Equals ``count_large_paths`` on the same seed.
    """
    if not isinstance(dag, (Hypercube, NaryTree)):
        raise ParameterError("vectorized counts cover the hypercube and n-ary trees")
    _check_count_guard(dag)
    merge_levels = frozenset(merge_levels)
    if merge_levels:
        _validate_merge(dag, merge_levels, p, p_tilde)
    seeds = np.ascontiguousarray(seeds, dtype=np.uint64)
    layouts = _level_layout(dag)
    last = dag.num_levels()
    out = np.empty(seeds.shape[0], dtype=np.int64)
    for lo in range(0, seeds.shape[0], _CHUNK):
        chunk = seeds[lo : lo + _CHUNK]
        acc = np.ones((chunk.shape[0], 1), dtype=np.int64)  # source forced open
        for lvl in range(1, last + 1):
            _, words, preds = layouts[lvl]
            p_lvl = p_tilde if lvl in merge_levels else p
            u = _level_unit(chunk, words)
            nu = u < p_lvl
            if lvl == last and isinstance(dag, Hypercube):
                nu = np.ones_like(nu)  # sink forced open
            acc = nu * acc[:, preds].sum(axis=2)
        out[lo : lo + _CHUNK] = acc.sum(axis=1)
    return out


@dataclass(frozen=True)
class MomentReport:
    family: str
    p: float
    p_tilde: float | None
    merge_size: int
    runs: int
    expected: float
    mc_mean: float
    mc_var: float
    mc_mean_se: float
    rel_var: float
    rel_var_se: float


def moment_report(
    dag: LeveledDag,
    p: float,
    runs: int,
    seed: int,
    merge_levels=(),
    p_tilde: float = 1.0,
    batches: int = 20,
) -> MomentReport:
    """Monte Carlo check of the open-path count against its closed form."""
    merge_levels = frozenset(merge_levels)
    expected = expected_open_paths(dag, p, merge_levels, p_tilde)
    seeds = rng.derive_run_seeds(seed, 0, runs)
    counts = open_path_counts_mc(dag, p, seeds, merge_levels, p_tilde).astype(np.float64)
    mean = float(counts.mean())
    var = float(counts.var(ddof=1)) if runs > 1 else 0.0
    mean_se = math.sqrt(var / runs) if runs > 1 else 0.0
    rel = var / expected**2 if expected > 0 else 0.0
    # batch-means standard error of the relative variance
    nb = min(batches, runs)
    rel_b = []
    for b in range(nb):
        part = counts[b * runs // nb : (b + 1) * runs // nb]
        if part.size > 1 and expected > 0:
            rel_b.append(part.var(ddof=1) / expected**2)
    rel_se = float(np.std(rel_b, ddof=1) / math.sqrt(len(rel_b))) if len(rel_b) > 1 else 0.0
    return MomentReport(
        dag.label(), p, p_tilde if merge_levels else None, len(merge_levels),
        runs, expected, mean, var, mean_se, rel, rel_se,
    )


def variance_scaling_study(dags, p: float, runs: int, seed: int, merge_levels=(),
                           p_tilde: float = 1.0):
    """Relative variance of the open-path count across a family sequence."""
    return [
        moment_report(dag, p, runs, rng.hash_words(seed, [i]), merge_levels, p_tilde)
        for i, dag in enumerate(dags)
    ]


# ---------------------------------------------------------------------------
# Path intersection table on the hypercube


def path_intersection_table(n: int, reference=None) -> dict:
    """Counts of source-to-sink hypercube paths by interior overlap.

    ``table[k]`` is the number of paths meeting the reference path in
    exactly ``k - 1`` interior vertices, for k = 1..n.  Computed by brute
    force over all n! paths, so n is capped at 8.
    """
    import itertools

    if not (2 <= n <= 8):
        raise ParameterError(f"brute-force table needs 2 <= n <= 8, got {n}")
    if reference is None:
        reference = tuple(range(n))
    ref_interior = set()
    mask = 0
    for b in reference[:-1]:
        mask |= 1 << b
        ref_interior.add(mask)
    table = {k: 0 for k in range(1, n + 1)}
    for perm in itertools.permutations(range(n)):
        mask = 0
        overlap = 0
        for b in perm[:-1]:
            mask |= 1 << b
            if mask in ref_interior:
                overlap += 1
        table[overlap + 1] += 1
    return table


# ---------------------------------------------------------------------------
# Coupling audit: open paths must be accessible on the same realization


@dataclass(frozen=True)
class CouplingAudit:
    open_counts: np.ndarray
    accessible_counts: np.ndarray
    open_not_accessible: int

    @property
    def violations(self) -> int:
        dominated = int((self.open_counts > self.accessible_counts).sum())
        return self.open_not_accessible + dominated


def coupling_audit(
    dag: LeveledDag, dist: Distribution, drift: float, x_left: float, seeds
) -> CouplingAudit:
    """Per-realization audit of the RMF/Bernoulli coupling on a finite family.

    For each seed, counts open paths of the coupled site process, counts
    accessible paths, and counts paths that are open but not accessible
    (there must be none).
    """
    if not isinstance(dag, (Hypercube, NaryTree)):
        raise ParameterError("the audit covers the hypercube and n-ary trees")
    _check_count_guard(dag)
    seeds = np.ascontiguousarray(seeds, dtype=np.uint64)
    layouts = _level_layout(dag)
    last = dag.num_levels()
    n = seeds.shape[0]
    open_counts = np.empty(n, dtype=np.int64)
    acc_counts = np.empty(n, dtype=np.int64)
    mismatch = 0
    for lo in range(0, n, _CHUNK):
        chunk = seeds[lo : lo + _CHUNK]
        _, words0, _ = layouts[0]
        eta_prev = np.asarray(dist.quantile(_level_unit(chunk, words0)))
        omega_prev = eta_prev  # level 0
        open_src = ((x_left < eta_prev) & (eta_prev <= x_left + drift)).astype(np.int64)
        acc = np.ones((chunk.shape[0], 1), dtype=np.int64)
        opn = open_src.copy()
        both = open_src.copy()
        for lvl in range(1, last + 1):
            _, words, preds = layouts[lvl]
            eta = np.asarray(dist.quantile(_level_unit(chunk, words)))
            omega = eta + drift * lvl
            admissible = omega_prev[:, preds] < omega[:, :, None]
            open_v = ((x_left < eta) & (eta <= x_left + drift)).astype(np.int64)
            acc = (acc[:, preds] * admissible).sum(axis=2)
            opn = open_v * opn[:, preds].sum(axis=2)
            both = open_v * (both[:, preds] * admissible).sum(axis=2)
            omega_prev = omega
        o = opn.sum(axis=1)
        a = acc.sum(axis=1)
        b = both.sum(axis=1)
        open_counts[lo : lo + _CHUNK] = o
        acc_counts[lo : lo + _CHUNK] = a
        mismatch += int((o - b).sum())
    return CouplingAudit(open_counts, acc_counts, mismatch)


# ---------------------------------------------------------------------------
# Survival curves and threshold estimation


@dataclass(frozen=True)
class CurvePoint:
    c: float
    height: int
    runs: int
    survivals: int
    censored: int
    p_hat: float
    stderr: float


@dataclass
class SurvivalCurve:
    family: str
    distribution: str
    heights: list
    drifts: list
    runs: int
    seed_base: int
    points: list = dc_field(default_factory=list)

    def at(self, height: int):
        return sorted(
            (pt for pt in self.points if pt.height == height), key=lambda pt: pt.c
        )


@dataclass(frozen=True)
class ThresholdBracket:
    c_low: float
    c_high: float
    notes: str = ""


def _curve_points_for_drift(args):
    (dag, dist, c, e, heights, runs, seed, boundary, guard, backend, mode, x_left) = args
    seeds = rng.derive_run_seeds(seed, e, runs)
    reached, censored = survival_depths(
        dag, dist, c, seeds, max(heights), boundary=boundary, guard=guard,
        backend=backend, mode=mode, x_left=x_left,
    )
    censored = censored.astype(bool)
    points = []
    for h in heights:
        surv = int(((reached >= h) | censored).sum())
        cens = int((censored & (reached < h)).sum())
        p_hat = surv / runs
        se = math.sqrt(p_hat * (1.0 - p_hat) / runs)
        points.append(CurvePoint(c, h, runs, surv, cens, p_hat, se))
    return points


def run_survival_experiment(
    dag: LeveledDag,
    dist: Distribution,
    drifts,
    heights,
    runs: int,
    seed: int,
    boundary: str = BOUNDARY_NONE,
    guard: int = DEFAULT_FRONTIER_GUARD,
    workers: int = 1,
    backend: str | None = None,
    mode: int = 0,
    x_left: float = 0.0,
) -> SurvivalCurve:
    """Monte Carlo survival curve over a drift grid and height list.

    Each drift value gets ``runs`` independent realizations; one
    realization yields the reached height for every target at once.
    Censored (frontier-guard) runs are counted as survivals and reported
    separately.  Run ``i`` of drift index ``e`` is seeded with
    hash(seed, e, i), so results replay exactly.
    """
    drifts = [float(c) for c in drifts]
    heights = sorted(int(h) for h in heights)
    if runs < 1 or not drifts or not heights:
        raise ParameterError("need runs >= 1 and nonempty drift/height grids")
    jobs = [
        (dag, dist, c, e, heights, runs, seed, boundary, guard, backend, mode, x_left)
        for e, c in enumerate(drifts)
    ]
    curve = SurvivalCurve(dag.label(), dist.label(), heights, drifts, runs, seed)
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for points in pool.map(_curve_points_for_drift, jobs):
                curve.points.extend(points)
    else:
        for job in jobs:
            curve.points.extend(_curve_points_for_drift(job))
    return curve


def coupled_survival_curve(dag, dist, drifts, heights, runs, seed, x_left_of,
                           guard=DEFAULT_FRONTIER_GUARD, workers=1, backend=None):
    """Survival curve of the coupled site process, matched seed-for-seed
    with the RMF curve of the same (seed, drift grid).

    ``x_left_of(c)`` places the coupling window for each drift value.
    """
    curve = SurvivalCurve(dag.label(), dist.label(), sorted(heights), list(drifts),
                          runs, seed)
    for e, c in enumerate(drifts):
        job = (dag, dist, float(c), e, sorted(heights), runs, seed, BOUNDARY_NONE,
               guard, backend, MODE_COUPLED, float(x_left_of(c)))
        curve.points.extend(_curve_points_for_drift(job))
    return curve


def estimate_threshold(
    curve: SurvivalCurve, height: int, min_survivals: int = 1
) -> ThresholdBracket:
    """Bracket the percolation threshold from a survival curve.

    ``c_low`` is the largest grid drift with zero survivals at the given
    height; ``c_high`` the smallest with at least ``min_survivals``.
    """
    pts = curve.at(height)
    if not pts:
        raise NoBracketError(f"curve has no points at height {height}")
    zeros = [pt.c for pt in pts if pt.survivals == 0]
    positive = [pt.c for pt in pts if pt.survivals >= min_survivals]
    if not zeros or not positive:
        raise NoBracketError("curve is entirely subcritical or entirely supercritical")
    c_high = min(positive)
    c_low = max(zeros)
    notes = f"height={height}, runs={pts[0].runs}, min_survivals={min_survivals}"
    if c_low >= c_high:
        below = [c for c in zeros if c < c_high]
        if not below:
            raise NoBracketError("no zero-survival drift below the first survival")
        c_low = max(below)
        notes += "; isolated zero above c_high ignored"
    return ThresholdBracket(c_low, c_high, notes)


def isotonic_fit(values, weights=None) -> np.ndarray:
    """Pool-adjacent-violators fit of a nondecreasing sequence."""
    values = np.asarray(values, dtype=np.float64)
    weights = np.ones_like(values) if weights is None else np.asarray(weights, float)
    level_v = []
    level_w = []
    sizes = []
    for v, w in zip(values, weights):
        level_v.append(v)
        level_w.append(w)
        sizes.append(1)
        while len(level_v) > 1 and level_v[-2] > level_v[-1]:
            v2, w2, s2 = level_v.pop(), level_w.pop(), sizes.pop()
            v1, w1, s1 = level_v.pop(), level_w.pop(), sizes.pop()
            w = w1 + w2
            level_v.append((v1 * w1 + v2 * w2) / w)
            level_w.append(w)
            sizes.append(s1 + s2)
    return np.repeat(level_v, sizes)


# ---------------------------------------------------------------------------
# CSV round trip

CSV_COLUMNS = [
    "family", "distribution", "c", "H", "runs",
    "survivals", "censored", "p_hat", "stderr", "seed_base",
]


def curve_to_csv(curve: SurvivalCurve, fh, comments=None):
    """Write a survival curve as CSV.

    Comment lines are '#'-prefixed (timestamps and the like go there) so
    the data rows stay byte-stable for identical configs.
    """
    fh.write(f"# rmfperc {_pkg_version}\n")
    for line in comments or ():
        fh.write(f"# {line}\n")
    fh.write("# l2alt levels enumerate x from -y to y\n")
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for pt in sorted(curve.points, key=lambda p: (p.c, p.height)):
        writer.writerow([
            curve.family, curve.distribution, f"{pt.c:.10g}", pt.height, pt.runs,
            pt.survivals, pt.censored, f"{pt.p_hat:.8f}", f"{pt.stderr:.8f}",
            curve.seed_base,
        ])


def curve_from_csv(fh) -> SurvivalCurve:
    rows = [ln for ln in fh if ln.strip() and not ln.startswith("#")]
    reader = csv.DictReader(io.StringIO("".join(rows)))
    points = []
    family = distribution = None
    seed_base = 0
    for rec in reader:
        family = rec["family"]
        distribution = rec["distribution"]
        seed_base = int(rec["seed_base"])
        points.append(CurvePoint(
            float(rec["c"]), int(rec["H"]), int(rec["runs"]), int(rec["survivals"]),
            int(rec["censored"]), float(rec["p_hat"]), float(rec["stderr"]),
        ))
    if not points:
        raise ParameterError("CSV contains no survival-curve rows")
    heights = sorted({pt.height for pt in points})
    drifts = sorted({pt.c for pt in points})
    curve = SurvivalCurve(family, distribution, heights, drifts, points[0].runs,
                          seed_base, points)
    return curve


def curve_to_json(curve: SurvivalCurve) -> str:
    return json.dumps(
        {
            "family": curve.family,
            "distribution": curve.distribution,
            "heights": curve.heights,
            "drifts": curve.drifts,
            "runs": curve.runs,
            "seed_base": curve.seed_base,
            "points": [pt.__dict__ for pt in sorted(
                curve.points, key=lambda p: (p.c, p.height))],
        },
        indent=2,
    )
