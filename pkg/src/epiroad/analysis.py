"""Walk-based landscape metrics.

Random walks estimate the fitness autocorrelation function and its
correlation length; greedy adaptive walks estimate local-optima fitness and
spacing; neutrality scans classify every neighbor of every visited genotype
as lower, equal or higher in fitness.

All walks draw uniformly from the operation neighborhood (insertions,
substitutions, deletions). Moves that would exceed the walk's length cap are
re-drawn, so the step distribution stays uniform over feasible moves.
Campaigns give each walk its own child random stream derived from
(campaign seed, walk index); pooled results are therefore identical no
matter how walks are scheduled.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .genotype import (
    Genotype,
    neighbor_matrix,
    random_genotype,
    random_neighbor,
    row_to_genotype,
)
from .seeds import STREAM_ADAPTIVE_WALK, STREAM_NEUTRALITY, STREAM_RANDOM_WALK, make_rng


@dataclass(frozen=True)
class RandomWalkCampaign:
    """Pool of fitness series from random walks.

    ``lambda_max`` bounds both the start genotypes and the walk itself; when
    None it defaults to 2 * n_letters * b of the target landscape.
    """

    walks: int = 20_000
    length: int = 35
    lambda_max: int | None = None
    s_max: int = 20
    seed: int = 0

    def __post_init__(self):
        if self.walks < 1 or self.length < 0:
            raise ValueError("walks must be >= 1 and length >= 0")
        if not 0 <= self.s_max <= self.length:
            raise ValueError(f"s_max must lie in [0, length={self.length}], got {self.s_max}")


@dataclass(frozen=True)
class AdaptiveWalkCampaign:
    walks: int = 2_000
    lambda_max: int = 50
    seed: int = 0

    def __post_init__(self):
        if self.walks < 1 or self.lambda_max < 0:
            raise ValueError("walks must be >= 1 and lambda_max >= 0")


@dataclass
class WalkStats:
    """Pooled campaign outcomes; only the fields of the campaign type are set.

    Skewness and excess kurtosis describe the shape of the local-optima
    fitness distribution; they are reported, never asserted against.
    """

    rho: tuple[float, ...] | None = None
    tau: float | None = None
    optima_fitness_mean: float | None = None
    optima_fitness_std: float | None = None
    optima_fitness_skewness: float | None = None
    optima_fitness_kurtosis: float | None = None
    mean_walk_length: float | None = None
    est_optima_distance: float | None = None
    neutrality: tuple[float, float, float] | None = None


def _walk_cap(landscape, lambda_max: int | None) -> int:
    cap = 2 * landscape.n_letters * landscape.b if lambda_max is None else lambda_max
    if cap > landscape.lambda_max:
        raise ValueError(
            f"walk bound {cap} exceeds landscape lambda_max={landscape.lambda_max}"
        )
    return cap


def evaluate_rows(landscape, rows: np.ndarray) -> np.ndarray:
    """Fitness of every row of a padded genotype matrix."""
    if hasattr(landscape, "evaluate_rows"):
        return landscape.evaluate_rows(rows)
    return np.array([landscape.evaluate(row_to_genotype(r)) for r in rows])


def random_walk(
    landscape,
    start: Genotype,
    length: int,
    rng: np.random.Generator,
    lambda_max: int | None = None,
) -> np.ndarray:
    """Fitness series along a uniform neighbor walk; length + 1 values."""
    cap = _walk_cap(landscape, lambda_max)
    g = tuple(start)
    series = np.empty(length + 1)
    series[0] = landscape.evaluate(g)
    for t in range(1, length + 1):
        g = random_neighbor(g, landscape.n_letters, rng, lambda_max=cap)
        series[t] = landscape.evaluate(g)
    return series


def autocorrelation(
    series_pool, lag: int, per_walk: bool = False, centering: str = "walk"
) -> float:
    """Autocorrelation of pooled fitness series at the given lag.

    With the default walk centering, each series is centered by its own mean
    and the centered lag products and squares are pooled:

        rho(s) = sum_w sum_t c_w(t) c_w(t+s) / sum_w sum_t c_w(t)^2

    so lag 0 yields exactly 1 and the estimate ignores fitness-level
    differences between walks. ``centering="pool"`` instead centers by the
    grand mean and scales by the pooled variance; on short walks that drift
    (variable-length spaces grow under insertion pressure) that estimator
    can exceed 1 and leave the correlation length undefined, so it is kept
    for diagnostics only. A pool with no variation yields nan. ``per_walk``
    averages per-walk estimates, skipping constant walks.
    """
    arrs = [np.asarray(s, dtype=np.float64) for s in series_pool]
    if per_walk:
        vals = [autocorrelation([a], lag, centering=centering) for a in arrs]
        vals = [v for v in vals if not math.isnan(v)]
        return float(np.mean(vals)) if vals else math.nan
    if centering not in ("walk", "pool"):
        raise ValueError(f"centering must be 'walk' or 'pool', got {centering!r}")

    if centering == "pool":
        flat = np.concatenate(arrs)
        if flat.size == 0 or np.all(flat == flat[0]):
            return math.nan
        mu = float(flat.mean())

        def lag_product_mean(s: int) -> float:
            num = 0.0
            count = 0
            for a in arrs:
                if a.size > s:
                    num += float((a[: a.size - s] * a[s:]).sum())
                    count += a.size - s
            return num / count if count else math.nan

        var = lag_product_mean(0) - mu * mu
        if not var > 0.0:
            return math.nan
        num = lag_product_mean(lag)
        return math.nan if math.isnan(num) else (num - mu * mu) / var

    num = 0.0
    den = 0.0
    valid = 0
    for a in arrs:
        if a.size == 0 or np.all(a == a[0]):
            continue  # constant walks carry no correlation signal
        c = a - a.mean()
        den += float((c * c).sum())
        if a.size > lag:
            num += float((c[: c.size - lag] * c[lag:]).sum())
            valid += a.size - lag
    if den <= 0.0 or valid == 0:
        return math.nan
    return num / den


def correlation_length(rho1: float) -> float:
    """-1 / ln(rho(1)); defined only for rho(1) strictly between 0 and 1."""
    if not 0.0 < rho1 < 1.0:
        return math.nan
    return -1.0 / math.log(rho1)


def run_random_walk_campaign(landscape, campaign: RandomWalkCampaign):
    """(WalkStats, raw) with rho for lags 0..s_max and tau from rho(1)."""
    cap = _walk_cap(landscape, campaign.lambda_max)
    series = np.empty((campaign.walks, campaign.length + 1))
    for w in range(campaign.walks):
        rng = make_rng(campaign.seed, STREAM_RANDOM_WALK, w)
        start = random_genotype(cap, landscape.n_letters, rng)
        series[w] = random_walk(landscape, start, campaign.length, rng, lambda_max=cap)
    rho = tuple(autocorrelation(series, s) for s in range(campaign.s_max + 1))
    tau = correlation_length(rho[1]) if campaign.s_max >= 1 else math.nan
    stats = WalkStats(rho=rho, tau=tau)
    return stats, {"series": series}


def adaptive_walk(
    landscape,
    start: Genotype,
    rng: np.random.Generator,
    lambda_max: int | None = None,
) -> tuple[Genotype, float, int]:
    """Greedy walk to a local optimum: (final genotype, final fitness, moves).

    Each step evaluates every operation-neighbor within the length cap and
    moves, uniformly among them, to a neighbor of maximal fitness, but only
    if that maximum strictly improves on the current fitness; otherwise the
    walk stops. Equal-fitness neighbors never continue the walk.
    """
    cap = _walk_cap(landscape, lambda_max)
    g = tuple(start)
    f = landscape.evaluate(g)
    steps = 0
    while True:
        mat = neighbor_matrix(g, landscape.n_letters, lambda_max=cap)
        if mat.shape[0] == 0:
            break
        fits = evaluate_rows(landscape, mat)
        best = fits.max()
        if not best > f:
            break
        cand = np.flatnonzero(fits == best)
        pick = int(cand[rng.integers(len(cand))]) if len(cand) > 1 else int(cand[0])
        g = row_to_genotype(mat[pick])
        f = float(best)
        steps += 1
    return g, f, steps


def local_optima_stats(final_fitnesses, lengths) -> WalkStats:
    """Mean/std/shape of walk endpoints plus the doubled-mean-length distance."""
    finals = np.asarray(final_fitnesses, dtype=np.float64)
    lens = np.asarray(lengths, dtype=np.float64)
    if finals.size < 2 or lens.size != finals.size:
        raise ValueError("need at least 2 walks with matching lengths")
    mean_len = float(lens.mean())
    mu = float(finals.mean())
    sd = float(finals.std())
    c = finals - mu
    skew = float((c**3).mean() / sd**3) if sd > 0 else math.nan
    kurt = float((c**4).mean() / sd**4 - 3.0) if sd > 0 else math.nan
    return WalkStats(
        optima_fitness_mean=mu,
        optima_fitness_std=sd,
        optima_fitness_skewness=skew,
        optima_fitness_kurtosis=kurt,
        mean_walk_length=mean_len,
        est_optima_distance=2.0 * mean_len,
    )


def run_adaptive_walk_campaign(landscape, campaign: AdaptiveWalkCampaign):
    """(WalkStats, raw) over greedy walks from random starts."""
    finals = np.empty(campaign.walks)
    lengths = np.empty(campaign.walks, dtype=np.int64)
    endpoints: list[Genotype] = []
    for w in range(campaign.walks):
        rng = make_rng(campaign.seed, STREAM_ADAPTIVE_WALK, w)
        start = random_genotype(campaign.lambda_max, landscape.n_letters, rng)
        g, f, steps = adaptive_walk(landscape, start, rng, lambda_max=campaign.lambda_max)
        finals[w] = f
        lengths[w] = steps
        endpoints.append(g)
    heuristic = landscape.n_letters * (landscape.b + 2)
    if lengths.max() > heuristic:
        warnings.warn(
            f"adaptive walk length {int(lengths.max())} exceeded the review bound "
            f"{heuristic} (n_letters * (b + 2)); inspect the campaign",
            stacklevel=2,
        )
    stats = local_optima_stats(finals, lengths)
    raw = {"final_fitness": finals, "lengths": lengths, "endpoints": endpoints}
    return stats, raw


def classify_neighbors(landscape, g: Genotype, f: float, lambda_max: int):
    """(lower, equal, higher) neighbor counts plus the neighbor batch itself."""
    mat = neighbor_matrix(g, landscape.n_letters, lambda_max=lambda_max)
    fits = evaluate_rows(landscape, mat)
    lower = int((fits < f).sum())
    higher = int((fits > f).sum())
    equal = len(fits) - lower - higher
    return (lower, equal, higher), mat, fits


def neighbor_class_counts(landscape, g: Genotype, f: float, lambda_max: int):
    """(lower, equal, higher) counts over all within-cap operation-neighbors.

    Dispatches to the run-structure classifier when the landscape evaluates
    through packed block vectors, falling back to a full batch evaluation
    otherwise. Both paths count the identical operation multiset.
    """
    if hasattr(landscape, "bv_value"):
        return _class_counts_from_runs(g, landscape, f, lambda_max)
    (counts, _, _) = classify_neighbors(landscape, g, f, lambda_max)
    return counts


def _class_counts_from_runs(g: Genotype, landscape, f: float, cap: int):
    """Classify every edit by its effect on the block vector.

    A single edit only alters runs touching the edit site, so the new block
    vector differs from the current one in at most two letters; edits are
    grouped by resulting vector and each distinct vector costs one fitness
    lookup. Grouped totals cover the exact (2 * lam + 1) * n_letters
    operation multiset (insertions drop out at the length cap).
    """
    n = landscape.n_letters
    b = landscape.b
    lam = len(g)
    bits = [1 << (n - 1 - l) for l in range(n)]

    runs: list[tuple[int, int, int]] = []  # (letter, start, length)
    prev = -1
    for p, s in enumerate(g):
        if s == prev:
            letter, start, length = runs[-1]
            runs[-1] = (letter, start, length + 1)
        else:
            runs.append((s, p, 1))
            prev = s
    cnt_ge_b = [0] * n
    count_letters = [0] * n
    for letter, _, length in runs:
        count_letters[letter] += length
        if length >= b:
            cnt_ge_b[letter] += 1
    base_bits = 0
    for l in range(n):
        if cnt_ge_b[l]:
            base_bits |= bits[l]

    counts: dict[int, int] = {}

    def add(nb: int, c: int) -> None:
        if c:
            counts[nb] = counts.get(nb, 0) + c

    include_ins = lam < cap

    if b == 1:
        present = sum(1 for l in range(n) if count_letters[l])
        if include_ins:
            add(base_bits, (lam + 1) * present)
            for c in range(n):
                if not count_letters[c]:
                    add(base_bits | bits[c], lam + 1)
        for j, (o, _, ln) in enumerate(runs):
            # deletion: the letter drops out only with its last copy
            lost = base_bits & ~bits[o] if count_letters[o] == 1 else base_bits
            add(lost if ln == 1 else base_bits, ln if ln >= 2 else 1)
            # substitutions: possibly lose o, always gain c
            sub_base = base_bits & ~bits[o] if count_letters[o] == 1 else base_bits
            add(sub_base, (present - 1) * ln)
            for c in range(n):
                if not count_letters[c]:
                    add(sub_base | bits[c], ln)
    else:
        run_of = []  # run index per position
        for j, (_, _, ln) in enumerate(runs):
            run_of.extend([j] * ln)

        if include_ins:
            for p in range(lam + 1):
                if 0 < p < lam and g[p - 1] == g[p]:
                    # gap strictly inside a run: same letter extends it,
                    # every other letter splits it
                    o, start, ln = runs[run_of[p]]
                    a = p - start
                    add(base_bits | (bits[o] if ln + 1 >= b else 0), 1)
                    keeps = cnt_ge_b[o] - (ln >= b) + (a >= b) + (ln - a >= b) > 0
                    add(base_bits if keeps else base_bits & ~bits[o], n - 1)
                else:
                    specials = 0
                    if p >= 1:
                        left, _, ln_l = runs[run_of[p - 1]]
                        add(base_bits | (bits[left] if ln_l + 1 >= b else 0), 1)
                        specials += 1
                    if p <= lam - 1:
                        right, _, ln_r = runs[run_of[p]]
                        add(base_bits | (bits[right] if ln_r + 1 >= b else 0), 1)
                        specials += 1
                    add(base_bits, n - specials)

        for j, (o, _, ln) in enumerate(runs):
            if ln >= 2:
                keeps = cnt_ge_b[o] - (ln >= b) + (ln - 1 >= b) > 0
                add(base_bits if keeps else base_bits & ~bits[o], ln)
            else:
                nb = base_bits  # a length-1 run never qualified (b >= 2)
                if 0 < j < len(runs) - 1 and runs[j - 1][0] == runs[j + 1][0]:
                    m, _, ln_l = runs[j - 1]
                    _, _, ln_r = runs[j + 1]
                    if cnt_ge_b[m] - (ln_l >= b) - (ln_r >= b) + (ln_l + ln_r >= b) > 0:
                        nb |= bits[m]
                    else:
                        nb &= ~bits[m]
                add(nb, 1)

        for j, (o, start, ln) in enumerate(runs):
            for a in range(ln):
                rlen = ln - 1 - a
                keeps = cnt_ge_b[o] - (ln >= b) + (a >= b) + (rlen >= b) > 0
                base = base_bits if keeps else base_bits & ~bits[o]
                handled = 0
                if ln == 1 and 0 < j < len(runs) - 1 and runs[j - 1][0] == runs[j + 1][0]:
                    # replacing a singleton bridges its equal-letter flanks
                    m, _, ln_l = runs[j - 1]
                    _, _, ln_r = runs[j + 1]
                    nb = base
                    if cnt_ge_b[m] - (ln_l >= b) - (ln_r >= b) + (ln_l + 1 + ln_r >= b) > 0:
                        nb |= bits[m]
                    else:
                        nb &= ~bits[m]
                    add(nb, 1)
                    handled += 1
                else:
                    if a == 0 and j > 0:
                        left, _, ln_l = runs[j - 1]
                        add(base | (bits[left] if ln_l + 1 >= b else 0), 1)
                        handled += 1
                    if rlen == 0 and j < len(runs) - 1:
                        right, _, ln_r = runs[j + 1]
                        add(base | (bits[right] if ln_r + 1 >= b else 0), 1)
                        handled += 1
                add(base, n - 1 - handled)

    lower = equal = higher = 0
    for nb, c in counts.items():
        if nb == base_bits:
            equal += c
            continue
        fv = landscape.bv_value(nb)
        if fv < f:
            lower += c
        elif fv > f:
            higher += c
        else:
            equal += c
    return lower, equal, higher


def neutrality_scan(
    landscape,
    walks: int = 2_000,
    length: int = 20,
    seed: int = 0,
    lambda_max: int | None = None,
) -> tuple[float, float, float]:
    """Proportions of lower / equal / higher neighbors along random walks.

    Every genotype visited by every walk contributes all its within-cap
    operation-neighbors, compared against the current fitness with exact
    floating equality (safe because fitness factors through block vectors).
    Unlike the correlation campaign, the walks here roam the full search
    space: the cap defaults to the landscape's own lambda_max.
    """
    cap = _walk_cap(landscape, landscape.lambda_max if lambda_max is None else lambda_max)
    lower = equal = higher = 0
    for w in range(walks):
        rng = make_rng(seed, STREAM_NEUTRALITY, w)
        g = random_genotype(cap, landscape.n_letters, rng)
        f = landscape.evaluate(g)
        for step in range(length + 1):
            lo, eq, hi = neighbor_class_counts(landscape, g, f, cap)
            lower += lo
            equal += eq
            higher += hi
            if step == length:
                break
            g = random_neighbor(g, landscape.n_letters, rng, lambda_max=cap)
            f = landscape.evaluate(g)
    total = lower + equal + higher
    return lower / total, equal / total, higher / total
