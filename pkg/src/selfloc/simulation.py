"""Seeded Monte Carlo oracle for the analytic update rules.

Random numbers come from SplitMix64 (Steele, Lea and Flood 2014): output
``i`` (0-based) of a generator seeded with ``seed`` is
``mix(seed + (i + 1) * 0x9E3779B97F4A7C15 mod 2**64)``. The generator is
counter-based, so any slice of the stream can be produced independently.
Trial ``t`` consumes outputs ``2t`` (world draw) and ``2t + 1`` (center
draw, used only in random-center mode). Splitting the trials into
contiguous batches therefore gives each worker its own substream and the
merged counts equal the single-batch counts exactly.

Modes and their analytic counterparts:

- ``per-center``: every matching center is one observation (thirder rule).
- ``per-trial``: a trial counts once if any center matches (halfer rule).
- ``random-center``: one center per trial, drawn uniformly from the
  sampled world's centers (evidential-selection rule).
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .model import EvidenceQuery, Scenario, UnrealizableEvidence

GAMMA = 0x9E3779B97F4A7C15
MASK64 = (1 << 64) - 1


class SamplingMode(str, enum.Enum):
    PER_CENTER = "per-center"
    PER_TRIAL = "per-trial"
    RANDOM_CENTER = "random-center"

    def __str__(self):
        return self.value


MODE_RULE = {
    SamplingMode.PER_CENTER: "thirder",
    SamplingMode.PER_TRIAL: "halfer",
    SamplingMode.RANDOM_CENTER: "selection",
}


def splitmix64(seed: int, start: int, count: int) -> np.ndarray:
    """Outputs ``start .. start+count-1`` of SplitMix64 seeded with ``seed``."""
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    z = np.uint64(seed & MASK64) + idx * np.uint64(GAMMA)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def world_thresholds(priors) -> np.ndarray:
    """Integer CDF cut points: world ``i`` is drawn when ``u < t_i`` first holds.

    ``t_i = ceil(cdf_i * 2**64)`` so ``u / 2**64 < cdf_i`` is tested exactly.
    Cut points equal to ``2**64`` are dropped; the sampled index is the
    number of cut points ``<= u``.
    """
    cuts = []
    cum = Fraction(0)
    for p in priors:
        cum += p
        t = -((-cum.numerator << 64) // cum.denominator)
        if t > MASK64:
            break
        cuts.append(t)
    return np.array(cuts, dtype=np.uint64)


@dataclass(frozen=True)
class FrequencyReport:
    mode: SamplingMode
    trials: int
    seed: int
    denominator_count: int
    numerator_count: int
    analytic: Fraction | None = None

    @property
    def zero_denominator(self) -> bool:
        return self.denominator_count == 0

    @property
    def estimate(self) -> float:
        if self.denominator_count == 0:
            return math.nan
        return self.numerator_count / self.denominator_count

    @property
    def abs_error(self) -> float | None:
        if self.analytic is None:
            return None
        return abs(self.estimate - float(self.analytic))

    def within_bound(self, sigmas: float = 4.0) -> bool:
        """``|estimate - v| <= sigmas * sqrt(v (1 - v) / denominator)``."""
        v = float(self.analytic)
        bound = sigmas * math.sqrt(v * (1 - v) / self.denominator_count)
        return self.abs_error <= bound


class _Tables:
    def __init__(self, s: Scenario, q: EvidenceQuery, event):
        if not s.is_realizable(q):
            raise UnrealizableEvidence(q.label, q.stage)
        members = event.members
        self.cuts = world_thresholds([w.prior for w in s.worlds])
        nw = len(s.worlds)
        width = max(1, max(len(s.centers_of(w)) for w in s.world_ids))
        self.n_centers = np.zeros(nw, dtype=np.uint64)
        self.n_match = np.zeros(nw, dtype=np.int64)
        self.in_event = np.zeros(nw, dtype=bool)
        self.match_at = np.zeros((nw, width), dtype=bool)
        for i, w in enumerate(s.world_ids):
            cs = s.centers_of(w)
            self.n_centers[i] = len(cs)
            self.in_event[i] = w in members
            for j, c in enumerate(cs):
                hit = c.label(q.stage) == q.label
                self.match_at[i, j] = hit
                self.n_match[i] += hit


def _batch(tables: _Tables, mode: SamplingMode, seed: int, start: int, stop: int):
    n = stop - start
    if n <= 0:
        return 0, 0
    draws = splitmix64(seed, 2 * start, 2 * n)
    worlds = np.searchsorted(tables.cuts, draws[0::2], side="right")
    inE = tables.in_event[worlds]
    if mode is SamplingMode.PER_CENTER:
        m = tables.n_match[worlds]
        return int(m.sum()), int(m[inE].sum())
    if mode is SamplingMode.PER_TRIAL:
        hit = tables.n_match[worlds] > 0
        return int(hit.sum()), int((hit & inE).sum())
    k = tables.n_centers[worlds]
    awake = k > 0
    # multiply-shift on the top 32 bits; bias below k / 2**32
    pick = ((draws[1::2] >> np.uint64(32)) * k) >> np.uint64(32)
    hit = awake & tables.match_at[worlds, pick.astype(np.int64)]
    return int(hit.sum()), int((hit & inE).sum())


def count_batch(s: Scenario, mode, q: EvidenceQuery, event, seed: int,
                start: int, stop: int) -> tuple[int, int]:
    """(denominator, numerator) counts for trials ``start .. stop-1``."""
    if isinstance(event, str):
        event = s.event(event)
    return _batch(_Tables(s, q, event), SamplingMode(mode), seed, start, stop)


def run(s: Scenario, mode, q: EvidenceQuery, event, trials: int, seed: int,
        analytic: Fraction | None = None, workers: int = 1,
        chunk: int = 1 << 18) -> FrequencyReport:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if isinstance(event, str):
        event = s.event(event)
    mode = SamplingMode(mode)
    tables = _Tables(s, q, event)
    bounds = [(a, min(a + chunk, trials)) for a in range(0, trials, chunk)]
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda ab: _batch(tables, mode, seed, *ab), bounds))
    else:
        parts = [_batch(tables, mode, seed, a, b) for a, b in bounds]
    den = sum(p[0] for p in parts)
    num = sum(p[1] for p in parts)
    return FrequencyReport(mode, trials, seed, den, num, analytic)
