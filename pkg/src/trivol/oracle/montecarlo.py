"""Rejection-sampling estimate of the 4D hull volume.

Samples are drawn uniformly from the bounding box
``[f_min, f_max] x box``, where the f-range comes from the eight vertices
(a linear functional over a polytope peaks at a vertex). Sampling is split
into fixed-size batches; batch ``b`` draws from a PCG64 stream seeded with
``SeedSequence(seed, spawn_key=(b,))``, so the result depends only on
``(seed, samples)`` and not on how batches are scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..boxdom import BoxDomain3
from ..hullgeom import extreme_points
from .lp import BatchMembership

BATCH_SIZE = 1 << 16
MAX_SEED = (1 << 64) - 1


@dataclass(frozen=True)
class McEstimate:
    estimate: float
    std_error: float
    samples: int
    seed: int
    hits: int
    box_volume: float


def bounding_box(domain: BoxDomain3) -> tuple[np.ndarray, np.ndarray]:
    verts = extreme_points(domain)
    fs = [float(v.f) for v in verts]
    lo = [min(fs)] + [float(a) for a, _ in domain.bounds]
    hi = [max(fs)] + [float(b) for _, b in domain.bounds]
    return np.array(lo), np.array(hi)


def _batch_hits(member: BatchMembership, lo, hi, seed: int, batch: int, n: int) -> int:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(batch,))))
    pts = lo + (hi - lo) * rng.random((n, 4))
    return int(member(pts).sum())


def oracle_volume_montecarlo(domain: BoxDomain3, samples: int, seed: int) -> McEstimate:
    if samples < 1:
        raise ValueError("samples must be at least 1")
    if not 0 <= seed <= MAX_SEED:
        raise ValueError("seed must be a 64-bit unsigned integer")
    verts = extreme_points(domain)
    member = BatchMembership(verts)
    lo, hi = bounding_box(domain)
    box_volume = float(np.prod(hi - lo))

    hits = 0
    for b, start in enumerate(range(0, samples, BATCH_SIZE)):
        hits += _batch_hits(member, lo, hi, seed, b, min(BATCH_SIZE, samples - start))

    p = hits / samples
    if samples > 1:
        # sample standard deviation of the 0/1 hit indicator
        sd = math.sqrt(p * (1 - p) * samples / (samples - 1))
    else:
        sd = 0.0
    return McEstimate(
        estimate=box_volume * p,
        std_error=box_volume * sd / math.sqrt(samples),
        samples=samples,
        seed=seed,
        hits=hits,
        box_volume=box_volume,
    )
