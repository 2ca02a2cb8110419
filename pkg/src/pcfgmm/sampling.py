"""Seeded sampling from a uniform spherical mixture.

Random streams: samples are produced in chunks of ``SAMPLE_CHUNK`` values.
Chunk ``i`` of a run with seed ``s`` draws from
``numpy.random.Generator(Philox(SeedSequence(s, spawn_key=(i,))))``: the
component index first (``Generator.integers``), then the standard normal
offsets (``Generator.standard_normal``, numpy's ziggurat). Philox is counter
based, so chunks are independent and can be generated in any order.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .constants import SAMPLE_CHUNK
from .mixture import Mixture
from .numeric import compensated_sum


@dataclass(frozen=True, eq=False)
class SampleSet:
    values: np.ndarray
    seed: int = 0
    source_k: int = 0

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64).ravel()
        if v.size == 0:
            raise ValueError("sample set is empty")
        if not np.all(np.isfinite(v)):
            raise ValueError("sample values must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.size


def chunk_rng(seed: int, chunk_index: int) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(chunk_index,))
    return np.random.Generator(np.random.Philox(ss))


def _draw_chunk(means: np.ndarray, size: int, seed: int, chunk_index: int) -> np.ndarray:
    rng = chunk_rng(seed, chunk_index)
    comp = rng.integers(0, means.size, size=size)
    return means[comp] + rng.standard_normal(size)


def sample(mixture: Mixture, n: int, seed: int, threads: int = 1) -> SampleSet:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    means = np.asarray(mixture.means, dtype=np.float64)
    out = np.empty(n)
    n_chunks = math.ceil(n / SAMPLE_CHUNK)

    def fill(i):
        lo = i * SAMPLE_CHUNK
        hi = min(n, lo + SAMPLE_CHUNK)
        out[lo:hi] = _draw_chunk(means, hi - lo, seed, i)

    if threads > 1 and n_chunks > 1:
        with ThreadPoolExecutor(threads) as pool:
            list(pool.map(fill, range(n_chunks)))
    else:
        for i in range(n_chunks):
            fill(i)
    return SampleSet(out, seed=seed, source_k=mixture.k)


def center_samples(s: SampleSet) -> tuple[SampleSet, float]:
    shift = compensated_sum(s.values) / len(s)
    return SampleSet(s.values - shift, seed=s.seed, source_k=s.source_k), shift


def load_samples(path) -> SampleSet:
    """Read one float per line; blank lines and ``#`` comments are skipped."""
    values = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: not a number: {line!r}") from None
    return SampleSet(np.array(values), seed=0, source_k=0)


def save_samples(s: SampleSet, path, comment: str | None = None) -> None:
    with open(path, "w") as fh:
        if comment:
            fh.write(f"# {comment}\n")
        for x in s.values.tolist():
            fh.write(f"{x!r}\n")
