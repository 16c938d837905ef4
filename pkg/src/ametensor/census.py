"""Exhaustive and sampled scans over square matrices of a finite field.

Candidates are addressed by a counter.  In exhaustive mode the counter is
decoded as a mixed-radix number whose first digit (most significant) is the
entry (1,1), then (1,2) and so on row by row; ``column_major=True`` walks the
entries column by column instead.  Random mode draws blocks of matrices from
PCG64 streams keyed by ``(seed, block index)``, so results do not depend on
how blocks are spread over worker processes.
"""

from __future__ import annotations

import itertools
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace
from pathlib import Path

import numpy as np

from .gf import FieldSpec, field_new

EXHAUSTIVE_LIMIT = 10**8
BLOCK = 1 << 16
MAX_BATCH_MINOR = 6


@dataclass(frozen=True)
class CensusResult:
    p: int
    n: int
    modulus: tuple[int, ...]
    size: int
    mode: str
    total: int = 0
    superregular: int = 0
    forward: int | None = None
    backward: int | None = None
    both: int | None = None
    seed: int | None = None
    samples: int | None = None
    duration: float = 0.0

    @property
    def field(self) -> FieldSpec:
        return field_new(self.p, self.n, self.modulus)

    @property
    def q(self) -> int:
        return self.p**self.n

    def merge(self, other: CensusResult) -> CensusResult:
        """Add counts; associative and commutative in everything but duration."""
        key = (self.p, self.n, self.modulus, self.size, self.mode, self.seed)
        if key != (other.p, other.n, other.modulus, other.size, other.mode, other.seed):
            raise ValueError("cannot merge results from different scans")

        def plus(a, b):
            return None if a is None or b is None else a + b

        return replace(
            self,
            total=self.total + other.total,
            superregular=self.superregular + other.superregular,
            forward=plus(self.forward, other.forward),
            backward=plus(self.backward, other.backward),
            both=plus(self.both, other.both),
            duration=self.duration + other.duration,
        )

    def fraction_forward(self) -> float:
        return self.forward / self.superregular if self.superregular else 0.0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["modulus"] = list(self.modulus)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> CensusResult:
        d = dict(d)
        d["modulus"] = tuple(d["modulus"])
        return cls(**d)


# -- batched arithmetic -------------------------------------------------------


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def batch_det(f: FieldSpec, mats: np.ndarray) -> np.ndarray:
    """Determinants of a stack of c x c matrices of codes, by Leibniz expansion."""
    c = mats.shape[-1]
    if c > MAX_BATCH_MINOR:
        raise ValueError(f"batched determinants are limited to {MAX_BATCH_MINOR}x{MAX_BATCH_MINOR}")
    t = f.tables()
    add, mul, neg = t["add"], t["mul"], t["neg"]
    acc = np.zeros(mats.shape[:-2], dtype=np.int64)
    for perm in itertools.permutations(range(c)):
        term = mats[..., 0, perm[0]]
        for r in range(1, c):
            term = mul[term, mats[..., r, perm[r]]]
        if _perm_sign(perm) < 0:
            term = neg[term]
        acc = add[acc, term]
    return acc


def superregular_mask(f: FieldSpec, mats: np.ndarray) -> np.ndarray:
    """Boolean mask of the square matrices in a stack whose minors are all nonzero.

    Survivors are filtered after every minor, so the cost is dominated by
    the cheap 1x1 and 2x2 checks.
    """
    s = mats.shape[-1]
    alive = np.flatnonzero(np.all(mats.reshape(len(mats), -1) != 0, axis=1))
    for c in range(2, s + 1):
        for rows in itertools.combinations(range(s), c):
            for cols in itertools.combinations(range(s), c):
                if not len(alive):
                    break
                sub = mats[alive][:, rows][:, :, cols]
                alive = alive[batch_det(f, sub) != 0]
    mask = np.zeros(len(mats), dtype=bool)
    mask[alive] = True
    return mask


def condition_values(f: FieldSpec, mats: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Forward and backward solubility conditions of a stack of 3x3 matrices."""
    t = f.tables()
    add, sub, mul = t["add"], t["sub"], t["mul"]

    def g(i, j):
        return mats[:, i - 1, j - 1]

    def prod(*xs):
        out = xs[0]
        for x in xs[1:]:
            out = mul[out, x]
        return out

    common = sub[sub[prod(g(1, 1), g(2, 2), g(3, 3)), prod(g(1, 1), g(2, 3), g(3, 2))], prod(g(1, 2), g(2, 1), g(3, 3))]
    fwd = add[common, prod(g(1, 2), g(2, 3), g(3, 1))]
    bwd = add[common, prod(g(1, 3), g(2, 1), g(3, 2))]
    return fwd, bwd


def decode_block(q: int, size: int, start: int, stop: int, column_major: bool = False) -> np.ndarray:
    """Matrices for counters ``start..stop-1``; first entry most significant."""
    counters = np.arange(start, stop, dtype=np.int64)
    cells = size * size
    digits = np.empty((len(counters), cells), dtype=np.int64)
    for pos in range(cells - 1, -1, -1):
        digits[:, pos] = counters % q
        counters //= q
    mats = digits.reshape(-1, size, size)
    if column_major:
        mats = mats.transpose(0, 2, 1)
    return np.ascontiguousarray(mats)


def encode_matrix(q: int, rows, column_major: bool = False) -> int:
    cells = np.asarray(rows, dtype=np.int64)
    if column_major:
        cells = cells.T
    value = 0
    for d in cells.reshape(-1).tolist():
        value = value * q + d
    return value


def _random_block(q: int, size: int, seed: int, index: int, count: int) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))
    return rng.integers(0, q, size=(count, size, size), dtype=np.int64)


# -- scanning -----------------------------------------------------------------


def _blank(f: FieldSpec, size: int, mode: str, factor: bool, seed=None, samples=None) -> CensusResult:
    zero = 0 if factor else None
    return CensusResult(f.p, f.n, f.modulus, size, mode, 0, 0, zero, zero, zero, seed, samples)


def _count(f: FieldSpec, mats: np.ndarray, base: CensusResult, factor: bool) -> CensusResult:
    mask = superregular_mask(f, mats)
    res = replace(base, total=len(mats), superregular=int(mask.sum()), duration=0.0)
    if factor:
        fwd, bwd = condition_values(f, mats[mask])
        fo, bo = fwd != 0, bwd != 0
        res = replace(res, forward=int(fo.sum()), backward=int(bo.sum()), both=int((fo & bo).sum()))
    return res


def _work(args) -> CensusResult:
    p, n, modulus, size, mode, factor, column_major, seed, samples, lo, hi = args
    f = field_new(p, n, modulus)
    base = _blank(f, size, mode, factor, seed, samples)
    acc = replace(base)
    for b in range(lo, hi):
        if mode == "exhaustive":
            start = b * BLOCK
            stop = min(start + BLOCK, f.order ** (size * size))
            mats = decode_block(f.order, size, start, stop, column_major)
        else:
            count = min(BLOCK, samples - b * BLOCK)
            mats = _random_block(f.order, size, seed, b, count)
        acc = acc.merge(_count(f, mats, base, factor))
    return acc


def _resolve_threads(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("THREADS", "1") or 1)
    return max(1, threads)


def run_census(
    field: FieldSpec,
    size: int,
    mode: str = "exhaustive",
    *,
    factor: bool = False,
    samples: int | None = None,
    seed: int | None = None,
    threads: int | None = None,
    column_major: bool = False,
    checkpoint: str | os.PathLike | None = None,
) -> CensusResult:
    """Shared driver behind :func:`census_superregular` and :func:`census_factorizable`."""
    f = field
    if size < 1:
        raise ValueError("matrix size must be positive")
    if size > MAX_BATCH_MINOR:
        raise ValueError(f"census supports sizes up to {MAX_BATCH_MINOR}")
    if mode == "exhaustive":
        space = f.order ** (size * size)
        if space > EXHAUSTIVE_LIMIT:
            raise ValueError(f"{f.order}^{size * size} candidates exceed the exhaustive limit {EXHAUSTIVE_LIMIT:g}")
        seed = samples = None
        n_blocks = math.ceil(space / BLOCK)
    elif mode == "random":
        if seed is None:
            raise ValueError("random mode needs a seed")
        if not samples or samples < 1:
            raise ValueError("random mode needs a positive sample count")
        n_blocks = math.ceil(samples / BLOCK)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    t0 = time.perf_counter()
    result = _blank(f, size, mode, factor, seed, samples)
    done = 0
    ckpt = Path(checkpoint) if checkpoint else None
    ident = {"p": f.p, "n": f.n, "modulus": list(f.modulus), "size": size, "mode": mode,
             "factor": factor, "seed": seed, "samples": samples, "column_major": column_major}
    if ckpt and ckpt.exists():
        state = json.loads(ckpt.read_text())
        if state.get("scan") != ident:
            raise ValueError(f"checkpoint {ckpt} belongs to a different scan")
        done = state["next_block"]
        result = CensusResult.from_dict(state["partial"])

    def save():
        if ckpt:
            tmp = ckpt.with_suffix(ckpt.suffix + ".tmp")
            tmp.write_text(json.dumps({"scan": ident, "next_block": done, "partial": result.to_dict()}))
            tmp.replace(ckpt)

    common = (f.p, f.n, f.modulus, size, mode, factor, column_major, seed, samples)
    workers = _resolve_threads(threads)
    step = max(1, min(16, math.ceil((n_blocks - done) / max(workers, 1))))
    ranges = [(lo, min(lo + step, n_blocks)) for lo in range(done, n_blocks, step)]
    if workers == 1:
        parts = (_work(common + r) for r in ranges)
        for (_, hi), part in zip(ranges, parts):
            result, done = result.merge(part), hi
            save()
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            # map yields in submission order, so the checkpoint always covers a prefix
            for (_, hi), part in zip(ranges, pool.map(_work, [common + r for r in ranges])):
                result, done = result.merge(part), hi
                save()
    return replace(result, duration=time.perf_counter() - t0)


def census_superregular(field: FieldSpec, size: int, mode: str = "exhaustive", **kw) -> CensusResult:
    return run_census(field, size, mode, factor=False, **kw)


def census_factorizable(field: FieldSpec, size: int = 3, mode: str = "exhaustive", **kw) -> CensusResult:
    """Superregular counts plus how many have a nonzero forward/backward condition."""
    if size != 3:
        raise ValueError("factorizability is defined for 3x3 matrices")
    return run_census(field, size, mode, factor=True, **kw)


def iter_superregular(field: FieldSpec, size: int):
    """Yield every superregular matrix (as a numpy array of codes) in counter order."""
    space = field.order ** (size * size)
    if space > EXHAUSTIVE_LIMIT:
        raise ValueError("space too large for exhaustive enumeration")
    for start in range(0, space, BLOCK):
        mats = decode_block(field.order, size, start, min(start + BLOCK, space))
        yield from mats[superregular_mask(field, mats)]


def normalized_superregular(field: FieldSpec, size: int) -> np.ndarray:
    """Superregular matrices whose first row and first column are all ones.

    Each superregular matrix is a row and column scaling of exactly one of
    these. The inner entries must avoid 0 and 1 (otherwise a 2x2 minor through
    the corner vanishes), so only (q-2)^((size-1)^2) candidates are scanned.
    """
    q, inner = field.order, size - 1
    space = max(q - 2, 0) ** (inner * inner)
    if space > EXHAUSTIVE_LIMIT:
        raise ValueError("space too large for exhaustive enumeration")
    found = [np.zeros((0, size, size), dtype=np.int64)]
    for start in range(0, space, BLOCK):
        mats = np.ones((min(start + BLOCK, space) - start, size, size), dtype=np.int64)
        mats[:, 1:, 1:] = decode_block(q - 2, inner, start, start + len(mats)) + 2
        found.append(mats[superregular_mask(field, mats)])
    return np.concatenate(found)


def sample_superregular(field: FieldSpec, size: int, count: int, seed: int, base: np.ndarray | None = None) -> np.ndarray:
    """Random superregular matrices drawn by permuting and rescaling normalized ones.

    Permutations and nonzero diagonal scalings multiply every minor by a
    nonzero factor, so the output is superregular by construction.  This is
    the practical sampler when superregular matrices are too rare for
    rejection sampling (4x4 over GF(7), for instance).
    """
    if base is None:
        base = normalized_superregular(field, size)
    if not len(base):
        raise ValueError(f"no superregular {size}x{size} matrices over {field}")
    rng = np.random.Generator(np.random.PCG64(seed))
    mul = field.tables()["mul"]
    picks = base[rng.integers(0, len(base), count)]
    rows = np.argsort(rng.random((count, size)), axis=1)
    cols = np.argsort(rng.random((count, size)), axis=1)
    out = picks[np.arange(count)[:, None, None], rows[:, :, None], cols[:, None, :]]
    r = rng.integers(1, field.order, (count, size, 1))
    c = rng.integers(1, field.order, (count, 1, size))
    return mul[mul[out, r], c]


# -- probability of a vanishing minor ----------------------------------------------


def singular_probability(q: int, c: int) -> float:
    """Closed-form chance that a uniformly random c x c matrix over GF(q) is singular."""
    return 1.0 - math.prod(1.0 - q ** (-i) for i in range(1, c + 1))


@dataclass(frozen=True)
class SingularityEstimate:
    q: int
    c: int
    samples: int
    seed: int
    singular: int
    empirical: float
    closed_form: float
    difference: float
    sigma: float

    @property
    def within_3sigma(self) -> bool:
        return self.difference <= 3 * self.sigma


def minor_singularity_estimate(field: FieldSpec, c: int, samples: int, seed: int) -> SingularityEstimate:
    if samples < 1000:
        raise ValueError("at least 1000 samples are required")
    q = field.order
    singular = 0
    for b in range(math.ceil(samples / BLOCK)):
        count = min(BLOCK, samples - b * BLOCK)
        singular += int((batch_det(field, _random_block(q, c, seed, b, count)) == 0).sum())
    emp = singular / samples
    exact = singular_probability(q, c)
    sigma = math.sqrt(exact * (1 - exact) / samples)
    return SingularityEstimate(q, c, samples, seed, singular, emp, exact, abs(emp - exact), sigma)
