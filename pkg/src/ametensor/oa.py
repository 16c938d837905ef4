"""Orthogonal arrays from classical bijections and their orthogonality checks.

Tuples over the alphabet ``{0..D-1}`` are encoded mixed-radix with the first
entry most significant.  Columns of an array are labelled 1..k, matching the
site labels of the corresponding k-party state.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .linalg import FFMatrix, det


def encode(digits: Sequence[int], D: int) -> int:
    code = 0
    for d in digits:
        code = code * D + int(d)
    return code


def decode(code: int, D: int, m: int) -> tuple[int, ...]:
    out = []
    for _ in range(m):
        code, r = divmod(code, D)
        out.append(r)
    return tuple(reversed(out))


def all_tuples(D: int, m: int) -> np.ndarray:
    """All D^m tuples as rows, in increasing mixed-radix order."""
    idx = np.arange(D**m)
    powers = D ** np.arange(m - 1, -1, -1)
    return (idx[:, None] // powers[None, :]) % D


@dataclass(frozen=True)
class ClassicalMap:
    """A function X^m -> X^m stored as a lookup table of encoded outputs."""

    D: int
    arity: int
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.D**self.arity:
            raise ValueError(f"table needs {self.D ** self.arity} entries")
        if any(not 0 <= t < self.D**self.arity for t in self.table):
            raise ValueError("table entry out of range")

    @classmethod
    def from_function(cls, D: int, arity: int, fn: Callable[[tuple], Sequence[int]]) -> ClassicalMap:
        return cls(D, arity, tuple(encode(fn(decode(i, D, arity)), D) for i in range(D**arity)))

    def __call__(self, inputs: Sequence[int]) -> tuple[int, ...]:
        return decode(self.table[encode(inputs, self.D)], self.D, self.arity)

    @property
    def is_bijective(self) -> bool:
        return len(set(self.table)) == len(self.table)


def map_from_matrix(G: FFMatrix) -> ClassicalMap:
    """The linear map b = G a over G's field (symbols are field codes)."""
    if not G.is_square:
        raise ValueError("map_from_matrix needs a square matrix")
    if det(G) == 0:
        raise ValueError("singular matrix does not define a bijection")
    f = G.field
    D, m = f.order, G.rows

    def apply(a):
        return [f.sum(f.mul(g, x) for g, x in zip(row, a)) for row in G.entries]

    return ClassicalMap.from_function(D, m, apply)


@dataclass(frozen=True, eq=False)
class OrthogonalArray:
    symbols: int
    rows: np.ndarray
    declared_strength: int | None = None

    def __post_init__(self):
        arr = np.array(self.rows, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("array rows must form a 2-d table")
        if arr.size and (arr.min() < 0 or arr.max() >= self.symbols):
            raise ValueError(f"symbols must lie in [0, {self.symbols})")
        arr.setflags(write=False)
        object.__setattr__(self, "rows", arr)
        if self.declared_strength:
            if len({tuple(r) for r in arr.tolist()}) != len(arr):
                raise ValueError("duplicate rows in an array claiming positive strength")

    @property
    def k(self) -> int:
        return self.rows.shape[1]

    @property
    def n_rows(self) -> int:
        return self.rows.shape[0]

    def __eq__(self, other):
        return (
            isinstance(other, OrthogonalArray)
            and self.symbols == other.symbols
            and np.array_equal(self.rows, other.rows)
        )

    def tolist(self) -> list[list[int]]:
        return self.rows.tolist()


def array_from_map(u: ClassicalMap) -> OrthogonalArray:
    """Rows (a_1..a_m, b_1..b_m) for every input a, inputs ascending."""
    if not u.is_bijective:
        raise ValueError("map is not a bijection")
    m = u.arity
    inputs = all_tuples(u.D, m)
    outputs = all_tuples(u.D, m)[np.array(u.table)]
    return OrthogonalArray(u.D, np.hstack([inputs, outputs]))


def array_from_matrix(G: FFMatrix) -> OrthogonalArray:
    """Fast path equivalent to ``array_from_map(map_from_matrix(G))``."""
    if det(G) == 0:
        raise ValueError("singular matrix does not define a bijection")
    f = G.field
    D, m = f.order, G.rows
    a = all_tuples(D, m)
    if D <= 256:
        t = f.tables()
        g = np.array(G.entries)
        b = np.zeros_like(a)
        for j in range(m):
            b = t["add"][b, t["mul"][g[:, j][None, :], a[:, j][:, None]]]
    else:
        b = np.array([[f.sum(f.mul(x, y) for x, y in zip(row, r)) for row in G.entries] for r in a.tolist()])
    return OrthogonalArray(D, np.hstack([a, b]))


def _check_cols(arr: OrthogonalArray, cols: Iterable[int]) -> list[int]:
    cols = list(cols)
    if not cols:
        raise ValueError("empty column subset")
    if any(not 1 <= c <= arr.k for c in cols) or len(set(cols)) != len(cols):
        raise ValueError(f"invalid columns {cols} for an array with {arr.k} columns")
    return [c - 1 for c in cols]


def subset_counts(arr: OrthogonalArray, cols: Iterable[int]) -> np.ndarray:
    """How often each tuple (mixed-radix order) occurs in the given columns."""
    idx = _check_cols(arr, cols)
    D = arr.symbols
    codes = np.zeros(arr.n_rows, dtype=np.int64)
    for c in idx:
        codes = codes * D + arr.rows[:, c]
    return np.bincount(codes, minlength=D ** len(idx))


def subset_orthogonal(arr: OrthogonalArray, cols: Iterable[int]) -> bool:
    """Every tuple on ``cols`` (1-based) appears equally often (exactly once when N = D^|cols|)."""
    cols = list(cols)
    idx = _check_cols(arr, cols)
    D, n = arr.symbols, arr.n_rows
    if D ** len(idx) > n:
        raise ValueError(f"{n} rows cannot be orthogonal on {len(idx)} columns over {D} symbols")
    if n % D ** len(idx):
        return False
    counts = subset_counts(arr, cols)
    return bool(np.all(counts == n // D ** len(idx)))


def strength(arr: OrthogonalArray) -> int:
    """Largest s such that every s-subset of columns is orthogonal (0 if none)."""
    best = 0
    for s in range(1, arr.k + 1):
        if arr.symbols**s > arr.n_rows:
            break
        if all(subset_orthogonal(arr, c) for c in itertools.combinations(range(1, arr.k + 1), s)):
            best = s
        else:
            break
    return best


# -- four-leg gates ------------------------------------------------------------


@dataclass(frozen=True)
class GateReshuffles:
    """Bijectivity of the three reshufflings of a two-site map.

    ``u_ok``: (a1,a2) -> (b1,b2); ``ut_ok``: (a1,b2) -> (b1,a2);
    ``ur_ok``: (a1,b1) -> (a2,b2).
    """

    u_ok: bool
    ut_ok: bool
    ur_ok: bool

    @property
    def dual_unitary(self) -> bool:
        return self.u_ok and self.ut_ok

    @property
    def perfect(self) -> bool:
        return self.u_ok and self.ut_ok and self.ur_ok


def _pair_bijective(rows: np.ndarray, src: tuple[int, int], dst: tuple[int, int], D: int) -> bool:
    n = D * D
    s = rows[:, src[0]] * D + rows[:, src[1]]
    d = rows[:, dst[0]] * D + rows[:, dst[1]]
    return len(np.unique(s)) == n and len(np.unique(d)) == n


def gate_reshuffles(g: ClassicalMap) -> GateReshuffles:
    if g.arity != 2:
        raise ValueError("gate_reshuffles needs a two-site map")
    D = g.D
    rows = np.hstack([all_tuples(D, 2), all_tuples(D, 2)[np.array(g.table)]])
    # columns: a1=0, a2=1, b1=2, b2=3
    return GateReshuffles(
        u_ok=g.is_bijective,
        ut_ok=_pair_bijective(rows, (0, 3), (2, 1), D),
        ur_ok=_pair_bijective(rows, (0, 2), (1, 3), D),
    )


def all_two_site_bijections(D: int) -> Iterable[ClassicalMap]:
    for perm in itertools.permutations(range(D * D)):
        yield ClassicalMap(D, 2, perm)


# -- balanced bipartitions ----------------------------------------------------

FORWARD_LABELS6 = {
    "hexagonal": [(1, 2, 3), (2, 3, 4), (1, 2, 6)],
    "guaranteed-perfect": [(1, 2, 4), (1, 2, 5), (2, 5, 6)],
    "residual": [(1, 3, 5), (1, 4, 5), (1, 3, 6), (1, 4, 6)],
}
# the backward network is the forward one with operator sites 1 <-> 3,
# i.e. state sites 1 <-> 3 and 4 <-> 6
_BACKWARD_SITE_MAP = {1: 3, 2: 2, 3: 1, 4: 6, 5: 5, 6: 4}


def _canonical(side: Iterable[int], k: int) -> tuple[int, ...]:
    side = tuple(sorted(side))
    if 1 in side:
        return side
    return tuple(sorted(set(range(1, k + 1)) - set(side)))


def bipartition_labels(direction: str, k: int = 6) -> dict[tuple[int, ...], str]:
    """Label -> bipartition map keyed by the side containing site 1."""
    if k != 6 or direction == "none":
        return {}
    if direction not in ("forward", "backward"):
        raise ValueError(f"unknown direction {direction!r}")
    out = {}
    for label, sides in FORWARD_LABELS6.items():
        for side in sides:
            if direction == "backward":
                side = [_BACKWARD_SITE_MAP[s] for s in side]
            out[_canonical(side, k)] = label
    return out


@dataclass(frozen=True)
class Bipartition:
    side: tuple[int, ...]
    complement: tuple[int, ...]
    side_orthogonal: bool
    complement_orthogonal: bool
    label: str | None = None

    @property
    def orthogonal(self) -> bool:
        """Maximal entanglement across the cut: both halves orthogonal."""
        return self.side_orthogonal and self.complement_orthogonal


@dataclass(frozen=True)
class BipartitionReport:
    k: int
    direction: str
    subsets: dict = field(repr=False)
    bipartitions: tuple[Bipartition, ...] = ()
    strength: int = 0

    @property
    def is_ame(self) -> bool:
        return all(self.subsets.values())

    def labelled(self, label: str) -> list[Bipartition]:
        return [b for b in self.bipartitions if b.label == label]

    @property
    def guaranteed_ok(self) -> bool:
        """All bipartitions covered by perfect-gate guarantees are maximally entangled."""
        return all(
            b.orthogonal for b in self.bipartitions if b.label in ("hexagonal", "guaranteed-perfect")
        )

    @property
    def residual_ok(self) -> bool:
        return all(b.orthogonal for b in self.labelled("residual"))

    def failing(self) -> list[Bipartition]:
        return [b for b in self.bipartitions if not b.orthogonal]


def bipartition_report(arr: OrthogonalArray, direction: str = "none") -> BipartitionReport:
    """Orthogonality of every balanced column subset, grouped into bipartitions."""
    k = arr.k
    if k not in (6, 8):
        raise ValueError(f"bipartition report supports k = 6 or 8, got {k}")
    if arr.n_rows != arr.symbols ** (k // 2):
        raise ValueError(f"expected {arr.symbols ** (k // 2)} rows, got {arr.n_rows}")
    labels = bipartition_labels(direction, k)
    sites = range(1, k + 1)
    subsets = {c: subset_orthogonal(arr, c) for c in itertools.combinations(sites, k // 2)}
    parts = []
    for side in subsets:
        if 1 not in side:
            continue
        comp = tuple(s for s in sites if s not in side)
        parts.append(Bipartition(side, comp, subsets[side], subsets[comp], labels.get(side)))
    s = k // 2 if all(subsets.values()) else strength(arr)
    return BipartitionReport(k, direction, subsets, tuple(parts), s)


# -- classical existence bounds ----------------------------------------------------


@dataclass(frozen=True)
class Feasibility:
    feasible: bool | None  # None: neither excluded nor constructed here
    reason: str


def _prime_power(D: int) -> bool:
    if D < 2:
        return False
    p = next(d for d in range(2, D + 1) if D % d == 0)
    while D % p == 0:
        D //= p
    return D == 1


def bush_feasibility(D: int, k: int) -> Feasibility:
    """Whether a strength-k/2, index-one OA on k columns over D symbols can exist."""
    if k not in (6, 8):
        raise ValueError("only k = 6 and k = 8 are tabulated")
    if k == 6 and D <= 3:
        return Feasibility(False, "Bush bound: no OA of strength 3 on 6 columns for D <= 3")
    if k == 8 and D <= 5:
        return Feasibility(False, "Bush bound: no OA of strength 4 on 8 columns for D <= 5")
    if D == 6:
        return Feasibility(
            False,
            "no pair of orthogonal Latin squares of order 6, hence no OA of strength 2 "
            "on 4 columns and none of strength k/2 on k columns",
        )
    if _prime_power(D) and (D >= 4 if k == 6 else D >= 7):
        return Feasibility(True, "superregular matrix over GF(D) exists (explicit construction)")
    return Feasibility(None, "not excluded by the Bush bound or the order-6 argument")
