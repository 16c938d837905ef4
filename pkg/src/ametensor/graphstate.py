"""Graph states, the block incidence matrix of a linear map, and circuit plans.

Everything here works with prime local dimension D, where the controlled-Z
phase omega^(ab) with omega = exp(2 pi i / D) only depends on a, b mod D.
Sites are 1-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .factor6 import FORWARD, Decomposition6
from .factor8 import APPLICATION_ORDER, Decomposition8
from .errors import UnverifiedDecomposition
from .gf import FieldSpec
from .linalg import FFMatrix, det, transpose

DEFAULT_CAP = 10**7


def _require_prime(f: FieldSpec):
    if not f.is_prime_field:
        raise ValueError(f"graph states need a prime local dimension, got {f}")


@dataclass(frozen=True)
class IncidenceMatrix:
    """Symmetric, zero-diagonal matrix of controlled-Z powers l_ij."""

    L: FFMatrix

    def __post_init__(self):
        L = self.L
        if not L.is_square:
            raise ValueError("incidence matrix must be square")
        if any(L[i, i] for i in range(L.rows)):
            raise ValueError("incidence matrix must have a zero diagonal")
        if L != transpose(L):
            raise ValueError("incidence matrix must be symmetric")

    @classmethod
    def from_edges(cls, field: FieldSpec, k: int, edges: dict) -> IncidenceMatrix:
        """Build from ``{(i, j): weight}`` with 1-based sites."""
        rows = [[0] * k for _ in range(k)]
        for (i, j), w in edges.items():
            if i == j:
                raise ValueError("self loops are not allowed")
            rows[i - 1][j - 1] = rows[j - 1][i - 1] = w
        return cls(FFMatrix.from_rows(field, rows))

    @property
    def k(self) -> int:
        return self.L.rows

    @property
    def field(self) -> FieldSpec:
        return self.L.field

    def weight(self, i: int, j: int) -> int:
        return self.L[i - 1, j - 1]

    def edges(self) -> dict[tuple[int, int], int]:
        return {
            (i + 1, j + 1): self.L[i, j]
            for i, j in itertools.combinations(range(self.k), 2)
            if self.L[i, j]
        }


def block_incidence(G: FFMatrix) -> IncidenceMatrix:
    """L = [[0, G^T], [G, 0]] for the state of the linear map b = G a."""
    _require_prime(G.field)
    if not G.is_square:
        raise ValueError("G must be square")
    m = G.rows
    rows = [[0] * (2 * m) for _ in range(2 * m)]
    for i in range(m):
        for j in range(m):
            rows[m + i][j] = G[i, j]
            rows[j][m + i] = G[i, j]
    return IncidenceMatrix(FFMatrix.from_rows(G.field, rows))


def balanced_bipartitions(k: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Each balanced cut once, as (side containing site 1, complement)."""
    sites = range(1, k + 1)
    out = []
    for side in itertools.combinations(sites, k // 2):
        if 1 in side:
            out.append((side, tuple(s for s in sites if s not in side)))
    return out


def property1_check(L: IncidenceMatrix) -> bool:
    """Every k/2 x k/2 block with rows from A and columns from B is nonsingular."""
    k = L.k
    if k % 2:
        raise ValueError("Property 1 needs an even number of sites")
    for a, b in balanced_bipartitions(k):
        if det(L.L.submatrix([i - 1 for i in a], [j - 1 for j in b])) == 0:
            return False
    return True


def gate_count(L: IncidenceMatrix) -> int:
    """Number of nonzero l_ij with i < j (each power of Z counted as one gate)."""
    return len(L.edges())


def min_gate_bound(k: int) -> int:
    return (k // 2) ** 2


@dataclass(frozen=True)
class LowerBoundWitness:
    column: int
    rows: tuple[int, ...]
    complement: tuple[int, ...]


def lower_bound_witness(L: IncidenceMatrix) -> LowerBoundWitness | None:
    """A column with >= k/2 off-diagonal zeros, which forces a zero minor.

    Taking those rows as side A puts the column in side B, so the A x B block
    has an all-zero column.  Returns None when no column qualifies.
    """
    k = L.k
    for col in range(1, k + 1):
        zeros = [r for r in range(1, k + 1) if r != col and L.weight(r, col) == 0]
        if len(zeros) >= k // 2:
            rows = tuple(zeros[: k // 2])
            comp = tuple(s for s in range(1, k + 1) if s not in rows)
            return LowerBoundWitness(col, rows, comp)
    return None


# -- circuits ------------------------------------------------------------------


@dataclass(frozen=True)
class CircuitGate:
    kind: str  # "bell", "gate" or "cz"
    sites: tuple[int, int]
    name: str = ""
    matrix: FFMatrix | None = None
    power: int | None = None

    @property
    def droppable(self) -> bool:
        return self.kind == "gate" and self.matrix is not None and self.matrix.is_identity()


@dataclass(frozen=True)
class CircuitPlan:
    D: int
    k: int
    field: FieldSpec
    gates: tuple[CircuitGate, ...] = field(default=())

    @property
    def total(self) -> int:
        return len(self.gates)

    @property
    def effective(self) -> int:
        return sum(not g.droppable for g in self.gates)

    def droppable(self) -> list[CircuitGate]:
        return [g for g in self.gates if g.droppable]


def tensor_network_circuit(d: Decomposition6 | Decomposition8) -> CircuitPlan:
    """Bell pairs between site i and i + k/2, then the factor gates in application order."""
    if not d.verify():
        raise UnverifiedDecomposition("decomposition does not reproduce its matrix")
    f = d.field
    if isinstance(d, Decomposition6):
        k = 6
        order = [("A", (1, 2)), ("B", (1, 3)), ("C", (2, 3))]
        if d.direction != FORWARD:
            order.reverse()
        two_site = [CircuitGate("gate", s, n, d.gates[n]) for n, s in order]
    else:
        k = 8
        two_site = [CircuitGate("gate", p, f"A{p[0]}{p[1]}", d.gates[p]) for p in APPLICATION_ORDER]
    half = k // 2
    bells = [CircuitGate("bell", (i, i + half), "K") for i in range(1, half + 1)]
    return CircuitPlan(f.order, k, f, tuple(bells + two_site))


def graph_state_circuit(L: IncidenceMatrix) -> CircuitPlan:
    f = L.field
    gates = tuple(CircuitGate("cz", e, "Z", power=w) for e, w in L.edges().items())
    return CircuitPlan(f.order, L.k, f, gates)


# -- state vectors -----------------------------------------------------------------


def _check_size(D: int, k: int, cap: int):
    if D**k > cap:
        raise ValueError(f"{D}^{k} amplitudes exceed the cap of {cap}")


def _grid(D: int, k: int) -> list[np.ndarray]:
    return [
        np.arange(D).reshape([D if a == i else 1 for a in range(k)]) for i in range(k)
    ]


def build_graph_state(L: IncidenceMatrix, cap: int = DEFAULT_CAP) -> np.ndarray:
    """Amplitudes D^(-k/2) omega^(sum_{i<j} l_ij a_i a_j), flattened with site 1 most significant."""
    f = L.field
    _require_prime(f)
    D, k = f.order, L.k
    _check_size(D, k, cap)
    axes = _grid(D, k)
    phase = np.zeros([D] * k, dtype=np.int64)
    for (i, j), w in L.edges().items():
        phase = (phase + w * axes[i - 1] * axes[j - 1]) % D
    return (np.exp(2j * np.pi * phase / D) / D ** (k / 2)).reshape(-1)


def minimal_support_state(G: FFMatrix, cap: int = DEFAULT_CAP) -> np.ndarray:
    """Uniform superposition of |a, G a> over all inputs a."""
    from .oa import array_from_matrix

    D, m = G.field.order, G.rows
    _check_size(D, 2 * m, cap)
    rows = array_from_matrix(G).rows
    idx = np.zeros(len(rows), dtype=np.int64)
    for c in range(2 * m):
        idx = idx * D + rows[:, c]
    psi = np.zeros(D ** (2 * m), dtype=complex)
    psi[idx] = D ** (-m / 2)
    return psi


def _apply_pair_permutation(psi: np.ndarray, D: int, k: int, sites, perm: np.ndarray) -> np.ndarray:
    i, j = sites[0] - 1, sites[1] - 1
    t = np.moveaxis(psi.reshape([D] * k), (i, j), (0, 1)).reshape(D * D, -1)
    out = np.empty_like(t)
    out[perm] = t
    out = np.moveaxis(out.reshape([D] * k), (0, 1), (i, j))
    return out.reshape(-1)


def circuit_state(plan: CircuitPlan, cap: int = DEFAULT_CAP) -> np.ndarray:
    """Simulate a plan: Bell pairs prepared first, then gates acting as basis permutations.

    A two-site gate with matrix M maps |x_i, x_j> to |M (x_i, x_j)>.  Controlled-Z
    gates need a prime D and the plan is then expected to start from |+...+>.
    """
    f, D, k = plan.field, plan.D, plan.k
    _check_size(D, k, cap)
    bells = [g for g in plan.gates if g.kind == "bell"]
    if bells:
        paired = {s for g in bells for s in g.sites}
        if len(paired) != k:
            raise ValueError("Bell pairs must cover every site")
        psi = np.zeros([D] * k, dtype=complex)
        for vals in itertools.product(range(D), repeat=len(bells)):
            idx = [0] * k
            for g, v in zip(bells, vals):
                idx[g.sites[0] - 1] = idx[g.sites[1] - 1] = v
            psi[tuple(idx)] = 1.0
        psi = psi.reshape(-1) / np.sqrt(D ** len(bells))
    else:
        psi = np.full(D**k, D ** (-k / 2), dtype=complex)
    pairs = np.array(list(itertools.product(range(D), repeat=2)))
    for g in plan.gates:
        if g.kind == "bell":
            continue
        if g.kind == "gate":
            M = g.matrix
            out = []
            for x, y in pairs.tolist():
                u = f.add(f.mul(M[0, 0], x), f.mul(M[0, 1], y))
                v = f.add(f.mul(M[1, 0], x), f.mul(M[1, 1], y))
                out.append(u * D + v)
            perm = np.array(out)
            if len(set(out)) != D * D:
                raise ValueError(f"gate {g.name} on {g.sites} is not invertible")
            psi = _apply_pair_permutation(psi, D, k, g.sites, perm)
        elif g.kind == "cz":
            _require_prime(f)
            axes = _grid(D, k)
            i, j = g.sites
            phase = (g.power * axes[i - 1] * axes[j - 1]) % D
            psi = (psi.reshape([D] * k) * np.exp(2j * np.pi * phase / D)).reshape(-1)
        else:
            raise ValueError(f"unknown gate kind {g.kind!r}")
    return psi


def fourier_matrix(D: int) -> np.ndarray:
    a = np.arange(D)
    return np.exp(2j * np.pi * np.outer(a, a) / D) / np.sqrt(D)


def fourier_rotate(psi: np.ndarray, D: int, sites: Sequence[int], inverse: bool = False) -> np.ndarray:
    """Apply F (F_ab = omega^(ab)/sqrt(D)) on each listed 1-based site."""
    k = _num_sites(psi, D)
    F = fourier_matrix(D)
    if inverse:
        F = F.conj().T
    t = psi.reshape([D] * k)
    for s in sites:
        if not 1 <= s <= k:
            raise ValueError(f"site {s} out of range 1..{k}")
        t = np.moveaxis(np.tensordot(F, t, axes=([1], [s - 1])), 0, s - 1)
    return t.reshape(-1)


def _num_sites(psi: np.ndarray, D: int) -> int:
    k = round(np.log(psi.size) / np.log(D))
    if D**k != psi.size:
        raise ValueError(f"state of size {psi.size} is not a power of {D}")
    return k


def overlap(a: np.ndarray, b: np.ndarray) -> float:
    """|<a|b>|, insensitive to global phase."""
    return float(abs(np.vdot(a, b)))


@dataclass(frozen=True)
class UniformityEntry:
    side: tuple[int, ...]
    deviation: float
    passed: bool


@dataclass(frozen=True)
class UniformityReport:
    D: int
    k: int
    tolerance: float
    entries: tuple[UniformityEntry, ...]

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def max_deviation(self) -> float:
        return max(e.deviation for e in self.entries)


def reduced_density_matrix(psi: np.ndarray, D: int, side: Sequence[int]) -> np.ndarray:
    k = _num_sites(psi, D)
    keep = [s - 1 for s in side]
    rest = [s for s in range(k) if s not in keep]
    m = np.transpose(psi.reshape([D] * k), keep + rest).reshape(D ** len(keep), -1)
    return m @ m.conj().T


def uniformity_check(psi: np.ndarray, D: int, k: int | None = None, tolerance: float = 1e-9) -> UniformityReport:
    """Max-norm distance of every balanced reduced density matrix from I / D^(k/2)."""
    if k is None:
        k = _num_sites(psi, D)
    elif D**k != psi.size:
        raise ValueError(f"state has {psi.size} amplitudes, expected {D}^{k}")
    norm = np.linalg.norm(psi)
    if abs(norm - 1) > tolerance:
        raise ValueError(f"state is not normalized (norm {norm})")
    half = k // 2
    target = np.eye(D**half) / D**half
    entries = []
    for side, _ in balanced_bipartitions(k):
        dev = float(np.max(np.abs(reduced_density_matrix(psi, D, side) - target)))
        entries.append(UniformityEntry(side, dev, dev <= tolerance))
    return UniformityReport(D, k, tolerance, tuple(entries))
