"""Six-gate factorization of 4x4 matrices (eight-leg perfect tensors).

    G = A~34 A~24 A~23 A~14 A~13 A~12

A~12 is the rightmost factor, i.e. the first gate applied.  The closed-form
solution is written in terms of the first minors ``m``, the products
``M = g * m`` and the 2x2 principal minors ``N`` (see :func:`cofactors`).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConditionFailed, UnverifiedDecomposition
from .linalg import FFMatrix, all_minors_nonzero, cofactors, embed8, mul, require_superregular

PAIRS = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
# rightmost first: the order in which the gates act
APPLICATION_ORDER = PAIRS
GAUGE_ENTRIES = {
    (1, 2): [(0, 0), (1, 1)],
    (1, 3): [(0, 0), (1, 1)],
    (1, 4): [(1, 1)],
    (2, 3): [(0, 0), (1, 1)],
    (2, 4): [(1, 1)],
}


@dataclass(frozen=True)
class Condition:
    name: str
    holds: bool
    implied_by_superregularity: bool
    value: int  # the quantity that must be nonzero


@dataclass(frozen=True)
class ConditionReport8:
    conditions: tuple[Condition, ...]

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.conditions)

    def failing(self) -> list[Condition]:
        return [c for c in self.conditions if not c.holds]

    def __getitem__(self, name: str) -> Condition:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)


def conditions8(G: FFMatrix) -> ConditionReport8:
    """Evaluate the six nonvanishing conditions of the closed-form solution."""
    t = cofactors(G)
    f = G.field
    M, N, m = t.M, t.N, t.m
    combo = f.add(f.sub(M[2, 4], M[3, 4]), M[4, 4])
    entries = [
        ("M11 != M12", f.sub(M[1, 1], M[1, 2]), False),
        ("M34 != M44", f.sub(M[4, 4], M[3, 4]), False),
        ("M24 - M34 + M44 != 0", combo, False),
        ("N12 != 0", N[1, 2], True),
        ("N34 != 0", N[3, 4], True),
        ("m11 != 0", m[1, 1], True),
    ]
    return ConditionReport8(tuple(Condition(n, v != 0, imp, v) for n, v, imp in entries))


@dataclass(frozen=True)
class Decomposition8:
    gates: dict
    source: FFMatrix
    conditions: ConditionReport8 | None = None

    @property
    def field(self):
        return self.source.field

    def recompose(self) -> FFMatrix:
        out = FFMatrix.identity(self.field, 4)
        for pair in APPLICATION_ORDER:
            out = mul(embed8(self.gates[pair], pair), out)
        return out

    def verify(self) -> bool:
        return verify8(self)

    def identity_gates(self) -> list[tuple[int, int]]:
        return [p for p in PAIRS if self.gates[p].is_identity()]


def verify8(d: Decomposition8) -> bool:
    return d.recompose() == d.source


def factor8(G: FFMatrix) -> Decomposition8:
    """Closed-form factorization; raises NotSuperregular or ConditionFailed."""
    if G.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got {G.rows}x{G.cols}")
    require_superregular(G)
    report = conditions8(G)
    bad = report.failing()
    if bad:
        raise ConditionFailed(bad[0].name, _condition_detail(G, bad[0].name))

    f = G.field
    t = cofactors(G)
    m, M, N = t.m, t.M, t.N
    mul_, sub, add, div = f.mul, f.sub, f.add, f.div

    def g(i, j):
        return G[i - 1, j - 1]

    d11_12 = sub(M[1, 1], M[1, 2])
    d44_34 = sub(M[4, 4], M[3, 4])
    combo = add(sub(M[2, 4], M[3, 4]), M[4, 4])

    a12 = [[1, div(g(1, 2), g(1, 1))], [div(m[1, 2], m[1, 1]), 1]]
    a13 = [[1, div(g(1, 3), g(1, 1))], [div(mul_(m[1, 3], g(1, 1)), f.neg(d11_12)), 1]]
    a14 = [[g(1, 1), g(1, 4)], [div(mul_(g(1, 1), m[1, 4]), combo), 1]]

    num23 = mul_(d11_12, sub(mul_(g(2, 3), combo), mul_(mul_(g(1, 3), g(2, 4)), m[1, 4])))
    den23 = mul_(mul_(N[1, 2], combo), m[1, 1])
    quad = f.sum(
        [
            mul_(mul_(g(1, 1), g(3, 2)), g(4, 4)),
            f.neg(mul_(mul_(g(1, 2), g(3, 1)), g(4, 4))),
            mul_(mul_(g(1, 2), g(3, 4)), g(4, 1)),
            f.neg(mul_(mul_(g(1, 1), g(3, 4)), g(4, 2))),
        ]
    )
    a23 = [[1, div(num23, den23)], [div(mul_(m[1, 1], quad), mul_(N[3, 4], d11_12)), 1]]

    a24_11 = div(mul_(m[1, 1], N[1, 2]), d11_12)
    a24_21 = div(f.neg(mul_(mul_(m[1, 1], m[2, 4]), N[1, 2])), mul_(d11_12, d44_34))
    a24 = [[a24_11, g(2, 4)], [a24_21, 1]]

    a34 = [
        [div(mul_(N[3, 4], m[4, 4]), d44_34), g(3, 4)],
        [div(mul_(N[3, 4], m[3, 4]), d44_34), g(4, 4)],
    ]

    raw = {(1, 2): a12, (1, 3): a13, (1, 4): a14, (2, 3): a23, (2, 4): a24, (3, 4): a34}
    gates = {p: FFMatrix.from_rows(f, raw[p]) for p in PAIRS}
    dec = Decomposition8(gates, G, report)
    if not verify8(dec):
        raise UnverifiedDecomposition("closed-form 8-leg solution does not recompose to G")
    return dec


def _condition_detail(G: FFMatrix, name: str) -> str:
    t = cofactors(G)
    if name == "M11 != M12":
        return f"M11 = M12 = {t.M[1, 1]}"
    if name == "M34 != M44":
        return f"M34 = M44 = {t.M[3, 4]}"
    return ""


def gate_perfection_report(d: Decomposition8) -> dict[tuple[int, int], bool]:
    """Superregularity flag of each 2x2 gate (perfect iff entries and det nonzero)."""
    return {p: all_minors_nonzero(d.gates[p]) for p in PAIRS}
