"""Three-gate factorizations of 3x3 matrices (six-leg perfect tensors).

Forward:  G = C~ B~ A~   (A acts first on sites 1,2; then B on 1,3; then C on 2,3)
Backward: G = A~ B~ C~

where ``X~`` is the 3x3 embedding of the 2x2 gate X (see :func:`embed6`).

Forward factors are reported in the gauge a11 = a22 = b22 = 1.  The backward
factors are the forward factors of the site-reflected matrix (rows and columns
1 <-> 3 swapped) with the roles of A and C interchanged and each gate's legs
mapped back; in this module's embedding that is the gauge c11 = c22 = b11 = 1.
:func:`leg_reversed_layout` converts to the leg-reversed layout in which
the backward solution is usually tabulated (b11 = g33, b12 = g31, ...).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import ConditionZero, UnverifiedDecomposition
from .gf import FieldSpec
from .linalg import FFMatrix, embed6, mul, require_superregular

FORWARD = "forward"
BACKWARD = "backward"


def _g(G: FFMatrix):
    if G.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got {G.rows}x{G.cols}")
    return G.field, lambda i, j: G[i - 1, j - 1]


def _terms(f: FieldSpec, plus, minus) -> int:
    total = 0
    for a, b, c in plus:
        total = f.add(total, f.mul(f.mul(a, b), c))
    for a, b, c in minus:
        total = f.sub(total, f.mul(f.mul(a, b), c))
    return total


def forward_condition(G: FFMatrix) -> int:
    """g11 g22 g33 + g12 g23 g31 - g11 g23 g32 - g12 g21 g33."""
    f, g = _g(G)
    return _terms(
        f,
        [(g(1, 1), g(2, 2), g(3, 3)), (g(1, 2), g(2, 3), g(3, 1))],
        [(g(1, 1), g(2, 3), g(3, 2)), (g(1, 2), g(2, 1), g(3, 3))],
    )


def backward_condition(G: FFMatrix) -> int:
    """g11 g22 g33 + g13 g21 g32 - g11 g23 g32 - g12 g21 g33."""
    f, g = _g(G)
    return _terms(
        f,
        [(g(1, 1), g(2, 2), g(3, 3)), (g(1, 3), g(2, 1), g(3, 2))],
        [(g(1, 1), g(2, 3), g(3, 2)), (g(1, 2), g(2, 1), g(3, 3))],
    )


@dataclass(frozen=True)
class Decomposition6:
    direction: str
    A: FFMatrix
    B: FFMatrix
    C: FFMatrix
    source: FFMatrix
    condition_value: int
    gauge: tuple[int, int, int] = (1, 1, 1)

    @property
    def field(self) -> FieldSpec:
        return self.source.field

    @property
    def gates(self) -> dict[str, FFMatrix]:
        return {"A": self.A, "B": self.B, "C": self.C}

    def recompose(self) -> FFMatrix:
        a, b, c = embed6(self.A, "A"), embed6(self.B, "B"), embed6(self.C, "C")
        if self.direction == FORWARD:
            return mul(c, mul(b, a))
        return mul(a, mul(b, c))

    def verify(self) -> bool:
        return self.recompose() == self.source


def _build(direction, G, cond, A, B, C) -> Decomposition6:
    f = G.field
    dec = Decomposition6(
        direction,
        FFMatrix.from_rows(f, A),
        FFMatrix.from_rows(f, B),
        FFMatrix.from_rows(f, C),
        G,
        cond,
    )
    if not dec.verify():
        raise UnverifiedDecomposition(f"{direction} solution does not recompose to G")
    return dec


def factor_forward(G: FFMatrix) -> Decomposition6:
    """Solve G = C~ B~ A~ in the gauge a11 = a22 = b22 = 1.

    Raises NotSuperregular if a minor of G vanishes and ConditionZero if the
    forward condition is zero (then no such factorization exists).
    """
    f, g = _g(G)
    require_superregular(G)
    cond = forward_condition(G)
    if cond == 0:
        raise ConditionZero(FORWARD)
    m, sub, div = f.mul, f.sub, f.div
    lower_right = sub(m(g(2, 2), g(3, 3)), m(g(2, 3), g(3, 2)))
    leading = sub(m(g(1, 1), g(2, 2)), m(g(1, 2), g(2, 1)))

    a12 = div(g(1, 2), g(1, 1))
    a21 = div(sub(m(g(2, 1), g(3, 3)), m(g(2, 3), g(3, 1))), lower_right)
    b21 = div(m(g(1, 1), sub(m(g(2, 2), g(3, 1)), m(g(2, 1), g(3, 2)))), cond)
    c11 = div(m(leading, lower_right), cond)
    c21 = div(m(sub(m(g(1, 1), g(3, 2)), m(g(1, 2), g(3, 1))), lower_right), cond)

    A = [[1, a12], [a21, 1]]
    B = [[g(1, 1), g(1, 3)], [b21, 1]]
    C = [[c11, g(2, 3)], [c21, g(3, 3)]]
    return _build(FORWARD, G, cond, A, B, C)


def factor_backward(G: FFMatrix) -> Decomposition6:
    """Solve G = A~ B~ C~ in the gauge c11 = c22 = b11 = 1."""
    f, g = _g(G)
    require_superregular(G)
    cond = backward_condition(G)
    if cond == 0:
        raise ConditionZero(BACKWARD)
    m, sub, div = f.mul, f.sub, f.div
    lower_right = sub(m(g(2, 2), g(3, 3)), m(g(2, 3), g(3, 2)))
    leading = sub(m(g(1, 1), g(2, 2)), m(g(1, 2), g(2, 1)))

    a12 = div(m(sub(m(g(1, 2), g(3, 3)), m(g(1, 3), g(3, 2))), leading), cond)
    a22 = div(m(lower_right, leading), cond)
    b12 = div(m(g(3, 3), sub(m(g(1, 3), g(2, 2)), m(g(1, 2), g(2, 3)))), cond)
    c12 = div(sub(m(g(1, 1), g(2, 3)), m(g(1, 3), g(2, 1))), leading)
    c21 = div(g(3, 2), g(3, 3))

    A = [[g(1, 1), a12], [g(2, 1), a22]]
    B = [[1, b12], [g(3, 1), g(3, 3)]]
    C = [[1, c12], [c21, 1]]
    return _build(BACKWARD, G, cond, A, B, C)


def factor(G: FFMatrix, direction: str = FORWARD) -> Decomposition6:
    if direction == FORWARD:
        return factor_forward(G)
    if direction == BACKWARD:
        return factor_backward(G)
    raise ValueError(f"direction must be {FORWARD!r} or {BACKWARD!r}")


def reverse_legs(gate: FFMatrix) -> FFMatrix:
    """Swap both legs of a 2x2 gate: entry (i, j) -> (3-i, 3-j)."""
    (a, b), (c, d) = gate.entries
    return FFMatrix(gate.field, ((d, c), (b, a)))


def leg_reversed_layout(dec: Decomposition6) -> dict[str, FFMatrix]:
    """Backward gates with legs reversed, matching the tabulated closed form.

    In that layout c11 = c22 = b22 = 1, b11 = g33, b12 = g31, a12 = g21,
    a22 = g11 and c12 = g32/g33.
    """
    if dec.direction != BACKWARD:
        raise ValueError("only backward decompositions have a leg-reversed layout")
    return {k: reverse_legs(v) for k, v in dec.gates.items()}


def reflect(G: FFMatrix) -> FFMatrix:
    """Reverse the order of rows and columns (the site permutation 1 <-> 3)."""
    n = G.rows
    return G.submatrix(range(n - 1, -1, -1), range(n - 1, -1, -1))


def gauge_transform(dec: Decomposition6, e1, e3, e2=1) -> Decomposition6:
    """Apply diagonal rescalings that leave the recomposed matrix unchanged.

    Forward:  C~ -> C~ E3 E2,  B~ -> E3^-1 B~ E1,  A~ -> E1^-1 E2^-1 A~
    Backward: A~ -> A~ E1 E2,  B~ -> E1^-1 B~ E3,  C~ -> E3^-1 E2^-1 C~

    with E1 = diag(e1,1,1), E2 = diag(1,e2,1), E3 = diag(1,1,e3).  E2 commutes
    with B~, which is why it can be moved between A~ and C~.
    """
    f = dec.field
    e1, e2, e3 = f.code(e1), f.code(e2), f.code(e3)
    if 0 in (e1, e2, e3):
        raise ValueError("gauge scale factors must be nonzero")
    m, inv = f.mul, f.inv
    (a11, a12), (a21, a22) = dec.A.entries
    (b11, b12), (b21, b22) = dec.B.entries
    (c11, c12), (c21, c22) = dec.C.entries
    i1, i2, i3 = inv(e1), inv(e2), inv(e3)
    if dec.direction == FORWARD:
        A = [[m(a11, i1), m(a12, i1)], [m(a21, i2), m(a22, i2)]]
        B = [[m(b11, e1), b12], [m(m(b21, e1), i3), m(b22, i3)]]
        C = [[m(c11, e2), m(c12, e3)], [m(c21, e2), m(c22, e3)]]
    else:
        A = [[m(a11, e1), m(a12, e2)], [m(a21, e1), m(a22, e2)]]
        B = [[m(b11, i1), m(m(b12, i1), e3)], [b21, m(b22, e3)]]
        C = [[m(c11, i2), m(c12, i2)], [m(c21, i3), m(c22, i3)]]
    g1, g2, g3 = dec.gauge
    return replace(
        dec,
        A=FFMatrix.from_rows(f, A),
        B=FFMatrix.from_rows(f, B),
        C=FFMatrix.from_rows(f, C),
        gauge=(m(g1, e1), m(g2, e2), m(g3, e3)),
    )


# -- Yang-Baxter family ------------------------------------------------------


@dataclass(frozen=True)
class YangBaxterTriple:
    A: FFMatrix
    B: FFMatrix
    C: FFMatrix
    params: dict = field(default_factory=dict)

    def product(self) -> FFMatrix:
        return mul(embed6(self.A, "A"), mul(embed6(self.B, "B"), embed6(self.C, "C")))


YB_FREE = ("a11", "a21", "b11", "b12", "b21", "b22", "c12", "c22")


def yb_build(field: FieldSpec, a11, a21, b11, b12, b21, b22, c12, c22) -> YangBaxterTriple:
    """Complete eight free entries to a solution of A~B~C~ = C~B~A~.

    a12, c21, a22 and c11 are determined; a21 and c12 must be nonzero.
    """
    f = field
    vals = [f.code(v) for v in (a11, a21, b11, b12, b21, b22, c12, c22)]
    a11, a21, b11, b12, b21, b22, c12, c22 = vals
    if a21 == 0 or c12 == 0:
        raise ValueError("a21 and c12 must be nonzero")
    m, sub, div = f.mul, f.sub, f.div
    shared = sub(1, m(a11, c22))
    a12 = m(div(b12, c12), shared)
    c21 = m(div(b21, a21), shared)
    a22 = sub(b22, div(m(m(a21, b12), c22), c12))
    c11 = sub(b11, div(m(m(a11, b21), c12), a21))
    return YangBaxterTriple(
        FFMatrix.from_rows(f, [[a11, a12], [a21, a22]]),
        FFMatrix.from_rows(f, [[b11, b12], [b21, b22]]),
        FFMatrix.from_rows(f, [[c11, c12], [c21, c22]]),
        dict(zip(YB_FREE, vals)),
    )


def yb_check(A: FFMatrix, B: FFMatrix, C: FFMatrix) -> bool:
    """True iff A~ B~ C~ == C~ B~ A~."""
    a, b, c = embed6(A, "A"), embed6(B, "B"), embed6(C, "C")
    return mul(a, mul(b, c)) == mul(c, mul(b, a))


def yb_residuals(A: FFMatrix, B: FFMatrix, C: FFMatrix) -> list[int]:
    """Left minus right side of the seven coefficient equations of the YB relation.

    All seven vanish iff :func:`yb_check` holds; computed without forming the
    3x3 products.
    """
    f = A.field
    (a11, a12), (a21, a22) = A.entries
    (b11, b12), (b21, b22) = B.entries
    (c11, c12), (c21, c22) = C.entries
    m, add, sub = f.mul, f.add, f.sub
    return [
        sub(add(m(a12, c11), m(m(a11, b12), c21)), m(b11, a12)),
        sub(add(m(a12, c12), m(m(a11, b12), c22)), b12),
        sub(m(a21, b11), add(m(a21, c11), m(m(a11, b21), c12))),
        sub(m(m(a21, b12), c21), m(m(a12, b21), c12)),
        sub(add(m(a22, c12), m(m(a21, b12), c22)), m(b22, c12)),
        sub(b21, add(m(a21, c21), m(m(a11, b21), c22))),
        sub(m(b22, c21), add(m(a22, c21), m(m(a12, b21), c22))),
    ]
