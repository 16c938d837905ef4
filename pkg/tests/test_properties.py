from hypothesis import given, settings
from hypothesis import strategies as st

from ametensor.errors import ConditionZero
from ametensor.factor6 import BACKWARD, FORWARD, factor, forward_condition, reflect
from ametensor.formats import format_matrix, parse_matrix
from ametensor.gf import GF
from ametensor.linalg import FFMatrix, all_minors_nonzero, det, mul, permute_rows, transpose

FIELDS = [GF(2), GF(3), GF(2, 2), GF(5), GF(7), GF(2, 3), GF(3, 2)]

fields = st.sampled_from(FIELDS)


@st.composite
def matrices(draw, size=3, field=None):
    f = field or draw(fields)
    rows = draw(st.lists(st.lists(st.integers(0, f.order - 1), min_size=size, max_size=size), min_size=size, max_size=size))
    return FFMatrix.from_rows(f, rows)


@given(fields, st.data())
def test_field_distributive(f, data):
    a, b, c = (data.draw(st.integers(0, f.order - 1)) for _ in range(3))
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    if a:
        assert f.mul(f.div(b, a), a) == b


@given(matrices())
def test_transpose_preserves_det_and_superregularity(m):
    assert det(transpose(m)) == det(m)
    assert all_minors_nonzero(transpose(m)) == all_minors_nonzero(m)


@given(matrices(), st.permutations(range(3)))
def test_row_permutation_flips_det_sign_only(m, perm):
    d = det(permute_rows(m, list(perm)))
    assert d in (det(m), m.field.neg(det(m)))


@given(st.data())
def test_det_multiplicative(data):
    f = data.draw(fields)
    a, b = data.draw(matrices(field=f)), data.draw(matrices(field=f))
    assert det(mul(a, b)) == f.mul(det(a), det(b))


@settings(max_examples=60, deadline=None)
@given(matrices(field=GF(7)), st.sampled_from([FORWARD, BACKWARD]))
def test_factorization_round_trip(m, direction):
    if not all_minors_nonzero(m):
        return
    try:
        d = factor(m, direction)
    except ConditionZero:
        return
    assert d.recompose() == m


@given(matrices(field=GF(5)))
def test_reflection_is_involution(m):
    assert reflect(reflect(m)) == m


@given(matrices())
def test_text_round_trip(m):
    assert parse_matrix(format_matrix(m))[0] == m


@settings(max_examples=40, deadline=None)
@given(matrices(field=GF(2, 3)))
def test_forward_condition_in_field(m):
    if all_minors_nonzero(m):
        assert 0 <= forward_condition(m) < 8
