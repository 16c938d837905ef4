import json

import pytest

from ametensor.factor6 import BACKWARD, factor
from ametensor.factor8 import factor8
from ametensor.formats import (
    FormatError,
    circuit_from_dict,
    circuit_to_dict,
    decomposition_from_dict,
    decomposition_to_dict,
    dumps,
    field_dict,
    field_from_dict,
    field_header,
    format_array_csv,
    format_matrix,
    parse_array_csv,
    parse_field_header,
    parse_matrix,
)
from ametensor.gf import GF
from ametensor.graphstate import block_incidence, graph_state_circuit, tensor_network_circuit
from ametensor.oa import array_from_matrix

from conftest import F5, F7, F8, SOURCES8, mat


class TestMatrixText:
    def test_round_trip(self, g5):
        m, over = parse_matrix(format_matrix(g5))
        assert m == g5 and over is None

    def test_extension_field_header(self):
        m = mat(F8, [[1, 2], [3, 7]])
        text = format_matrix(m)
        assert text.startswith("field 2 3 1 1 0 1\n")
        assert parse_matrix(text)[0] == m

    def test_comments_and_negatives(self):
        text = "# a comment\n\n1 1 1\n1 2 -2\n  # trailing\n1 -2 -1\n"
        m, _ = parse_matrix(text, F5)
        assert m.tolist() == [[1, 1, 1], [1, 2, 3], [1, 3, 4]]

    def test_header_overrides_flags(self):
        m, over = parse_matrix("field 7 1\n1 2\n3 4\n", F5)
        assert m.field == F7 and over == F5

    def test_matching_flags_not_reported(self):
        assert parse_matrix("field 5 1\n1 2\n3 4\n", F5)[1] is None

    @pytest.mark.parametrize(
        "text",
        ["1 2\n3\n", "1 x\n2 3\n", "", "field 6 1\n1\n", "field 5\n1\n", "field 2 2 1 0 1\n1\n"],
    )
    def test_bad_input(self, text):
        with pytest.raises(FormatError):
            parse_matrix(text, F5)

    def test_missing_field(self):
        with pytest.raises(FormatError, match="no field"):
            parse_matrix("1 2\n3 4\n")

    def test_extension_code_out_of_range(self):
        with pytest.raises(FormatError):
            parse_matrix("field 2 2\n1 4\n")


class TestFieldRecords:
    @pytest.mark.parametrize("field", [F5, F8, GF(3, 2)], ids=str)
    def test_round_trips(self, field):
        assert parse_field_header(field_header(field)) == field
        assert field_from_dict(json.loads(json.dumps(field_dict(field)))) == field

    def test_bad_dict(self):
        with pytest.raises(FormatError):
            field_from_dict({"p": 5})
        with pytest.raises(FormatError):
            parse_field_header("fields 5 1")


class TestArrays:
    def test_csv_round_trip(self, g5):
        arr = array_from_matrix(g5)
        text = format_array_csv(arr, F5)
        assert text.splitlines()[0] == "# field 5 1 0 1"
        back, f = parse_array_csv(text)
        assert back == arr and f == F5

    def test_symbols_inferred(self):
        arr, f = parse_array_csv("0,1\n1,0\n")
        assert arr.symbols == 2 and f is None

    def test_ragged(self):
        with pytest.raises(FormatError):
            parse_array_csv("0,1\n1\n")
        with pytest.raises(FormatError):
            parse_array_csv("0;1\n")


class TestDecompositionRecords:
    def test_six_leg(self, g5):
        d = factor(g5, BACKWARD)
        rec = json.loads(dumps(decomposition_to_dict(d)))
        assert rec["verified"] and rec["direction"] == BACKWARD
        back = decomposition_from_dict(rec)
        assert (back.A, back.B, back.C) == (d.A, d.B, d.C) and back.verify()

    def test_eight_leg(self):
        d = factor8(mat(*SOURCES8["gf7_second"]))
        rec = json.loads(dumps(decomposition_to_dict(d)))
        assert rec["identity_gates"] == ["23"]
        assert sorted(rec["gates"]) == ["12", "13", "14", "23", "24", "34"]
        assert decomposition_from_dict(rec).gates == d.gates

    def test_tampered_record_not_trusted(self, g5):
        rec = decomposition_to_dict(factor(g5))
        rec["A"][0][0] = 2
        assert rec["verified"] is True
        assert not decomposition_from_dict(rec).verify()

    def test_missing_gate(self):
        rec = decomposition_to_dict(factor8(mat(*SOURCES8["gf7_first"])))
        del rec["gates"]["34"]
        with pytest.raises(FormatError):
            decomposition_from_dict(rec)

    def test_garbage(self):
        with pytest.raises(FormatError):
            decomposition_from_dict({"field": {"p": 5, "n": 1}, "G": [[1]]})


class TestCircuitRecords:
    def test_tensor_network(self, g5):
        plan = tensor_network_circuit(factor(g5))
        rec = json.loads(dumps(circuit_to_dict(plan)))
        assert rec["D"] == 5 and rec["k"] == 6 and len(rec["gates"]) == 6
        assert circuit_from_dict(rec) == plan

    def test_graph_state(self, g5):
        plan = graph_state_circuit(block_incidence(g5))
        rec = circuit_to_dict(plan)
        assert {g["kind"] for g in rec["gates"]} == {"cz"}
        assert circuit_from_dict(rec) == plan

    def test_droppable_flag(self):
        rec = circuit_to_dict(tensor_network_circuit(factor8(mat(*SOURCES8["gf7_second"]))))
        assert [g["sites"] for g in rec["gates"] if g["droppable"]] == [[2, 3]]

    def test_bad(self):
        with pytest.raises(FormatError):
            circuit_from_dict({"D": 5})
