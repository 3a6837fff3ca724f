import json

import numpy as np
import pytest

from anbit import (
    AnbitState,
    CircuitGraph,
    FanInGate,
    FanInNode,
    FanOutGate,
    FanOutNode,
    GateMatrix,
    GateNode,
    SinkNode,
    SourceNode,
    controlled,
    lower_controlled_electrooptic,
    lower_fanin,
    lower_unitary_zxz,
    measure_coherent,
    measure_differential,
    pauli,
    solve,
)
from anbit.serialization import (
    circuit_from_obj,
    circuit_to_obj,
    dumps,
    fmt_float,
    gate_from_obj,
    gate_to_obj,
    netlist_from_text,
    netlist_to_text,
    record_to_obj,
    rotation_spec_from_obj,
    state_from_obj,
    state_to_obj,
)

from conftest import random_matrix, random_state_vec, random_unitary


def test_fmt_float_round_trips(rng):
    specials = [0.0, -0.0, 1.0, -1.0, np.pi, 1e-300, 1e300, 2.0 / 3.0]
    draws = list(rng.normal(size=500)) + list(rng.normal(size=100) * 1e150)
    for x in specials + draws:
        assert float(fmt_float(float(x))) == float(x)


def test_fmt_float_17_digits():
    assert fmt_float(np.pi) == "3.1415926535897931"
    assert fmt_float(0.1) == "0.10000000000000001"


def test_dumps_is_json(rng):
    obj = {"a": [1, 2.5, None, True, "x"], "b": {"c": [[1.0, -2.0]]}}
    parsed = json.loads(dumps(obj))
    assert parsed == obj


def test_dumps_rejects_unknown_types():
    with pytest.raises(ValueError):
        dumps({"x": object()})


def test_state_round_trip(rng):
    for dt in (None, 0.0, 1.25):
        s = AnbitState(random_state_vec(rng, 3), delta_t=dt)
        back = state_from_obj(json.loads(dumps(state_to_obj(s))))
        assert np.array_equal(back.amps, s.amps)
        assert back.delta_t == s.delta_t


def test_state_obj_shape():
    obj = state_to_obj(AnbitState([1.0, 2.0j]))
    assert obj["dim"] == 2
    assert obj["amps"] == [[1.0, 0.0], [0.0, 2.0]]
    assert obj["delta_t"] is None


def test_state_dim_mismatch_rejected():
    with pytest.raises(ValueError):
        state_from_obj({"dim": 3, "amps": [[1.0, 0.0]], "delta_t": None})


def test_gate_round_trip(rng):
    g = GateMatrix(random_matrix(rng))
    back = gate_from_obj(json.loads(dumps(gate_to_obj(g))))
    assert np.array_equal(back.entries, g.entries)


def test_rotation_spec_from_obj():
    spec = rotation_spec_from_obj(
        {"axis": [0.0, 0.0, 1.0], "angle": 0.5, "global_phase": 0.25}
    )
    assert spec.axis == (0.0, 0.0, 1.0)
    assert spec.angle == 0.5
    assert spec.global_phase == 0.25
    # global_phase defaults to zero
    spec = rotation_spec_from_obj({"axis": [1.0, 0.0, 0.0], "angle": 1.0})
    assert spec.global_phase == 0.0


def test_record_to_obj_phase_presence():
    s = AnbitState(np.array([1.0, 1.0j]) / np.sqrt(2.0))
    obj = record_to_obj(measure_differential(s, 1.0))
    assert obj["kind"] == "differential"
    assert "phase" in obj
    assert obj["edf"] == 3
    obj = record_to_obj(measure_coherent(s, 1.0))
    assert "phase" not in obj
    assert obj["edf"] == 4
    assert len(obj["photocurrents"]) == 4


def sample_graph(rng):
    nodes = {
        "in": SourceNode(),
        "fo": FanOutNode(FanOutGate(1.0, 1.0)),
        "g": GateNode(GateMatrix(random_unitary(rng))),
        "fi": FanInNode(FanInGate(0.5 + 0.1j, 0.5)),
        "out": SinkNode(),
        "junk": SinkNode(),
    }
    edges = (
        (("in", 0), ("fo", 0)),
        (("fo", 0), ("g", 0)),
        (("fo", 1), ("fi", 1)),
        (("g", 0), ("fi", 0)),
        (("fi", 0), ("out", 0)),
        (("fi", 1), ("junk", 0)),
    )
    return CircuitGraph(nodes, edges)


def test_circuit_round_trip_solves_identically(rng):
    g = sample_graph(rng)
    back = circuit_from_obj(json.loads(dumps(circuit_to_obj(g))))
    psi = AnbitState(random_state_vec(rng))
    r1 = solve(g, {"in": psi})
    r2 = solve(back, {"in": psi})
    assert set(r1) == set(r2)
    for k in r1:
        assert np.array_equal(r1[k].amps, r2[k].amps)


def test_circuit_obj_declares_sources_and_sinks(rng):
    obj = circuit_to_obj(sample_graph(rng))
    assert obj["sources"] == ["in"]
    assert sorted(obj["sinks"]) == ["junk", "out"]
    kinds = {n["id"]: n["kind"] for n in obj["nodes"]}
    assert kinds["fo"] == "fanout" and kinds["fi"] == "fanin"


def test_circuit_obj_source_sink_consistency(rng):
    obj = circuit_to_obj(sample_graph(rng))
    obj["sources"] = ["bogus"]
    with pytest.raises(ValueError):
        circuit_from_obj(obj)


def test_netlist_text_round_trip(rng):
    for nl in (
        lower_unitary_zxz(GateMatrix(random_unitary(rng))),
        lower_fanin(FanInGate(1.0, 0.5)),
    ):
        text = netlist_to_text(nl)
        back = netlist_from_text(text)
        assert netlist_to_text(back) == text
        assert np.array_equal(back.forward_transfer(), nl.forward_transfer())


def test_netlist_text_headers(rng):
    nl = lower_unitary_zxz(GateMatrix(random_unitary(rng)))
    lines = netlist_to_text(nl).splitlines()
    assert lines[0] == "WIRES 2"
    assert lines[1] == "IN 0 1"
    assert lines[2] == "OUT 0 1"
    assert len([l for l in lines if l.startswith("PS ")]) == 6
    assert len([l for l in lines if l.startswith("DC ")]) == 1


def test_netlist_text_controlled_round_trip():
    nl = lower_controlled_electrooptic(controlled(pauli(1), 1), AnbitState([0.0, 1.0]))
    text = netlist_to_text(nl)
    assert any(l.startswith("ACTIVE ") for l in text.splitlines())
    assert any(l.startswith("CTRL ") for l in text.splitlines())
    back = netlist_from_text(text)
    assert back.active_setting == nl.active_setting
    assert back.control_map == nl.control_map
    assert np.array_equal(back.forward_transfer("*"), nl.forward_transfer("*"))


def test_netlist_text_parse_errors():
    with pytest.raises(ValueError, match="WIRES"):
        netlist_from_text("IN 0\nOUT 0\n")
    with pytest.raises(ValueError, match="line 4"):
        netlist_from_text("WIRES 2\nIN 0 1\nOUT 0 1\nBOGUS 0 0.5\n")


def test_netlist_text_skips_comments_and_blanks():
    text = "WIRES 1\n# a comment\n\nIN 0\nOUT 0\nPS 0 0.5\n"
    nl = netlist_from_text(text)
    assert len(nl.devices) == 1
    assert nl.devices[0].value == 0.5
