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
    fan_in,
    fan_out,
    fanin_tensor_nonlinearity_witness,
    identity_gate,
    loop_equivalent,
    null_state,
    solve,
    two_anbit_loop,
)
from anbit.errors import DimError, GraphError, LoopSingularError, ParamError

from conftest import random_matrix, random_state_vec


def test_fanin_gate_matrix_blocks():
    g = FanInGate(2.0, 3.0j)
    m = g.matrix
    assert m.shape == (4, 4)
    assert np.array_equal(m[:2, :2], 2.0 * np.eye(2))
    assert np.array_equal(m[:2, 2:], 2.0 * np.eye(2))
    assert np.array_equal(m[2:, :2], 3.0j * np.eye(2))
    assert np.array_equal(m[2:, 2:], -3.0j * np.eye(2))


def test_fanin_gate_rejects_zero_params():
    with pytest.raises(ParamError):
        FanInGate(0.0, 1.0)
    with pytest.raises(ParamError):
        FanInGate(1.0, 0.0)


def test_fanin_determinant_law(rng):
    # det [[nI, nI], [mI, -mI]] = 4 n^2 m^2 for commuting 2x2 blocks
    for _ in range(50):
        n = complex(rng.normal(), rng.normal())
        m = complex(rng.normal(), rng.normal())
        if abs(n) < 1e-3 or abs(m) < 1e-3:
            continue
        det = np.linalg.det(FanInGate(n, m).matrix)
        assert det == pytest.approx(4.0 * n**2 * m**2, abs=1e-10)


def test_fanin_unitary_exactly_on_boundary(rng):
    for _ in range(20):
        n = np.exp(1j * rng.uniform(0, 2 * np.pi)) / np.sqrt(2.0)
        m = np.exp(1j * rng.uniform(0, 2 * np.pi)) / np.sqrt(2.0)
        g = FanInGate(n, m).matrix
        assert np.max(np.abs(g.conj().T @ g - np.eye(4))) < 1e-15
    # off the boundary the gram matrix departs from identity
    g = FanInGate(0.8, 1.0 / np.sqrt(2.0)).matrix
    assert np.max(np.abs(g.conj().T @ g - np.eye(4))) > 0.1


def test_fan_in_frozen():
    s, d = fan_in(AnbitState([1.0, 0.0]), AnbitState([0.0, 1.0]))
    assert np.array_equal(s.amps, [1.0, 1.0])
    assert np.array_equal(d.amps, [1.0, -1.0])


def test_fan_in_commutativity_exact(rng):
    for _ in range(50):
        a = AnbitState(random_state_vec(rng))
        b = AnbitState(random_state_vec(rng))
        n = complex(rng.normal(), rng.normal())
        m = complex(rng.normal(), rng.normal())
        s1, d1 = fan_in(a, b, n, m)
        s2, d2 = fan_in(b, a, n, -m)
        assert np.array_equal(s1.amps, s2.amps)
        assert np.array_equal(d1.amps, d2.amps)


def test_fan_out_is_fan_in_with_null_ancilla(rng):
    a = AnbitState(random_state_vec(rng))
    c1, c2 = fan_out(a, 1.5, 0.5)
    s, d = fan_in(a, null_state(2), 1.5, 0.5)
    assert np.array_equal(c1.amps, s.amps)
    assert np.array_equal(c2.amps, d.amps)


def test_fan_out_rejects_nonpositive():
    a = AnbitState([1.0, 0.0])
    with pytest.raises(ParamError):
        fan_out(a, -1.0, 1.0)
    with pytest.raises(ParamError):
        fan_out(a, 1.0, 0.0)


def test_fan_in_delta_t_rules():
    a = AnbitState([1.0, 0.0], delta_t=2.0)
    b = AnbitState([0.0, 1.0], delta_t=2.0)
    s, _ = fan_in(a, b)
    assert s.delta_t == 2.0
    c = AnbitState([0.0, 1.0], delta_t=3.0)
    s, _ = fan_in(a, c)
    assert s.delta_t is None


def test_fan_in_dim_mismatch():
    with pytest.raises(DimError):
        fan_in(AnbitState([1.0]), AnbitState([1.0, 0.0]))


def test_loop_equivalent_worked_case():
    half = GateMatrix(0.5 * np.eye(2))
    eq = loop_equivalent(half, half)
    assert np.array_equal(eq.entries, (2.0 / 3.0) * np.eye(2))


def test_loop_equivalent_matches_inverse_formula(rng):
    for _ in range(50):
        m1 = GateMatrix(random_matrix(rng, 0.4))
        m2 = GateMatrix(random_matrix(rng, 0.4))
        n1, n2, mp = 0.9 + 0.2j, 1.3, 0.8
        eq = loop_equivalent(m1, m2, n1, n2, mp)
        g = np.eye(2) - n1 * mp * (m1.entries @ m2.entries)
        want = n1 * n2 * np.linalg.inv(g) @ m1.entries
        assert np.max(np.abs(eq.entries - want)) < 1e-12


def test_loop_equivalent_singular():
    with pytest.raises(LoopSingularError):
        loop_equivalent(identity_gate(), identity_gate())


def loop_graph(m1, m2, n1=1.0, n2=1.0, m1_param=1.0, m2_param=1.0):
    """Single-anbit loop: fan-in, gate, fan-out, with the copy fed back."""
    nodes = {
        "src": SourceNode(),
        "fi": FanInNode(FanInGate(n1, m1_param)),
        "g1": GateNode(m1),
        "fo": FanOutNode(FanOutGate(n2, m2_param)),
        "g2": GateNode(m2),
        "out": SinkNode(),
        "diff": SinkNode(),
    }
    edges = (
        (("src", 0), ("fi", 0)),
        (("fi", 0), ("g1", 0)),
        (("g1", 0), ("fo", 0)),
        (("fo", 0), ("out", 0)),
        (("fo", 1), ("g2", 0)),
        (("g2", 0), ("fi", 1)),
        (("fi", 1), ("diff", 0)),
    )
    return CircuitGraph(nodes, edges)


def test_solve_loop_matches_loop_equivalent(rng):
    for _ in range(30):
        m1 = GateMatrix(random_matrix(rng, 0.4))
        m2 = GateMatrix(random_matrix(rng, 0.4))
        g = loop_graph(m1, m2, n1=0.9, n2=1.1, m2_param=0.7)
        psi = AnbitState(random_state_vec(rng))
        out = solve(g, {"src": psi})["out"]
        want = loop_equivalent(m1, m2, 0.9, 1.1, 0.7).entries @ psi.amps
        assert np.max(np.abs(out.amps - want)) < 1e-12


def test_solve_combinational_chain(rng):
    m1 = GateMatrix(random_matrix(rng))
    m2 = GateMatrix(random_matrix(rng))
    nodes = {
        "s": SourceNode(),
        "a": GateNode(m1),
        "b": GateNode(m2),
        "t": SinkNode(),
    }
    edges = ((("s", 0), ("a", 0)), (("a", 0), ("b", 0)), (("b", 0), ("t", 0)))
    g = CircuitGraph(nodes, edges)
    psi = AnbitState(random_state_vec(rng))
    out = solve(g, {"s": psi})["t"]
    assert np.allclose(out.amps, m2.entries @ m1.entries @ psi.amps, atol=1e-13)


def test_solve_singular_loop_raises():
    g = loop_graph(identity_gate(), identity_gate())
    with pytest.raises(LoopSingularError):
        solve(g, {"src": AnbitState([1.0, 0.0])})


def test_solve_missing_input():
    g = loop_graph(identity_gate(), GateMatrix(0.5 * np.eye(2)))
    with pytest.raises(GraphError):
        solve(g, {})


def test_solve_delta_t_propagation(rng):
    m = GateMatrix(random_matrix(rng))
    nodes = {"s": SourceNode(), "a": GateNode(m), "t": SinkNode()}
    edges = ((("s", 0), ("a", 0)), (("a", 0), ("t", 0)))
    g = CircuitGraph(nodes, edges)
    out = solve(g, {"s": AnbitState([1.0, 0.0], delta_t=1.5)})["t"]
    assert out.delta_t == 1.5


def test_two_anbit_loop_matches_sequential_graph(rng):
    m1 = GateMatrix(random_matrix(rng, 0.4))
    m2 = GateMatrix(random_matrix(rng, 0.4))
    n1, n2 = 0.8 + 0.1j, 1.1 - 0.2j
    n3, n4, m3, m4 = 0.9, 1.2, 0.7, 0.6
    a1, a2, b1, b2 = two_anbit_loop(
        m1, m2, n1=n1, n2=n2, n3=n3, n4=n4, m3=m3, m4=m4
    )
    nodes = {
        "s1": SourceNode(),
        "s2": SourceNode(),
        "fia": FanInNode(FanInGate(n1, 1.0)),
        "g1": GateNode(m1),
        "foa": FanOutNode(FanOutGate(n3, m3)),
        "fib": FanInNode(FanInGate(n2, 1.0)),
        "g2": GateNode(m2),
        "fob": FanOutNode(FanOutGate(n4, m4)),
        "outa": SinkNode(),
        "outb": SinkNode(),
    }
    edges = (
        (("s1", 0), ("fia", 0)),
        (("fob", 1), ("fia", 1)),
        (("fia", 0), ("g1", 0)),
        (("g1", 0), ("foa", 0)),
        (("foa", 0), ("outa", 0)),
        (("foa", 1), ("fib", 1)),
        (("s2", 0), ("fib", 0)),
        (("fib", 0), ("g2", 0)),
        (("g2", 0), ("fob", 0)),
        (("fob", 0), ("outb", 0)),
    )
    g = CircuitGraph(nodes, edges)
    p1 = AnbitState(random_state_vec(rng))
    p2 = AnbitState(random_state_vec(rng))
    res = solve(g, {"s1": p1, "s2": p2})
    want_a = a1.entries @ p1.amps + a2.entries @ p2.amps
    want_b = b1.entries @ p1.amps + b2.entries @ p2.amps
    assert np.max(np.abs(res["outa"].amps - want_a)) < 1e-12
    assert np.max(np.abs(res["outb"].amps - want_b)) < 1e-12


def test_two_anbit_loop_param_validation():
    m = GateMatrix(0.5 * np.eye(2))
    with pytest.raises(ParamError):
        two_anbit_loop(m, m, n1=0.0)
    with pytest.raises(ParamError):
        two_anbit_loop(m, m, n3=-1.0)


def test_graph_validation_unknown_node():
    nodes = {"s": SourceNode(), "t": SinkNode()}
    with pytest.raises(GraphError):
        CircuitGraph(nodes, ((("s", 0), ("ghost", 0)),))


def test_graph_validation_double_wired_port():
    nodes = {"s": SourceNode(), "a": GateNode(identity_gate()), "t": SinkNode()}
    edges = ((("s", 0), ("a", 0)), (("s", 0), ("t", 0)))
    with pytest.raises(GraphError):
        CircuitGraph(nodes, edges)


def test_graph_validation_unfed_input():
    nodes = {"s": SourceNode(), "a": GateNode(identity_gate()), "t": SinkNode()}
    edges = ((("s", 0), ("a", 0)),)  # sink input never fed
    with pytest.raises(GraphError):
        CircuitGraph(nodes, edges)


def test_graph_validation_port_range():
    nodes = {"s": SourceNode(), "t": SinkNode()}
    with pytest.raises(GraphError):
        CircuitGraph(nodes, ((("s", 3), ("t", 0)),))


def test_graph_fanout_ancilla_may_dangle(rng):
    # unwired ancilla input acts as a null state
    m = GateMatrix(random_matrix(rng))
    nodes = {
        "s": SourceNode(),
        "fo": FanOutNode(FanOutGate(2.0, 0.5)),
        "g": GateNode(m),
        "t1": SinkNode(),
        "t2": SinkNode(),
    }
    edges = (
        (("s", 0), ("fo", 0)),
        (("fo", 0), ("g", 0)),
        (("g", 0), ("t1", 0)),
        (("fo", 1), ("t2", 0)),
    )
    g = CircuitGraph(nodes, edges)
    psi = AnbitState(random_state_vec(rng))
    res = solve(g, {"s": psi})
    assert np.allclose(res["t1"].amps, 2.0 * m.entries @ psi.amps, atol=1e-13)
    assert np.allclose(res["t2"].amps, 0.5 * psi.amps, atol=1e-13)


def test_witness_frozen():
    t, m = fanin_tensor_nonlinearity_witness(
        AnbitState([1.0, 0.0]), AnbitState([0.0, 1.0])
    )
    assert np.array_equal(t, [1.0, -1.0, 1.0, -1.0])
    assert np.array_equal(m, [0.0, -1.0, 0.0, 0.0])


def test_witness_differs_generically(rng):
    for _ in range(50):
        a = AnbitState(random_state_vec(rng))
        b = AnbitState(random_state_vec(rng))
        t, m = fanin_tensor_nonlinearity_witness(a, b)
        assert np.max(np.abs(t - m)) > 1e-6
