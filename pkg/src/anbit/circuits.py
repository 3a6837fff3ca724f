"""Combinational and feedback circuits built from gates, fan-in, and fan-out.

Fan-in adds two andits (Cartesian composition keeps it linear); fan-out
clones one. Feedback loops are resolved in steady state by assembling one
linear system over all wire signals and solving it directly; the closed-form
resolvent formulas for the canonical single- and two-anbit loops are also
provided and serve as oracles for the generic solver.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import AnbitState
from .errors import DimError, GraphError, LoopSingularError, ParamError
from .gates import GateMatrix

__all__ = [
    "FanInGate",
    "FanOutGate",
    "GateNode",
    "FanInNode",
    "FanOutNode",
    "SourceNode",
    "SinkNode",
    "CircuitGraph",
    "fan_in",
    "fan_out",
    "loop_equivalent",
    "two_anbit_loop",
    "solve",
    "fanin_tensor_nonlinearity_witness",
]

# A loop resolvent G = I - (loop product) counts as singular when
# |det G| <= LOOP_DET_TOL * ||G||_F^d (scale-invariant threshold).
LOOP_DET_TOL = 1e-12


def _nonzero_complex(value, name: str) -> complex:
    v = complex(value)
    if v == 0:
        raise ParamError(f"{name} must be nonzero")
    return v


def _positive_real(value, name: str) -> float:
    v = complex(value)
    if v.imag != 0.0:
        raise ParamError(f"{name} must be real")
    if not v.real > 0.0:
        raise ParamError(f"{name} must be positive")
    return float(v.real)


@dataclass(frozen=True, eq=False)
class FanInGate:
    """Anbit addition: (psi, phi) -> (n(psi+phi), m(psi-phi)), n, m complex nonzero."""

    n: complex = 1.0 + 0.0j
    m: complex = 1.0 + 0.0j

    def __post_init__(self):
        object.__setattr__(self, "n", _nonzero_complex(self.n, "n"))
        object.__setattr__(self, "m", _nonzero_complex(self.m, "m"))

    @property
    def matrix(self) -> np.ndarray:
        """4x4 block form [[nI, nI], [mI, -mI]] on (psi0, psi1, phi0, phi1)."""
        i2 = np.eye(2, dtype=complex)
        return np.block([[self.n * i2, self.n * i2], [self.m * i2, -self.m * i2]])


@dataclass(frozen=True, eq=False)
class FanOutGate:
    """Anbit cloning: psi -> (n psi, m psi) with positive real n, m.

    The ancilla input columns are free submatrices m12, m22 (defaults n I and
    -m I, the fan-in shape); with a null ancilla they never matter.
    """

    n: float = 1.0
    m: float = 1.0
    m12: np.ndarray | None = None
    m22: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "n", _positive_real(self.n, "n"))
        object.__setattr__(self, "m", _positive_real(self.m, "m"))
        for name, default in (("m12", self.n), ("m22", -self.m)):
            given = getattr(self, name)
            block = np.eye(2, dtype=complex) * default if given is None else np.array(given, dtype=complex)
            if block.shape != (2, 2):
                raise DimError(f"{name} must be 2x2")
            block.setflags(write=False)
            object.__setattr__(self, name, block)

    @property
    def is_default_ancilla(self) -> bool:
        i2 = np.eye(2, dtype=complex)
        return bool(np.array_equal(self.m12, self.n * i2) and np.array_equal(self.m22, -self.m * i2))

    @property
    def matrix(self) -> np.ndarray:
        i2 = np.eye(2, dtype=complex)
        return np.block([[self.n * i2, self.m12], [self.m * i2, self.m22]])


def fan_in(psi: AnbitState, phi: AnbitState, n=1.0, m=1.0) -> tuple[AnbitState, AnbitState]:
    """Sum and difference ports: (n(psi+phi), m(psi-phi)).

    Commutes as fan_in(psi, phi; n, m) = fan_in(phi, psi; n, -m), exactly.
    """
    if psi.dim != phi.dim:
        raise DimError(f"dims differ: {psi.dim} vs {phi.dim}")
    n = _nonzero_complex(n, "n")
    m = _nonzero_complex(m, "m")
    dt = psi.delta_t if psi.delta_t == phi.delta_t else None
    return (
        AnbitState(n * (psi.amps + phi.amps), dt),
        AnbitState(m * (psi.amps - phi.amps), dt),
    )


def fan_out(psi: AnbitState, n=1.0, m=1.0) -> tuple[AnbitState, AnbitState]:
    """Cloning ports (n psi, m psi); n = m = 1 is perfect cloning."""
    n = _positive_real(n, "n")
    m = _positive_real(m, "m")
    return AnbitState(n * psi.amps, psi.delta_t), AnbitState(m * psi.amps, psi.delta_t)


def _resolvent_solve(g: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    d = g.shape[0]
    fro = float(np.linalg.norm(g))
    if abs(np.linalg.det(g)) <= LOOP_DET_TOL * fro**d:
        raise LoopSingularError("loop resolvent is singular; no steady state")
    try:
        return np.linalg.solve(g, rhs)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - det guard hits first
        raise LoopSingularError(str(exc)) from exc


def loop_equivalent(m1: GateMatrix, m2: GateMatrix, n1=1.0, n2=1.0, m2_param=1.0) -> GateMatrix:
    """Combinational equivalent of the single-anbit feedback loop.

    The loop feeds m2_param times the fan-out copy of M1's output through M2
    back into the fan-in; the steady state gives
    M_eq = n1 n2 (I - n1 m2 M1 M2)^(-1) M1.
    """
    if m1.dim != m2.dim:
        raise DimError("loop gates must share a dimension")
    n1 = _nonzero_complex(n1, "n1")
    n2 = _positive_real(n2, "n2")
    m2_param = _positive_real(m2_param, "m2_param")
    d = m1.dim
    g = np.eye(d, dtype=complex) - n1 * m2_param * (m1.entries @ m2.entries)
    return GateMatrix(_resolvent_solve(g, n1 * n2 * m1.entries))


def two_anbit_loop(
    m1: GateMatrix,
    m2: GateMatrix,
    *,
    n1=1.0,
    n2=1.0,
    n3=1.0,
    n4=1.0,
    m1_param=1.0,
    m2_param=1.0,
    m3=1.0,
    m4=1.0,
) -> tuple[GateMatrix, GateMatrix, GateMatrix, GateMatrix]:
    """Operators (A1, A2, B1, B2) of the crossed two-anbit feedback loop.

    With k = n1 n2 m3 m4:
      A1 = n1 n3 (I - k M1 M2)^(-1) M1
      A2 = n1 n2 n3 m4 (I - k M1 M2)^(-1) M1 M2
      B1 = n1 n2 m3 n4 (I - k M2 M1)^(-1) M2 M1
      B2 = n2 n4 (I - k M2 M1)^(-1) M2
    m1_param/m2_param are the fan-in difference weights; they only scale
    garbage ports and never enter the four operators.
    """
    if m1.dim != m2.dim:
        raise DimError("loop gates must share a dimension")
    n1 = _nonzero_complex(n1, "n1")
    n2 = _nonzero_complex(n2, "n2")
    _nonzero_complex(m1_param, "m1_param")
    _nonzero_complex(m2_param, "m2_param")
    n3 = _positive_real(n3, "n3")
    n4 = _positive_real(n4, "n4")
    m3 = _positive_real(m3, "m3")
    m4 = _positive_real(m4, "m4")
    d = m1.dim
    eye = np.eye(d, dtype=complex)
    k = n1 * n2 * m3 * m4
    m1m2 = m1.entries @ m2.entries
    m2m1 = m2.entries @ m1.entries
    ga = eye - k * m1m2
    gb = eye - k * m2m1
    a1 = _resolvent_solve(ga, n1 * n3 * m1.entries)
    a2 = _resolvent_solve(ga, n1 * n2 * n3 * m4 * m1m2)
    b1 = _resolvent_solve(gb, n1 * n2 * m3 * n4 * m2m1)
    b2 = _resolvent_solve(gb, n2 * n4 * m2.entries)
    return GateMatrix(a1), GateMatrix(a2), GateMatrix(b1), GateMatrix(b2)


# --- circuit graphs ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GateNode:
    gate: GateMatrix


@dataclass(frozen=True, eq=False)
class FanInNode:
    fi: FanInGate = field(default_factory=FanInGate)


@dataclass(frozen=True, eq=False)
class FanOutNode:
    fo: FanOutGate = field(default_factory=FanOutGate)


@dataclass(frozen=True)
class SourceNode:
    pass


@dataclass(frozen=True)
class SinkNode:
    pass


# (inputs, outputs) port counts per node kind
_PORTS = {
    GateNode: (1, 1),
    FanInNode: (2, 2),
    FanOutNode: (2, 2),
    SourceNode: (0, 1),
    SinkNode: (1, 0),
}


def _port_counts(node) -> tuple[int, int]:
    return _PORTS[type(node)]


@dataclass(frozen=True, eq=False)
class CircuitGraph:
    """Directed signal graph; cycles are permitted and mean physical feedback.

    Edges run from an output port to an input port, written
    ((from_id, from_port), (to_id, to_port)). Cloning a signal requires an
    explicit fan-out node; wiring one output to two inputs is an error.
    Fan-in/fan-out second ports are garbage/ancilla and may stay unwired.
    """

    nodes: dict
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "nodes", dict(self.nodes))
        object.__setattr__(
            self,
            "edges",
            tuple(((str(a), int(pa)), (str(b), int(pb))) for (a, pa), (b, pb) in self.edges),
        )
        self.validate()

    def validate(self):
        in_seen: dict = {}
        out_seen: dict = {}
        for (src, sp), (dst, dp) in self.edges:
            for nid, port, table, io in ((src, sp, out_seen, 1), (dst, dp, in_seen, 0)):
                if nid not in self.nodes:
                    raise GraphError(f"edge references unknown node {nid!r}")
                counts = _port_counts(self.nodes[nid])
                if not 0 <= port < counts[io]:
                    raise GraphError(f"node {nid!r} has no port {port} on that side")
                key = (nid, port)
                if key in table:
                    raise GraphError(f"port {key} wired twice; cloning needs a fan-out node")
                table[key] = True
        for nid, node in self.nodes.items():
            n_in, n_out = _port_counts(node)
            for port in range(n_in):
                if (nid, port) in in_seen:
                    continue
                if isinstance(node, FanOutNode) and port == 1:
                    continue  # ancilla may stay unwired (implicit null)
                raise GraphError(f"input port ({nid!r}, {port}) is not fed")
            if isinstance(node, SourceNode) and (nid, 0) not in out_seen:
                raise GraphError(f"source {nid!r} drives nothing")

    def sources(self) -> list:
        return [nid for nid, n in self.nodes.items() if isinstance(n, SourceNode)]

    def sinks(self) -> list:
        return [nid for nid, n in self.nodes.items() if isinstance(n, SinkNode)]


def solve(graph: CircuitGraph, inputs: dict) -> dict:
    """Steady-state signals at every sink, keyed by sink node id.

    Assembles one block equation per edge (each edge is produced by exactly
    one output port) and solves the global system by direct elimination with
    partial pivoting. Works for combinational and feedback topologies alike.
    """
    sources = graph.sources()
    missing = [s for s in sources if s not in inputs]
    if missing:
        raise GraphError(f"sources without inputs: {missing}")
    extra = [s for s in inputs if s not in sources]
    if extra:
        raise GraphError(f"inputs for non-source nodes: {extra}")

    dims = {s: inputs[s].dim for s in sources}
    d = next(iter(dims.values()), 2)
    if any(v != d for v in dims.values()):
        raise DimError("all source states must share one dimension")
    for nid, node in graph.nodes.items():
        if isinstance(node, GateNode) and node.gate.dim != d:
            raise DimError(f"gate {nid!r} has dim {node.gate.dim}, circuit carries {d}")

    edges = graph.edges
    n_edges = len(edges)
    if n_edges == 0:
        return {}
    out_edge = {(src, sp): i for i, ((src, sp), _) in enumerate(edges)}
    in_edge = {(dst, dp): i for i, (_, (dst, dp)) in enumerate(edges)}

    size = n_edges * d
    a = np.zeros((size, size), dtype=complex)
    b = np.zeros(size, dtype=complex)
    eye = np.eye(d, dtype=complex)

    def block(i: int) -> slice:
        return slice(i * d, (i + 1) * d)

    for i, ((src, sp), _) in enumerate(edges):
        node = graph.nodes[src]
        a[block(i), block(i)] = eye
        if isinstance(node, SourceNode):
            b[block(i)] = inputs[src].amps
        elif isinstance(node, GateNode):
            j = in_edge[(src, 0)]
            a[block(i), block(j)] -= node.gate.entries
        elif isinstance(node, FanInNode):
            ja, jb = in_edge[(src, 0)], in_edge[(src, 1)]
            w = node.fi.n if sp == 0 else node.fi.m
            a[block(i), block(ja)] -= w * eye
            a[block(i), block(jb)] -= w * eye if sp == 0 else -w * eye
        elif isinstance(node, FanOutNode):
            j = in_edge[(src, 0)]
            gain = node.fo.n if sp == 0 else node.fo.m
            a[block(i), block(j)] -= gain * eye
            anc = in_edge.get((src, 1))
            if anc is not None:
                if d != 2:
                    raise DimError("fan-out ancilla submatrices are defined for dim 2")
                sub = node.fo.m12 if sp == 0 else node.fo.m22
                a[block(i), block(anc)] -= sub
        else:  # SinkNode has no output ports, cannot produce an edge
            raise GraphError(f"sink {src!r} cannot drive an edge")

    sigma = np.linalg.svd(a, compute_uv=False)
    if sigma[-1] <= 1e-12 * sigma[0]:
        raise LoopSingularError("circuit system is singular; feedback has no steady state")
    x = np.linalg.solve(a, b)

    dts = {inputs[s].delta_t for s in sources}
    dt = dts.pop() if len(dts) == 1 else None
    result = {}
    for nid in graph.sinks():
        i = in_edge.get((nid, 0))
        if i is None:
            raise GraphError(f"sink {nid!r} has no incoming edge")
        result[nid] = AnbitState(x[block(i)], dt)
    return result


def fanin_tensor_nonlinearity_witness(psi: AnbitState, phi: AnbitState):
    """Two outputs a tensor-product fan-in would have to reconcile, and cannot.

    Returns (tensor_route, matrix_route): the direct tensor evaluation
    kron(psi+phi, psi-phi) versus the apparent matrix diag(0,-1,-1,0) applied
    to kron(psi, phi). They differ for generic inputs, which is exactly why
    fan-in is defined through the Cartesian product instead.
    """
    if psi.dim != 2 or phi.dim != 2:
        raise DimError("witness is defined for dim 2")
    tensor_route = np.kron(psi.amps + phi.amps, psi.amps - phi.amps)
    apparent = np.diag([0.0, -1.0, -1.0, 0.0]).astype(complex)
    matrix_route = apparent @ np.kron(psi.amps, phi.amps)
    return tensor_route, matrix_route
