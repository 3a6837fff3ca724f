"""Lowering of gates and fan-in blocks to photonic device netlists.

A netlist is an ordered list of device primitives (phase shifters, tunable
couplers, fixed 50:50 splitters, attenuators, amplifiers) acting in place on
numbered wires; two wires carry one anbit. Forward transfer is the ordered
device product reduced to the declared ports; backward transfer traverses the
devices in reverse with each device's explicit backward matrix, which for the
reciprocal models here is the transpose. Forward-backward symmetry compares
the two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .algebra import AnbitState, CompositeState
from .circuits import CircuitGraph, FanInGate, FanInNode, FanOutNode, GateNode, SinkNode, SourceNode
from .decompositions import MostowFactors, euler_zxz, euler_zyz, svd2, pauli_decompose
from .errors import ControlEncodingError, DimError, GraphError, ParamError
from .gates import ControlledGate, GateClass, GateMatrix, identity_gate

__all__ = [
    "PhaseShifter",
    "TunableCoupler",
    "Splitter5050",
    "Attenuator",
    "Amplifier",
    "Resonator",
    "Netlist",
    "FbSymmetry",
    "gain_device",
    "lower_unitary_zxz",
    "lower_unitary_zyz_fixed",
    "lower_general_svd",
    "lower_mostow",
    "lower_pauli_mgate",
    "lower_fanin",
    "lower_controlled_electrooptic",
    "lower_circuit",
    "scattering_matrix",
    "check_fb_symmetry",
]

FB_TOL = 1e-10

_HALF_PI = 0.5 * math.pi
_INV_SQRT2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class PhaseShifter:
    """Single-wire phase e^(i phi)."""

    wire: int
    phi: float
    control_binding: str | None = None

    @property
    def wires(self):
        return (self.wire,)

    @property
    def value(self):
        return self.phi

    def matrix(self, value=None):
        phi = self.phi if value is None else value
        return np.array([[np.exp(1j * phi)]], dtype=complex)

    def backward_matrix(self, value=None):
        # same phase seen in either direction
        return self.matrix(value)


@dataclass(frozen=True)
class TunableCoupler:
    """Two-wire coupler with mode-coupling angle alpha2 (coupling kL = alpha2/2)."""

    wire_a: int
    wire_b: int
    alpha2: float
    control_binding: str | None = None

    @property
    def wires(self):
        return (self.wire_a, self.wire_b)

    @property
    def value(self):
        return self.alpha2

    def matrix(self, value=None):
        a2 = self.alpha2 if value is None else value
        c, s = np.cos(0.5 * a2), np.sin(0.5 * a2)
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)

    def backward_matrix(self, value=None):
        return self.matrix(value).T


@dataclass(frozen=True)
class Splitter5050:
    """Fixed 50:50 splitter (1/sqrt2) [[1, i], [i, 1]]; no tunable parameter."""

    wire_a: int
    wire_b: int
    control_binding: str | None = None

    @property
    def wires(self):
        return (self.wire_a, self.wire_b)

    @property
    def value(self):
        return None

    def matrix(self, value=None):
        return _INV_SQRT2 * np.array([[1.0, 1.0j], [1.0j, 1.0]], dtype=complex)

    def backward_matrix(self, value=None):
        return self.matrix().T


@dataclass(frozen=True)
class Attenuator:
    """Single-wire gain in [0, 1]; gain 0 is the sentinel that blocks the wire."""

    wire: int
    gain: float
    control_binding: str | None = None

    def __post_init__(self):
        if not 0.0 <= self.gain <= 1.0:
            raise ParamError(f"attenuator gain must be in [0, 1], got {self.gain}")

    @property
    def wires(self):
        return (self.wire,)

    @property
    def value(self):
        return self.gain

    def matrix(self, value=None):
        g = self.gain if value is None else value
        return np.array([[g]], dtype=complex)

    def backward_matrix(self, value=None):
        return self.matrix(value)


@dataclass(frozen=True)
class Amplifier:
    """Single-wire gain > 1."""

    wire: int
    gain: float
    control_binding: str | None = None

    def __post_init__(self):
        if not self.gain > 1.0:
            raise ParamError(f"amplifier gain must exceed 1, got {self.gain}")

    @property
    def wires(self):
        return (self.wire,)

    @property
    def value(self):
        return self.gain

    def matrix(self, value=None):
        g = self.gain if value is None else value
        return np.array([[g]], dtype=complex)

    def backward_matrix(self, value=None):
        return self.matrix(value)


@dataclass(frozen=True)
class Resonator:
    """All-pass ring, part of the device vocabulary; no lowering emits one."""

    wire: int
    phi: float
    control_binding: str | None = None

    @property
    def wires(self):
        return (self.wire,)

    @property
    def value(self):
        return self.phi

    def matrix(self, value=None):
        phi = self.phi if value is None else value
        return np.array([[np.exp(1j * phi)]], dtype=complex)

    def backward_matrix(self, value=None):
        return self.matrix(value)


def gain_device(wire: int, gain: float, binding: str | None = None):
    """Attenuator for gain <= 1 (boundary included), amplifier above."""
    if gain < 0.0:
        raise ParamError("gain device needs a non-negative value; fold signs into a phase")
    if gain > 1.0:
        return Amplifier(wire, gain, binding)
    return Attenuator(wire, gain, binding)


class FbSymmetry(Enum):
    SYMMETRIC = "Symmetric"
    ASYMMETRIC = "Asymmetric"


@dataclass(frozen=True, eq=False)
class Netlist:
    """Ordered device list on `wires` wires with declared input/output ports.

    control_map, when present, maps a control word (or the fallback "*") to
    {device index: parameter value}; active_setting names the key whose values
    the emitted devices carry.
    """

    wires: int
    devices: tuple
    input_ports: tuple[int, ...]
    output_ports: tuple[int, ...]
    control_map: dict | None = None
    active_setting: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "devices", tuple(self.devices))
        object.__setattr__(self, "input_ports", tuple(int(w) for w in self.input_ports))
        object.__setattr__(self, "output_ports", tuple(int(w) for w in self.output_ports))
        for dev in self.devices:
            for w in dev.wires:
                if not 0 <= w < self.wires:
                    raise ParamError(f"device wire {w} outside 0..{self.wires - 1}")

    def _overrides(self, setting: str | None) -> dict:
        if setting is None:
            return {}
        if not self.control_map:
            raise ParamError("netlist has no control map")
        if setting in self.control_map:
            return self.control_map[setting]
        return self.control_map["*"]

    def _embed(self, dev, local: np.ndarray) -> np.ndarray:
        full = np.eye(self.wires, dtype=complex)
        ws = dev.wires
        for i, wi in enumerate(ws):
            for j, wj in enumerate(ws):
                full[wi, wj] = local[i, j]
        return full

    def full_forward(self, setting: str | None = None) -> np.ndarray:
        over = self._overrides(setting)
        full = np.eye(self.wires, dtype=complex)
        for idx, dev in enumerate(self.devices):
            full = self._embed(dev, dev.matrix(over.get(idx))) @ full
        return full

    def full_backward(self, setting: str | None = None) -> np.ndarray:
        over = self._overrides(setting)
        full = np.eye(self.wires, dtype=complex)
        for idx in range(len(self.devices) - 1, -1, -1):
            dev = self.devices[idx]
            full = self._embed(dev, dev.backward_matrix(over.get(idx))) @ full
        return full

    def forward_transfer(self, setting: str | None = None) -> np.ndarray:
        """Transfer matrix from input ports to output ports, indexed [out, in]."""
        full = self.full_forward(setting)
        return full[np.ix_(self.output_ports, self.input_ports)]

    def backward_transfer(self, setting: str | None = None) -> np.ndarray:
        """Reverse-direction transfer from output ports to input ports, [in, out]."""
        full = self.full_backward(setting)
        return full[np.ix_(self.input_ports, self.output_ports)]


def check_fb_symmetry(nl: Netlist) -> FbSymmetry:
    """Symmetric when forward and backward transfer matrices coincide."""
    tf = nl.forward_transfer()
    tb = nl.backward_transfer()
    if tf.shape != tb.shape:
        return FbSymmetry.ASYMMETRIC
    scale = max(1.0, float(np.max(np.abs(tf))))
    if float(np.max(np.abs(tb - tf))) <= FB_TOL * scale:
        return FbSymmetry.SYMMETRIC
    return FbSymmetry.ASYMMETRIC


def scattering_matrix(nl: Netlist, reciprocal: bool = True) -> np.ndarray:
    """Port scattering matrix [[0, T_b], [T_f, 0]] of a non-reflective netlist.

    With the reciprocal flag the backward block is taken as T_f^T directly;
    otherwise it is computed by the reversed-stage traversal, which agrees
    for the reciprocal device models shipped here.
    """
    tf = nl.forward_transfer()
    tb = tf.T if reciprocal else nl.backward_transfer()
    n_in, n_out = len(nl.input_ports), len(nl.output_ports)
    s = np.zeros((n_in + n_out, n_in + n_out), dtype=complex)
    s[:n_in, n_in:] = tb
    s[n_in:, :n_in] = tf
    return s


# --- stage emitters ---------------------------------------------------------

def _rz_pair(devices: list, w0: int, w1: int, theta: float):
    # R_z(theta) = diag(e^(-i theta/2), e^(i theta/2)); + 0.0 avoids -0.0 params
    devices.append(PhaseShifter(w0, -0.5 * theta + 0.0))
    devices.append(PhaseShifter(w1, 0.5 * theta + 0.0))


def _global_phase_pair(devices: list, w0: int, w1: int, delta: float):
    devices.append(PhaseShifter(w0, delta))
    devices.append(PhaseShifter(w1, delta))


def _signed_gain(devices: list, wire: int, value: float):
    # negative diagonal entries are a pi phase shift plus a positive gain
    if value < 0.0:
        devices.append(PhaseShifter(wire, math.pi))
        value = -value
    devices.append(gain_device(wire, value))


def _zxz_devices(u: GateMatrix, w0: int = 0, w1: int = 1) -> list:
    f = euler_zxz(u)
    devices: list = []
    _rz_pair(devices, w0, w1, f.alpha1)
    devices.append(TunableCoupler(w0, w1, f.alpha2))
    _rz_pair(devices, w0, w1, f.alpha3)
    _global_phase_pair(devices, w0, w1, f.delta)
    return devices


def lower_unitary_zxz(u: GateMatrix) -> Netlist:
    """Euler-angle architecture: two phase pairs around one tunable coupler.

    Always emits the full seven-device template (identity becomes all-zero
    parameters) so controlled variants can swap parameter sets in place.
    """
    return Netlist(2, _zxz_devices(u), (0, 1), (0, 1))


def lower_unitary_zyz_fixed(u: GateMatrix) -> Netlist:
    """Fixed-coupler architecture: 50:50 splitters and phase shifters only.

    The middle rotation uses the interferometer identity
    PS1(pi) . BS . diag(e^(i a2/2), e^(-i(a2/2 + pi))) . BS = R_y(a2),
    costing four extra devices over the tunable-coupler form.
    """
    f = euler_zyz(u)
    devices: list = []
    _rz_pair(devices, 0, 1, f.alpha1)
    devices.append(Splitter5050(0, 1))
    devices.append(PhaseShifter(0, 0.5 * f.alpha2))
    devices.append(PhaseShifter(1, -0.5 * f.alpha2 - math.pi))
    devices.append(Splitter5050(0, 1))
    devices.append(PhaseShifter(1, math.pi))
    _rz_pair(devices, 0, 1, f.alpha3)
    _global_phase_pair(devices, 0, 1, f.delta)
    return Netlist(2, devices, (0, 1), (0, 1))


def lower_general_svd(m: GateMatrix) -> Netlist:
    """Unitary-diagonal-unitary architecture accepting any 2x2 gate."""
    f = svd2(m)
    devices = _zxz_devices(f.u1)
    devices.append(gain_device(0, f.d1))
    devices.append(gain_device(1, f.d2))
    devices.extend(_zxz_devices(f.u2))
    return Netlist(2, devices, (0, 1), (0, 1))


def lower_mostow(f: MostowFactors) -> Netlist:
    """Five-stage architecture: three unitary blocks around two diagonal stages.

    Application order is the reverse of the factor product order. The first
    diagonal stage (lam2) may carry negative entries in general, realized as a
    pi phase shift plus a positive gain; lam1 = (e^-a, e^a) is always positive.
    """
    u_last, lam1_stage, u_mid, lam2_stage, u_first = f.expanded
    del lam1_stage, lam2_stage  # device values come from the scalar fields
    devices = _zxz_devices(u_first)
    for wire, value in enumerate(f.lam2):
        _signed_gain(devices, wire, value)
    devices.extend(_zxz_devices(u_mid))
    for wire, value in enumerate(f.lam1):
        _signed_gain(devices, wire, value)
    devices.extend(_zxz_devices(u_last))
    return Netlist(2, devices, (0, 1), (0, 1))


def _scale_pair(devices: list, w0: int, w1: int, z: complex):
    # multiply both wires of a branch by the complex scalar z
    ph = float(np.angle(z))
    g = abs(z)
    for w in (w0, w1):
        devices.append(PhaseShifter(w, ph))
        devices.append(gain_device(w, g))


def _sum_block(devices: list, a: int, b: int, n: complex = 1.0, m: complex = 1.0):
    """Fan-in stage on wires (a, b): transfer [[n, n], [m, -m]].

    Factorized as A.B.C with C a -pi/2 phase on b, B the 50:50 splitter, and
    A the diagonal (sqrt2 n, -i sqrt2 m) realized as phase plus gain per wire.
    """
    n = complex(n)
    m = complex(m)
    devices.append(PhaseShifter(b, -_HALF_PI))
    devices.append(Splitter5050(a, b))
    root2 = math.sqrt(2.0)
    devices.append(PhaseShifter(a, float(np.angle(n))))
    devices.append(gain_device(a, root2 * abs(n)))
    devices.append(PhaseShifter(b, float(np.angle(m)) - _HALF_PI))
    devices.append(gain_device(b, root2 * abs(m)))


def lower_fanin(g: FanInGate) -> Netlist:
    """Four-wire fan-in block; wires (0,1) carry one anbit, (2,3) the other.

    Each amplitude index k couples only wires (k, k+2); the block transfer is
    [[nI, nI], [mI, -mI]] with the sum anbit leaving on (0,1) and the scaled
    difference on (2,3).
    """
    devices: list = []
    for k in range(2):
        _sum_block(devices, k, k + 2, g.n, g.m)
    return Netlist(4, devices, (0, 1, 2, 3), (0, 1, 2, 3))


def lower_pauli_mgate(m: GateMatrix) -> Netlist:
    """Four-branch expansion architecture: m = a0 I + i a1 Rx(pi) + i a2 Ry(pi) + i a3 Rz(pi).

    A cloning tree copies the input anbit to four branch rails, each branch
    applies one scaled term, and a mirrored fan-in tree sums them back. Far
    more devices than the unitary-diagonal-unitary form; provided for the
    architecture comparison, not as the preferred compilation path.
    """
    if m.dim != 2:
        raise DimError("expansion architecture is defined for dim 2")
    coef = pauli_decompose(m).alpha
    devices: list = []
    # clone tree: after it, wires (0,2,4,6) carry psi0 and (1,3,5,7) carry psi1
    for a, b in ((0, 4), (1, 5), (0, 2), (1, 3), (4, 6), (5, 7)):
        _sum_block(devices, a, b)
    # branch 0 on (0,1): a0 I
    _scale_pair(devices, 0, 1, coef[0])
    # branch 1 on (2,3): i a1 Rx(pi)
    devices.append(TunableCoupler(2, 3, math.pi))
    _scale_pair(devices, 2, 3, 1j * coef[1])
    # branch 2 on (4,5): i a2 Ry(pi) with Ry(pi) = Rz(pi/2) Rx(pi) Rz(-pi/2)
    devices.append(PhaseShifter(4, 0.25 * math.pi))
    devices.append(PhaseShifter(5, -0.25 * math.pi))
    devices.append(TunableCoupler(4, 5, math.pi))
    devices.append(PhaseShifter(4, -0.25 * math.pi))
    devices.append(PhaseShifter(5, 0.25 * math.pi))
    _scale_pair(devices, 4, 5, 1j * coef[2])
    # branch 3 on (6,7): i a3 Rz(pi)
    devices.append(PhaseShifter(6, -_HALF_PI))
    devices.append(PhaseShifter(7, _HALF_PI))
    _scale_pair(devices, 6, 7, 1j * coef[3])
    # fan-in tree back onto (0,1)
    for a, b in ((0, 2), (4, 6), (1, 3), (5, 7), (0, 4), (1, 5)):
        _sum_block(devices, a, b)
    return Netlist(8, devices, (0, 1), (0, 1))


def _basis_word(setting, n_controls: int) -> str:
    if isinstance(setting, AnbitState):
        vec = setting.amps
    elif isinstance(setting, CompositeState):
        vec = setting.flat
    else:
        vec = np.array(setting, dtype=complex).reshape(-1)
    want = 2**n_controls
    if vec.size != want:
        raise DimError(f"control setting needs dim {want}, got {vec.size}")
    hot = None
    for k, amp in enumerate(vec):
        if abs(amp - 1.0) <= 1e-12:
            if hot is not None:
                raise ControlEncodingError("control setting is superposed")
            hot = k
        elif abs(amp) > 1e-12:
            raise ControlEncodingError("control setting is not a computational basis state")
    if hot is None:
        raise ControlEncodingError("control setting has no unit-amplitude slot")
    return format(hot, f"0{n_controls}b")


def lower_controlled_electrooptic(cg: ControlledGate, control_setting) -> Netlist:
    """Target MCA with the control word routed to electrical parameter sets.

    The optical netlist is exactly the target gate's architecture (Euler form
    for unitaries, unitary-diagonal-unitary otherwise). The control map holds
    two parameter assignments: the all-ones word programs the target, every
    other word programs the identity. Devices are emitted carrying the values
    selected by control_setting, which must be a basis state.
    """
    word = _basis_word(control_setting, cg.n_controls)
    unitary = cg.target_gate.gate_class is GateClass.UNITARY
    arch = lower_unitary_zxz if unitary else lower_general_svd
    target_nl = arch(cg.target_gate)
    ident_nl = arch(identity_gate(2))
    if len(target_nl.devices) != len(ident_nl.devices):
        raise ParamError("architecture templates diverged")  # pragma: no cover

    hot_word = "1" * cg.n_controls
    active_key = hot_word if word == hot_word else "*"
    source = target_nl if active_key == hot_word else ident_nl
    devices = []
    target_vals: dict[int, float] = {}
    ident_vals: dict[int, float] = {}
    for idx, dev in enumerate(source.devices):
        tv = target_nl.devices[idx].value
        iv = ident_nl.devices[idx].value
        if tv is not None:
            target_vals[idx] = float(tv)
            ident_vals[idx] = float(iv)
            devices.append(replace(dev, control_binding=f"c{idx}"))
        else:
            devices.append(dev)
    return Netlist(
        2,
        devices,
        (0, 1),
        (0, 1),
        control_map={hot_word: target_vals, "*": ident_vals},
        active_setting=active_key,
    )


def _remap(dev, mapping: dict):
    if hasattr(dev, "wire"):
        return replace(dev, wire=mapping[dev.wire])
    return replace(dev, wire_a=mapping[dev.wire_a], wire_b=mapping[dev.wire_b])


_CIRCUIT_ARCHES = {
    "zxz": lower_unitary_zxz,
    "zyz": lower_unitary_zyz_fixed,
    "svd": lower_general_svd,
    "pauli": lower_pauli_mgate,
}


def lower_circuit(graph: CircuitGraph, arch: str = "zxz") -> Netlist:
    """Compile an acyclic circuit graph to one netlist; feedback is rejected.

    Every signal path gets a dedicated wire pair. Gate nodes lower through the
    chosen architecture in place on their pair; fan-in couples two pairs with
    the sum block; fan-out (default ancilla only) is the same block fed by a
    fresh null pair. Unwired garbage ports keep their wires out of the output
    port list.
    """
    if arch not in _CIRCUIT_ARCHES:
        raise ParamError(f"circuit lowering supports {sorted(_CIRCUIT_ARCHES)}, got {arch!r}")
    gate_arch = _CIRCUIT_ARCHES[arch]

    feeds: dict = {}
    indeg = {nid: 0 for nid in graph.nodes}
    for (src, sp), (dst, dp) in graph.edges:
        feeds.setdefault(src, []).append(((src, sp), (dst, dp)))
        indeg[dst] += 1
    ready = [nid for nid, k in indeg.items() if k == 0]
    order = []
    while ready:
        nid = ready.pop()
        order.append(nid)
        for _, (dst, _dp) in feeds.get(nid, ()):
            indeg[dst] -= 1
            if indeg[dst] == 0:
                ready.append(dst)
    if len(order) != len(graph.nodes):
        raise GraphError("circuit has feedback; only acyclic graphs lower to a netlist")

    next_wire = 0

    def fresh_pair():
        nonlocal next_wire
        pair = (next_wire, next_wire + 1)
        next_wire += 2
        return pair

    in_pairs: dict = {}  # (node, input port) -> wire pair
    devices: list = []
    source_pairs: dict = {}
    sink_pairs: dict = {}

    def emit_gate_block(sub: Netlist, pair):
        nonlocal next_wire
        mapping = {0: pair[0], 1: pair[1]}
        for w in range(2, sub.wires):  # scratch rails of wide architectures
            mapping[w] = next_wire
            next_wire += 1
        for dev in sub.devices:
            devices.append(_remap(dev, mapping))

    out_pair: dict = {}
    for nid in order:
        node = graph.nodes[nid]
        if isinstance(node, SourceNode):
            pair = fresh_pair()
            source_pairs[nid] = pair
            out_pair[(nid, 0)] = pair
        elif isinstance(node, GateNode):
            if node.gate.dim != 2:
                raise DimError("netlist lowering carries dim-2 signals")
            pair = in_pairs[(nid, 0)]
            emit_gate_block(gate_arch(node.gate), pair)
            out_pair[(nid, 0)] = pair
        elif isinstance(node, FanInNode):
            pa = in_pairs[(nid, 0)]
            pb = in_pairs[(nid, 1)]
            for k in range(2):
                _sum_block(devices, pa[k], pb[k], node.fi.n, node.fi.m)
            out_pair[(nid, 0)] = pa
            out_pair[(nid, 1)] = pb
        elif isinstance(node, FanOutNode):
            if (nid, 1) in in_pairs:
                raise GraphError("fan-out with a wired ancilla does not lower")
            if not node.fo.is_default_ancilla:
                raise GraphError("only default-ancilla fan-out lowers to a netlist")
            pa = in_pairs[(nid, 0)]
            pb = fresh_pair()  # null-fed rail
            for k in range(2):
                _sum_block(devices, pa[k], pb[k], node.fo.n, node.fo.m)
            out_pair[(nid, 0)] = pa
            out_pair[(nid, 1)] = pb
        elif isinstance(node, SinkNode):
            sink_pairs[nid] = in_pairs[(nid, 0)]
        for (src, sp), (dst, dp) in feeds.get(nid, ()):
            in_pairs[(dst, dp)] = out_pair[(src, sp)]

    # port order follows the graph's node declaration order, not the topo visit
    input_ports = [w for nid in graph.nodes if nid in source_pairs for w in source_pairs[nid]]
    output_ports = [w for nid in graph.nodes if nid in sink_pairs for w in sink_pairs[nid]]
    return Netlist(next_wire, devices, tuple(input_ports), tuple(output_ports))
