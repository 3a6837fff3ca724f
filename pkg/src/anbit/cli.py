"""Command-line front end.

Subcommands: simulate, decompose, lower, analyze, measure, trajectory. All
outputs are deterministic: JSON uses 17-significant-digit floats and stable
key order, CSV uses the same float formatting. Exit codes: 0 success, 2
parse/validation problems, 3 singular feedback loops, 4 gate class or
dimension errors. Errors print one structured JSON object on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from .algebra import AnbitState, to_bloch
from .circuits import FanInGate, solve
from .decompositions import (
    euler_reconstruct,
    euler_zxz,
    euler_zyz,
    mostow_synthesize,
    pauli_decompose,
    pauli_reconstruct,
    svd2,
    svd_reconstruct,
)
from .errors import AnbitError, ClassError, DegenerateStateError, DimError, LoopSingularError
from .gates import RotationSpec, apply, rotation_matrix
from .lowering import (
    FbSymmetry,
    check_fb_symmetry,
    lower_circuit,
    lower_fanin,
    lower_general_svd,
    lower_mostow,
    lower_pauli_mgate,
    lower_unitary_zxz,
    lower_unitary_zyz_fixed,
    scattering_matrix,
)
from .measurement import measure_coherent, measure_differential
from .serialization import (
    circuit_from_obj,
    dumps,
    fmt_float,
    gate_from_obj,
    matrix_to_obj,
    netlist_from_text,
    netlist_to_text,
    record_to_obj,
    state_from_obj,
    state_to_obj,
)

__all__ = ["RunConfig", "run", "main", "entrypoint", "emit_trajectory"]

RECIPROCITY_TOL = 1e-12


@dataclass
class RunConfig:
    """One resolved CLI invocation."""

    command: str
    target: str
    input_path: str | None = None
    out: str | None = None
    fmt: str = "json"
    method: str | None = None
    arch: str | None = None
    kind: str | None = None
    responsivity: float = 1.0
    omega_c: float = 0.0


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_json(path: str):
    return json.loads(_read(path))


def _fro(a, b) -> float:
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))


def emit_trajectory(axis, start, end, state: AnbitState, steps: int, global_phase=0.0):
    """Sphere coordinates of rotation-swept outputs on a fixed input state.

    Applies e^(i global_phase) R_axis(angle) for `steps` angles evenly spaced
    over [start, end] and returns rows (step, radius, theta, phi). Unitary
    sweeps keep the radius constant.
    """
    if state.is_null:
        raise DegenerateStateError("trajectory needs a non-null state")
    steps = int(steps)
    if steps < 1:
        raise ValueError("steps must be >= 1")
    rows = []
    for k, angle in enumerate(np.linspace(float(start), float(end), steps)):
        gate = rotation_matrix(RotationSpec(tuple(axis), float(angle), float(global_phase)))
        point = to_bloch(apply(gate, state))
        rows.append((k, point.radius, point.theta, point.phi))
    return rows


def _cmd_simulate(cfg: RunConfig) -> str:
    graph = circuit_from_obj(_load_json(cfg.target))
    raw = _load_json(cfg.input_path)
    if isinstance(raw, dict) and "amps" in raw:
        sources = graph.sources()
        if len(sources) != 1:
            raise ValueError(f"single input state but circuit has {len(sources)} sources")
        inputs = {sources[0]: state_from_obj(raw)}
    elif isinstance(raw, dict):
        inputs = {str(k): state_from_obj(v) for k, v in raw.items()}
    else:
        raise ValueError("input must be a state object or a source-to-state mapping")
    result = solve(graph, inputs)
    if cfg.fmt == "csv":
        lines = ["sink,index,re,im"]
        for sid in sorted(result):
            for idx, amp in enumerate(result[sid].amps):
                lines.append(f"{sid},{idx},{fmt_float(amp.real)},{fmt_float(amp.imag)}")
        return "\n".join(lines) + "\n"
    out = {"outputs": {sid: state_to_obj(result[sid]) for sid in sorted(result)}}
    return dumps(out) + "\n"


def _euler_factor_objs(f) -> list:
    return [
        {"name": "delta", "value": f.delta},
        {"name": "alpha1", "value": f.alpha1},
        {"name": "alpha2", "value": f.alpha2},
        {"name": "alpha3", "value": f.alpha3},
    ]


def _cmd_decompose(cfg: RunConfig) -> str:
    obj = _load_json(cfg.target)
    method = cfg.method
    if method in ("euler-zxz", "euler-zyz"):
        gate = gate_from_obj(obj)
        f = euler_zxz(gate) if method == "euler-zxz" else euler_zyz(gate)
        factors = _euler_factor_objs(f)
        err = _fro(euler_reconstruct(f).entries, gate.entries)
    elif method == "svd":
        gate = gate_from_obj(obj)
        f = svd2(gate)
        factors = [
            {"name": "u2", "matrix": matrix_to_obj(f.u2.entries)},
            {"name": "d1", "value": f.d1},
            {"name": "d2", "value": f.d2},
            {"name": "u1", "matrix": matrix_to_obj(f.u1.entries)},
        ]
        err = _fro(svd_reconstruct(f).entries, gate.entries)
    elif method == "pauli":
        gate = gate_from_obj(obj)
        c = pauli_decompose(gate)
        factors = [
            {"name": f"alpha{k}", "value": [c.alpha[k].real, c.alpha[k].imag]} for k in range(4)
        ]
        err = _fro(pauli_reconstruct(c).entries, gate.entries)
    elif method == "mostow-synth":
        f = _mostow_from_obj(obj)
        stage_names = ("u_u1", "lam1", "u1_dag_u2", "lam2", "u2_dag")
        factors = [
            {"name": name, "matrix": matrix_to_obj(stage.entries)}
            for name, stage in zip(stage_names, f.expanded)
        ]
        product = np.eye(2, dtype=complex)
        for stage in f.expanded:
            product = product @ stage.entries
        err = _fro(product, f.target().entries)
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown method {method!r}")
    return dumps({"method": method, "factors": factors, "reconstruction_error": err}) + "\n"


def _mostow_from_obj(obj):
    if not isinstance(obj, dict) or "unitary" not in obj:
        raise ValueError("synthesis input needs 'unitary', 'antisymmetric_param', 'symmetric'")
    try:
        u = gate_from_obj(obj["unitary"])
        a = float(obj["antisymmetric_param"])
        b = np.array(obj["symmetric"], dtype=float)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"synthesis input: {exc}") from exc
    return mostow_synthesize(u, a, b)


def _cmd_lower(cfg: RunConfig) -> str:
    obj = _load_json(cfg.target)
    if isinstance(obj, dict) and "nodes" in obj:
        nl = lower_circuit(circuit_from_obj(obj), cfg.arch)
    elif cfg.arch == "zxz":
        nl = lower_unitary_zxz(gate_from_obj(obj))
    elif cfg.arch == "zyz":
        nl = lower_unitary_zyz_fixed(gate_from_obj(obj))
    elif cfg.arch == "svd":
        nl = lower_general_svd(gate_from_obj(obj))
    elif cfg.arch == "pauli":
        nl = lower_pauli_mgate(gate_from_obj(obj))
    elif cfg.arch == "mostow":
        nl = lower_mostow(_mostow_from_obj(obj))
    elif cfg.arch == "fanin":
        try:
            n = complex(obj["n"][0], obj["n"][1])
            m = complex(obj["m"][0], obj["m"][1])
        except (KeyError, TypeError, IndexError) as exc:
            raise ValueError(f"fan-in input needs complex 'n' and 'm' pairs: {exc}") from exc
        nl = lower_fanin(FanInGate(n, m))
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown architecture {cfg.arch!r}")
    return netlist_to_text(nl)


def _cmd_analyze(cfg: RunConfig) -> str:
    nl = netlist_from_text(_read(cfg.target))
    tf = nl.forward_transfer()
    tb = nl.backward_transfer()
    scale = max(1.0, float(np.max(np.abs(tf))) if tf.size else 1.0)
    reciprocal = tf.shape == tb.T.shape and float(np.max(np.abs(tb - tf.T))) <= RECIPROCITY_TOL * scale
    report = {
        "reciprocal": bool(reciprocal),
        "fb_symmetric": check_fb_symmetry(nl) is FbSymmetry.SYMMETRIC,
        "s_matrix": matrix_to_obj(scattering_matrix(nl, reciprocal=True)),
    }
    return dumps(report) + "\n"


def _cmd_measure(cfg: RunConfig) -> str:
    state = state_from_obj(_load_json(cfg.target))
    if cfg.kind == "coherent":
        rec = measure_coherent(state, cfg.responsivity)
    else:
        rec = measure_differential(state, cfg.responsivity, cfg.omega_c)
    return dumps(record_to_obj(rec)) + "\n"


def _cmd_trajectory(cfg: RunConfig) -> str:
    spec = _load_json(cfg.target)
    if not isinstance(spec, dict) or "state" not in spec:
        raise ValueError("sweep spec needs a 'state' field")
    state = state_from_obj(spec["state"])
    steps = int(spec.get("steps", 100))
    kind = spec.get("kind", "rotation")
    if kind == "rotation":
        rows = emit_trajectory(
            spec["axis"],
            spec.get("start", 0.0),
            spec.get("end", 2.0 * np.pi),
            state,
            steps,
            spec.get("global_phase", 0.0),
        )
    elif kind == "diagonal":
        if state.is_null:
            raise DegenerateStateError("trajectory needs a non-null state")
        d1a, d1b = (spec["d1"] if isinstance(spec["d1"], list) else [spec["d1"]] * 2)
        d2a, d2b = (spec["d2"] if isinstance(spec["d2"], list) else [spec["d2"]] * 2)
        rows = []
        for k, t in enumerate(np.linspace(0.0, 1.0, steps)):
            diag = np.diag([d1a + (d1b - d1a) * t, d2a + (d2b - d2a) * t]).astype(complex)
            point = to_bloch(AnbitState(diag @ state.amps, state.delta_t))
            rows.append((k, point.radius, point.theta, point.phi))
    else:
        raise ValueError(f"unknown sweep kind {kind!r}")
    lines = ["step,radius,theta,phi"]
    for k, radius, theta, phi in rows:
        lines.append(f"{k},{fmt_float(radius)},{fmt_float(theta)},{fmt_float(phi)}")
    return "\n".join(lines) + "\n"


_COMMANDS = {
    "simulate": _cmd_simulate,
    "decompose": _cmd_decompose,
    "lower": _cmd_lower,
    "analyze": _cmd_analyze,
    "measure": _cmd_measure,
    "trajectory": _cmd_trajectory,
}


def run(config: RunConfig) -> int:
    """Execute one command; returns the process exit code."""
    try:
        text = _COMMANDS[config.command](config)
    except LoopSingularError as exc:
        return _fail(exc, 3)
    except (ClassError, DimError) as exc:
        return _fail(exc, 4)
    except (AnbitError, ValueError, KeyError, OSError) as exc:
        return _fail(exc, 2)
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _fail(exc: Exception, code: int) -> int:
    payload = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
    sys.stderr.write(dumps(payload) + "\n")
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="anbit", description="Analog photonic gate toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="resolve a circuit and print sink states")
    p.add_argument("circuit")
    p.add_argument("--input", required=True, dest="input_path")
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv"), default="json", dest="fmt")

    p = sub.add_parser("decompose", help="factor a gate")
    p.add_argument("gate")
    p.add_argument(
        "--method",
        required=True,
        choices=("euler-zxz", "euler-zyz", "svd", "pauli", "mostow-synth"),
    )

    p = sub.add_parser("lower", help="compile a gate or circuit to a netlist")
    p.add_argument("target")
    p.add_argument(
        "--arch", required=True, choices=("zxz", "zyz", "svd", "mostow", "pauli", "fanin")
    )

    p = sub.add_parser("analyze", help="reciprocity and symmetry report for a netlist")
    p.add_argument("netlist")

    p = sub.add_parser("measure", help="measurement record for a state")
    p.add_argument("state")
    p.add_argument("--kind", required=True, choices=("coherent", "differential"))
    p.add_argument("--responsivity", required=True, type=float)
    p.add_argument("--omega-c", type=float, default=0.0, dest="omega_c")

    p = sub.add_parser("trajectory", help="sphere-coordinate sweep as CSV")
    p.add_argument("sweep_spec")
    return parser


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=ns.command,
        target=getattr(ns, "circuit", None)
        or getattr(ns, "gate", None)
        or getattr(ns, "target", None)
        or getattr(ns, "netlist", None)
        or getattr(ns, "state", None)
        or getattr(ns, "sweep_spec", None),
        input_path=getattr(ns, "input_path", None),
        out=getattr(ns, "out", None),
        fmt=getattr(ns, "fmt", "json"),
        method=getattr(ns, "method", None),
        arch=getattr(ns, "arch", None),
        kind=getattr(ns, "kind", None),
        responsivity=getattr(ns, "responsivity", 1.0),
        omega_c=getattr(ns, "omega_c", 0.0),
    )
    return run(cfg)


def entrypoint():
    sys.exit(main())
