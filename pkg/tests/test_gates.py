import numpy as np
import pytest

from anbit import (
    AXIS_X,
    AXIS_Y,
    AXIS_Z,
    AnbitState,
    GateClass,
    GateMatrix,
    RotationSpec,
    apply,
    apply_controlled_superposed,
    classify,
    controlled,
    identity_gate,
    nand_emulate,
    pauli,
    rotation_matrix,
)
from anbit.errors import AxisError, DimError, ParamError

from conftest import random_matrix, random_state_vec, random_unitary

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def test_pauli_matrices():
    assert np.array_equal(pauli(0).entries, np.eye(2))
    assert np.array_equal(pauli(1).entries, SX)
    assert np.array_equal(pauli(2).entries, SY)
    assert np.array_equal(pauli(3).entries, SZ)
    with pytest.raises(IndexError):
        pauli(4)


def test_gate_matrix_frozen():
    g = pauli(1)
    with pytest.raises(ValueError):
        g.entries[0, 0] = 5.0


def test_identity_gate():
    assert np.array_equal(identity_gate().entries, np.eye(2))
    assert np.array_equal(identity_gate(4).entries, np.eye(4))


def test_rotation_spec_validation():
    with pytest.raises(AxisError):
        RotationSpec((1.0, 1.0), 0.5)
    with pytest.raises(AxisError):
        RotationSpec((1.0, 1.0, 0.0), 0.5)  # not unit length


def test_rotation_matrix_z():
    g = rotation_matrix(RotationSpec(AXIS_Z, np.pi / 2.0))
    want = np.diag([np.exp(-0.25j * np.pi), np.exp(0.25j * np.pi)])
    assert np.allclose(g.entries, want, atol=1e-15)


def test_rotation_matrix_x_pi_is_pauli_up_to_phase():
    g = rotation_matrix(RotationSpec(AXIS_X, np.pi))
    assert np.allclose(g.entries, -1j * SX, atol=1e-15)
    # adding global phase pi/2 lands exactly on sigma_x
    g = rotation_matrix(RotationSpec(AXIS_X, np.pi, global_phase=np.pi / 2.0))
    assert np.allclose(g.entries, SX, atol=1e-15)


def test_rotation_matrix_y():
    a = 0.7
    g = rotation_matrix(RotationSpec(AXIS_Y, a))
    c, s = np.cos(a / 2.0), np.sin(a / 2.0)
    assert np.allclose(g.entries, [[c, -s], [s, c]], atol=1e-15)


def test_rotation_is_unitary(rng):
    for _ in range(20):
        ax = rng.normal(size=3)
        ax /= np.linalg.norm(ax)
        g = rotation_matrix(RotationSpec(tuple(ax), rng.uniform(0, 2 * np.pi)))
        assert np.allclose(g.entries.conj().T @ g.entries, np.eye(2), atol=1e-14)


def test_apply(rng):
    g = GateMatrix(random_matrix(rng))
    s = AnbitState(random_state_vec(rng), delta_t=0.25)
    out = apply(g, s)
    assert np.allclose(out.amps, g.entries @ s.amps)
    assert out.delta_t == 0.25


def test_apply_dim_mismatch():
    with pytest.raises(DimError):
        apply(identity_gate(2), AnbitState([1.0, 0.0, 0.0]))


def test_classify_unitary(rng):
    for _ in range(20):
        assert classify(GateMatrix(random_unitary(rng))) is GateClass.UNITARY


def test_classify_general_linear():
    g = GateMatrix([[2.0, 0.0], [0.0, 1.0]])
    assert classify(g) is GateClass.GENERAL_LINEAR


def test_classify_singular():
    g = GateMatrix([[1.0, 1.0], [1.0, 1.0]])
    assert classify(g) is GateClass.SINGULAR
    assert classify(GateMatrix(np.zeros((2, 2)))) is GateClass.SINGULAR


def test_classify_precedence_identity():
    # unitary wins over general linear for the identity
    assert classify(identity_gate()) is GateClass.UNITARY


def test_controlled_embedding_shape_and_det(rng):
    for n in (1, 2, 3):
        f = GateMatrix(random_matrix(rng))
        cg = controlled(f, n)
        assert cg.embedded.dim == 2 ** (n + 1)
        assert cg.embedded.det == pytest.approx(f.det, abs=1e-12)


def test_controlled_identity_off_block(rng):
    f = GateMatrix(random_matrix(rng))
    emb = controlled(f, 2).embedded.entries
    assert np.array_equal(emb[:6, :6], np.eye(6))
    assert np.array_equal(emb[6:, 6:], f.entries)


def test_controlled_bounds():
    with pytest.raises(ParamError):
        controlled(pauli(1), 0)
    with pytest.raises(ParamError):
        controlled(pauli(1), 17)
    with pytest.raises(DimError):
        controlled(identity_gate(4), 1)


def cnot_out(c, t):
    emb = controlled(pauli(1), 1).embedded.entries
    vec = np.zeros(4, dtype=complex)
    vec[2 * c + t] = 1.0
    out = emb @ vec
    return int(np.argmax(np.abs(out)))


def test_cnot_truth_table():
    assert cnot_out(0, 0) == 0b00
    assert cnot_out(0, 1) == 0b01
    assert cnot_out(1, 0) == 0b11
    assert cnot_out(1, 1) == 0b10


def toffoli_out(c1, c2, t):
    emb = controlled(pauli(1), 2).embedded.entries
    vec = np.zeros(8, dtype=complex)
    vec[4 * c1 + 2 * c2 + t] = 1.0
    out = emb @ vec
    return int(np.argmax(np.abs(out)))


def test_toffoli_truth_table():
    for c1 in (0, 1):
        for c2 in (0, 1):
            for t in (0, 1):
                got = toffoli_out(c1, c2, t)
                want_t = t ^ (c1 & c2)
                assert got == 4 * c1 + 2 * c2 + want_t


def test_apply_controlled_superposed(rng):
    f = GateMatrix(random_unitary(rng))
    cg = controlled(f, 1)
    c = AnbitState([0.6, 0.8j])
    t = AnbitState(random_state_vec(rng))
    out = apply_controlled_superposed(cg, c, t)
    want = np.concatenate([0.6 * t.amps, 0.8j * (f.entries @ t.amps)])
    assert np.allclose(out.flat, want, atol=1e-14)
    assert out.part_dims == (2, 2)


def test_apply_controlled_superposed_one_control_only(rng):
    cg = controlled(pauli(1), 2)
    s = AnbitState([1.0, 0.0])
    with pytest.raises(ParamError):
        apply_controlled_superposed(cg, s, s)


def test_nand_truth_table():
    assert nand_emulate(0, 0) == 1
    assert nand_emulate(0, 1) == 1
    assert nand_emulate(1, 0) == 1
    assert nand_emulate(1, 1) == 0
    with pytest.raises(ParamError):
        nand_emulate(2, 0)
