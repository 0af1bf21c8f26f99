from __future__ import annotations

import math

import numpy as np
import pytest
from scipy.linalg import expm

import oracles as O
from fermidigital.compiler import (
    compile_chain_step,
    compile_hopping_bus,
    compile_multiqubit,
    compile_plan,
    compile_term,
    compile_zz,
    merge_rotations,
    sandwich_sign,
)
from fermidigital.errors import CompilationError, ParameterError, SiteIndexError, SupportError
from fermidigital.fermion import hopping_string
from fermidigital.gates import Circuit, Gate
from fermidigital.lattice import HubbardParams, build_chain, build_square
from fermidigital.pauli import PauliString
from fermidigital.trotter import trotterize

PHIS = np.linspace(0.0, 4 * np.pi, 64, endpoint=False)


def zz_target(angle):
    return expm(-1j * angle * O.pauli("ZZ"))


def _collective(n):
    qs = range(1, n + 1)
    return sum(O.on_qubits({a: O.Z, b: O.Z}, n) for a in qs for b in qs if a < b)


# -- CZ_phi sandwiches ------------------------------------------------------------------------

@pytest.mark.parametrize("phi", PHIS)
def test_x_pulse_sandwich_realizes_zz_exponential(phi):
    c = compile_zz(phi, (1, 2), "X")
    assert c.counts() == {"XPI": 4, "CZ": 2}
    assert O.equal_up_to_phase(c.unitary(), zz_target(phi / 2), 1e-12)
    np.testing.assert_allclose(c.unitary(), zz_target(phi / 2), atol=1e-12)


@pytest.mark.parametrize("phi", PHIS)
def test_y_pulse_sandwich_realizes_shifted_zz_exponential(phi):
    c = compile_zz(phi, (1, 2), "Y")
    assert c.counts() == {"XPI": 2, "YPI": 2, "CZ": 2}
    assert O.equal_up_to_phase(c.unitary(), zz_target((np.pi + phi) / 2), 1e-12)


def test_zero_angle_sandwich_is_identity_up_to_phase():
    assert O.equal_up_to_phase(compile_zz(0.0, (1, 2)).unitary(), np.eye(4), 1e-12)


def test_sandwich_on_non_adjacent_qubits_and_order_independence():
    c = compile_zz(0.8, (3, 1), n_qubits=3)
    np.testing.assert_allclose(c.unitary(), expm(-0.4j * O.pauli("ZIZ")), atol=1e-12)


def test_sandwich_rejects_identical_qubits():
    with pytest.raises(SupportError):
        compile_zz(0.3, (2, 2))
    with pytest.raises(ParameterError):
        compile_zz(0.3, (1, 2), "Z")


# -- three-site chain step -----------------------------------------------------------------

@pytest.mark.parametrize("h,U,t,n", [(1.0, 1.0, 1.0, 4), (0.7, 1.9, 2.5, 3), (1.0, 0.5, 8.0, 10)])
def test_chain_step_matches_rearranged_factor_product(h, U, t, n):
    c = compile_chain_step(h, U, t, n)
    assert O.equal_up_to_phase(c.unitary(), O.chain_step_product(h, U, t, n), 1e-10)


def test_chain_step_merges_cancelling_frames():
    c = compile_chain_step(1.0, 1.0, 1.0, 4)
    # six CZ_phi sandwiches: two interaction bonds and four hopping blocks
    assert c.counts()["CZ"] == 12
    # four frame pairs per hopping block give 16 rotations; merging removes four
    assert sum(1 for g in c.gates if g.kind in ("RX", "RY")) == 12


def test_chain_step_without_hopping_is_exact():
    H = build_chain(3, 0.0, 1.3).to_pauli()
    for n in (1, 2, 7):
        U = np.linalg.matrix_power(compile_chain_step(0.0, 1.3, 2.0, n).unitary(), n)
        assert O.equal_up_to_phase(U, expm(-2.0j * H.to_matrix()), 1e-10)


def test_chain_step_more_steps_never_hurts_on_grid():
    H = O.chain_hamiltonian(3, 1.0, 1.0)
    psi = O.ket_state(["011", "101"])
    for t in np.linspace(0.5, 4.0, 8):
        exact = O.exact_evolve(H, psi, t)
        fid = []
        for n in (4, 40):
            dig = np.linalg.matrix_power(compile_chain_step(1.0, 1.0, t, n).unitary(), n) @ psi
            fid.append(abs(np.vdot(exact, dig)) ** 2)
        assert fid[1] >= fid[0] - 1e-12


def test_two_site_step_is_exact():
    H = build_chain(2, 1.0, 0.5).to_pauli().to_matrix()
    c = compile_chain_step(1.0, 0.5, 3.0, 1, three_site=False)
    assert O.equal_up_to_phase(c.unitary(), expm(-3.0j * H), 1e-10)


def test_chain_step_rejects_zero_steps():
    with pytest.raises(ParameterError):
        compile_chain_step(1, 1, 1, 0)


# -- collective sandwich ----------------------------------------------------------------------

def test_sign_table():
    assert [sandwich_sign(k) for k in range(1, 10)] == [1, -1, -1, 1, 1, -1, -1, 1, 1]
    with pytest.raises(ParameterError):
        sandwich_sign(0)


def _manual_sandwich(k, phi, sign, rotation_sign=+1):
    """USZ2 first, then exp(rotation_sign * i sign phi sigma) on qubit 1, then USZ2^dag."""
    U = expm(-1j * np.pi / 4 * _collective(k))
    axis = "Y" if k % 2 else "X"
    r = O.on_qubits({1: expm(rotation_sign * 1j * sign * phi * O.SIGMA[axis])}, k)
    return U.conj().T @ r @ U


@pytest.mark.parametrize("k", range(2, 10))
def test_sign_rule_is_the_unique_working_sign(k):
    phi = 0.37
    target = expm(1j * phi * O.pauli("Z" * (k - 1) + "Y"))
    working = [s for s in (1, -1) if O.equal_up_to_phase(_manual_sandwich(k, phi, s), target, 1e-10)]
    assert working == [sandwich_sign(k)]
    assert working == [{1: 1, 2: -1, 3: -1, 0: 1}[k % 4]]


@pytest.mark.parametrize("k", range(2, 10))
def test_negative_exponent_rotation_does_not_give_the_stated_table(k):
    # reading the rotation as exp(-i phi' sigma) flips every entry of the table
    phi = 0.37
    target = expm(1j * phi * O.pauli("Z" * (k - 1) + "Y"))
    working = [s for s in (1, -1) if O.equal_up_to_phase(_manual_sandwich(k, phi, s, -1), target, 1e-10)]
    assert working == [-sandwich_sign(k)]


@pytest.mark.parametrize("k", range(2, 10))
def test_compiled_canonical_string(k):
    phi = 0.61
    P = PauliString("Y" + "Z" * (k - 1))
    c = compile_multiqubit(P, phi)
    assert c.counts() == {"USZ2": 2, "UY" if k % 2 else "UX": 1}
    target = expm(1j * phi * O.pauli(P.label()))
    assert O.equal_up_to_phase(c.unitary(), target, 1e-10)


def test_weight_one_string_is_a_single_rotation():
    c = compile_multiqubit(PauliString("Y"), 0.4)
    assert len(c) == 1 and c.gates[0].kind == "UY"
    np.testing.assert_allclose(c.unitary(), expm(0.4j * O.Y), atol=1e-14)


def test_identity_string_is_pure_phase():
    c = compile_multiqubit(PauliString("II", -1), 0.3)
    assert len(c) == 0
    assert c.global_phase == pytest.approx(np.exp(-0.3j))


def test_nonhermitian_string_rejected():
    with pytest.raises(ParameterError):
        compile_multiqubit(PauliString("XY", 1j), 0.3)


@pytest.mark.parametrize("seed", range(200))
def test_random_strings_compile_exactly(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 7))
    letters = "".join(rng.choice(list("IXYZ"), n))
    if set(letters) == {"I"}:
        letters = "X" + letters[1:]
    P = PauliString(letters, rng.choice([1, -1]))
    phi = float(rng.uniform(-np.pi, np.pi))
    target = expm(1j * phi * P.phase.real * O.pauli(P.label()))
    U = compile_multiqubit(P, phi).unitary()
    assert O.equal_up_to_phase(U, target, 1e-10)
    bus = compile_term(P, -phi, "bus").unitary()
    assert O.equal_up_to_phase(bus, target, 1e-10)


# -- hopping on the bus ----------------------------------------------------------------------

def test_long_range_hop_uses_four_collective_gates_and_eight_rotations():
    c = compile_hopping_bus(2, 6, 0.3, 6)
    assert c.count_where(lambda g: g.is_collective) == 4
    assert c.count_where(lambda g: g.is_single) == 8
    assert c.count_where(lambda g: g.kind in ("UX", "UY")) == 2
    for g in c.gates:
        if g.is_collective:
            assert g.qubits == (2, 3, 4, 5, 6)


def test_adjacent_hop_uses_no_collective_gate():
    c = compile_hopping_bus(1, 2, 0.3, 2)
    assert c.count_where(lambda g: g.is_collective) == 0
    assert c.counts()["CZ"] == 4


@pytest.mark.parametrize("i,j,n", [(1, 3, 3), (1, 2, 2), (2, 3, 4), (1, 4, 5), (2, 6, 6)])
@pytest.mark.parametrize("phi", [0.21, -1.3, 2.9])
def test_hop_matches_fermionic_exponential(i, j, n, phi):
    target = expm(-1j * phi * O.hop(i, j, n))
    U = compile_hopping_bus(i, j, phi, n).unitary()
    assert O.equal_up_to_phase(U, target, 1e-10)


def test_hop_halves_commute():
    hop = hopping_string(2, 5, 5)
    (ca, a), (cb, b) = list(hop)
    first = compile_multiqubit(a, 0.4 * ca.real, 5) + compile_multiqubit(b, 0.4 * cb.real, 5)
    second = compile_multiqubit(b, 0.4 * cb.real, 5) + compile_multiqubit(a, 0.4 * ca.real, 5)
    np.testing.assert_allclose(first.unitary(), second.unitary(), atol=1e-12)


def test_hop_index_errors():
    with pytest.raises(SiteIndexError):
        compile_hopping_bus(3, 3, 0.1, 4)


# -- compile_term / compile_plan ------------------------------------------------------------

def test_interaction_on_bus_is_one_gate():
    c = compile_term(PauliString("ZZ"), 0.3, "bus")
    assert len(c) == 1 and c.gates[0].kind == "USZ2"
    np.testing.assert_allclose(c.unitary(), zz_target(0.3), atol=1e-14)


def test_pairwise_rejects_three_local_strings():
    with pytest.raises(CompilationError):
        compile_term(PauliString("XZX"), 0.2, "pairwise")
    with pytest.raises(ParameterError):
        compile_term(PauliString("XX"), 0.2, "trapped-ion")


@pytest.mark.parametrize("label", ["XX", "YY", "ZZ", "XY", "ZX", "IZ", "XI"])
@pytest.mark.parametrize("backend", ["pairwise", "bus"])
def test_two_local_terms_on_both_backends(label, backend):
    P = PauliString.from_text(label)
    c = compile_term(P, 0.45, backend)
    np.testing.assert_allclose(c.unitary(), expm(-0.45j * O.pauli(label)), atol=1e-12)


@pytest.mark.parametrize("backend", ["pairwise", "bus"])
def test_plan_circuit_equals_plan_unitary_on_chain(backend):
    plan = trotterize(build_chain(3, 1.0, 0.8).to_pauli(), 1.5, 3)
    c = compile_plan(plan, backend)
    np.testing.assert_allclose(np.linalg.matrix_power(c.unitary(), 3), plan.unitary(), atol=1e-11)


def test_plan_circuit_on_square_bus():
    plan = trotterize(build_square(2, 2, HubbardParams(1.0, 2.0, 0.2, 0.4)).to_pauli(), 0.5, 1)
    c = compile_plan(plan, "bus")
    np.testing.assert_allclose(c.unitary(), plan.unitary(), atol=1e-11)


# -- rotation merging -----------------------------------------------------------------------------

def test_merge_rotations_adds_angles_and_drops_zeros():
    c = Circuit(2, (
        Gate("RY", (1,), 0.3), Gate("RY", (1,), 0.4),
        Gate("RX", (2,), math.pi / 2), Gate("RX", (2,), -math.pi / 2),
        Gate("CZ", (1, 2), 0.1), Gate("RY", (1,), 0.2),
    ))
    m = merge_rotations(c)
    assert [g.to_text() for g in m.gates][:1] == [Gate("RY", (1,), 0.7).to_text()]
    assert m.counts() == {"RY": 2, "CZ": 1}
    np.testing.assert_allclose(m.unitary(), c.unitary(), atol=1e-14)


def test_merge_respects_barriers():
    c = Circuit(1, (Gate("RX", (1,), 0.3), Gate("XPI", (1,)), Gate("RX", (1,), 0.3)))
    assert len(merge_rotations(c)) == 3
