"""Dense state-vector and unitary oracle for desk-scale verification.

States are plain 1-D complex arrays of length 2**n (qubit 1 = most
significant bit).  Gate application works in place over amplitude strides;
the full 2**n x 2**n matrix is only formed when :func:`sequence_unitary`
is asked for it.  Hot paths run on jitted split real/imaginary buffers
when numba is available and fall back to equivalent numpy slicing when it
is not.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from . import _kernels
from .compilers import build_grover_iteration, build_walsh_hadamard
from .diagonal import ZPolynomial
from .gates import Gate, GateSequence

MAX_UNITARY_QUBITS = 12
NORM_TOL = 1e-9


def n_qubits_of(state: np.ndarray) -> int:
    n = int(state.shape[0]).bit_length() - 1
    if state.shape[0] != 2**n:
        raise ValueError(f"length {state.shape[0]} is not a power of two")
    return n


def zero_state(n: int) -> np.ndarray:
    if n < 1:
        raise ValueError("need at least one qubit")
    state = np.zeros(2**n, dtype=complex)
    state[0] = 1.0
    return state


def _check_qubits(gate: Gate, n: int) -> None:
    if any(q > n for q in gate.qubits):
        raise ValueError(f"gate {gate} exceeds register of {n} qubit(s)")


def _apply_flat(ar: np.ndarray, ai: np.ndarray, gate: Gate, n: int, trail: int) -> None:
    """Apply one gate to split re/im buffers over a (2,)*n (+ trail) layout."""
    if gate.kind == "PHASE":
        f = cmath.exp(-1j * gate.angle)
        _kernels.apply_scale(ar, ai, f.real, f.imag)
        return
    if gate.kind == "ZZ":
        k, l = gate.qubits  # factories keep k < l
        same = cmath.exp(-0.5j * gate.angle)
        diff = cmath.exp(0.5j * gate.angle)
        mid = 2 ** (l - k - 1)
        run = 2 ** (n - l) * trail
        _kernels.apply_zz(
            ar, ai, 2 ** (k - 1), mid, run, same.real, same.imag, diff.real, diff.imag
        )
        return
    (k,) = gate.qubits
    blocks = 2 ** (k - 1)
    run = 2 ** (n - k) * trail
    half = 0.5 * gate.angle
    if gate.kind == "RZ":
        f0 = cmath.exp(-1j * half)
        f1 = cmath.exp(1j * half)
        _kernels.apply_diag1(ar, ai, blocks, run, f0.real, f0.imag, f1.real, f1.imag)
        return
    c, s = math.cos(half), math.sin(half)
    if gate.kind == "RX":
        m = (c, 0.0, 0.0, -s, 0.0, -s, c, 0.0)  # [[c, -is], [-is, c]]
    else:  # RY
        m = (c, 0.0, -s, 0.0, s, 0.0, c, 0.0)  # [[c, -s], [s, c]]
    _kernels.apply_1q(ar, ai, blocks, run, *m)


def _apply_gate_tensor(arr: np.ndarray, gate: Gate, n: int) -> None:
    """Numpy reference path: apply one gate in place to an array whose first
    n axes have length 2 (used when numba is unavailable)."""
    if gate.kind == "PHASE":
        arr *= cmath.exp(-1j * gate.angle)
        return
    if gate.kind == "ZZ":
        k, l = gate.qubits
        same = cmath.exp(-0.5j * gate.angle)
        diff = cmath.exp(0.5j * gate.angle)
        idx = [slice(None)] * arr.ndim
        for b1 in (0, 1):
            for b2 in (0, 1):
                idx[k - 1], idx[l - 1] = b1, b2
                arr[tuple(idx)] *= same if b1 == b2 else diff
        return
    (k,) = gate.qubits
    idx0 = [slice(None)] * arr.ndim
    idx1 = [slice(None)] * arr.ndim
    idx0[k - 1], idx1[k - 1] = 0, 1
    idx0, idx1 = tuple(idx0), tuple(idx1)
    half = 0.5 * gate.angle
    if gate.kind == "RZ":
        arr[idx0] *= cmath.exp(-1j * half)
        arr[idx1] *= cmath.exp(1j * half)
        return
    c, s = math.cos(half), math.sin(half)
    s0 = arr[idx0]
    s1 = arr[idx1]
    if gate.kind == "RX":
        t0 = c * s0 - 1j * s * s1
        t1 = -1j * s * s0 + c * s1
    else:  # RY
        t0 = c * s0 - s * s1
        t1 = s * s0 + c * s1
    arr[idx0] = t0
    arr[idx1] = t1


def _run_gates(buf: np.ndarray, gates, n: int, trail: int) -> np.ndarray:
    """Apply gates to a complex buffer of size 2**n * trail, returning it."""
    if _kernels.AVAILABLE:
        flat = buf.reshape(-1)
        ar = np.ascontiguousarray(flat.real)
        ai = np.ascontiguousarray(flat.imag)
        for gate in gates:
            _check_qubits(gate, n)
            _apply_flat(ar, ai, gate, n, trail)
        flat.real = ar
        flat.imag = ai
    else:
        view = buf.reshape((2,) * n + ((trail,) if trail > 1 else ()))
        for gate in gates:
            _check_qubits(gate, n)
            _apply_gate_tensor(view, gate, n)
    return buf


def apply_gate(gate: Gate, state: np.ndarray) -> np.ndarray:
    """Multiply the state by one gate; in place when dtype is complex."""
    state = np.ascontiguousarray(state, dtype=complex)
    return _run_gates(state, [gate], n_qubits_of(state), 1)


def apply_sequence(seq: GateSequence, state: np.ndarray) -> np.ndarray:
    state = np.ascontiguousarray(state, dtype=complex)
    n = n_qubits_of(state)
    if n != seq.n_qubits:
        raise ValueError(f"state has {n} qubits, sequence {seq.n_qubits}")
    before = np.linalg.norm(state)
    _run_gates(state, seq.gates, n, 1)
    if abs(np.linalg.norm(state) - before) > NORM_TOL * max(1.0, before):
        raise ArithmeticError("norm drifted during gate application")
    return state


def sequence_unitary(seq: GateSequence, max_qubits: int = MAX_UNITARY_QUBITS) -> np.ndarray:
    """Dense product of the sequence's gate matrices in application order."""
    n = seq.n_qubits
    if n > max_qubits:
        raise ValueError(f"{n} qubits exceeds the dense cap of {max_qubits}")
    dim = 2**n
    u = np.eye(dim, dtype=complex)
    return _run_gates(u, seq.gates, n, dim)  # row index evolves, columns batch


def distance_up_to_phase(u: np.ndarray, v: np.ndarray) -> float:
    """min over phi of max-entry |u - exp(i*phi) v|, via the trace phase.

    Zero exactly when the matrices agree up to a global phase.
    """
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != v.shape or u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"incompatible shapes {u.shape} and {v.shape}")
    tr = np.trace(v.conj().T @ u)
    phase = tr / abs(tr) if abs(tr) > 0.0 else 1.0
    return float(np.max(np.abs(u - phase * v)))


def exponential_of_zpoly(zp: ZPolynomial) -> np.ndarray:
    """diag(exp(-i*theta_x)) by direct evaluation of the z-product diagonals.

    Independent of both the Walsh butterfly and the gate pipeline, so it can
    referee either one.
    """
    n = zp.n_qubits
    dim = 2**n
    theta = np.full(dim, float(zp.constant))
    xs = np.arange(dim)
    for subset, a in zp.coeffs.items():
        signs = np.ones(dim)
        for q in subset:
            signs *= 1.0 - 2.0 * ((xs >> (n - q)) & 1)
        theta += (0.5 * a) * signs
    return np.diag(np.exp(-1j * theta))


def simulate_grover(n: int, marked: int, iterations: int) -> float:
    """Probability of reading the marked state after the given iterations,
    starting from the uniform superposition."""
    if n > MAX_UNITARY_QUBITS:
        raise ValueError(f"{n} qubits exceeds the simulation cap")
    if not 0 <= marked < 2**n:
        raise ValueError(f"basis index {marked} outside 0..{2**n - 1}")
    if iterations < 0:
        raise ValueError("iteration count must be nonnegative")
    state = apply_sequence(build_walsh_hadamard(n), zero_state(n))
    step = build_grover_iteration(n, marked)
    for _ in range(iterations):
        apply_sequence(step, state)
    return float(abs(state[marked]) ** 2)
