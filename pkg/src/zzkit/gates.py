"""Target gate set and gate-sequence containers.

Gate semantics, with I = sigma/2 and all angles in radians:

    RX/RY/RZ(k, theta)  ->  exp(-i * theta * I_k,axis)
    ZZ(k, l, lam)       ->  exp(-i * lam * 2 * I_kz * I_lz)
    PHASE(phi)          ->  exp(-i * phi) * identity

Qubit indices are 1-based; qubit 1 is the most significant bit of a
computational basis index.  ``GateSequence.gates[0]`` acts first on the
state.  Stored angles are reduced to (-2*pi, 2*pi], which never changes
the matrix a gate denotes (every generator above has period 4*pi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

ONE_QUBIT_KINDS = frozenset({"RX", "RY", "RZ"})
GATE_KINDS = ONE_QUBIT_KINDS | {"ZZ", "PHASE"}

_TWO_PI = 2.0 * math.pi
_FOUR_PI = 4.0 * math.pi


class ParseError(ValueError):
    """Raised for malformed text or JSON inputs."""


def normalize_angle(theta: float) -> float:
    """Reduce an angle to (-2*pi, 2*pi] without changing the gate it denotes."""
    if not math.isfinite(theta):
        raise ValueError(f"angle must be finite, got {theta!r}")
    r = math.remainder(theta, _FOUR_PI)  # IEEE remainder is exact; r in [-2pi, 2pi]
    if r <= -_TWO_PI:
        r += _FOUR_PI
    return r


@dataclass(frozen=True)
class Gate:
    """One element of the target gate set."""

    kind: str
    qubits: tuple[int, ...]
    angle: float

    def __post_init__(self) -> None:
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        arity = 0 if self.kind == "PHASE" else (2 if self.kind == "ZZ" else 1)
        if len(self.qubits) != arity:
            raise ValueError(f"{self.kind} takes {arity} qubit(s), got {self.qubits}")
        if any(q < 1 for q in self.qubits):
            raise ValueError(f"qubit indices are 1-based, got {self.qubits}")
        if self.kind == "ZZ" and self.qubits[0] == self.qubits[1]:
            raise ValueError("ZZ needs two distinct qubits")
        object.__setattr__(self, "angle", normalize_angle(self.angle))

    @property
    def is_one_qubit(self) -> bool:
        return self.kind in ONE_QUBIT_KINDS

    def inverse(self) -> "Gate":
        return Gate(self.kind, self.qubits, -self.angle)

    def __str__(self) -> str:
        fields = [self.kind, *map(str, self.qubits), f"{self.angle:.17g}"]
        return " ".join(fields)


def rx(qubit: int, theta: float) -> Gate:
    return Gate("RX", (qubit,), theta)


def ry(qubit: int, theta: float) -> Gate:
    return Gate("RY", (qubit,), theta)


def rz(qubit: int, theta: float) -> Gate:
    return Gate("RZ", (qubit,), theta)


def zz(k: int, l: int, lam: float) -> Gate:
    # ZZ is symmetric in its qubits; store them sorted for deterministic output.
    a, b = sorted((k, l))
    return Gate("ZZ", (a, b), lam)


def gphase(phi: float) -> Gate:
    return Gate("PHASE", (), phi)


@dataclass
class GateSequence:
    """An ordered gate list on a fixed register; gates[0] is applied first."""

    n_qubits: int
    gates: list[Gate] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            raise ValueError("need at least one qubit")
        self.gates = list(self.gates)
        for g in self.gates:
            self._check(g)

    def _check(self, gate: Gate) -> None:
        if any(q > self.n_qubits for q in gate.qubits):
            raise ValueError(f"gate {gate} exceeds register of {self.n_qubits} qubit(s)")

    def append(self, gate: Gate) -> None:
        self._check(gate)
        self.gates.append(gate)

    def extend(self, gates: Iterable[Gate]) -> None:
        for g in gates:
            self.append(g)

    def inverse(self) -> "GateSequence":
        return GateSequence(self.n_qubits, [g.inverse() for g in reversed(self.gates)])

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)

    def __len__(self) -> int:
        return len(self.gates)

    def __getitem__(self, i):
        return self.gates[i]


def format_sequence(seq: GateSequence) -> str:
    """Render a sequence in the line-oriented text format (17 significant digits)."""
    lines = [f"QUBITS {seq.n_qubits}"]
    lines.extend(str(g) for g in seq)
    return "\n".join(lines) + "\n"


def parse_sequence(text: str) -> GateSequence:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("QUBITS"):
        raise ParseError("sequence file must start with a 'QUBITS <n>' line")
    try:
        n = int(lines[0].split()[1])
    except (IndexError, ValueError) as exc:
        raise ParseError(f"bad QUBITS header: {lines[0]!r}") from exc
    seq = GateSequence(n)
    for ln in lines[1:]:
        parts = ln.split()
        kind = parts[0].upper()
        try:
            if kind == "PHASE" and len(parts) == 2:
                seq.append(gphase(float(parts[1])))
            elif kind == "ZZ" and len(parts) == 4:
                seq.append(zz(int(parts[1]), int(parts[2]), float(parts[3])))
            elif kind in ONE_QUBIT_KINDS and len(parts) == 3:
                seq.append(Gate(kind, (int(parts[1]),), float(parts[2])))
            else:
                raise ParseError(f"bad gate line: {ln!r}")
        except ValueError as exc:
            raise ParseError(f"bad gate line: {ln!r}") from exc
    return seq


def write_sequence(seq: GateSequence, path) -> None:
    Path(path).write_text(format_sequence(seq))


def read_sequence(path) -> GateSequence:
    return parse_sequence(Path(path).read_text())
