"""Symbolic product-operator algebra for N spin-1/2 particles.

Operators are tensor products of single-spin factors from {E, Ix, Iy, Iz}
with I = sigma/2, so Ia * Ib = (1/4) delta_ab E + (i/2) eps_abc Ic on each
spin.  A product of two product operators is therefore always a single
product operator up to a scalar, and conjugation of one product operator
by the exponential of another closes after two commutators, which gives
the exact cos/sin rotation formula used by :func:`conjugate_bch`.

Spin indices are 1-based in the public API (spin 1 is the most significant
bit of a computational basis index); positions inside factor tuples are
0-based.  Coefficients absorb all normalization: the conventional basis
element 2**(n-1) * I_1z...I_nz is a factors tuple of Z's with coefficient
2**(n-1).
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

import numpy as np

from .gates import Gate, GateSequence

AXES = ("E", "X", "Y", "Z")

#: Coefficients with magnitude below this are dropped after every operation.
DROP_TOL = 1e-12

# Single-spin multiplication table: (a, b) -> (scalar, result symbol).
_PRODUCT_TABLE: dict[tuple[str, str], tuple[complex, str]] = {}
for _a in AXES:
    _PRODUCT_TABLE[("E", _a)] = (1.0 + 0.0j, _a)
    _PRODUCT_TABLE[(_a, "E")] = (1.0 + 0.0j, _a)
for _a in "XYZ":
    _PRODUCT_TABLE[(_a, _a)] = (0.25 + 0.0j, "E")
for _a, _b, _c in (("X", "Y", "Z"), ("Y", "Z", "X"), ("Z", "X", "Y")):
    _PRODUCT_TABLE[(_a, _b)] = (0.5j, _c)
    _PRODUCT_TABLE[(_b, _a)] = (-0.5j, _c)

# Ladder expansion of each factor over {E, Z, +, -}:
#   Ix = (I+ + I-)/2,   Iy = (I+ - I-)/(2i)
_LADDER = {
    "E": ((1.0 + 0.0j, "E"),),
    "Z": ((1.0 + 0.0j, "Z"),),
    "X": ((0.5 + 0.0j, "+"), (0.5 + 0.0j, "-")),
    "Y": ((-0.5j, "+"), (0.5j, "-")),
}

_DENSE_FACTOR = {
    "E": np.eye(2, dtype=complex),
    "X": np.array([[0, 0.5], [0.5, 0]], dtype=complex),
    "Y": np.array([[0, -0.5j], [0.5j, 0]], dtype=complex),
    "Z": np.array([[0.5, 0], [0, -0.5]], dtype=complex),
}


@dataclass(frozen=True)
class ProductOperator:
    """A scalar multiple of one tensor product of single-spin factors."""

    n_spins: int
    factors: tuple[str, ...]
    coeff: complex = 1.0 + 0.0j

    def __post_init__(self) -> None:
        if self.n_spins < 1:
            raise ValueError("need at least one spin")
        if len(self.factors) != self.n_spins:
            raise ValueError(
                f"{len(self.factors)} factors for {self.n_spins} spins"
            )
        bad = [f for f in self.factors if f not in AXES]
        if bad:
            raise ValueError(f"unknown factors {bad}")
        object.__setattr__(self, "coeff", complex(self.coeff))

    @classmethod
    def identity(cls, n_spins: int, coeff: complex = 1.0) -> "ProductOperator":
        return cls(n_spins, ("E",) * n_spins, coeff)

    @classmethod
    def from_axes(
        cls, n_spins: int, axes: Mapping[int, str], coeff: complex = 1.0
    ) -> "ProductOperator":
        """Build from a {spin: axis} mapping with 1-based spin indices."""
        factors = ["E"] * n_spins
        for spin, axis in axes.items():
            if not 1 <= spin <= n_spins:
                raise ValueError(f"spin {spin} outside 1..{n_spins}")
            factors[spin - 1] = axis.upper()
        return cls(n_spins, tuple(factors), coeff)

    @property
    def is_identity(self) -> bool:
        return all(f == "E" for f in self.factors)

    def scaled(self, scalar: complex) -> "ProductOperator":
        return ProductOperator(self.n_spins, self.factors, self.coeff * scalar)

    def __str__(self) -> str:
        body = " ".join(
            f"I{i + 1}{f.lower()}" for i, f in enumerate(self.factors) if f != "E"
        )
        return f"{_fmt_coeff(self.coeff)} {body}".strip() if body else _fmt_coeff(self.coeff)


def _fmt_coeff(c: complex) -> str:
    if abs(c.imag) < DROP_TOL:
        return f"{c.real:g}"
    if abs(c.real) < DROP_TOL:
        return f"{c.imag:g}i"
    return f"({c.real:g}{c.imag:+g}i)"


def multiply(a: ProductOperator, b: ProductOperator) -> ProductOperator:
    """Operator product a*b, always a single product operator up to scalar."""
    if a.n_spins != b.n_spins:
        raise ValueError("spin counts differ")
    coeff = a.coeff * b.coeff
    factors = []
    for fa, fb in zip(a.factors, b.factors):
        scalar, f = _PRODUCT_TABLE[(fa, fb)]
        coeff *= scalar
        factors.append(f)
    return ProductOperator(a.n_spins, tuple(factors), coeff)


@dataclass
class PauliPolynomial:
    """A finite sum of product operators, stored as factors-tuple -> coefficient."""

    n_spins: int
    terms: dict[tuple[str, ...], complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned: dict[tuple[str, ...], complex] = {}
        for factors, coeff in self.terms.items():
            factors = tuple(factors)
            if len(factors) != self.n_spins:
                raise ValueError(f"term {factors} does not match {self.n_spins} spins")
            if any(f not in AXES for f in factors):
                raise ValueError(f"unknown factors in {factors}")
            c = complex(coeff)
            if abs(c) >= DROP_TOL:
                cleaned[factors] = c
        self.terms = cleaned

    @classmethod
    def zero(cls, n_spins: int) -> "PauliPolynomial":
        return cls(n_spins, {})

    @classmethod
    def from_operator(cls, op: ProductOperator) -> "PauliPolynomial":
        return cls(op.n_spins, {op.factors: op.coeff})

    @classmethod
    def from_operators(cls, ops: Iterable[ProductOperator]) -> "PauliPolynomial":
        ops = list(ops)
        if not ops:
            raise ValueError("need at least one operator (or use zero())")
        acc = cls.zero(ops[0].n_spins)
        for op in ops:
            acc = acc + cls.from_operator(op)
        return acc

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def operators(self) -> Iterator[ProductOperator]:
        for factors, coeff in self.terms.items():
            yield ProductOperator(self.n_spins, factors, coeff)

    def __add__(self, other: "PauliPolynomial") -> "PauliPolynomial":
        if self.n_spins != other.n_spins:
            raise ValueError("spin counts differ")
        terms = dict(self.terms)
        for factors, coeff in other.terms.items():
            terms[factors] = terms.get(factors, 0.0) + coeff
        return PauliPolynomial(self.n_spins, terms)

    def __neg__(self) -> "PauliPolynomial":
        return PauliPolynomial(self.n_spins, {f: -c for f, c in self.terms.items()})

    def __sub__(self, other: "PauliPolynomial") -> "PauliPolynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PauliPolynomial):
            if self.n_spins != other.n_spins:
                raise ValueError("spin counts differ")
            acc = PauliPolynomial.zero(self.n_spins)
            for a in self.operators():
                for b in other.operators():
                    acc = acc + PauliPolynomial.from_operator(multiply(a, b))
            return acc
        return PauliPolynomial(
            self.n_spins, {f: c * other for f, c in self.terms.items()}
        )

    def __rmul__(self, scalar) -> "PauliPolynomial":
        return self * scalar

    def allclose(self, other: "PauliPolynomial", tol: float = 1e-9) -> bool:
        if self.n_spins != other.n_spins:
            return False
        keys = set(self.terms) | set(other.terms)
        return all(
            abs(self.terms.get(k, 0.0) - other.terms.get(k, 0.0)) <= tol for k in keys
        )

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return " + ".join(str(op) for op in self.operators())


def commutator(a: ProductOperator, b: ProductOperator) -> PauliPolynomial:
    """[a, b] = ab - ba, which is zero or a single product operator."""
    ab = multiply(a, b)
    ba = multiply(b, a)
    return PauliPolynomial(a.n_spins, {ab.factors: ab.coeff - ba.coeff})


def poly_commutator(a: PauliPolynomial, b: PauliPolynomial) -> PauliPolynomial:
    acc = PauliPolynomial.zero(a.n_spins)
    for x in a.operators():
        for y in b.operators():
            acc = acc + commutator(x, y)
    return acc


def conjugate_bch(
    generator: ProductOperator, angle: float, target: ProductOperator
) -> PauliPolynomial:
    """exp(-i*angle*B) T exp(+i*angle*B) for product operators B, T.

    The nested commutator [B, [B, T]] is always a nonnegative multiple of T
    for product operators, so the rotation reduces exactly to

        T*cos(sqrt(a)*angle) - (i/sqrt(a))*[B, T]*sin(sqrt(a)*angle)

    and to T unchanged when [B, T] = 0.
    """
    if generator.n_spins != target.n_spins:
        raise ValueError("spin counts differ")
    if abs(generator.coeff.imag) > DROP_TOL * max(1.0, abs(generator.coeff)):
        raise ValueError("generator must be Hermitian (real coefficient)")
    if abs(target.coeff) < DROP_TOL:
        return PauliPolynomial.zero(target.n_spins)
    first = commutator(generator, target)
    if first.is_zero:
        return PauliPolynomial.from_operator(target)
    (c1,) = first.operators()
    second = commutator(generator, c1)
    (c2,) = second.operators()
    if c2.factors != target.factors:
        raise ArithmeticError("double commutator did not close on the target")
    alpha = c2.coeff / target.coeff
    if abs(alpha.imag) > DROP_TOL * max(1.0, abs(alpha)) or alpha.real <= 0.0:
        raise ArithmeticError(f"double commutator ratio {alpha} is not positive real")
    root = math.sqrt(alpha.real)
    cos_c = target.coeff * math.cos(root * angle)
    sin_c = (-1j / root) * c1.coeff * math.sin(root * angle)
    return PauliPolynomial(
        target.n_spins, {target.factors: cos_c, c1.factors: sin_c}
    )


def conjugate_poly(
    generator: ProductOperator, angle: float, poly: PauliPolynomial
) -> PauliPolynomial:
    acc = PauliPolynomial.zero(poly.n_spins)
    for op in poly.operators():
        acc = acc + conjugate_bch(generator, angle, op)
    return acc


def gate_generator(gate: Gate, n_spins: int) -> tuple[ProductOperator, float] | None:
    """The (B, angle) pair with gate = exp(-i*angle*B); None for pure phases."""
    if gate.kind == "PHASE":
        return None
    if gate.kind == "ZZ":
        k, l = gate.qubits
        return ProductOperator.from_axes(n_spins, {k: "Z", l: "Z"}, 2.0), gate.angle
    (k,) = gate.qubits
    return ProductOperator.from_axes(n_spins, {k: gate.kind[1]}, 1.0), gate.angle


def conjugate_by_sequence(
    seq: GateSequence, operator: ProductOperator | PauliPolynomial
) -> PauliPolynomial:
    """U op U^dagger for the full sequence U (gates[0] innermost)."""
    if isinstance(operator, ProductOperator):
        poly = PauliPolynomial.from_operator(operator)
    else:
        poly = operator
    if poly.n_spins != seq.n_qubits:
        raise ValueError("spin counts differ")
    for gate in seq:
        pair = gate_generator(gate, seq.n_qubits)
        if pair is None:
            continue
        generator, angle = pair
        poly = conjugate_poly(generator, angle, poly)
    return poly


@dataclass
class CoherenceProfile:
    """Multiple-quantum content of an operator: which orders p appear, and
    with how much squared weight in the ladder-operator expansion."""

    orders: frozenset[int]
    component_weights: dict[int, float]

    def __post_init__(self) -> None:
        self.orders = frozenset(self.orders)
        if self.orders != {p for p, w in self.component_weights.items() if w > 0.0}:
            raise ValueError("orders must match the nonzero-weight keys")


class Subspace(enum.Enum):
    LONGITUDINAL = "longitudinal"
    ZERO_QUANTUM = "zero-quantum"
    EVEN_ORDER = "even-order"
    GENERAL = "general"


def _as_poly(op: ProductOperator | PauliPolynomial) -> PauliPolynomial:
    if isinstance(op, ProductOperator):
        return PauliPolynomial.from_operator(op)
    return op


def _ladder_terms(poly: PauliPolynomial) -> dict[tuple[str, ...], complex]:
    """Expand X/Y factors into raising/lowering parts, combining across the
    whole polynomial so that cross-term cancellations are visible."""
    acc: dict[tuple[str, ...], complex] = {}
    for factors, coeff in poly.terms.items():
        partial = [((), coeff)]
        for f in factors:
            partial = [
                (done + (sym,), c * scale)
                for done, c in partial
                for scale, sym in _LADDER[f]
            ]
        for done, c in partial:
            acc[done] = acc.get(done, 0.0) + c
    return {k: c for k, c in acc.items() if abs(c) >= DROP_TOL}


def coherence_orders(op: ProductOperator | PauliPolynomial) -> CoherenceProfile:
    """Coherence orders p = (#raising - #lowering) present in the operator."""
    weights: dict[int, float] = {}
    for factors, coeff in _ladder_terms(_as_poly(op)).items():
        p = factors.count("+") - factors.count("-")
        weights[p] = weights.get(p, 0.0) + abs(coeff) ** 2
    return CoherenceProfile(frozenset(weights), weights)


def classify_subspace(op: ProductOperator | PauliPolynomial) -> Subspace:
    """Most specific of longitudinal < zero-quantum < even-order < general."""
    poly = _as_poly(op)
    if all(f in ("E", "Z") for factors in poly.terms for f in factors):
        return Subspace.LONGITUDINAL
    orders = coherence_orders(poly).orders
    if orders <= {0}:
        return Subspace.ZERO_QUANTUM
    if all(p % 2 == 0 for p in orders):
        return Subspace.EVEN_ORDER
    return Subspace.GENERAL


_FACTOR_RE = re.compile(r"^I(\d+)([XYZxyz])$")


def parse_operator(text: str, n_spins: int | None = None) -> PauliPolynomial:
    """Parse operator text like ``"2 I1z I2z"`` or ``"0.5 I1x + 0.5 I1y"``.

    Terms are separated by '+'; each term is an optional coefficient followed
    by factors ``I<spin><axis>`` (axis case-insensitive).  A bare coefficient
    is a multiple of the identity.
    """
    from .gates import ParseError

    raw_terms = [t.strip() for t in text.split("+")]
    parsed: list[tuple[float, dict[int, str]]] = []
    max_spin = 0
    for term in raw_terms:
        tokens = term.split()
        if not tokens:
            raise ParseError(f"empty term in operator {text!r}")
        coeff = 1.0
        start = 0
        if not _FACTOR_RE.match(tokens[0]):
            try:
                coeff = float(tokens[0])
            except ValueError as exc:
                raise ParseError(f"bad coefficient {tokens[0]!r}") from exc
            start = 1
        axes: dict[int, str] = {}
        for tok in tokens[start:]:
            m = _FACTOR_RE.match(tok)
            if not m:
                raise ParseError(f"bad factor {tok!r}")
            spin = int(m.group(1))
            if spin < 1:
                raise ParseError(f"spin indices are 1-based, got {tok!r}")
            if spin in axes:
                raise ParseError(f"spin {spin} repeated within one term")
            axes[spin] = m.group(2).upper()
            max_spin = max(max_spin, spin)
        parsed.append((coeff, axes))
    n = n_spins if n_spins is not None else max(max_spin, 1)
    if max_spin > n:
        raise ParseError(f"operator uses spin {max_spin} but n_spins={n}")
    acc = PauliPolynomial.zero(n)
    for coeff, axes in parsed:
        acc = acc + PauliPolynomial.from_operator(
            ProductOperator.from_axes(n, axes, coeff)
        )
    return acc


def to_matrix(op: ProductOperator | PauliPolynomial) -> np.ndarray:
    """Dense matrix in the computational basis (spin 1 = most significant)."""
    poly = _as_poly(op)
    dim = 2**poly.n_spins
    out = np.zeros((dim, dim), dtype=complex)
    for factors, coeff in poly.terms.items():
        m = np.array([[1.0 + 0.0j]])
        for f in factors:
            m = np.kron(m, _DENSE_FACTOR[f])
        out += coeff * m
    return out
