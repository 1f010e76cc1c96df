"""Logical circuit representation: single-qubit gates plus CNOTs.

Circuits are parsed from an OpenQASM 2.0 subset. Multi-qubit gates other
than ``cx`` are rejected; inputs are expected to be pre-decomposed.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field


class CircuitError(ValueError):
    pass


class MalformedSource(CircuitError):
    """A statement could not be parsed."""


class MultiQubitUnsupported(CircuitError):
    """A gate other than cx acts on two or more qubits."""


class IndexOutOfRange(CircuitError):
    """A qubit index exceeds the declared register size."""


@dataclass(frozen=True)
class SingleQubitGate:
    name: str
    params: tuple[float, ...]
    qubit: int

    def __post_init__(self):
        if not self.name:
            raise CircuitError("single-qubit gate needs a nonempty name")


@dataclass(frozen=True)
class Cnot:
    control: int
    target: int

    def __post_init__(self):
        if self.control == self.target:
            raise CircuitError(f"cx control == target ({self.control})")


Gate = SingleQubitGate | Cnot


@dataclass(frozen=True)
class LogicalCircuit:
    num_qubits: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        if self.num_qubits < 1:
            raise CircuitError("circuit needs at least one qubit")
        for g in self.gates:
            idxs = (g.control, g.target) if isinstance(g, Cnot) else (g.qubit,)
            for q in idxs:
                if not 0 <= q < self.num_qubits:
                    raise IndexOutOfRange(f"qubit {q} out of range for {self.num_qubits}-qubit circuit")

    def cnot_gates(self) -> tuple[Cnot, ...]:
        """CNOT subsequence in program order."""
        return tuple(g for g in self.gates if isinstance(g, Cnot))

    @property
    def num_cnots(self) -> int:
        return len(self.cnot_gates())


# Statements we silently drop: declarations/IO that do not affect routing.
_IGNORED = re.compile(r"^(OPENQASM\b|include\b|creg\b|measure\b|barrier\b|if\b|reset\b)")
_QREG = re.compile(r"^qreg\s+([A-Za-z_][\w]*)\s*\[\s*(\d+)\s*\]$")
_GATE = re.compile(r"^([A-Za-z_][\w]*)\s*(?:\(([^)]*)\))?\s+(.+)$")
_OPERAND = re.compile(r"^([A-Za-z_][\w]*)\s*\[\s*(\d+)\s*\]$")

_CONSTS = {"pi": 3.141592653589793}


def _eval_param(expr: str) -> float:
    """Evaluate a QASM angle expression (numbers, pi, + - * /)."""
    expr = expr.strip()
    if not re.fullmatch(r"[\d\s.eEpi+\-*/()]*", expr):
        raise MalformedSource(f"bad parameter expression: {expr!r}")
    try:
        return float(eval(expr, {"__builtins__": {}}, _CONSTS))  # noqa: S307 - charset-restricted
    except Exception as exc:
        raise MalformedSource(f"bad parameter expression: {expr!r}") from exc


def parse_qasm(text: str) -> LogicalCircuit:
    """Parse an OpenQASM-2.0-subset program into a LogicalCircuit.

    Supported: one qreg, ``cx``, and arbitrary named single-qubit gates
    with optional parenthesized parameters. Comments, include/creg/measure/
    barrier statements are ignored.
    """
    text = re.sub(r"//[^\n]*", "", text)
    num_qubits = None
    reg_name = None
    gates: list[Gate] = []

    for raw in text.split(";"):
        stmt = raw.strip()
        if not stmt or _IGNORED.match(stmt):
            continue
        m = _QREG.match(stmt)
        if m:
            if num_qubits is not None:
                raise MalformedSource("multiple qreg declarations")
            reg_name, num_qubits = m.group(1), int(m.group(2))
            if num_qubits < 1:
                raise MalformedSource("empty qreg")
            continue
        m = _GATE.match(stmt)
        if not m:
            raise MalformedSource(f"unparseable statement: {stmt!r}")
        if num_qubits is None:
            raise MalformedSource("gate before qreg declaration")
        name, params_src, operands_src = m.group(1), m.group(2), m.group(3)
        operands = []
        for op in operands_src.split(","):
            om = _OPERAND.match(op.strip())
            if not om:
                raise MalformedSource(f"bad operand in: {stmt!r}")
            if om.group(1) != reg_name:
                raise MalformedSource(f"unknown register {om.group(1)!r}")
            operands.append(int(om.group(2)))
        for q in operands:
            if q >= num_qubits:
                raise IndexOutOfRange(f"qubit {q} out of range in: {stmt!r}")
        params = tuple(_eval_param(p) for p in params_src.split(",")) if params_src else ()
        if name == "cx":
            if len(operands) != 2:
                raise MalformedSource(f"cx needs two operands: {stmt!r}")
            gates.append(Cnot(operands[0], operands[1]))
        elif len(operands) == 1:
            gates.append(SingleQubitGate(name, params, operands[0]))
        else:
            raise MultiQubitUnsupported(f"gate {name!r} on {len(operands)} qubits; pre-decompose the input")

    if num_qubits is None:
        raise MalformedSource("no qreg declaration")
    return LogicalCircuit(num_qubits, tuple(gates))


def _fmt_params(params: tuple[float, ...]) -> str:
    return "(" + ",".join(repr(p) for p in params) + ")" if params else ""


def to_qasm(circuit: LogicalCircuit, reg: str = "q") -> str:
    """Emit the circuit as OpenQASM 2.0 text (round-trips through parse_qasm)."""
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg {reg}[{circuit.num_qubits}];"]
    for g in circuit.gates:
        if isinstance(g, Cnot):
            lines.append(f"cx {reg}[{g.control}],{reg}[{g.target}];")
        else:
            lines.append(f"{g.name}{_fmt_params(g.params)} {reg}[{g.qubit}];")
    return "\n".join(lines) + "\n"


def commutes(a: Cnot, b: Cnot) -> bool:
    """Two CNOTs commute iff they share a control, share a target, or are disjoint."""
    if a.control == b.control or a.target == b.target:
        return True
    return len({a.control, a.target} & {b.control, b.target}) == 0


@dataclass(frozen=True)
class SharedGroup:
    """Maximal run of pairwise-commuting CNOTs sharing one qubit in one role."""
    shared: int
    role: str  # "control" | "target"
    gates: tuple[Cnot, ...] = field(default_factory=tuple)


def commuting_shared_groups(gates: list[Cnot] | tuple[Cnot, ...]) -> list[SharedGroup]:
    """Partition a CNOT sequence into maximal consecutive commuting runs.

    All gates in a run share one qubit in the same role (common control or
    common target). A gate that cannot extend the current run starts a new
    one; concatenating the groups reproduces the input order.
    """
    groups: list[SharedGroup] = []
    run: list[Cnot] = []
    candidates: set[tuple[int, str]] = set()

    def close():
        if not run:
            return
        # Prefer the control role when a singleton (or duplicate run) leaves both open.
        shared, role = min(candidates, key=lambda c: (c[1] != "control", c[0]))
        groups.append(SharedGroup(shared, role, tuple(run)))

    for g in gates:
        own = {(g.control, "control"), (g.target, "target")}
        if run and (candidates & own) and all(commutes(g, h) for h in run):
            candidates &= own
            run.append(g)
        else:
            close()
            run = [g]
            candidates = own
    close()
    return groups
