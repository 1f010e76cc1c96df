"""QUBO-based qubit routing: map logical circuits onto coupling graphs.

The pipeline slices a circuit into CNOT-capped layers, encodes the
placement problem of each chunk of layers as a QUBO, solves it with a
pluggable annealing backend, and synthesizes a verified physical circuit
with remote-CNOT, relay-qubit, and SWAP constructions.
"""
from .circuit import Cnot, LogicalCircuit, SingleQubitGate, parse_qasm, to_qasm
from .device import Device, builtin, get_device, load_device, select_subset
from .pipeline import CompileConfig, CompileResult, compile_circuit
from .synthesis import PhysicalCircuit, synthesize, verify_equivalence
from .baseline import compile_naive
from .coeffs import MoveCostModel, RearrangementSample, fit, rmse, uniform_init

__version__ = "0.1.0"

__all__ = [
    "Cnot", "CompileConfig", "CompileResult", "Device", "LogicalCircuit",
    "MoveCostModel", "PhysicalCircuit", "RearrangementSample", "SingleQubitGate",
    "builtin", "compile_circuit", "compile_naive", "fit", "get_device",
    "load_device", "parse_qasm", "rmse", "select_subset", "synthesize",
    "to_qasm", "uniform_init", "verify_equivalence",
]
