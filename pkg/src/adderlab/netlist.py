"""Combinational gate-level netlists: construction, evaluation, timing.

A netlist is a directed acyclic graph of AND/OR/XOR/NOT gates over
single-driver nets, with named input and output ports.  ``NetlistBuilder``
is the only supported way to grow one; after ``finish()`` the result is
immutable and safe to share.

Evaluation accepts plain 0/1 integers or numpy arrays of them, so a whole
input space can be simulated in one vectorized pass.  Timing uses a
``DelayModel`` that assigns a base delay per gate kind, optionally scaled
by ceil(log2(fan-in)) for wide gates.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from enum import Enum
from functools import reduce
from operator import and_, or_
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    CombinationalLoop,
    DuplicatePortName,
    FanInViolation,
    MissingInput,
    NetlistFrozen,
    UnknownInput,
    UnknownNet,
)


class GateKind(Enum):
    """Logic primitive.  AND/OR take two or more inputs, XOR exactly two, NOT one."""

    AND = "AND"
    OR = "OR"
    XOR = "XOR"
    NOT = "NOT"

    def arity_ok(self, n: int) -> bool:
        if self is GateKind.NOT:
            return n == 1
        if self is GateKind.XOR:
            return n == 2
        return n >= 2


@dataclass(frozen=True, slots=True)
class NetId:
    """Opaque handle to one net; only valid inside the netlist that issued it."""

    index: int
    owner: int


@dataclass(frozen=True, slots=True)
class InputPort:
    """Net driver: the named primary input."""

    name: str


@dataclass(frozen=True, slots=True)
class Constant:
    """Net driver: a hard 0 or 1."""

    value: int


@dataclass(frozen=True, slots=True)
class GateOutput:
    """Net driver: the output of gate ``gate``."""

    gate: int


Driver = InputPort | Constant | GateOutput


@dataclass(frozen=True, slots=True)
class Net:
    id: NetId
    driver: Driver
    label: str | None = None


@dataclass(frozen=True, slots=True)
class Gate:
    kind: GateKind
    inputs: tuple[NetId, ...]
    output: NetId
    stage: str | None = None


class FaninPenalty(Enum):
    NONE = "none"
    LOG2 = "log2"


@dataclass(frozen=True)
class DelayModel:
    """Per-kind gate delays in dimensionless gate-delay units.

    With ``FaninPenalty.LOG2`` a gate of fan-in f costs
    base * ceil(log2(max(f, 2))), charging wide gates for the tree they
    would decompose into.
    """

    name: str
    base: Mapping[GateKind, float]
    fanin_penalty: FaninPenalty = FaninPenalty.NONE

    def __post_init__(self) -> None:
        for kind in GateKind:
            if kind not in self.base:
                raise ValueError(f"delay model '{self.name}' lacks a delay for {kind.value}")
            if self.base[kind] < 0:
                raise ValueError(f"delay for {kind.value} must be >= 0")

    def gate_delay(self, kind: GateKind, fanin: int) -> float:
        d = self.base[kind]
        if self.fanin_penalty is FaninPenalty.LOG2:
            # ceil(log2(n)) for n >= 2, computed exactly in integers
            d = d * (max(fanin, 2) - 1).bit_length()
        return d

    @staticmethod
    def unit() -> "DelayModel":
        return DelayModel("unit", {k: 1.0 for k in GateKind})

    @staticmethod
    def unit_log2() -> "DelayModel":
        return DelayModel("log2", {k: 1.0 for k in GateKind}, FaninPenalty.LOG2)


def _as_bit(value, name: str):
    """Validate one assignment value: a 0/1 scalar or an integer/bool array of 0/1."""
    if isinstance(value, np.ndarray):
        if value.dtype.kind not in "bui" or not np.all((value == 0) | (value == 1)):
            raise ValueError(f"input '{name}' must contain only bits 0 and 1")
        return value.astype(np.uint8) if value.dtype.kind == "b" else value
    if isinstance(value, (bool, np.bool_)):
        return int(value)
    if isinstance(value, (int, np.integer)):
        if value not in (0, 1):
            raise ValueError(f"input '{name}' must be 0 or 1, got {value}")
        return int(value)
    raise ValueError(f"input '{name}' must be a bit or an array of bits")


def _apply_gate(kind: GateKind, vals: list):
    if kind is GateKind.AND:
        return reduce(and_, vals)
    if kind is GateKind.OR:
        return reduce(or_, vals)
    if kind is GateKind.XOR:
        return vals[0] ^ vals[1]
    return vals[0] ^ 1


class Netlist:
    """Immutable combinational circuit.  Build one with ``NetlistBuilder``."""

    def __init__(
        self,
        name: str,
        nets: tuple[Net, ...],
        gates: tuple[Gate, ...],
        inputs: tuple[tuple[str, NetId], ...],
        outputs: tuple[tuple[str, NetId], ...],
        carry_merges=None,
        _owner: int = 0,
    ):
        self.name = name
        self.nets = nets
        self.gates = gates
        self.inputs = inputs
        self.outputs = outputs
        # Per-stage carry metadata attached by the carry-increment builder;
        # None means "not an increment-style build", () means single block.
        self.carry_merges = carry_merges
        self._owner = _owner
        self._topo: tuple[int, ...] | None = None

    # -- structure ---------------------------------------------------------

    @property
    def input_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.inputs)

    @property
    def output_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.outputs)

    def net(self, net_id: NetId) -> Net:
        """Resolve a handle, rejecting ids issued by another netlist."""
        if (
            not isinstance(net_id, NetId)
            or net_id.owner != self._owner
            or not 0 <= net_id.index < len(self.nets)
        ):
            raise UnknownNet(f"net {net_id!r} does not belong to netlist '{self.name}'")
        return self.nets[net_id.index]

    def topo_order(self) -> tuple[int, ...]:
        """Gate indices in dependency order; ties broken by ascending index."""
        if self._topo is None:
            n = len(self.gates)
            consumers: list[list[int]] = [[] for _ in range(n)]
            indeg = [0] * n
            for gi, gate in enumerate(self.gates):
                for nid in gate.inputs:
                    drv = self.nets[nid.index].driver
                    if isinstance(drv, GateOutput):
                        consumers[drv.gate].append(gi)
                        indeg[gi] += 1
            ready = [gi for gi in range(n) if indeg[gi] == 0]
            heapq.heapify(ready)
            order: list[int] = []
            while ready:
                u = heapq.heappop(ready)
                order.append(u)
                for v in consumers[u]:
                    indeg[v] -= 1
                    if indeg[v] == 0:
                        heapq.heappush(ready, v)
            if len(order) != n:
                stuck = sorted(set(range(n)) - set(order))
                raise CombinationalLoop(
                    f"netlist '{self.name}' has a combinational loop through gate {stuck[0]}",
                    gates=stuck,
                )
            self._topo = tuple(order)
        return self._topo

    def with_gate_kind(self, gate_index: int, kind: GateKind) -> "Netlist":
        """Functional update swapping one gate's kind; used for fault injection."""
        if not 0 <= gate_index < len(self.gates):
            raise UnknownNet(f"no gate {gate_index} in netlist '{self.name}'")
        old = self.gates[gate_index]
        if not kind.arity_ok(len(old.inputs)):
            raise FanInViolation(
                f"{kind.value} cannot take {len(old.inputs)} input(s) at gate {gate_index}"
            )
        gates = list(self.gates)
        gates[gate_index] = Gate(kind, old.inputs, old.output, old.stage)
        return Netlist(
            f"{self.name}~g{gate_index}={kind.value.lower()}",
            self.nets,
            tuple(gates),
            self.inputs,
            self.outputs,
            carry_merges=None,
            _owner=self._owner,
        )

    # -- simulation ----------------------------------------------------------

    def evaluate_nets(self, assignment: Mapping[str, object]) -> list:
        """Value of every net under ``assignment`` (indexed by net id).

        Values may be scalars or numpy arrays; arrays are processed
        elementwise so one call simulates many cases.
        """
        declared = set(self.input_names)
        for key in assignment:
            if key not in declared:
                raise UnknownInput(f"netlist '{self.name}' has no input port '{key}'")
        values: list = [None] * len(self.nets)
        for name, nid in self.inputs:
            if name not in assignment:
                raise MissingInput(f"no value for input port '{name}'")
            values[nid.index] = _as_bit(assignment[name], name)
        for net in self.nets:
            if isinstance(net.driver, Constant):
                values[net.id.index] = net.driver.value
        for gi in self.topo_order():
            gate = self.gates[gi]
            vals = [values[nid.index] for nid in gate.inputs]
            values[gate.output.index] = _apply_gate(gate.kind, vals)
        return values

    def evaluate(self, assignment: Mapping[str, object]) -> dict:
        """Output-port values under ``assignment``, keyed by port name."""
        values = self.evaluate_nets(assignment)
        return {name: values[nid.index] for name, nid in self.outputs}

    # -- timing ----------------------------------------------------------------

    def arrival_times(self, model: DelayModel) -> list[float]:
        """Latest-arrival time of every net; inputs and constants arrive at 0."""
        arr = [0.0] * len(self.nets)
        for gi in self.topo_order():
            gate = self.gates[gi]
            arr[gate.output.index] = max(arr[nid.index] for nid in gate.inputs) + model.gate_delay(
                gate.kind, len(gate.inputs)
            )
        return arr

    def critical_path(self, model: DelayModel) -> tuple[float, list[int]]:
        """Longest register-free path to any output port.

        Returns (delay, gate indices along one witnessing path, inputs to
        outputs).  Ties are broken toward the earliest-declared port and
        the first maximal gate input, so the witness is deterministic.
        """
        arr = [0.0] * len(self.nets)
        pred: list[NetId | None] = [None] * len(self.gates)
        for gi in self.topo_order():
            gate = self.gates[gi]
            best = max(gate.inputs, key=lambda nid: arr[nid.index])
            pred[gi] = best
            arr[gate.output.index] = arr[best.index] + model.gate_delay(gate.kind, len(gate.inputs))
        if not self.outputs:
            return 0.0, []
        end = max((nid for _, nid in self.outputs), key=lambda nid: arr[nid.index])
        delay = arr[end.index]
        path: list[int] = []
        net = end
        while isinstance(self.nets[net.index].driver, GateOutput):
            gi = self.nets[net.index].driver.gate
            path.append(gi)
            net = pred[gi]
        path.reverse()
        return delay, path


_owner_counter = itertools.count(1)


class NetlistBuilder:
    """Accumulates ports and gates, then freezes into a ``Netlist``."""

    def __init__(self, name: str = "netlist"):
        self.name = name
        self._owner = next(_owner_counter)
        self._nets: list[Net] = []
        self._gates: list[Gate] = []
        self._inputs: list[tuple[str, NetId]] = []
        self._outputs: list[tuple[str, NetId]] = []
        self._input_names: set[str] = set()
        self._output_names: set[str] = set()
        self._consts: dict[int, NetId] = {}
        self._finished = False

    @property
    def gate_count(self) -> int:
        return len(self._gates)

    def _require_open(self) -> None:
        if self._finished:
            raise NetlistFrozen(f"netlist '{self.name}' is already finished")

    def _new_net(self, driver: Driver, label: str | None) -> NetId:
        nid = NetId(len(self._nets), self._owner)
        self._nets.append(Net(nid, driver, label))
        return nid

    def _check_net(self, nid) -> None:
        if not isinstance(nid, NetId) or nid.owner != self._owner or not 0 <= nid.index < len(self._nets):
            raise UnknownNet(f"net {nid!r} does not belong to netlist '{self.name}'")

    def declare_port(self, direction: str, name: str, net: NetId | None = None) -> NetId:
        """Declare a named port.  Inputs mint a fresh net; outputs tap an existing one."""
        self._require_open()
        if direction == "input":
            if net is not None:
                raise ValueError("input ports mint their own net; pass net=None")
            if name in self._input_names:
                raise DuplicatePortName(f"input port '{name}' already declared")
            nid = self._new_net(InputPort(name), label=name)
            self._input_names.add(name)
            self._inputs.append((name, nid))
            return nid
        if direction == "output":
            if net is None:
                raise ValueError("output ports need an existing net")
            if name in self._output_names:
                raise DuplicatePortName(f"output port '{name}' already declared")
            self._check_net(net)
            self._output_names.add(name)
            self._outputs.append((name, net))
            return net
        raise ValueError(f"direction must be 'input' or 'output', got {direction!r}")

    def add_input(self, name: str) -> NetId:
        return self.declare_port("input", name)

    def add_output(self, name: str, net: NetId) -> NetId:
        return self.declare_port("output", name, net)

    def constant(self, value: int) -> NetId:
        """Net pinned to 0 or 1; one shared net per value."""
        self._require_open()
        if value not in (0, 1):
            raise ValueError(f"constant must be 0 or 1, got {value}")
        if value not in self._consts:
            self._consts[value] = self._new_net(Constant(value), label=f"const{value}")
        return self._consts[value]

    def add_gate(
        self,
        kind: GateKind,
        inputs: Iterable[NetId],
        label: str | None = None,
        stage: str | None = None,
    ) -> NetId:
        """Append a gate fed by existing nets; returns its freshly minted output net."""
        self._require_open()
        ins = tuple(inputs)
        if not kind.arity_ok(len(ins)):
            raise FanInViolation(f"{kind.value} gate cannot take {len(ins)} input(s)")
        for nid in ins:
            self._check_net(nid)
        out = self._new_net(GateOutput(len(self._gates)), label)
        self._gates.append(Gate(kind, ins, out, stage))
        return out

    def finish(self, carry_merges: Sequence | None = None) -> Netlist:
        """Freeze into an immutable ``Netlist``; the builder rejects further edits."""
        self._require_open()
        self._finished = True
        return Netlist(
            self.name,
            tuple(self._nets),
            tuple(self._gates),
            tuple(self._inputs),
            tuple(self._outputs),
            carry_merges=None if carry_merges is None else tuple(carry_merges),
            _owner=self._owner,
        )
