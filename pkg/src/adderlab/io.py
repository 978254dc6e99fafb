"""Interchange and rendering: canonical JSON, Graphviz DOT, structural
Verilog, and CSV comparison tables.

JSON is the only round-trippable format.  Export is canonical (keys
sorted, gates in topological order, nets renumbered densely), so equal
circuits serialize to identical bytes.  DOT and Verilog are one-way
views; CSV serializes comparison tables.
"""

from __future__ import annotations

import heapq
import json
import re

from .analysis import ComparisonTable
from .errors import (
    AdderLabError,
    InvariantViolation,
    NameCollisionAfterSanitization,
    ParseError,
    UnknownGateKind,
    UnsupportedVersion,
)
from .netlist import Constant, GateKind, GateOutput, InputPort, Netlist, NetlistBuilder
from .verify import EquivalenceReport

FORMAT_VERSION = 1


# -- JSON ---------------------------------------------------------------------

def _dense_ids(netlist: Netlist) -> dict[int, int]:
    """Canonical net numbering: input ports, then constants, then gate outputs."""
    mapping: dict[int, int] = {}
    for _, nid in netlist.inputs:
        mapping[nid.index] = len(mapping)
    consts = [net for net in netlist.nets if isinstance(net.driver, Constant)]
    for net in sorted(consts, key=lambda net: net.driver.value):
        mapping[net.id.index] = len(mapping)
    for gi in netlist.topo_order():
        mapping[netlist.gates[gi].output.index] = len(mapping)
    return mapping

def export_json(netlist: Netlist) -> str:
    """Serialize to the canonical interchange document (byte-deterministic)."""
    ids = _dense_ids(netlist)
    doc = {
        "format_version": FORMAT_VERSION,
        "name": netlist.name,
        "inputs": [{"name": name, "net": ids[nid.index]} for name, nid in netlist.inputs],
        "outputs": [{"name": name, "net": ids[nid.index]} for name, nid in netlist.outputs],
        "constants": sorted(
            (
                {"net": ids[net.id.index], "value": net.driver.value}
                for net in netlist.nets
                if isinstance(net.driver, Constant)
            ),
            key=lambda c: c["value"],
        ),
        "gates": [
            {
                "kind": netlist.gates[gi].kind.value,
                "inputs": [ids[nid.index] for nid in netlist.gates[gi].inputs],
                "output": ids[netlist.gates[gi].output.index],
            }
            for gi in netlist.topo_order()
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _field(doc: dict, key: str, kind: type):
    if key not in doc:
        raise ParseError(f"document lacks '{key}'")
    value = doc[key]
    if not isinstance(value, kind):
        raise ParseError(f"'{key}' must be {kind.__name__}")
    return value


def _net_ref(value, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise ParseError(f"{where} must be a non-negative integer net id")
    return value


def _doc_topo(gates: list[dict]) -> list[int]:
    """Topological order of document gates, keyed by output net ids."""
    driver_of = {}
    for gi, gate in enumerate(gates):
        out = gate["output"]
        if out in driver_of:
            raise InvariantViolation(f"net {out} has more than one driver")
        driver_of[out] = gi
    consumers: dict[int, list[int]] = {gi: [] for gi in range(len(gates))}
    indeg = [0] * len(gates)
    for gi, gate in enumerate(gates):
        for ref in gate["inputs"]:
            if ref in driver_of:
                consumers[driver_of[ref]].append(gi)
                indeg[gi] += 1
    ready = [gi for gi in range(len(gates)) if indeg[gi] == 0]
    heapq.heapify(ready)
    order: list[int] = []
    while ready:
        u = heapq.heappop(ready)
        order.append(u)
        for v in consumers[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(ready, v)
    if len(order) != len(gates):
        stuck = min(set(range(len(gates))) - set(order))
        raise InvariantViolation(f"gate {stuck} sits on a combinational loop")
    return order


def import_json(text: str) -> Netlist:
    """Parse and re-validate an interchange document into a fresh netlist.

    Structural problems (multiple drivers, undriven references, bad
    arity, cycles, duplicate ports) raise InvariantViolation; malformed
    documents raise ParseError; foreign kinds or versions raise
    UnknownGateKind / UnsupportedVersion.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    version = _field(doc, "format_version", int)
    if version != FORMAT_VERSION:
        raise UnsupportedVersion(f"format_version {version} is not supported")
    name = _field(doc, "name", str)
    inputs = _field(doc, "inputs", list)
    outputs = _field(doc, "outputs", list)
    constants = _field(doc, "constants", list)
    gates = _field(doc, "gates", list)

    for entry in inputs + outputs:
        if not isinstance(entry, dict):
            raise ParseError("ports must be objects")
        _field(entry, "name", str)
        _net_ref(entry.get("net"), "port net")
    for entry in constants:
        if not isinstance(entry, dict):
            raise ParseError("constants must be objects")
        _net_ref(entry.get("net"), "constant net")
        if entry.get("value") not in (0, 1):
            raise InvariantViolation("constant value must be 0 or 1")
    norm_gates = []
    for gi, entry in enumerate(gates):
        if not isinstance(entry, dict):
            raise ParseError("gates must be objects")
        kind_name = _field(entry, "kind", str)
        try:
            kind = GateKind(kind_name)
        except ValueError:
            raise UnknownGateKind(f"gate {gi} has unknown kind '{kind_name}'") from None
        refs = _field(entry, "inputs", list)
        norm_gates.append(
            {
                "kind": kind,
                "inputs": [_net_ref(r, f"gate {gi} input") for r in refs],
                "output": _net_ref(entry.get("output"), f"gate {gi} output"),
            }
        )
        if not kind.arity_ok(len(refs)):
            raise InvariantViolation(f"gate {gi}: {kind.value} cannot take {len(refs)} input(s)")

    builder = NetlistBuilder(name)
    nets: dict[int, object] = {}

    def claim(ref: int, what: str):
        if ref in nets:
            raise InvariantViolation(f"net {ref} has more than one driver ({what})")

    try:
        for entry in inputs:
            claim(entry["net"], f"input {entry['name']}")
            nets[entry["net"]] = builder.add_input(entry["name"])
        for entry in constants:
            claim(entry["net"], "constant")
            nets[entry["net"]] = builder.constant(entry["value"])
        for gi in _doc_topo(norm_gates):
            gate = norm_gates[gi]
            feeds = []
            for ref in gate["inputs"]:
                if ref not in nets:
                    raise InvariantViolation(f"gate reads undriven net {ref}")
                feeds.append(nets[ref])
            nets[gate["output"]] = builder.add_gate(gate["kind"], feeds)
        for entry in outputs:
            if entry["net"] not in nets:
                raise InvariantViolation(f"output port '{entry['name']}' taps undriven net")
            builder.add_output(entry["name"], nets[entry["net"]])
    except InvariantViolation:
        raise
    except AdderLabError as exc:
        # builder-level complaints (duplicate ports, arity) are document defects
        raise InvariantViolation(str(exc)) from exc
    return builder.finish()


def export_report(report: EquivalenceReport) -> str:
    """Equivalence report as JSON (same canonical conventions as netlists)."""
    doc = {
        "netlist": report.netlist,
        "width": report.width,
        "mode": report.mode,
        "cases_checked": report.cases_checked,
        "failure_count": report.failure_count,
        "failures": [vars(f).copy() for f in report.failures],
        "seed": report.seed,
        "samples": report.samples,
        "generator": report.generator,
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# -- DOT -------------------------------------------------------------------------

def _dot_source(netlist: Netlist, nid) -> str:
    driver = netlist.nets[nid.index].driver
    if isinstance(driver, InputPort):
        return f'"in:{driver.name}"'
    if isinstance(driver, Constant):
        return f'"const{driver.value}"'
    return f"g{driver.gate}"


def export_dot(netlist: Netlist) -> str:
    """Graphviz rendering; carry-increment stages become clusters."""
    lines = [f'digraph "{netlist.name}" {{', "  rankdir=LR;"]
    for name, _ in netlist.inputs:
        lines.append(f'  "in:{name}" [shape=ellipse, label="{name}"];')
    consts = [net for net in netlist.nets if isinstance(net.driver, Constant)]
    for net in sorted(consts, key=lambda net: net.driver.value):
        lines.append(f'  "const{net.driver.value}" [shape=diamond, label="{net.driver.value}"];')
    stages: dict[str, list[int]] = {}
    flat: list[int] = []
    for gi, gate in enumerate(netlist.gates):
        if gate.stage is None:
            flat.append(gi)
        else:
            stages.setdefault(gate.stage, []).append(gi)
    def gate_line(gi: int, pad: str) -> str:
        return f'{pad}g{gi} [shape=box, label="{netlist.gates[gi].kind.value}#{gi}"];'
    for gi in flat:
        lines.append(gate_line(gi, "  "))
    for stage, members in stages.items():
        lines.append(f'  subgraph "cluster_{stage}" {{')
        lines.append(f'    label="{stage}";')
        for gi in members:
            lines.append(gate_line(gi, "    "))
        lines.append("  }")
    for name, _ in netlist.outputs:
        lines.append(f'  "out:{name}" [shape=doubleoctagon, label="{name}"];')
    for gi, gate in enumerate(netlist.gates):
        for nid in gate.inputs:
            lines.append(f"  {_dot_source(netlist, nid)} -> g{gi};")
    for name, nid in netlist.outputs:
        lines.append(f'  {_dot_source(netlist, nid)} -> "out:{name}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- structural Verilog ------------------------------------------------------------

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _sanitize(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_]", "_", name)


def export_verilog(netlist: Netlist) -> str:
    """Gate-primitive structural Verilog: one instance per gate, g<index>."""
    names: dict[int, str] = {}
    taken: dict[str, str] = {}

    def reserve(raw: str, what: str) -> str:
        ident = _sanitize(raw)
        if not _IDENT.match(ident):
            raise ValueError(f"{what} '{raw}' is not an identifier even after sanitizing")
        if ident in taken:
            raise NameCollisionAfterSanitization(
                f"{what} '{raw}' collides with {taken[ident]} as '{ident}'"
            )
        taken[ident] = f"{what} '{raw}'"
        return ident

    module = _sanitize(netlist.name) or "netlist"
    if not _IDENT.match(module):
        module = "netlist"
    in_ports = []
    for name, nid in netlist.inputs:
        ident = reserve(name, "input port")
        names[nid.index] = ident
        in_ports.append(ident)
    out_ports = []
    aliases = []  # output ports tapping an already-named or constant net; wired with a buf
    for name, nid in netlist.outputs:
        ident = reserve(name, "output port")
        if nid.index in names or isinstance(netlist.nets[nid.index].driver, Constant):
            aliases.append((ident, nid))
        else:
            names[nid.index] = ident
        out_ports.append(ident)

    wires = []
    for net in netlist.nets:
        if net.id.index in names:
            continue
        if isinstance(net.driver, Constant):
            names[net.id.index] = f"1'b{net.driver.value}"
        else:
            wire = reserve(f"n{net.id.index}", "wire")
            names[net.id.index] = wire
            wires.append(wire)

    lines = [f"module {module} ({', '.join(in_ports + out_ports)});"]
    for ident in in_ports:
        lines.append(f"  input {ident};")
    for ident in out_ports:
        lines.append(f"  output {ident};")
    for wire in wires:
        lines.append(f"  wire {wire};")
    for gi in netlist.topo_order():
        gate = netlist.gates[gi]
        ops = [names[gate.output.index]] + [names[nid.index] for nid in gate.inputs]
        lines.append(f"  {gate.kind.value.lower()} g{gi} ({', '.join(ops)});")
    for k, (ident, nid) in enumerate(aliases):
        lines.append(f"  buf g{len(netlist.gates) + k} ({ident}, {names[nid.index]});")
    lines.append("endmodule")
    return "\n".join(lines) + "\n"


# -- CSV ------------------------------------------------------------------------------

def export_csv(table: ComparisonTable) -> str:
    """Comparison table as CSV; reals use fixed two-decimal format."""
    lines = ["arch,width,block,gates,delay_gd,verified"]
    for row in table.rows:
        spec = row.spec
        block = str(spec.block_size) if spec.arch.is_cia else "-"
        if row.error is not None:
            gates, delay, verified = "-", "-", "error"
        else:
            gates = str(row.area.total_gates)
            delay = f"{row.delay.delay:.2f}"
            verified = {True: "true", False: "false", None: "n/a"}[row.verified]
        lines.append(f"{spec.arch.value},{spec.width},{block},{gates},{delay},{verified}")
    return "\n".join(lines) + "\n"
