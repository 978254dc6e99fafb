"""Area and delay reporting, plus cross-architecture comparison.

Area is a raw gate census.  That number is technology-independent: it is
not comparable to FPGA LUT or slice counts, where a logic block absorbs
several gates and mappers optimize across them.  Power is not modeled at
all, so comparisons print it as n/a rather than a guess.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .builders import AdderSpec, build_adder
from .errors import AdderLabError, EmptySpecList
from .netlist import DelayModel, GateKind, Netlist
from .verify import check_exhaustive

# compare() verifies rows exhaustively up to this operand width
VERIFY_WIDTH_LIMIT = 12


@dataclass(frozen=True)
class AreaReport:
    """Gate census: per-kind counts, the total, and per-stage counts if labeled."""

    counts: dict[GateKind, int]
    total_gates: int
    by_block: dict[str, int] | None = None


@dataclass(frozen=True)
class DelayReport:
    """Critical path under one delay model.

    ``path`` pairs each gate index on the witnessing path with the
    arrival time at its output; arrivals increase strictly along it.
    """

    model_name: str
    delay: float
    path: tuple[tuple[int, float], ...]


@dataclass(frozen=True)
class ComparisonRow:
    spec: AdderSpec
    area: AreaReport | None
    delay: DelayReport | None
    verified: bool | None  # None: not checked (width over limit or row failed)
    error: str | None = None


@dataclass(frozen=True)
class ComparisonTable:
    rows: tuple[ComparisonRow, ...]
    model_name: str


def area_report(netlist: Netlist) -> AreaReport:
    counts = Counter(gate.kind for gate in netlist.gates)
    stages = Counter(gate.stage for gate in netlist.gates if gate.stage is not None)
    return AreaReport(
        counts=dict(counts),
        total_gates=len(netlist.gates),
        by_block=dict(stages) if stages else None,
    )


def delay_report(netlist: Netlist, model: DelayModel) -> DelayReport:
    delay, path = netlist.critical_path(model)
    arrivals = netlist.arrival_times(model)
    steps = tuple((gi, arrivals[netlist.gates[gi].output.index]) for gi in path)
    return DelayReport(model_name=model.name, delay=delay, path=steps)


def compare(specs, model: DelayModel, verify_widths: bool = True) -> ComparisonTable:
    """Build every spec and tabulate area/delay/verification, in request order.

    Rows whose build fails carry the error instead of numbers; the table
    is still returned.  Verification runs exhaustively for widths up to
    VERIFY_WIDTH_LIMIT and is skipped (verified=None) beyond that.
    """
    specs = list(specs)
    if not specs:
        raise EmptySpecList("no adder specs to compare")
    rows = []
    for spec in specs:
        try:
            netlist = build_adder(spec)
        except AdderLabError as exc:
            rows.append(
                ComparisonRow(spec, None, None, None, error=f"{type(exc).__name__}: {exc}")
            )
            continue
        verified = None
        if verify_widths and spec.width <= VERIFY_WIDTH_LIMIT:
            report = check_exhaustive(
                netlist, spec.width, case_cap=1 << (2 * VERIFY_WIDTH_LIMIT + 1)
            )
            verified = report.ok
        rows.append(
            ComparisonRow(spec, area_report(netlist), delay_report(netlist, model), verified)
        )
    return ComparisonTable(tuple(rows), model.name)


def _verified_text(row: ComparisonRow) -> str:
    if row.error is not None:
        return "error"
    if row.verified is None:
        return "n/a"
    return "true" if row.verified else "false"


def format_comparison(table: ComparisonTable) -> str:
    """Human-readable table; one row per spec plus the fine print."""
    header = ("arch", "width", "block", "gates", f"delay_{table.model_name}", "verified", "power_mW")
    body = []
    for row in table.rows:
        spec = row.spec
        block = str(spec.block_size) if spec.arch.is_cia else "-"
        if row.error is not None:
            gates, delay = "-", "-"
        else:
            gates = str(row.area.total_gates)
            delay = f"{row.delay.delay:.2f}"
        body.append((spec.arch.value, str(spec.width), block, gates, delay, _verified_text(row), "n/a"))
    widths = [max([len(col)] + [len(r[i]) for r in body]) for i, col in enumerate(header)]
    lines = ["  ".join(col.rjust(w) for col, w in zip(header, widths))]
    for r in body:
        lines.append("  ".join(col.rjust(w) for col, w in zip(r, widths)))
    for row in table.rows:
        if row.error is not None:
            lines.append(f"  {row.spec.arch.value}_w{row.spec.width}: {row.error}")
    lines.append("")
    lines.append("power_mW: n/a (no power model).")
    lines.append(
        "gates is a raw gate census; it is not comparable to FPGA LUT or slice"
    )
    lines.append(
        "counts, where technology mapping can absorb a larger netlist into fewer blocks."
    )
    return "\n".join(lines) + "\n"
