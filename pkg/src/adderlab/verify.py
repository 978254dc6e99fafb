"""Functional verification of adder netlists against integer addition.

The reference is ``oracle_add``: plain Python integer arithmetic, which
shares no code with the netlist evaluator.  Exhaustive checks sweep the
full (a, b, cin) space in vectorized chunks; random checks draw from a
seeded PCG64 stream and always include the corner cases.  Reports cap
the failure list at 32 entries but keep the exact count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .builders import adder_port_names
from .errors import (
    ExhaustiveTooLarge,
    MissingStageMetadata,
    OperandOutOfRange,
    PortContractViolation,
    ZeroWidth,
)
from .netlist import Netlist

FAILURE_CAP = 32
DEFAULT_CASE_CAP = 1 << 21  # full sweep allowed up to width 10
_CHUNK = 1 << 18

def boundary_cases(width: int) -> tuple[tuple[int, int, int], ...]:
    """Corner cases every random check includes: zeros, saturation, wraparound."""
    top = (1 << width) - 1
    return ((0, 0, 0), (top, top, 1), (top, 1, 0), (0, 0, 1))


@dataclass(frozen=True)
class Failure:
    """One mismatching case, oracle values alongside the netlist's."""

    a: int
    b: int
    cin: int
    expected_sum: int
    expected_cout: int
    got_sum: int
    got_cout: int


@dataclass(frozen=True)
class EquivalenceReport:
    netlist: str
    width: int
    mode: str  # "exhaustive" or "random"
    cases_checked: int
    failure_count: int
    failures: tuple[Failure, ...]  # at most FAILURE_CAP, ordered by (a, b, cin)
    seed: int | None = None
    samples: int | None = None
    generator: str | None = None

    @property
    def ok(self) -> bool:
        return self.failure_count == 0


def oracle_add(a: int, b: int, cin: int, width: int) -> tuple[int, int]:
    """Reference semantics: (a + b + cin) as a width-bit sum and a carry-out."""
    if width < 1:
        raise ZeroWidth(f"width must be >= 1, got {width}")
    limit = 1 << width
    if not 0 <= a < limit:
        raise OperandOutOfRange(f"a={a} does not fit in {width} bits")
    if not 0 <= b < limit:
        raise OperandOutOfRange(f"b={b} does not fit in {width} bits")
    if cin not in (0, 1):
        raise OperandOutOfRange(f"cin must be 0 or 1, got {cin}")
    total = a + b + cin
    return total & (limit - 1), int(total >= limit)


def _check_contract(netlist: Netlist, width: int) -> None:
    if width < 1:
        raise ZeroWidth(f"width must be >= 1, got {width}")
    want_in, want_out = adder_port_names(width)
    if set(netlist.input_names) != set(want_in) or set(netlist.output_names) != set(want_out):
        raise PortContractViolation(
            f"netlist '{netlist.name}' does not expose the width-{width} adder ports"
        )


def _case_chunks(width: int):
    """Yield (a, b, cin) uint64 arrays covering the full space in (a, b, cin) order."""
    mask = (1 << width) - 1
    total = 1 << (2 * width + 1)
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.uint64)
        yield (idx >> (width + 1), (idx >> 1) & mask, idx & 1)


def _bit_assignment(width: int, a, b, cin) -> dict:
    asg = {f"a_{i}": ((a >> np.uint64(i)) & 1).astype(np.uint8) for i in range(width)}
    asg |= {f"b_{i}": ((b >> np.uint64(i)) & 1).astype(np.uint8) for i in range(width)}
    asg["cin"] = cin.astype(np.uint8)
    return asg


def _bit_at(value, j: int) -> int:
    """Case j of one output value, whether it is an array or a constant scalar."""
    arr = np.asarray(value)
    return int(arr.reshape(-1)[j]) if arr.ndim else int(arr)


def _packed_outputs(outputs: dict, width: int, n: int):
    """Collapse s_0..s_{w-1} back into integers; broadcast constants to length n."""
    total = np.zeros(n, dtype=np.uint64)
    for i in range(width):
        total |= np.asarray(outputs[f"s_{i}"], dtype=np.uint64) << np.uint64(i)
    cout = np.broadcast_to(np.asarray(outputs["cout"], dtype=np.uint64), (n,))
    return total, cout


def check_exhaustive(netlist: Netlist, width: int, case_cap: int = DEFAULT_CASE_CAP) -> EquivalenceReport:
    """Compare the netlist against oracle_add on every (a, b, cin).

    Parameters
    ----------
    netlist : Netlist
        Anything exposing the adder port contract for ``width``.
    width : int
        Operand width in bits; the sweep covers 2**(2*width+1) cases.
    case_cap : int
        Refuse sweeps larger than this many cases (ExhaustiveTooLarge).
    """
    _check_contract(netlist, width)
    cases = 1 << (2 * width + 1)
    if cases > case_cap:
        raise ExhaustiveTooLarge(
            f"width {width} needs {cases} cases, over the cap of {case_cap}"
        )
    mask = np.uint64((1 << width) - 1)
    failures: list[Failure] = []
    failure_count = 0
    for a, b, cin in _case_chunks(width):
        outputs = netlist.evaluate(_bit_assignment(width, a, b, cin))
        got_sum, got_cout = _packed_outputs(outputs, width, len(a))
        total = a + b + cin
        exp_sum = total & mask
        exp_cout = total >> np.uint64(width)
        bad = (got_sum != exp_sum) | (got_cout != exp_cout)
        n_bad = int(np.count_nonzero(bad))
        if not n_bad:
            continue
        failure_count += n_bad
        for j in np.flatnonzero(bad)[: max(0, FAILURE_CAP - len(failures))]:
            failures.append(
                Failure(
                    int(a[j]), int(b[j]), int(cin[j]),
                    int(exp_sum[j]), int(exp_cout[j]),
                    int(got_sum[j]), int(got_cout[j]),
                )
            )
    return EquivalenceReport(
        netlist=netlist.name,
        width=width,
        mode="exhaustive",
        cases_checked=cases,
        failure_count=failure_count,
        failures=tuple(failures),
    )


def check_random(netlist: Netlist, width: int, samples: int, seed: int) -> EquivalenceReport:
    """Compare against oracle_add on seeded random draws plus the corner cases.

    The generator is PCG64 (recorded in the report), and operands are
    drawn as width-sized byte strings, so a given seed replays the same
    cases at any width.  The four corner cases (0,0,0), (max,max,1),
    (max,1,0), (0,0,1) are always prepended.
    """
    _check_contract(netlist, width)
    if samples < 0:
        raise ValueError(f"samples must be >= 0, got {samples}")
    rng = np.random.Generator(np.random.PCG64(seed))
    mask = (1 << width) - 1
    nbytes = (width + 7) // 8
    cases = list(boundary_cases(width))
    for _ in range(samples):
        a = int.from_bytes(rng.bytes(nbytes), "little") & mask
        b = int.from_bytes(rng.bytes(nbytes), "little") & mask
        cases.append((a, b, int(rng.integers(0, 2))))

    n = len(cases)
    a_col = [case[0] for case in cases]
    b_col = [case[1] for case in cases]
    asg = {
        f"a_{i}": np.fromiter(((x >> i) & 1 for x in a_col), np.uint8, n) for i in range(width)
    }
    asg |= {
        f"b_{i}": np.fromiter(((x >> i) & 1 for x in b_col), np.uint8, n) for i in range(width)
    }
    asg["cin"] = np.fromiter((case[2] for case in cases), np.uint8, n)
    outputs = netlist.evaluate(asg)

    expected = [oracle_add(a, b, cin, width) for a, b, cin in cases]
    mismatch = np.zeros(n, dtype=bool)
    for i in range(width):
        exp_bit = np.fromiter(((s >> i) & 1 for s, _ in expected), np.uint8, n)
        mismatch |= np.asarray(outputs[f"s_{i}"], dtype=np.uint8) != exp_bit
    exp_cout = np.fromiter((c for _, c in expected), np.uint8, n)
    mismatch |= np.broadcast_to(np.asarray(outputs["cout"], dtype=np.uint8), (n,)) != exp_cout

    bad = sorted(np.flatnonzero(mismatch), key=lambda j: cases[j])
    failures = []
    for j in bad[:FAILURE_CAP]:
        a, b, cin = cases[j]
        got_sum = sum(_bit_at(outputs[f"s_{i}"], j) << i for i in range(width))
        failures.append(
            Failure(a, b, cin, expected[j][0], expected[j][1], got_sum, _bit_at(outputs["cout"], j))
        )
    return EquivalenceReport(
        netlist=netlist.name,
        width=width,
        mode="random",
        cases_checked=n,
        failure_count=len(bad),
        failures=tuple(failures),
        seed=seed,
        samples=samples,
        generator="pcg64",
    )


def probe_invariant_carry_exclusive(
    netlist: Netlist, width: int, case_cap: int = DEFAULT_CASE_CAP
) -> bool:
    """True iff no stage ever raises its block carry and increment carry together.

    Needs the CarryMerge metadata the carry-increment builder records;
    netlists without it raise MissingStageMetadata.  The sweep is
    exhaustive, so the same case cap as check_exhaustive applies.
    """
    if netlist.carry_merges is None:
        raise MissingStageMetadata(f"netlist '{netlist.name}' has no carry-stage metadata")
    _check_contract(netlist, width)
    cases = 1 << (2 * width + 1)
    if cases > case_cap:
        raise ExhaustiveTooLarge(
            f"width {width} needs {cases} cases, over the cap of {case_cap}"
        )
    if not netlist.carry_merges:
        return True
    for a, b, cin in _case_chunks(width):
        values = netlist.evaluate_nets(_bit_assignment(width, a, b, cin))
        for merge in netlist.carry_merges:
            both = values[merge.block_carry.index] & values[merge.increment_carry.index]
            if np.any(both):
                return False
    return True
