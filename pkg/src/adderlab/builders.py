"""Adder netlist generators.

Four architectures share one port contract: inputs a_0..a_{w-1},
b_0..b_{w-1}, cin (bit 0 is the LSB); outputs s_0..s_{w-1}, cout.

* ripple-carry (rca): a chain of five-gate full adders.
* carry-lookahead (cla): single-level sum-of-products carries over
  propagate/generate pairs, flattened wide gates; an optional fan-in
  limit rebuilds wide gates as balanced trees.
* carry-increment (cia_rca / cia_cla): the operand is cut into blocks.
  Block 0 consumes the external cin.  Every later block adds its slice
  with a zero carry-in, then a half-adder chain bumps the partial sum by
  the previous stage's effective carry; the stage's own carry-out and
  the chain's carry-out are ORed into the next effective carry.  The two
  can never be 1 together, which is what probe_invariant_carry_exclusive
  checks on the metadata recorded here.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import BadFanIn, BlockTooLarge, ZeroWidth
from .netlist import GateKind, NetId, Netlist, NetlistBuilder


class Architecture(Enum):
    RCA = "rca"
    CLA = "cla"
    CIA_RCA = "cia_rca"
    CIA_CLA = "cia_cla"

    @property
    def is_cia(self) -> bool:
        return self in (Architecture.CIA_RCA, Architecture.CIA_CLA)

    @property
    def block_kind(self) -> "Architecture":
        """The adder used inside one carry-increment block."""
        if self is Architecture.CIA_RCA:
            return Architecture.RCA
        if self is Architecture.CIA_CLA:
            return Architecture.CLA
        return self


@dataclass(frozen=True)
class AdderSpec:
    """Request for one adder netlist.  block_size only matters for CIA archs."""

    arch: Architecture
    width: int
    block_size: int = 4
    max_fanin: int | None = None  # None = unlimited


@dataclass(frozen=True)
class CarryMerge:
    """One per-stage effective-carry OR, kept for invariant probing."""

    stage: int
    block_carry: NetId
    increment_carry: NetId
    gate: int


def adder_port_names(width: int) -> tuple[list[str], list[str]]:
    """The (input, output) port names every adder of this width must expose."""
    ins = [f"a_{i}" for i in range(width)] + [f"b_{i}" for i in range(width)] + ["cin"]
    outs = [f"s_{i}" for i in range(width)] + ["cout"]
    return ins, outs


def _check_width(width: int, what: str = "width") -> None:
    if width < 1:
        raise ZeroWidth(f"{what} must be >= 1, got {width}")


def _check_fanin(max_fanin: int | None) -> None:
    if max_fanin is not None and max_fanin < 2:
        raise BadFanIn(f"max_fanin must be >= 2 or unlimited, got {max_fanin}")


# -- gate-level fragments ----------------------------------------------------

def _half_adder(b: NetlistBuilder, x: NetId, y: NetId, stage: str | None = None):
    s = b.add_gate(GateKind.XOR, [x, y], stage=stage)
    c = b.add_gate(GateKind.AND, [x, y], stage=stage)
    return s, c


def _full_adder(b: NetlistBuilder, x: NetId, y: NetId, cin: NetId, stage: str | None = None):
    # two half adders plus the carry OR: 5 gates
    p, g = _half_adder(b, x, y, stage)
    s, t = _half_adder(b, p, cin, stage)
    cout = b.add_gate(GateKind.OR, [g, t], stage=stage)
    return s, cout


def _ripple_slice(b, a_bits, b_bits, cin, stage=None):
    sums = []
    carry = cin
    for x, y in zip(a_bits, b_bits):
        s, carry = _full_adder(b, x, y, carry, stage)
        sums.append(s)
    return sums, carry


def _tree_reduce(b, kind, nets, max_fanin, stage=None):
    """One gate if the fan-in allows it, else a balanced k-ary tree.

    Leaves fill left subtrees first, so the shape (and the netlist) is
    deterministic for a given input order.
    """
    n = len(nets)
    if n == 1:
        return nets[0]
    if max_fanin is None or n <= max_fanin:
        return b.add_gate(kind, nets, stage=stage)
    cap = max_fanin
    while cap * max_fanin < n:
        cap *= max_fanin
    children = [
        _tree_reduce(b, kind, nets[i : i + cap], max_fanin, stage) for i in range(0, n, cap)
    ]
    return b.add_gate(kind, children, stage=stage)


def _lookahead_slice(b, a_bits, b_bits, cin, max_fanin, stage=None):
    width = len(a_bits)
    p = []
    g = []
    for x, y in zip(a_bits, b_bits):
        p.append(b.add_gate(GateKind.XOR, [x, y], stage=stage))
        g.append(b.add_gate(GateKind.AND, [x, y], stage=stage))
    carries = [cin]
    for i in range(width):
        # c_{i+1} = g_i | p_i g_{i-1} | p_i p_{i-1} g_{i-2} | ... | p_i..p_0 cin
        terms = [g[i]]
        for j in range(i - 1, -1, -1):
            factors = [p[k] for k in range(i, j, -1)] + [g[j]]
            terms.append(_tree_reduce(b, GateKind.AND, factors, max_fanin, stage))
        tail = [p[k] for k in range(i, -1, -1)] + [cin]
        terms.append(_tree_reduce(b, GateKind.AND, tail, max_fanin, stage))
        carries.append(_tree_reduce(b, GateKind.OR, terms, max_fanin, stage))
    sums = [
        b.add_gate(GateKind.XOR, [p[i], carries[i]], stage=stage) for i in range(width)
    ]
    return sums, carries[width]


def _increment_slice(b, x_bits, cin, stage=None):
    ys = []
    carry = cin
    for x in x_bits:
        y, carry = _half_adder(b, x, carry, stage)
        ys.append(y)
    return ys, carry


# -- public builders -----------------------------------------------------------

def build_half_adder() -> Netlist:
    """Two gates: s = a xor b, c = a and b."""
    b = NetlistBuilder("half_adder")
    a = b.add_input("a")
    y = b.add_input("b")
    s, c = _half_adder(b, a, y)
    b.add_output("s", s)
    b.add_output("c", c)
    return b.finish()


def build_full_adder() -> Netlist:
    """Five gates: two half adders plus the carry OR."""
    b = NetlistBuilder("full_adder")
    a = b.add_input("a")
    y = b.add_input("b")
    cin = b.add_input("cin")
    s, cout = _full_adder(b, a, y, cin)
    b.add_output("s", s)
    b.add_output("cout", cout)
    return b.finish()


def _declare_operands(b: NetlistBuilder, width: int):
    a = [b.add_input(f"a_{i}") for i in range(width)]
    y = [b.add_input(f"b_{i}") for i in range(width)]
    cin = b.add_input("cin")
    return a, y, cin


def _finish_adder(b: NetlistBuilder, sums, cout, carry_merges=None) -> Netlist:
    for i, s in enumerate(sums):
        b.add_output(f"s_{i}", s)
    b.add_output("cout", cout)
    return b.finish(carry_merges=carry_merges)


def build_rca(width: int, *, name: str | None = None) -> Netlist:
    """Ripple-carry adder: 5*width gates, carry chained through every bit."""
    _check_width(width)
    b = NetlistBuilder(name or f"rca_w{width}")
    a, y, cin = _declare_operands(b, width)
    sums, cout = _ripple_slice(b, a, y, cin)
    return _finish_adder(b, sums, cout)


def build_cla_block(width: int, max_fanin: int | None = None, *, name: str | None = None) -> Netlist:
    """Single-level carry-lookahead adder with flattened product terms."""
    _check_width(width)
    _check_fanin(max_fanin)
    if name is None:
        name = f"cla_w{width}" + (f"_f{max_fanin}" if max_fanin is not None else "")
    b = NetlistBuilder(name)
    a, y, cin = _declare_operands(b, width)
    sums, cout = _lookahead_slice(b, a, y, cin, max_fanin)
    return _finish_adder(b, sums, cout)


def build_incrementer(width: int, *, name: str | None = None) -> Netlist:
    """Adds a single carry bit into an operand: a chain of width half adders."""
    _check_width(width)
    b = NetlistBuilder(name or f"inc_w{width}")
    xs = [b.add_input(f"x_{i}") for i in range(width)]
    cin = b.add_input("cin")
    ys, cout = _increment_slice(b, xs, cin)
    for i, v in enumerate(ys):
        b.add_output(f"y_{i}", v)
    b.add_output("cout", cout)
    return b.finish()


def build_cia(
    width: int,
    block_size: int,
    block_kind: Architecture,
    max_fanin: int | None = None,
    *,
    name: str | None = None,
) -> Netlist:
    """Carry-increment adder over ``block_size``-bit blocks.

    The last block may be narrower when block_size does not divide width.
    A single-block request degenerates to the plain block adder (with the
    stage metadata still attached, so probes treat it uniformly).
    """
    _check_width(width)
    _check_width(block_size, "block size")
    if block_size > width:
        raise BlockTooLarge(f"block size {block_size} exceeds width {width}")
    if block_kind not in (Architecture.RCA, Architecture.CLA):
        raise ValueError(f"block kind must be RCA or CLA, got {block_kind}")
    _check_fanin(max_fanin)
    if name is None:
        name = f"cia_{block_kind.value}_w{width}_b{block_size}"
        if block_kind is Architecture.CLA and max_fanin is not None:
            name += f"_f{max_fanin}"

    b = NetlistBuilder(name)
    a, y, cin = _declare_operands(b, width)
    sums: list[NetId] = []
    merges: list[CarryMerge] = []
    eff = None
    for k, start in enumerate(range(0, width, block_size)):
        stop = min(start + block_size, width)
        stage = f"block{k}"
        block_cin = cin if k == 0 else b.constant(0)
        if block_kind is Architecture.RCA:
            partial, block_carry = _ripple_slice(b, a[start:stop], y[start:stop], block_cin, stage)
        else:
            partial, block_carry = _lookahead_slice(
                b, a[start:stop], y[start:stop], block_cin, max_fanin, stage
            )
        if k == 0:
            sums.extend(partial)
            eff = block_carry
            continue
        inc_stage = f"inc{k}"
        bumped, inc_carry = _increment_slice(b, partial, eff, inc_stage)
        sums.extend(bumped)
        eff = b.add_gate(GateKind.OR, [block_carry, inc_carry], label=f"eff{k}", stage=inc_stage)
        merges.append(CarryMerge(k, block_carry, inc_carry, b.gate_count - 1))
    return _finish_adder(b, sums, eff, carry_merges=merges)


def build_adder(spec: AdderSpec) -> Netlist:
    """Dispatch on the architecture; the netlist name encodes the shape."""
    if spec.arch is Architecture.RCA:
        return build_rca(spec.width)
    if spec.arch is Architecture.CLA:
        return build_cla_block(spec.width, spec.max_fanin)
    return build_cia(spec.width, spec.block_size, spec.arch.block_kind, spec.max_fanin)
