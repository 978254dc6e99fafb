"""Core netlist behavior: building, freezing, evaluation, topology, timing."""

import itertools

import numpy as np
import pytest

from adderlab import (
    CombinationalLoop,
    Constant,
    DelayModel,
    DuplicatePortName,
    FanInViolation,
    FaninPenalty,
    Gate,
    GateKind,
    GateOutput,
    MissingInput,
    Net,
    NetId,
    Netlist,
    NetlistBuilder,
    NetlistFrozen,
    UnknownInput,
    UnknownNet,
    build_cia,
    build_full_adder,
    build_half_adder,
    build_rca,
    Architecture,
)
from oracle import brute_force_delay


# -- builder rules ---------------------------------------------------------

def test_and_gate_evaluates_conjunction():
    b = NetlistBuilder("t")
    x = b.add_input("x")
    y = b.add_input("y")
    b.add_output("z", b.add_gate(GateKind.AND, [x, y]))
    nl = b.finish()
    for vx, vy in itertools.product((0, 1), repeat=2):
        assert nl.evaluate({"x": vx, "y": vy})["z"] == (vx & vy)


@pytest.mark.parametrize("kind,n_ok,n_bad", [
    (GateKind.AND, 3, 1),
    (GateKind.OR, 2, 1),
    (GateKind.XOR, 2, 3),
    (GateKind.NOT, 1, 2),
])
def test_gate_arity_rules(kind, n_ok, n_bad):
    b = NetlistBuilder("t")
    nets = [b.add_input(f"i{k}") for k in range(3)]
    b.add_gate(kind, nets[:n_ok])
    with pytest.raises(FanInViolation):
        b.add_gate(kind, nets[:n_bad])


def test_wide_and_or_allowed():
    b = NetlistBuilder("t")
    nets = [b.add_input(f"i{k}") for k in range(6)]
    wide_and = b.add_gate(GateKind.AND, nets)
    wide_or = b.add_gate(GateKind.OR, nets)
    b.add_output("a", wide_and)
    b.add_output("o", wide_or)
    nl = b.finish()
    out = nl.evaluate({f"i{k}": 1 for k in range(6)})
    assert out == {"a": 1, "o": 1}
    out = nl.evaluate({f"i{k}": int(k == 3) for k in range(6)})
    assert out == {"a": 0, "o": 1}


def test_foreign_net_rejected():
    b1 = NetlistBuilder("one")
    b2 = NetlistBuilder("two")
    x1 = b1.add_input("x")
    b2.add_input("x")
    with pytest.raises(UnknownNet):
        b2.add_gate(GateKind.NOT, [x1])
    with pytest.raises(UnknownNet):
        b2.add_output("y", x1)


def test_net_lookup_rejects_foreign_handle():
    nl1 = build_half_adder()
    nl2 = build_half_adder()
    foreign = nl2.inputs[0][1]
    with pytest.raises(UnknownNet):
        nl1.net(foreign)
    assert nl1.net(nl1.inputs[0][1]).driver.name == "a"


def test_duplicate_port_names_rejected():
    b = NetlistBuilder("t")
    x = b.add_input("x")
    with pytest.raises(DuplicatePortName):
        b.add_input("x")
    b.add_output("y", x)
    with pytest.raises(DuplicatePortName):
        b.add_output("y", x)


def test_finish_freezes_builder():
    b = NetlistBuilder("t")
    x = b.add_input("x")
    b.add_output("y", b.add_gate(GateKind.NOT, [x]))
    b.finish()
    with pytest.raises(NetlistFrozen):
        b.add_gate(GateKind.NOT, [x])
    with pytest.raises(NetlistFrozen):
        b.add_input("z")
    with pytest.raises(NetlistFrozen):
        b.finish()


def test_constants_share_one_net_per_value():
    b = NetlistBuilder("t")
    c0 = b.constant(0)
    c1 = b.constant(1)
    assert b.constant(0) == c0
    assert b.constant(1) == c1
    b.add_output("z", b.add_gate(GateKind.NOT, [c1]))
    nl = b.finish()
    assert nl.evaluate({})["z"] == 0
    with pytest.raises(ValueError):
        NetlistBuilder("t").constant(2)


# -- evaluation ------------------------------------------------------------

def test_missing_and_unknown_inputs():
    nl = build_half_adder()
    with pytest.raises(MissingInput):
        nl.evaluate({"a": 1})
    with pytest.raises(UnknownInput):
        nl.evaluate({"a": 1, "b": 0, "q": 1})


def test_non_bit_values_rejected():
    nl = build_half_adder()
    with pytest.raises(ValueError):
        nl.evaluate({"a": 2, "b": 0})
    with pytest.raises(ValueError):
        nl.evaluate({"a": np.array([0, 2]), "b": np.array([1, 1])})
    with pytest.raises(ValueError):
        nl.evaluate({"a": 0.5, "b": 0})


def test_evaluate_is_pure():
    nl = build_full_adder()
    asg = {"a": 1, "b": 1, "cin": 0}
    first = nl.evaluate(asg)
    second = nl.evaluate(asg)
    assert first == second == {"s": 0, "cout": 1}


def test_vector_evaluation_matches_scalar():
    nl = build_full_adder()
    rows = list(itertools.product((0, 1), repeat=3))
    vec = nl.evaluate(
        {
            "a": np.array([r[0] for r in rows], dtype=np.uint8),
            "b": np.array([r[1] for r in rows], dtype=np.uint8),
            "cin": np.array([r[2] for r in rows], dtype=np.uint8),
        }
    )
    for j, (a, b, cin) in enumerate(rows):
        scalar = nl.evaluate({"a": a, "b": b, "cin": cin})
        assert scalar["s"] == int(vec["s"][j])
        assert scalar["cout"] == int(vec["cout"][j])


def test_evaluate_nets_exposes_internal_values():
    b = NetlistBuilder("t")
    x = b.add_input("x")
    inv = b.add_gate(GateKind.NOT, [x])
    b.add_output("y", b.add_gate(GateKind.NOT, [inv]))
    nl = b.finish()
    values = nl.evaluate_nets({"x": 0})
    assert values[inv.index] == 1
    assert nl.evaluate({"x": 0})["y"] == 0


def test_bool_arrays_accepted():
    nl = build_half_adder()
    out = nl.evaluate({"a": np.array([True, False]), "b": np.array([True, True])})
    assert list(out["s"]) == [0, 1]
    assert list(out["c"]) == [1, 0]


# -- topology ----------------------------------------------------------------

def test_topo_order_is_deterministic_and_consistent():
    nl = build_cia(8, 4, Architecture.CLA)
    order = nl.topo_order()
    assert order == nl.topo_order()
    position = {gi: k for k, gi in enumerate(order)}
    for gi, gate in enumerate(nl.gates):
        for nid in gate.inputs:
            driver = nl.nets[nid.index].driver
            if isinstance(driver, GateOutput):
                assert position[driver.gate] < position[gi]


def test_builder_order_is_already_topological():
    # builder can only reference existing nets, so indices ascend
    nl = build_rca(6)
    assert nl.topo_order() == tuple(range(len(nl.gates)))


def test_combinational_loop_detected():
    # builders cannot create cycles, so wire one up by hand
    owner = 999
    n0 = NetId(0, owner)
    n1 = NetId(1, owner)
    nets = (Net(n0, GateOutput(1)), Net(n1, GateOutput(0)))
    gates = (
        Gate(GateKind.NOT, (n0,), n1),
        Gate(GateKind.NOT, (n1,), n0),
    )
    looped = Netlist("loop", nets, gates, (), (), _owner=owner)
    with pytest.raises(CombinationalLoop) as exc:
        looped.topo_order()
    assert set(exc.value.gates) == {0, 1}


# -- delay models ----------------------------------------------------------------

def test_unit_model_charges_one_per_gate():
    unit = DelayModel.unit()
    assert unit.gate_delay(GateKind.AND, 2) == 1.0
    assert unit.gate_delay(GateKind.AND, 9) == 1.0
    assert unit.fanin_penalty is FaninPenalty.NONE


@pytest.mark.parametrize("fanin,cost", [(1, 1.0), (2, 1.0), (3, 2.0), (4, 2.0), (5, 3.0), (8, 3.0), (9, 4.0)])
def test_log2_model_charges_tree_depth(fanin, cost):
    log2 = DelayModel.unit_log2()
    assert log2.gate_delay(GateKind.OR, fanin) == cost


def test_delay_model_validation():
    with pytest.raises(ValueError):
        DelayModel("bad", {GateKind.AND: -1.0, GateKind.OR: 1.0, GateKind.XOR: 1.0, GateKind.NOT: 1.0})
    with pytest.raises(ValueError):
        DelayModel("partial", {GateKind.AND: 1.0})


# -- critical path ------------------------------------------------------------------

def test_single_gate_critical_path(unit):
    b = NetlistBuilder("t")
    x = b.add_input("x")
    y = b.add_input("y")
    b.add_output("z", b.add_gate(GateKind.AND, [x, y]))
    nl = b.finish()
    delay, path = nl.critical_path(unit)
    assert delay == 1.0
    assert path == [0]


def test_gateless_netlist_has_zero_delay(unit):
    b = NetlistBuilder("wire")
    x = b.add_input("x")
    b.add_output("y", x)
    nl = b.finish()
    assert nl.critical_path(unit) == (0.0, [])


@pytest.mark.parametrize("builder,expected", [
    (build_half_adder, 1.0),
    (build_full_adder, 3.0),
    (lambda: build_rca(4), 9.0),
])
def test_critical_path_matches_brute_force(builder, expected, unit):
    nl = builder()
    delay, path = nl.critical_path(unit)
    assert delay == expected
    assert delay == brute_force_delay(nl, unit)
    # the witness path must account for exactly the reported delay
    total = sum(unit.gate_delay(nl.gates[gi].kind, len(nl.gates[gi].inputs)) for gi in path)
    assert total == delay


def test_critical_path_witness_is_connected(cia_cla_8_4, unit):
    delay, path = cia_cla_8_4.critical_path(unit)
    for prev, cur in zip(path, path[1:]):
        feeds = {
            nid.index for nid in cia_cla_8_4.gates[cur].inputs
        }
        assert cia_cla_8_4.gates[prev].output.index in feeds


def test_arrivals_cover_every_fanin(cia_rca_8_4, unit, log2):
    # out = max(inputs) + delay, so every input plus the gate cost fits under it
    for model in (unit, log2):
        arrivals = cia_rca_8_4.arrival_times(model)
        for gate in cia_rca_8_4.gates:
            out = arrivals[gate.output.index]
            cost = model.gate_delay(gate.kind, len(gate.inputs))
            assert all(out >= arrivals[nid.index] + cost for nid in gate.inputs)


def test_chaining_gates_never_reduces_delay(unit):
    # growing an inverter chain lengthens the critical path monotonically
    previous = 0.0
    for depth in range(1, 6):
        b = NetlistBuilder("chain")
        net = b.add_input("x")
        for _ in range(depth):
            net = b.add_gate(GateKind.NOT, [net])
        b.add_output("y", net)
        delay, path = b.finish().critical_path(unit)
        assert delay == float(depth)
        assert delay >= previous
        previous = delay


def test_with_gate_kind_swaps_without_touching_original(rca4):
    mutant = rca4.with_gate_kind(0, GateKind.OR)
    assert rca4.gates[0].kind is GateKind.XOR
    assert mutant.gates[0].kind is GateKind.OR
    assert mutant.gates[1:] == rca4.gates[1:]
    with pytest.raises(FanInViolation):
        rca4.with_gate_kind(0, GateKind.NOT)
    with pytest.raises(UnknownNet):
        rca4.with_gate_kind(99, GateKind.AND)
