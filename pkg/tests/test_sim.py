import pytest

from congestcut.generators import generate
from congestcut.graph import Graph
from congestcut.sim import (
    CongestionError,
    Message,
    NodeProgram,
    SimError,
    SimTimeoutError,
    msg,
    run,
)


class BroadcastIdOnce(NodeProgram):
    def on_round(self, round_no, inbox):
        if round_no == 1:
            return [(nb, msg(1, self.ctx.node)) for nb in self.ctx.neighbors]
        self.output = sorted(m.values[0] for _, m in inbox)
        self.halted = True
        return ()


def test_broadcast_ids_k3():
    g = generate("complete:3", 0)
    outputs, report = run(g, BroadcastIdOnce)
    assert outputs == [[1, 2], [0, 2], [0, 1]]
    assert report.rounds == 1
    assert report.max_msgs_per_edge_per_round == 1
    assert report.total_messages == 6


class FloodMinSimple(NodeProgram):
    def __init__(self, ctx):
        super().__init__(ctx)
        self.best = ctx.node
        self.dirty = True

    def on_round(self, round_no, inbox):
        for _, m in inbox:
            if m.values[0] < self.best:
                self.best = m.values[0]
                self.dirty = True
        if round_no > self.ctx.n:
            self.output = self.best
            self.halted = True
            return ()
        if self.dirty:
            self.dirty = False
            return [(nb, msg(1, self.best)) for nb in self.ctx.neighbors]
        return ()


def test_flood_min_path():
    g = Graph(5, [(i, i + 1, 1) for i in range(4)])
    outputs, report = run(g, FloodMinSimple)
    assert outputs == [0] * 5
    assert report.rounds <= 5


def test_determinism():
    g = generate("weighted_random:9,0.5,4", 3)
    a = run(g, FloodMinSimple, seed=11)
    b = run(g, FloodMinSimple, seed=11)
    assert a[0] == b[0]
    assert a[1] == b[1]


class TooChatty(NodeProgram):
    def on_round(self, round_no, inbox):
        nb = self.ctx.neighbors[0]
        return [(nb, msg(1, 0)), (nb, msg(1, 1))]


def test_budget_violation():
    g = generate("cycle:4", 0)
    with pytest.raises(CongestionError) as err:
        run(g, TooChatty)
    assert err.value.round_no == 1
    assert err.value.count == 2


def test_budget_two_allows_pairs():
    g = generate("cycle:4", 0)

    class ChattyOnce(TooChatty):
        def on_round(self, round_no, inbox):
            if round_no > 1:
                self.halted = True
                return ()
            return super().on_round(round_no, inbox)

    _, report = run(g, ChattyOnce, budget=2)
    assert report.max_msgs_per_edge_per_round == 2


class NeverHalts(NodeProgram):
    def on_round(self, round_no, inbox):
        return ()


def test_timeout_with_partial_report():
    g = generate("cycle:4", 0)
    with pytest.raises(SimTimeoutError) as err:
        run(g, NeverHalts, max_rounds=7)
    assert len(err.value.active) == 4
    assert err.value.report.rounds == 0


class BadTag(NodeProgram):
    def on_round(self, round_no, inbox):
        return [(self.ctx.neighbors[0], msg(999))]


class FatPayload(NodeProgram):
    def on_round(self, round_no, inbox):
        return [(self.ctx.neighbors[0], msg(1, 1, 2, 3))]


class HugeValue(NodeProgram):
    def on_round(self, round_no, inbox):
        return [(self.ctx.neighbors[0], msg(1, 10**60))]


class NotANeighbor(NodeProgram):
    def on_round(self, round_no, inbox):
        return [((self.ctx.node + 2) % self.ctx.n, msg(1))]


@pytest.mark.parametrize("prog", [BadTag, FatPayload, HugeValue, NotANeighbor])
def test_message_validation(prog):
    g = generate("cycle:6", 0)
    with pytest.raises(SimError):
        run(g, prog)


class MutatesInput(NodeProgram):
    def on_round(self, round_no, inbox):
        self.ctx.data.append(self.ctx.node)
        self.output = list(self.ctx.data)
        self.halted = True
        return ()


def test_state_isolation():
    g = generate("complete:3", 0)
    shared = [99]
    outputs, _ = run(g, MutatesInput, [shared, shared, shared])
    # every node saw only its own copy, and the caller's object is untouched
    assert outputs == [[99, 0], [99, 1], [99, 2]]
    assert shared == [99]


def test_rng_streams_are_per_node_and_seeded():
    class DrawOne(NodeProgram):
        def on_round(self, round_no, inbox):
            self.output = self.ctx.rng.randrange(10**6)
            self.halted = True
            return ()

    g = generate("complete:3", 0)
    first, _ = run(g, DrawOne, seed=5)
    again, _ = run(g, DrawOne, seed=5)
    other, _ = run(g, DrawOne, seed=6)
    assert first == again
    assert len(set(first)) == 3
    assert first != other


def test_diameter_hint_is_two_approximation():
    from congestcut.graph import exact_diameter
    from congestcut.sim import diameter_hint_for

    for spec in ["cycle:9", "complete:5", "weighted_random:12,0.3,3"]:
        g = generate(spec, 2)
        d = exact_diameter(g)
        hint = diameter_hint_for(g)
        assert d <= hint <= 2 * d
