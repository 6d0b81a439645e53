"""Reusable NodePrograms: BFS trees, floods, and pipelined tree aggregation."""

from __future__ import annotations

from collections import deque
from typing import Any, Optional, Sequence

from .graph import Graph
from .sim import NEVER, Message, NodeContext, NodeProgram, RoundReport, msg, run
from .tree import RootedTree

TAG_BFS = 1
TAG_ITEM = 2
TAG_DONE = 3
TAG_BCAST = 4
TAG_END = 5
TAG_SUM = 6
TAG_FLOOD = 7


class BfsProgram(NodeProgram):
    """Build a BFS tree: adopt the first (shallowest, smallest-id) announcer."""

    def __init__(self, ctx: NodeContext):
        super().__init__(ctx)
        root = ctx.data
        self.dist: Optional[int] = 0 if ctx.node == root else None
        self.parent: Optional[int] = None

    def on_round(self, round_no, inbox):
        if self.dist is None:
            best = None
            for sender, m in inbox:
                if m.tag == TAG_BFS and (best is None or (m.values[0], sender) < best):
                    best = (m.values[0], sender)
            if best is None:
                self.wake_at = NEVER
                return ()
            self.dist = best[0] + 1
            self.parent = best[1]
        self.output = (self.parent, self.dist)
        self.halted = True
        return [(nb, msg(TAG_BFS, self.dist)) for nb in self.ctx.neighbors]


def bfs_tree(g: Graph, root: int = 0, *, seed: int = 0, phase: str = "bfs") -> tuple[RootedTree, RoundReport]:
    outputs, report = run(g, BfsProgram, [root] * g.n, seed=seed, phase=phase)
    parents = [out[0] for out in outputs]
    return RootedTree(root, parents), report


class FloodMinProgram(NodeProgram):
    """Propagate the minimum value over an edge subset for a fixed deadline.

    data = (start value, allowed neighbor tuple, deadline rounds).
    """

    def __init__(self, ctx: NodeContext):
        super().__init__(ctx)
        self.value, self.allowed, self.deadline = ctx.data
        self.dirty = True

    def on_round(self, round_no, inbox):
        for _, m in inbox:
            if m.tag == TAG_FLOOD and m.values[0] < self.value:
                self.value = m.values[0]
                self.dirty = True
        if round_no > self.deadline:
            self.output = self.value
            self.halted = True
            return ()
        if self.dirty:
            self.dirty = False
            return [(nb, msg(TAG_FLOOD, self.value)) for nb in self.allowed]
        self.wake_at = self.deadline + 1
        return ()


def flood_min(
    g: Graph,
    values: Sequence[int],
    allowed: Optional[Sequence[Sequence[int]]] = None,
    deadline: Optional[int] = None,
    *,
    seed: int = 0,
    phase: str = "flood-min",
) -> tuple[list[int], RoundReport]:
    if allowed is None:
        allowed = [g.neighbors(v) for v in range(g.n)]
    if deadline is None:
        deadline = g.n + 1
    inputs = [(values[v], tuple(allowed[v]), deadline) for v in range(g.n)]
    return run(g, FloodMinProgram, inputs, seed=seed, phase=phase, max_rounds=deadline + 2)


class UpcastProgram(NodeProgram):
    """Pipeline items up a rooted tree, one per round per edge.

    data = (parent, children tuple, items). Each node forwards its queue in
    FIFO order and reports DONE once the queue is empty and every child is
    done; the root collects everything.
    """

    def __init__(self, ctx: NodeContext):
        super().__init__(ctx)
        parent, children, items = ctx.data
        self.parent = parent
        self.waiting = set(children)
        self.queue = deque(tuple(it) for it in items)
        self.collected = list(self.queue) if parent is None else None

    def on_round(self, round_no, inbox):
        for sender, m in inbox:
            if m.tag == TAG_ITEM:
                if self.parent is None:
                    self.collected.append(m.values)
                else:
                    self.queue.append(m.values)
            elif m.tag == TAG_DONE:
                self.waiting.discard(sender)
        if self.parent is None:
            if not self.waiting:
                self.output = self.collected
                self.halted = True
            else:
                self.wake_at = NEVER
            return ()
        if self.queue:
            return [(self.parent, msg(TAG_ITEM, *self.queue.popleft()))]
        if not self.waiting:
            self.output = None
            self.halted = True
            return [(self.parent, msg(TAG_DONE))]
        self.wake_at = NEVER
        return ()


def upcast_items(
    g: Graph,
    tree: RootedTree,
    items: Sequence[Sequence[tuple[int, ...]]],
    *,
    seed: int = 0,
    phase: str = "upcast",
) -> tuple[list[tuple[int, ...]], RoundReport]:
    """Collect every node's items at the tree root in O(total + depth) rounds."""
    inputs = [
        (tree.parent[v], tree.children[v], [tuple(it) for it in items[v]]) for v in range(g.n)
    ]
    total = sum(len(its) for its in items)
    max_rounds = total + 2 * (tree.height + 2) + 8
    outputs, report = run(g, UpcastProgram, inputs, seed=seed, phase=phase, max_rounds=max_rounds)
    return outputs[tree.root], report


class BroadcastProgram(NodeProgram):
    """Pipeline a root item list down a rooted tree; every node receives all.

    data = (parent, children tuple, items at root or None).
    """

    def __init__(self, ctx: NodeContext):
        super().__init__(ctx)
        parent, children, items = ctx.data
        self.children = children
        self.received: list[tuple[int, ...]] = []
        self.queue: deque = deque()
        if parent is None:
            self.received = [tuple(it) for it in items]
            self.queue.extend((TAG_BCAST, tuple(it)) for it in items)
            self.queue.append((TAG_END, ()))

    def on_round(self, round_no, inbox):
        for _, m in inbox:
            if m.tag == TAG_BCAST:
                self.received.append(m.values)
                self.queue.append((TAG_BCAST, m.values))
            elif m.tag == TAG_END:
                self.queue.append((TAG_END, ()))
        if not self.queue:
            self.wake_at = NEVER
            return ()
        tag, vals = self.queue.popleft()
        sends = [(c, Message(tag, vals)) for c in self.children]
        if tag == TAG_END:
            self.output = self.received
            self.halted = True
        return sends


def broadcast_items(
    g: Graph,
    tree: RootedTree,
    items: Sequence[tuple[int, ...]],
    *,
    seed: int = 0,
    phase: str = "broadcast",
) -> tuple[list[list[tuple[int, ...]]], RoundReport]:
    inputs = [
        (tree.parent[v], tree.children[v], list(items) if v == tree.root else None)
        for v in range(g.n)
    ]
    max_rounds = len(items) + tree.height + 8
    return run(g, BroadcastProgram, inputs, seed=seed, phase=phase, max_rounds=max_rounds)


class ConvergecastSumProgram(NodeProgram):
    """Every node learns the sum of its subtree's values; root gets the total.

    data = (parent, children tuple, own value).
    """

    def __init__(self, ctx: NodeContext):
        super().__init__(ctx)
        parent, children, value = ctx.data
        self.parent = parent
        self.waiting = set(children)
        self.acc = value

    def on_round(self, round_no, inbox):
        for sender, m in inbox:
            if m.tag == TAG_SUM:
                self.acc += m.values[0]
                self.waiting.discard(sender)
        if self.waiting:
            self.wake_at = NEVER
            return ()
        self.output = self.acc
        self.halted = True
        if self.parent is None:
            return ()
        return [(self.parent, msg(TAG_SUM, self.acc))]


def convergecast_sum(
    g: Graph,
    tree: RootedTree,
    values: Sequence[int],
    *,
    seed: int = 0,
    phase: str = "convergecast",
) -> tuple[list[int], RoundReport]:
    inputs = [(tree.parent[v], tree.children[v], values[v]) for v in range(g.n)]
    max_rounds = tree.height + 8
    return run(g, ConvergecastSumProgram, inputs, seed=seed, phase=phase, max_rounds=max_rounds)
