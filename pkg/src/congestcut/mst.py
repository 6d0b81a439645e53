"""Distributed minimum spanning tree: Boruvka merging under the engine.

Components elect their minimum outgoing edge by flooding candidates over the
tree edges chosen so far, adopt it, then re-flood labels. Keys are totally
ordered as (key value, endpoint pair), so the MST is unique and equals
sequential Kruskal under the same key; -1 sentinel keys (contraction) are
ordinary key values below every load.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

from .graph import Graph, GraphError
from .sim import NEVER, NodeContext, NodeProgram, RoundReport, msg, run
from .tree import RootedTree

TAG_LABEL = 10
TAG_CAND = 11
TAG_JOIN = 12
TAG_LABEL_FLOOD = 13
TAG_ORIENT = 14


def _enc(n: int, u: int, v: int) -> int:
    a, b = (u, v) if u < v else (v, u)
    return a * n + b


class BoruvkaProgram(NodeProgram):
    """One Boruvka phase per fixed-length window; all nodes count rounds.

    data = {neighbor: edge key}. Output: (sorted tree neighbors, final label).
    """

    def __init__(self, ctx: NodeContext):
        super().__init__(ctx)
        self.keys: dict[int, int] = dict(ctx.data)
        self.label = ctx.node
        self.tree_nbrs: set[int] = set()
        self.nbr_labels: dict[int, int] = {}
        self.cand: Optional[tuple[int, int]] = None
        self.cand_dirty = False
        self.label_dirty = False
        self.window = ctx.n + 2
        self.phase_len = 2 + 2 * self.window

    def _absorb(self, inbox):
        for sender, m in inbox:
            if m.tag == TAG_LABEL:
                self.nbr_labels[sender] = m.values[0]
            elif m.tag == TAG_CAND:
                cand = (m.values[0], m.values[1])
                if self.cand is None or cand < self.cand:
                    self.cand = cand
                    self.cand_dirty = True
            elif m.tag == TAG_JOIN:
                self.tree_nbrs.add(sender)
            elif m.tag == TAG_LABEL_FLOOD:
                if m.values[0] < self.label:
                    self.label = m.values[0]
                    self.label_dirty = True

    def on_round(self, round_no, inbox):
        self._absorb(inbox)
        r = (round_no - 1) % self.phase_len + 1
        n = self.ctx.n
        if r == 1:
            return [(nb, msg(TAG_LABEL, self.label)) for nb in self.ctx.neighbors]
        if r == 2:
            # local minimum outgoing edge, then start the candidate flood
            self.cand = None
            for nb in self.ctx.neighbors:
                if self.nbr_labels[nb] != self.label:
                    cand = (self.keys[nb], _enc(n, self.ctx.node, nb))
                    if self.cand is None or cand < self.cand:
                        self.cand = cand
            self.cand_dirty = False
            if self.cand is not None:
                return [(nb, msg(TAG_CAND, *self.cand)) for nb in sorted(self.tree_nbrs)]
            return ()
        if r <= 1 + self.window:
            if self.cand_dirty:
                self.cand_dirty = False
                return [(nb, msg(TAG_CAND, *self.cand)) for nb in sorted(self.tree_nbrs)]
            # idle until the join round unless a better candidate arrives
            self.wake_at = round_no + (2 + self.window - r)
            return ()
        if r == 2 + self.window:
            if self.cand is None:
                # the component has no outgoing edge, so it spans everything
                self.output = (tuple(sorted(self.tree_nbrs)), self.label)
                self.halted = True
                return ()
            enc = self.cand[1]
            a, b = divmod(enc, n)
            me = self.ctx.node
            if me in (a, b):
                other = b if me == a else a
                if self.nbr_labels.get(other) != self.label:
                    self.tree_nbrs.add(other)
                    return [(other, msg(TAG_JOIN))]
            return ()
        # label re-flood window
        if r == 3 + self.window:
            self.label_dirty = False
            return [(nb, msg(TAG_LABEL_FLOOD, self.label)) for nb in sorted(self.tree_nbrs)]
        if self.label_dirty:
            self.label_dirty = False
            return [(nb, msg(TAG_LABEL_FLOOD, self.label)) for nb in sorted(self.tree_nbrs)]
        # idle until the next phase's label exchange unless re-flooded
        self.wake_at = round_no + (self.phase_len - r) + 1
        return ()


class OrientProgram(NodeProgram):
    """Root the known tree edges at a designated node by claim waves.

    data = (tree neighbor tuple, root id). Output: (parent, children tuple).
    """

    def __init__(self, ctx: NodeContext):
        super().__init__(ctx)
        self.tree_nbrs, self.root = ctx.data

    def on_round(self, round_no, inbox):
        me = self.ctx.node
        if me == self.root:
            self.output = (None, tuple(sorted(self.tree_nbrs)))
            self.halted = True
            return [(nb, msg(TAG_ORIENT)) for nb in sorted(self.tree_nbrs)]
        for sender, m in inbox:
            if m.tag == TAG_ORIENT:
                rest = tuple(sorted(set(self.tree_nbrs) - {sender}))
                self.output = (sender, rest)
                self.halted = True
                return [(nb, msg(TAG_ORIENT)) for nb in rest]
        self.wake_at = NEVER
        return ()


def dist_mst(
    g: Graph,
    edge_keys: Sequence[int],
    *,
    root: int = 0,
    seed: int = 0,
    budget: int = 1,
    phase: str = "mst",
) -> tuple[RootedTree, frozenset[int], RoundReport]:
    """Compute the unique MST under (edge_keys[e], u, v) and root it.

    Returns (rooted tree, chosen edge indices, combined report).
    """
    if len(edge_keys) != g.m:
        raise GraphError(f"need one key per edge: {len(edge_keys)} != {g.m}")
    inputs = []
    for v in range(g.n):
        inputs.append({u: int(edge_keys[i]) for u, i in g.incident(v)})
    phases = max(1, math.ceil(math.log2(max(g.n, 2)))) + 1
    per_phase = 2 + 2 * (g.n + 2)
    outputs, rep1 = run(
        g,
        BoruvkaProgram,
        inputs,
        seed=seed,
        budget=budget,
        phase=f"{phase}/merge",
        max_rounds=phases * per_phase + 4,
    )
    edges = set()
    for v, (nbrs, label) in enumerate(outputs):
        if label != min(range(g.n)):
            raise GraphError(f"node {v} finished with label {label}; merging incomplete")
        for u in nbrs:
            edges.add((min(u, v), max(u, v)))
    if len(edges) != g.n - 1:
        raise GraphError(f"distributed MST chose {len(edges)} edges, expected {g.n - 1}")
    for u, v in edges:
        if g.edge_index(u, v) is None:
            raise GraphError(f"distributed MST chose non-edge ({u}, {v})")
    orient_inputs = [
        (tuple(sorted(u for u in range(g.n) if (min(u, v), max(u, v)) in edges and u != v)), root)
        for v in range(g.n)
    ]
    orient_out, rep2 = run(
        g,
        OrientProgram,
        orient_inputs,
        seed=seed + 1,
        budget=budget,
        phase=f"{phase}/orient",
        max_rounds=g.n + 8,
    )
    parents = [out[0] for out in orient_out]
    tree = RootedTree(root, parents)
    chosen = frozenset(g.edge_index(u, v) for u, v in edges)  # type: ignore[arg-type]
    return tree, chosen, RoundReport.combine([rep1, rep2])
