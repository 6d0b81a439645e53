"""Fragment decomposition: split a spanning tree into O(sqrt n) subtrees of
O(sqrt n) diameter, identify them network-wide, and publish the fragment tree.

A node closes a fragment once the open subtree hanging below it reaches the
size threshold s = ceil(sqrt n); open sizes strictly decrease downward, so
every fragment has depth at most s (diameter at most 2s) and all but the
root fragment have at least s nodes, giving at most ceil(sqrt n) + 1 pieces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .graph import Graph, GraphError
from .programs import broadcast_items, upcast_items
from .sim import NEVER, NodeContext, NodeProgram, RoundReport, msg, run
from .tree import RootedTree

TAG_SIZE = 20
TAG_FROOT = 21
TAG_FPROBE = 22
TAG_FMIN = 23
TAG_FID = 24


def size_threshold(n: int) -> int:
    """Smallest integer at least sqrt(n)."""
    return math.isqrt(n - 1) + 1 if n > 1 else 1


@dataclass
class FragmentDecomposition:
    """Per-node fragment ids plus the globally known fragment tree."""

    frag_id: tuple[int, ...]
    roots: dict[int, int]  # fragment id -> root node (nearest the tree root)
    tf_parent: dict[int, Optional[int]]  # fragment id -> parent fragment id
    threshold: int

    @property
    def k(self) -> int:
        return len(self.roots)

    def members(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for v, f in enumerate(self.frag_id):
            out.setdefault(f, []).append(v)
        return out

    def tf_children(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {f: [] for f in self.roots}
        for f, p in self.tf_parent.items():
            if p is not None:
                out[p].append(f)
        return {f: sorted(c) for f, c in out.items()}

    def descendants(self, frag: int) -> frozenset[int]:
        """Fragment ids in the fragment-tree subtree rooted at frag."""
        kids = self.tf_children()
        out = []
        stack = [frag]
        while stack:
            f = stack.pop()
            out.append(f)
            stack.extend(kids[f])
        return frozenset(out)


def fragment_decompose_seq(tree: RootedTree, threshold: Optional[int] = None) -> FragmentDecomposition:
    """Sequential reference of the size-threshold decomposition rule."""
    n = tree.n
    s = threshold if threshold is not None else size_threshold(n)
    closed = [False] * n
    open_size = [0] * n
    order = tree.topo_order()
    for v in reversed(order):
        size = 1 + sum(open_size[c] for c in tree.children[v] if not closed[c])
        if size >= s or v == tree.root:
            closed[v] = True
            open_size[v] = 0
        else:
            open_size[v] = size
    frag_root = [0] * n
    for v in order:
        frag_root[v] = v if closed[v] else frag_root[tree.parent[v]]  # type: ignore[index]
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(frag_root[v], []).append(v)
    frag_of_root = {r: min(members) for r, members in groups.items()}
    frag_id = tuple(frag_of_root[frag_root[v]] for v in range(n))
    roots = {f: r for r, f in frag_of_root.items()}
    tf_parent: dict[int, Optional[int]] = {}
    for f, r in roots.items():
        p = tree.parent[r]
        tf_parent[f] = None if p is None else frag_id[p]
    return FragmentDecomposition(frag_id, roots, tf_parent, s)


class _SizeWaveProgram(NodeProgram):
    """Bottom-up open-size convergecast applying the closing rule.

    data = (parent, children, threshold). Output: closed flag.
    """

    def __init__(self, ctx: NodeContext):
        super().__init__(ctx)
        self.parent, children, self.s = ctx.data
        self.waiting = set(children)
        self.acc = 1

    def on_round(self, round_no, inbox):
        for sender, m in inbox:
            if m.tag == TAG_SIZE:
                self.acc += m.values[0]
                self.waiting.discard(sender)
        if self.waiting:
            self.wake_at = NEVER
            return ()
        closed = self.acc >= self.s or self.parent is None
        self.output = closed
        self.halted = True
        if self.parent is None:
            return ()
        return [(self.parent, msg(TAG_SIZE, 0 if closed else self.acc))]


class _RootDownProgram(NodeProgram):
    """Closed nodes announce themselves as fragment roots to open descendants.

    data = (children, closed flag). Output: fragment root node id.
    """

    def __init__(self, ctx: NodeContext):
        super().__init__(ctx)
        self.children, self.closed = ctx.data

    def on_round(self, round_no, inbox):
        if self.closed:
            self.output = self.ctx.node
            self.halted = True
            return [(c, msg(TAG_FROOT, self.ctx.node)) for c in self.children]
        for _, m in inbox:
            if m.tag == TAG_FROOT:
                self.output = m.values[0]
                self.halted = True
                return [(c, msg(TAG_FROOT, m.values[0])) for c in self.children]
        self.wake_at = NEVER
        return ()


class _FragIdProgram(NodeProgram):
    """Min-id flood within each fragment, then a neighbor exchange of ids.

    data = (tree neighbors, fragment root node, deadline).
    Output: (frag id, {tree neighbor: frag id}).
    """

    def __init__(self, ctx: NodeContext):
        super().__init__(ctx)
        self.tree_nbrs, self.frag_root, self.deadline = ctx.data
        self.same: list[int] = []
        self.best = ctx.node
        self.dirty = True
        self.nbr_frag: dict[int, int] = {}

    def on_round(self, round_no, inbox):
        for sender, m in inbox:
            if m.tag == TAG_FPROBE and m.values[0] == self.frag_root:
                self.same.append(sender)
            elif m.tag == TAG_FMIN and m.values[0] < self.best:
                self.best = m.values[0]
                self.dirty = True
            elif m.tag == TAG_FID:
                self.nbr_frag[sender] = m.values[0]
        if round_no == 1:
            return [(nb, msg(TAG_FPROBE, self.frag_root)) for nb in self.tree_nbrs]
        if round_no <= 1 + self.deadline:
            if self.dirty:
                self.dirty = False
                return [(nb, msg(TAG_FMIN, self.best)) for nb in sorted(self.same)]
            self.wake_at = 2 + self.deadline
            return ()
        if round_no == 2 + self.deadline:
            return [(nb, msg(TAG_FID, self.best)) for nb in self.tree_nbrs]
        self.output = (self.best, self.nbr_frag)
        self.halted = True
        return ()


def dist_fragment_decompose(
    g: Graph,
    tree: RootedTree,
    bfs: RootedTree,
    *,
    seed: int = 0,
    budget: int = 1,
    phase: str = "frag",
) -> tuple[FragmentDecomposition, list[dict], RoundReport]:
    """Distributed fragment decomposition of a known spanning tree.

    Returns the decomposition, a per-node knowledge dict (fragment id,
    neighbor fragment ids, fragment tree, fragment roots), and the report.
    The fragment tree is published to every node over the given BFS tree.
    """
    n = g.n
    s = size_threshold(n)
    reports = []

    inputs = [(tree.parent[v], tree.children[v], s) for v in range(n)]
    closed, rep = run(g, _SizeWaveProgram, inputs, seed=seed, phase=f"{phase}/sizes", max_rounds=n + 8)
    reports.append(rep)

    inputs = [(tree.children[v], closed[v]) for v in range(n)]
    frag_roots_per_node, rep = run(
        g, _RootDownProgram, inputs, seed=seed + 1, phase=f"{phase}/rooting", max_rounds=s + 8
    )
    reports.append(rep)

    tree_nbr = [tuple(sorted(set(tree.children[v]) | ({tree.parent[v]} if tree.parent[v] is not None else set()))) for v in range(n)]
    deadline = 2 * s + 3
    inputs = [(tree_nbr[v], frag_roots_per_node[v], deadline) for v in range(n)]
    id_out, rep = run(
        g, _FragIdProgram, inputs, seed=seed + 2, phase=f"{phase}/ids", max_rounds=deadline + 8
    )
    reports.append(rep)
    frag_id = [out[0] for out in id_out]
    nbr_frag = [out[1] for out in id_out]

    # fragment roots publish (frag id, root node) and (frag id, parent frag)
    root_items: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    edge_items: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for v in range(n):
        if frag_roots_per_node[v] == v:
            root_items[v].append((frag_id[v], v))
            p = tree.parent[v]
            if p is not None:
                edge_items[v].append((frag_id[v], nbr_frag[v][p]))
    got_roots, rep = upcast_items(g, bfs, root_items, seed=seed + 3, phase=f"{phase}/tf-roots-up")
    reports.append(rep)
    bc_roots, rep = broadcast_items(g, bfs, sorted(got_roots), seed=seed + 4, phase=f"{phase}/tf-roots-down")
    reports.append(rep)
    got_edges, rep = upcast_items(g, bfs, edge_items, seed=seed + 5, phase=f"{phase}/tf-edges-up")
    reports.append(rep)
    bc_edges, rep = broadcast_items(g, bfs, sorted(got_edges), seed=seed + 6, phase=f"{phase}/tf-edges-down")
    reports.append(rep)

    views = []
    for v in range(n):
        roots = {f: r for f, r in bc_roots[v]}
        tf_parent: dict[int, Optional[int]] = {f: None for f in roots}
        for f, p in bc_edges[v]:
            tf_parent[f] = p
        views.append(
            {
                "frag": frag_id[v],
                "frag_root": frag_roots_per_node[v],
                "is_frag_root": frag_roots_per_node[v] == v,
                "nbr_frag": nbr_frag[v],
                "roots": roots,
                "tf_parent": tf_parent,
            }
        )
    decomp = FragmentDecomposition(
        tuple(frag_id), views[0]["roots"], views[0]["tf_parent"], s
    )
    return decomp, views, RoundReport.combine(reports)
