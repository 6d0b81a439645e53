"""Minimum cut that 1-respects a spanning tree, computed distributively.

Per tree node v let C_v be the cut separating v's subtree. With weighted
degrees d(v) and LCA weights r(v) (total weight of edges whose endpoint LCA
is v), the subtree sums satisfy w(C_v) = dd(v) - 2*rd(v). The pipeline
computes both sums for every node using fragment-local aggregation plus
O(sqrt n) globally pipelined items, then convergecasts the minimum.

Stages, each its own engine run:
  frag/*      fragment decomposition of the tree (fragments.py)
  childfrags  upcast child-fragment attach points within fragments -> F(v)
  anc         ancestor ids flow down through at most two fragments -> A(v)
  loworigin   (origin, fragment) pairs reconstruct F(u) for all u in A(v)
  deg/*       subtree degree sums: fragment partials + fragment totals
  merge/*     merging-node bits, id broadcast, fragment-root/merging tree
  lca         per-edge three-case LCA resolution over the edge itself
  rho/*       merging tallies summed over the BFS tree, per-ancestor
              counters inside fragments, then subtree sums as in deg/*
  min         convergecast of the smallest non-excluded w(C_v)
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .fragments import FragmentDecomposition, dist_fragment_decompose, fragment_decompose_seq
from .graph import Graph, GraphError
from .programs import bfs_tree, broadcast_items, upcast_items
from .sim import NodeContext, NodeProgram, RoundReport, msg, run
from .tree import RootedTree

TAG_CFRAG = 30
TAG_CFRAG_DONE = 31
TAG_ANC = 32
TAG_ANC_END = 33
TAG_LOW = 34
TAG_LOW_END = 35
TAG_PART = 36
TAG_BIT = 37
TAG_INFO = 40
TAG_CASE = 41
TAG_CHAIN = 42
TAG_CHAIN_END = 43
TAG_KEYSUM = 44
TAG_RHOC = 45
TAG_MIN = 46
TAG_MIN_NONE = 47


# -- sequential reference ----------------------------------------------------


@dataclass(frozen=True)
class CutProfile:
    """Per-node subtree degree sums, LCA-weight sums, and cut values."""

    delta_down: tuple[int, ...]
    rho_down: tuple[int, ...]
    cut_values: tuple[int, ...]


def cut_profile_seq(g: Graph, t: RootedTree) -> CutProfile:
    """Direct evaluation of dd, rd, and w(C_v) by tree traversal."""
    n = g.n
    dd = [g.degree(v) for v in range(n)]
    rd = [0] * n
    for u, v, w in g.edges:
        rd[t.lca(u, v)] += w
    order = t.topo_order()
    for v in reversed(order[1:]):
        p = t.parent[v]
        dd[p] += dd[v]
        rd[p] += rd[v]
    cuts = tuple(dd[v] - 2 * rd[v] for v in range(n))
    return CutProfile(tuple(dd), tuple(rd), cuts)


def ancestors_seq(t: RootedTree, decomp: FragmentDecomposition) -> list[list[int]]:
    """A(v): ancestors (self included) in v's fragment or its parent fragment,
    deepest first."""
    out = []
    for v in range(t.n):
        mine = decomp.frag_id[v]
        parent_frag = decomp.tf_parent[mine]
        chain = []
        u: Optional[int] = v
        while u is not None and decomp.frag_id[u] in (mine, parent_frag):
            chain.append(u)
            u = t.parent[u]
        out.append(chain)
    return out


def fsets_seq(t: RootedTree, decomp: FragmentDecomposition) -> list[frozenset[int]]:
    """F(v): fragments other than v's own lying entirely inside v's subtree."""
    out = []
    for v in range(t.n):
        sub = t.subtree(v)
        own = decomp.frag_id[v]
        out.append(frozenset(f for f, r in decomp.roots.items() if f != own and r in sub))
    return out


def lowmap_seq(t: RootedTree, decomp: FragmentDecomposition) -> list[dict[int, int]]:
    """Per node: fragment -> lowest strict ancestor whose subtree contains it."""
    fsets = fsets_seq(t, decomp)
    out = []
    for v in range(t.n):
        found: dict[int, int] = {}
        u = t.parent[v]
        while u is not None:
            for f in fsets[u]:
                found.setdefault(f, u)
            u = t.parent[u]
        out.append(found)
    return out


def merging_seq(t: RootedTree, decomp: FragmentDecomposition) -> list[int]:
    """Nodes with two children whose subtrees each contain a whole fragment."""
    fsets = fsets_seq(t, decomp)
    merging = []
    for v in range(t.n):
        heavy = 0
        for c in t.children[v]:
            if fsets[c] or decomp.roots.get(decomp.frag_id[c]) == c:
                heavy += 1
        if heavy >= 2:
            merging.append(v)
    return sorted(merging)


def tfprime_seq(t: RootedTree, decomp: FragmentDecomposition) -> dict[int, Optional[int]]:
    """Tree on fragment roots and merging nodes: parent = lowest such ancestor."""
    members = set(decomp.roots.values()) | set(merging_seq(t, decomp))
    out: dict[int, Optional[int]] = {}
    for v in members:
        u = t.parent[v]
        while u is not None and u not in members:
            u = t.parent[u]
        out[v] = u
    return out


# -- distributed stage programs ----------------------------------------------


class _ChildFragUpcast(NodeProgram):
    """Collect, per node, the child fragments attached inside its subtree.

    data = (parent if same fragment else None, same-fragment children,
    directly attached child fragment ids). Output: sorted collected ids.
    """

    def __init__(self, ctx: NodeContext):
        super().__init__(ctx)
        parent, children, attach = ctx.data
        self.parent = parent
        self.waiting = set(children)
        self.queue = deque(sorted(attach))
        self.seen = set(attach)

    def on_round(self, round_no, inbox):
        for sender, m in inbox:
            if m.tag == TAG_CFRAG:
                self.seen.add(m.values[0])
                self.queue.append(m.values[0])
            elif m.tag == TAG_CFRAG_DONE:
                self.waiting.discard(sender)
        if self.parent is None:
            if not self.waiting:
                self.output = sorted(self.seen)
                self.halted = True
            return ()
        if self.queue:
            return [(self.parent, msg(TAG_CFRAG, self.queue.popleft()))]
        if not self.waiting:
            self.output = sorted(self.seen)
            self.halted = True
            return [(self.parent, msg(TAG_CFRAG_DONE))]
        return ()


class _AncDown(NodeProgram):
    """Stream ancestor ids downward, stopping below child fragments.

    data = (parent, ((child, child fragment), ...), own fragment). Ancestors
    arrive deepest-first and contiguously; a stream entry (u, frag_u) is
    forwarded to child c unless it would cross into a grandchild fragment of
    frag_u. Output: A(v) as [(id, fragment), ...] including self.
    """

    def __init__(self, ctx: NodeContext):
        super().__init__(ctx)
        parent, children_frag, my_frag = ctx.data
        self.parent = parent
        self.my_frag = my_frag
        self.children_frag = tuple(children_frag)
        self.chain = [(ctx.node, my_frag)]
        self.queues = {c: deque([(ctx.node, my_frag)]) for c, _ in self.children_frag}
        self.parent_done = parent is None
        self.end_sent: set[int] = set()

    def on_round(self, round_no, inbox):
        for _, m in inbox:
            if m.tag == TAG_ANC:
                u, fu = m.values
                self.chain.append((u, fu))
                for c, fc in self.children_frag:
                    if fu == self.my_frag or fc == self.my_frag:
                        self.queues[c].append((u, fu))
            elif m.tag == TAG_ANC_END:
                self.parent_done = True
        sends = []
        for c, _ in self.children_frag:
            q = self.queues[c]
            if q:
                u, fu = q.popleft()
                sends.append((c, msg(TAG_ANC, u, fu)))
            elif self.parent_done and c not in self.end_sent:
                self.end_sent.add(c)
                sends.append((c, msg(TAG_ANC_END)))
        if self.parent_done and len(self.end_sent) == len(self.children_frag):
            self.output = self.chain
            self.halted = True
        return sends


class _LowOriginDown(NodeProgram):
    """Flood (origin, fragment) pairs downward while the receiver's subtree
    does not already contain the fragment.

    data = (parent, children, own F(v) sorted). Output: {fragment: origin}.
    """

    def __init__(self, ctx: NodeContext):
        super().__init__(ctx)
        parent, children, fset = ctx.data
        self.parent = parent
        self.children = tuple(children)
        self.fset = frozenset(fset)
        self.queue = deque((ctx.node, f) for f in sorted(fset))
        self.lowmap: dict[int, int] = {}
        self.parent_done = parent is None
        self.end_sent = False

    def on_round(self, round_no, inbox):
        for _, m in inbox:
            if m.tag == TAG_LOW:
                u, f = m.values
                self.lowmap[f] = u
                if f not in self.fset:
                    self.queue.append((u, f))
            elif m.tag == TAG_LOW_END:
                self.parent_done = True
        if self.queue:
            u, f = self.queue.popleft()
            return [(c, msg(TAG_LOW, u, f)) for c in self.children]
        if self.parent_done and not self.end_sent:
            self.end_sent = True
            self.output = self.lowmap
            self.halted = True
            return [(c, msg(TAG_LOW_END)) for c in self.children]
        return ()


class _FragPartialSum(NodeProgram):
    """Within-fragment convergecast: each node learns its fragment-local
    subtree sum. data = (parent if same fragment else None, same-fragment
    children, own value)."""

    def __init__(self, ctx: NodeContext):
        super().__init__(ctx)
        self.parent, children, value = ctx.data
        self.waiting = set(children)
        self.acc = value

    def on_round(self, round_no, inbox):
        for sender, m in inbox:
            if m.tag == TAG_PART:
                self.acc += m.values[0]
                self.waiting.discard(sender)
        if self.waiting:
            return ()
        self.output = self.acc
        self.halted = True
        if self.parent is None:
            return ()
        return [(self.parent, msg(TAG_PART, self.acc))]


class _MergeBit(NodeProgram):
    """Children report whether their subtree contains a whole fragment; a
    node with two or more positive children is a merging node.

    data = (parent, children, own bit). Output: merging flag.
    """

    def __init__(self, ctx: NodeContext):
        super().__init__(ctx)
        self.parent, children, self.bit = ctx.data
        self.heavy = 0

    def on_round(self, round_no, inbox):
        if round_no == 1:
            if self.parent is None:
                return ()
            return [(self.parent, msg(TAG_BIT, 1 if self.bit else 0))]
        for _, m in inbox:
            if m.tag == TAG_BIT and m.values[0]:
                self.heavy += 1
        self.output = self.heavy >= 2
        self.halted = True
        return ()


class _LcaProtocol(NodeProgram):
    """Resolve the endpoint LCA of every non-tree edge over the edge itself.

    Round 1 exchanges (fragment, T'_F anchor); round 2 either starts the
    same-fragment chain exchange (case 1) or sends a (bit, z) verdict for
    the subtree test (case 3 and its mirror); with both bits clear the LCA
    is the T'_F ancestor of the two anchors (case 2, a merging node).

    data keys: frag, frag_chain (own-fragment ancestors deepest-first),
    f_of {chain member -> fragment set}, anchor, tfp (T'_F parent map),
    parent, children. Output: (lca per neighbor, fragment tallies keyed by
    own-fragment ancestors, merging tallies).
    """

    def __init__(self, ctx: NodeContext):
        super().__init__(ctx)
        d = ctx.data
        self.frag: int = d["frag"]
        self.frag_chain: list[int] = list(d["frag_chain"])
        self.f_of: dict[int, frozenset] = d["f_of"]
        self.anchor: int = d["anchor"]
        self.tfp: dict[int, Optional[int]] = d["tfp"]
        self.lca: dict[int, int] = {}
        self.frag_tally: dict[int, int] = {}
        self.merge_tally: dict[int, int] = {}
        me = ctx.node
        for c in d["children"]:
            self.lca[c] = me
            self.frag_tally[me] = self.frag_tally.get(me, 0) + ctx.weights[c]
        if d["parent"] is not None:
            self.lca[d["parent"]] = d["parent"]
        tree_nbrs = set(d["children"])
        if d["parent"] is not None:
            tree_nbrs.add(d["parent"])
        self.peers = tuple(nb for nb in ctx.neighbors if nb not in tree_nbrs)
        self.peer_info: dict[int, tuple[int, int]] = {}
        self.case1: set[int] = set()
        self.sent_idx: dict[int, int] = {}
        self.chain_end_sent: set[int] = set()
        self.peer_chain: dict[int, list[int]] = {}
        self.resolved: set[int] = set()
        self.sending_done: set[int] = set()

    def _tf_depth(self, v: int) -> int:
        depth = 0
        while self.tfp[v] is not None:
            v = self.tfp[v]  # type: ignore[assignment]
            depth += 1
        return depth

    def _tf_lca(self, a: int, b: int) -> int:
        da, db = self._tf_depth(a), self._tf_depth(b)
        while da > db:
            a = self.tfp[a]  # type: ignore[assignment]
            da -= 1
        while db > da:
            b = self.tfp[b]  # type: ignore[assignment]
            db -= 1
        while a != b:
            a = self.tfp[a]  # type: ignore[assignment]
            b = self.tfp[b]  # type: ignore[assignment]
        return a

    def _case3_mine(self, peer_frag: int) -> Optional[int]:
        for u in self.frag_chain:
            if peer_frag in self.f_of[u]:
                return u
        return None

    def _resolve_case1(self, nb: int) -> None:
        mine = self.frag_chain
        theirs = self.peer_chain.get(nb, [])
        i, j = len(mine) - 1, len(theirs) - 1
        z = None
        while i >= 0 and j >= 0 and mine[i] == theirs[j]:
            z = mine[i]
            i -= 1
            j -= 1
        assert z is not None, "same-fragment chains must share the fragment root"
        self.lca[nb] = z
        if self.ctx.node < nb:
            self.frag_tally[z] = self.frag_tally.get(z, 0) + self.ctx.weights[nb]
        self.resolved.add(nb)

    def on_round(self, round_no, inbox):
        me = self.ctx.node
        for sender, m in inbox:
            if m.tag == TAG_INFO:
                self.peer_info[sender] = (m.values[0], m.values[1])
            elif m.tag == TAG_CASE:
                flag, z = m.values
                if sender in self.resolved:
                    assert flag == 0, "both endpoints claimed the subtree test"
                    continue
                if flag == 1:
                    self.lca[sender] = z
                else:
                    zz = self._tf_lca(self.anchor, self.peer_info[sender][1])
                    self.lca[sender] = zz
                    if me < sender:
                        self.merge_tally[zz] = self.merge_tally.get(zz, 0) + self.ctx.weights[sender]
                self.resolved.add(sender)
            elif m.tag == TAG_CHAIN:
                self.peer_chain.setdefault(sender, []).append(m.values[0])
            elif m.tag == TAG_CHAIN_END:
                self._resolve_case1(sender)
        sends = []
        if round_no == 1:
            for nb in self.peers:
                sends.append((nb, msg(TAG_INFO, self.frag, self.anchor)))
        elif round_no == 2:
            for nb in self.peers:
                peer_frag = self.peer_info[nb][0]
                if peer_frag == self.frag:
                    self.case1.add(nb)
                    self.sent_idx[nb] = 1
                    sends.append((nb, msg(TAG_CHAIN, self.frag_chain[0])))
                else:
                    my_z = self._case3_mine(peer_frag)
                    if my_z is not None:
                        self.lca[nb] = my_z
                        self.frag_tally[my_z] = self.frag_tally.get(my_z, 0) + self.ctx.weights[nb]
                        self.resolved.add(nb)
                        sends.append((nb, msg(TAG_CASE, 1, my_z)))
                    else:
                        sends.append((nb, msg(TAG_CASE, 0, 0)))
                    self.sending_done.add(nb)
        else:
            for nb in sorted(self.case1):
                idx = self.sent_idx[nb]
                if idx < len(self.frag_chain):
                    self.sent_idx[nb] = idx + 1
                    sends.append((nb, msg(TAG_CHAIN, self.frag_chain[idx])))
                elif nb not in self.chain_end_sent:
                    self.chain_end_sent.add(nb)
                    self.sending_done.add(nb)
                    sends.append((nb, msg(TAG_CHAIN_END)))
        if (
            round_no >= 2
            and len(self.resolved) == len(self.peers)
            and len(self.sending_done) == len(self.peers)
        ):
            self.output = (self.lca, self.frag_tally, self.merge_tally)
            self.halted = True
        return sends


class _KeyedSumUp(NodeProgram):
    """Streaming per-key sums over a tree: emit key i once every child has.

    data = (parent, children, global key tuple, own tally dict). The root
    outputs the totals dict; counters flow in key order so streams align.
    """

    def __init__(self, ctx: NodeContext):
        super().__init__(ctx)
        parent, children, keys, tally = ctx.data
        self.parent = parent
        self.keys = tuple(keys)
        self.acc = [tally.get(k, 0) for k in self.keys]
        self.child_pos = {c: 0 for c in children}
        self.pos = 0

    def on_round(self, round_no, inbox):
        for sender, m in inbox:
            if m.tag == TAG_KEYSUM:
                i = self.child_pos[sender]
                assert m.values[0] == self.keys[i]
                self.acc[i] += m.values[1]
                self.child_pos[sender] = i + 1
        if self.pos < len(self.keys) and all(p > self.pos for p in self.child_pos.values()):
            i = self.pos
            self.pos += 1
            if self.parent is not None:
                if self.pos == len(self.keys):
                    self.output = None
                    self.halted = True
                return [(self.parent, msg(TAG_KEYSUM, self.keys[i], self.acc[i]))]
        if self.pos == len(self.keys):
            self.output = dict(zip(self.keys, self.acc)) if self.parent is None else None
            self.halted = True
        return ()


class _FragAncestorSum(NodeProgram):
    """Per-ancestor tally counters pipelined up each fragment.

    data = (parent if same fragment else None, same-fragment children, own
    fragment chain deepest-first, tally dict keyed by chain members). A
    child's i-th counter names this node's chain[i]; counters merge on the
    way up. Output: total tally weight naming this node within its subtree.
    """

    def __init__(self, ctx: NodeContext):
        super().__init__(ctx)
        parent, children, chain, tally = ctx.data
        self.parent = parent
        self.chain = list(chain)
        self.acc = [tally.get(u, 0) for u in self.chain]
        self.child_pos = {c: 0 for c in children}
        self.pos = 1

    def on_round(self, round_no, inbox):
        for sender, m in inbox:
            if m.tag == TAG_RHOC:
                i = self.child_pos[sender]
                assert m.values[0] == self.chain[i]
                self.acc[i] += m.values[1]
                self.child_pos[sender] = i + 1
        sends = []
        if self.parent is not None and self.pos < len(self.chain):
            if all(p > self.pos for p in self.child_pos.values()):
                i = self.pos
                self.pos += 1
                sends.append((self.parent, msg(TAG_RHOC, self.chain[i], self.acc[i])))
        emitted_all = self.parent is None or self.pos == len(self.chain)
        consumed_all = all(p >= len(self.chain) for p in self.child_pos.values())
        if emitted_all and consumed_all:
            self.output = self.acc[0]
            self.halted = True
        return sends


class _MinCandidate(NodeProgram):
    """Convergecast the lexicographically least (weight, node) candidate.

    data = (parent, children, candidate or None). Root outputs the winner.
    """

    def __init__(self, ctx: NodeContext):
        super().__init__(ctx)
        parent, children, cand = ctx.data
        self.parent = parent
        self.waiting = set(children)
        self.best = cand

    def on_round(self, round_no, inbox):
        for sender, m in inbox:
            if m.tag == TAG_MIN:
                cand = (m.values[0], m.values[1])
                if self.best is None or cand < self.best:
                    self.best = cand
                self.waiting.discard(sender)
            elif m.tag == TAG_MIN_NONE:
                self.waiting.discard(sender)
        if self.waiting:
            return ()
        self.output = self.best
        self.halted = True
        if self.parent is None:
            return ()
        if self.best is None:
            return [(self.parent, msg(TAG_MIN_NONE))]
        return [(self.parent, msg(TAG_MIN, *self.best))]


# -- controller ----------------------------------------------------------------


@dataclass
class OneRespectResult:
    c_star: int
    argmin: int
    profile: CutProfile
    report: RoundReport
    views: list[dict]


def _close_down(tf_parent: dict[int, Optional[int]], direct: Sequence[int]) -> frozenset[int]:
    children: dict[int, list[int]] = {f: [] for f in tf_parent}
    for f, p in tf_parent.items():
        if p is not None:
            children[p].append(f)
    out = set()
    stack = list(direct)
    while stack:
        f = stack.pop()
        if f in out:
            continue
        out.add(f)
        stack.extend(children[f])
    return frozenset(out)


def _subtree_sum_phases(
    g: Graph,
    bfs: RootedTree,
    views: list[dict],
    values: Sequence[int],
    label: str,
    seed: int,
    budget: int,
    reports: list[RoundReport],
) -> list[int]:
    """Fragment partial sums + fragment-total broadcast + local combine."""
    n = g.n
    inputs = []
    for v in range(n):
        view = views[v]
        inputs.append((view["frag_parent_node"], view["same_frag_children"], values[v]))
    partial, rep = run(
        g, _FragPartialSum, inputs, seed=seed, budget=budget, phase=f"{label}/partial", max_rounds=g.n + 8
    )
    reports.append(rep)
    items: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for v in range(n):
        if views[v]["is_frag_root"]:
            items[v].append((views[v]["frag"], partial[v]))
    totals_list, rep = upcast_items(g, bfs, items, seed=seed + 1, phase=f"{label}/totals-up")
    reports.append(rep)
    bc, rep = broadcast_items(g, bfs, sorted(totals_list), seed=seed + 2, phase=f"{label}/totals-down")
    reports.append(rep)
    out = []
    for v in range(n):
        totals = dict(bc[v])
        out.append(partial[v] + sum(totals[f] for f in views[v]["fset"]))
    return out


def one_respect_min_cut(
    g: Graph,
    t: RootedTree,
    *,
    bfs: Optional[RootedTree] = None,
    excluded: Optional[Sequence[bool]] = None,
    seed: int = 0,
    budget: int = 1,
) -> OneRespectResult:
    """Every node learns w(C_v); the minimum over non-excluded, non-root
    nodes (ties to the smaller id) is convergecast and broadcast.

    excluded[v] suppresses node v as a candidate (used by the contraction
    driver for subtrees that do not respect contracted components).
    """
    if not t.spans(g):
        raise GraphError("tree does not span the graph")
    if g.n < 2:
        raise GraphError("need at least two nodes for a cut")
    n = g.n
    root = t.root
    reports: list[RoundReport] = []
    if bfs is None:
        bfs, rep = bfs_tree(g, 0, seed=seed, phase="bfs")
        reports.append(rep)

    decomp, views, rep = dist_fragment_decompose(g, t, bfs, seed=seed + 1, budget=budget)
    reports.append(rep)
    for v in range(n):
        view = views[v]
        view["parent"] = t.parent[v]
        view["children"] = t.children[v]
        view["frag_parent_node"] = (
            t.parent[v]
            if t.parent[v] is not None and view["nbr_frag"][t.parent[v]] == view["frag"]
            else None
        )
        view["same_frag_children"] = tuple(
            c for c in t.children[v] if view["nbr_frag"][c] == view["frag"]
        )
        view["attach"] = sorted(
            view["nbr_frag"][c] for c in t.children[v] if view["nbr_frag"][c] != view["frag"]
        )

    # F(v): child-fragment attach points upcast within fragments, then closed
    # downward through the known fragment tree
    inputs = [
        (views[v]["frag_parent_node"], views[v]["same_frag_children"], views[v]["attach"])
        for v in range(n)
    ]
    direct, rep = run(
        g, _ChildFragUpcast, inputs, seed=seed + 9, budget=budget, phase="childfrags", max_rounds=6 * decomp.threshold + 24
    )
    reports.append(rep)
    for v in range(n):
        views[v]["fset"] = _close_down(views[v]["tf_parent"], direct[v])

    # A(v)
    inputs = [
        (
            t.parent[v],
            tuple((c, views[v]["nbr_frag"][c]) for c in t.children[v]),
            views[v]["frag"],
        )
        for v in range(n)
    ]
    anc, rep = run(
        g, _AncDown, inputs, seed=seed + 10, budget=budget, phase="anc", max_rounds=10 * decomp.threshold + 32
    )
    reports.append(rep)
    for v in range(n):
        views[v]["A"] = anc[v]

    # F(u) for u in A(v), via lowest-origin markers
    inputs = [(t.parent[v], t.children[v], sorted(views[v]["fset"])) for v in range(n)]
    low, rep = run(
        g, _LowOriginDown, inputs, seed=seed + 11, budget=budget, phase="loworigin", max_rounds=2 * n + 32
    )
    reports.append(rep)
    for v in range(n):
        views[v]["lowmap"] = low[v]

    # subtree degree sums
    degrees = [g.degree(v) for v in range(n)]
    delta_down = _subtree_sum_phases(g, bfs, views, degrees, "deg", seed + 12, budget, reports)

    # merging nodes
    inputs = []
    for v in range(n):
        bit = bool(views[v]["fset"]) or views[v]["is_frag_root"]
        inputs.append((t.parent[v], t.children[v], bit))
    merge_flags, rep = run(
        g, _MergeBit, inputs, seed=seed + 15, budget=budget, phase="merge/bits", max_rounds=8
    )
    reports.append(rep)
    items = [[(v, 0)] if merge_flags[v] else [] for v in range(n)]
    got, rep = upcast_items(g, bfs, items, seed=seed + 16, phase="merge/ids-up")
    reports.append(rep)
    bc, rep = broadcast_items(g, bfs, sorted(got), seed=seed + 17, phase="merge/ids-down")
    reports.append(rep)
    for v in range(n):
        views[v]["merging_ids"] = tuple(sorted(mid for mid, _ in bc[v]))

    # T'_F: members are fragment roots and merging nodes; each member's
    # parent is its lowest strict ancestor in the member set, found in A(v)
    tf_edge_items: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for v in range(n):
        view = views[v]
        members = set(view["roots"].values()) | set(view["merging_ids"])
        view["tfprime_members"] = members
        if v in members and v != root:
            parent_member = None
            for u, _ in view["A"][1:]:
                if u in members:
                    parent_member = u
                    break
            assert parent_member is not None, "T'_F parent must appear in A(v)"
            tf_edge_items[v].append((v, parent_member))
    got, rep = upcast_items(g, bfs, tf_edge_items, seed=seed + 18, phase="merge/tf-up")
    reports.append(rep)
    bc, rep = broadcast_items(g, bfs, sorted(got), seed=seed + 19, phase="merge/tf-down")
    reports.append(rep)
    for v in range(n):
        view = views[v]
        tfp: dict[int, Optional[int]] = {u: None for u in view["tfprime_members"]}
        for member, parent_member in bc[v]:
            tfp[member] = parent_member
        view["tfp"] = tfp

    # LCA per edge
    inputs = []
    for v in range(n):
        view = views[v]
        chain_ids = [u for u, _ in view["A"]]
        pos = {u: i for i, u in enumerate(chain_ids)}
        frag_chain = [u for u, f in view["A"] if f == view["frag"]]
        f_of = {}
        for u in frag_chain:
            extra = {
                f
                for f, origin in view["lowmap"].items()
                if origin in pos and pos[origin] <= pos[u]
            }
            f_of[u] = frozenset(view["fset"]) | extra
        anchor = next(u for u, _ in view["A"] if u in view["tfprime_members"])
        inputs.append(
            {
                "frag": view["frag"],
                "frag_chain": frag_chain,
                "f_of": f_of,
                "anchor": anchor,
                "tfp": view["tfp"],
                "parent": t.parent[v],
                "children": t.children[v],
            }
        )
    lca_out, rep = run(
        g, _LcaProtocol, inputs, seed=seed + 20, budget=budget, phase="lca", max_rounds=4 * decomp.threshold + 32
    )
    reports.append(rep)
    for v in range(n):
        views[v]["lca"], views[v]["frag_tally"], views[v]["merge_tally"] = lca_out[v]

    # merging tallies: keyed streaming sum over the BFS tree, then broadcast
    merging_ids = views[0]["merging_ids"]
    rho_extra = [0] * n
    if merging_ids:
        inputs = [
            (bfs.parent[v], bfs.children[v], merging_ids, views[v]["merge_tally"])
            for v in range(n)
        ]
        keyed, rep = run(
            g,
            _KeyedSumUp,
            inputs,
            seed=seed + 21,
            budget=budget,
            phase="rho/merge-up",
            max_rounds=len(merging_ids) + bfs.height + 16,
        )
        reports.append(rep)
        totals = keyed[bfs.root]
        bc, rep = broadcast_items(
            g, bfs, sorted(totals.items()), seed=seed + 22, phase="rho/merge-down"
        )
        reports.append(rep)
        for v in range(n):
            rho_extra[v] = dict(bc[v]).get(v, 0)

    # per-ancestor counters within fragments
    inputs = []
    for v in range(n):
        view = views[v]
        frag_chain = [u for u, f in view["A"] if f == view["frag"]]
        assert set(view["frag_tally"]) <= set(frag_chain)
        inputs.append(
            (view["frag_parent_node"], view["same_frag_children"], frag_chain, view["frag_tally"])
        )
    rho_ii, rep = run(
        g,
        _FragAncestorSum,
        inputs,
        seed=seed + 23,
        budget=budget,
        phase="rho/frag-counters",
        max_rounds=4 * decomp.threshold + 32,
    )
    reports.append(rep)
    rho = [rho_ii[v] + rho_extra[v] for v in range(n)]

    # subtree sums of rho, then the cut values
    rho_down = _subtree_sum_phases(g, bfs, views, rho, "rho", seed + 24, budget, reports)
    total_weight = g.total_weight
    assert delta_down[root] == 2 * total_weight, "root degree sum must be the handshake total"
    assert rho_down[root] == total_weight, "every edge has exactly one LCA"
    cuts = [delta_down[v] - 2 * rho_down[v] for v in range(n)]

    candidates = []
    for v in range(n):
        if v == root or (excluded is not None and excluded[v]):
            candidates.append(None)
        else:
            candidates.append((cuts[v], v))
    if all(c is None for c in candidates):
        raise GraphError("no valid 1-respecting candidate")
    inputs = [(bfs.parent[v], bfs.children[v], candidates[v]) for v in range(n)]
    mins, rep = run(
        g, _MinCandidate, inputs, seed=seed + 25, budget=budget, phase="min", max_rounds=bfs.height + 8
    )
    reports.append(rep)
    c_star, argmin = mins[bfs.root]
    bc, rep = broadcast_items(g, bfs, [(c_star, argmin)], seed=seed + 26, phase="min/announce")
    reports.append(rep)

    for v in range(n):
        views[v]["delta_down"] = delta_down[v]
        views[v]["rho_down"] = rho_down[v]
        views[v]["cut_value"] = cuts[v]
    profile = CutProfile(tuple(delta_down), tuple(rho_down), tuple(cuts))
    return OneRespectResult(
        c_star=c_star,
        argmin=argmin,
        profile=profile,
        report=RoundReport.combine(reports),
        views=views,
    )
