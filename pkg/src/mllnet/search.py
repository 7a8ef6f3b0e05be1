"""Reduction-graph search: exploration, orthogonality and strategy oracles.

States are identified by ``state_key`` (isomorphism up to daimon target
order).  Every state keeps the representative net it was first reached with
and a parent pointer, so a witness path is a list of choices that replays
exactly from the start net.

The optimized mode (only for reachability of a cut-free single-daimon
target) reduces any reducible non-irreversible cut eagerly without branching,
branches only on irreversible splits, and prunes states holding a clash cut or
two connected components.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .canon import state_key
from .net import CUT, DAIMON, Net, connected_components, daimon_net, interaction, is_daimon_zero
from .rewrite import CutKind, ReductionChoice, cut_kind, redexes, step


@dataclass(frozen=True)
class Budget:
    max_states: int = 200_000
    max_steps: int = 2_000_000


DEFAULT_BUDGET = Budget()


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class Node:
    net: Net
    edges: list[tuple[ReductionChoice, tuple]] = field(default_factory=list)
    explored: bool = False


@dataclass
class ReductionGraph:
    root: tuple
    nodes: dict[tuple, Node]
    complete: bool
    steps: int

    def normal_forms(self) -> list[Net]:
        return [n.net for n in self.nodes.values() if n.explored and not n.edges]

    def __len__(self) -> int:
        return len(self.nodes)


def explore(net: Net, budget: Budget = DEFAULT_BUDGET) -> ReductionGraph:
    """Full reachability graph; ``complete`` is False when the budget ran out."""
    root = state_key(net)
    nodes = {root: Node(net)}
    stack = [root]
    steps = 0
    complete = True
    while stack:
        key = stack.pop()
        node = nodes[key]
        if node.explored:
            continue
        for ch in redexes(node.net):
            if steps >= budget.max_steps:
                complete = False
                break
            child = step(node.net, ch)
            steps += 1
            ck = state_key(child)
            node.edges.append((ch, ck))
            if ck not in nodes:
                if len(nodes) >= budget.max_states:
                    complete = False
                    break
                nodes[ck] = Node(child)
                stack.append(ck)
        if not complete:
            break
        node.explored = True
    return ReductionGraph(root, nodes, complete, steps)


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a reachability query; ``verdict`` is None when the budget ran out."""

    verdict: bool | None
    path: tuple[ReductionChoice, ...] = ()
    states: int = 0
    steps: int = 0

    @property
    def indeterminate(self) -> bool:
        return self.verdict is None

    def __bool__(self) -> bool:
        if self.verdict is None:
            raise BudgetExceeded("search budget exceeded; verdict is indeterminate")
        return self.verdict


def _dead(net: Net) -> bool:
    for ln in net.links:
        if ln.label is CUT and cut_kind(net, ln).kind is CutKind.CLASH:
            return True
    return len(connected_components(net)) > 1


def _eager(net: Net) -> ReductionChoice | None:
    for ln in net.links:
        if ln.label is CUT:
            ct = cut_kind(net, ln)
            if ct.reducible and ct.kind is not CutKind.IRREVERSIBLE:
                return ReductionChoice(ln.id)
    return None


def _saturate(net: Net) -> tuple[Net, tuple[ReductionChoice, ...]]:
    """Reduce non-irreversible cuts until none is left (deterministic, no branching)."""
    chain = []
    while (e := _eager(net)) is not None:
        net = step(net, e)
        chain.append(e)
    return net, tuple(chain)


def reaches(net: Net, goal: Callable[[Net], bool], optimized: bool = False,
            budget: Budget = DEFAULT_BUDGET) -> SearchResult:
    """Depth-first search for a state satisfying ``goal``.

    ``optimized`` is only sound when the goal is a single cut-free daimon: such
    a goal is a normal form, so eager chains are collapsed and only their
    endpoints are memoized.
    """
    steps = 0
    head: tuple[ReductionChoice, ...] = ()
    if optimized:
        net, head = _saturate(net)
        steps += len(head)
    root = state_key(net)
    parent: dict[tuple, tuple | None] = {root: None}
    rep = {root: net}
    stack = [root]
    while stack:
        key = stack.pop()
        cur = rep[key]
        if goal(cur):
            path = []
            k = key
            while parent[k] is not None:
                pk, chs = parent[k]
                path.extend(reversed(chs))
                k = pk
            return SearchResult(True, head + tuple(reversed(path)), len(rep), steps)
        if optimized and _dead(cur):
            continue
        children = []
        for ch in redexes(cur):
            if steps >= budget.max_steps:
                return SearchResult(None, (), len(rep), steps)
            child = step(cur, ch)
            steps += 1
            chs: tuple[ReductionChoice, ...] = (ch,)
            if optimized:
                child, chain = _saturate(child)
                steps += len(chain)
                chs += chain
            ck = state_key(child)
            if ck in parent:
                continue
            if len(rep) >= budget.max_states:
                return SearchResult(None, (), len(rep), steps)
            parent[ck] = (key, chs)
            rep[ck] = child
            children.append(ck)
        stack.extend(reversed(children))
    return SearchResult(False, (), len(rep), steps)


def reaches_zero(net: Net, optimized: bool = True, budget: Budget = DEFAULT_BUDGET) -> SearchResult:
    if net.arrangement:
        return SearchResult(False)
    return reaches(net, is_daimon_zero, optimized, budget)


def is_single_daimon(net: Net) -> bool:
    return len(net.links) == 1 and net.links[0].label is DAIMON


def reaches_daimon(net: Net, optimized: bool = True, budget: Budget = DEFAULT_BUDGET) -> SearchResult:
    """Is a lone daimon over all conclusions reachable (any target order)?"""
    return reaches(net, is_single_daimon, optimized, budget)


_ORTHO_CACHE: dict[tuple, bool | None] = {}
_CACHE_LIMIT = 20_000


def orthogonal(s: Net, t: Net, optimized: bool = True, budget: Budget = DEFAULT_BUDGET) -> SearchResult:
    """S ⊥ T: some reduction of S::T reaches ⨯₀.  Carries a replayable witness path."""
    return reaches_zero(interaction(s, t), optimized, budget)


def is_orthogonal(s: Net, t: Net, optimized: bool = True, budget: Budget = DEFAULT_BUDGET) -> bool | None:
    """Verdict only, memoized on the interaction's state key."""
    st = interaction(s, t)
    key = (state_key(st), optimized)
    if key in _ORTHO_CACHE:
        return _ORTHO_CACHE[key]
    v = reaches_zero(st, optimized, budget).verdict
    if len(_ORTHO_CACHE) > _CACHE_LIMIT:
        _ORTHO_CACHE.clear()
    _ORTHO_CACHE[key] = v
    return v


def replay(net: Net, path) -> list[Net]:
    """All intermediate nets of a path, starting with ``net``."""
    out = [net]
    for ch in path:
        out.append(step(out[-1], ch))
    return out


def normal_forms(net: Net, budget: Budget = DEFAULT_BUDGET) -> list[Net]:
    g = explore(net, budget)
    if not g.complete:
        raise BudgetExceeded("exploration did not complete")
    return g.normal_forms()


# -- strategy oracles -------------------------------------------------------

def _closure(starts: list[Net], allowed: Callable[[Net, ReductionChoice], bool],
             marked: int | None = None) -> dict[tuple, Net]:
    seen: dict[tuple, Net] = {}
    stack = []
    for s in starts:
        k = state_key(s, marked)
        if k not in seen:
            seen[k] = s
            stack.append(s)
    while stack:
        cur = stack.pop()
        for ch in redexes(cur):
            if not allowed(cur, ch):
                continue
            nxt = step(cur, ch)
            k = state_key(nxt, marked)
            if k not in seen:
                seen[k] = nxt
                stack.append(nxt)
    return seen


def _is_mult(net: Net, ch: ReductionChoice) -> bool:
    return cut_kind(net, ch.cut).kind is CutKind.MULTIPLICATIVE


def check_factorization(net: Net, path) -> bool:
    """Is the endpoint of ``path`` reachable by multiplicative steps followed by non-multiplicative ones?"""
    end = state_key(replay(net, path)[-1])
    phase1 = _closure([net], _is_mult)
    phase2 = _closure(list(phase1.values()), lambda n, ch: not _is_mult(n, ch))
    return end in phase2


def original_prefix(net: Net, path, skip: int | None = None) -> tuple:
    """Longest prefix of ``path`` reducing only cuts already present in ``net``.

    Cuts disappear only when reduced and fresh ids never collide with live
    ones, so tracking the surviving original ids identifies them exactly.
    """
    alive = {ln.id for ln in net.cuts} - {skip}
    out = []
    for ch in path:
        if ch.cut not in alive:
            break
        alive.discard(ch.cut)
        out.append(ch)
    return tuple(out)


def check_delay(net: Net, path) -> bool:
    """First step reduces an irreversible cut c; the rest is cut to steps on cuts of ``net``.
    Can c be reduced last instead, reaching the same net?"""
    c = path[0].cut
    if cut_kind(net, c).kind is not CutKind.IRREVERSIBLE:
        raise ValueError("the first step does not reduce an irreversible cut")
    path = (path[0],) + original_prefix(net, path[1:], c)
    end = state_key(replay(net, path)[-1])
    pre = _closure([net], lambda n, ch: ch.cut != c, marked=c)
    for u in pre.values():
        for ch in redexes(u):
            if ch.cut == c and state_key(step(u, ch)) == end:
                return True
    return False


def check_anticipation(net: Net, path) -> bool | None:
    """Last step reduces a non-irreversible cut c of ``net``: can c be reduced first instead?

    Returns None where the statement does not apply: c was created along the
    path, or c is not reducible in ``net`` (a cyclic glueing cut may become
    acyclic later).
    """
    c = path[-1].cut
    # an original cut stays live until reduced, and live ids are never reused
    if c not in {ln.id for ln in net.cuts} or any(ch.cut == c for ch in path[:-1]):
        return None
    ct = cut_kind(net, c)
    if ct.kind is CutKind.IRREVERSIBLE:
        raise ValueError("the last step reduces an irreversible cut")
    if not ct.reducible:
        return None
    end = state_key(replay(net, path)[-1])
    first = step(net, ReductionChoice(c))
    return end in _closure([first], lambda n, ch: True)


def identity_cut_net(n: int = 1, m: int = 0) -> Net:
    """⨯⟨x₁..xₙ, p1, p2⟩ + ⅋(p1,p2)→p + cut(p,q) + ⨯⟨q, y₁..yₘ⟩."""
    from .net import Link, PAR
    xs = tuple(range(n))
    p1, p2, p, q = n, n + 1, n + 2, n + 3
    ys = tuple(range(n + 4, n + 4 + m))
    links = (Link(0, DAIMON, (), xs + (p1, p2)), Link(1, PAR, (p1, p2), (p,)),
             Link(2, CUT, (p, q)), Link(3, DAIMON, (), (q,) + ys))
    return Net(links, xs + ys)


__all__ = [
    "Budget", "BudgetExceeded", "ReductionGraph", "SearchResult", "explore", "reaches", "reaches_zero",
    "reaches_daimon", "orthogonal", "is_orthogonal", "replay", "normal_forms", "check_factorization",
    "check_delay", "check_anticipation", "identity_cut_net", "daimon_net",
]
