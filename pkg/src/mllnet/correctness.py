"""Correctness of nets: switchings, partitions, tests and sequentialization.

Three equivalent views of correctness for cut-free nets are implemented:

* every switching is acyclic and connected as an undirected graph;
* the daimon partition is orthogonal to the partition of initial positions
  induced by every switching;
* the net is orthogonal to every tuple of tests of its sequent.

``sequentialize`` recovers a proof tree by backward search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import networkx as nx

from .canon import canonical_form
from .formula import Formula, Var, dual, leaves
from .labelling import is_testable, label_with_cuts, syntax_forest
from .net import (CUT, DAIMON, PAR, TENSOR, Link, Net, NetError, daimon_part, is_daimon_zero,
                  natural_order, parallel_all)
from .proofs import MLL, MLL_DAIMON, ProofTree
from .rewrite import CutKind, cut_kind, redexes
from .search import DEFAULT_BUDGET, Budget, is_orthogonal


# -- switchings -------------------------------------------------------------

@dataclass(frozen=True)
class Switching:
    """A par-free net obtained by switching every ⅋ of ``host``.

    ``choices`` maps each ⅋ link id to 'l' or 'r'.  ``origin`` maps the initial
    positions of the switched net to the initial positions of the host.
    """

    net: Net
    choices: tuple[tuple[int, str], ...]
    origin: tuple[tuple[int, int], ...]
    host: Net = field(compare=False, repr=False)


def switch(net: Net, choices: dict[int, str]) -> Switching:
    links = {ln.id: ln for ln in net.links}
    order = [ln.id for ln in net.links]
    producer = {p: ln.id for ln in net.links for p in ln.targets}
    origin = {p: p for p in net.initial_positions}
    arrangement = list(net.arrangement)
    for par in [ln for ln in net.links if ln.label is PAR]:
        cur = links[par.id]
        p1, p2 = cur.sources
        keep, drop = (p1, p2) if choices[par.id] == "l" else (p2, p1)
        (out,) = cur.targets
        # the producer of the kept premise now outputs the ⅋ conclusion
        pid = producer[keep]
        pl = links[pid]
        links[pid] = Link(pl.id, pl.label, pl.sources, tuple(out if t == keep else t for t in pl.targets))
        producer[out] = pid
        del producer[keep]
        if keep in origin:
            origin[out] = origin.pop(keep)
        del links[par.id]
        arrangement.append(drop)
    new = Net.trusted([links[i] for i in order if i in links], arrangement, net.names)
    return Switching(new, tuple(sorted(choices.items())), tuple(sorted(origin.items())), net)


def switchings(net: Net) -> list[Switching]:
    if not net.is_cut_free:
        raise NetError("switchings are defined on cut-free nets")
    return _switchings(net)


def _switchings(net: Net) -> list[Switching]:
    pars = [ln.id for ln in net.links if ln.label is PAR]
    out = []
    for bits in itertools.product("lr", repeat=len(pars)):
        out.append(switch(net, dict(zip(pars, bits))))
    return out


# -- natural partitions -----------------------------------------------------

@dataclass(frozen=True)
class NaturalPartition:
    """A partition of {1..n}; empty classes are kept (they come from ⨯₀ links)."""

    n: int
    classes: tuple[frozenset[int], ...]

    @staticmethod
    def of(n: int, classes) -> "NaturalPartition":
        cl = tuple(sorted((frozenset(c) for c in classes), key=lambda c: (sorted(c), len(c))))
        return NaturalPartition(n, cl)

    def as_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(self.classes)

    def __str__(self) -> str:
        return "{" + ", ".join("{" + ",".join(map(str, sorted(c))) + "}" for c in self.classes) + "}"


def _is_tree(nv: int, edges: list[tuple[int, int]]) -> bool:
    if len(edges) != nv - 1:
        return False
    parent = list(range(nv))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def partition_orthogonal(p: NaturalPartition, q: NaturalPartition) -> bool:
    """G(P, Q) is acyclic and connected: one vertex per class, one edge per element."""
    up = set().union(*p.classes) if p.classes else set()
    uq = set().union(*q.classes) if q.classes else set()
    if up != uq:
        raise ValueError("partitions over different ground sets")
    where_p = {x: i for i, c in enumerate(p.classes) for x in c}
    off = len(p.classes)
    where_q = {x: off + j for j, c in enumerate(q.classes) for x in c}
    edges = [(where_p[x], where_q[x]) for x in up]
    return _is_tree(off + len(q.classes), edges)


def nat_index(net: Net) -> dict[int, int]:
    """Initial position -> its 1-based rank in the natural order."""
    return {p: i for i, p in enumerate(natural_order(net), start=1)}


def nat_daimon_part(net: Net) -> NaturalPartition:
    idx = nat_index(net)
    return NaturalPartition.of(len(idx), [{idx[p] for p in c} for c in daimon_part(net)])


def up_initial(sw: Switching) -> NaturalPartition:
    """Initial positions above each conclusion of the switching, indexed by the host's natural order."""
    net = sw.net
    origin = dict(sw.origin)
    idx = nat_index(sw.host)
    classes = []
    for root in net.arrangement:
        cls = set()
        stack = [root]
        while stack:
            p = stack.pop()
            ln = net.producer(p)
            if ln.label is DAIMON:
                cls.add(idx[origin[p]])
            else:
                stack.extend(ln.sources)
        classes.append(cls)
    return NaturalPartition.of(len(idx), classes)


# -- Danos-Regnier ----------------------------------------------------------

@dataclass(frozen=True)
class SwitchingEvidence:
    choices: tuple[tuple[int, str], ...]
    ok: bool
    cycle: tuple[str, ...] = ()
    disconnected: tuple[str, str] | None = None

    def describe(self) -> str:
        side = {"l": "left", "r": "right"}
        ch = ", ".join(f"par#{i} keeps {side.get(c, c)}" for i, c in self.choices) or "(no par)"
        if self.ok:
            return f"switching [{ch}]: acyclic and connected"
        if self.cycle:
            return f"switching [{ch}]: cycle through {' '.join(self.cycle)}"
        a, b = self.disconnected
        return f"switching [{ch}]: disconnected ({a} and {b} are in different components)"


@dataclass(frozen=True)
class DRReport:
    correct: bool
    evidence: tuple[SwitchingEvidence, ...]

    def __bool__(self) -> bool:
        return self.correct

    def first_failure(self) -> SwitchingEvidence | None:
        return next((e for e in self.evidence if not e.ok), None)


def underlying_graph(net: Net) -> nx.MultiGraph:
    """Bipartite undirected graph: positions and links as vertices, one edge per incidence."""
    g = nx.MultiGraph()
    for p in net.positions:
        g.add_node(("p", p))
    for ln in net.links:
        g.add_node(("l", ln.id))
        for p in ln.positions:
            g.add_edge(("l", ln.id), ("p", p))
    return g


def _examine(sw: Switching) -> SwitchingEvidence:
    net = sw.net
    g = underlying_graph(net)
    comps = list(nx.connected_components(g))
    if len(comps) > 1:
        reps = []
        for c in comps[:2]:
            ps = sorted(v[1] for v in c if v[0] == "p")
            reps.append(net.name_of(ps[0]) if ps else f"link#{min(c)[1]}")
        return SwitchingEvidence(sw.choices, False, disconnected=(reps[0], reps[1]))
    if g.number_of_edges() != g.number_of_nodes() - 1:
        cyc = nx.find_cycle(g)
        verts = dict.fromkeys(v for e in cyc for v in e[:2])
        names = tuple(net.name_of(v[1]) for v in verts if v[0] == "p")
        return SwitchingEvidence(sw.choices, False, cycle=names)
    return SwitchingEvidence(sw.choices, True)


def dr_check(net: Net, exhaustive: bool = False) -> DRReport:
    """Every switching acyclic and connected.  Cut links count as ordinary vertices."""
    evidence = []
    ok = True
    for sw in _switchings(net):
        e = _examine(sw)
        evidence.append(e)
        if not e.ok:
            ok = False
            if not exhaustive:
                break
    return DRReport(ok, tuple(evidence))


def partition_check(net: Net) -> bool:
    """Correctness via partitions: nat(daimon part) ⊥ nat(up_initial σS) for every switching."""
    dp = nat_daimon_part(net)
    return all(partition_orthogonal(dp, up_initial(sw)) for sw in switchings(net))


# -- tests ------------------------------------------------------------------

def test_partitions(a: Formula, grouping=None) -> list[NaturalPartition]:
    witness = syntax_forest([a], grouping)
    seen = {}
    for sw in switchings(witness):
        p = up_initial(sw)
        seen.setdefault(p.as_sets(), p)
    return sorted(seen.values(), key=lambda p: [sorted(c) for c in p.classes])


_TESTS_CACHE: dict = {}


def tests(a: Formula, grouping=None) -> list[Net]:
    """The tests of a: nets of a⊥ whose daimons realize a switching partition of a witness of a."""
    key = (a, None if grouping is None else tuple(map(tuple, grouping)))
    hit = _TESTS_CACHE.get(key)
    if hit is not None:
        return hit
    da = dual(a)
    out = {}
    for p in test_partitions(a, grouping):
        classes = sorted((sorted(i - 1 for i in c) for c in p.classes), key=lambda c: c[0])
        t = syntax_forest([da], classes)
        out.setdefault(canonical_form(t), t)
    res = [out[k] for k in sorted(out)]
    _TESTS_CACHE[key] = res
    return res


def test_tuples(gamma: Sequence[Formula]):
    for combo in itertools.product(*(tests(a) for a in gamma)):
        yield parallel_all(list(combo))


def test_check(net: Net, gamma: Sequence[Formula], optimized: bool = True,
               budget: Budget = DEFAULT_BUDGET) -> bool | None:
    """S is orthogonal to every tuple of tests of Γ (false unless S is atomic-testable by Γ)."""
    if not net.is_cut_free or len(gamma) != len(net) or not is_testable(net, gamma, atomic=True):
        return False
    undecided = False
    for t in test_tuples(gamma):
        v = is_orthogonal(net, t, optimized, budget)
        if v is False:
            return False
        if v is None:
            undecided = True
    return None if undecided else True


# -- sequentialization --------------------------------------------------------

def _components(net: Net, links: frozenset[int]) -> list[set[int]]:
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in links:
        parent[i] = i
    owner: dict[int, int] = {}
    for i in links:
        for p in net.links[i].positions:
            j = owner.get(p)
            if j is None:
                owner[p] = i
            else:
                a, b = find(i), find(j)
                if a != b:
                    parent[a] = b
    groups: dict[int, set[int]] = {}
    for i in links:
        groups.setdefault(find(i), set()).add(i)
    return list(groups.values())


def _permute(proof: ProofTree, cur: list[int], target: list[int]) -> ProofTree:
    """Exchange steps turning the order ``cur`` into ``target`` (bubble sort)."""
    cur = list(cur)
    rank = {p: i for i, p in enumerate(target)}
    n = len(cur)
    for i in range(n):
        for j in range(n - 1 - i):
            if rank[cur[j]] > rank[cur[j + 1]]:
                cur[j], cur[j + 1] = cur[j + 1], cur[j]
                proof = ProofTree.ex(j + 1, proof)
    return proof


def sequentialize(net: Net, gamma: Sequence[Formula], mode: str = MLL_DAIMON) -> ProofTree | None:
    """A proof of Γ whose net is isomorphic to ``net``, or None.

    In MLL mode every daimon must be binary with dual labels and becomes an axiom.
    """
    tau = label_with_cuts(net, gamma)
    if tau is None:
        return None
    idx = net.index
    positions_of = lambda ls: {p for i in ls for p in net.links[i].positions}

    def seq(links: frozenset[int], arr: list[int]) -> ProofTree | None:
        if len(_components(net, links)) != 1:
            return None
        # terminal par
        for k, c in enumerate(arr):
            i = idx.producer[c]
            ln = net.links[i]
            if ln.label is PAR:
                sub = seq(links - {i}, [ln.sources[0], ln.sources[1]] + arr[:k] + arr[k + 1:])
                if sub is None:
                    return None
                pr = ProofTree.par(sub)
                return _permute(pr, [c] + arr[:k] + arr[k + 1:], arr)
        if len(links) == 1:
            (i,) = links
            ln = net.links[i]
            if ln.label is not DAIMON:
                return None
            fs = [tau[p] for p in ln.targets]
            if mode == MLL:
                if len(fs) != 2 or fs[1] != dual(fs[0]):
                    return None
                pr = ProofTree.ax(fs[0])
            else:
                pr = ProofTree.daimon(*fs)
            return _permute(pr, list(ln.targets), arr)
        # splitting tensor or cut
        cands = [idx.producer[c] for c in arr if net.links[idx.producer[c]].label is TENSOR]
        cands += sorted(i for i in links if net.links[i].label is CUT)
        for i in cands:
            ln = net.links[i]
            rest = links - {i}
            comps = _components(net, rest)
            if len(comps) != 2:
                continue
            s0, s1 = ln.sources
            pos0 = positions_of(comps[0])
            c0, c1 = (comps[0], comps[1]) if s0 in pos0 else (comps[1], comps[0])
            pos0, pos1 = positions_of(c0), positions_of(c1)
            if s0 not in pos0 or s1 not in pos1:
                continue
            others = [p for p in arr if p not in ln.targets]
            arr0 = [s0] + [p for p in others if p in pos0]
            arr1 = [s1] + [p for p in others if p in pos1]
            p0 = seq(frozenset(c0), arr0)
            p1 = seq(frozenset(c1), arr1)
            if p0 is None or p1 is None:
                return None
            if ln.label is TENSOR:
                pr = ProofTree.tensor(p0, p1)
                cur = arr0[1:] + arr1[1:] + [ln.targets[0]]
            else:
                pr = ProofTree.cut(tau[s0], p0, p1)
                cur = arr0[1:] + arr1[1:]
            return _permute(pr, cur, arr)
        return None

    return seq(frozenset(range(len(net.links))), list(net.arrangement))


# -- failure classification ---------------------------------------------------

class Failure(str, Enum):
    SINGLE_DAIMON_ZERO = "SingleDaimonZero"
    MULTIPLE_ZERO_DAIMONS = "MultipleZeroDaimons"
    CYCLIC_CUT_STUCK = "CyclicCutStuck"
    CLASH_STUCK = "ClashStuck"


@dataclass(frozen=True)
class FailureClass:
    kind: Failure
    count: int = 1

    def __str__(self) -> str:
        if self.kind is Failure.MULTIPLE_ZERO_DAIMONS:
            return f"{self.kind.value}({self.count})"
        return self.kind.value


def classify_failure(nf: Net) -> FailureClass:
    """Classify a normal form without conclusions."""
    if redexes(nf):
        raise ValueError("not a normal form")
    if nf.arrangement:
        raise ValueError("classification applies to closed nets")
    if is_daimon_zero(nf):
        return FailureClass(Failure.SINGLE_DAIMON_ZERO)
    kinds = [cut_kind(nf, ln) for ln in nf.cuts]
    if any(k.kind is CutKind.CLASH for k in kinds):
        return FailureClass(Failure.CLASH_STUCK)
    if kinds:
        return FailureClass(Failure.CYCLIC_CUT_STUCK)
    return FailureClass(Failure.MULTIPLE_ZERO_DAIMONS, len(nf.links))


# library functions, not pytest tests
test_partitions.__test__ = False
test_check.__test__ = False
test_tuples.__test__ = False
