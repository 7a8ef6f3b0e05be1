"""Formula labellings of nets, testability and syntax forests."""

from __future__ import annotations

from typing import Sequence

from .formula import PATTERN_VAR, Formula, Par, Tensor, Var, dual, leaves
from .net import CUT, DAIMON, PAR, TENSOR, Link, Net, NetError, extract_daimons


def syntax_forest(gamma: Sequence[Formula], grouping: Sequence[Sequence[int]] | None = None) -> Net:
    """The syntax forest of Γ with its leaves grouped into daimons.

    Leaves are numbered 0..N-1 in (formula, address) order; ``grouping`` lists
    the classes (each class in the order its daimon lists the targets).  By
    default every leaf gets its own ⨯₁.
    """
    links: list[Link] = []
    nxt = [0]
    leaf_pos: list[int] = []

    def fresh() -> int:
        nxt[0] += 1
        return nxt[0] - 1

    pending: list[tuple] = []

    def build(f: Formula) -> int:
        if isinstance(f, Var):
            p = fresh()
            leaf_pos.append(p)
            return p
        a = build(f.left)
        b = build(f.right)
        out = fresh()
        pending.append((TENSOR if isinstance(f, Tensor) else PAR, (a, b), (out,)))
        return out

    roots = [build(f) for f in gamma]
    n = len(leaf_pos)
    if grouping is None:
        grouping = [[i] for i in range(n)]
    flat = sorted(i for c in grouping for i in c)
    if flat != list(range(n)):
        raise NetError("grouping must partition the leaves")
    for cls in grouping:
        links.append(Link(len(links), DAIMON, (), tuple(leaf_pos[i] for i in cls)))
    for lab, s, t in pending:
        links.append(Link(len(links), lab, s, t))
    return Net(tuple(links), tuple(roots))


def _label_tree(net: Net, p: int, f: Formula, tau: dict[int, Formula], atomic: bool) -> bool:
    stack = [(p, f)]
    while stack:
        q, g = stack.pop()
        tau[q] = g
        ln = net.producer(q)
        if ln.label is DAIMON:
            if atomic and not isinstance(g, Var):
                return False
            continue
        want = Tensor if ln.label is TENSOR else Par
        if not isinstance(g, want):
            return False
        stack.append((ln.sources[0], g.left))
        stack.append((ln.sources[1], g.right))
    return True


def testable(net: Net, gamma: Sequence[Formula], atomic: bool = False) -> dict[int, Formula] | None:
    """The labelling τ with τ(S(i)) = Γᵢ, or None when S is not (atomic) testable by Γ."""
    if not net.is_cut_free:
        raise NetError("testability is defined on cut-free nets")
    if len(gamma) != len(net):
        raise NetError(f"net has {len(net)} conclusions, sequent has {len(gamma)} formulas")
    tau: dict[int, Formula] = {}
    for p, f in zip(net.arrangement, gamma):
        if not _label_tree(net, p, f, tau, atomic):
            return None
    return tau


def is_testable(net: Net, gamma: Sequence[Formula], atomic: bool = False) -> bool:
    return testable(net, gamma, atomic) is not None


def _shape_formula(net: Net, p: int, fresh) -> Formula:
    ln = net.producer(p)
    if ln.label is DAIMON:
        return fresh()
    a = _shape_formula(net, ln.sources[0], fresh)
    b = _shape_formula(net, ln.sources[1], fresh)
    return Tensor(a, b) if ln.label is TENSOR else Par(a, b)


def _join(net: Net, p: int, q: int, fresh) -> Formula | None:
    """A formula for cut side p whose dual fits side q, leaves left free."""
    lp, lq = net.producer(p), net.producer(q)
    if lp.label is DAIMON and lq.label is DAIMON:
        return fresh()
    if lp.label is DAIMON:
        g = _shape_formula(net, q, fresh)
        return dual(g)
    if lq.label is DAIMON:
        return _shape_formula(net, p, fresh)
    if lp.label is lq.label:
        return None
    a = _join(net, lp.sources[0], lq.sources[0], fresh)
    b = _join(net, lp.sources[1], lq.sources[1], fresh)
    if a is None or b is None:
        return None
    return Tensor(a, b) if lp.label is TENSOR else Par(a, b)


def label_with_cuts(net: Net, gamma: Sequence[Formula]) -> dict[int, Formula] | None:
    """Testability extended to nets with cuts: both sides of a cut get dual formulas.

    Cut formulas are inferred from the shapes above the cut, with fresh
    variables ``Z1, Z2, ...`` at unconstrained leaves.
    """
    if len(gamma) != len(net):
        raise NetError(f"net has {len(net)} conclusions, sequent has {len(gamma)} formulas")
    tau: dict[int, Formula] = {}
    for p, f in zip(net.arrangement, gamma):
        if not _label_tree(net, p, f, tau, False):
            return None
    counter = [0]

    def fresh() -> Formula:
        counter[0] += 1
        return Var(f"Z{counter[0]}")

    for ln in net.links:
        if ln.label is CUT:
            p, q = ln.sources
            f = _join(net, p, q, fresh)
            if f is None:
                return None
            if not _label_tree(net, p, f, tau, False) or not _label_tree(net, q, dual(f), tau, False):
                return None
    return tau


def decompose(net: Net) -> tuple[Net, tuple[Formula, ...]]:
    """S^⨯ and the formula patterns (over the pattern variable) of each conclusion."""
    if not net.is_cut_free:
        raise NetError("decompose needs a cut-free net")
    pv = lambda: Var(PATTERN_VAR)
    pats = tuple(_shape_formula(net, p, pv) for p in net.arrangement)
    return extract_daimons(net), pats


def leaf_count(gamma: Sequence[Formula]) -> int:
    return sum(len(leaves(f)) for f in gamma)
