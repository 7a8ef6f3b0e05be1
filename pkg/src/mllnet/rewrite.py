"""Cut elimination: cut types, reduction steps and the termination measure.

Reducible cuts:

* multiplicative (⅋ against ⊗): two new cuts between the premises;
* glueing (⨯ against a different ⨯): the two daimons fuse;
* reversible (⊗ against ⨯): the daimon target is replaced in place by two
  fresh targets, cut against the ⊗ premises;
* irreversible (⅋ against ⨯): the daimon splits in two; the other targets are
  distributed between the halves by an ordered two-class split.

Clash cuts (⊗/⊗, ⅋/⅋) and cyclic glueing cuts (both sources on one daimon)
are stuck.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .net import CUT, DAIMON, PAR, TENSOR, Link, Net, NetError


class CutKind(str, Enum):
    MULTIPLICATIVE = "multiplicative"
    CLASH = "clash"
    GLUEING = "glueing"
    REVERSIBLE = "reversible"
    IRREVERSIBLE = "irreversible"


@dataclass(frozen=True)
class CutType:
    kind: CutKind
    cyclic: bool = False

    @property
    def reducible(self) -> bool:
        return self.kind is not CutKind.CLASH and not self.cyclic

    def __str__(self) -> str:
        return ("cyclic " if self.cyclic else "") + self.kind.value


@dataclass(frozen=True)
class ReductionChoice:
    """A cut to reduce; irreversible steps also carry the split of the daimon's other targets.

    ``split[0]`` goes with the first ⅋ premise, ``split[1]`` with the second.
    The order inside each class is the order the targets take in the new daimon.
    """

    cut: int
    split: tuple[tuple[int, ...], tuple[int, ...]] | None = None

    def describe(self, net: Net | None = None) -> str:
        if self.split is None:
            return f"cut#{self.cut}"
        nm = net.name_of if net is not None else (lambda p: f"p{p}")
        a = " ".join(nm(p) for p in self.split[0])
        b = " ".join(nm(p) for p in self.split[1])
        return f"cut#{self.cut} [{a} | {b}]"


class IllegalStep(NetError):
    pass


def cut_kind(net: Net, cut: Link | int) -> CutType:
    if isinstance(cut, int):
        cut = net.link(cut)
    if cut.label is not CUT or not net.has_link(cut.id):
        raise NetError("not a cut link of this net")
    a = net.producer(cut.sources[0])
    b = net.producer(cut.sources[1])
    la, lb = a.label, b.label
    if la is DAIMON and lb is DAIMON:
        return CutType(CutKind.GLUEING, cyclic=a.id == b.id)
    if la is DAIMON or lb is DAIMON:
        other = lb if la is DAIMON else la
        return CutType(CutKind.REVERSIBLE if other is TENSOR else CutKind.IRREVERSIBLE)
    if la is lb:
        return CutType(CutKind.CLASH)
    return CutType(CutKind.MULTIPLICATIVE)


def _irreversible_parts(net: Net, cut: Link) -> tuple[Link, int, Link, int]:
    """(par link, its output, daimon link, daimon target) for a ⅋/⨯ cut."""
    p, q = cut.sources
    lp = net.producer(p)
    if lp.label is PAR:
        return lp, p, net.producer(q), q
    return net.producer(q), q, lp, p


def splits(others: tuple[int, ...], all_orders: bool = False):
    """Ordered two-class splits of ``others``; relative order is kept unless ``all_orders``."""
    m = len(others)
    for mask in range(1 << m):
        left = tuple(x for i, x in enumerate(others) if not mask >> i & 1)
        right = tuple(x for i, x in enumerate(others) if mask >> i & 1)
        if not all_orders:
            yield left, right
        else:
            for a in itertools.permutations(left):
                for b in itertools.permutations(right):
                    yield a, b


def redexes(net: Net, all_orders: bool = False) -> list[ReductionChoice]:
    out: list[ReductionChoice] = []
    for ln in net.links:
        if ln.label is not CUT:
            continue
        ct = cut_kind(net, ln)
        if not ct.reducible:
            continue
        if ct.kind is CutKind.IRREVERSIBLE:
            _, _, dai, dp = _irreversible_parts(net, ln)
            others = tuple(x for x in dai.targets if x != dp)
            if all_orders:
                i = dai.targets.index(dp)
                before = set(dai.targets[:i])
                for a, b in splits(others, True):
                    # permutations act separately before and after the cut target
                    if _order_ok(a, before, others) and _order_ok(b, before, others):
                        out.append(ReductionChoice(ln.id, (a, b)))
            else:
                for s in splits(others):
                    out.append(ReductionChoice(ln.id, s))
        else:
            out.append(ReductionChoice(ln.id))
    return out


def _order_ok(cls: tuple[int, ...], before: set, others: tuple[int, ...]) -> bool:
    # only orders where every "before" element precedes every "after" element are distinct
    seen_after = False
    for x in cls:
        if x in before:
            if seen_after:
                return False
        else:
            seen_after = True
    return True


def step(net: Net, choice: ReductionChoice) -> Net:
    """Rewrite one cut.  Conclusions and arrangement are unchanged."""
    if not net.has_link(choice.cut):
        raise IllegalStep(f"no link {choice.cut}")
    cut = net.link(choice.cut)
    ct = cut_kind(net, cut)
    if not ct.reducible:
        raise IllegalStep(f"cut {choice.cut} is {ct}")
    kind = ct.kind
    if kind is not CutKind.IRREVERSIBLE and choice.split is not None:
        raise IllegalStep("only irreversible steps take a split")
    p, q = cut.sources
    lp, lq = net.producer(p), net.producer(q)
    remove = {cut.id}
    add: list[Link] = []
    replace: dict[int, Link] = {}

    if kind is CutKind.MULTIPLICATIVE:
        c1, c2 = net.fresh_link_ids(2)
        remove |= {lp.id, lq.id}
        add += [Link(c1, CUT, (lp.sources[0], lq.sources[0])),
                Link(c2, CUT, (lp.sources[1], lq.sources[1]))]
    elif kind is CutKind.GLUEING:
        tp = tuple(x for x in lp.targets if x != p)
        tq = tuple(x for x in lq.targets if x != q)
        remove.add(lq.id)
        replace[lp.id] = Link(lp.id, DAIMON, (), tp + tq)
    elif kind is CutKind.REVERSIBLE:
        ten, dai, dq = (lp, lq, q) if lp.label is TENSOR else (lq, lp, p)
        q1, q2 = net.fresh_positions(2)
        c1, c2 = net.fresh_link_ids(2)
        i = dai.targets.index(dq)
        remove.add(ten.id)
        replace[dai.id] = Link(dai.id, DAIMON, (), dai.targets[:i] + (q1, q2) + dai.targets[i + 1:])
        add += [Link(c1, CUT, (ten.sources[0], q1)), Link(c2, CUT, (ten.sources[1], q2))]
    else:
        par, _, dai, dp = _irreversible_parts(net, cut)
        others = tuple(x for x in dai.targets if x != dp)
        if choice.split is None:
            raise IllegalStep("irreversible steps need a split")
        a, b = choice.split
        if sorted(a + b) != sorted(others) or len(set(a + b)) != len(others):
            raise IllegalStep("split does not partition the other daimon targets")
        i = dai.targets.index(dp)
        before = set(dai.targets[:i])
        p1, p2 = net.fresh_positions(2)
        c1, c2 = net.fresh_link_ids(2)
        (d2,) = [c2 + 1]

        def side(cls: tuple[int, ...], fresh: int) -> tuple[int, ...]:
            return (tuple(x for x in cls if x in before) + (fresh,)
                    + tuple(x for x in cls if x not in before))

        remove.add(par.id)
        replace[dai.id] = Link(dai.id, DAIMON, (), side(a, p1))
        add += [Link(c1, CUT, (par.sources[0], p1)), Link(c2, CUT, (par.sources[1], p2)),
                Link(d2, DAIMON, (), side(b, p2))]

    links = []
    for ln in net.links:
        if ln.id in remove:
            continue
        links.append(replace.get(ln.id, ln))
    links += add
    return Net.trusted(links, net.arrangement, net.names)


def sn_measure(net: Net) -> tuple[int, int]:
    """(number of ⊗/⅋ links, number of cut links); decreases lexicographically on every step."""
    c = k = 0
    for ln in net.links:
        if ln.label is CUT:
            k += 1
        elif ln.label is not DAIMON:
            c += 1
    return c, k


def is_normal(net: Net) -> bool:
    return not redexes(net)
