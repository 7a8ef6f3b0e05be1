"""Multiplicative nets as immutable ordered hypergraphs.

Positions are plain integers, unique inside one net.  Links carry an integer
id, a label and ordered source/target tuples.  A ``Net`` is a list of links
plus an arrangement of its conclusions; display names for positions are kept
on the side so text round-trips stay readable.

Fresh ids are allocated as ``max(existing) + 1``, which makes every operation a
pure function of its arguments (a reduction replayed on the same net produces
the same ids).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence


class LinkLabel(str, Enum):
    DAIMON = "dai"
    TENSOR = "tensor"
    PAR = "par"
    CUT = "cut"

    def __str__(self) -> str:
        return self.value


DAIMON = LinkLabel.DAIMON
TENSOR = LinkLabel.TENSOR
PAR = LinkLabel.PAR
CUT = LinkLabel.CUT

SYMBOL = {DAIMON: "⨯", TENSOR: "⊗", PAR: "⅋", CUT: "cut"}


class NetError(ValueError):
    """Raised on ill-formed links, modules or nets."""


@dataclass(frozen=True)
class Link:
    id: int
    label: LinkLabel
    sources: tuple[int, ...] = ()
    targets: tuple[int, ...] = ()

    @property
    def positions(self) -> tuple[int, ...]:
        return self.sources + self.targets

    def __str__(self) -> str:
        if self.label is DAIMON:
            return f"⨯{list(self.targets)}"
        if self.label is CUT:
            return f"cut{self.sources}"
        return f"{SYMBOL[self.label]}{self.sources}->{self.targets[0]}"


def check_link(label: LinkLabel, sources: Sequence[int], targets: Sequence[int]) -> None:
    label = LinkLabel(label)
    ns, nt = len(sources), len(targets)
    if label is DAIMON and ns != 0:
        raise NetError("a daimon link has no sources")
    if label is CUT and (ns, nt) != (2, 0):
        raise NetError("a cut link has exactly two sources and no target")
    if label in (TENSOR, PAR) and (ns, nt) != (2, 1):
        raise NetError(f"a {label.value} link has two sources and one target")
    allpos = list(sources) + list(targets)
    if len(set(sources)) != ns or len(set(targets)) != nt:
        raise NetError(f"repeated position inside a {label.value} link")
    if len(set(allpos)) != len(allpos):
        raise NetError(f"loop: a {label.value} link shares a source and a target")


@dataclass(frozen=True)
class Hypergraph:
    """A finite set of positions and links; no module condition is enforced."""

    positions: frozenset[int] = frozenset()
    links: tuple[Link, ...] = ()

    def __post_init__(self) -> None:
        for ln in self.links:
            missing = set(ln.positions) - self.positions
            if missing:
                raise NetError(f"link {ln.id} uses unknown positions {sorted(missing)}")

    @property
    def conclusions(self) -> frozenset[int]:
        used = {p for ln in self.links for p in ln.sources}
        return self.positions - used

    @property
    def premises(self) -> frozenset[int]:
        made = {p for ln in self.links for p in ln.targets}
        return self.positions - made

    @property
    def isolated(self) -> frozenset[int]:
        return self.conclusions & self.premises


def mk_link(label: LinkLabel, sources: Sequence[int] = (), targets: Sequence[int] = (),
            link_id: int = 0) -> Hypergraph:
    label = LinkLabel(label)
    check_link(label, sources, targets)
    ln = Link(link_id, label, tuple(sources), tuple(targets))
    return Hypergraph(frozenset(ln.positions), (ln,))


def hsum(h1: Hypergraph, h2: Hypergraph) -> Hypergraph:
    """Union of positions, disjoint union of links (clashing link ids of h2 are renamed)."""
    used = {ln.id for ln in h1.links}
    nxt = max(used, default=-1) + 1
    links = list(h1.links)
    for ln in h2.links:
        if ln.id in used:
            ln = Link(nxt, ln.label, ln.sources, ln.targets)
            nxt += 1
        used.add(ln.id)
        nxt = max(nxt, ln.id + 1)
        links.append(ln)
    return Hypergraph(h1.positions | h2.positions, tuple(links))


def check_module(links: Iterable[Link]) -> None:
    seen_src: dict[int, int] = {}
    seen_tgt: dict[int, int] = {}
    ids = set()
    for ln in links:
        check_link(ln.label, ln.sources, ln.targets)
        if ln.id in ids:
            raise NetError(f"duplicate link id {ln.id}")
        ids.add(ln.id)
        for p in ln.sources:
            if p in seen_src:
                raise NetError(f"position {p} is a source of two links")
            seen_src[p] = ln.id
        for p in ln.targets:
            if p in seen_tgt:
                raise NetError(f"position {p} is a target of two links")
            seen_tgt[p] = ln.id


@dataclass(frozen=True)
class _Index:
    producer: dict[int, int]
    consumer: dict[int, int]
    by_id: dict[int, int]
    conclusions: frozenset[int]


@dataclass(frozen=True)
class Net:
    """A target-surjective, source- and target-disjoint module with ordered conclusions."""

    links: tuple[Link, ...]
    arrangement: tuple[int, ...]
    names: tuple[tuple[int, str], ...] = ()
    _cache: dict = field(default_factory=dict, init=False, compare=False, repr=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "links", tuple(self.links))
        object.__setattr__(self, "arrangement", tuple(self.arrangement))
        object.__setattr__(self, "names", tuple(self.names))
        validate(self)

    @classmethod
    def trusted(cls, links: Sequence[Link], arrangement: Sequence[int],
                names: tuple[tuple[int, str], ...] = ()) -> "Net":
        """Build without validation; for internal operations that preserve the invariants."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "links", tuple(links))
        object.__setattr__(obj, "arrangement", tuple(arrangement))
        object.__setattr__(obj, "names", names)
        object.__setattr__(obj, "_cache", {})
        return obj

    @classmethod
    def from_hypergraph(cls, h: Hypergraph, arrangement: Sequence[int]) -> "Net":
        if h.isolated:
            raise NetError("isolated positions are not allowed in a net")
        return cls(h.links, tuple(arrangement))

    # -- derived data ----------------------------------------------------
    @property
    def index(self) -> _Index:
        idx = self._cache.get("index")
        if idx is None:
            producer, consumer, by_id = {}, {}, {}
            for i, ln in enumerate(self.links):
                by_id[ln.id] = i
                for p in ln.targets:
                    producer[p] = i
                for p in ln.sources:
                    consumer[p] = i
            concl = frozenset(p for p in producer if p not in consumer)
            idx = _Index(producer, consumer, by_id, concl)
            self._cache["index"] = idx
        return idx

    @property
    def body(self) -> Hypergraph:
        return Hypergraph(frozenset(self.positions), self.links)

    @property
    def positions(self) -> set[int]:
        return set(self.index.producer)

    @property
    def conclusions(self) -> frozenset[int]:
        return self.index.conclusions

    @property
    def initial_positions(self) -> set[int]:
        return {p for ln in self.links if ln.label is DAIMON for p in ln.targets}

    @property
    def arity(self) -> int:
        return len(self.arrangement)

    def __len__(self) -> int:
        return len(self.arrangement)

    def link(self, link_id: int) -> Link:
        return self.links[self.index.by_id[link_id]]

    def has_link(self, link_id: int) -> bool:
        return link_id in self.index.by_id

    def producer(self, p: int) -> Link:
        return self.links[self.index.producer[p]]

    def consumer(self, p: int) -> Link | None:
        i = self.index.consumer.get(p)
        return None if i is None else self.links[i]

    def links_of(self, label: LinkLabel) -> list[Link]:
        return [ln for ln in self.links if ln.label is label]

    @property
    def daimons(self) -> list[Link]:
        return self.links_of(DAIMON)

    @property
    def cuts(self) -> list[Link]:
        return self.links_of(CUT)

    @property
    def is_cut_free(self) -> bool:
        return not any(ln.label is CUT for ln in self.links)

    def name_of(self, p: int) -> str:
        names = self._cache.get("names")
        if names is None:
            given = {q: s for q, s in self.names if q in self.index.producer}
            used = set(given.values())
            names = {}
            for q in sorted(self.index.producer):
                s = given.get(q)
                if s is None:
                    s = f"p{q}"
                    while s in used:
                        s += "'"
                    used.add(s)
                names[q] = s
            self._cache["names"] = names
        return names.get(p, f"p{p}")

    def fresh_positions(self, k: int) -> list[int]:
        start = max(self.index.producer, default=-1) + 1
        return list(range(start, start + k))

    def fresh_link_ids(self, k: int) -> list[int]:
        start = max(self.index.by_id, default=-1) + 1
        return list(range(start, start + k))

    def __str__(self) -> str:
        from .netio import format_net
        return format_net(self)


def validate(net: Net) -> None:
    check_module(net.links)
    made = {p for ln in net.links for p in ln.targets}
    used = {p for ln in net.links for p in ln.sources}
    dangling = used - made
    if dangling:
        raise NetError(f"positions {sorted(dangling)} are not the target of any link")
    concl = made - used
    if len(set(net.arrangement)) != len(net.arrangement) or set(net.arrangement) != concl:
        raise NetError(
            f"arrangement {list(net.arrangement)} is not a bijection onto the conclusions {sorted(concl)}")


# -- constructors -----------------------------------------------------------

def daimon_net(n: int) -> Net:
    """The daimon link with n outputs, arranged in order."""
    targets = tuple(range(n))
    return Net.trusted((Link(0, DAIMON, (), targets),), targets)


def net_from(links: Iterable[tuple], arrangement: Sequence, names: bool = True) -> Net:
    """Convenience builder from ``(label, sources, targets)`` triples over any hashable names."""
    ids: dict = {}

    def pid(x) -> int:
        if x not in ids:
            ids[x] = len(ids)
        return ids[x]

    built = []
    for i, (label, srcs, tgts) in enumerate(links):
        built.append(Link(i, LinkLabel(label), tuple(pid(s) for s in srcs), tuple(pid(t) for t in tgts)))
    for a in arrangement:
        if a not in ids:
            raise NetError(f"arrangement mentions unknown position {a!r}")
    nm = tuple((v, str(k)) for k, v in ids.items()) if names else ()
    return Net(tuple(built), tuple(ids[a] for a in arrangement), nm)


def renumber(net: Net, pos_offset: int, link_offset: int) -> Net:
    m = lambda p: p + pos_offset
    links = tuple(Link(ln.id + link_offset, ln.label, tuple(map(m, ln.sources)), tuple(map(m, ln.targets)))
                  for ln in net.links)
    names = tuple((m(p), s) for p, s in net.names)
    return Net.trusted(links, tuple(map(m, net.arrangement)), names)


def _merge_names(a: tuple, b: tuple) -> tuple:
    taken = {s for _, s in a}
    out = list(a)
    for p, s in b:
        while s in taken:
            s = s + "'"
        taken.add(s)
        out.append((p, s))
    return tuple(out)


def _offsets(n1: Net, n2: Net) -> tuple[int, int]:
    pmax = max(n1.index.producer, default=-1)
    lmax = max(n1.index.by_id, default=-1)
    pmin = min(n2.index.producer, default=0)
    lmin = min(n2.index.by_id, default=0)
    return pmax + 1 - pmin, lmax + 1 - lmin


def parallel(n1: Net, n2: Net) -> Net:
    """Disjoint union; the arrangement is n1's followed by n2's."""
    po, lo = _offsets(n1, n2)
    r = renumber(n2, po, lo)
    return Net.trusted(n1.links + r.links, n1.arrangement + r.arrangement,
                       _merge_names(n1.names, r.names))


def parallel_all(nets: Sequence[Net]) -> Net:
    out = nets[0]
    for n in nets[1:]:
        out = parallel(out, n)
    return out


def interaction(s: Net, t: Net) -> Net:
    """s + t with the i-th conclusions cut together for i up to min(#s, #t).

    The leftover arrangement is the tail of the longer net, in order.
    """
    st = parallel(s, t)
    k = min(len(s), len(t))
    sa, ta = st.arrangement[:len(s)], st.arrangement[len(s):]
    ids = st.fresh_link_ids(k)
    cuts = tuple(Link(ids[i], CUT, (sa[i], ta[i]), ()) for i in range(k))
    rest = sa[k:] + ta[k:]
    return Net.trusted(st.links + cuts, rest, st.names)


# -- daimons, addresses -----------------------------------------------------

def daimon_part(net: Net) -> list[frozenset[int]]:
    """Target sets of the daimon links (a ⨯₀ contributes an empty class)."""
    return [frozenset(ln.targets) for ln in net.links if ln.label is DAIMON]


def addresses(net: Net) -> dict[int, tuple[int, str]]:
    """(root conclusion index, path over 'l'/'r') for every position of a cut-free net.

    Root indices are 1-based, following the arrangement.
    """
    if not net.is_cut_free:
        raise NetError("addresses are defined on cut-free nets")
    out: dict[int, tuple[int, str]] = {}
    for i, root in enumerate(net.arrangement, start=1):
        stack = [(root, "")]
        while stack:
            p, path = stack.pop()
            out[p] = (i, path)
            ln = net.producer(p)
            if ln.label in (TENSOR, PAR):
                stack.append((ln.sources[0], path + "l"))
                stack.append((ln.sources[1], path + "r"))
    return out


def resolve_address(net: Net, conclusion_index: int, path: str | Sequence[str]) -> int:
    if not 1 <= conclusion_index <= len(net):
        raise NetError(f"no conclusion with index {conclusion_index}")
    p = net.arrangement[conclusion_index - 1]
    for step in path:
        ln = net.producer(p)
        if ln.label not in (TENSOR, PAR):
            raise NetError(f"address step {step!r} undefined at initial position {net.name_of(p)}")
        if step not in ("l", "r"):
            raise NetError(f"bad address step {step!r}")
        p = ln.sources[0 if step == "l" else 1]
    return p


def natural_order(net: Net) -> list[int]:
    """Initial positions sorted by (root index, address) with l < r."""
    adr = addresses(net)
    return sorted(net.initial_positions, key=lambda p: adr[p])


def extract_daimons(net: Net) -> Net:
    """The daimon links of a cut-free net, arranged in the natural order."""
    order = natural_order(net)
    return Net.trusted(tuple(net.daimons), tuple(order), net.names)


def merge(n1: Net, d1: int, n2: Net, d2: int) -> Net:
    """Replace daimons d1 (of n1) and d2 (of n2) by one daimon with targets d1·d2."""
    l1, l2 = n1.link(d1), n2.link(d2)
    if l1.label is not DAIMON or l2.label is not DAIMON:
        raise NetError("merge needs two daimon links")
    po, lo = _offsets(n1, n2)
    r = renumber(n2, po, lo)
    l2r = r.link(d2 + lo)
    merged = Link(l1.id, DAIMON, (), l1.targets + l2r.targets)
    links = tuple(merged if ln.id == d1 else ln for ln in n1.links)
    links += tuple(ln for ln in r.links if ln.id != l2r.id)
    return Net.trusted(links, n1.arrangement + r.arrangement, _merge_names(n1.names, r.names))


def generalized_link(label: LinkLabel, inputs: Sequence[int], output: int | None = None) -> Hypergraph:
    """Left-nested chain of binary links over n+1 >= 2 inputs, with a single output."""
    label = LinkLabel(label)
    if label not in (TENSOR, PAR):
        raise NetError("generalized links are tensor or par chains")
    if len(inputs) < 2:
        raise NetError("a generalized link needs at least two inputs")
    nxt = max(list(inputs) + ([output] if output is not None else [])) + 1
    links = []
    acc = inputs[0]
    for k, p in enumerate(inputs[1:], start=1):
        last = k == len(inputs) - 1
        if last and output is not None:
            out = output
        else:
            out = nxt
            nxt += 1
        links.append(Link(k - 1, label, (acc, p), (out,)))
        acc = out
    check_module(links)
    return Hypergraph(frozenset(p for ln in links for p in ln.positions), tuple(links))


def connected_components(net: Net) -> list[list[int]]:
    """Link indices grouped by connected component of the underlying graph."""
    parent = list(range(len(net.links)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    idx = net.index
    for p, i in idx.producer.items():
        j = idx.consumer.get(p)
        if j is not None:
            a, b = find(i), find(j)
            if a != b:
                parent[a] = b
    groups: dict[int, list[int]] = {}
    for i in range(len(net.links)):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def is_daimon_zero(net: Net) -> bool:
    return (len(net.links) == 1 and net.links[0].label is DAIMON
            and not net.links[0].targets)


def relabel_names(net: Net, mapping: Mapping[int, str]) -> Net:
    return Net.trusted(net.links, net.arrangement, tuple(mapping.items()))
