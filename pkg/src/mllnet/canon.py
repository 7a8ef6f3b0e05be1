"""Canonical keys for nets.

A key is built per connected component by a breadth-first traversal from a
start point chosen invariantly: the first conclusion of the component in the
arrangement, or, for closed components, the minimum over the cuts of least
refined colour (both orientations when the two sides look alike).  From a link the traversal visits
sources then targets; from a position its producer then its consumer.  The
component keys are sorted and combined.

``canonical_form`` is exact for ordered nets.  ``state_key`` forgets the
order of daimon targets, which never changes what a net can reduce to; targets
are visited in the order of a structural colour so that the key is canonical
in the common case and always sound (equal keys imply equal nets up to daimon
target order).  ``marked`` singles out one cut link so that searches can
follow a particular cut through reductions.
"""

from __future__ import annotations

from collections import deque

from .net import CUT, DAIMON, PAR, TENSOR, Net, connected_components

_CODE = {DAIMON: 0, TENSOR: 1, PAR: 2, CUT: 3}
_MARK = 4


def _shape(net: Net, p: int, depth: int, memo: dict) -> str:
    key = (p, depth)
    s = memo.get(key)
    if s is None:
        ln = net.links[net.index.producer[p]]
        if ln.label is DAIMON:
            s = f"D{len(ln.targets)}"
        elif depth == 0:
            s = "T" if ln.label is TENSOR else "P"
        else:
            a = _shape(net, ln.sources[0], depth - 1, memo)
            b = _shape(net, ln.sources[1], depth - 1, memo)
            s = ("T(" if ln.label is TENSOR else "P(") + a + "," + b + ")"
        memo[key] = s
    return s


def _colour(net: Net, p: int, arr_pos: dict, memo: dict) -> tuple:
    """Path from p down to its root, plus a description of the root."""
    key = ("c", p)
    hit = memo.get(key)
    if hit is not None:
        return hit
    links, consumer = net.links, net.index.consumer
    path = []
    q = p
    while True:
        i = consumer.get(q)
        if i is None:
            res = (0, arr_pos[q], tuple(path))
            break
        ln = links[i]
        if ln.label is CUT:
            other = ln.sources[1] if ln.sources[0] == q else ln.sources[0]
            res = (1, _shape(net, other, 4, memo), tuple(path))
            break
        path.append(_CODE[ln.label] * 2 + (0 if ln.sources[0] == q else 1))
        q = ln.targets[0]
    memo[key] = res
    return res


def _encode(net: Net, start, ordered: bool, marked, arr_pos: dict, memo: dict) -> tuple:
    links = net.links
    idx = net.index
    producer, consumer = idx.producer, idx.consumer
    pnum: dict[int, int] = {}
    lnum: dict[int, int] = {}
    entry: dict[int, int | None] = {}
    queue: deque = deque()

    kind, x, flip = start
    if kind == 0:
        pnum[x] = 0
        queue.append((0, x))
    else:
        ln = links[x]
        lnum[x] = 0
        entry[x] = ln.sources[1] if flip else (ln.sources[0] if ln.sources else None)
        queue.append((1, x))

    while queue:
        k, x = queue.popleft()
        if k == 0:
            i = producer[x]
            if i not in lnum:
                lnum[i] = len(lnum)
                entry[i] = x
                queue.append((1, i))
            i = consumer.get(x)
            if i is not None and i not in lnum:
                lnum[i] = len(lnum)
                entry[i] = x
                queue.append((1, i))
        else:
            ln = links[x]
            srcs = ln.sources
            if ln.label is CUT and entry[x] == srcs[1]:
                srcs = (srcs[1], srcs[0])
            tg = ln.targets
            if not ordered and len(tg) > 1:
                tg = tuple(sorted(tg, key=lambda p: _colour(net, p, arr_pos, memo)))
            for p in srcs + tg:
                if p not in pnum:
                    pnum[p] = len(pnum)
                    queue.append((0, p))

    enc = [None] * len(lnum)
    for i, n in lnum.items():
        ln = links[i]
        lab = ln.label
        code = _CODE[lab]
        srcs = tuple([pnum[p] for p in ln.sources])
        tgts = tuple([pnum[p] for p in ln.targets])
        if lab is CUT:
            if srcs[0] > srcs[1]:
                srcs = (srcs[1], srcs[0])
            if marked is not None and ln.id == marked:
                code = _MARK
        elif lab is DAIMON and not ordered:
            tgts = tuple(sorted(tgts))
        enc[n] = (code, srcs, tgts)
    concl = tuple(sorted((arr_pos[p], pnum[p]) for p in pnum if p in arr_pos))
    return (concl, tuple(enc))


def _component_key(net: Net, comp: list[int], ordered: bool, marked, arr_pos: dict, memo: dict) -> tuple:
    links = net.links
    best_concl = None
    for i in comp:
        for p in links[i].targets:
            if p in arr_pos and (best_concl is None or arr_pos[p] < arr_pos[best_concl]):
                best_concl = p
    if best_concl is not None:
        return _encode(net, (0, best_concl, False), ordered, marked, arr_pos, memo)
    cuts = [i for i in comp if links[i].label is CUT]
    if not cuts:
        # a closed cut-free component is a lone ⨯₀
        return ((), ((0, (), ()),))

    col = _refine(net, comp, marked)
    best = min(col[i] for i in cuts)
    starts = []
    for i in cuts:
        if col[i] != best:
            continue
        a, b = (col[net.index.producer[p]] for p in links[i].sources)
        starts += [(i, False)] if a < b else [(i, True)] if b < a else [(i, False), (i, True)]
    return min(_encode(net, (1, i, f), ordered, marked, arr_pos, memo) for i, f in starts)


def _refine(net: Net, comp: list[int], marked) -> dict[int, int]:
    """Colour refinement of the links of a component, used only to pick invariant start points."""
    links = net.links
    idx = net.index
    col = {}
    for i in comp:
        ln = links[i]
        m = 1 if (marked is not None and ln.id == marked) else 0
        col[i] = hash((_CODE[ln.label], len(ln.targets), m))
    ncls = len(set(col.values()))
    for _ in range(len(comp)):
        new = {}
        for i in comp:
            ln = links[i]
            up = [col[idx.producer[p]] for p in ln.sources]
            if ln.label is CUT:
                up.sort()
            down = []
            for p in ln.targets:
                c = idx.consumer.get(p)
                if c is not None:
                    cl = links[c]
                    slot = -1 if cl.label is CUT else cl.sources.index(p)
                    down.append((col[c], slot))
            down.sort()
            new[i] = hash((col[i], tuple(up), tuple(down)))
        k = len(set(new.values()))
        col = new
        if k == ncls:
            break
        ncls = k
    return col


def _key(net: Net, ordered: bool, marked) -> tuple:
    arr_pos = {p: i for i, p in enumerate(net.arrangement)}
    memo: dict = {}
    comps = connected_components(net)
    return tuple(sorted(_component_key(net, c, ordered, marked, arr_pos, memo) for c in comps))


def canonical_form(net: Net) -> tuple:
    """Equal keys iff the nets are isomorphic as ordered nets (cut orientation ignored)."""
    key = net._cache.get("canon")
    if key is None:
        key = _key(net, True, None)
        net._cache["canon"] = key
    return key


def state_key(net: Net, marked: int | None = None) -> tuple:
    """Key up to isomorphism and daimon target order; optionally tracking one cut."""
    if marked is None:
        key = net._cache.get("state")
        if key is None:
            key = _key(net, False, None)
            net._cache["state"] = key
        return key
    return _key(net, False, marked)


def isomorphic(a: Net, b: Net) -> bool:
    return canonical_form(a) == canonical_form(b)
