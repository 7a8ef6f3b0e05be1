import random

import pytest
from hypothesis import given, strategies as st

from conftest import cut_free_nets, nets
from mllnet.canon import canonical_form
from mllnet.net import (CUT, DAIMON, PAR, TENSOR, Hypergraph, Link, Net, NetError, addresses, daimon_net, daimon_part,
                        extract_daimons, generalized_link, hsum, interaction, merge, mk_link, net_from,
                        parallel, resolve_address)


def test_daimon_link_hypergraph():
    h = mk_link(DAIMON, [], [1, 2, 3])
    assert h.conclusions == {1, 2, 3}
    assert h.premises == set()
    assert mk_link(DAIMON, [], []).positions == frozenset()


def test_cut_loop_rejected():
    with pytest.raises(NetError):
        mk_link(CUT, [4, 4], [])


def test_sum_shares_positions():
    h = hsum(mk_link(TENSOR, [1, 2], [3]), mk_link(DAIMON, [], [1, 2]))
    assert h.positions == {1, 2, 3}
    assert len(h.links) == 2
    assert h.conclusions == {3}


def test_sum_unit():
    h = mk_link(PAR, [1, 2], [3])
    assert hsum(h, Hypergraph()) == h


def test_sum_of_two_generic_links():
    # hypergraph sum does not look at link shapes: a (a,b,c)->(d,e) link and a (b,u)->(v) link
    h1 = Hypergraph(frozenset({1, 2, 3, 4, 5}), (Link(0, TENSOR, (1, 2, 3), (4, 5)),))
    h2 = Hypergraph(frozenset({2, 6, 7}), (Link(0, PAR, (2, 6), (7,)),))
    h = hsum(h1, h2)
    assert h.positions == {1, 2, 3, 4, 5, 6, 7}
    assert sorted(ln.id for ln in h.links) == [0, 1]
    assert h.conclusions == {4, 5, 7}


def test_parallel_orders_conclusions():
    a = net_from([("dai", [], ["p"])], ["p"])
    b = net_from([("dai", [], ["q"])], ["q"])
    n = parallel(a, b)
    assert [n.name_of(p) for p in n.arrangement] == ["p", "q"]


def test_parallel_renames_shared_position():
    a = net_from([("dai", [], ["a", "b", "c"]), ("par", ["a", "b"], ["d"])], ["c", "d"])
    b = net_from([("dai", [], ["b", "u"]), ("tensor", ["b", "u"], ["v"])], ["v"])
    n = parallel(a, b)
    assert len(n.positions) == 7
    names = {n.name_of(p) for p in n.positions}
    assert "b" in names and "b'" in names


@pytest.mark.parametrize("bad", [
    # two links sharing a target
    ([Link(0, DAIMON, (), (0,)), Link(1, DAIMON, (), (0,))], (0,)),
    # two links sharing a source
    ([Link(0, DAIMON, (), (0, 1, 2)), Link(1, PAR, (0, 1), (3,)), Link(2, CUT, (0, 2), ())], (3,)),
    # position with no producer
    ([Link(0, PAR, (0, 1), (2,))], (2,)),
    # arrangement not onto the conclusions
    ([Link(0, DAIMON, (), (0, 1))], (0,)),
    # arrangement repeats a conclusion
    ([Link(0, DAIMON, (), (0, 1))], (0, 0, 1)),
    # repeated position inside a target list
    ([Link(0, DAIMON, (), (0, 0))], (0,)),
])
def test_validation_rejects(bad):
    links, arr = bad
    with pytest.raises(NetError):
        Net(tuple(links), arr)


def test_canonical_renaming():
    a = net_from([("dai", [], ["p"])], ["p"])
    b = net_from([("dai", [], ["q"])], ["q"])
    assert canonical_form(a) == canonical_form(b)


def test_canonical_distinguishes_grouping():
    a = net_from([("dai", [], ["p1", "p2"])], ["p1", "p2"])
    b = net_from([("dai", [], ["p1"]), ("dai", [], ["p2"])], ["p1", "p2"])
    assert canonical_form(a) != canonical_form(b)


def test_canonical_distinguishes_labels():
    a = net_from([("dai", [], ["a", "b"]), ("tensor", ["a", "b"], ["c"])], ["c"])
    b = net_from([("dai", [], ["a", "b"]), ("par", ["a", "b"], ["c"])], ["c"])
    assert canonical_form(a) != canonical_form(b)


def scramble(net: Net, rng: random.Random) -> Net:
    ps = sorted(net.positions)
    image = rng.sample(range(1000, 1000 + 3 * len(ps) + 1), len(ps))
    m = dict(zip(ps, image))
    ids = rng.sample(range(500), len(net.links))
    links = []
    for ln, i in zip(net.links, ids):
        src = tuple(m[p] for p in ln.sources)
        if ln.label is CUT and rng.random() < 0.5:
            src = src[::-1]
        links.append(Link(i, ln.label, src, tuple(m[p] for p in ln.targets)))
    rng.shuffle(links)
    return Net(tuple(links), tuple(m[p] for p in net.arrangement))


@given(nets(), st.integers(0, 1000))
def test_canonical_invariant_under_renaming(n, seed):
    assert canonical_form(scramble(n, random.Random(seed))) == canonical_form(n)


def test_canonical_sees_arrangement_and_source_order():
    n = net_from([("dai", [], ["a", "b"]), ("tensor", ["a", "b"], ["c"]), ("dai", [], ["d"])], ["c", "d"])
    swapped = Net(n.links, n.arrangement[::-1])
    assert canonical_form(swapped) != canonical_form(n)
    m = net_from([("dai", [], ["a"]), ("dai", [], ["b", "x"]), ("tensor", ["a", "b"], ["c"])], ["c", "x"])
    flipped = net_from([("dai", [], ["a"]), ("dai", [], ["b", "x"]), ("tensor", ["b", "a"], ["c"])], ["c", "x"])
    assert canonical_form(m) != canonical_form(flipped)


@given(nets(6, 1), nets(6, 1), nets(6, 1))
def test_parallel_associative(a, b, c):
    assert canonical_form(parallel(a, parallel(b, c))) == canonical_form(parallel(parallel(a, b), c))


def test_daimon_part_examples():
    n = net_from([("dai", [], ["a", "b"]), ("dai", [], ["c"])], ["a", "b", "c"])
    assert sorted(map(sorted, daimon_part(n))) == [[0, 1], [2]]
    assert daimon_part(daimon_net(0)) == [frozenset()]
    t = net_from([("dai", [], ["p1"]), ("dai", [], ["p2"]), ("tensor", ["p1", "p2"], ["p"])], ["p"])
    assert sorted(map(sorted, daimon_part(t))) == [[0], [1]]


def test_extract_daimons_order():
    s = net_from([("dai", [], ["a", "b"]), ("par", ["a", "b"], ["c"])], ["c"])
    sx = extract_daimons(s)
    assert [sx.name_of(p) for p in sx.arrangement] == ["a", "b"]
    t = net_from([("dai", [], ["b"]), ("dai", [], ["a"]), ("tensor", ["a", "b"], ["c"])], ["c"])
    assert [t.name_of(p) for p in extract_daimons(t).arrangement] == ["a", "b"]
    u = net_from([("dai", [], ["a", "d"]), ("dai", [], ["b"]), ("tensor", ["a", "b"], ["c1"])], ["c1", "d"])
    assert [u.name_of(p) for p in extract_daimons(u).arrangement] == ["a", "b", "d"]


@given(cut_free_nets())
def test_extract_daimons_partitions_initials(n):
    sx = extract_daimons(n)
    assert set(sx.arrangement) == n.initial_positions
    assert sorted(map(sorted, daimon_part(sx))) == sorted(map(sorted, daimon_part(n)))


def test_resolve_address():
    n = net_from([("dai", [], ["a", "b"]), ("par", ["a", "b"], ["c"])], ["c"])
    assert n.name_of(resolve_address(n, 1, "l")) == "a"
    assert n.name_of(resolve_address(n, 1, "")) == "c"
    with pytest.raises(NetError):
        resolve_address(n, 1, "ll")
    assert addresses(n)[resolve_address(n, 1, "r")] == (1, "r")


def test_merge_examples():
    p = net_from([("dai", [], ["p"])], ["p"])
    q = net_from([("dai", [], ["q"])], ["q"])
    m = merge(p, 0, q, 0)
    assert len(m.links) == 1 and len(m.links[0].targets) == 2
    assert canonical_form(merge(daimon_net(3), 0, daimon_net(0), 0)) == canonical_form(daimon_net(3))
    s = net_from([("dai", [], ["a", "b"]), ("par", ["a", "b"], ["c"])], ["c"])
    m = merge(s, 0, daimon_net(1), 0)
    assert len(m) == 2 and len(m.link(0).targets) == 3


@given(nets(8, 1), nets(8, 1), st.data())
def test_merge_invariants(a, b, data):
    d1 = data.draw(st.sampled_from(a.daimons)).id
    d2 = data.draw(st.sampled_from(b.daimons)).id
    m = merge(a, d1, b, d2)
    assert len(m.links) == len(a.links) + len(b.links) - 1
    assert len(m) == len(a) + len(b)
    assert sum(ln.label is not DAIMON for ln in m.links) == sum(ln.label is not DAIMON for ln in a.links + b.links)
    kept = [ln for ln in a.links if ln.label is not DAIMON]
    assert all(ln in m.links for ln in kept)


def test_generalized_links():
    h = generalized_link(PAR, [0, 1], 2)
    assert len(h.links) == 1 and h.links[0].sources == (0, 1) and h.links[0].targets == (2,)
    h = generalized_link(PAR, [0, 1, 2])
    assert len(h.links) == 2
    internal = {p for ln in h.links for p in ln.targets} & {p for ln in h.links for p in ln.sources}
    assert len(internal) == 1
    assert len(h.positions) == 5  # three inputs, one internal, one output
    t = generalized_link(TENSOR, [0, 1, 2])
    assert [ln.label for ln in t.links] == [TENSOR, TENSOR]
    with pytest.raises(NetError):
        generalized_link(PAR, [0])


def test_interaction_shapes():
    one = daimon_net(1)
    i = interaction(one, one)
    assert len(i) == 0 and len(i.cuts) == 1
    s = daimon_net(3)
    i = interaction(s, one)
    assert len(i.cuts) == 1
    assert i.arrangement == s.arrangement[1:]


def test_interaction_of_drawn_pair():
    s = net_from([("dai", [], ["a", "b", "c"]), ("par", ["a", "b"], ["d"])], ["d", "c"])
    t = net_from([("dai", [], ["p", "q"]), ("tensor", ["p", "q"], ["r"])], ["r"])
    i = interaction(s, t)
    (cut,) = i.cuts
    assert {i.producer(p).label for p in cut.sources} == {PAR, TENSOR}
    assert [i.name_of(p) for p in i.arrangement] == ["c"]
