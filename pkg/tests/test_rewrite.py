import pytest
from hypothesis import given

from conftest import nets
from mllnet.canon import canonical_form, state_key
from mllnet.net import CUT, net_from
from mllnet.rewrite import CutKind, ReductionChoice, cut_kind, redexes, sn_measure, splits, step


def only_cut(n):
    (c,) = n.cuts
    return c.id


def test_multiplicative_kind():
    n = net_from([("dai", [], ["a", "b"]), ("par", ["a", "b"], ["p"]),
                  ("dai", [], ["c"]), ("dai", [], ["d"]), ("tensor", ["c", "d"], ["q"]),
                  ("cut", ["p", "q"], [])], [])
    assert cut_kind(n, only_cut(n)).kind is CutKind.MULTIPLICATIVE


def test_cyclic_glueing_is_stuck():
    n = net_from([("dai", [], ["p", "q"]), ("cut", ["p", "q"], [])], [])
    ct = cut_kind(n, only_cut(n))
    assert ct.kind is CutKind.GLUEING and ct.cyclic and not ct.reducible
    assert redexes(n) == []


def test_clash_has_no_redex():
    n = net_from([("dai", [], ["a", "b"]), ("tensor", ["a", "b"], ["p"]),
                  ("dai", [], ["c", "d"]), ("tensor", ["c", "d"], ["q"]),
                  ("cut", ["p", "q"], [])], [])
    assert cut_kind(n, only_cut(n)).kind is CutKind.CLASH
    assert redexes(n) == []


def test_glueing_single_choice():
    n = net_from([("dai", [], ["a"]), ("dai", [], ["b"]), ("cut", ["a", "b"], [])], [])
    assert len(redexes(n)) == 1


def irreversible_net():
    return net_from([("dai", [], ["a", "c1", "c2"]), ("dai", [], ["b1", "b2"]),
                     ("par", ["b1", "b2"], ["b"]), ("cut", ["a", "b"], [])], ["c1", "c2"])


def test_irreversible_splits():
    n = irreversible_net()
    rs = redexes(n)
    assert len(rs) == 4
    named = {tuple(tuple(n.name_of(p) for p in cls) for cls in r.split) for r in rs}
    assert named == {(("c1", "c2"), ()), (("c1",), ("c2",)), (("c2",), ("c1",)), ((), ("c1", "c2"))}


def test_relative_order_splits_cover_all_orders():
    # every split with arbitrary class orders gives a state already reached by an order-keeping split
    n = irreversible_net()
    kept = {state_key(step(n, r)) for r in redexes(n)}
    every = {state_key(step(n, r)) for r in redexes(n, all_orders=True)}
    assert every == kept
    assert len(list(splits((1, 2, 3)))) == 8


def test_reversible_step():
    n = net_from([("dai", [], ["x", "q", "y"]), ("dai", [], ["p1"]), ("dai", [], ["p2"]),
                  ("tensor", ["p1", "p2"], ["p"]), ("cut", ["p", "q"], [])], ["x", "y"])
    (r,) = redexes(n)
    out = step(n, r)
    want = net_from([("dai", [], ["x", "q1", "q2", "y"]), ("dai", [], ["p1"]), ("dai", [], ["p2"]),
                     ("cut", ["p1", "q1"], []), ("cut", ["p2", "q2"], [])], ["x", "y"])
    assert canonical_form(out) == canonical_form(want)


def test_glueing_step():
    n = net_from([("dai", [], ["x", "a"]), ("cut", ["a", "b"], []), ("dai", [], ["b", "y"])], ["x", "y"])
    out = step(n, redexes(n)[0])
    assert canonical_form(out) == canonical_form(net_from([("dai", [], ["x", "y"])], ["x", "y"]))


def test_multiplicative_step():
    n = net_from([("dai", [], ["p1", "p2"]), ("par", ["p1", "p2"], ["p"]),
                  ("dai", [], ["q1"]), ("dai", [], ["q2"]), ("tensor", ["q1", "q2"], ["q"]),
                  ("cut", ["p", "q"], [])], [])
    out = step(n, redexes(n)[0])
    want = net_from([("dai", [], ["p1", "p2"]), ("dai", [], ["q1"]), ("dai", [], ["q2"]),
                     ("cut", ["p1", "q1"], []), ("cut", ["p2", "q2"], [])], [])
    assert canonical_form(out) == canonical_form(want)
    assert sn_measure(out) == (sn_measure(n)[0] - 2, sn_measure(n)[1] + 1)


def test_measure_per_rule():
    glue = net_from([("dai", [], ["x", "a"]), ("cut", ["a", "b"], []), ("dai", [], ["b", "y"])], ["x", "y"])
    c, k = sn_measure(glue)
    assert sn_measure(step(glue, redexes(glue)[0])) == (c, k - 1)
    rev = net_from([("dai", [], ["q"]), ("dai", [], ["p1"]), ("dai", [], ["p2"]),
                    ("tensor", ["p1", "p2"], ["p"]), ("cut", ["p", "q"], [])], [])
    c, k = sn_measure(rev)
    assert sn_measure(step(rev, redexes(rev)[0])) == (c - 1, k + 1)


def test_step_rejects_unknown_cut():
    n = irreversible_net()
    with pytest.raises(ValueError):
        step(n, ReductionChoice(99))


@given(nets())
def test_step_preserves_conclusions_and_decreases_measure(n):
    for r in redexes(n):
        out = step(n, r)
        assert out.arrangement == n.arrangement
        assert sn_measure(out) < sn_measure(n)


@given(nets())
def test_stuck_iff_every_cut_is_clash_or_cyclic(n):
    blocked = all(not cut_kind(n, c).reducible for c in n.cuts)
    assert (redexes(n) == []) == blocked


@given(nets())
def test_step_results_validate(n):
    from mllnet.net import Net
    for r in redexes(n):
        out = step(n, r)
        Net(out.links, out.arrangement)  # full validation
        assert all(ln.label is not CUT or len(ln.sources) == 2 for ln in out.links)
