import json

import pytest

from mllnet.canon import canonical_form
from mllnet.correctness import dr_check, tests
from mllnet.formula import Par, Tensor, Var, dual
from mllnet.net import daimon_net, net_from, parallel
from mllnet.netio import format_net
from mllnet.proofs import ProofTree, desequentialize
from mllnet.realisability import (BASIS, BOTH, TESTS, adequacy_experiment, basis_one, basis_par,
                                  completeness_experiment, daimon_par, formula_opponents, load_basis,
                                  local_duality_check, merge_compute_check, merge_in_composition_check,
                                  merges, mll_discrimination, opponents_for, orthogonals_of_one,
                                  par_orientations, par_over, realizes, tensor_over)
from mllnet.search import is_orthogonal

X, Y = Var("X"), Var("Y")
Xb = dual(X)


def test_basis_one_flags():
    b = basis_one()
    assert b.approximable and b.daimon_basis
    assert b.validate() == []
    for o in orthogonals_of_one():
        assert is_orthogonal(daimon_net(1), o) is True


def test_basis_par_flags():
    b = basis_par()
    assert not b.approximable
    assert b.validate() == []
    assert b.entry(X).opponents == (daimon_par(),)
    assert b.entry(Xb).generators == (daimon_par(),)


def test_basis_par_pool_is_orthogonal_to_daimon_par():
    pool = basis_par().entry(X).generators
    assert pool
    assert all(is_orthogonal(n, daimon_par()) for n in pool)
    assert canonical_form(daimon_net(1)) not in {canonical_form(n) for n in pool}


def test_daimon_par_facts():
    # ⨯₁ is not in {⨯⅋}⊥: the split always leaves two empty daimons
    assert is_orthogonal(daimon_net(1), daimon_par(), optimized=False) is False
    assert is_orthogonal(daimon_net(2), parallel(daimon_par(), daimon_par()), optimized=False) is False


def test_flipped_orientation_swaps_roles():
    b = basis_par(["X"])
    assert b.entry(X).generators == (daimon_par(),)
    assert b.entry(Y).opponents == (daimon_par(),)
    assert [o.name for o in par_orientations(["Y", "X"])] == ["par", "par[X]", "par[Y]", "par[X,Y]"]


def test_opponent_counts():
    assert len(opponents_for([X], basis_one())) == 3
    assert len(opponents_for([Par(X, Y)], None, TESTS)) == 1
    keys = {canonical_form(o.net) for o in opponents_for([X, Y], basis_par(), BASIS)}
    assert canonical_form(parallel(daimon_par(), daimon_par())) in keys
    with pytest.raises(ValueError):
        opponents_for([], basis_one())
    with pytest.raises(ValueError):
        opponents_for([X], None, BASIS)


def test_compound_opponents_have_the_right_root():
    b = basis_one()
    for o in formula_opponents(Par(X, Y), b):
        assert o.producer(o.arrangement[0]).label.name == "TENSOR"
    for o in formula_opponents(Tensor(X, Y), b):
        assert o.producer(o.arrangement[0]).label.name == "PAR"


def test_realizes_examples():
    assert realizes(daimon_net(2), [X, Xb], basis_par(), BASIS).passed is True
    assert realizes(daimon_net(2), [X, Y], basis_par(), BASIS).passed is False
    r = realizes(daimon_par(), [Par(X, Y)], basis_one(), TESTS)
    assert r.passed is False and "fails" in r.summary()
    with pytest.raises(ValueError):
        realizes(daimon_net(1), [X, Y], basis_one())


@pytest.mark.parametrize("k", [1, 2, 3])
def test_daimon_proofs_realize_any_literal_sequent(k):
    gammas = [tuple([X] * k), tuple([X, Xb, Y][:k]), tuple([Y] * k)]
    proofs = [ProofTree.daimon(*g) for g in gammas]
    rep = adequacy_experiment(proofs, basis_one())
    assert rep.ok and rep.total == 3


def test_tensor_net_fails_par_opponents():
    t = net_from([("dai", [], ["a"]), ("dai", [], ["b"]), ("tensor", ["a", "b"], ["c"])], ["c"])
    r = realizes(t, [Par(X, Y)], basis_one(), BOTH)
    assert r.passed is False


def test_completeness_examples():
    assert mll_discrimination(daimon_net(2), [X, Y]) == (False, False)
    assert mll_discrimination(daimon_net(2), [X, Xb]) == (True, True)
    assert realizes(daimon_net(2), [X, Y], basis_one()).passed is True
    rep = completeness_experiment([daimon_par()], [Par(X, Y)])
    assert rep.ok and rep.total == 1


def test_proof_realizes_its_sequent():
    p = ProofTree.par(ProofTree.daimon(X, Y))
    net = desequentialize(p)
    assert realizes(net, [Par(X, Y)], basis_one(), TESTS).passed is True


def test_merge_compute_examples():
    assert merge_compute_check(daimon_net(1), daimon_net(1), 0, 2)
    t = net_from([("dai", [], ["p1"]), ("dai", [], ["p2"]), ("tensor", ["p1", "p2"], ["p"])], ["p"])
    s = daimon_net(1)
    assert merge_compute_check(s, t, 0, 1)


@pytest.mark.parametrize("k", [0, 2])
def test_local_duality(k):
    assert local_duality_check(daimon_net(1), daimon_net(1), k)
    for o in orthogonals_of_one()[1:]:
        assert local_duality_check(daimon_net(1), o, k)


def test_finite_duality_on_basis_one():
    opp = orthogonals_of_one()
    gens = [daimon_net(1)]
    for a in gens:
        for b in gens:
            g = tensor_over(a, b)
            for x in opp:
                for y in opp:
                    for m in merges(x, y):
                        assert is_orthogonal(g, par_over(m)) is True
    for x in opp:
        for y in opp:
            g = tensor_over(x, y)
            for a in gens:
                for b in gens:
                    for m in merges(a, b):
                        assert is_orthogonal(par_over(m), g) is True


def test_merge_in_composition():
    for o in orthogonals_of_one():
        assert merge_in_composition_check(daimon_net(1), daimon_net(1), o)


def test_tests_are_opponents_of_proofs():
    for a in [Par(X, Y), Tensor(X, Y), Par(Tensor(X, Y), Xb)]:
        for t in tests(a):
            assert dr_check(t).correct


def test_load_basis(tmp_path):
    (tmp_path / "one.net").write_text("dai p0\nconclusions: p0\n")
    (tmp_path / "b.json").write_text(json.dumps({
        "name": "custom",
        "default": {"positive": {"generators": ["one.net"], "opponents": ["one.net"]},
                    "negative": {"generators": ["one.net"], "opponents": ["one.net"]}}}))
    b = load_basis(tmp_path / "b.json")
    assert b.name == "custom" and b.approximable
    (tmp_path / "dp.net").write_text(format_net(daimon_par()))
    (tmp_path / "bad.json").write_text(json.dumps({
        "default": {"positive": {"generators": ["one.net"], "opponents": ["dp.net"]},
                    "negative": {"generators": ["one.net"], "opponents": []}}}))
    with pytest.raises(ValueError):
        load_basis(tmp_path / "bad.json")
