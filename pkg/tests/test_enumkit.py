import random

import pytest
from hypothesis import given, strategies as st

from mllnet.correctness import dr_check
from mllnet.enumkit import (bell, count_proofs, enum_proofs, enum_testable, instantiate, random_net,
                            sample_paths, set_partitions, shape_sequents, testable_corpus)
from mllnet.formula import PATTERN_VAR, Par, Tensor, Var, leaves
from mllnet.labelling import is_testable
from mllnet.net import DAIMON, validate
from mllnet.proofs import check_proof, conclusion, desequentialize
from mllnet.rewrite import redexes
from mllnet.search import replay

X, Y, Z = Var("X"), Var("Y"), Var("Z")


@pytest.mark.parametrize("gamma,count", [((X, Y), 2), ((Par(X, Y),), 2), ((Tensor(X, Y), Z), 5),
                                         ((Par(Tensor(X, Y), Z), X), 15)])
def test_enum_testable_counts(gamma, count):
    nets = list(enum_testable(gamma))
    assert len(nets) == count
    for n in nets:
        assert is_testable(n, gamma, atomic=True)


def test_enum_testable_bound():
    with pytest.raises(ValueError):
        list(enum_testable((Tensor(Tensor(X, Y), Tensor(X, Y)), Tensor(X, Y), X), max_leaves=6))


@given(st.integers(0, 7))
def test_set_partitions_count(n):
    parts = list(set_partitions(range(n)))
    assert len(parts) == bell(n)
    assert len({tuple(map(tuple, p)) for p in parts}) == len(parts)


def test_bell_numbers():
    assert [bell(n) for n in range(8)] == [1, 1, 2, 5, 15, 52, 203, 877]


def test_shape_sequents_bounds():
    seqs = shape_sequents(1, 2)
    assert {tuple(str(a) for a in s) for s in seqs} >= {(PATTERN_VAR,), (PATTERN_VAR, PATTERN_VAR)}
    for s in shape_sequents(3, 5):
        assert sum(len(leaves(a)) for a in s) <= 5


def test_instantiate_cycles_names():
    seq = (Tensor(Var(PATTERN_VAR), Var(PATTERN_VAR)), Var(PATTERN_VAR))
    assert instantiate(seq, ["X", "Y"]) == (Tensor(X, Y), X)


def test_corpus_size():
    corpus = testable_corpus()
    assert len(corpus) == 9241
    assert all(len(n) == len(g) for g, n in corpus[:500])


@pytest.mark.parametrize("rules,count", [(1, 20), (2, 52), (3, 1672), (4, 11144)])
def test_proof_counts_match_independent_recursion(rules, count):
    assert count_proofs(2, rules) == count
    if rules <= 3:
        assert len(enum_proofs(["X", "Y"], rules)) == count


def test_enumerated_proofs_are_valid():
    for p in enum_proofs(["X", "Y"], 3):
        assert check_proof(p)
        assert dr_check(desequentialize(p)).correct
        assert len(desequentialize(p)) == len(conclusion(p))


@given(st.integers(0, 10_000))
def test_random_net_bounds(seed):
    n = random_net(random.Random(seed))
    validate(n)
    assert len(n.links) <= 12 and len(n.cuts) <= 3 and len(n) <= 2
    assert all(len(ln.targets) <= 2 for ln in n.links if ln.label is DAIMON)


@given(st.integers(0, 10_000))
def test_sampled_paths_are_maximal(seed):
    n = random_net(random.Random(seed))
    (path,) = sample_paths(n, 1, seed)
    end = replay(n, path)[-1]
    assert redexes(end) == []
    assert sample_paths(n, 1, seed) == [path]
