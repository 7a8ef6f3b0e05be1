"""Proof nets with daimons: cut elimination, correctness, tests and realisability."""

from .canon import canonical_form, isomorphic, state_key
from .correctness import dr_check, partition_check, sequentialize, test_check, tests
from .formula import Par, Tensor, Var, dual, parse_formula, parse_sequent
from .net import Link, LinkLabel, Net, NetError, daimon_net, interaction, merge, net_from, parallel
from .netio import format_net, parse_net, to_dot
from .proofs import ProofTree, check_proof, desequentialize
from .realisability import basis_one, basis_par, opponents_for, realizes
from .rewrite import ReductionChoice, redexes, step
from .search import Budget, explore, is_orthogonal, orthogonal, reaches_zero

__all__ = [
    "Budget", "Link", "LinkLabel", "Net", "NetError", "Par", "ProofTree", "ReductionChoice", "Tensor", "Var",
    "basis_one", "basis_par", "canonical_form", "check_proof", "daimon_net", "desequentialize", "dr_check",
    "dual", "explore", "format_net", "interaction", "is_orthogonal", "isomorphic", "merge", "net_from",
    "opponents_for", "orthogonal", "parallel", "parse_formula", "parse_net", "parse_sequent", "partition_check",
    "reaches_zero", "realizes", "redexes", "sequentialize", "state_key", "step", "test_check", "tests", "to_dot",
]
