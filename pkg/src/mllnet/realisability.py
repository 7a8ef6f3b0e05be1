"""Realisability against finite opponent sets.

A basis gives, for each literal, finitely many generators (members of the
literal's type) and opponents (members of its orthogonal).  Opponents of
compound formulas are built compositionally: a ⊗-rooted net over a pair of
opponents for A⅋B, and a ⅋-rooted net over a merge of a pair of opponents for
A⊗B.  A sequent's opponents are parallel compositions.  Passing every finite
opponent is a necessary condition for membership in the type, never a proof of
it; reports say "passes all finite opponents".
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .canon import canonical_form, state_key
from .correctness import dr_check, sequentialize, tests
from .formula import PATTERN_VAR, Formula, Par, Tensor, Var, all_shapes, connectives, dual, pattern
from .labelling import is_testable, syntax_forest
from .net import DAIMON, PAR, TENSOR, Link, Net, daimon_net, interaction, merge, net_from, parallel, parallel_all
from .proofs import MLL, ProofTree, conclusion, desequentialize
from .search import (DEFAULT_BUDGET, Budget, is_orthogonal, reaches, reaches_daimon, reaches_zero)

TESTS, BASIS, BOTH = "tests", "basis", "both"


def _dedupe(nets: Iterable[Net]) -> tuple[Net, ...]:
    out: dict = {}
    for n in nets:
        out.setdefault(canonical_form(n), n)
    return tuple(out[k] for k in sorted(out))


def tensor_over(a: Net, b: Net) -> Net:
    """⊗ on the first conclusions of a ∥ b; the new conclusion comes last."""
    ab = parallel(a, b)
    x, y = ab.arrangement[0], ab.arrangement[len(a)]
    (out,) = ab.fresh_positions(1)
    (lid,) = ab.fresh_link_ids(1)
    arr = ab.arrangement[1:len(a)] + ab.arrangement[len(a) + 1:] + (out,)
    return Net.trusted(ab.links + (Link(lid, TENSOR, (x, y), (out,)),), arr, ab.names)


def par_over(n: Net) -> Net:
    """⅋ on the first two conclusions; the new conclusion comes first."""
    x, y = n.arrangement[0], n.arrangement[1]
    (out,) = n.fresh_positions(1)
    (lid,) = n.fresh_link_ids(1)
    return Net.trusted(n.links + (Link(lid, PAR, (x, y), (out,)),), (out,) + n.arrangement[2:], n.names)


def merges(a: Net, b: Net) -> list[Net]:
    """a ⋈_{d,d'} b for every daimon d of a and d' of b."""
    return [merge(a, d.id, b, e.id) for d in a.daimons for e in b.daimons]


# -- bases ------------------------------------------------------------------

@dataclass(frozen=True)
class Entry:
    generators: tuple[Net, ...]
    opponents: tuple[Net, ...]


@dataclass(frozen=True)
class Basis:
    """Finite generators/opponents per literal: defaults per polarity plus per-variable overrides."""

    name: str
    positive: Entry
    negative: Entry
    overrides: tuple[tuple[str, Entry, Entry], ...] = ()

    def entry(self, v: Var) -> Entry:
        for name, pos, neg in self.overrides:
            if name == v.name:
                return pos if v.positive else neg
        return self.positive if v.positive else self.negative

    def entries(self) -> list[Entry]:
        return [self.positive, self.negative] + [e for _, p, n in self.overrides for e in (p, n)]

    @property
    def approximable(self) -> bool:
        one = canonical_form(daimon_net(1))
        return all(any(canonical_form(g) == one for g in e.generators) for e in self.entries())

    @property
    def daimon_basis(self) -> bool:
        def rooted(n: Net, label) -> bool:
            return len(n) == 1 and n.producer(n.arrangement[0]).label is label
        return all(any(rooted(o, PAR) for o in e.opponents) and any(rooted(o, TENSOR) for o in e.opponents)
                   for e in self.entries())

    def validate(self) -> list[str]:
        """Finite consistency checks; returns a list of problems (empty when consistent)."""
        problems = []
        groups = [("default", self.positive, self.negative)] + list(self.overrides)
        for name, pos, neg in groups:
            for tag, e in (("+", pos), ("-", neg)):
                for n in e.generators + e.opponents:
                    if len(n) != 1:
                        problems.append(f"{name}{tag}: member with {len(n)} conclusions")
                for g in e.generators:
                    for o in e.opponents:
                        if is_orthogonal(g, o) is not True:
                            problems.append(f"{name}{tag}: a generator is not orthogonal to an opponent")
            # generators of X⊥ must lie in the orthogonal of X
            for g in neg.generators:
                for h in pos.generators:
                    if is_orthogonal(g, h) is not True:
                        problems.append(f"{name}: a generator of the negation is not orthogonal to a generator")
        return problems


def daimon_par() -> Net:
    """⨯⅋ = ⨯⟨a⟩ + ⨯⟨b⟩ + ⅋(a,b)→c, the geometrically incorrect net."""
    return net_from([("dai", [], ["a"]), ("dai", [], ["b"]), ("par", ["a", "b"], ["c"])], ["c"])


def orthogonals_of_one() -> tuple[Net, ...]:
    """The three small nets orthogonal to ⨯₁: ⨯₁, ⊗ over two daimons, ⅋ over one daimon."""
    return (
        daimon_net(1),
        net_from([("dai", [], ["p1"]), ("dai", [], ["p2"]), ("tensor", ["p1", "p2"], ["p"])], ["p"]),
        net_from([("dai", [], ["p1", "p2"]), ("par", ["p1", "p2"], ["p"])], ["p"]),
    )


def basis_one() -> Basis:
    e = Entry((daimon_net(1),), orthogonals_of_one())
    return Basis("one", e, e)


def small_one_conclusion_nets(max_connectives: int = 2) -> list[Net]:
    """Every cut-free one-conclusion net whose syntax tree has at most the given connectives."""
    from .enumkit import set_partitions
    out = []
    for shape in all_shapes(max_connectives):
        if connectives(shape) > max_connectives:
            continue
        n = connectives(shape) + 1
        for part in set_partitions(list(range(n))):
            out.append(syntax_forest([shape], part))
    return list(_dedupe(out))


_PAR_POOL: list = []


def par_orthogonal_pool() -> tuple[Net, ...]:
    """Finite members of {⨯⅋}⊥ among small one-conclusion nets."""
    if not _PAR_POOL:
        dp = daimon_par()
        _PAR_POOL.append(tuple(n for n in small_one_conclusion_nets(2) if is_orthogonal(n, dp)))
    return _PAR_POOL[0]


def basis_par(flipped: Iterable[str] = ()) -> Basis:
    """X ↦ {⨯⅋}⊥ and X⊥ ↦ {⨯⅋}⊥⊥; variables in ``flipped`` get the roles swapped."""
    dp = daimon_par()
    pool = par_orthogonal_pool()
    pos = Entry(pool, (dp,))
    neg = Entry((dp,), pool)
    over = tuple((v, neg, pos) for v in sorted(set(flipped)))
    tag = "par" + ("[" + ",".join(sorted(set(flipped))) + "]" if flipped else "")
    return Basis(tag, pos, neg, over)


def par_orientations(var_names: Sequence[str]) -> list[Basis]:
    """basis_par under every choice of flipped variables."""
    names = sorted(set(var_names))
    return [basis_par(c) for k in range(len(names) + 1) for c in itertools.combinations(names, k)]


def load_basis(path: str | Path) -> Basis:
    """JSON basis file: ``{"default": {"positive": E, "negative": E}, "variables": {"X": {...}}}``
    where ``E = {"generators": [net files], "opponents": [net files]}``, paths relative to the file."""
    from .netio import parse_net
    path = Path(path)
    data = json.loads(path.read_text())

    def nets(files) -> tuple[Net, ...]:
        return tuple(parse_net((path.parent / f).read_text(), str(f)) for f in files)

    def entry(d) -> Entry:
        return Entry(nets(d.get("generators", [])), nets(d.get("opponents", [])))

    d = data["default"]
    over = tuple((v, entry(e["positive"]), entry(e["negative"])) for v, e in sorted(data.get("variables", {}).items()))
    b = Basis(data.get("name", path.stem), entry(d["positive"]), entry(d["negative"]), over)
    problems = b.validate()
    if problems:
        raise ValueError("inconsistent basis: " + "; ".join(problems))
    return b


# -- opponents --------------------------------------------------------------

_OPP_CACHE: dict = {}


def formula_opponents(a: Formula, basis: Basis) -> tuple[Net, ...]:
    key = (a, id(basis))
    hit = _OPP_CACHE.get(key)
    if hit is not None and hit[0] is basis:
        return hit[1]
    if isinstance(a, Var):
        res = _dedupe(basis.entry(a).opponents)
    elif isinstance(a, Par):
        res = _dedupe(tensor_over(x, y) for x in formula_opponents(a.left, basis)
                      for y in formula_opponents(a.right, basis))
    else:
        res = _dedupe(par_over(m) for x in formula_opponents(a.left, basis)
                      for y in formula_opponents(a.right, basis) for m in merges(x, y))
    _OPP_CACHE[key] = (basis, res)
    return res


_SEQ_CACHE: dict = {}


@dataclass(frozen=True)
class Opponent:
    net: Net
    provenance: str


def opponents_for(gamma: Sequence[Formula], basis: Basis | None, mode: str = BOTH) -> list[Opponent]:
    """Finite opponents for Γ: tuples of tests, of basis-built opponents, or both (deduplicated)."""
    if not gamma:
        raise ValueError("opponents need a nonempty sequent")
    key = (tuple(gamma), id(basis), mode)
    hit = _SEQ_CACHE.get(key)
    if hit is not None and hit[0] is basis:
        return list(hit[1])
    out: dict = {}
    if mode in (TESTS, BOTH):
        for combo in itertools.product(*(tests(a) for a in gamma)):
            n = parallel_all(list(combo))
            out.setdefault(canonical_form(n), Opponent(n, "tests"))
    if mode in (BASIS, BOTH):
        if basis is None:
            raise ValueError("basis mode needs a basis")
        for combo in itertools.product(*(formula_opponents(a, basis) for a in gamma)):
            n = parallel_all(list(combo))
            out.setdefault(canonical_form(n), Opponent(n, "basis:" + basis.name))
    res = [out[k] for k in sorted(out)]
    if len(_SEQ_CACHE) > 64:
        _SEQ_CACHE.clear()
    _SEQ_CACHE[key] = (basis, tuple(res))
    return res


@dataclass(frozen=True)
class OpponentVerdict:
    opponent: Opponent
    verdict: bool | None


@dataclass(frozen=True)
class RealizeReport:
    passed: bool | None
    checked: int
    total: int
    verdicts: tuple[OpponentVerdict, ...] = ()

    def __bool__(self) -> bool:
        return self.passed is True

    def summary(self) -> str:
        if self.passed is True:
            return f"passes all finite opponents ({self.total})"
        if self.passed is None:
            return f"indeterminate (budget exceeded on some of {self.total} opponents)"
        return f"fails an opponent ({self.checked} of {self.total} checked)"


def realizes(s: Net, gamma: Sequence[Formula], basis: Basis | None, mode: str = BOTH,
             stop_at_first: bool = True, budget: Budget = DEFAULT_BUDGET) -> RealizeReport:
    if len(s) != len(gamma):
        raise ValueError(f"net has {len(s)} conclusions, sequent has {len(gamma)} formulas")
    opps = opponents_for(gamma, basis, mode)
    # tests first: they are decisive for incorrect nets
    opps.sort(key=lambda o: o.provenance != "tests")
    verdicts = []
    undecided = False
    for o in opps:
        v = is_orthogonal(s, o.net, True, budget)
        verdicts.append(OpponentVerdict(o, v))
        if v is None:
            undecided = True
        elif not v and stop_at_first:
            return RealizeReport(False, len(verdicts), len(opps), tuple(verdicts))
    if any(v.verdict is False for v in verdicts):
        return RealizeReport(False, len(verdicts), len(opps), tuple(verdicts))
    return RealizeReport(None if undecided else True, len(verdicts), len(opps), tuple(verdicts))


# -- experiments --------------------------------------------------------------

@dataclass
class ExperimentReport:
    name: str
    total: int = 0
    failures: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"name": self.name, "total": self.total, "failures": self.failures, "notes": self.notes,
                "ok": self.ok}


def adequacy_experiment(proofs: Iterable[ProofTree], basis: Basis, mode: str = BOTH) -> ExperimentReport:
    """Every proof of Γ must pass all finite opponents of Γ.

    Proofs giving the same net and the same sequent shape are checked once
    when the basis treats all literals alike.
    """
    rep = ExperimentReport("adequacy")
    uniform = not basis.overrides and basis.positive == basis.negative
    seen = set()
    for p in proofs:
        rep.total += 1
        gamma = conclusion(p)
        if not gamma:
            rep.notes.append("empty sequent proof skipped")
            continue
        net = desequentialize(p)
        key = (canonical_form(net), tuple(pattern(a) for a in gamma) if uniform else gamma)
        if key in seen:
            continue
        seen.add(key)
        r = realizes(net, gamma, basis, mode)
        if r.passed is not True:
            from .proofs import format_proof
            from .formula import format_sequent
            rep.failures.append({"proof": format_proof(p), "sequent": format_sequent(gamma),
                                 "result": r.summary()})
    rep.notes.append(f"{len(seen)} distinct (net, sequent) pairs checked")
    return rep


def completeness_experiment(nets: Iterable[Net], gamma: Sequence[Formula], mode: str = BOTH) -> ExperimentReport:
    """Passing basis-one opponents must coincide with testability plus correctness."""
    rep = ExperimentReport("completeness")
    b = basis_one()
    for n in nets:
        rep.total += 1
        r = realizes(n, gamma, b, mode).passed
        good = is_testable(n, gamma) and dr_check(n).correct
        if r is None or r != good:
            from .netio import format_net
            rep.failures.append({"net": format_net(n), "realizes": r, "testable_and_correct": good})
    return rep


def mll_discrimination(net: Net, gamma: Sequence[Formula]) -> tuple[bool, bool]:
    """(passes basis one and every orientation of basis par, sequentializes with axioms)."""
    names = sorted({v.name for a in gamma for v in _vars(a)})
    # the ⅋ bases have few opponents, so they go first
    passes = all(realizes(net, gamma, b, BASIS).passed is True for b in par_orientations(names)) and (
        realizes(net, gamma, basis_one()).passed is True)
    return passes, sequentialize(net, gamma, MLL) is not None


def _vars(a: Formula) -> list[Var]:
    if isinstance(a, Var):
        return [a]
    return _vars(a.left) + _vars(a.right)


def merge_compute_check(s: Net, t: Net, d: int, n: int, budget: Budget = DEFAULT_BUDGET) -> bool:
    """(s ⋈_d ⨯ₙ) :: t reaches a lone daimon with n outputs."""
    m = merge(s, d, daimon_net(n), 0)
    return reaches_daimon(interaction(m, t), True, budget).verdict is True


def local_duality_check(s: Net, sbar: Net, k: int, budget: Budget = DEFAULT_BUDGET) -> bool:
    """⨯_{k+2} :: (s ∥ s̄) reaches ⨯ₖ."""
    return reaches_daimon(interaction(daimon_net(k + 2), parallel(s, sbar)), True, budget).verdict is True


def merge_in_composition_check(a: Net, b: Net, abar: Net, budget: Budget = DEFAULT_BUDGET) -> bool:
    """For every daimon pair, (a ⋈ b) :: ā reaches b (up to daimon target order)."""
    goal = state_key(b)
    for m in merges(a, b):
        r = reaches(interaction(m, abar), lambda x: state_key(x) == goal, False, budget)
        if r.verdict is not True:
            return False
    return True
