"""Experiment drivers shared by the CLI and the scripts."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .correctness import dr_check
from .enumkit import enum_proofs, random_net, sample_paths, testable_corpus
from .formula import Formula, Par, Tensor, Var
from .labelling import is_testable
from .net import Net
from .netio import format_net
from .realisability import BOTH, adequacy_experiment, basis_one, realizes
from .rewrite import CutKind, cut_kind, redexes, sn_measure, step
from .search import check_anticipation, check_delay, check_factorization, explore, replay


@dataclass
class Report:
    name: str
    total: int = 0
    failures: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"name": self.name, "total": self.total, "failures": self.failures,
                "notes": self.notes, "ok": self.ok}

    def render(self) -> str:
        head = f"{self.name}: {self.total} cases, {len(self.failures)} failures"
        return "\n".join([head] + [f"  note: {n}" for n in self.notes] + [f"  FAIL {f}" for f in self.failures[:20]])


def flip_root(a: Formula) -> Formula:
    """Swap the root connective (an atom becomes its own ⊗ with itself, never matching a daimon)."""
    if isinstance(a, Tensor):
        return Par(a.left, a.right)
    if isinstance(a, Par):
        return Tensor(a.left, a.right)
    return Tensor(a, a)


def malformed_pairs(corpus) -> list[tuple[tuple[Formula, ...], Net]]:
    """Corpus nets paired with a sequent whose first compound formula has the wrong root."""
    out = []
    for gamma, net in corpus:
        for i, a in enumerate(gamma):
            if not isinstance(a, Var):
                out.append((gamma[:i] + (flip_root(a),) + gamma[i + 1:], net))
                break
    return out


def path_oracles(net: Net, path) -> dict[str, bool | None]:
    """Factorization of the whole path; delay of its first irreversible step; anticipation of its
    last step on a non-irreversible cut of ``net``.  None marks an oracle that does not apply."""
    nets = replay(net, path)
    kinds = [cut_kind(nets[i], ch.cut).kind for i, ch in enumerate(path)]
    out: dict[str, bool | None] = {"factorization": check_factorization(net, path), "delay": None,
                                   "anticipation": None}
    irr = [i for i, k in enumerate(kinds) if k is CutKind.IRREVERSIBLE]
    if irr:
        i = irr[0]
        out["delay"] = check_delay(nets[i], path[i:])
    originals = {ln.id for ln in net.cuts}
    rev = [j for j, ch in enumerate(path) if ch.cut in originals and kinds[j] is not CutKind.IRREVERSIBLE]
    for j in reversed(rev):
        out["anticipation"] = check_anticipation(net, path[:j + 1])
        if out["anticipation"] is not None:
            break
    return out


def adequacy(max_rules: int = 4) -> Report:
    er = adequacy_experiment(enum_proofs(["X", "Y"], max_rules), basis_one(), BOTH)
    return Report("adequacy", er.total, er.failures, er.notes)


def completeness(corpus=None, with_malformed: bool = True) -> Report:
    """Passing basis one opponents coincides with (testable and correct)."""
    rep = Report("completeness")
    corpus = testable_corpus() if corpus is None else corpus
    cases = list(corpus) + (malformed_pairs(corpus) if with_malformed else [])
    b = basis_one()
    for gamma, net in cases:
        rep.total += 1
        r = realizes(net, gamma, b, BOTH).passed
        good = is_testable(net, gamma) and dr_check(net).correct
        if r is None or r != good:
            rep.failures.append({"sequent": [str(a) for a in gamma], "realizes": r, "testable_and_correct": good})
    rep.notes.append(f"{len(corpus)} corpus nets, {rep.total - len(corpus)} malformed")
    return rep


def termination(seed: int, nets: int = 1000) -> Report:
    """Every step on a random net decreases the measure; explore finishes within budget."""
    rep = Report("termination")
    rng = random.Random(seed)
    for _ in range(nets):
        n = random_net(rng)
        rep.total += 1
        if not explore(n).complete:
            rep.failures.append({"kind": "budget", "links": len(n.links)})
        for ch in redexes(n):
            if not sn_measure(step(n, ch)) < sn_measure(n):
                rep.failures.append({"kind": "measure", "choice": ch.describe(n)})
    rep.notes.append(f"seed {seed}")
    return rep


def path_properties(seed: int, samples: int = 200) -> Report:
    """Factorization, delay and anticipation oracles on sampled maximal paths of random nets with cuts."""
    rep = Report("paths")
    rng = random.Random(seed)
    pool = []
    while len(pool) < samples:
        n = random_net(rng)
        if n.cuts:
            pool.append(n)
    counts = {"factorization": 0, "delay": 0, "anticipation": 0}
    for i, n in enumerate(pool):
        (path,) = sample_paths(n, 1, seed + i)
        rep.total += 1
        for kind, ok in path_oracles(n, path).items():
            if ok is None:
                continue
            counts[kind] += 1
            if not ok:
                rep.failures.append({"kind": kind, "sample": i, "net": format_net(n),
                                     "path": [ch.describe(x) for ch, x in zip(path, replay(n, path))]})
    rep.notes.append(f"seed {seed}; " + ", ".join(f"{k} applicable on {v}" for k, v in counts.items())
                     + f" of {samples} paths")
    return rep


def properties(seed: int, samples: int = 200, nets: int = 1000) -> Report:
    """Termination on random nets plus the path oracles."""
    rep = Report("properties")
    for sub in (termination(seed, nets), path_properties(seed, samples)):
        rep.total += sub.total
        rep.failures += sub.failures
        rep.notes += sub.notes
    return rep


def run(which: str, seed: int | None = None, max_rules: int = 4, samples: int = 200) -> Report:
    if which == "adequacy":
        return adequacy(max_rules)
    if which == "completeness":
        return completeness()
    if which == "properties":
        return properties(0 if seed is None else seed, samples)
    raise ValueError(f"unknown experiment {which!r}")
