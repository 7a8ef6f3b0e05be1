"""Command-line entry point ``mllnet``.

Exit codes: 0 verdict true / success, 1 verdict false, 2 input error,
3 indeterminate (search budget exceeded).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .canon import canonical_form
from .correctness import classify_failure, dr_check, sequentialize, test_check, tests
from .formula import FormulaSyntaxError, format_sequent, parse_formula, parse_sequent
from .labelling import is_testable
from .net import Net, NetError, interaction
from .netio import NetSyntaxError, format_net, parse_net, to_dot
from .proofs import MLL, MLL_DAIMON, ProofError, ProofSyntaxError, desequentialize, format_proof, parse_proof
from .rewrite import cut_kind, step
from .search import Budget, explore, reaches_zero

SCHEMA = "mllnet/1"
EXIT_TRUE, EXIT_FALSE, EXIT_INPUT, EXIT_UNKNOWN = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from e


def _net(path: str) -> Net:
    try:
        return parse_net(_read(path), path)
    except (NetSyntaxError, NetError) as e:
        raise InputError(str(e)) from e


def _sequent(text: str):
    try:
        return parse_sequent(text)
    except FormulaSyntaxError as e:
        raise InputError(f"sequent: {e}") from e


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        payload = {"schema": SCHEMA, **payload}
        print(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def witness_records(net: Net, path) -> list[dict]:
    """(cut name, kind, split) records for each step of a path."""
    out = []
    cur = net
    for ch in path:
        cut = cur.link(ch.cut)
        name = f"cut {cur.name_of(cut.sources[0])} {cur.name_of(cut.sources[1])}"
        rec = {"cut": name, "kind": str(cut_kind(cur, cut))}
        if ch.split is not None:
            rec["split"] = [[cur.name_of(p) for p in ch.split[0]], [cur.name_of(p) for p in ch.split[1]]]
        else:
            rec["split"] = None
        out.append(rec)
        cur = step(cur, ch)
    return out


def _budget(args) -> Budget:
    return Budget(args.max_states, args.max_steps)


# -- commands -----------------------------------------------------------------

def cmd_check(args) -> int:
    net = _net(args.file)
    if not net.is_cut_free:
        note = "net has cuts: each cut is treated as an edge between its sources"
    else:
        note = None
    rep = dr_check(net)
    verdict = rep.correct
    lines = [f"correct: {'yes' if rep.correct else 'no'}"]
    fail = rep.first_failure()
    if fail:
        lines.append(fail.describe())
    payload = {"command": "check", "correct": rep.correct,
               "evidence": [e.describe() for e in rep.evidence]}
    if note:
        lines.append(f"note: {note}")
        payload["note"] = note
    if args.against is not None:
        gamma = _sequent(args.against)
        if len(gamma) != len(net):
            raise InputError(f"net has {len(net)} conclusions, sequent has {len(gamma)} formulas")
        if net.is_cut_free:
            t = is_testable(net, gamma)
            ta = is_testable(net, gamma, atomic=True)
            tc = test_check(net, gamma, budget=_budget(args)) if ta else False
            lines.append(f"testable: {'yes' if t else 'no'} (atomic: {'yes' if ta else 'no'})")
            lines.append(f"orthogonal to all tests: {tc if tc is None else ('yes' if tc else 'no')}")
            payload.update({"testable": t, "atomic_testable": ta, "test_check": tc})
            if tc is None:
                _emit(args, payload, "\n".join(lines))
                return EXIT_UNKNOWN
            verdict = verdict and t
    _emit(args, payload, "\n".join(lines))
    return EXIT_TRUE if verdict else EXIT_FALSE


def cmd_tests(args) -> int:
    try:
        a = parse_formula(args.formula)
    except FormulaSyntaxError as e:
        raise InputError(f"formula: {e}") from e
    ts = tests(a)
    text = "\n".join(f"# test {i}\n{format_net(t)}" for i, t in enumerate(ts, start=1))
    _emit(args, {"command": "tests", "formula": args.formula, "tests": [format_net(t) for t in ts]}, text)
    return EXIT_TRUE


def cmd_ortho(args) -> int:
    s, t = _net(args.a), _net(args.b)
    st = interaction(s, t)
    r = reaches_zero(st, optimized=not args.exhaustive, budget=_budget(args))
    payload = {"command": "ortho", "orthogonal": r.verdict, "states": r.states, "steps": r.steps}
    lines = []
    if r.verdict is None:
        lines.append("indeterminate: search budget exceeded")
    else:
        lines.append(f"orthogonal: {'yes' if r.verdict else 'no'}")
    if r.verdict:
        recs = witness_records(st, r.path)
        payload["witness"] = recs
        for rec in recs:
            sp = "" if rec["split"] is None else " split " + " | ".join(" ".join(c) for c in rec["split"])
            lines.append(f"  {rec['kind']}: {rec['cut']}{sp}")
        if args.trace:
            cur = st
            lines.append("# interaction")
            lines.append(format_net(cur).rstrip())
            for i, ch in enumerate(r.path, start=1):
                cur = step(cur, ch)
                lines.append(f"# step {i}")
                lines.append(format_net(cur).rstrip())
    elif r.verdict is False:
        g = explore(st, _budget(args))
        nfs = g.normal_forms()
        if nfs and not nfs[0].arrangement:
            payload["stuck"] = str(classify_failure(nfs[0]))
            lines.append(f"stuck normal form: {payload['stuck']}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_UNKNOWN if r.verdict is None else (EXIT_TRUE if r.verdict else EXIT_FALSE)


def cmd_normalize(args) -> int:
    net = _net(args.file)
    g = explore(net, _budget(args))
    nfs = sorted(g.normal_forms(), key=canonical_form)
    text = f"# {len(g)} states, {len(nfs)} normal forms" + ("" if g.complete else " (incomplete)") + "\n"
    text += "\n".join(f"# normal form {i}\n{format_net(n)}" for i, n in enumerate(nfs, start=1))
    _emit(args, {"command": "normalize", "states": len(g), "complete": g.complete,
                 "normal_forms": [format_net(n) for n in nfs]}, text)
    return EXIT_TRUE if g.complete else EXIT_UNKNOWN


def _proof(path: str):
    try:
        return parse_proof(_read(path))
    except (ProofSyntaxError, FormulaSyntaxError) as e:
        raise InputError(f"{path}: {e}") from e


def cmd_deseq(args) -> int:
    p = _proof(args.file)
    try:
        net = desequentialize(p)
    except ProofError as e:
        raise InputError(f"{args.file}: {e}") from e
    _emit(args, {"command": "deseq", "net": format_net(net)}, format_net(net))
    return EXIT_TRUE


def cmd_seq(args) -> int:
    net = _net(args.file)
    gamma = _sequent(args.sequent)
    if len(gamma) != len(net):
        raise InputError(f"net has {len(net)} conclusions, sequent has {len(gamma)} formulas")
    p = sequentialize(net, gamma, MLL if args.mll else MLL_DAIMON)
    if p is None:
        _emit(args, {"command": "seq", "proof": None}, "FAIL")
        return EXIT_FALSE
    text = format_proof(p)
    if not gamma:
        text += "\n# note: empty sequent derived by a nullary daimon rule"
    _emit(args, {"command": "seq", "proof": format_proof(p)}, text)
    return EXIT_TRUE


def _basis(name: str):
    from .realisability import basis_one, basis_par, load_basis
    if name == "one":
        return basis_one()
    if name == "par":
        return basis_par()
    try:
        return load_basis(name)
    except (OSError, ValueError, KeyError) as e:
        raise InputError(f"basis {name}: {e}") from e


def cmd_realize(args) -> int:
    from .realisability import realizes
    net = _net(args.file)
    gamma = _sequent(args.sequent)
    if len(gamma) != len(net) or not gamma:
        raise InputError(f"net has {len(net)} conclusions, sequent has {len(gamma)} formulas")
    b = _basis(args.basis) if args.mode != "tests" else (_basis(args.basis) if args.basis else None)
    r = realizes(net, gamma, b, args.mode, stop_at_first=False, budget=_budget(args))
    per = []
    for v in r.verdicts:
        rec = {"provenance": v.opponent.provenance, "opponent": format_net(v.opponent.net), "verdict": v.verdict}
        st = interaction(net, v.opponent.net)
        if v.verdict:
            rr = reaches_zero(st, budget=_budget(args))
            rec["witness"] = witness_records(st, rr.path)
        elif v.verdict is False:
            g = explore(st, _budget(args))
            nfs = sorted(g.normal_forms(), key=canonical_form)
            rec["stuck"] = str(classify_failure(nfs[0])) if nfs and not nfs[0].arrangement else None
        per.append(rec)
    report = {"schema": SCHEMA, "command": "realize", "sequent": format_sequent(gamma),
              "basis": b.name if b else None, "mode": args.mode, "result": r.summary(),
              "passed": r.passed, "opponents": per}
    if args.report:
        Path(args.report).write_text(json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(r.summary())
    return EXIT_UNKNOWN if r.passed is None else (EXIT_TRUE if r.passed else EXIT_FALSE)


def cmd_enum(args) -> int:
    from .enumkit import enum_testable
    gamma = _sequent(args.sequent)
    nets = list(enum_testable(gamma))
    if args.emit:
        d = Path(args.emit)
        d.mkdir(parents=True, exist_ok=True)
        for i, n in enumerate(nets, start=1):
            (d / f"net{i:03d}.net").write_text(f"# grouping {i} for {format_sequent(gamma)}\n" + format_net(n))
    text = "\n".join(f"# net {i}\n{format_net(n)}" for i, n in enumerate(nets, start=1))
    _emit(args, {"command": "enum", "count": len(nets), "nets": [format_net(n) for n in nets]},
          text if not args.emit else f"{len(nets)} nets written to {args.emit}")
    return EXIT_TRUE


def cmd_dot(args) -> int:
    sys.stdout.write(to_dot(_net(args.file)))
    return EXIT_TRUE


def cmd_experiment(args) -> int:
    from . import experiments
    if args.which == "properties" and args.seed is None:
        raise InputError("experiment properties is randomized: --seed is required")
    rep = experiments.run(args.which, seed=args.seed, max_rules=args.max_rules, samples=args.samples)
    _emit(args, {"command": "experiment", **rep.to_json()}, rep.render())
    return EXIT_TRUE if rep.ok else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mllnet", description="Proof nets with daimons: reduction, correctness, realisability.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, budget: bool = False):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if budget:
            p.add_argument("--max-states", type=int, default=200_000)
            p.add_argument("--max-steps", type=int, default=2_000_000)
        return p

    p = common(sub.add_parser("check", help="Danos-Regnier check, optionally against a sequent"), True)
    p.add_argument("file")
    p.add_argument("--against")
    p.set_defaults(func=cmd_check)

    p = common(sub.add_parser("tests", help="print the tests of a formula"))
    p.add_argument("formula")
    p.set_defaults(func=cmd_tests)

    p = common(sub.add_parser("ortho", help="decide orthogonality of two nets"), True)
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--exhaustive", action="store_true", help="search without strategy pruning")
    p.add_argument("--trace", action="store_true", help="print every net along the witness")
    p.set_defaults(func=cmd_ortho)

    p = common(sub.add_parser("normalize", help="all normal forms of a net"), True)
    p.add_argument("file")
    p.set_defaults(func=cmd_normalize)

    p = common(sub.add_parser("deseq", help="net of a proof file"))
    p.add_argument("file")
    p.set_defaults(func=cmd_deseq)

    p = common(sub.add_parser("seq", help="sequentialize a net against a sequent"))
    p.add_argument("file")
    p.add_argument("--sequent", required=True)
    p.add_argument("--mll", action="store_true", help="axioms only (binary daimons of shape A, A^)")
    p.set_defaults(func=cmd_seq)

    p = common(sub.add_parser("realize", help="check a net against finite opponents"), True)
    p.add_argument("file")
    p.add_argument("--sequent", required=True)
    p.add_argument("--basis", default="one")
    p.add_argument("--mode", choices=["tests", "basis", "both"], default="both")
    p.add_argument("--report")
    p.set_defaults(func=cmd_realize)

    p = common(sub.add_parser("enum", help="every daimon grouping of a sequent's syntax forest"))
    p.add_argument("--sequent", required=True)
    p.add_argument("--emit")
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("dot", help="Graphviz export")
    p.add_argument("file")
    p.set_defaults(func=cmd_dot)

    p = common(sub.add_parser("experiment", help="run an experiment driver"))
    p.add_argument("which", choices=["adequacy", "completeness", "properties"])
    p.add_argument("--seed", type=int)
    p.add_argument("--max-rules", type=int, default=4)
    p.add_argument("--samples", type=int, default=200)
    p.set_defaults(func=cmd_experiment)
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_TRUE
    try:
        return args.func(args)
    except InputError as e:
        print(f"mllnet: error: {e}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
