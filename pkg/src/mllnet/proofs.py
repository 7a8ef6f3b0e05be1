"""Sequent-calculus proof trees for MLL and MLL with daimons, and their nets.

Rules (principal formulas are always the first conclusions of the premises)::

    dai      ⊢ Γ
    ax       ⊢ A, A⊥
    par      ⊢ A, B, Γ          gives  ⊢ A⅋B, Γ
    tensor   ⊢ A, Γ  and ⊢ B, Δ  gives  ⊢ Γ, Δ, A⊗B
    cut A    ⊢ A, Γ  and ⊢ A⊥, Δ gives  ⊢ Γ, Δ
    ex i     ⊢ Γ                gives  Γ with entries i and i+1 swapped (1-based)

Proof files use parenthesized terms: ``(dai X, Y)``, ``(ax X)``, ``(par P)``,
``(tensor P1 P2)``, ``(cut A P1 P2)``, ``(ex i P)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .formula import (Formula, Par, Tensor, dual, format_formula, format_sequent, parse_formula,
                      parse_sequent)
from .net import CUT, DAIMON, PAR, TENSOR, Link, Net

MLL = "MLL"
MLL_DAIMON = "MLLdai"
RULES = ("dai", "ax", "par", "tensor", "cut", "ex")


class ProofError(ValueError):
    def __init__(self, msg: str, path: tuple[int, ...] = ()):
        where = "root" if not path else "root" + "".join(f".{i}" for i in path)
        super().__init__(f"{where}: {msg}")
        self.path = path


@dataclass(frozen=True)
class ProofTree:
    rule: str
    children: tuple["ProofTree", ...] = ()
    formulas: tuple[Formula, ...] = ()
    index: int = 0

    @staticmethod
    def daimon(*gamma: Formula) -> "ProofTree":
        return ProofTree("dai", (), tuple(gamma))

    @staticmethod
    def ax(a: Formula) -> "ProofTree":
        return ProofTree("ax", (), (a,))

    @staticmethod
    def par(p: "ProofTree") -> "ProofTree":
        return ProofTree("par", (p,))

    @staticmethod
    def tensor(p1: "ProofTree", p2: "ProofTree") -> "ProofTree":
        return ProofTree("tensor", (p1, p2))

    @staticmethod
    def cut(a: Formula, p1: "ProofTree", p2: "ProofTree") -> "ProofTree":
        return ProofTree("cut", (p1, p2), (a,))

    @staticmethod
    def ex(i: int, p: "ProofTree") -> "ProofTree":
        return ProofTree("ex", (p,), (), i)

    def size(self, count_exchanges: bool = False) -> int:
        own = 0 if (self.rule == "ex" and not count_exchanges) else 1
        return own + sum(c.size(count_exchanges) for c in self.children)

    def rule_counts(self) -> dict[str, int]:
        out = {r: 0 for r in RULES}
        stack = [self]
        while stack:
            p = stack.pop()
            out[p.rule] += 1
            stack.extend(p.children)
        return out

    def __str__(self) -> str:
        return format_proof(self)


def conclusion(p: ProofTree, mode: str = MLL_DAIMON, _path: tuple[int, ...] = ()) -> tuple:
    """The end sequent of a proof; raises ProofError at the first bad node."""
    r = p.rule
    if r == "dai":
        if mode == MLL and not (len(p.formulas) == 2 and p.formulas[1] == dual(p.formulas[0])):
            raise ProofError("in MLL a daimon must conclude A, A⊥", _path)
        return tuple(p.formulas)
    if r == "ax":
        (a,) = p.formulas
        return (a, dual(a))
    kids = [conclusion(c, mode, _path + (i,)) for i, c in enumerate(p.children)]
    if r == "par":
        (g,) = kids
        if len(g) < 2:
            raise ProofError("par needs two conclusions", _path)
        return (Par(g[0], g[1]),) + g[2:]
    if r == "tensor":
        g1, g2 = kids
        if not g1 or not g2:
            raise ProofError("tensor premises need a first conclusion", _path)
        return g1[1:] + g2[1:] + (Tensor(g1[0], g2[0]),)
    if r == "cut":
        g1, g2 = kids
        (a,) = p.formulas
        if not g1 or not g2 or g1[0] != a or g2[0] != dual(a):
            raise ProofError(f"cut on {format_formula(a)} needs premises starting with it and its dual", _path)
        return g1[1:] + g2[1:]
    if r == "ex":
        (g,) = kids
        i = p.index
        if not 1 <= i < len(g):
            raise ProofError(f"exchange index {i} out of range for {len(g)} conclusions", _path)
        g = list(g)
        g[i - 1], g[i] = g[i], g[i - 1]
        return tuple(g)
    raise ProofError(f"unknown rule {r!r}", _path)


def check_proof(p: ProofTree, mode: str = MLL_DAIMON) -> bool:
    try:
        conclusion(p, mode)
    except ProofError:
        return False
    return True


def desequentialize(p: ProofTree) -> Net:
    """The net representing a proof: daimons for leaves, one link per logical rule."""
    links: list[Link] = []
    counter = [0]

    def fresh() -> int:
        counter[0] += 1
        return counter[0] - 1

    def go(q: ProofTree) -> list[int]:
        r = q.rule
        if r in ("dai", "ax"):
            n = len(q.formulas) if r == "dai" else 2
            ps = [fresh() for _ in range(n)]
            links.append(Link(len(links), DAIMON, (), tuple(ps)))
            return ps
        if r == "par":
            a = go(q.children[0])
            out = fresh()
            links.append(Link(len(links), PAR, (a[0], a[1]), (out,)))
            return [out] + a[2:]
        if r == "tensor":
            a, b = go(q.children[0]), go(q.children[1])
            out = fresh()
            links.append(Link(len(links), TENSOR, (a[0], b[0]), (out,)))
            return a[1:] + b[1:] + [out]
        if r == "cut":
            a, b = go(q.children[0]), go(q.children[1])
            links.append(Link(len(links), CUT, (a[0], b[0])))
            return a[1:] + b[1:]
        a = go(q.children[0])
        i = q.index
        a[i - 1], a[i] = a[i], a[i - 1]
        return a

    conclusion(p)
    arr = go(p)
    return Net(tuple(links), tuple(arr))


# -- text format ------------------------------------------------------------

def _fmt_arg(a: Formula) -> str:
    s = format_formula(a)
    return s if " " not in s else "(" + s + ")"


def format_proof(p: ProofTree) -> str:
    r = p.rule
    if r == "dai":
        return "(dai" + (" " + format_sequent(p.formulas) if p.formulas else "") + ")"
    if r == "ax":
        return f"(ax {_fmt_arg(p.formulas[0])})"
    if r == "par":
        return f"(par {format_proof(p.children[0])})"
    if r == "tensor":
        return f"(tensor {format_proof(p.children[0])} {format_proof(p.children[1])})"
    if r == "cut":
        return f"(cut {_fmt_arg(p.formulas[0])} {format_proof(p.children[0])} {format_proof(p.children[1])})"
    return f"(ex {p.index} {format_proof(p.children[0])})"


class ProofSyntaxError(ValueError):
    pass


_KW = re.compile(r"\(\s*(dai|ax|par|tensor|cut|ex)\b")


class _ProofParser:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def err(self, msg: str) -> ProofSyntaxError:
        return ProofSyntaxError(f"{msg} at column {self.i + 1}")

    def ws(self) -> None:
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def close_of(self, start: int) -> int:
        depth = 0
        for j in range(start, len(self.text)):
            c = self.text[j]
            if c == "(":
                depth += 1
            elif c == ")":
                depth -= 1
                if depth < 0:
                    return j
        raise self.err("unbalanced parentheses")

    def formula_until_proof(self) -> Formula:
        # a formula runs until the next "(" that opens a proof term
        start = self.i
        depth = 0
        j = start
        while j < len(self.text):
            c = self.text[j]
            if c == "(" and depth == 0 and _KW.match(self.text, j):
                break
            if c == "(":
                depth += 1
            elif c == ")":
                depth -= 1
            j += 1
        chunk = self.text[start:j]
        self.i = j
        return parse_formula(chunk.strip())

    def proof(self) -> ProofTree:
        self.ws()
        m = _KW.match(self.text, self.i)
        if not m:
            raise self.err("expected a proof term")
        kw = m.group(1)
        self.i = m.end()
        if kw in ("dai", "ax"):
            end = self.close_of(self.i)
            body = self.text[self.i:end].strip()
            self.i = end + 1
            if kw == "dai":
                return ProofTree.daimon(*parse_sequent(body))
            return ProofTree.ax(parse_formula(body))
        if kw == "par":
            p = ProofTree.par(self.proof())
        elif kw == "tensor":
            p = ProofTree.tensor(self.proof(), self.proof())
        elif kw == "cut":
            self.ws()
            a = self.formula_until_proof()
            p = ProofTree.cut(a, self.proof(), self.proof())
        else:
            self.ws()
            m2 = re.compile(r"\d+").match(self.text, self.i)
            if not m2:
                raise self.err("expected an exchange index")
            self.i = m2.end()
            p = ProofTree.ex(int(m2.group()), self.proof())
        self.ws()
        if self.i >= len(self.text) or self.text[self.i] != ")":
            raise self.err("expected ')'")
        self.i += 1
        return p


def parse_proof(text: str) -> ProofTree:
    text = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    pp = _ProofParser(text)
    p = pp.proof()
    pp.ws()
    if pp.i != len(text):
        raise pp.err("trailing input")
    return p
