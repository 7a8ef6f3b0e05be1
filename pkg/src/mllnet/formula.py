"""Multiplicative formulas, sequents and hypersequents.

ASCII syntax: variables ``[A-Z][A-Za-z0-9]*``, postfix ``^`` for the dual,
``*`` for tensor, ``%`` for par, parentheses.  ``*`` binds tighter than ``%``
and both associate to the left.  Sequents are comma separated; ``||``
separates the components of a hypersequent.  ``⊗``, ``⅋`` and ``⊥`` are
accepted on input.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence, Union

PATTERN_VAR = "𝐕"


@dataclass(frozen=True)
class Var:
    name: str
    positive: bool = True

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Tensor:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Par:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return format_formula(self)


Formula = Union[Var, Tensor, Par]
Sequent = tuple  # tuple[Formula, ...]


def dual(a: Formula) -> Formula:
    if isinstance(a, Var):
        return Var(a.name, not a.positive)
    if isinstance(a, Tensor):
        return Par(dual(a.left), dual(a.right))
    return Tensor(dual(a.left), dual(a.right))


def dual_sequent(gamma: Sequence[Formula]) -> tuple:
    return tuple(dual(a) for a in gamma)


def is_atomic(a: Formula) -> bool:
    return isinstance(a, Var)


def leaves(a: Formula) -> list[Var]:
    """Atomic occurrences in address order (left before right)."""
    if isinstance(a, Var):
        return [a]
    return leaves(a.left) + leaves(a.right)


def depth(a: Formula) -> int:
    if isinstance(a, Var):
        return 0
    return 1 + max(depth(a.left), depth(a.right))


def connectives(a: Formula) -> int:
    if isinstance(a, Var):
        return 0
    return 1 + connectives(a.left) + connectives(a.right)


def pattern(a: Formula) -> Formula:
    """The same shape with every leaf replaced by the pattern variable."""
    if isinstance(a, Var):
        return Var(PATTERN_VAR)
    return type(a)(pattern(a.left), pattern(a.right))


# -- printing ---------------------------------------------------------------

def format_formula(a: Formula, unicode: bool = False) -> str:
    def go(f: Formula, top: bool) -> str:
        if isinstance(f, Var):
            return f.name + ("" if f.positive else ("⊥" if unicode else "^"))
        op = (" ⊗ " if unicode else " * ") if isinstance(f, Tensor) else (" ⅋ " if unicode else " % ")
        s = go(f.left, False) + op + go(f.right, False)
        return s if top else "(" + s + ")"
    return go(a, True)


def format_sequent(gamma: Sequence[Formula], unicode: bool = False) -> str:
    return ", ".join(format_formula(a, unicode) for a in gamma)


# -- hypersequents ------------------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    formula: Formula


@dataclass(frozen=True)
class Comma:
    left: "Hypersequent"
    right: "Hypersequent"


@dataclass(frozen=True)
class Parallel:
    left: "Hypersequent"
    right: "Hypersequent"


Hypersequent = Union[Leaf, Comma, Parallel]


def ground(h: Hypersequent) -> tuple:
    """The sequent obtained by reading every ∥ as a comma."""
    if isinstance(h, Leaf):
        return (h.formula,)
    return ground(h.left) + ground(h.right)


def components(h: Hypersequent) -> list[tuple]:
    """The ∥-separated sequents of a hypersequent."""
    if isinstance(h, Leaf):
        return [(h.formula,)]
    if isinstance(h, Parallel):
        return components(h.left) + components(h.right)
    left, right = components(h.left), components(h.right)
    if len(left) == 1 and len(right) == 1:
        return [left[0] + right[0]]
    raise ValueError("comma above a parallel does not split into components")


def format_hypersequent(h: Hypersequent) -> str:
    if isinstance(h, Leaf):
        return format_formula(h.formula)
    sep = ", " if isinstance(h, Comma) else " || "
    return format_hypersequent(h.left) + sep + format_hypersequent(h.right)


# -- substitutions ------------------------------------------------------------

class SubstitutionError(ValueError):
    pass


def _normalize_theta(theta: Mapping) -> dict[str, Formula]:
    out: dict[str, Formula] = {}
    for k, v in theta.items():
        if isinstance(k, Var):
            name, val = k.name, (v if k.positive else dual(v))
        else:
            name, val = k, v
        if name in out and out[name] != val:
            raise SubstitutionError(f"substitution does not respect duality on {name}")
        out[name] = val
    return out


def substitute(theta: Mapping, target):
    """Apply θ homomorphically; θ(X⊥) is θ(X)⊥.

    Keys may be variable names or literals; literal keys are checked for
    coherence with duality.
    """
    th = _normalize_theta(theta)

    def go(f: Formula) -> Formula:
        if isinstance(f, Var):
            if f.name not in th:
                return f
            return th[f.name] if f.positive else dual(th[f.name])
        return type(f)(go(f.left), go(f.right))

    def goh(h: Hypersequent) -> Hypersequent:
        if isinstance(h, Leaf):
            return Leaf(go(h.formula))
        return type(h)(goh(h.left), goh(h.right))

    if isinstance(target, (Var, Tensor, Par)):
        return go(target)
    if isinstance(target, (Leaf, Comma, Parallel)):
        return goh(target)
    return tuple(go(f) for f in target)


def match(pat: Formula, f: Formula, theta: dict[str, Formula]) -> bool:
    if isinstance(pat, Var):
        val = f if pat.positive else dual(f)
        old = theta.get(pat.name)
        if old is None:
            theta[pat.name] = val
            return True
        return old == val
    if type(pat) is not type(f):
        return False
    return match(pat.left, f.left, theta) and match(pat.right, f.right, theta)


def instance(delta: Sequence[Formula], gamma: Sequence[Formula]) -> dict[str, Formula] | None:
    """A substitution θ with θ(Δ) = Γ, if one exists (Δ ≤ Γ)."""
    if len(delta) != len(gamma):
        return None
    theta: dict[str, Formula] = {}
    for d, g in zip(delta, gamma):
        if not match(d, g, theta):
            return None
    return theta


# -- parsing ----------------------------------------------------------------

class FormulaSyntaxError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(f"{msg} at column {pos + 1} in {text!r}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\|\|)|([A-Z][A-Za-z0-9]*|𝐕)|(\^|⊥)|(\*|⊗)|(%|⅋)|(\()|(\))|(,)|(\S))")


def _tokens(text: str) -> Iterator[tuple[str, str, int]]:
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        kinds = ("par2", "var", "dual", "tensor", "par", "lp", "rp", "comma", "bad")
        for k, g in zip(kinds, m.groups()):
            if g is not None:
                yield k, g, m.start(m.lastindex)
        pos = m.end()
    yield "end", "", len(text)


class _Parser:
    def __init__(self, text: str, allow_pattern: bool):
        self.text = text
        self.toks = list(_tokens(text))
        self.i = 0
        self.allow_pattern = allow_pattern

    def peek(self) -> str:
        return self.toks[self.i][0]

    def take(self, kind: str):
        k, v, p = self.toks[self.i]
        if k != kind:
            what = v if v else "end of input"
            raise FormulaSyntaxError(f"unexpected {what!r}", self.text, p)
        self.i += 1
        return v

    def formula(self) -> Formula:
        f = self.tensor_term()
        while self.peek() == "par":
            self.i += 1
            f = Par(f, self.tensor_term())
        return f

    def tensor_term(self) -> Formula:
        f = self.postfix()
        while self.peek() == "tensor":
            self.i += 1
            f = Tensor(f, self.postfix())
        return f

    def postfix(self) -> Formula:
        f = self.atom()
        while self.peek() == "dual":
            self.i += 1
            f = dual(f)
        return f

    def atom(self) -> Formula:
        k, v, p = self.toks[self.i]
        if k == "var":
            if v == PATTERN_VAR and not self.allow_pattern:
                raise FormulaSyntaxError("the pattern variable is reserved", self.text, p)
            self.i += 1
            return Var(v)
        if k == "lp":
            self.i += 1
            f = self.formula()
            self.take("rp")
            return f
        what = v if v else "end of input"
        raise FormulaSyntaxError(f"unexpected {what!r}", self.text, p)

    def sequent(self) -> tuple:
        if self.peek() in ("end", "par2"):
            return ()
        out = [self.formula()]
        while self.peek() == "comma":
            self.i += 1
            out.append(self.formula())
        return tuple(out)

    def finish(self) -> None:
        self.take("end")


def parse_formula(text: str, allow_pattern: bool = False) -> Formula:
    p = _Parser(text, allow_pattern)
    f = p.formula()
    p.finish()
    return f


def parse_sequent(text: str, allow_pattern: bool = False) -> tuple:
    p = _Parser(text, allow_pattern)
    s = p.sequent()
    p.finish()
    return s


def parse_hypersequent(text: str) -> Hypersequent:
    p = _Parser(text, False)
    parts = []
    while True:
        s = p.sequent()
        if not s:
            k, v, pos = p.toks[p.i]
            raise FormulaSyntaxError("empty component", text, pos)
        h: Hypersequent = Leaf(s[0])
        for f in s[1:]:
            h = Comma(h, Leaf(f))
        parts.append(h)
        if p.peek() != "par2":
            break
        p.i += 1
    p.finish()
    out = parts[0]
    for h in parts[1:]:
        out = Parallel(out, h)
    return out


def all_formulas(var_names: Sequence[str], max_depth: int) -> list[Formula]:
    """Every formula over the given variables (both polarities) up to a depth."""
    lits: list[Formula] = [Var(n, s) for n in var_names for s in (True, False)]
    acc = list(lits)
    for _ in range(max_depth):
        acc = lits + [c(a, b) for c in (Tensor, Par) for a in acc for b in acc]
    return acc


def all_shapes(max_depth: int) -> list[Formula]:
    """Every formula pattern (over the pattern variable) up to a depth."""
    acc: list[Formula] = [Var(PATTERN_VAR)]
    for _ in range(max_depth):
        acc = [Var(PATTERN_VAR)] + [c(a, b) for c in (Tensor, Par) for a in acc for b in acc]
    return acc
