"""Text and DOT formats for nets.

Text format, one directive per line::

    dai a b c
    tensor a b -> d
    par x y -> z
    cut d z
    conclusions: c

``#`` starts a comment.  Unicode ``⨯``, ``⊗``, ``⅋`` are accepted as
directive names on input; output is always ASCII.
"""

from __future__ import annotations

import re

from .net import CUT, DAIMON, PAR, TENSOR, Link, LinkLabel, Net, NetError

_DIRECTIVES = {
    "dai": DAIMON, "⨯": DAIMON, "daimon": DAIMON,
    "tensor": TENSOR, "⊗": TENSOR,
    "par": PAR, "⅋": PAR,
    "cut": CUT,
}
_NAME = re.compile(r"^[^\s#:]+$")


class NetSyntaxError(ValueError):
    def __init__(self, msg: str, line: int | None = None, token: str | None = None, source: str = "<net>"):
        where = source if line is None else f"{source}:{line}"
        tok = f" near {token!r}" if token else ""
        super().__init__(f"{where}: {msg}{tok}")
        self.line = line
        self.token = token


def parse_net(text: str, source: str = "<net>") -> Net:
    ids: dict[str, int] = {}

    def pid(name: str, lineno: int) -> int:
        if not _NAME.match(name) or name == "->":
            raise NetSyntaxError("bad position name", lineno, name, source)
        if name not in ids:
            ids[name] = len(ids)
        return ids[name]

    links: list[Link] = []
    arrangement = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("conclusions"):
            head, _, rest = line.partition(":")
            if head.strip() != "conclusions" or not _:
                raise NetSyntaxError("expected 'conclusions: ...'", lineno, line, source)
            if arrangement is not None:
                raise NetSyntaxError("duplicate conclusions line", lineno, None, source)
            names = rest.split()
            for n in names:
                if n not in ids:
                    raise NetSyntaxError("conclusion is not a position of the net", lineno, n, source)
            arrangement = [ids[n] for n in names]
            continue
        words = line.split()
        label = _DIRECTIVES.get(words[0])
        if label is None:
            raise NetSyntaxError("unknown directive", lineno, words[0], source)
        args = words[1:]
        if label in (TENSOR, PAR):
            if len(args) != 4 or args[2] != "->":
                raise NetSyntaxError(f"expected '{label.value} a b -> c'", lineno, line, source)
            srcs, tgts = args[:2], args[3:]
        elif label is CUT:
            if len(args) != 2:
                raise NetSyntaxError("expected 'cut a b'", lineno, line, source)
            srcs, tgts = args, []
        else:
            if "->" in args:
                raise NetSyntaxError("a daimon has no sources", lineno, "->", source)
            srcs, tgts = [], args
        s = tuple(pid(x, lineno) for x in srcs)
        t = tuple(pid(x, lineno) for x in tgts)
        links.append(Link(len(links), label, s, t))
    if arrangement is None:
        raise NetSyntaxError("missing 'conclusions:' line", None, None, source)
    names = tuple((v, k) for k, v in ids.items())
    try:
        return Net(tuple(links), tuple(arrangement), names)
    except NetError as e:
        raise NetSyntaxError(str(e), None, None, source) from e


def format_net(net: Net) -> str:
    nm = net.name_of
    out = []
    for ln in net.links:
        if ln.label is DAIMON:
            out.append(" ".join(["dai"] + [nm(p) for p in ln.targets]))
        elif ln.label is CUT:
            out.append(f"cut {nm(ln.sources[0])} {nm(ln.sources[1])}")
        else:
            out.append(f"{ln.label.value} {nm(ln.sources[0])} {nm(ln.sources[1])} -> {nm(ln.targets[0])}")
    out.append(" ".join(["conclusions:"] + [nm(p) for p in net.arrangement]))
    return "\n".join(out) + "\n"


def to_dot(net: Net, name: str = "net") -> str:
    nm = net.name_of
    lines = [f"digraph {name} {{", "  rankdir=TB;", "  node [fontname=\"Helvetica\"];"]
    for p in sorted(net.positions):
        lines.append(f"  p{p} [shape=point, xlabel=\"{nm(p)}\"];")
    for ln in net.links:
        lid = f"l{ln.id}"
        if ln.label is DAIMON:
            lines.append(f"  {lid} [shape=box, label=\"⨯\"];")
        elif ln.label is CUT:
            lines.append(f"  {lid} [shape=diamond, label=\"cut\"];")
        else:
            sym = "⊗" if ln.label is TENSOR else "⅋"
            lines.append(f"  {lid} [shape=invtriangle, label=\"{sym}\"];")
        for k, p in enumerate(ln.sources, start=1):
            lines.append(f"  p{p} -> {lid} [taillabel=\"\", headlabel=\"{k}\"];")
        for k, p in enumerate(ln.targets, start=1):
            lines.append(f"  {lid} -> p{p} [taillabel=\"{k}\"];")
    for i, p in enumerate(net.arrangement, start=1):
        lines.append(f"  c{i} [shape=plaintext, label=\"{i}\"];")
        lines.append(f"  p{p} -> c{i} [style=dashed, arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def label_of(word: str) -> LinkLabel:
    return _DIRECTIVES[word]
