"""Small-instance generators: testable nets, proofs, random nets and reduction paths."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .formula import PATTERN_VAR, Formula, Par, Tensor, Var, all_shapes, connectives, dual, leaves
from .labelling import syntax_forest
from .net import CUT, DAIMON, Link, Net
from .proofs import ProofTree, conclusion
from .rewrite import ReductionChoice, redexes, step


@dataclass(frozen=True)
class EnumSpec:
    max_connectives: int = 3
    max_leaves: int = 5
    max_daimon_arity: int = 2
    seed: int = 0


def set_partitions(items: Sequence) -> Iterator[list[list]]:
    """All set partitions, classes in order of first element, elements in input order."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def bell(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def enum_testable(gamma: Sequence[Formula], max_leaves: int = 8) -> Iterator[Net]:
    """The syntax forest of Γ under every grouping of its leaves into daimons (Bell(N) nets)."""
    n = sum(len(leaves(a)) for a in gamma)
    if n > max_leaves:
        raise ValueError(f"{n} leaves exceed the bound {max_leaves}")
    for part in set_partitions(list(range(n))):
        yield syntax_forest(gamma, [sorted(c) for c in part])


def shape_sequents(max_connectives: int, max_leaves: int, min_length: int = 1) -> list[tuple[Formula, ...]]:
    """Every sequence of formula patterns within the bounds (leaves are the pattern variable)."""
    shapes = [s for s in all_shapes(max_connectives) if connectives(s) <= max_connectives]
    shapes = sorted(set(shapes), key=lambda s: (connectives(s), str(s)))
    out = []

    def go(prefix: list, conn: int, nleaves: int) -> None:
        if len(prefix) >= min_length:
            out.append(tuple(prefix))
        for s in shapes:
            c = connectives(s)
            if conn + c <= max_connectives and nleaves + c + 1 <= max_leaves:
                go(prefix + [s], conn + c, nleaves + c + 1)

    go([], 0, 0)
    return out


def instantiate(shape_seq: Sequence[Formula], names: Sequence[str] = ("X",)) -> tuple[Formula, ...]:
    """Replace pattern leaves by variables, cycling through ``names`` in leaf order."""
    k = [0]

    def go(f: Formula) -> Formula:
        if isinstance(f, Var):
            v = Var(names[k[0] % len(names)])
            k[0] += 1
            return v
        return type(f)(go(f.left), go(f.right))

    return tuple(go(f) for f in shape_seq)


def testable_corpus(max_connectives: int = 3, max_leaves: int = 5) -> list[tuple[tuple[Formula, ...], Net]]:
    """(atomic sequent, net) pairs: every shape sequence with distinct variables, every grouping."""
    out = []
    for seq in shape_sequents(max_connectives, max_leaves):
        n = sum(len(leaves(a)) for a in seq)
        gamma = instantiate(seq, [f"X{i}" for i in range(1, n + 1)])
        for net in enum_testable(gamma):
            out.append((gamma, net))
    return out


# -- proofs -----------------------------------------------------------------

def _literals(var_names: Sequence[str]) -> list[Formula]:
    return [Var(n, s) for n in var_names for s in (True, False)]


def _bring_front(p: ProofTree, k: int) -> ProofTree:
    """Exchanges moving conclusion k (0-based) to the front."""
    for j in range(k, 0, -1):
        p = ProofTree.ex(j, p)
    return p


def _bring_pair(p: ProofTree, n: int, i: int, j: int) -> ProofTree:
    """Exchanges moving conclusions i and j (0-based, distinct) to positions 0 and 1."""
    order = list(range(n))
    p = _bring_front(p, i)
    order.insert(0, order.pop(i))
    k = order.index(j)
    for m in range(k, 1, -1):
        p = ProofTree.ex(m, p)
    return p


def enum_proofs(var_names: Sequence[str], max_rules: int, max_daimon_arity: int = 2,
                min_daimon_arity: int = 1) -> list[ProofTree]:
    """All MLL⨯ proofs with at most ``max_rules`` logical rules (exchanges not counted).

    Daimon leaves conclude literal sequents of the given arities.  Par, tensor
    and cut may act on any conclusions; the exchanges needed to bring them to
    the front are inserted in a fixed way.
    """
    lits = _literals(var_names)
    by_size: dict[int, list[tuple[ProofTree, tuple]]] = {}
    leaves_ = []
    for k in range(min_daimon_arity, max_daimon_arity + 1):
        for combo in itertools.product(lits, repeat=k):
            leaves_.append((ProofTree.daimon(*combo), tuple(combo)))
    by_size[1] = leaves_
    for size in range(2, max_rules + 1):
        cur = []
        for p, g in by_size.get(size - 1, []):
            n = len(g)
            for i in range(n):
                for j in range(n):
                    if i != j:
                        q = ProofTree.par(_bring_pair(p, n, i, j))
                        cur.append((q, conclusion(q)))
        for s1 in range(1, size - 1):
            s2 = size - 1 - s1
            for p1, g1 in by_size.get(s1, []):
                for p2, g2 in by_size.get(s2, []):
                    for i in range(len(g1)):
                        for j in range(len(g2)):
                            a, b = _bring_front(p1, i), _bring_front(p2, j)
                            t = ProofTree.tensor(a, b)
                            cur.append((t, conclusion(t)))
                            if g2[j] == dual(g1[i]):
                                c = ProofTree.cut(g1[i], a, b)
                                cur.append((c, conclusion(c)))
        by_size[size] = cur
    return [p for s in sorted(by_size) for p, _ in by_size[s]]


def count_proofs(num_vars: int, max_rules: int, max_daimon_arity: int = 2, min_daimon_arity: int = 1) -> int:
    """Independent count of ``enum_proofs`` by a recursion over (size, number of conclusions, literal multiset)."""
    from collections import Counter

    # conclusion sequences as nested tuples; literal ids 2k and 2k+1 are dual
    L = 2 * num_vars

    def leaf_seqs() -> Counter:
        c = Counter()
        for k in range(min_daimon_arity, max_daimon_arity + 1):
            for combo in itertools.product(range(L), repeat=k):
                c[tuple(("lit", x) for x in combo)] += 1
        return c

    def is_dual(a, b) -> bool:
        if a[0] == "lit" and b[0] == "lit":
            return a[1] // 2 == b[1] // 2 and a[1] != b[1]
        if a[0] == "lit" or b[0] == "lit" or a[0] == b[0]:
            return False
        return is_dual(a[1], b[1]) and is_dual(a[2], b[2])

    table: dict[int, Counter] = {1: leaf_seqs()}
    for size in range(2, max_rules + 1):
        cur = Counter()
        for g, m in table.get(size - 1, Counter()).items():
            n = len(g)
            for i in range(n):
                for j in range(n):
                    if i != j:
                        rest = tuple(x for k, x in enumerate(g) if k not in (i, j))
                        cur[(("par", g[i], g[j]),) + rest] += m
        for s1 in range(1, size - 1):
            s2 = size - 1 - s1
            for g1, m1 in table.get(s1, Counter()).items():
                for g2, m2 in table.get(s2, Counter()).items():
                    for i in range(len(g1)):
                        for j in range(len(g2)):
                            r1 = g1[:i] + g1[i + 1:]
                            r2 = g2[:j] + g2[j + 1:]
                            cur[r1 + r2 + (("tensor", g1[i], g2[j]),)] += m1 * m2
                            if is_dual(g1[i], g2[j]):
                                cur[r1 + r2] += m1 * m2
        table[size] = cur
    return sum(sum(c.values()) for c in table.values())


# -- random nets and paths ----------------------------------------------------

def random_shape(rng: random.Random, max_connectives: int) -> Formula:
    if max_connectives == 0 or rng.random() < 0.35:
        return Var(PATTERN_VAR)
    k = rng.randint(0, max_connectives - 1)
    left = random_shape(rng, k)
    right = random_shape(rng, max_connectives - 1 - connectives(left))
    return (Tensor if rng.random() < 0.5 else Par)(left, right)


def random_net(rng: random.Random, max_links: int = 12, max_cuts: int = 3, max_conclusions: int = 2,
               max_daimon_arity: int = 2) -> Net:
    """A random net: syntax trees paired by cuts, leaves grouped randomly into daimons."""
    while True:
        ncuts = rng.randint(0, max_cuts)
        nconcl = rng.randint(0, max_conclusions)
        shapes = [random_shape(rng, 3) for _ in range(2 * ncuts + nconcl)]
        if not shapes:
            continue
        nleaves = sum(len(leaves(s)) for s in shapes)
        # random grouping of leaves
        order = list(range(nleaves))
        rng.shuffle(order)
        groups: list[list[int]] = []
        for x in order:
            open_ = [g for g in groups if len(g) < max_daimon_arity]
            if open_ and rng.random() < 0.55:
                rng.choice(open_).append(x)
            else:
                groups.append([x])
        forest = syntax_forest(shapes, groups)
        nlinks = len(forest.links) + ncuts
        if nlinks > max_links:
            continue
        roots = forest.arrangement
        ids = forest.fresh_link_ids(ncuts)
        cuts = tuple(Link(ids[i], CUT, (roots[2 * i], roots[2 * i + 1])) for i in range(ncuts))
        return Net(forest.links + cuts, roots[2 * ncuts:])


def sample_paths(net: Net, k: int, seed: int) -> list[tuple[ReductionChoice, ...]]:
    """k maximal reduction paths, choosing uniformly among the available steps at each node."""
    rng = random.Random(seed)
    out = []
    for _ in range(k):
        cur = net
        path = []
        while True:
            rs = redexes(cur)
            if not rs:
                break
            ch = rng.choice(rs)
            path.append(ch)
            cur = step(cur, ch)
        out.append(tuple(path))
    return out
