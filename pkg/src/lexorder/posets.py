"""Finite strict partial orders: validation, connectivity, brute-force canonical forms.

Vertices are 1..n.  Input relations may be Hasse pairs; the constructor closes
them transitively.  Canonicalization is a pruned exhaustive search meant for
the tiny posets that occur as colors, with a hard vertex bound.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

MAX_CANONICAL_VERTICES = 10
_MAX_LABELINGS = 2_000_000


class PosetSizeError(ValueError):
    pass


@dataclass(frozen=True)
class FinPoset:
    """Irreflexive, antisymmetric, transitively closed relation on {1, ..., n}."""

    n: int
    strict: frozenset

    def __init__(self, n: int, pairs=()):
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"bad vertex count {n!r}")
        rel = set()
        for i, j in pairs:
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"pair ({i}, {j}) out of range 1..{n}")
            if i == j:
                raise ValueError(f"reflexive pair ({i}, {j}) not allowed")
            rel.add((i, j))
        changed = True
        while changed:
            changed = False
            for (i, j) in list(rel):
                for (k, l) in list(rel):
                    if j == k and (i, l) not in rel:
                        if i == l:
                            raise ValueError("relation has a cycle")
                        rel.add((i, l))
                        changed = True
        for (i, j) in rel:
            if (j, i) in rel:
                raise ValueError(f"antisymmetry violated at ({i}, {j})")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "strict", frozenset(rel))

    def successors(self, v: int) -> set:
        return {j for (i, j) in self.strict if i == v}

    def predecessors(self, v: int) -> set:
        return {i for (i, j) in self.strict if j == v}

    def __repr__(self) -> str:
        edges = ",".join(f"{i}<{j}" for i, j in sorted(self.strict))
        return f"FinPoset({self.n}; {edges})"


def is_connected(p: FinPoset) -> bool:
    """Connectivity of the comparability graph."""
    if p.n <= 1:
        return p.n == 1
    adj = {v: set() for v in range(1, p.n + 1)}
    for i, j in p.strict:
        adj[i].add(j)
        adj[j].add(i)
    seen = {1}
    frontier = [1]
    while frontier:
        v = frontier.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return len(seen) == p.n


def is_chain(p: FinPoset) -> bool:
    return len(p.strict) == p.n * (p.n - 1) // 2


def chain(n: int) -> FinPoset:
    return FinPoset(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


def transitive_reduction(p: FinPoset) -> tuple:
    """Hasse pairs, sorted; the unique minimal generating set of a finite poset."""
    out = []
    for (i, j) in p.strict:
        if not any((i, k) in p.strict and (k, j) in p.strict for k in range(1, p.n + 1)):
            out.append((i, j))
    return tuple(sorted(out))


def _refined_classes(p: FinPoset) -> list[list[int]]:
    # iterated degree-signature refinement; classes come out in signature order
    verts = list(range(1, p.n + 1))
    succ = {v: p.successors(v) for v in verts}
    pred = {v: p.predecessors(v) for v in verts}
    color = {v: 0 for v in verts}
    while True:
        sig = {v: (color[v],
                   tuple(sorted(color[u] for u in succ[v])),
                   tuple(sorted(color[u] for u in pred[v])))
               for v in verts}
        ranking = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: ranking[sig[v]] for v in verts}
        if new == color:
            break
        color = new
    classes: dict[int, list[int]] = {}
    for v in verts:
        classes.setdefault(color[v], []).append(v)
    return [sorted(classes[c]) for c in sorted(classes)]


def canonical_form(p: FinPoset) -> FinPoset:
    """Lexicographically minimal relabeling over class-respecting permutations.

    canonical_form(p) == canonical_form(q) iff p and q are isomorphic; any
    isomorphism preserves the refined degree classes, so searching within them
    loses nothing.
    """
    if p.n > MAX_CANONICAL_VERTICES:
        raise PosetSizeError(f"canonical form limited to {MAX_CANONICAL_VERTICES} vertices, got {p.n}")
    if p.n <= 1 or not p.strict:
        return p
    if is_chain(p):
        return chain(p.n)
    classes = _refined_classes(p)
    count = 1
    for c in classes:
        count *= math.factorial(len(c))
        if count > _MAX_LABELINGS:
            raise PosetSizeError("too many candidate labelings for brute-force canonicalization")
    # class k gets the contiguous label block after all earlier classes
    starts = []
    acc = 1
    for c in classes:
        starts.append(acc)
        acc += len(c)
    best = None
    for combo in itertools.product(*[itertools.permutations(c) for c in classes]):
        relabel = {}
        for block, start in zip(combo, starts):
            for offset, v in enumerate(block):
                relabel[v] = start + offset
        edges = tuple(sorted((relabel[i], relabel[j]) for i, j in p.strict))
        if best is None or edges < best:
            best = edges
    return FinPoset(p.n, best)


def isomorphic(p: FinPoset, q: FinPoset) -> bool:
    if p.n != q.n:
        return False
    if len(p.strict) != len(q.strict):
        return False
    return canonical_form(p) == canonical_form(q)
