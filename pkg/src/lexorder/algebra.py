"""Multi-index matrix units of weighted chains, diagonal-fill embeddings, and the
lexicographic product of digraphs.

Everything here is combinatorial: a matrix unit is a pair of multi-indices,
and a sum of units is a set (the embeddings are multiplicity free).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

MAX_CHAIN_DIMENSION = 4096


class ChainSizeError(ValueError):
    pass


@dataclass(frozen=True)
class MultiIndexUnit:
    """e(i, j) with i lexicographically at most j."""

    i: tuple
    j: tuple

    def __post_init__(self):
        if len(self.i) != len(self.j) or not self.i:
            raise ValueError("multi-indices must be nonempty and of equal length")
        for v in self.i + self.j:
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"index entries must be positive integers, got {v!r}")
        if not self.i <= self.j:
            raise ValueError(f"unit {self.i} > {self.j} breaks triangularity")

    @property
    def diagonal(self) -> bool:
        return self.i == self.j

    def __str__(self) -> str:
        fmt = lambda t: "(" + ",".join(str(v) for v in t) + ")"
        return fmt(self.i) + fmt(self.j)


def chain_dimension(weights) -> int:
    n = 1
    for w in weights:
        if not isinstance(w, int) or w < 1:
            raise ValueError(f"chain weights must be positive integers, got {w!r}")
        n *= w
    return n


def _check_dimension(weights) -> int:
    n = chain_dimension(weights)
    if n > MAX_CHAIN_DIMENSION:
        raise ChainSizeError(f"chain dimension {n} exceeds {MAX_CHAIN_DIMENSION}")
    return n


def multi_indices(weights) -> list:
    """All multi-indices of the chain in lexicographic order."""
    _check_dimension(weights)
    return list(itertools.product(*[range(1, w + 1) for w in weights]))


def multi_index_rank(weights, idx) -> int:
    """1-based position of a multi-index in lexicographic order."""
    rank = 0
    for v, w in zip(idx, weights):
        rank = rank * w + (v - 1)
    return rank + 1


def matrix_units(weights) -> list:
    """All units e(i, j) with i lex-below j; there are n(n+1)/2 of them."""
    pts = multi_indices(weights)
    return [MultiIndexUnit(i, j) for i in pts for j in pts if i <= j]


def validate_unit(weights, u: MultiIndexUnit):
    if len(u.i) != len(weights):
        raise ValueError(f"unit arity {len(u.i)} does not match chain length {len(weights)}")
    for t, (vi, vj) in enumerate(zip(u.i, u.j)):
        if vi > weights[t] or vj > weights[t]:
            raise ValueError(f"unit entry exceeds weight {weights[t]} at slot {t}")


def unit_product(u: MultiIndexUnit, v: MultiIndexUnit) -> Optional[MultiIndexUnit]:
    """Formal product e(i,j) e(k,l) = e(i,l) when j = k, else zero (None)."""
    if u.j != v.i:
        return None
    if u.i <= v.j:
        return MultiIndexUnit(u.i, v.j)
    raise AssertionError("product of triangular units left the triangle")


def subchain_positions(f_chain, g_chain) -> tuple:
    """Leftmost embedding of f as a weighted ordered subset of g."""
    pos = []
    q = 0
    g = tuple(g_chain)
    for w in f_chain:
        while q < len(g) and g[q] != w:
            q += 1
        if q == len(g):
            raise ValueError(f"{tuple(f_chain)} is not a weighted subchain of {g}")
        pos.append(q)
        q += 1
    return tuple(pos)


def embed(f_chain, g_chain, unit: MultiIndexUnit, at=None) -> list:
    """Image of a unit under the diagonal-fill embedding of chain f into chain g.

    Every new position receives the same symbol s in both indices, summed over
    all values; multiple new positions fill independently.  `at` fixes which
    positions of g the chain f occupies (default: leftmost match).
    """
    f, g = tuple(f_chain), tuple(g_chain)
    _check_dimension(g)
    validate_unit(f, unit)
    if at is None:
        at = subchain_positions(f, g)
    else:
        at = tuple(at)
        if len(at) != len(f) or sorted(at) != list(at) or len(set(at)) != len(at):
            raise ValueError("embedding positions must be strictly increasing")
        for t, q in enumerate(at):
            if not (0 <= q < len(g)) or g[q] != f[t]:
                raise ValueError(f"position {q} of {g} does not carry weight {f[t]}")
    new_positions = [q for q in range(len(g)) if q not in set(at)]
    images = []
    for fill in itertools.product(*[range(1, g[q] + 1) for q in new_positions]):
        i = [0] * len(g)
        j = [0] * len(g)
        for t, q in enumerate(at):
            i[q] = unit.i[t]
            j[q] = unit.j[t]
        for s, q in zip(fill, new_positions):
            i[q] = s
            j[q] = s
        images.append(MultiIndexUnit(tuple(i), tuple(j)))
    images.sort(key=lambda u: (u.i, u.j))
    return images


@dataclass(frozen=True)
class Digraph:
    """Reflexive, transitive, antisymmetric relation on vertices 1..n."""

    n: int
    edges: frozenset

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(tuple(e) for e in self.edges))
        for (i, j) in self.edges:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"edge ({i}, {j}) out of range")
        for v in range(1, self.n + 1):
            if (v, v) not in self.edges:
                raise ValueError(f"missing diagonal edge at {v}")
        for (i, j) in self.edges:
            if i != j and (j, i) in self.edges:
                raise ValueError(f"antisymmetry violated at ({i}, {j})")
        for (i, j) in self.edges:
            for (k, l) in self.edges:
                if j == k and (i, l) not in self.edges:
                    raise ValueError(f"transitivity violated at ({i}, {j}), ({k}, {l})")


def chain_digraph(n: int) -> Digraph:
    return Digraph(n, frozenset((i, j) for i in range(1, n + 1) for j in range(i, n + 1)))


def is_total(d: Digraph) -> bool:
    return len(d.edges) == d.n * (d.n + 1) // 2


def star_product(a: Digraph, b: Digraph) -> Digraph:
    """Lexicographic product: full columns over strict edges of a, copies of b
    on the diagonal of a.  Vertices (va, vb) are numbered lexicographically, so
    iterated products associate on the nose."""
    n = a.n * b.n

    def idx(va: int, vb: int) -> int:
        return (va - 1) * b.n + vb

    edges = set()
    for va in range(1, a.n + 1):
        for (vb, wb) in b.edges:
            edges.add((idx(va, vb), idx(va, wb)))
    for (va, wa) in a.edges:
        if va == wa:
            continue
        for vb in range(1, b.n + 1):
            for wb in range(1, b.n + 1):
                edges.add((idx(va, vb), idx(wa, wb)))
    return Digraph(n, frozenset(edges))  # construction re-verifies closure


def units_digraph(weights) -> Digraph:
    """Digraph of the triangular algebra of a weighted chain: one vertex per
    multi-index in lexicographic order, one edge per matrix unit."""
    w = tuple(weights)
    n = _check_dimension(w)
    edges = frozenset((multi_index_rank(w, u.i), multi_index_rank(w, u.j))
                      for u in matrix_units(w))
    return Digraph(n, edges)
