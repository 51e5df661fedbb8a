"""Condensation of a term: merge finitely-separated atoms, label classes, normalize.

Two positions of the underlying order fall in the same condensation class when
the interval between them is finite.  At the atom level that merges an atom
with a greatest element (fin, omega*) into a following atom with a least
element (fin, omega); everything else stays separate.  Classes are labeled by
a pair of supernatural numbers, dense atoms become dense segments, and the
resulting block sequence is rewritten to a normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .orderdsl import (
    ChainColor,
    EtaAtom,
    FinChain,
    OmegaAtom,
    OmegaStarAtom,
    OrderTerm,
    ValueSeq,
    ZetaAtom,
    normalize,
)
from .supernat import INF, ONE, Supernatural, SupernaturalPair, from_seq

FINITE = "finite"
OMEGA = "omega"
OMEGA_STAR = "omega*"
ZETA = "zeta"


@dataclass(frozen=True)
class CondensationClass:
    """A non-dense condensation class: its order kind and invariant pair."""

    kind: str
    pair: SupernaturalPair
    size: Optional[int] = None  # element count, finite classes only

    def __post_init__(self):
        r_inf = any(self.pair.r.exponent(p) == INF for p in self.pair.r.primes())
        s_inf = any(self.pair.s.exponent(p) == INF for p in self.pair.s.primes())
        if self.kind == FINITE:
            ok = not r_inf and not s_inf and self.size is not None and self.size >= 1
        elif self.kind == OMEGA:
            ok = r_inf and not s_inf and self.size is None
        elif self.kind == OMEGA_STAR:
            ok = not r_inf and s_inf and self.size is None
        elif self.kind == ZETA:
            ok = r_inf and s_inf and self.size is None
        else:
            raise ValueError(f"unknown class kind {self.kind!r}")
        if not ok:
            raise ValueError(f"class {self.kind} inconsistent with pair {self.pair}")


@dataclass(frozen=True)
class SingleBlock:
    cls: CondensationClass


@dataclass(frozen=True)
class DenseBlock:
    colors: frozenset


SignatureBlock = Union[SingleBlock, DenseBlock]


@dataclass(frozen=True)
class ClassificationSignature:
    """Normal-form block sequence; the trivial term has the empty sequence."""

    blocks: tuple

    def __post_init__(self):
        bs = self.blocks
        for i in range(len(bs) - 1):
            a, b = bs[i], bs[i + 1]
            if isinstance(a, DenseBlock) and isinstance(b, DenseBlock) and a.colors == b.colors:
                raise ValueError("adjacent dense blocks with equal colors")
            if (isinstance(a, SingleBlock) and isinstance(b, SingleBlock)
                    and a.cls.kind == FINITE and b.cls.kind == FINITE):
                raise ValueError("adjacent finite blocks should have merged")
            if (isinstance(a, SingleBlock) and isinstance(b, SingleBlock)
                    and a.cls.kind in (FINITE, OMEGA_STAR) and b.cls.kind in (FINITE, OMEGA)):
                raise ValueError(f"unmerged adjacency {a.cls.kind} | {b.cls.kind}")
        for i in range(1, len(bs) - 1):
            a, m, b = bs[i - 1], bs[i], bs[i + 1]
            if (isinstance(a, DenseBlock) and isinstance(b, DenseBlock) and a.colors == b.colors
                    and isinstance(m, SingleBlock) and m.cls.kind == FINITE
                    and ChainColor(m.cls.pair.r.to_int()) in a.colors):
                raise ValueError("absorbable finite block between equal dense blocks")


def merged_atoms(term: OrderTerm):
    """Condensation merge on the normalized atom list.

    Returns [(atom, source_indices)] where source_indices point into the
    normalized term's atoms.  Merge rules, applied to a fixed point:
    fin+fin concatenates, fin+omega prepends to the prefix, omega*+fin appends
    outward, omega*+omega forms zeta.  Interior finite values reach a zeta
    class through its right component (fin merges into omega first).
    """
    t = normalize(term)
    if t.is_trivial:
        return []
    protos = [(atom, (i,)) for i, atom in enumerate(t.atoms)]

    def merge_pass(items, rule):
        out = []
        changed = False
        i = 0
        while i < len(items):
            if i + 1 < len(items):
                merged = rule(items[i][0], items[i + 1][0])
                if merged is not None:
                    out.append((merged, items[i][1] + items[i + 1][1]))
                    i += 2
                    changed = True
                    continue
            out.append(items[i])
            i += 1
        return out, changed

    def fin_fin(a, b):
        if isinstance(a, FinChain) and isinstance(b, FinChain):
            return FinChain(a.values + b.values)
        return None

    def fin_omega(a, b):
        if isinstance(a, FinChain) and isinstance(b, OmegaAtom):
            return OmegaAtom(ValueSeq(a.values + b.seq.prefix, b.seq.cycle))
        return None

    def omegastar_fin(a, b):
        if isinstance(a, OmegaStarAtom) and isinstance(b, FinChain):
            return OmegaStarAtom(ValueSeq(tuple(reversed(b.values)) + a.seq.prefix, a.seq.cycle))
        return None

    def omegastar_omega(a, b):
        if isinstance(a, OmegaStarAtom) and isinstance(b, OmegaAtom):
            return ZetaAtom(a.seq, b.seq)
        return None

    changed = True
    while changed:
        changed = False
        for rule in (fin_fin, fin_omega, omegastar_fin, omegastar_omega):
            protos, c = merge_pass(protos, rule)
            changed = changed or c
    return protos


def _class_of(atom) -> SignatureBlock:
    if isinstance(atom, FinChain):
        prod = 1
        for v in atom.values:
            prod *= v
        pair = SupernaturalPair(Supernatural.from_int(prod), ONE)
        return SingleBlock(CondensationClass(FINITE, pair, size=len(atom.values)))
    if isinstance(atom, OmegaAtom):
        return SingleBlock(CondensationClass(OMEGA, SupernaturalPair(from_seq(atom.seq), ONE)))
    if isinstance(atom, OmegaStarAtom):
        return SingleBlock(CondensationClass(OMEGA_STAR, SupernaturalPair(ONE, from_seq(atom.seq))))
    if isinstance(atom, ZetaAtom):
        return SingleBlock(CondensationClass(ZETA,
                                             SupernaturalPair(from_seq(atom.right), from_seq(atom.left))))
    if isinstance(atom, EtaAtom):
        return DenseBlock(atom.colors)
    raise TypeError(f"not an atom: {atom!r}")


def class_invariant(cls: CondensationClass) -> SupernaturalPair:
    """The labeling pair; well-defined only up to pair equivalence (the origin
    inside a two-sided class is an arbitrary choice)."""
    return cls.pair


def normalize_signature(blocks) -> ClassificationSignature:
    """Rewrite the block sequence to its normal form.

    Rule (a): two adjacent dense segments with equal color sets are one dense
    segment.  Rule (b): a finite class of product n between two dense segments
    with equal color set C disappears when the chain color n lies in C; a
    colored back-and-forth bijection witnesses both rules.
    """
    bs = list(blocks)
    changed = True
    while changed:
        changed = False
        for i in range(len(bs) - 1):
            a, b = bs[i], bs[i + 1]
            if isinstance(a, DenseBlock) and isinstance(b, DenseBlock) and a.colors == b.colors:
                del bs[i + 1]
                changed = True
                break
        if changed:
            continue
        for i in range(1, len(bs) - 1):
            a, m, b = bs[i - 1], bs[i], bs[i + 1]
            if (isinstance(a, DenseBlock) and isinstance(b, DenseBlock) and a.colors == b.colors
                    and isinstance(m, SingleBlock) and m.cls.kind == FINITE
                    and ChainColor(m.cls.pair.r.to_int()) in a.colors):
                del bs[i:i + 2]
                changed = True
                break
    return ClassificationSignature(tuple(bs))


def condense(term: OrderTerm) -> ClassificationSignature:
    return normalize_signature([_class_of(atom) for atom, _ in merged_atoms(term)])


def single_class_coordinates(term: OrderTerm):
    """Coordinate data (left_seq, right) of a discrete one-class term.

    left_seq is the outward weight sequence left of the origin (None when the
    class has no left half).  right is a ValueSeq for an infinite right half,
    a tuple of weights for a finite class, or None for a pure omega* class.
    The trivial term yields (None, ()).
    """
    merged = merged_atoms(term)
    if not merged:
        return None, ()
    if len(merged) != 1:
        raise ValueError("term condenses to more than one class")
    atom = merged[0][0]
    if isinstance(atom, FinChain):
        return None, atom.values
    if isinstance(atom, OmegaAtom):
        return None, atom.seq
    if isinstance(atom, OmegaStarAtom):
        return atom.seq, None
    if isinstance(atom, ZetaAtom):
        return atom.left, atom.right
    raise ValueError("dense classes have no coordinate model")


def format_signature(sig: ClassificationSignature) -> str:
    if not sig.blocks:
        return "(empty)"
    parts = []
    for b in sig.blocks:
        if isinstance(b, DenseBlock):
            from .orderdsl import color_sort_key, format_color
            colors = ",".join(format_color(c) for c in sorted(b.colors, key=color_sort_key))
            parts.append("[dense:{" + colors + "}]")
        else:
            c = b.cls
            if c.kind == FINITE:
                parts.append(f"[fin:{c.pair.r.to_int()}]")
            else:
                parts.append(f"[{c.kind}:{c.pair}]")
    return " ".join(parts)
