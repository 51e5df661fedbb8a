"""Isomorphism decision for weighted order terms via signature comparison.

Two terms describe isomorphic lexicographic semigroupoids exactly when their
normalized signatures match blockwise: single classes up to pair equivalence,
dense segments by equality of canonical color sets (every color class is
dense, so a colored back-and-forth bijection exists precisely when the sets
agree).  Verdicts carry a certificate that a skeptical checker can re-verify
without re-running this module's matching logic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .condense import ClassificationSignature, DenseBlock, SingleBlock, condense
from .orderdsl import OrderTerm, color_sort_key, format_color, has_poset_color, is_single_eta, normalize
from .supernat import EquivWitness, pair_equiv


class RegimeError(ValueError):
    """Raised when a poset-colored term is compared with a mixed term."""


# The dense-block rewrite rules are sound but their completeness (normal-form
# equality iff labeled quotient isomorphism) is conjectural; negative verdicts
# over dense segments inherit that caveat.
NORMAL_FORM_CAVEAT = ("negative verdict relies on signature normal forms; the rewrite "
                      "rules for dense segments are sound but not proven complete")


@dataclass(frozen=True)
class BlockMatch:
    index: int
    witness: Optional[EquivWitness]          # single-class blocks
    colors: Optional[tuple] = None           # dense blocks: (color_a, color_b) pairs


@dataclass(frozen=True)
class BlockMismatch:
    index: int
    reason: str


@dataclass(frozen=True)
class Verdict:
    isomorphic: bool
    matches: Optional[tuple]
    mismatch: Optional[BlockMismatch]
    caveat: Optional[str]
    signature_a: ClassificationSignature
    signature_b: ClassificationSignature


def classify(term_a: OrderTerm, term_b: OrderTerm) -> Verdict:
    na, nb = normalize(term_a), normalize(term_b)
    if has_poset_color(na) and not is_single_eta(nb):
        raise RegimeError("cannot compare a poset-colored term with a mixed term")
    if has_poset_color(nb) and not is_single_eta(na):
        raise RegimeError("cannot compare a poset-colored term with a mixed term")
    sig_a, sig_b = condense(na), condense(nb)
    dense_present = any(isinstance(b, DenseBlock) for b in sig_a.blocks + sig_b.blocks)
    caveat = NORMAL_FORM_CAVEAT if dense_present else None

    def negative(index: int, reason: str) -> Verdict:
        return Verdict(False, None, BlockMismatch(index, reason), caveat, sig_a, sig_b)

    matches = []
    for i in range(min(len(sig_a.blocks), len(sig_b.blocks))):
        a, b = sig_a.blocks[i], sig_b.blocks[i]
        if isinstance(a, SingleBlock) != isinstance(b, SingleBlock):
            kind_a = "single class" if isinstance(a, SingleBlock) else "dense segment"
            kind_b = "single class" if isinstance(b, SingleBlock) else "dense segment"
            return negative(i, f"{kind_a} vs {kind_b}")
        if isinstance(a, SingleBlock):
            verdict = pair_equiv(a.cls.pair, b.cls.pair)
            if not verdict.equivalent:
                return negative(i, f"pairs {a.cls.pair} vs {b.cls.pair}: {verdict.reason}")
            matches.append(BlockMatch(i, verdict.witness))
        else:
            if a.colors != b.colors:
                ca = ",".join(format_color(c) for c in sorted(a.colors, key=color_sort_key))
                cb = ",".join(format_color(c) for c in sorted(b.colors, key=color_sort_key))
                return negative(i, f"dense color sets differ: {{{ca}}} vs {{{cb}}}")
            pairing = tuple((c, c) for c in sorted(a.colors, key=color_sort_key))
            matches.append(BlockMatch(i, None, pairing))
    if len(sig_a.blocks) != len(sig_b.blocks):
        return negative(min(len(sig_a.blocks), len(sig_b.blocks)),
                        f"block counts differ ({len(sig_a.blocks)} vs {len(sig_b.blocks)})")
    return Verdict(True, tuple(matches), None, None, sig_a, sig_b)
