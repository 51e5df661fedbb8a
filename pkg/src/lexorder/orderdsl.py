"""Term language for weighted countable linear orders.

A term is a finite ordered sum of atoms:

    term   := atom ("+" atom)*
    atom   := "fin" "[" ints? "]"
            | "omega" "(" seq ")" | "omega*" "(" seq ")"
            | "zeta" "(" seq ";" seq ")"           // left (outward) ; right
            | "eta" "{" color ("," color)* "}"
    seq    := "[" ints? "]" ( "(" ints ")^w" )?    // prefix, cycle
    color  := int | "poset(" int ";" pair ("," pair)* ")"   with pair := int "<" int
    ints   := int ("," int)*

omega* and the left half of zeta are indexed outward: the first listed value
sits closest to the origin.  eta atoms describe a dense countable order
without endpoints in which every listed color class is dense; that coloring is
unique up to colored order isomorphism, so the color set is a complete
description.  Poset colors are only accepted in a standalone eta term.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .posets import FinPoset, canonical_form, is_chain, is_connected


class DslError(ValueError):
    """Base for parse and validation failures in the term language."""


class TermSyntaxError(DslError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


class TermSemanticError(DslError):
    pass


# -- types --------------------------------------------------------------------

@dataclass(frozen=True)
class ValueSeq:
    """Eventually periodic weight sequence: explicit prefix, then a repeating cycle."""

    prefix: tuple = ()
    cycle: tuple = ()

    def __post_init__(self):
        for v in self.prefix + self.cycle:
            if not isinstance(v, int) or v < 1:
                raise TermSemanticError(f"weights must be integers >= 1, got {v!r}")

    @property
    def is_infinite(self) -> bool:
        return bool(self.cycle)

    def value_at(self, k: int) -> int:
        """Weight at 1-based index k of the described sequence."""
        if k < 1:
            raise IndexError(k)
        if k <= len(self.prefix):
            return self.prefix[k - 1]
        if not self.cycle:
            raise IndexError(f"index {k} beyond finite sequence")
        return self.cycle[(k - len(self.prefix) - 1) % len(self.cycle)]


@dataclass(frozen=True)
class ChainColor:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise TermSemanticError(f"chain color must be an integer >= 1, got {self.n!r}")


@dataclass(frozen=True)
class PosetColor:
    poset: FinPoset

    def __post_init__(self):
        if self.poset.n < 2:
            raise TermSemanticError("poset color needs at least 2 vertices")
        if not is_connected(self.poset):
            raise TermSemanticError("poset color must be connected")


Color = Union[ChainColor, PosetColor]


def canonical_color(c: Color) -> Color:
    """Chain colors by value; chain-shaped posets collapse to chain colors."""
    if isinstance(c, ChainColor):
        return c
    if is_chain(c.poset):
        return ChainColor(c.poset.n)
    return PosetColor(canonical_form(c.poset))


def color_sort_key(c: Color):
    if isinstance(c, ChainColor):
        return (0, c.n, ())
    return (1, c.poset.n, tuple(sorted(c.poset.strict)))


@dataclass(frozen=True)
class FinChain:
    values: tuple = ()

    def __post_init__(self):
        for v in self.values:
            if not isinstance(v, int) or v < 1:
                raise TermSemanticError(f"weights must be integers >= 1, got {v!r}")


@dataclass(frozen=True)
class OmegaAtom:
    seq: ValueSeq


@dataclass(frozen=True)
class OmegaStarAtom:
    seq: ValueSeq


@dataclass(frozen=True)
class ZetaAtom:
    left: ValueSeq
    right: ValueSeq


@dataclass(frozen=True)
class EtaAtom:
    colors: frozenset

    def __post_init__(self):
        if not self.colors:
            raise TermSemanticError("eta atom needs a nonempty color set")
        for c in self.colors:
            if not isinstance(c, (ChainColor, PosetColor)):
                raise TermSemanticError(f"bad color {c!r}")


Atom = Union[FinChain, OmegaAtom, OmegaStarAtom, ZetaAtom, EtaAtom]


@dataclass(frozen=True)
class OrderTerm:
    atoms: tuple

    def __post_init__(self):
        if not self.atoms:
            raise TermSemanticError("term needs at least one atom")
        has_poset = any(isinstance(a, EtaAtom) and any(isinstance(c, PosetColor) for c in a.colors)
                        for a in self.atoms)
        if has_poset and not (len(self.atoms) == 1 and isinstance(self.atoms[0], EtaAtom)):
            raise TermSemanticError("poset colors are only allowed in a standalone eta term")

    @property
    def is_trivial(self) -> bool:
        return len(self.atoms) == 1 and isinstance(self.atoms[0], FinChain) and not self.atoms[0].values


TRIVIAL_TERM = OrderTerm((FinChain(()),))


def has_poset_color(t: OrderTerm) -> bool:
    return any(isinstance(a, EtaAtom) and any(isinstance(c, PosetColor) for c in a.colors)
               for a in t.atoms)


def is_single_eta(t: OrderTerm) -> bool:
    return len(t.atoms) == 1 and isinstance(t.atoms[0], EtaAtom)


# -- lexer --------------------------------------------------------------------

_SYMBOLS = set("+[](){};,<^*:-")


@dataclass(frozen=True)
class _Tok:
    kind: str   # "int" | "ident" | "sym" | "end"
    text: str
    line: int
    col: int


def _lex(text: str) -> list[_Tok]:
    toks = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Tok("int", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word == "omega" and j < n and text[j] == "*":
                word = "omega*"
                j += 1
            toks.append(_Tok("ident", word, line, start_col))
            col += j - i
            i = j
            continue
        if ch in _SYMBOLS:
            toks.append(_Tok("sym", ch, line, start_col))
            i += 1
            col += 1
            continue
        raise TermSyntaxError(f"unexpected character {ch!r}", line, col)
    toks.append(_Tok("end", "", line, col))
    return toks


class _Parser:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.pos = 0

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def advance(self) -> _Tok:
        t = self.toks[self.pos]
        if t.kind != "end":
            self.pos += 1
        return t

    def error(self, message: str, tok: Optional[_Tok] = None):
        tok = tok or self.peek()
        raise TermSyntaxError(message, tok.line, tok.col)

    def accept_sym(self, ch: str) -> bool:
        t = self.peek()
        if t.kind == "sym" and t.text == ch:
            self.advance()
            return True
        return False

    def expect_sym(self, ch: str) -> _Tok:
        t = self.peek()
        if t.kind != "sym" or t.text != ch:
            self.error(f"expected {ch!r}")
        return self.advance()

    def expect_ident(self, word: str) -> _Tok:
        t = self.peek()
        if t.kind != "ident" or t.text != word:
            self.error(f"expected {word!r}")
        return self.advance()

    def expect_int(self) -> int:
        t = self.peek()
        if t.kind != "int":
            self.error("expected an integer")
        self.advance()
        return int(t.text)

    def weight(self) -> int:
        t = self.peek()
        v = self.expect_int()
        if v < 1:
            raise TermSemanticError(f"{t.line}:{t.col}: weight must be >= 1, got {v}")
        return v

    def int_list(self, closer: str) -> tuple:
        t = self.peek()
        if t.kind == "sym" and t.text == closer:
            return ()
        vals = [self.weight()]
        while self.accept_sym(","):
            vals.append(self.weight())
        return tuple(vals)

    def seq(self) -> ValueSeq:
        self.expect_sym("[")
        prefix = self.int_list("]")
        self.expect_sym("]")
        cycle: tuple = ()
        t = self.peek()
        if t.kind == "sym" and t.text == "(":
            self.advance()
            cycle = self.int_list(")")
            if not cycle:
                self.error("cycle must contain at least one value")
            self.expect_sym(")")
            self.expect_sym("^")
            self.expect_ident("w")
        return ValueSeq(prefix, cycle)

    def color(self) -> Color:
        t = self.peek()
        if t.kind == "int":
            return ChainColor(self.weight())
        if t.kind == "ident" and t.text == "poset":
            self.advance()
            self.expect_sym("(")
            n = self.expect_int()
            self.expect_sym(";")
            pairs = []
            while True:
                i = self.expect_int()
                self.expect_sym("<")
                j = self.expect_int()
                pairs.append((i, j))
                if not self.accept_sym(","):
                    break
            self.expect_sym(")")
            try:
                poset = FinPoset(n, pairs)
                return PosetColor(poset)
            except ValueError as exc:
                raise TermSemanticError(f"{t.line}:{t.col}: bad poset color: {exc}") from exc
        self.error("expected a color (integer or poset literal)")

    def atom(self) -> Atom:
        t = self.peek()
        if t.kind != "ident":
            self.error("expected an atom (fin, omega, omega*, zeta or eta)")
        name = t.text
        self.advance()
        if name == "fin":
            self.expect_sym("[")
            values = self.int_list("]")
            self.expect_sym("]")
            return FinChain(values)
        if name in ("omega", "omega*"):
            self.expect_sym("(")
            s = self.seq()
            self.expect_sym(")")
            return OmegaAtom(s) if name == "omega" else OmegaStarAtom(s)
        if name == "zeta":
            self.expect_sym("(")
            left = self.seq()
            self.expect_sym(";")
            right = self.seq()
            self.expect_sym(")")
            return ZetaAtom(left, right)
        if name == "eta":
            self.expect_sym("{")
            colors = [self.color()]
            while self.accept_sym(","):
                colors.append(self.color())
            self.expect_sym("}")
            return EtaAtom(frozenset(colors))
        self.error(f"unknown atom {name!r}", t)

    def term(self) -> OrderTerm:
        atoms = [self.atom()]
        while self.accept_sym("+"):
            atoms.append(self.atom())
        return OrderTerm(tuple(atoms))

    def expect_end(self):
        if self.peek().kind != "end":
            self.error("trailing input after term")


def parse_term(text: str) -> OrderTerm:
    p = _Parser(_lex(text))
    term = p.term()
    p.expect_end()
    return term


# -- printer ------------------------------------------------------------------

def format_seq(s: ValueSeq) -> str:
    out = "[" + ",".join(str(v) for v in s.prefix) + "]"
    if s.cycle:
        out += "(" + ",".join(str(v) for v in s.cycle) + ")^w"
    return out


def format_poset_literal(p: FinPoset) -> str:
    from .posets import transitive_reduction
    pairs = ",".join(f"{i}<{j}" for i, j in transitive_reduction(p))
    return f"poset({p.n};{pairs})"


def format_color(c: Color) -> str:
    if isinstance(c, ChainColor):
        return str(c.n)
    return format_poset_literal(c.poset)


def format_atom(a: Atom) -> str:
    if isinstance(a, FinChain):
        return "fin[" + ",".join(str(v) for v in a.values) + "]"
    if isinstance(a, OmegaAtom):
        return f"omega({format_seq(a.seq)})"
    if isinstance(a, OmegaStarAtom):
        return f"omega*({format_seq(a.seq)})"
    if isinstance(a, ZetaAtom):
        return f"zeta({format_seq(a.left)};{format_seq(a.right)})"
    if isinstance(a, EtaAtom):
        colors = sorted(a.colors, key=color_sort_key)
        return "eta{" + ",".join(format_color(c) for c in colors) + "}"
    raise TypeError(f"not an atom: {a!r}")


def format_term(t: OrderTerm) -> str:
    return " + ".join(format_atom(a) for a in t.atoms)


# -- structured (tree) form, one-to-one with the grammar -----------------------

def seq_to_tree(s: ValueSeq) -> dict:
    return {"prefix": list(s.prefix), "cycle": list(s.cycle)}


def to_tree(t: OrderTerm) -> dict:
    atoms = []
    for a in t.atoms:
        if isinstance(a, FinChain):
            atoms.append({"kind": "fin", "values": list(a.values)})
        elif isinstance(a, OmegaAtom):
            atoms.append({"kind": "omega", "seq": seq_to_tree(a.seq)})
        elif isinstance(a, OmegaStarAtom):
            atoms.append({"kind": "omega*", "seq": seq_to_tree(a.seq)})
        elif isinstance(a, ZetaAtom):
            atoms.append({"kind": "zeta", "left": seq_to_tree(a.left), "right": seq_to_tree(a.right)})
        elif isinstance(a, EtaAtom):
            colors = []
            for c in sorted(a.colors, key=color_sort_key):
                if isinstance(c, ChainColor):
                    colors.append({"chain": c.n})
                else:
                    colors.append({"poset": {"n": c.poset.n,
                                             "pairs": [list(e) for e in sorted(c.poset.strict)]}})
            atoms.append({"kind": "eta", "colors": colors})
    return {"atoms": atoms}


def _seq_from_tree(d) -> ValueSeq:
    return ValueSeq(tuple(d["prefix"]), tuple(d["cycle"]))


def from_tree(tree) -> OrderTerm:
    try:
        atoms = []
        for a in tree["atoms"]:
            kind = a["kind"]
            if kind == "fin":
                atoms.append(FinChain(tuple(a["values"])))
            elif kind == "omega":
                atoms.append(OmegaAtom(_seq_from_tree(a["seq"])))
            elif kind == "omega*":
                atoms.append(OmegaStarAtom(_seq_from_tree(a["seq"])))
            elif kind == "zeta":
                atoms.append(ZetaAtom(_seq_from_tree(a["left"]), _seq_from_tree(a["right"])))
            elif kind == "eta":
                colors = []
                for c in a["colors"]:
                    if "chain" in c:
                        colors.append(ChainColor(c["chain"]))
                    else:
                        colors.append(PosetColor(FinPoset(c["poset"]["n"],
                                                          [tuple(e) for e in c["poset"]["pairs"]])))
                atoms.append(EtaAtom(frozenset(colors)))
            else:
                raise TermSemanticError(f"unknown atom kind {kind!r}")
        return OrderTerm(tuple(atoms))
    except (KeyError, TypeError) as exc:
        raise TermSemanticError(f"malformed term tree: {exc}") from exc


# -- normalization -------------------------------------------------------------

def _pruned(seq: ValueSeq) -> tuple:
    prefix = tuple(v for v in seq.prefix if v > 1)
    cycle = tuple(v for v in seq.cycle if v > 1)
    return prefix, cycle


def canonical_seq(prefix, cycle) -> ValueSeq:
    """Primitive cycle, then the shortest prefix describing the same sequence."""
    cycle = tuple(cycle)
    if not cycle:
        return ValueSeq(tuple(prefix), ())
    k = len(cycle)
    for d in range(1, k + 1):
        if k % d == 0 and cycle == cycle[:d] * (k // d):
            cycle = cycle[:d]
            break
    prefix = list(prefix)
    cyc = list(cycle)
    while prefix and prefix[-1] == cyc[-1]:
        prefix.pop()
        cyc = [cyc[-1]] + cyc[:-1]
    return ValueSeq(tuple(prefix), tuple(cyc))


def normalize(t: OrderTerm) -> OrderTerm:
    """Delete weight-1 positions and canonicalize descriptions.

    A size-1 factor is a single point of the product space; removing it is an
    isomorphism of the relation.  Cycles whose product is 1 truncate their atom
    to the finite prefix, empty atoms disappear, and a fully deleted term
    becomes the trivial term fin[].
    """
    out: list[Atom] = []
    for atom in t.atoms:
        if isinstance(atom, FinChain):
            vals = tuple(v for v in atom.values if v > 1)
            if vals:
                out.append(FinChain(vals))
        elif isinstance(atom, OmegaAtom):
            prefix, cycle = _pruned(atom.seq)
            if cycle:
                out.append(OmegaAtom(canonical_seq(prefix, cycle)))
            elif prefix:
                out.append(FinChain(prefix))
        elif isinstance(atom, OmegaStarAtom):
            prefix, cycle = _pruned(atom.seq)
            if cycle:
                out.append(OmegaStarAtom(canonical_seq(prefix, cycle)))
            elif prefix:
                # outward prefix [a1, a2, ...] reads right-to-left as an order
                out.append(FinChain(tuple(reversed(prefix))))
        elif isinstance(atom, ZetaAtom):
            lp, lc = _pruned(atom.left)
            rp, rc = _pruned(atom.right)
            if lc and rc:
                out.append(ZetaAtom(canonical_seq(lp, lc), canonical_seq(rp, rc)))
            elif lc:
                out.append(OmegaStarAtom(canonical_seq(lp, lc)))
                if rp:
                    out.append(FinChain(rp))
            elif rc:
                if lp:
                    out.append(FinChain(tuple(reversed(lp))))
                out.append(OmegaAtom(canonical_seq(rp, rc)))
            else:
                vals = tuple(reversed(lp)) + rp
                if vals:
                    out.append(FinChain(vals))
        elif isinstance(atom, EtaAtom):
            colors = set()
            for c in atom.colors:
                cc = canonical_color(c)
                if isinstance(cc, ChainColor) and cc.n == 1:
                    continue
                colors.add(cc)
            if colors:
                out.append(EtaAtom(frozenset(colors)))
        else:
            raise TypeError(f"not an atom: {atom!r}")
    if not out:
        return TRIVIAL_TERM
    return OrderTerm(tuple(out))
