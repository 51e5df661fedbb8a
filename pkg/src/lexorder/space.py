"""Finite descriptions of points over a discrete one-class term, and exact measures.

A point fixes finitely many coordinates left of the origin (all remaining left
coordinates are 1), an explicit block of right coordinates, and a symbolic
right tail: all ones, all maximal, or periodic with period a multiple of the
weight cycle.  On that domain the rank map d, cylinder measures and closed
orbit measures are exact rationals, and lexicographic comparison is decidable
by scanning one period past the explicit parts.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional, Union

from .condense import single_class_coordinates
from .orderdsl import OrderTerm, TermSyntaxError, ValueSeq, _lex as _lex_tokens, _Parser


class SpaceError(ValueError):
    pass


class NoPartnerError(SpaceError):
    pass


class Lex(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    # Present for completeness of the comparison contract: pairs with no
    # leftmost discrepancy cannot occur for points whose far left is all ones.
    NO_FIRST_DIFFERENCE = "no-first-difference"


@dataclass(frozen=True)
class AllOnes:
    pass


@dataclass(frozen=True)
class AllMax:
    pass


@dataclass(frozen=True)
class Periodic:
    values: tuple


RightTail = Union[AllOnes, AllMax, Periodic]


class _Coords:
    """Coordinate model of a discrete one-class term."""

    def __init__(self, term: OrderTerm):
        left, right = single_class_coordinates(term)
        self.left = left                       # ValueSeq or None
        self.right = right                     # ValueSeq, tuple, or None
        self.has_left = left is not None
        self.right_infinite = isinstance(right, ValueSeq)

    def left_weight(self, k: int) -> int:
        if not self.has_left:
            raise SpaceError("term has no coordinates left of the origin")
        return self.left.value_at(k)

    def right_weight(self, k: int) -> int:
        if self.right is None:
            raise SpaceError("term has no coordinates right of the origin")
        if isinstance(self.right, tuple):
            if k > len(self.right):
                raise SpaceError(f"position {k} beyond the finite right half")
            return self.right[k - 1]
        return self.right.value_at(k)

    @property
    def right_len(self) -> int:
        return len(self.right) if isinstance(self.right, tuple) else 0

    @property
    def right_prefix_len(self) -> int:
        return len(self.right.prefix)

    @property
    def right_cycle_len(self) -> int:
        return len(self.right.cycle)

    def weight(self, pos: int) -> int:
        if pos >= 1:
            return self.right_weight(pos)
        if pos <= -1:
            return self.left_weight(-pos)
        raise SpaceError("position 0 does not exist")


@lru_cache(maxsize=None)
def coords_for(term: OrderTerm) -> _Coords:
    return _Coords(term)


@dataclass(frozen=True, eq=False)
class Point:
    term: OrderTerm
    left_exceptions: tuple = ()
    right_prefix: tuple = ()
    right_tail: RightTail = AllOnes()

    def __post_init__(self):
        c = coords_for(self.term)
        exc = self.left_exceptions
        if isinstance(exc, dict):
            exc = tuple(sorted(exc.items()))
        else:
            exc = tuple(sorted(tuple(pv) for pv in exc))
        cleaned = []
        for pos, val in exc:
            if not (isinstance(pos, int) and pos <= -1):
                raise SpaceError(f"left positions must be negative integers, got {pos!r}")
            w = c.left_weight(-pos)
            if not (1 <= val <= w):
                raise SpaceError(f"value {val} at position {pos} outside 1..{w}")
            if val > 1:
                cleaned.append((pos, val))
        object.__setattr__(self, "left_exceptions", tuple(cleaned))

        prefix = tuple(self.right_prefix)
        tail = self.right_tail
        if c.right is None:
            if prefix or not isinstance(tail, AllOnes):
                raise SpaceError("term has no right half")
        elif isinstance(c.right, tuple):
            m = len(c.right)
            if len(prefix) > m:
                raise SpaceError("explicit values exceed the finite right half")
            if isinstance(tail, Periodic):
                raise SpaceError("periodic tails need an infinite right half")
            for k, v in enumerate(prefix, start=1):
                w = c.right_weight(k)
                if not (1 <= v <= w):
                    raise SpaceError(f"value {v} at position {k} outside 1..{w}")
            full = list(prefix)
            for k in range(len(prefix) + 1, m + 1):
                full.append(1 if isinstance(tail, AllOnes) else c.right_weight(k))
            prefix, tail = tuple(full), AllOnes()
        else:
            n = len(prefix)
            for k, v in enumerate(prefix, start=1):
                w = c.right_weight(k)
                if not (1 <= v <= w):
                    raise SpaceError(f"value {v} at position {k} outside 1..{w}")
            if isinstance(tail, Periodic):
                vals = tuple(tail.values)
                ell = c.right_cycle_len
                if not vals or len(vals) % ell != 0:
                    raise SpaceError(f"periodic tail length must be a positive multiple of {ell}")
                if n < c.right_prefix_len or (n - c.right_prefix_len) % ell != 0:
                    raise SpaceError("periodic tail must start on a weight-cycle boundary; "
                                     "lengthen the explicit prefix to adjust the phase")
                for j, v in enumerate(vals, start=1):
                    w = c.right_weight(n + j)
                    if not (1 <= v <= w):
                        raise SpaceError(f"tail value {v} at position {n + j} outside 1..{w}")
                if all(v == 1 for v in vals):
                    tail = AllOnes()
                elif all(v == c.right_weight(n + j) for j, v in enumerate(vals, start=1)):
                    tail = AllMax()
                else:
                    length = len(vals)
                    for d in range(ell, length + 1, ell):
                        if length % d == 0 and vals == vals[:d] * (length // d):
                            vals = vals[:d]
                            break
                    prefix_l = list(prefix)
                    while (len(prefix_l) >= ell and len(prefix_l) - ell >= c.right_prefix_len
                           and tuple(prefix_l[-ell:]) == vals[-ell:]):
                        del prefix_l[-ell:]
                        vals = vals[-ell:] + vals[:-ell]
                    prefix = tuple(prefix_l)
                    tail = Periodic(vals)
            if isinstance(tail, AllOnes):
                while prefix and prefix[-1] == 1:
                    prefix = prefix[:-1]
            elif isinstance(tail, AllMax):
                while prefix and prefix[-1] == c.right_weight(len(prefix)):
                    prefix = prefix[:-1]
        object.__setattr__(self, "right_prefix", prefix)
        object.__setattr__(self, "right_tail", tail)

    # semantic equality: same coordinate function, not same description
    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        if self.term != other.term:
            return False
        return lex_compare(self, other) is Lex.EQUAL

    __hash__ = None

    def coord(self, pos: int) -> int:
        c = coords_for(self.term)
        if pos <= -1:
            c.left_weight(-pos)  # existence check
            return dict(self.left_exceptions).get(pos, 1)
        if pos == 0:
            raise SpaceError("position 0 does not exist")
        if pos <= len(self.right_prefix):
            return self.right_prefix[pos - 1]
        w = c.right_weight(pos)  # raises beyond a finite right half
        tail = self.right_tail
        if isinstance(tail, AllOnes):
            return 1
        if isinstance(tail, AllMax):
            return w
        return tail.values[(pos - len(self.right_prefix) - 1) % len(tail.values)]

    @classmethod
    def all_ones(cls, term: OrderTerm) -> "Point":
        return cls(term)

    @classmethod
    def x_star(cls, term: OrderTerm) -> "Point":
        """Left all ones, right all maximal; the rank-1 calibration point."""
        c = coords_for(term)
        if c.right is None:
            raise SpaceError("term has no right half")
        return cls(term, (), (), AllMax())


def _tail_period(p: Point) -> int:
    return len(p.right_tail.values) if isinstance(p.right_tail, Periodic) else 1


def lex_compare(x: Point, y: Point) -> Lex:
    """Orientation of the first (leftmost) differing coordinate."""
    if x.term != y.term:
        raise SpaceError("points live over different terms")
    ex, ey = dict(x.left_exceptions), dict(y.left_exceptions)
    for pos in sorted(set(ex) | set(ey)):
        vx, vy = ex.get(pos, 1), ey.get(pos, 1)
        if vx != vy:
            return Lex.LESS if vx < vy else Lex.GREATER
    c = coords_for(x.term)
    if c.right is None:
        return Lex.EQUAL
    if isinstance(c.right, tuple):
        horizon = len(c.right)
    else:
        m = max(len(x.right_prefix), len(y.right_prefix))
        px, py = _tail_period(x), _tail_period(y)
        horizon = m + (px * py) // gcd(px, py)
    for k in range(1, horizon + 1):
        vx, vy = x.coord(k), y.coord(k)
        if vx != vy:
            return Lex.LESS if vx < vy else Lex.GREATER
    return Lex.EQUAL


@dataclass(frozen=True)
class Cylinder:
    """Finitely many fixed coordinates; a basic open-closed set."""

    constraints: tuple = ()

    def __post_init__(self):
        items = self.constraints
        if isinstance(items, dict):
            items = items.items()
        object.__setattr__(self, "constraints", tuple(sorted(tuple(pv) for pv in items)))


def cylinder_measure(term: OrderTerm, cyl: Cylinder) -> Fraction:
    """Product of 1/weight over the constrained positions, as an exact rational.

    This is the value of the unique invariant probability measure, which gives
    every symbol at a position equal mass.
    """
    c = coords_for(term)
    out = Fraction(1)
    seen = set()
    for pos, val in cyl.constraints:
        if pos in seen:
            raise SpaceError(f"position {pos} constrained twice")
        seen.add(pos)
        w = c.weight(pos)
        if not (1 <= val <= w):
            raise SpaceError(f"value {val} at position {pos} outside 1..{w}")
        out /= w
    return out


def d_value(x: Point) -> Fraction:
    """Mixed-radix rank of a point: left coordinates contribute integer steps,
    right coordinates a radix fraction; tails are summed in closed form."""
    c = coords_for(x.term)
    total = Fraction(0)
    for pos, val in x.left_exceptions:
        k = -pos
        step = 1
        for i in range(1, k):
            step *= c.left_weight(i)
        total += (val - 1) * step
    if c.right is None:
        return total
    denom = 1
    for k, v in enumerate(x.right_prefix, start=1):
        denom *= c.right_weight(k)
        total += Fraction(v - 1, denom)
    tail = x.right_tail
    n = len(x.right_prefix)
    if isinstance(tail, AllMax):
        if isinstance(c.right, tuple):  # a finite right half is fully explicit
            raise AssertionError("finite points never carry symbolic tails")
        total += Fraction(1, denom)
    elif isinstance(tail, Periodic):
        period_sum = Fraction(0)
        wprod = denom
        for j, v in enumerate(tail.values, start=1):
            wprod *= c.right_weight(n + j)
            period_sum += Fraction(v - 1, wprod)
        cycle_product = wprod // denom
        total += period_sum * Fraction(cycle_product, cycle_product - 1)
    return total


def closed_orbit_contains(y: Point, x: Point) -> bool:
    """Membership of y in the closure of the set of points preceding x."""
    return lex_compare(y, x) in (Lex.EQUAL, Lex.LESS)


def closed_orbit_measure(x: Point) -> Fraction:
    """Measure of the closed orbit; the pushforward of the invariant measure
    under the rank map is Lebesgue on [0, 1] in the right factor."""
    return d_value(x)


def gap_partner(x: Point) -> Point:
    """The unique other point with the same rank value.

    A terminating point (..., v, 1, 1, ...) pairs with (..., v-1, max, max, ...)
    and conversely; ranks tie exactly on such pairs.
    """
    c = coords_for(x.term)
    if not c.right_infinite:
        raise NoPartnerError("ranks are injective without an infinite right half")
    if isinstance(x.right_tail, Periodic):
        raise NoPartnerError("non-terminating periodic tail has a unique rank")
    exc = dict(x.left_exceptions)
    prefix = list(x.right_prefix)
    if isinstance(x.right_tail, AllOnes):
        for i in range(len(prefix) - 1, -1, -1):
            if prefix[i] > 1:
                return Point(x.term, exc, tuple(prefix[:i]) + (prefix[i] - 1,), AllMax())
        if exc:
            k = min(-pos for pos in exc)  # canonical points only store values > 1
            new_exc = dict(exc)
            new_exc[-k] = new_exc[-k] - 1
            for j in range(1, k):
                new_exc[-j] = c.left_weight(j)
            return Point(x.term, new_exc, (), AllMax())
        raise NoPartnerError("the minimum point achieves its rank uniquely")
    for i in range(len(prefix) - 1, -1, -1):
        if prefix[i] < c.right_weight(i + 1):
            return Point(x.term, exc, tuple(prefix[:i]) + (prefix[i] + 1,), AllOnes())
    if c.has_left:
        k = 1
        while exc.get(-k, 1) >= c.left_weight(k):
            k += 1
        new_exc = dict(exc)
        new_exc[-k] = new_exc.get(-k, 1) + 1
        for j in range(1, k):
            new_exc.pop(-j, None)
        return Point(x.term, new_exc, (), AllOnes())
    raise NoPartnerError("the maximum point achieves its rank uniquely")


def random_point(term: OrderTerm, rng, tails=("ones", "max", "cycle")) -> Point:
    """Uniform-ish sampler of finite-description points; used by consistency checks."""
    c = coords_for(term)
    exc = {}
    if c.has_left:
        for _ in range(rng.randrange(0, 3)):
            k = rng.randrange(1, 7)
            exc[-k] = rng.randrange(1, c.left_weight(k) + 1)
    if c.right is None:
        return Point(term, exc)
    if isinstance(c.right, tuple):
        vals = tuple(rng.randrange(1, w + 1) for w in c.right)
        return Point(term, exc, vals, AllOnes())
    kind = rng.choice(tails)
    if kind == "cycle":
        ell = c.right_cycle_len
        n = c.right_prefix_len + ell * rng.randrange(0, 3)
        prefix = tuple(rng.randrange(1, c.right_weight(k) + 1) for k in range(1, n + 1))
        length = ell * rng.randrange(1, 3)
        vals = tuple(rng.randrange(1, c.right_weight(n + j) + 1) for j in range(1, length + 1))
        return Point(term, exc, prefix, Periodic(vals))
    n = rng.randrange(0, 5)
    prefix = tuple(rng.randrange(1, c.right_weight(k) + 1) for k in range(1, n + 1))
    return Point(term, exc, prefix, AllOnes() if kind == "ones" else AllMax())


# -- textual point syntax -------------------------------------------------------

def format_point(x: Point) -> str:
    parts = []
    if x.left_exceptions:
        inner = ",".join(f"{pos}:{val}" for pos, val in x.left_exceptions)
        parts.append("left:{" + inner + "}")
    if x.right_prefix:
        parts.append("right:[" + ",".join(str(v) for v in x.right_prefix) + "]")
    tail = x.right_tail
    if isinstance(tail, AllOnes):
        parts.append("tail:ones")
    elif isinstance(tail, AllMax):
        parts.append("tail:max")
    else:
        parts.append("tail:cycle[" + ",".join(str(v) for v in tail.values) + "]")
    return "point{" + ", ".join(parts) + "}"


def parse_point(text: str, term: OrderTerm) -> Point:
    """Parse `point{left: {-3:2}, right: [2,1], tail: ones|max|cycle[...]}`."""
    p = _Parser(_lex_tokens(text))
    p.expect_ident("point")
    p.expect_sym("{")
    exc: dict = {}
    prefix: tuple = ()
    tail: RightTail = AllOnes()

    def parse_int():
        neg = p.accept_sym("-")
        v = p.expect_int()
        return -v if neg else v

    while True:
        key = p.peek()
        if key.kind != "ident" or key.text not in ("left", "right", "tail"):
            p.error("expected left, right or tail")
        p.advance()
        p.expect_sym(":")
        if key.text == "left":
            p.expect_sym("{")
            while not p.accept_sym("}"):
                pos = parse_int()
                p.expect_sym(":")
                val = p.expect_int()
                exc[pos] = val
                if not p.accept_sym(","):
                    p.expect_sym("}")
                    break
        elif key.text == "right":
            p.expect_sym("[")
            prefix = p.int_list("]")
            p.expect_sym("]")
        else:
            t = p.peek()
            if t.kind != "ident":
                p.error("expected ones, max or cycle")
            p.advance()
            if t.text == "ones":
                tail = AllOnes()
            elif t.text == "max":
                tail = AllMax()
            elif t.text == "cycle":
                p.expect_sym("[")
                tail = Periodic(p.int_list("]"))
                p.expect_sym("]")
            else:
                p.error("expected ones, max or cycle", t)
        if not p.accept_sym(","):
            break
    p.expect_sym("}")
    p.expect_end()
    try:
        return Point(term, exc, prefix, tail)
    except SpaceError as exc_err:
        raise SpaceError(f"invalid point for this term: {exc_err}") from exc_err
