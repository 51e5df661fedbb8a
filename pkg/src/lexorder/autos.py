"""Recoding automorphisms of two-sided products and their rank-scaling constants.

For a prime p infinite in both halves of a two-sided (zeta) class, group the
weight positions into blocks (the prefix plus one cycle, then whole cycles),
split each block value into a p-digit and a residual digit, and shift the
p-digits one block toward the right across the origin.  The image of a point
scales its rank by exactly 1/p; iterating k times scales by p^-k.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .condense import ZETA, condense, single_class_coordinates, SingleBlock
from .orderdsl import OrderTerm, ValueSeq
from .space import Periodic, Point, SpaceError, d_value, random_point
from .supernat import INF, is_prime


class NotDivisibleError(ValueError):
    pass


class RatioInconsistencyError(RuntimeError):
    """Sampled rank ratios disagree; signals an implementation fault."""


@dataclass(frozen=True)
class AutomorphismConstant:
    c: Fraction


class _Side:
    """Block structure of one weight half: block 1 is the prefix plus one
    cycle, later blocks one cycle each, so every block product is divisible
    by p whenever p divides the cycle product."""

    def __init__(self, seq: ValueSeq, p: int):
        self.seq = seq
        self.p = p
        self.first_len = len(seq.prefix) + len(seq.cycle)
        self.cycle_len = len(seq.cycle)

    def block_len(self, i: int) -> int:
        return self.first_len if i == 1 else self.cycle_len

    def block_start(self, i: int) -> int:
        # 1-based index (outward on the left half) of the block's first position
        return 1 if i == 1 else self.first_len + (i - 2) * self.cycle_len + 1

    def block_index(self, k: int) -> int:
        if k <= self.first_len:
            return 1
        return 2 + (k - self.first_len - 1) // self.cycle_len

    def weights(self, i: int) -> tuple:
        start = self.block_start(i)
        return tuple(self.seq.value_at(start + j) for j in range(self.block_len(i)))

    def product(self, i: int) -> int:
        out = 1
        for w in self.weights(i):
            out *= w
        return out

    def residual(self, i: int) -> int:
        return self.product(i) // self.p


@dataclass(frozen=True)
class RecodingPlan:
    """Block partition data for one prime; `prime is None` is the identity plan."""

    term: OrderTerm
    prime: Optional[int]
    left_first: tuple = ()
    left_cycle: tuple = ()
    right_first: tuple = ()
    right_cycle: tuple = ()

    @property
    def is_identity(self) -> bool:
        return self.prime is None


def identity_plan(term: OrderTerm) -> RecodingPlan:
    return RecodingPlan(term, None)


def recoding_plan(term: OrderTerm, p: int) -> RecodingPlan:
    """Block partition for the generator attached to p.

    Requires a term condensing to a single two-sided class whose pair is
    divisible by p^inf on both sides, i.e. p divides both cycle products.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    sig = condense(term)
    if len(sig.blocks) != 1 or not isinstance(sig.blocks[0], SingleBlock) \
            or sig.blocks[0].cls.kind != ZETA:
        raise NotDivisibleError("recoding needs a single two-sided class")
    pair = sig.blocks[0].cls.pair
    if pair.r.exponent(p) != INF or pair.s.exponent(p) != INF:
        raise NotDivisibleError(f"prime {p} is not infinite in both components of {pair}")
    left, right = single_class_coordinates(term)
    lside, rside = _Side(left, p), _Side(right, p)
    return RecodingPlan(term, p,
                        left_first=lside.weights(1), left_cycle=lside.weights(2),
                        right_first=rside.weights(1), right_cycle=rside.weights(2))


def _linearize(values, weights) -> int:
    """Mixed-radix value in 1..prod(weights); the leftmost digit is most significant."""
    v = 0
    for x, w in zip(values, weights):
        v = v * w + (x - 1)
    return v + 1


def _delinearize(v: int, weights) -> tuple:
    digits = []
    v -= 1
    for w in reversed(weights):
        digits.append(v % w + 1)
        v //= w
    return tuple(reversed(digits))


def act(plan: RecodingPlan, x: Point) -> Point:
    """Image of a point under the recoding-and-shift generator.

    Encoding splits each block value u into (residual digit, p-digit) with the
    p-digit least significant; the shifted reassembly makes the incoming
    p-digit most significant, which keeps every block bijective and scales the
    rank by 1/p.  All finite descriptions map to finite descriptions.
    """
    if x.term != plan.term:
        raise SpaceError("point does not live over the plan's term")
    if plan.is_identity:
        return x
    p = plan.prime
    left, right = single_class_coordinates(plan.term)
    lside, rside = _Side(left, p), _Side(right, p)

    # left blocks: value read outward-first (most significant farthest out)
    def left_block_value(i: int) -> int:
        start = lside.block_start(i)
        coords = [x.coord(-(start + j)) for j in range(lside.block_len(i))]
        return _linearize(tuple(reversed(coords)), tuple(reversed(lside.weights(i))))

    def right_block_value(i: int) -> int:
        start = rside.block_start(i)
        coords = tuple(x.coord(start + j) for j in range(rside.block_len(i)))
        return _linearize(coords, rside.weights(i))

    def split(u: int, residual: int) -> tuple:
        # u - 1 = (hi - 1) * p + (lo - 1) with hi in [residual], lo in [p]
        hi, lo = divmod(u - 1, p)
        return hi + 1, lo + 1

    exc_blocks = [lside.block_index(-pos) for pos, _ in x.left_exceptions]
    kl = max(exc_blocks, default=0)
    c_digits = {}   # p-digits of left blocks
    d_digits = {}   # residual digits of left blocks
    for i in range(1, kl + 2):
        d_digits[i], c_digits[i] = split(left_block_value(i), lside.residual(i))

    n_explicit = len(x.right_prefix)
    k_exp = rside.block_index(n_explicit) if n_explicit else 0
    if isinstance(x.right_tail, Periodic):
        m = len(x.right_tail.values) // rside.cycle_len
    else:
        m = 1
    top = k_exp + 1 + m
    b_digits = {}
    a_digits = {}
    for i in range(1, top + 1):
        b_digits[i], a_digits[i] = split(right_block_value(i), rside.residual(i))

    # shifted reassembly: left block i takes (p-digit of block i+1, own residual);
    # right block 1 takes the crossing p-digit of left block 1.
    new_exc = {}
    for i in range(1, kl + 1):
        u_new = (c_digits[i + 1] - 1) * lside.residual(i) + d_digits[i]
        coords = _delinearize(u_new, tuple(reversed(lside.weights(i))))
        start = lside.block_start(i)
        for j, val in enumerate(reversed(coords)):
            new_exc[-(start + j)] = val

    def new_right_value(i: int) -> int:
        hi = c_digits[1] if i == 1 else a_digits[i - 1]
        return (hi - 1) * rside.residual(i) + b_digits[i]

    explicit_blocks = k_exp + 1
    new_prefix = []
    for i in range(1, explicit_blocks + 1):
        new_prefix.extend(_delinearize(new_right_value(i), rside.weights(i)))
    tail = x.right_tail
    if isinstance(tail, Periodic):
        vals = []
        for i in range(explicit_blocks + 1, explicit_blocks + 1 + m):
            vals.extend(_delinearize(new_right_value(i), rside.weights(i)))
        new_tail = Periodic(tuple(vals))
    else:
        new_tail = tail
    return Point(plan.term, new_exc, tuple(new_prefix), new_tail)


def measured_constant(plan: RecodingPlan, sample_size: int, seed: int = 0,
                      iterations: int = 1) -> AutomorphismConstant:
    """Common ratio d(act^k(x)) / d(x) over random nonzero-rank points.

    Fails loudly when the sampled ratios disagree.
    """
    if sample_size < 1:
        raise ValueError("sample_size must be >= 1")
    rng = random.Random(f"constant:{seed}")
    ratio = None
    collected = 0
    attempts = 0
    while collected < sample_size:
        attempts += 1
        if attempts > 100 * sample_size:
            raise RuntimeError("could not sample enough nonzero-rank points")
        x = random_point(plan.term, rng)
        dx = d_value(x)
        if dx == 0:
            continue
        y = x
        for _ in range(iterations):
            y = act(plan, y)
        r = d_value(y) / dx
        if ratio is None:
            ratio = r
        elif ratio != r:
            raise RatioInconsistencyError(f"rank ratios disagree: {ratio} vs {r}")
        collected += 1
    return AutomorphismConstant(ratio)


def rank_supported_primes(term: OrderTerm) -> list:
    """Primes dividing any weight for which a recoding plan exists."""
    left, right = single_class_coordinates(term)
    weight_primes = set()
    from .supernat import factorize
    for seq in (left, right):
        if isinstance(seq, ValueSeq):
            for v in seq.prefix + seq.cycle:
                weight_primes |= set(factorize(v))
        elif isinstance(seq, tuple):
            for v in seq:
                weight_primes |= set(factorize(v))
    out = []
    for p in sorted(weight_primes):
        try:
            recoding_plan(term, p)
        except NotDivisibleError:
            continue
        out.append(p)
    return out
