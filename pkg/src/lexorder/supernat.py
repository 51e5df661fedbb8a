"""Supernatural (generalized) integers and the coprime-transfer equivalence on pairs.

A supernatural number is a formal product of prime powers p^e with e a positive
integer or infinite.  Products of eventually periodic weight sequences always
have finite prime support, so the mapping prime -> exponent stored here is
finite and every operation terminates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Union

INF = float("inf")

Exponent = Union[int, float]  # a positive int, or INF


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer by trial division."""
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class Supernatural:
    """Formal product prod p^e over finitely many primes, exponents in {1,2,...} or INF.

    Immutable; the value 1 is the empty product.
    """

    __slots__ = ("_f",)

    def __init__(self, factors: Union[dict, Iterable[tuple[int, Exponent]]] = ()):
        items = factors.items() if isinstance(factors, dict) else factors
        f: dict[int, Exponent] = {}
        for p, e in items:
            if not isinstance(p, int) or not is_prime(p):
                raise ValueError(f"base {p!r} is not a prime")
            if p in f:
                raise ValueError(f"duplicate prime {p}")
            if e == 0:
                continue
            if e != INF and (not isinstance(e, int) or e < 0):
                raise ValueError(f"bad exponent {e!r} for prime {p}")
            f[p] = e
        self._f = f

    @classmethod
    def from_int(cls, n: int) -> "Supernatural":
        return cls(factorize(n))

    @classmethod
    def one(cls) -> "Supernatural":
        return cls()

    def exponent(self, p: int) -> Exponent:
        return self._f.get(p, 0)

    def primes(self) -> tuple[int, ...]:
        return tuple(sorted(self._f))

    @property
    def is_finite(self) -> bool:
        return all(e != INF for e in self._f.values())

    def to_int(self) -> int:
        if not self.is_finite:
            raise ValueError(f"{self} is not a finite integer")
        n = 1
        for p, e in self._f.items():
            n *= p ** e
        return n

    def __eq__(self, other) -> bool:
        if not isinstance(other, Supernatural):
            return NotImplemented
        return self._f == other._f

    def __hash__(self) -> int:
        return hash(frozenset(self._f.items()))

    def __mul__(self, other) -> "Supernatural":
        if isinstance(other, int):
            other = Supernatural.from_int(other)
        if not isinstance(other, Supernatural):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return format_supernatural(self)

    def __repr__(self) -> str:
        return f"Supernatural({format_supernatural(self)!r})"


ONE = Supernatural.one()


def mul(x: Supernatural, y: Supernatural) -> Supernatural:
    """Product; per-prime exponent addition with INF absorbing."""
    f: dict[int, Exponent] = dict(x._f)
    for p, e in y._f.items():
        old = f.get(p, 0)
        f[p] = INF if (e == INF or old == INF) else old + e
    return Supernatural(f)


def equals(x: Supernatural, y: Supernatural) -> bool:
    return x == y


def divides(x: Supernatural, y: Supernatural) -> bool:
    """Per-prime exponent comparison, n <= INF for every n."""
    return all(e <= y.exponent(p) for p, e in x._f.items())


def from_seq(seq) -> Supernatural:
    """Supernatural of an eventually periodic weight sequence.

    `seq` needs `prefix` and `cycle` attributes (tuples of ints >= 1).  Primes
    dividing the cycle product recur infinitely often and get exponent INF.
    """
    f: dict[int, Exponent] = {}
    for v in seq.prefix:
        for p, e in factorize(v).items():
            if f.get(p, 0) != INF:
                f[p] = f.get(p, 0) + e
    cyc = 1
    for v in seq.cycle:
        cyc *= v
    if seq.cycle and cyc < 2:
        raise ValueError("infinite weight sequence needs cycle product >= 2")
    for p in factorize(cyc):
        f[p] = INF
    return Supernatural(f)


@dataclass(frozen=True)
class SupernaturalPair:
    """Ordered pair (r, s) of supernatural numbers; either may be finite."""

    r: Supernatural
    s: Supernatural

    def __str__(self) -> str:
        return format_pair(self)


@dataclass(frozen=True)
class EquivWitness:
    """Coprime positive integers (a, b) realizing b*r = a*t and a*s = b*u."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError("witness entries must be positive")
        if math.gcd(self.a, self.b) != 1:
            raise ValueError(f"witness ({self.a}, {self.b}) is not coprime")


@dataclass(frozen=True)
class PairVerdict:
    equivalent: bool
    witness: Optional[EquivWitness]
    reason: Optional[str] = None


def pair_equiv(a_pair: SupernaturalPair, b_pair: SupernaturalPair) -> PairVerdict:
    """Decide (r, s) ~ (t, u): equal products and a coprime transfer (a, b).

    Solves per prime for the forced exponent difference; the canonical witness
    takes (alpha_p, beta_p) = (max(-delta_p, 0), max(delta_p, 0)), which is the
    unique minimal one.  Equations touching an infinite exponent hold exactly
    when both sides are infinite.
    """
    r, s = a_pair.r, a_pair.s
    t, u = b_pair.r, b_pair.s
    if mul(r, s) != mul(t, u):
        return PairVerdict(False, None, "component products differ")
    alpha: dict[int, int] = {}
    beta: dict[int, int] = {}
    support = sorted(set(r.primes()) | set(s.primes()) | set(t.primes()) | set(u.primes()))
    for p in support:
        er, es = r.exponent(p), s.exponent(p)
        et, eu = t.exponent(p), u.exponent(p)
        if (er == INF) != (et == INF):
            return PairVerdict(False, None, f"prime {p}: first components disagree at infinity")
        if (es == INF) != (eu == INF):
            return PairVerdict(False, None, f"prime {p}: second components disagree at infinity")
        deltas = []
        if er != INF:
            deltas.append(et - er)
        if es != INF:
            deltas.append(es - eu)
        if len(deltas) == 2 and deltas[0] != deltas[1]:
            # unreachable once the product condition holds; kept as a guard
            return PairVerdict(False, None, f"prime {p}: inconsistent transfer exponents")
        d = deltas[0] if deltas else 0
        if d > 0:
            beta[p] = int(d)
        elif d < 0:
            alpha[p] = int(-d)
    a = b = 1
    for p, e in alpha.items():
        a *= p ** e
    for p, e in beta.items():
        b *= p ** e
    witness = EquivWitness(a, b)
    sa, sb = Supernatural.from_int(a), Supernatural.from_int(b)
    if mul(sb, r) != mul(sa, t) or mul(sa, s) != mul(sb, u):
        raise AssertionError("canonical witness failed re-verification")
    return PairVerdict(True, witness, None)


@dataclass(frozen=True)
class OracleVerdict:
    """`equivalent=False` means inconclusive: no witness within the bound."""

    equivalent: bool
    witness: Optional[EquivWitness]


def smooth_numbers(primes: Iterable[int], bound: int) -> list[int]:
    """All products of the given primes that are <= bound, including 1."""
    nums = [1]
    for p in sorted(set(primes)):
        extra = []
        for n in nums:
            m = n * p
            while m <= bound:
                extra.append(m)
                m *= p
        nums.extend(extra)
    return sorted(nums)


def smooth_coprime_pairs(primes: Iterable[int], bound: int) -> list[tuple[int, int]]:
    nums = smooth_numbers(primes, bound)
    pairs = [(a, b) for a in nums for b in nums if math.gcd(a, b) == 1]
    pairs.sort(key=lambda ab: (max(ab), ab[0] * ab[1], ab))
    return pairs


def pair_equiv_oracle(a_pair: SupernaturalPair, b_pair: SupernaturalPair,
                      bound: int) -> OracleVerdict:
    """Exhaustive witness search over coprime a, b <= bound.

    A coprime witness can only involve primes from the supports of the inputs
    (any other prime would need equal positive exponents in a and b), so the
    candidate set is restricted to those without loss.  Positive answers come
    with a verified witness; negatives are merely inconclusive.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    r, s = a_pair.r, a_pair.s
    t, u = b_pair.r, b_pair.s
    support = set(r.primes()) | set(s.primes()) | set(t.primes()) | set(u.primes())
    for a, b in smooth_coprime_pairs(support, bound):
        sa, sb = Supernatural.from_int(a), Supernatural.from_int(b)
        if mul(sb, r) == mul(sa, t) and mul(sa, s) == mul(sb, u):
            return OracleVerdict(True, EquivWitness(a, b))
    return OracleVerdict(False, None)


def aut_rank(pair: SupernaturalPair) -> int:
    """Number of primes infinite in both components; the automorphism group is Z^rank."""
    return sum(1 for p in pair.r.primes()
               if pair.r.exponent(p) == INF and pair.s.exponent(p) == INF)


# -- textual form used by the command line -----------------------------------

def format_supernatural(x: Supernatural) -> str:
    if not x._f:
        return "1"
    parts = []
    for p in x.primes():
        e = x.exponent(p)
        if e == 1:
            parts.append(str(p))
        elif e == INF:
            parts.append(f"{p}^inf")
        else:
            parts.append(f"{p}^{e}")
    return "*".join(parts)


def parse_supernatural(text: str) -> Supernatural:
    """Parse `*`-separated prime powers, e.g. `2^inf*3`; `1` is the empty product.

    Composite bases are factorized, so `12^2` means `2^4*3^2`.
    """
    t = text.strip()
    if not t:
        raise ValueError("empty supernatural literal")
    if t == "1":
        return ONE
    total = ONE
    for part in t.split("*"):
        part = part.strip()
        if "^" in part:
            base_text, _, exp_text = part.partition("^")
            base = int(base_text)
            exp: Exponent = INF if exp_text.strip() == "inf" else int(exp_text)
        else:
            base = int(part)
            exp = 1
        if base < 2:
            raise ValueError(f"factor base must be >= 2, got {base}")
        if exp != INF and exp < 1:
            raise ValueError(f"factor exponent must be >= 1, got {exp}")
        factors = factorize(base)
        piece = Supernatural({p: (INF if exp == INF else k * exp) for p, k in factors.items()})
        total = mul(total, piece)
    return total


def format_pair(pair: SupernaturalPair) -> str:
    return f"({format_supernatural(pair.r)}, {format_supernatural(pair.s)})"


def parse_pair(text: str) -> SupernaturalPair:
    t = text.strip()
    if not (t.startswith("(") and t.endswith(")")):
        raise ValueError("pair literal must look like (r, s)")
    body = t[1:-1]
    if body.count(",") != 1:
        raise ValueError("pair literal must contain exactly one comma")
    left, right = body.split(",")
    return SupernaturalPair(parse_supernatural(left), parse_supernatural(right))
