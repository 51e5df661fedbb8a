"""Brute-force cross-checks: finite enumerations, interval arithmetic on explicit
coordinate models, randomized generators, and a seeded verification suite.

The oracle side never reuses the main-path computation of a quantity it
checks: measures are counted over enumerated tuples, isomorphism of finite
relations goes through canonical labeling, and interval finiteness is decided
straight from the atom shapes.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .algebra import (
    Digraph,
    chain_digraph,
    embed,
    is_total,
    matrix_units,
    multi_index_rank,
    star_product,
    unit_product,
    units_digraph,
)
from .autos import act, measured_constant, rank_supported_primes, recoding_plan
from .classify import RegimeError, Verdict, classify
from .condense import (
    DenseBlock,
    FINITE,
    OMEGA,
    OMEGA_STAR,
    SingleBlock,
    ZETA,
    condense,
    merged_atoms,
    single_class_coordinates,
)
from .orderdsl import (
    ChainColor,
    EtaAtom,
    FinChain,
    OmegaAtom,
    OmegaStarAtom,
    OrderTerm,
    PosetColor,
    ValueSeq,
    ZetaAtom,
    format_term,
    normalize,
    parse_term,
)
from .posets import FinPoset, canonical_form, chain, is_connected
from .space import (
    AllMax,
    AllOnes,
    Cylinder,
    Lex,
    Periodic,
    Point,
    coords_for,
    cylinder_measure,
    closed_orbit_measure,
    d_value,
    gap_partner,
    lex_compare,
    NoPartnerError,
    random_point,
)
from .supernat import (
    INF,
    EquivWitness,
    Supernatural,
    SupernaturalPair,
    aut_rank,
    mul,
    pair_equiv,
    pair_equiv_oracle,
)

MAX_ENUMERATION = 100_000


class SizeBoundError(ValueError):
    pass


# -- finite relations -----------------------------------------------------------

@dataclass(frozen=True)
class FiniteRelation:
    """Reflexive, transitive, antisymmetric relation on 1..n."""

    n: int
    pairs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(tuple(e) for e in self.pairs))
        for v in range(1, self.n + 1):
            if (v, v) not in self.pairs:
                raise ValueError(f"missing diagonal at {v}")
        for (i, j) in self.pairs:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"pair ({i}, {j}) out of range")
            if i != j and (j, i) in self.pairs:
                raise ValueError(f"antisymmetry violated at ({i}, {j})")
        if self.n <= 64:  # full transitivity check only at small sizes
            for (i, j) in self.pairs:
                for (k, l) in self.pairs:
                    if j == k and (i, l) not in self.pairs:
                        raise ValueError("transitivity violated")


def enumerate_points(weights) -> list:
    """All tuples of the finite product, in lexicographic order."""
    n = 1
    for w in weights:
        n *= w
    if n > MAX_ENUMERATION:
        raise SizeBoundError(f"enumeration of {n} tuples exceeds {MAX_ENUMERATION}")
    return list(itertools.product(*[range(1, w + 1) for w in weights]))


def build_relation(weights) -> FiniteRelation:
    """Lexicographic order on the enumerated tuples, as an explicit relation."""
    pts = enumerate_points(weights)
    n = len(pts)
    pairs = frozenset((i, j) for i in range(1, n + 1) for j in range(i, n + 1))
    return FiniteRelation(n, pairs)


def _is_total_relation(r: FiniteRelation) -> bool:
    return len(r.pairs) == r.n * (r.n + 1) // 2


def relation_iso(r1: FiniteRelation, r2: FiniteRelation) -> bool:
    """Ground-truth isomorphism: cardinality for total orders, canonical
    labeling (vertex bound 10) for anything else."""
    if r1.n != r2.n:
        return False
    t1, t2 = _is_total_relation(r1), _is_total_relation(r2)
    if t1 or t2:
        return t1 and t2
    if r1.n > 10:
        raise SizeBoundError("general relation isomorphism limited to 10 points")
    p1 = FinPoset(r1.n, [e for e in r1.pairs if e[0] != e[1]])
    p2 = FinPoset(r2.n, [e for e in r2.pairs if e[0] != e[1]])
    return canonical_form(p1) == canonical_form(p2)


def digraph_to_relation(d: Digraph) -> FiniteRelation:
    return FiniteRelation(d.n, d.edges)


# -- symbolic interval finiteness on explicit coordinate models ------------------

def _final_segment_finite(atom) -> bool:
    if isinstance(atom, (FinChain, OmegaStarAtom)):
        return True
    return False


def _initial_segment_finite(atom) -> bool:
    if isinstance(atom, (FinChain, OmegaAtom)):
        return True
    return False


def _atom_finite(atom) -> bool:
    return isinstance(atom, FinChain)


def interval_is_finite(term: OrderTerm, lo, hi) -> bool:
    """Finiteness of the order interval between two addressed elements.

    Addresses are (atom_index, position) into the term's own atoms, `lo` not
    after `hi`; eta positions are arbitrary labels compared only for equality.
    """
    (ia, pa), (ib, pb) = lo, hi
    atoms = term.atoms
    if ia == ib:
        if isinstance(atoms[ia], EtaAtom):
            return pa == pb
        return True  # intervals inside fin, omega, omega* and zeta are finite
    if ia > ib:
        raise ValueError("addresses out of order")
    if not _final_segment_finite(atoms[ia]):
        return False
    if not _initial_segment_finite(atoms[ib]):
        return False
    return all(_atom_finite(atoms[m]) for m in range(ia + 1, ib))


# -- randomized generators -------------------------------------------------------

_WEIGHTS = (1, 2, 3, 4, 5)


def random_value_seq(rng, infinite=True, values=_WEIGHTS, max_len=3) -> ValueSeq:
    prefix = tuple(rng.choice(values) for _ in range(rng.randrange(0, max_len + 1)))
    cycle = ()
    if infinite:
        cycle = tuple(rng.choice(values) for _ in range(rng.randrange(1, max_len + 1)))
    return ValueSeq(prefix, cycle)


def random_poset(rng, n: int, connected=False) -> FinPoset:
    for _ in range(100):
        pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)
                 if rng.random() < 0.45]
        p = FinPoset(n, pairs)
        if not connected or is_connected(p):
            return p
    return chain(n)


def relabel_poset(p: FinPoset, perm: dict) -> FinPoset:
    return FinPoset(p.n, [(perm[i], perm[j]) for i, j in p.strict])


def random_digraph(rng, n: int) -> Digraph:
    labels = list(range(1, n + 1))
    rng.shuffle(labels)
    pairs = [(labels[i - 1], labels[j - 1]) for i in range(1, n + 1)
             for j in range(i + 1, n + 1) if rng.random() < 0.4]
    strict = FinPoset(n, pairs).strict
    return Digraph(n, frozenset(strict) | frozenset((v, v) for v in range(1, n + 1)))


def random_color(rng, poset_ok=False):
    if poset_ok and rng.random() < 0.4:
        return PosetColor(random_poset(rng, rng.randrange(2, 5), connected=True))
    return ChainColor(rng.randrange(1, 6))


def random_atom(rng, kind: str):
    if kind == "fin":
        return FinChain(tuple(rng.choice(_WEIGHTS) for _ in range(rng.randrange(0, 4))))
    if kind == "omega":
        return OmegaAtom(random_value_seq(rng))
    if kind == "omega*":
        return OmegaStarAtom(random_value_seq(rng))
    if kind == "zeta":
        return ZetaAtom(random_value_seq(rng), random_value_seq(rng))
    if kind == "eta":
        return EtaAtom(frozenset(random_color(rng) for _ in range(rng.randrange(1, 4))))
    raise ValueError(kind)


def random_term(rng, max_atoms=4) -> OrderTerm:
    if rng.random() < 0.15:
        colors = frozenset(random_color(rng, poset_ok=True) for _ in range(rng.randrange(1, 4)))
        return OrderTerm((EtaAtom(colors),))
    kinds = ["fin", "omega", "omega*", "zeta", "eta"]
    atoms = tuple(random_atom(rng, rng.choice(kinds))
                  for _ in range(rng.randrange(1, max_atoms + 1)))
    return OrderTerm(atoms)


def random_discrete_term(rng, kinds=("zeta", "omega", "omega*", "fin")) -> OrderTerm:
    """One-class terms with weights >= 2; the domain of the point model."""

    def seq(infinite=True):
        prefix = tuple(rng.randrange(2, 6) for _ in range(rng.randrange(0, 3)))
        cycle = tuple(rng.randrange(2, 6) for _ in range(rng.randrange(1, 3)))
        return ValueSeq(prefix, cycle if infinite else ())

    kind = rng.choice(kinds)
    if kind == "zeta":
        return OrderTerm((ZetaAtom(seq(), seq()),))
    if kind == "omega":
        return OrderTerm((OmegaAtom(seq()),))
    if kind == "omega*":
        return OrderTerm((OmegaStarAtom(seq()),))
    return OrderTerm((FinChain(tuple(rng.randrange(2, 5) for _ in range(rng.randrange(1, 4)))),))


def random_supernatural(rng, primes=(2, 3, 5), exps=(0, 1, 2, INF)) -> Supernatural:
    factors = {}
    for p in primes:
        e = rng.choice(exps)
        if e != 0:
            factors[p] = e
    return Supernatural(factors)


def random_pair(rng, primes=(2, 3, 5), exps=(0, 1, 2, INF)) -> SupernaturalPair:
    return SupernaturalPair(random_supernatural(rng, primes, exps),
                            random_supernatural(rng, primes, exps))


def equivalent_pair_variants(rng, primes=(2, 3, 5)) -> tuple:
    """A pair of provably equivalent pairs: (a r, b s) ~ (b r, a s) for coprime a, b."""
    base = random_pair(rng, primes)
    p, q = rng.sample(primes, 2)
    a = p ** rng.randrange(0, 3)
    b = q ** rng.randrange(0, 3)
    sa, sb = Supernatural.from_int(a), Supernatural.from_int(b)
    first = SupernaturalPair(mul(sa, base.r), mul(sb, base.s))
    second = SupernaturalPair(mul(sb, base.r), mul(sa, base.s))
    return first, second


# -- certificate re-verification --------------------------------------------------

def verify_classification(term_a: OrderTerm, term_b: OrderTerm, verdict: Verdict,
                          negative_bound: int = 60) -> bool:
    """Re-check a classification verdict from its certificate.

    Positive verdicts are verified exactly: every cited witness must satisfy
    both supernatural equalities, every dense matching must biject the color
    sets.  Negative verdicts are checked for consistency: the cited block must
    exist and the bounded witness search must come up empty there.
    """
    sig_a, sig_b = condense(term_a), condense(term_b)
    if sig_a != verdict.signature_a or sig_b != verdict.signature_b:
        return False
    if verdict.isomorphic:
        if len(sig_a.blocks) != len(sig_b.blocks):
            return False
        if verdict.matches is None or len(verdict.matches) != len(sig_a.blocks):
            return False
        for i, (a, b) in enumerate(zip(sig_a.blocks, sig_b.blocks)):
            m = verdict.matches[i]
            if isinstance(a, SingleBlock) and isinstance(b, SingleBlock):
                w = m.witness
                if w is None:
                    return False
                sa, sb = Supernatural.from_int(w.a), Supernatural.from_int(w.b)
                if mul(sb, a.cls.pair.r) != mul(sa, b.cls.pair.r):
                    return False
                if mul(sa, a.cls.pair.s) != mul(sb, b.cls.pair.s):
                    return False
                if mul(a.cls.pair.r, a.cls.pair.s) != mul(b.cls.pair.r, b.cls.pair.s):
                    return False
            elif isinstance(a, DenseBlock) and isinstance(b, DenseBlock):
                if m.colors is None:
                    return False
                if {c for c, _ in m.colors} != set(a.colors):
                    return False
                if {c for _, c in m.colors} != set(b.colors):
                    return False
            else:
                return False
        return True
    mm = verdict.mismatch
    if mm is None:
        return False
    shorter = min(len(sig_a.blocks), len(sig_b.blocks))
    if mm.index == shorter and len(sig_a.blocks) != len(sig_b.blocks):
        return True
    if mm.index >= shorter:
        return False
    a, b = sig_a.blocks[mm.index], sig_b.blocks[mm.index]
    if isinstance(a, SingleBlock) != isinstance(b, SingleBlock):
        return True
    if isinstance(a, SingleBlock):
        return not pair_equiv_oracle(a.cls.pair, b.cls.pair, negative_bound).equivalent
    return a.colors != b.colors


# -- the seeded verification suite -------------------------------------------------

@dataclass
class CaseResult:
    name: str
    checks: int
    failures: list

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class SuiteReport:
    seed: int
    results: list

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failure_count(self) -> int:
        return sum(len(r.failures) for r in self.results)

    def render(self) -> str:
        lines = []
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            lines.append(f"[{status}] {r.name} ({r.checks} checks)")
            for f in r.failures:
                lines.append(f"    {f}")
        total = sum(r.checks for r in self.results)
        verdict = "all checks passed" if self.passed else f"{self.failure_count} failure(s)"
        lines.append(f"seed {self.seed}: {len(self.results)} cases, {total} checks, {verdict}")
        return "\n".join(lines)

    def summary(self) -> dict:
        return {
            "seed": self.seed,
            "passed": self.passed,
            "cases": [{"name": r.name, "checks": r.checks, "failures": list(r.failures)}
                      for r in self.results],
        }


class _Checker:
    def __init__(self):
        self.count = 0
        self.failures: list = []

    def check(self, cond: bool, message: str):
        self.count += 1
        if not cond and len(self.failures) < 5:
            self.failures.append(message)


@dataclass
class SuiteContext:
    """Injectable implementations; tests corrupt these to validate the harness."""

    pair_equiv: Callable = pair_equiv


def _case_pair_equiv_equivalence(rng, ck, ctx):
    for _ in range(120):
        a = random_pair(rng)
        ck.check(ctx.pair_equiv(a, a).equivalent, f"not reflexive on {a}")
        b = random_pair(rng)
        ab, ba = ctx.pair_equiv(a, b), ctx.pair_equiv(b, a)
        ck.check(ab.equivalent == ba.equivalent, f"not symmetric on {a}, {b}")
        first, second = equivalent_pair_variants(rng)
        third, _ = equivalent_pair_variants(rng)
        if ctx.pair_equiv(first, third).equivalent:
            ck.check(ctx.pair_equiv(second, third).equivalent,
                     f"transitivity failed on {first}, {second}, {third}")


def _case_pair_equiv_products(rng, ck, ctx):
    for _ in range(250):
        if rng.random() < 0.5:
            a, b = equivalent_pair_variants(rng)
        else:
            a, b = random_pair(rng), random_pair(rng)
        v = ctx.pair_equiv(a, b)
        if not v.equivalent:
            ck.check(v.witness is None, f"negative verdict with witness on {a}, {b}")
            continue
        ck.check(mul(a.r, a.s) == mul(b.r, b.s), f"product condition broken on {a}, {b}")
        w = v.witness
        sa, sb = Supernatural.from_int(w.a), Supernatural.from_int(w.b)
        ck.check(mul(sb, a.r) == mul(sa, b.r) and mul(sa, a.s) == mul(sb, b.s),
                 f"witness {w} does not verify on {a}, {b}")


def _case_pair_equiv_vs_oracle(rng, ck, ctx):
    for _ in range(120):
        if rng.random() < 0.5:
            a, b = equivalent_pair_variants(rng)
        else:
            a, b = random_pair(rng), random_pair(rng)
        main = ctx.pair_equiv(a, b)
        probe = pair_equiv_oracle(a, b, 1000)
        if probe.equivalent:
            ck.check(main.equivalent, f"oracle found a witness the decision missed on {a}, {b}")
        if main.equivalent:
            ck.check(probe.equivalent, f"decision is positive but the search found nothing on {a}, {b}")


def _case_finite_pairs(rng, ck, ctx):
    pairs = [(r, s) for r in range(1, 61) for s in range(1, 61) if r * s <= 60]
    sn = {n: Supernatural.from_int(n) for n in range(1, 61)}
    for (r, s) in pairs:
        for (t, u) in pairs:
            a = SupernaturalPair(sn[r], sn[s])
            b = SupernaturalPair(sn[t], sn[u])
            ck.check(ctx.pair_equiv(a, b).equivalent == (r * s == t * u),
                     f"finite rule broken on ({r},{s}) vs ({t},{u})")


def _case_aut_rank_invariant(rng, ck, ctx):
    for _ in range(120):
        a, b = equivalent_pair_variants(rng)
        ck.check(aut_rank(a) == aut_rank(b), f"rank differs on equivalent {a}, {b}")


def _case_parser_roundtrip(rng, ck, ctx):
    for _ in range(300):
        t = random_term(rng)
        text = format_term(t)
        ck.check(parse_term(text) == t, f"round trip failed on {text}")
        ck.check(format_term(parse_term(text)) == text, f"printing unstable on {text}")


def _case_normalize_invariance(rng, ck, ctx):
    for _ in range(150):
        t = random_term(rng)
        n = normalize(t)
        ck.check(normalize(n) == n, f"normalize not idempotent on {format_term(t)}")
        ck.check(classify(t, n).isomorphic,
                 f"term and its normalization classify apart: {format_term(t)}")


_KINDS = ("fin", "omega", "omega*", "zeta", "eta")


def _sample_normalized_atom(rng, kind: str):
    def seq():
        prefix = tuple(rng.randrange(2, 5) for _ in range(rng.randrange(0, 2)))
        return ValueSeq(prefix, (rng.randrange(2, 5),))

    if kind == "fin":
        return FinChain(tuple(rng.randrange(2, 5) for _ in range(rng.randrange(1, 3))))
    if kind == "omega":
        return OmegaAtom(seq())
    if kind == "omega*":
        return OmegaStarAtom(seq())
    if kind == "zeta":
        return ZetaAtom(seq(), seq())
    return EtaAtom(frozenset({ChainColor(rng.randrange(2, 5))}))


_BOUNDARY_POS = {
    "fin": (0, 0), "omega": (5, 0), "omega*": (-1, -4),
    "zeta": (3, -3), "eta": (Fraction(1, 2), Fraction(1, 3)),
}


def _case_merge_table(rng, ck, ctx):
    for kind_a in _KINDS:
        for kind_b in _KINDS:
            for _ in range(4):
                term = OrderTerm((_sample_normalized_atom(rng, kind_a),
                                  _sample_normalized_atom(rng, kind_b)))
                groups = merged_atoms(term)
                merged = any(set(idx) >= {0, 1} for _, idx in groups)
                pa = _BOUNDARY_POS[kind_a][0]
                pb = _BOUNDARY_POS[kind_b][1]
                expected = interval_is_finite(term, (0, pa), (1, pb))
                ck.check(merged == expected,
                         f"{kind_a}+{kind_b}: merged={merged} but interval finite={expected}")


def _case_signature_sanity(rng, ck, ctx):
    for _ in range(150):
        sig = condense(random_term(rng))
        ck.count += 1
        for i in range(len(sig.blocks) - 1):
            a, b = sig.blocks[i], sig.blocks[i + 1]
            if isinstance(a, SingleBlock) and isinstance(b, SingleBlock):
                bad = a.cls.kind in (FINITE, OMEGA_STAR) and b.cls.kind in (FINITE, OMEGA)
                ck.check(not bad, f"unmerged adjacency {a.cls.kind}|{b.cls.kind}")


def _case_rewrite_invariance(rng, ck, ctx):
    for _ in range(100):
        prefix = tuple(rng.randrange(2, 5) for _ in range(rng.randrange(0, 3)))
        cycle = tuple(rng.randrange(2, 5) for _ in range(rng.randrange(1, 3)))
        t1 = OrderTerm((OmegaAtom(ValueSeq(prefix, cycle)),))
        rotated = OrderTerm((OmegaAtom(ValueSeq(prefix + (cycle[0],), cycle[1:] + (cycle[0],))),))
        ck.check(classify(t1, rotated).isomorphic, f"cycle rotation changed {format_term(t1)}")
        appended = OrderTerm((OmegaAtom(ValueSeq(prefix + cycle, cycle)),))
        ck.check(classify(t1, appended).isomorphic, f"cycle unrolling changed {format_term(t1)}")
        a, b = rng.randrange(2, 5), rng.randrange(2, 5)
        ck.check(classify(OrderTerm((FinChain((a, b)),)),
                          OrderTerm((FinChain((a,)), FinChain((b,))))).isomorphic,
                 f"finite split changed fin[{a},{b}]")
        v = rng.randrange(2, 5)
        left = random_value_seq(rng, values=(2, 3, 4), max_len=2)
        right = random_value_seq(rng, values=(2, 3, 4), max_len=2)
        z1 = OrderTerm((ZetaAtom(ValueSeq((v,) + left.prefix, left.cycle), right),))
        z2 = OrderTerm((ZetaAtom(left, ValueSeq((v,) + right.prefix, right.cycle)),))
        ck.check(classify(z1, z2).isomorphic, f"origin transfer changed {format_term(z1)}")


def _case_certificates(rng, ck, ctx):
    for _ in range(100):
        a, b = random_term(rng), random_term(rng)
        try:
            verdict = classify(a, b)
        except RegimeError:
            continue
        ck.check(verify_classification(a, b, verdict),
                 f"certificate failed for {format_term(a)} vs {format_term(b)}")


def _case_cylinder_additivity(rng, ck, ctx):
    for _ in range(100):
        term = random_discrete_term(rng, kinds=("zeta", "omega"))
        c = coords_for(term)
        positions = rng.sample(range(1, 7), rng.randrange(0, 3))
        constraints = {k: rng.randrange(1, c.right_weight(k) + 1) for k in positions}
        parent = cylinder_measure(term, Cylinder(constraints))
        fresh = max(positions, default=0) + rng.randrange(1, 3)
        total = Fraction(0)
        for v in range(1, c.right_weight(fresh) + 1):
            child = dict(constraints)
            child[fresh] = v
            total += cylinder_measure(term, Cylinder(child))
        ck.check(total == parent, f"additivity broken on {format_term(term)} at {fresh}")


def _case_cylinder_counting(rng, ck, ctx):
    for _ in range(60):
        term = random_discrete_term(rng, kinds=("zeta", "omega"))
        c = coords_for(term)
        has_left = c.has_left
        constraints = {}
        for _ in range(rng.randrange(0, 3)):
            pos = rng.randrange(1, 5)
            if has_left and rng.random() < 0.4:
                pos = -pos
            constraints[pos] = rng.randrange(1, c.weight(pos) + 1)
        right_depth = max([4] + [p for p in constraints if p > 0])
        left_depth = max([2] + [-p for p in constraints if p < 0]) if has_left else 0
        window = ([-k for k in range(left_depth, 0, -1)] +
                  [k for k in range(1, right_depth + 1)])
        weights = [c.weight(p) for p in window]
        matching = 0
        for tup in itertools.product(*[range(1, w + 1) for w in weights]):
            if all(tup[window.index(p)] == v for p, v in constraints.items()):
                matching += 1
        n_f = 1
        for w in weights:
            n_f *= w
        ck.check(cylinder_measure(term, Cylinder(constraints)) == Fraction(matching, n_f),
                 f"cylinder measure disagrees with counting on {format_term(term)}")


def _case_d_monotone(rng, ck, ctx):
    terms = [random_discrete_term(rng) for _ in range(10)]
    for _ in range(1000):
        term = rng.choice(terms)
        x, y = random_point(term, rng), random_point(term, rng)
        order = lex_compare(x, y)
        dx, dy = d_value(x), d_value(y)
        if order is Lex.LESS:
            ck.check(dx <= dy, f"rank not monotone on {format_term(term)}")
            if dx == dy:
                try:
                    partner = gap_partner(x)
                except NoPartnerError:
                    ck.check(False, f"rank tie without a gap partner on {format_term(term)}")
                    continue
                ck.check(partner == y, f"rank tie is not the gap pair on {format_term(term)}")
        elif order is Lex.EQUAL:
            ck.check(dx == dy, "equal points with different ranks")


def _case_gap_involution(rng, ck, ctx):
    for _ in range(100):
        term = random_discrete_term(rng, kinds=("zeta", "omega"))
        x = random_point(term, rng, tails=("ones", "max"))
        try:
            y = gap_partner(x)
        except NoPartnerError:
            dx = d_value(x)
            extreme = dx == 0 or (not coords_for(term).has_left and dx == 1)
            ck.check(extreme, f"partnerless point with interior rank on {format_term(term)}")
            continue
        ck.check(d_value(y) == d_value(x), f"gap pair ranks differ on {format_term(term)}")
        ck.check(gap_partner(y) == x, f"gap partner not involutive on {format_term(term)}")


def _case_orbit_measure_counting(rng, ck, ctx):
    for _ in range(100):
        term = random_discrete_term(rng, kinds=("omega", "zeta"))
        c = coords_for(term)
        x = random_point(term, rng, tails=("ones", "max"))
        if x.left_exceptions:
            x = Point(term, (), x.right_prefix, x.right_tail)
        depth = max(len(x.right_prefix), 1) + rng.randrange(0, 2)
        weights = [c.right_weight(k) for k in range(1, depth + 1)]
        word = tuple(x.coord(k) for k in range(1, depth + 1))
        below = sum(1 for w in itertools.product(*[range(1, v + 1) for v in weights]) if w < word)
        closed = 1 if isinstance(x.right_tail, AllMax) else 0
        n_f = 1
        for v in weights:
            n_f *= v
        ck.check(closed_orbit_measure(x) == Fraction(below + closed, n_f),
                 f"orbit measure disagrees with counting on {format_term(term)}")


def _case_d_truncation(rng, ck, ctx):
    for _ in range(50):
        term = random_discrete_term(rng, kinds=("omega", "zeta"))
        x = random_point(term, rng, tails=("cycle",))
        if not isinstance(x.right_tail, Periodic):
            continue
        c = coords_for(term)
        n0 = len(x.right_prefix)
        length = len(x.right_tail.values)
        exact = d_value(x)
        left_part = d_value(Point(term, x.left_exceptions, (), AllOnes()))
        for periods in range(1, 5):
            partial = left_part
            denom = 1
            for k in range(1, n0 + periods * length + 1):
                denom *= c.right_weight(k)
                partial += Fraction(x.coord(k) - 1, denom)
            prefix_prod = 1
            for k in range(1, n0 + 1):
                prefix_prod *= c.right_weight(k)
            period_prod = 1
            for j in range(1, length + 1):
                period_prod *= c.right_weight(n0 + j)
            bound = Fraction(1, prefix_prod * period_prod ** periods)
            ck.check(abs(exact - partial) <= bound,
                     f"truncation bound broken on {format_term(term)}")


_PLAN_TERMS = (
    "zeta([](2)^w;[](2)^w)",
    "zeta([](2,3)^w;[](2,3)^w)",
)


def _case_act_order(rng, ck, ctx):
    for text, p in (( _PLAN_TERMS[0], 2), (_PLAN_TERMS[1], 2), (_PLAN_TERMS[1], 3)):
        term = parse_term(text)
        plan = recoding_plan(term, p)
        for _ in range(50):
            x, y = random_point(term, rng), random_point(term, rng)
            order = lex_compare(x, y)
            if order is Lex.NO_FIRST_DIFFERENCE:
                continue
            image_order = lex_compare(act(plan, x), act(plan, y))
            ck.check(image_order == order,
                     f"p={p}: order {order} became {image_order} on {text}")


def _case_act_scaling(rng, ck, ctx):
    for text, p in ((_PLAN_TERMS[0], 2), (_PLAN_TERMS[1], 2), (_PLAN_TERMS[1], 3)):
        term = parse_term(text)
        plan = recoding_plan(term, p)
        seen = []
        for _ in range(60):
            x = random_point(term, rng)
            y = act(plan, x)
            ck.check(d_value(y) == d_value(x) / p, f"rank not scaled by 1/{p} on {text}")
            for prev_x, prev_y in seen:
                ck.check(not (x != prev_x and y == prev_y), f"action not injective on {text}")
            seen.append((x, y))
        for k in (1, 2, 3):
            const = measured_constant(plan, 25, seed=rng.randrange(10**6), iterations=k)
            ck.check(const.c == Fraction(1, p ** k),
                     f"iterated constant is {const.c}, wanted {p}^-{k} on {text}")


def _case_rank_vs_recoding(rng, ck, ctx):
    for _ in range(50):
        term = random_discrete_term(rng, kinds=("zeta",))
        sig = condense(term)
        pair = sig.blocks[0].cls.pair
        ck.check(aut_rank(pair) == len(rank_supported_primes(term)),
                 f"rank and recoding disagree on {format_term(term)}")


def _case_finite_ground_truth(rng, ck, ctx):
    tuples = [t for k in (1, 2, 3) for t in itertools.product((2, 3, 4), repeat=k)]
    tuples = [t for t in tuples if chain_product(t) <= 24]
    relations = {t: build_relation(t) for t in tuples}
    for ta in tuples:
        for tb in tuples:
            verdict = classify(OrderTerm((FinChain(ta),)), OrderTerm((FinChain(tb),)))
            ck.check(verdict.isomorphic == relation_iso(relations[ta], relations[tb]),
                     f"classifier and relations disagree on {ta} vs {tb}")


def chain_product(t) -> int:
    n = 1
    for v in t:
        n *= v
    return n


def _case_embedding_laws(rng, ck, ctx):
    for _ in range(12):
        h = tuple(rng.choice((2, 3, 4)) for _ in range(rng.randrange(2, 4)))
        while chain_product(h) > 24:
            h = tuple(rng.choice((2, 3, 4)) for _ in range(rng.randrange(2, 4)))
        g_positions = sorted(rng.sample(range(len(h)), rng.randrange(1, len(h) + 1)))
        g = tuple(h[q] for q in g_positions)
        f_positions_in_g = sorted(rng.sample(range(len(g)), rng.randrange(1, len(g) + 1)))
        f = tuple(g[q] for q in f_positions_in_g)
        units = matrix_units(f)
        for u in units:
            for v in units:
                lhs = set()
                for iu in embed(f, g, u, at=f_positions_in_g):
                    for iv in embed(f, g, v, at=f_positions_in_g):
                        prod = unit_product(iu, iv)
                        if prod is not None:
                            lhs.add(prod)
                direct = unit_product(u, v)
                rhs = set() if direct is None else set(embed(f, g, direct, at=f_positions_in_g))
                ck.check(lhs == rhs, f"multiplicativity broken for {u} {v} in {f}->{g}")
        f_in_h = tuple(g_positions[q] for q in f_positions_in_g)
        for u in units:
            direct = set(embed(f, h, u, at=f_in_h))
            composed = set()
            for mid in embed(f, g, u, at=f_positions_in_g):
                composed |= set(embed(g, h, mid, at=g_positions))
            ck.check(direct == composed, f"composition broken for {u} in {f}->{g}->{h}")


def _case_star_laws(rng, ck, ctx):
    for _ in range(200):
        a = random_digraph(rng, rng.randrange(1, 5))
        b = random_digraph(rng, rng.randrange(1, 5))
        c = random_digraph(rng, rng.randrange(1, 5))
        left = star_product(star_product(a, b), c)
        right = star_product(a, star_product(b, c))
        ck.check(left == right, "star product not associative")
    for m in range(1, 5):
        for n in range(1, 5):
            prod = star_product(chain_digraph(m), chain_digraph(n))
            ck.check(relation_iso(digraph_to_relation(prod),
                                  build_relation((m * n,))),
                     f"T{m} * T{n} is not the total order on {m*n}")
    ck.check(star_product(chain_digraph(1), chain_digraph(3)) == chain_digraph(3),
             "T1 is not a left unit")


def _case_units_vs_star(rng, ck, ctx):
    for _ in range(20):
        f = tuple(rng.choice((2, 3, 4)) for _ in range(rng.randrange(1, 4)))
        if chain_product(f) > 24:
            continue
        iterated = chain_digraph(f[0])
        for w in f[1:]:
            iterated = star_product(iterated, chain_digraph(w))
        ck.check(units_digraph(f) == iterated,
                 f"unit digraph of {f} differs from the iterated product")
        ck.check(relation_iso(digraph_to_relation(iterated), build_relation(f)),
                 f"iterated product of {f} differs from the built relation")


_SUITE_CASES = {
    "pair-equiv-equivalence": _case_pair_equiv_equivalence,
    "pair-equiv-products": _case_pair_equiv_products,
    "pair-equiv-vs-oracle": _case_pair_equiv_vs_oracle,
    "finite-pairs-product-rule": _case_finite_pairs,
    "aut-rank-invariant": _case_aut_rank_invariant,
    "parser-roundtrip": _case_parser_roundtrip,
    "normalize-invariance": _case_normalize_invariance,
    "merge-table": _case_merge_table,
    "signature-sanity": _case_signature_sanity,
    "rewrite-invariance": _case_rewrite_invariance,
    "certificates": _case_certificates,
    "cylinder-additivity": _case_cylinder_additivity,
    "cylinder-counting": _case_cylinder_counting,
    "d-monotone": _case_d_monotone,
    "gap-involution": _case_gap_involution,
    "orbit-measure-counting": _case_orbit_measure_counting,
    "d-truncation": _case_d_truncation,
    "act-order": _case_act_order,
    "act-scaling": _case_act_scaling,
    "rank-vs-recoding": _case_rank_vs_recoding,
    "finite-ground-truth": _case_finite_ground_truth,
    "embedding-laws": _case_embedding_laws,
    "star-laws": _case_star_laws,
    "units-vs-star": _case_units_vs_star,
}


def suite_case_names() -> list:
    return list(_SUITE_CASES)


def run_suite(seed: int = 0, cases=None, ctx: Optional[SuiteContext] = None) -> SuiteReport:
    """Run the cross-module checks with seeded randomness; deterministic report."""
    ctx = ctx or SuiteContext()
    names = list(_SUITE_CASES) if cases is None else list(cases)
    results = []
    for name in names:
        if name not in _SUITE_CASES:
            raise ValueError(f"unknown suite case {name!r}")
        rng = random.Random(f"{seed}:{name}")
        ck = _Checker()
        _SUITE_CASES[name](rng, ck, ctx)
        results.append(CaseResult(name, ck.count, ck.failures))
    return SuiteReport(seed, results)
