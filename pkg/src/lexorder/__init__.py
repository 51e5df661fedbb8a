"""Symbolic classification of lexicographic semigroupoids over weighted countable
linear orders: supernatural-number invariants, a term language with condensation,
an isomorphism decision with checkable certificates, exact point/measure
computations, recoding automorphisms, matrix-unit combinatorics, and brute-force
verification oracles."""

from .supernat import (
    INF,
    EquivWitness,
    Supernatural,
    SupernaturalPair,
    aut_rank,
    divides,
    equals,
    from_seq,
    mul,
    pair_equiv,
    pair_equiv_oracle,
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
from .posets import FinPoset, canonical_form, is_connected, isomorphic
from .condense import (
    ClassificationSignature,
    CondensationClass,
    DenseBlock,
    SingleBlock,
    class_invariant,
    condense,
    format_signature,
    normalize_signature,
)
from .classify import RegimeError, Verdict, classify
from .space import (
    AllMax,
    AllOnes,
    Cylinder,
    Lex,
    Periodic,
    Point,
    closed_orbit_contains,
    closed_orbit_measure,
    cylinder_measure,
    d_value,
    gap_partner,
    lex_compare,
)
from .autos import RecodingPlan, act, identity_plan, measured_constant, recoding_plan
from .algebra import Digraph, MultiIndexUnit, chain_digraph, embed, matrix_units, star_product
from .oracle import (
    FiniteRelation,
    build_relation,
    enumerate_points,
    relation_iso,
    run_suite,
    verify_classification,
)

__version__ = "0.1.0"
