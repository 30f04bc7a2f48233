"""Ranking-based argumentation over propositional knowledge bases.

Knowledge bases become assumption-based frameworks (strict premises plus
defeasible assumptions) or conclusion-support argument graphs; the
categoriser ranks the resulting arguments, and the rankings are turned
into culpability measures and checked against structural postulates.
"""

from .abf import ABF, AbstractAF, NodePolicy, attacks, build_attack_diagram, subset_label, validate_abf
from .culpability import CulpabilityReport, culp_c, culp_d, culp_star, culpability, induced_culpability
from .entailment import entails, equiv_under, is_consistent
from .errors import (
    ABFValidationError,
    AtomLimitExceeded,
    FormulaSyntaxError,
    KBFileError,
    NoConvergence,
    RankargError,
    SizeLimitExceeded,
    UnknownSemantics,
)
from .formula import (
    FALSITY,
    TRUTH,
    And,
    Atom,
    Falsity,
    Formula,
    Iff,
    Imp,
    Neg,
    Or,
    Truth,
    conjoin,
    formula_order,
    parse_formula,
    render,
)
from .gradual import Ranking, best_score, categoriser, group_compare
from .kb import enumerate_mcs, enumerate_mic, free_formulas
from .kbfile import KBFile, parse_kb, read_kb
from .postulates import GeneratorParams, PostulateVerdict, check_instance, random_abf, run_suite
from .sequent import (
    Filters,
    Rule,
    SequentArgument,
    build_arguments,
    build_sequent_af,
    canonical_pool,
    rule_attacks,
    sequent_postulate_suite,
)

__version__ = "0.1.0"
