"""factorlab: factorization invariants of finitely presented monoids.

Computes length sets, distance sets, elasticities, and unions of length
sets by bounded breadth-first exploration of elementary rewrite
transitions, plus structural probes (group-embedding eligibility,
one-relation classification, normalizing swap tables) and an empirical
verifier for the sandwich structure of unions. All results carry explicit
exactness flags; truncated explorations never masquerade as complete.
"""

from .corpus import (
    CheckResult,
    CheckStatus,
    CorpusEntry,
    SuiteReport,
    brute_force_class,
    corpus_entries,
    run_oracle_suite,
)
from .invariants import (
    AcceptedStatus,
    DistanceSet,
    Elasticity,
    LengthSet,
    SystemElasticityReport,
    TrendFit,
    UnionsEntry,
    UnionsProfile,
    WitnessConstructionError,
    WitnessVerificationError,
    distance_set,
    elasticity_of,
    full_elasticity_witness,
    length_set,
    reduced_alphabet,
    system_elasticity,
    unions_profile,
)
from .presentation import (
    EMPTY_WORD,
    DuplicateRelationWarning,
    Generator,
    Presentation,
    PresentationError,
    PresentationSyntaxError,
    Relation,
    SideGraph,
    Word,
    parse_presentation,
    parse_word,
    relation_deltas,
    serialize_presentation,
    side_graphs,
    symmetric_closure,
)
from .rewrite import (
    Equality,
    ExplorationBudget,
    FactorizationClass,
    TransitionStep,
    Truncation,
    default_budget,
    equal_in_monoid,
    explore_class,
    neighbors,
    sorted_normal_form,
)
from .structure import (
    AdyanVerdict,
    ConsecutivePairRecord,
    DeltaSubgroup,
    GeneratorSwapTable,
    OneRelationAnalysis,
    OneRelationKind,
    ProbeVerdict,
    ProbeWitness,
    SearchCaps,
    StructureUnionsReport,
    Verdict,
    acyclicity_reducedness_probe,
    adyan_check,
    atom_probe,
    consecutive_pair_analysis,
    delta_bound_check,
    delta_subgroup,
    irredundancy_probe,
    is_arithmetic_progression,
    normalizing_probe,
    one_relation_analysis,
    unions_structure_verifier,
)

__version__ = "0.1.0"
