"""Crosscutting-concern mining workbench.

Three miners over a language-agnostic program-facts model -- fan-in analysis,
identifier analysis via formal concept analysis, and dynamic trace analysis --
plus seed combination/expansion and the recalled-methods / seed-quality
evaluation metrics.
"""

from .facts import (
    CallEdge,
    MethodDecl,
    ProgramFacts,
    TypeDecl,
    derive_overrides,
    hierarchy_root,
    parse_facts,
    serialize_facts,
)
from .fca import Concept, ConceptLattice, Context, concepts, extent_closure, intent_closure, lattice
from .fanin import FaninResult, Seed, compute_fanin, contribution_targets, fanin_seeds, filter_candidates
from .identmine import (
    StemLexicon,
    build_id_context,
    mine_identifier_concepts,
    split_identifier,
    stem,
)
from .dynmine import TraceSet, build_trace_context, dynamic_seeds
from .combine import ExpandedSeed, TriageVerdict, apply_triage, expand_seed, nearest_concepts, seed_union
from .metrics import ConcernTruth, recalled_methods, score_report, seed_quality
from .corpusgen import GenSpec, PlantedConcern, generate

__version__ = "0.1.0"

__all__ = [
    "CallEdge",
    "Concept",
    "ConceptLattice",
    "ConcernTruth",
    "Context",
    "ExpandedSeed",
    "FaninResult",
    "GenSpec",
    "MethodDecl",
    "PlantedConcern",
    "ProgramFacts",
    "Seed",
    "StemLexicon",
    "TraceSet",
    "TriageVerdict",
    "TypeDecl",
    "apply_triage",
    "build_id_context",
    "build_trace_context",
    "compute_fanin",
    "concepts",
    "contribution_targets",
    "derive_overrides",
    "dynamic_seeds",
    "expand_seed",
    "extent_closure",
    "fanin_seeds",
    "filter_candidates",
    "generate",
    "hierarchy_root",
    "intent_closure",
    "lattice",
    "mine_identifier_concepts",
    "nearest_concepts",
    "parse_facts",
    "recalled_methods",
    "score_report",
    "seed_quality",
    "seed_union",
    "serialize_facts",
    "split_identifier",
    "stem",
]
