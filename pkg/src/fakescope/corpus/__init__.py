"""Corpus layer: data model, ingestion, validation, synthesis, resampling."""

from .errors import (
    CorpusError,
    DanglingReferenceError,
    DuplicateIdError,
    EmptyCorpusError,
    InsufficientDataError,
    MalformedRowError,
)
from .io import load_dataset, save_dataset
from .model import (
    FAKE,
    HUMAN,
    Account,
    LabeledDataset,
    NeighborSummary,
    RelationshipGraph,
    Tweet,
    ValidationReport,
    Violation,
    is_web_source,
    normalize_source,
    validate,
)
from .sampling import FoldPlan, rebalance, split_folds
from .synth import PRESETS, ClassProfile, SynthConfig, fake_profile, human_profile, synthesize

__all__ = [
    "Account",
    "ClassProfile",
    "CorpusError",
    "DanglingReferenceError",
    "DuplicateIdError",
    "EmptyCorpusError",
    "FAKE",
    "FoldPlan",
    "HUMAN",
    "InsufficientDataError",
    "LabeledDataset",
    "MalformedRowError",
    "NeighborSummary",
    "PRESETS",
    "RelationshipGraph",
    "SynthConfig",
    "Tweet",
    "ValidationReport",
    "Violation",
    "fake_profile",
    "human_profile",
    "is_web_source",
    "load_dataset",
    "normalize_source",
    "rebalance",
    "save_dataset",
    "split_folds",
    "synthesize",
    "validate",
]
