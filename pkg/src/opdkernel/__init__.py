"""Polynomial kernel for Outerplanar Deletion with brute-force verification."""

from .bounds import f1, f2, f3, f4, f5, kernel_bound
from .errors import InputFormatError, InternalError, NotOuterplanarError, PreconditionError, UnverifiableError
from .generators import generate_instance
from .graph import Graph, MinorTrace, replay_trace
from .io import format_instance, parse_instance, read_instance
from .oracle import has_minor, min_deletion_set, opd_exact, opd_exact_avoiding
from .outerplanar import Obstruction, find_obstruction, is_outerplanar, recognize
from .pipeline import KernelConfig, KernelResult, check_obstruction, kernelize, minimize_obstruction, verify
from .reducible import FanPath, LadderMatching, SmallCutPair, find_reducible_structure

__all__ = [
    "FanPath",
    "Graph",
    "InputFormatError",
    "InternalError",
    "KernelConfig",
    "KernelResult",
    "LadderMatching",
    "MinorTrace",
    "NotOuterplanarError",
    "Obstruction",
    "PreconditionError",
    "SmallCutPair",
    "UnverifiableError",
    "check_obstruction",
    "f1",
    "f2",
    "f3",
    "f4",
    "f5",
    "find_obstruction",
    "find_reducible_structure",
    "format_instance",
    "generate_instance",
    "has_minor",
    "is_outerplanar",
    "kernel_bound",
    "kernelize",
    "min_deletion_set",
    "minimize_obstruction",
    "opd_exact",
    "opd_exact_avoiding",
    "parse_instance",
    "read_instance",
    "recognize",
    "replay_trace",
    "verify",
]
