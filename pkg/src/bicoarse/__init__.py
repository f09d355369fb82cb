"""Exact computations with bi-invariant word metrics on free groups and on Z."""
from .cancel import (CancellationCertificate, cancellation_distance, cancellation_length,
                     cancellation_length_oracle, certificate, commutator_norm_table)
from .errors import BicoarseError
from .kernels import BACKEND
from .words import Word, ball, commutator, invert, parse, power, reduce

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BicoarseError",
    "CancellationCertificate",
    "Word",
    "ball",
    "cancellation_distance",
    "cancellation_length",
    "cancellation_length_oracle",
    "certificate",
    "commutator",
    "commutator_norm_table",
    "invert",
    "parse",
    "power",
    "reduce",
]
