"""Statevector simulation of the bounded-vector Hadamard test and two classifiers built on it."""
from .encoding import BoundedVector, amplitude_encode, encode_batch, encode_pair, to_angles
from .errors import (
    ArgumentError,
    BalanceError,
    ConfigError,
    DataError,
    DomainError,
    GQHTError,
    ParseError,
    SizeError,
)
from .hadamard import (
    BatchedGQHT,
    EstimatorConfig,
    InnerProductResult,
    compare_qubit_budget,
    gqht,
    gqht_batched,
    qht,
)

__version__ = "0.1.0"
