"""Finite combinatorial models around double loop spaces.

Submodules: ``poset`` (the cells of L(n)), ``preoperad`` (pullbacks and insertions),
``coend`` (classes over a based set), ``chains`` (cellular chains and homology),
``tensoralg`` (shuffles and Lie elements), ``bidelta`` and ``extension`` (bi-Δ
groups, James-Hopf maps, nilpotent quotients) and ``cli``.
"""

from .errors import BoundsError, DomainError, DoubleLoopError, InputError, IntegrityError
from .poset import OrderedPartition, enumerate_cells, leq

__version__ = "0.1.0"

__all__ = [
    "BoundsError",
    "DomainError",
    "DoubleLoopError",
    "InputError",
    "IntegrityError",
    "OrderedPartition",
    "enumerate_cells",
    "leq",
]
