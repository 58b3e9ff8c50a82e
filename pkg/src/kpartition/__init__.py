"""Connected k-partitions of k-connected graphs with prescribed sizes and terminals."""

from kpartition.errors import ContractError, InputError, InvariantError, NotKConnected, ProgressStall
from kpartition.graph import CutWitness, Graph
from kpartition.config import Configuration, Problem
from kpartition.solver import Partition, SolveReport, augment_once, solve

__all__ = [
    "ContractError",
    "Configuration",
    "CutWitness",
    "Graph",
    "InputError",
    "InvariantError",
    "NotKConnected",
    "Partition",
    "Problem",
    "ProgressStall",
    "SolveReport",
    "augment_once",
    "solve",
]
