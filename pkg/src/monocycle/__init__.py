"""Exact solver and constructive toolkit for partitions of 2-coloured
graphs into one red and one blue cycle (empty sets, single vertices and
single edges count as cycles)."""

from .graph import BLUE, RED, UNION, ColouredGraph, deserialize, min_degree, serialize
from .partition import PartitionCertificate, scan_conjecture, solve, verify

__all__ = [
    "BLUE",
    "RED",
    "UNION",
    "ColouredGraph",
    "PartitionCertificate",
    "deserialize",
    "min_degree",
    "scan_conjecture",
    "serialize",
    "solve",
    "verify",
]
