"""Exact linear relations, matrix pencils and rank-one perturbation bounds."""

from .chains import ChainTuple, classify_chain, extract_jordan_chain, has_singular_chain, reduce_chains
from .fieldkit import GF, Matrix, Q, Qi, Subspace, intersect, kernel, rref
from .pencil import Pencil, RankOnePencil, apply_perturbation, jordan_dims_at, pencil_bound_report, profile, to_relation, wong
from .perturb import check_bounds, decompose_path, perturbation_order, s_n, s_n_oracle
from .relation import INFINITY, LinearRelation, compose, from_graph, inverse, jordan_degrees, parts, power

__all__ = [
    "ChainTuple",
    "GF",
    "INFINITY",
    "LinearRelation",
    "Matrix",
    "Pencil",
    "Q",
    "Qi",
    "RankOnePencil",
    "Subspace",
    "apply_perturbation",
    "check_bounds",
    "classify_chain",
    "compose",
    "decompose_path",
    "extract_jordan_chain",
    "from_graph",
    "has_singular_chain",
    "intersect",
    "inverse",
    "jordan_degrees",
    "jordan_dims_at",
    "kernel",
    "parts",
    "pencil_bound_report",
    "perturbation_order",
    "power",
    "profile",
    "reduce_chains",
    "rref",
    "s_n",
    "s_n_oracle",
    "to_relation",
    "wong",
]
