"""Homogeneous vector bundles on the unit ball in C^n, n in {1, 2}."""

from ._core import (
    HbundleError,
    Representation,
    cg_projection,
    cjk_table,
    classify_chains,
    decompose_tensor,
    gamma_matrix,
    gram,
    homomorphism_residual,
    intertwining_residual,
    joint_kernel_dim,
    kernel,
    killing,
    realize_chain,
    suite_report,
    threshold_scan,
)

__all__ = [
    "HbundleError",
    "Representation",
    "cg_projection",
    "cjk_table",
    "classify_chains",
    "decompose_tensor",
    "gamma_matrix",
    "gram",
    "homomorphism_residual",
    "intertwining_residual",
    "joint_kernel_dim",
    "kernel",
    "killing",
    "realize_chain",
    "suite_report",
    "threshold_scan",
]
