"""Hermite-Birkhoff interpolation on the sphere, flat torus, and Euclidean
patches via geodesic-distance cardinal basis functions."""

from hbinterp._core import (  # noqa: F401
    Chart,
    ConditionReport,
    Error,
    HermiteNode,
    Interpolant,
    Manifold,
    MultiIndexSet,
    NeighborIndex,
    NodeSet,
    Patch,
    TestFunction,
    UncoveredPointError,
    WeightConfig,
    __version__,
    alpha_power,
    builtin,
    builtin_names,
    bump,
    cbf_inverse,
    cbf_product,
    chart_lipschitz,
    check_bounds,
    completeness_order,
    convergence_study,
    derivative_check,
    error_norms,
    fill_distance,
    global_order_k,
    read_nodes,
    sample_patch,
    separation_distance,
    taylor_eval,
    write_nodes,
)
