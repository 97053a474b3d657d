"""Coherent-state entanglement generation over lossy channels.

Exact protocol states, achievable measurement strategies, the tight
performance bound, and Monte Carlo verification. The heavy lifting lives in
the C++ extension module.
"""

from ._core import (
    ProtocolParams,
    __version__,
    coherent_amplitudes,
    coherent_overlap,
    cross_validate,
    equivalence_check,
    f_opt,
    f_sym,
    fidelity_cap,
    fsym_derivatives,
    g_polynomial,
    hull_check,
    phase_flip_f,
    ps_star,
    run_monte_carlo,
    simulate,
    tradeoff_max_psf,
    triangle,
    upper_convex_hull,
)

__all__ = [
    "ProtocolParams",
    "__version__",
    "coherent_amplitudes",
    "coherent_overlap",
    "cross_validate",
    "equivalence_check",
    "f_opt",
    "f_sym",
    "fidelity_cap",
    "fsym_derivatives",
    "g_polynomial",
    "hull_check",
    "phase_flip_f",
    "ps_star",
    "run_monte_carlo",
    "simulate",
    "tradeoff_max_psf",
    "triangle",
    "upper_convex_hull",
]
