"""Python bindings for the path-spin interferometer simulator."""

from ._pathspin import (  # noqa: F401
    NumericError,
    ParseError,
    ValidationError,
    __version__,
    born_probabilities,
    concurrence,
    correlation,
    enumerate_noncontextual,
    estimate_correlation,
    make_singlet,
    nosignal_check,
    nri_value,
    optimize_settings,
    path_observable_bloch,
    prepare_bs1_sf,
    run_scenario,
    sample_counts,
    tsirelson_max,
)
