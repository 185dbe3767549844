"""Sequential spatial point process (SSPP) toolkit."""

from ._core import (  # noqa: F401
    ModelParams,
    Point,
    PointSequence,
    SsppError,
    Window,
    centered_l,
    csr_test,
    default_cell_size,
    distance,
    envelopes,
    fit,
    log_likelihood,
    simulate,
    summaries,
    union_disc_area,
)

__version__ = "0.1.0"
