"""Exception types shared across the package.

ValidationError marks bad inputs (rejected before any work is done);
DiagnosticError marks data-dependent outcomes where an operation ran but
cannot produce a meaningful result (degenerate series, insufficient tail,
non-finite simulation state). The CLI maps them to exit codes 1 and 2.
"""


class ValidationError(ValueError):
    """Invalid parameter or malformed input."""


class DiagnosticError(RuntimeError):
    """Operation ran but the data does not support a result."""
