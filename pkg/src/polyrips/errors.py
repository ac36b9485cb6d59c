"""Exception types shared across the package.

The CLI maps these to stable exit codes (see cli.py).
"""


class InputError(ValueError):
    """Bad user-supplied argument (exit code 2)."""


class NotCertifiableError(ValueError):
    """The requested regime needs the monotonicity conjecture, which has not
    been validated for this (n, winding) pair (exit code 3)."""


class CyclicityError(ValueError):
    """Scale at or above the cyclicity threshold: some ball meets the polygon
    in a disconnected set (exit code 4)."""


class ResourceBudgetError(RuntimeError):
    """Simplex or spacing budget exceeded (exit code 5)."""


class InternalConsistencyError(RuntimeError):
    """A structural invariant that should be impossible to violate failed;
    carries a witness in args."""
