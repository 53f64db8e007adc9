"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: usage problems exit 2, capacity
problems exit 3.  Negative mathematical results (no partition, no
matching, ...) are ordinary return values, never exceptions.
"""

from __future__ import annotations


class MonocycleError(Exception):
    """Base class for all package errors."""


class UsageError(MonocycleError):
    """Bad arguments or malformed request (CLI exit code 2)."""


class CapacityError(MonocycleError):
    """Instance exceeds a hard resource cap (CLI exit code 3)."""


class EmptyGraphError(MonocycleError):
    """Operation undefined on the empty graph."""


class GraphFormatError(MonocycleError):
    """Invalid graph JSON.  ``code`` is one of:

    - ``malformed``: not valid JSON or wrong shape
    - ``out-of-range``: vertex id outside 0..n-1
    - ``duplicate-pair``: the same unordered pair listed twice
    - ``bad-colour``: colour tag not in {"R", "B", "RB"}
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class PremiseError(MonocycleError):
    """A lemma or operation was called outside its stated premises."""


class BudgetError(MonocycleError):
    """An exact enumeration exceeded its configured work budget.

    Distinct from a negative verdict: the computation was cut short, so
    no conclusion may be drawn.
    """


class ConstructionError(MonocycleError):
    """A constructive routine (gadget wiring, splicing, sampling) ran out
    of usable vertices or failed a required sub-step.  The message names
    the failing step."""
