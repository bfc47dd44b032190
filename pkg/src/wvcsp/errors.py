"""Error types and resource caps shared across the package."""

from dataclasses import dataclass


class InputError(ValueError):
    """Malformed or inconsistent input (arity mismatch, bad index, parse error)."""


class ResourceLimitError(RuntimeError):
    """An enumeration or solver size cap was exceeded.

    The message names the cap and the offending count so callers can raise
    the limit deliberately instead of silently truncating a search.
    """


class InternalCheckError(RuntimeError):
    """A self-verification step failed; indicates a bug, never a valid answer."""


@dataclass(frozen=True)
class Caps:
    """Explicit enumeration and solver limits.

    Exceeding a cap raises ResourceLimitError; nothing is ever truncated
    silently.
    """

    max_assignments: int = 10**7
    max_witnesses: int = 64
    max_ops: int = 2**20
    max_sequences: int = 10**6
    max_matches: int = 10**6
    max_lp_rows: int = 20000


DEFAULT_CAPS = Caps()
