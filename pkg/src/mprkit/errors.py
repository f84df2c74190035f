"""Error types shared across the package.

Two kinds are distinguished so callers (and the CLI exit-code logic) can
tell "the input makes no sense" apart from "the input is too large for the
exact-arithmetic policy".
"""


class DomainError(ValueError):
    """The input is outside the mathematical domain of the operation."""


class RangeError(ValueError):
    """The input or result exceeds the supported magnitude range."""


# All exact integer arithmetic is kept inside the signed 128-bit range.
# Python integers do not overflow, but the policy gives reproducible
# behaviour for would-be consumers with fixed-width integers and keeps
# factorization targets at a size the deterministic pipeline can handle.
WIDTH_BOUND = 1 << 127
