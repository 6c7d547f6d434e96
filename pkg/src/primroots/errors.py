"""Exception types shared across the package.

The CLI maps these onto exit codes: usage problems exit 1, resource and
contract failures exit 2.
"""


class RangeError(OverflowError):
    """Input lies outside the supported integer width."""


class ResourceError(RuntimeError):
    """A configured budget (scan ceiling, sieve size) would be exceeded."""


class ContractError(ValueError):
    """Arguments are individually valid but inconsistent with each other."""
