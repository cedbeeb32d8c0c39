# BSD 3-Clause License; see LICENSE

"""
Exception hierarchy.

Every error raised on purpose by this package derives from
:class:`SecfanError`. The command-line front end maps the branches onto its
exit codes: :class:`InputError` to 2, :class:`ResourceLimitError` to 3 and
:class:`InvariantViolation` to 4.
"""

from __future__ import annotations


class SecfanError(Exception):
    """Base class for all errors raised by secfan."""

    exit_code = 1


class InputError(SecfanError, ValueError):
    """Invalid parameters, malformed files or inconsistent sizes."""

    exit_code = 2


class DegenerateInputError(InputError):
    """A point configuration that does not span enough dimensions."""


class NotRegularError(InputError):
    """A triangulation was given where a regular one is required."""


class TrivialSubdivisionError(InputError):
    """The trivial subdivision was given where a proper one is required."""


class NotNestedError(InputError):
    """Two subdivisions were expected to be nested but are not."""


class ResourceLimitError(SecfanError):
    """A computation was refused because it exceeds the configured limits."""

    exit_code = 3


class InvariantViolation(SecfanError, AssertionError):
    """An internal consistency check failed."""

    exit_code = 4


__all__ = [
    "DegenerateInputError",
    "InputError",
    "InvariantViolation",
    "NotNestedError",
    "NotRegularError",
    "ResourceLimitError",
    "SecfanError",
    "TrivialSubdivisionError",
]
