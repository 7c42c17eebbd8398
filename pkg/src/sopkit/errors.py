"""Shared exception types."""


class FieldMismatchError(ValueError):
    """Operands belong to different fields (and no embedding was supplied)."""


class ParseError(ValueError):
    """Malformed polynomial or ideal-file text."""


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed its configured cap.

    Caps are explicit configuration; we fail hard instead of truncating.
    """


class SearchFailureError(RuntimeError):
    """A randomized search exhausted its trial budget without success."""


class EmptySchemeError(ValueError):
    """The generators define the empty projective scheme (dimension -1)."""
