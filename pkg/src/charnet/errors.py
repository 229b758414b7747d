"""Exception hierarchy shared across the package."""


class CharnetError(Exception):
    """Base class for all errors raised by this package."""


class DocumentFormatError(CharnetError):
    """A document file could not be parsed into the canonical model.

    Carries enough context (file, field, offending value) to point at the
    broken part of the input.
    """

    def __init__(self, message: str, *, path: str | None = None, field: str | None = None):
        self.path = path
        self.field = field
        prefix = ""
        if path is not None:
            prefix += f"{path}: "
        if field is not None:
            prefix += f"[{field}] "
        super().__init__(prefix + message)


class InvariantError(CharnetError):
    """A constructed object violates a data-model invariant."""


class GraphMLError(CharnetError):
    """Strict GraphML input is missing required structure or attributes."""


class LLMParseError(CharnetError):
    """An LLM output was too broken to recover anything from."""


class SaturationError(CharnetError):
    """A perturbation has no remaining valid target in the document."""
