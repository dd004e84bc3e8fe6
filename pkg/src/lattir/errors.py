"""Exception types shared across the package."""


class LattirError(Exception):
    """Base class for every error raised by lattir."""


class InvalidArgumentError(LattirError, ValueError):
    """A caller-supplied value violates an operation's preconditions."""


class UnknownIdentifierError(InvalidArgumentError):
    """An object or attribute identifier is not part of the context."""


class DuplicateIdentifierError(InvalidArgumentError):
    """An identifier that must be unique was supplied twice."""


class CorpusFormatError(LattirError, ValueError):
    """The corpus XML (or context file) cannot be parsed.

    ``line`` and ``column`` are filled in when the underlying XML parser
    reports a position.
    """

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class OntologyFormatError(LattirError, ValueError):
    """The ontology file is malformed: bad structure, cycle, or duplicate term."""


class InvalidQueryError(LattirError, ValueError):
    """The query is empty or normalizes to nothing."""


class NoKnownTermsError(InvalidQueryError):
    """Every query term is absent from the index's attribute universe."""

    def __init__(self, dropped):
        self.dropped = tuple(sorted(dropped))
        super().__init__(
            "no query term matches the indexed vocabulary; dropped: "
            + ", ".join(self.dropped)
        )


class ArtifactFormatError(LattirError, ValueError):
    """A persisted index cannot be read."""


class UnsupportedVersionError(ArtifactFormatError):
    """The persisted index declares a format version this build cannot read."""


class ArtifactCorruptionError(ArtifactFormatError):
    """A persisted index fails an internal consistency check.

    ``check`` names the failed invariant so callers can report which one.
    """

    def __init__(self, check, detail):
        self.check = check
        self.detail = detail
        super().__init__(f"corrupt index: check '{check}' failed: {detail}")
