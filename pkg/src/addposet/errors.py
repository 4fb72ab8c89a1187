"""Exception hierarchy; every domain failure is a ``PosetError``."""


class PosetError(ValueError):
    """A violated precondition of a domain operation."""


class TooLargeError(PosetError):
    """An exhaustive operation was asked for beyond the dimension cap."""


class AxiomError(PosetError):
    """A relation table fails the additive poset axioms."""


class NotPlainError(PosetError):
    pass


class ParseError(ValueError):
    """Malformed input file; carries a 1-based line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0, path: str | None = None):
        self.line = line
        self.column = column
        self.path = path
        where = f"{path or '<input>'}:{line}:{column}"
        super().__init__(f"{where}: {message}")
