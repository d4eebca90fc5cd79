"""Exception hierarchy shared by all modules."""


class RoughConceptError(Exception):
    """Base class for errors raised by this package."""


class CarrierMismatchError(RoughConceptError, ValueError):
    """A set or matrix is indexed over the wrong carrier."""


class MembershipError(RoughConceptError, ValueError):
    """A concept does not belong to the lattice it is used with."""


class UnsupportedSortError(RoughConceptError, ValueError):
    """An operation was applied to a relation of the wrong sort."""


class IncompatibleRelationError(RoughConceptError, ValueError):
    """A relation fails the I-compatibility check."""


class MissingRelationError(RoughConceptError, LookupError):
    """An optional relation needed by an operator is absent."""


class DuplicateIdentifierError(RoughConceptError, ValueError):
    pass


class InvalidKentError(RoughConceptError, ValueError):
    """The object relation of a Kent context is not an equivalence."""


class NotALatticeError(RoughConceptError, ValueError):
    pass


class NotNormalError(RoughConceptError, ValueError):
    """Operator tables do not preserve the required meets or joins."""


class NotHeytingError(RoughConceptError, ValueError):
    pass


class SearchSpaceExceeded(RoughConceptError, RuntimeError):
    """An exhaustive enumeration would exceed its configured guard."""


class FormulaSyntaxError(RoughConceptError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnboundAtomError(RoughConceptError, KeyError):
    pass


class UnsupportedFormulaError(RoughConceptError, ValueError):
    pass


class InvalidSpaceError(RoughConceptError, ValueError):
    """A probability space or subalgebra violates its invariants."""


class CxtFormatError(RoughConceptError, ValueError):
    def __init__(self, kind: str, message: str, line: int):
        super().__init__(f"line {line}: {kind}: {message}")
        self.kind = kind
        self.line = line


class SchemaError(RoughConceptError, ValueError):
    pass


class InvalidModelError(RoughConceptError, ValueError):
    """A T-model similarity or relation violates its reflexivity or symmetry requirement."""
