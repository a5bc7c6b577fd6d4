"""Exception types shared across the package.

Grouped here so callers can catch one family (``ParityRamseyError``) or a
specific failure mode. Everything that is a misuse of an interface derives
from ValueError as well, so plain ``except ValueError`` keeps working.
"""


class ParityRamseyError(Exception):
    pass


class ParameterError(ParityRamseyError, ValueError):
    """A structural parameter is out of range (e.g. beta < 2)."""


class ShapeError(ParityRamseyError, ValueError):
    """A bit vector has the wrong width for the requested operation."""


class SelfLoopError(ParityRamseyError, ValueError):
    """An edge operation was asked about a vertex paired with itself."""


class CapacityError(ParityRamseyError, ValueError):
    """A request exceeds a hard desk-scale ceiling (universe or graph count)."""


class ConfigurationError(ParityRamseyError, ValueError):
    """Mutually incompatible scan options (e.g. a K4 check at subset size 5)."""


class ParityError(ParityRamseyError, ValueError):
    """Clique order p has an odd edge count; no all-even copy can exist."""


class NotSpecialError(ParityRamseyError, ValueError):
    """The queried vertex is not the core of any monochromatic 2-edge path."""


class MultiplicityError(ParityRamseyError, ValueError):
    """The queried vertex is the core of more than one monochromatic 2-edge path."""
