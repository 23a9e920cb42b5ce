"""Exception hierarchy.

Every mathematical precondition failure derives from ``MathError``; the CLI
maps those to exit code 3 and names the class in its message.
"""


class MathError(Exception):
    pass


class SyntaxParseError(ValueError):
    """Malformed element syntax, descriptor string or input document."""


# ring tower
class NonMonicModulus(MathError):
    pass


class CompositeModulusPrime(MathError):
    pass


class NotAUnit(MathError):
    pass


class DescriptorMismatch(MathError):
    pass


class RootsUnavailable(MathError):
    pass


class HomRelationViolated(MathError):
    pass


# fractions
class DenominatorNotInS(MathError):
    pass


class NumeratorNotInS(MathError):
    pass


# representations
class RelationViolated(MathError):
    pass


class NotFiniteOrder(MathError):
    pass


class OrderDivisibleByP(MathError):
    pass


class QNotInvertible(MathError):
    pass


class RingNotField(MathError):
    pass


class NonIntegerTrace(MathError):
    pass


class NonIntegralSwan(MathError):
    pass


class NegativeBreakRank(MathError):
    pass


class InvalidFiltration(MathError):
    pass


# factors
class LevelUnsupported(MathError):
    pass


class BadPrimeChoice(MathError):
    pass


class DetTNotUnit(MathError):
    pass


class InvalidFamily(MathError):
    pass


class WildUnsupported(MathError):
    """epsilon and gamma are only computed for tamely ramified input."""
