"""Exception hierarchy for qfrep.

Everything raised on bad caller input derives from :class:`InvalidInput`
(and so from ``ValueError``); the CLI maps that family to exit code 2.
"""


class QFRepError(Exception):
    pass


class InvalidInput(QFRepError, ValueError):
    pass


class InvalidDiscriminant(InvalidInput):
    pass


class InvalidForm(InvalidInput):
    pass


class NonPositive(InvalidInput):
    pass


class UnknownExample(InvalidInput):
    pass


class FactorizationIncomplete(QFRepError):
    def __init__(self, value, cofactor):
        super().__init__(f"could not split cofactor {cofactor} of {value}")
        self.value = value
        self.cofactor = cofactor


class ContextMismatch(InvalidInput):
    pass


class NotProper(InvalidInput):
    pass


class NotIntegral(InvalidInput):
    pass


class NotNested(InvalidInput):
    pass


class NotCoprime(InvalidInput):
    pass


class ConductorPrime(InvalidInput):
    pass


class NotConductorPrime(InvalidInput):
    pass


class InertPrime(InvalidInput):
    pass


class OddInertExponent(QFRepError):
    """An inert prime divides a norm to an odd power; impossible for a genuine ideal."""

    def __init__(self, q):
        super().__init__(f"inert prime {q} occurs to an odd power")
        self.q = q


class RepresentativeSearchExhausted(QFRepError):
    pass
