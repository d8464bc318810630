"""Exception hierarchy shared by every qeuler module."""


class QEulerError(Exception):
    """Base class for all library errors."""


class NonIntegerExponentInExactMode(QEulerError, ValueError):
    pass


class QEqualsOneInExactMode(QEulerError, ValueError):
    pass


class QEqualsMinusOne(QEulerError, ValueError):
    pass


class NonUnitDivision(QEulerError, ArithmeticError):
    pass


class NoConvergence(QEulerError, ArithmeticError):
    pass


class EvenConductor(QEulerError, ValueError):
    pass


class NotMultiplicative(QEulerError, ValueError):
    pass


class WrongSupport(QEulerError, ValueError):
    pass


class NotSquarefree(QEulerError, ValueError):
    pass


class NonRealValueInExactMode(QEulerError, ValueError):
    pass


class VanishingPochhammerFactor(QEulerError, ZeroDivisionError):
    pass


class SeriesNotConvergent(QEulerError, ArithmeticError):
    pass


class ConvergenceBudgetExceeded(QEulerError, ArithmeticError):
    pass


class InvalidRequest(QEulerError, ValueError):
    pass


class QuadratureFailure(QEulerError, ArithmeticError):
    pass
