"""Exception hierarchy for semiconj."""


class SemigroupError(Exception):
    """Base class for all errors raised by this package."""


class AssociativityViolation(SemigroupError):
    def __init__(self, a, b, c, left, right):
        self.witness = (a, b, c)
        super().__init__(
            f"not associative: ({a}*{b})*{c} = {left} but {a}*({b}*{c}) = {right}"
        )


class IndexOutOfRange(SemigroupError):
    pass


class ClosureBudgetExceeded(SemigroupError):
    pass


class NotInverse(SemigroupError):
    pass


class NotRegular(SemigroupError):
    pass


class NotIdempotent(SemigroupError):
    pass


class NotGroup(SemigroupError):
    pass


class NoIdentity(SemigroupError):
    pass


class IrregularDClass(SemigroupError):
    pass


class DegreeMismatch(SemigroupError):
    pass


class DegreeTooLarge(SemigroupError):
    pass


class NotClosed(SemigroupError):
    def __init__(self, a, b, product):
        self.witness = (a, b, product)
        super().__init__(f"{a} * {b} = {product} is not in the element list")


class EmbeddingError(SemigroupError):
    pass


class FrameError(SemigroupError):
    """The L-class frame is inconsistent (a translation has no or several solutions)."""


class NoSolution(FrameError):
    pass


class NonUniqueSolution(FrameError):
    pass


class DegenerateEigenvalues(SemigroupError):
    pass


class MultiplicativityViolation(SemigroupError):
    def __init__(self, s, t, err):
        self.witness = (s, t)
        super().__init__(f"M({s})M({t}) != M({s}*{t}) (max deviation {err:.3g})")


class HypothesisNotMet(SemigroupError):
    pass


class ParamOutOfRange(SemigroupError):
    pass


class ParseError(SemigroupError):
    pass
