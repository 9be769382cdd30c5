"""Exception hierarchy shared by every module of the package."""


class DiffSeqError(Exception):
    """Base class for all errors raised by diffseq."""


class NonMonicEquation(DiffSeqError, ValueError):
    pass


class JetTooShort(DiffSeqError, ValueError):
    pass


class NotHomogeneous(DiffSeqError, ValueError):
    def __init__(self, first, second):
        self.monomials = (first, second)
        super().__init__(
            f"monomials {first[0]} (weight {first[1]}) and {second[0]} "
            f"(weight {second[1]}) have different weights"
        )


class ProlongationTooShort(DiffSeqError, ValueError):
    pass


class IndexOutOfRange(DiffSeqError, ValueError):
    pass


class IdenticalIndices(DiffSeqError, ValueError):
    pass


class PoleAtSamplePoint(DiffSeqError, ValueError):
    pass


class InvalidCombination(DiffSeqError, ValueError):
    pass


class NoBalance(DiffSeqError):
    pass


class IrrationalLeadingCoefficient(DiffSeqError):
    pass


class InconsistentBalance(DiffSeqError):
    pass


class NonIntegerResonance(DiffSeqError):
    def __init__(self, factor):
        self.factor = factor
        super().__init__(f"resonance polynomial has a non-integer root factor: {factor}")


class RepeatedResonance(DiffSeqError):
    def __init__(self, resonance):
        self.resonance = resonance
        super().__init__(f"positive resonance r={resonance} is repeated")


class CompatibilityFailure(DiffSeqError):
    def __init__(self, resonance, forcing):
        self.resonance = resonance
        self.forcing = forcing
        super().__init__(f"compatibility fails at r={resonance}: forcing term {forcing}")


class ParseError(DiffSeqError, ValueError):
    def __init__(self, text, position, expected):
        self.text = text
        self.position = position
        self.expected = frozenset(expected)
        exp = ", ".join(sorted(self.expected))
        super().__init__(f"parse error at position {position} in {text!r}: expected one of {{{exp}}}")


class VerificationFailure(DiffSeqError):
    """An identity that should hold exactly did not.

    ``residual`` holds the nonzero difference (polynomial, rational function or
    value) so the failure can be diagnosed.
    """

    def __init__(self, module, operation, message, residual=None, stage=None, index=None):
        self.module = module
        self.operation = operation
        self.residual = residual
        self.stage = stage
        self.index = index
        where = f"{module}.{operation}"
        if stage is not None:
            where += f" [{stage}]"
        if index is not None:
            where += f" at {index}"
        super().__init__(f"{where}: {message}; residual = {residual}")
