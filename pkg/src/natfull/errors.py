"""Exception types shared across the analyzers."""


class NatfullError(Exception):
    """Base class for every error raised by natfull."""


class CenterTooLarge(NatfullError):
    pass


class TooLargeToEnumerate(NatfullError):
    pass


class NotProjective(NatfullError):
    """A theorem's finitely-generated-projective hypothesis fails."""


class CriterionNotMet(NatfullError):
    pass


class InconsistentCriteria(NatfullError):
    """Conditions proven equivalent disagreed. Always a bug."""


class WitnessViolation(NatfullError):
    """A witness failed a property it is guaranteed to have. Always a bug."""


class ParseError(NatfullError):
    pass


class ValidationError(NatfullError):
    def __init__(self, message, violations=None):
        super().__init__(message)
        self.violations = dict(violations or {})
