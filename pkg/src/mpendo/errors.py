"""Exception hierarchy.

Input errors map to CLI exit code 2, domain errors to exit code 1.
"""


class MpendoError(Exception):
    exit_code = 1


class InputError(MpendoError):
    exit_code = 2


class DomainError(MpendoError):
    exit_code = 1


class SchemaError(InputError):
    pass


class ConsistencyError(InputError):
    def __init__(self, entity, invariant, detail=""):
        self.entity = entity
        self.invariant = invariant
        msg = f"{entity}: violates '{invariant}'"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class DanglingReference(InputError):
    pass


class MissingLocalization(InputError):
    pass


class MissingTwist(DomainError):
    pass


class UnsupportedSwap(DomainError):
    pass


class UnboundedConstituent(DomainError):
    pass


class NotSelfDual(DomainError):
    pass


class MissingFrobenius(DomainError):
    pass


class NonRealProduct(DomainError):
    pass


class UnsupportedXuCase(DomainError):
    pass


class MissingRSEntry(DomainError):
    pass
