"""Exception types shared across the package."""


class CatCohomError(Exception):
    """Base class for all library errors."""


class ValidationError(CatCohomError):
    """Structural data failed an invariant check."""


class MissingIdentity(ValidationError):
    pass


class NonAssociative(ValidationError):
    pass


class IncompatibleEndpoints(ValidationError):
    pass


class IncompleteCompositionTable(ValidationError):
    pass


class ObjectNotInTarget(ValidationError):
    pass


class ObjectNotInCategory(ValidationError):
    pass


class NotEI(ValidationError):
    pass


class NotSkeletal(ValidationError):
    pass


class MismatchedBase(ValidationError):
    pass


class VarianceMismatch(ValidationError):
    pass


class DegreeOverflow(CatCohomError):
    pass


class WindowTooSmall(CatCohomError):
    pass


class NotIdentityOnObjects(ValidationError):
    pass


class NotSurjective(ValidationError):
    pass


class WrongOrientation(CatCohomError):
    pass


class ShapeMismatch(CatCohomError):
    pass


class NotRegular(CatCohomError):
    pass


class GroupTooLarge(CatCohomError):
    pass


class CollectionNotClosed(ValidationError):
    pass


class IllDefinedComposition(CatCohomError):
    pass


class SplittingFailure(CatCohomError):
    pass


class ParseError(CatCohomError):
    pass


class CacheCorrupt(CatCohomError):
    pass
