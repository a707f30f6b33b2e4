"""Exception hierarchy. Every error carries a stable ``code`` string."""


class GeometryError(ValueError):
    code = "GEOMETRY_ERROR"


class InvalidInputError(GeometryError):
    code = "INVALID_INPUT"


class DegenerateTriangleError(GeometryError):
    code = "DEGENERATE_TRIANGLE"


class NoWitnessError(GeometryError):
    """The circumcenter solver exhausted its budget without an accepted minimum.

    This is an inconclusive outcome, never evidence against a theorem.
    """

    code = "NO_WITNESS"


class NotACircumcenterError(GeometryError):
    code = "NOT_A_CIRCUMCENTER"


class NotOnCircumcircleError(GeometryError):
    code = "NOT_ON_CIRCUMCIRCLE"


class SearchExhaustedError(GeometryError):
    code = "SEARCH_EXHAUSTED"


class GenerationFailedError(GeometryError):
    code = "GENERATION_FAILED"


class UnknownTheoremError(GeometryError, KeyError):
    code = "UNKNOWN_THEOREM_ID"

    def __str__(self):
        return ValueError.__str__(self)
