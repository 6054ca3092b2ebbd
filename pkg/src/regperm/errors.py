"""Exception hierarchy.  Each class carries a stable ``code`` string."""


class RegpermError(Exception):
    code = "ERROR"


class InputError(RegpermError):
    """Bad user input: malformed relation, bad indices, bad generator spec."""

    code = "BAD_INPUT"


class NotTransitive(InputError):
    code = "NOT_TRANSITIVE"


class BadSpec(InputError):
    code = "BAD_SPEC"


class NotOrthogonal(InputError):
    code = "NOT_ORTHOGONAL"


class EnvMismatch(InputError):
    code = "ENV_MISMATCH"


class NotInF(InputError):
    code = "NOT_IN_F"


class NotAntisymmetric(InputError):
    code = "NOT_ANTISYMMETRIC"


class NotBipartite(InputError):
    code = "NOT_BIPARTITE"


class NotDUpper(InputError):
    code = "NOT_D_UPPER"


class CapExceeded(RegpermError):
    code = "CAP_EXCEEDED"


class ConsistencyError(RegpermError):
    """Two routes that must agree did not.  Always a bug or a falsified claim."""

    code = "INCONSISTENT"


class ConstructionMismatch(ConsistencyError):
    code = "CONSTRUCTION_MISMATCH"
