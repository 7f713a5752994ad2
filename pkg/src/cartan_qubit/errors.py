"""Exception hierarchy.

Every exception carries a short machine-readable ``code`` which the command
line front end reports verbatim.
"""


class CartanQubitError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"


class InputError(CartanQubitError, ValueError):
    code = "bad_input"


class NotHermitian(InputError):
    code = "not_hermitian"


class NotUnitary(InputError):
    code = "not_unitary"


class NotTwoQubit(InputError):
    code = "not_two_qubit"


class NotNormalized(InputError):
    code = "not_normalized"


class NotSpecialOrthogonal(InputError):
    code = "not_special_orthogonal"


class InvalidAntiunitary(InputError):
    """The unitary part does not square (with conjugation) to +1 or -1."""

    code = "invalid_antiunitary"


class OutOfTableRange(InputError):
    code = "out_of_table_range"


class UnsupportedClass(InputError):
    code = "unsupported_class"


class NumericalFailure(CartanQubitError, ArithmeticError):
    code = "numerical_failure"


class NotSimultaneouslyDiagonalizable(NumericalFailure):
    code = "not_simultaneously_diagonalizable"


class DecompositionFailed(NumericalFailure):
    code = "decomposition_failed"


class InconsistentSymmetries(NumericalFailure):
    code = "inconsistent_symmetries"


class PhaseBoundary(CartanQubitError):
    """The operator sits on a topological phase boundary (a zero eigenvalue)."""

    code = "phase_boundary"


class GaplessHamiltonian(PhaseBoundary):
    pass


class GaplessSymbol(PhaseBoundary):
    pass
