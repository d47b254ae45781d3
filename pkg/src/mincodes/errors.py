"""Exception hierarchy.

Every error carries a snake_case ``kind`` so the command line can report it
as a machine-readable object without a lookup table.
"""

from __future__ import annotations


class MinCodeError(Exception):
    kind = "error"

    def __init__(self, detail: str = "") -> None:
        super().__init__(detail)
        self.detail = detail


class InvalidParameter(MinCodeError, ValueError):
    kind = "invalid_parameter"


class NotPrime(InvalidParameter):
    kind = "not_prime"


class ReducibleModulus(InvalidParameter):
    kind = "reducible_modulus"


class NoPrimitiveRootFound(MinCodeError, RuntimeError):
    kind = "no_primitive_root_found"


class NotInSubfield(MinCodeError, ValueError):
    kind = "not_in_subfield"


class DoesNotDivide(InvalidParameter):
    kind = "does_not_divide"


class ColumnsProportional(MinCodeError, ValueError):
    kind = "columns_proportional"

    def __init__(self, i: int, j: int) -> None:
        super().__init__(f"columns {i} and {j} are scalar multiples of each other")
        self.columns = (i, j)


class ZeroLastColumn(MinCodeError, ValueError):
    kind = "zero_last_column"


class ZeroColumn(MinCodeError, ValueError):
    kind = "zero_column"

    def __init__(self, index: int) -> None:
        super().__init__(f"generator column {index} is zero")
        self.index = index


class DimensionExhausted(MinCodeError, ValueError):
    kind = "dimension_exhausted"


class DualDistanceTooSmall(MinCodeError, ValueError):
    kind = "dual_distance_too_small"


class TooLarge(MinCodeError, ValueError):
    kind = "too_large"


class LengthMismatch(MinCodeError, ValueError):
    kind = "length_mismatch"


class NotInCode(MinCodeError, ValueError):
    kind = "not_in_code"


class UnsupportedN(InvalidParameter):
    kind = "unsupported_n"


class UnsupportedS(InvalidParameter):
    kind = "unsupported_s"


class ZeroSecretColumn(MinCodeError, ValueError):
    kind = "zero_secret_column"


class NotAuthorized(MinCodeError, ValueError):
    kind = "not_authorized"


class NotCertifiedMinimal(MinCodeError, ValueError):
    kind = "not_certified_minimal"
