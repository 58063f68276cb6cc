"""
Error Types Module

Exception hierarchy shared by the library and the command line.
Every error is a ValueError carrying a stable ``code`` for reports and exit handling.
"""

from typing import Any, Dict, Optional


class RootToolError(ValueError):
    """Base class for all toolkit errors."""

    code = "ERROR"

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        """Serializable view used in reports."""
        return {'code': self.code, 'message': self.message, 'details': self.details}


class DimensionMismatchError(RootToolError):
    code = "DIMENSION_MISMATCH"


class NotASubsystemError(RootToolError):
    """Raised when generated vectors violate R2 or R3, so no root system contains the input."""

    code = "NOT_A_SUBSYSTEM"

    def __init__(self, message: str, violation=None, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, details)
        self.violation = violation


class SizeExceededError(RootToolError):
    code = "SIZE_EXCEEDED"


class UnrecognizedSystemError(RootToolError):
    code = "UNRECOGNIZED"


class DuplicateWeightError(RootToolError):
    code = "DUPLICATE_WEIGHT"


class ZeroWeightError(RootToolError):
    code = "ZERO_WEIGHT"


class InvalidSystemError(RootToolError):
    code = "INVALID_SYSTEM"


class MalformedInputError(RootToolError):
    """Bad JSON or schema; ``location`` names the offending path inside the document."""

    code = "MALFORMED_INPUT"

    def __init__(self, message: str, location: str = "$", details: Optional[Dict[str, Any]] = None):
        super().__init__(f"{location}: {message}", details)
        self.location = location


class IncompleteAssignmentError(RootToolError):
    code = "INCOMPLETE_ASSIGNMENT"


class IndefiniteFormError(RootToolError):
    code = "INDEFINITE_FORM"
