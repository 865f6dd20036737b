"""
Custom exceptions for ydtwist and their mapping to CLI exit codes
"""

import json
from typing import Optional

from pydantic import ValidationError

from app.core.logging import get_logger

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3


class YDTwistError(Exception):
    """Base exception for ydtwist"""
    def __init__(self, message: str, exit_code: int = EXIT_VERIFICATION):
        self.message = message
        self.exit_code = exit_code
        super().__init__(self.message)


# Input and schema errors

class ScenarioError(YDTwistError):
    """Scenario file or datum is malformed"""
    def __init__(self, message: str):
        super().__init__(message, EXIT_INPUT)


class UnknownObjectError(YDTwistError):
    """Requested gallery entry or export object does not exist"""
    def __init__(self, message: str):
        super().__init__(message, EXIT_INPUT)


class FieldMismatchError(YDTwistError):
    """Operands live over different coefficient fields"""
    def __init__(self, message: str):
        super().__init__(message, EXIT_INPUT)


class ShapeError(YDTwistError):
    """Tensor or matrix dimensions do not fit together"""
    def __init__(self, message: str):
        super().__init__(message, EXIT_INPUT)


# Verification errors

class VerificationError(YDTwistError):
    """An axiom suite failed; the report lists every failing instance"""
    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message, EXIT_VERIFICATION)


class NoSuchRootError(YDTwistError):
    """The field has no primitive root of unity of the requested order"""
    def __init__(self, message: str):
        super().__init__(message, EXIT_VERIFICATION)


class SingularMatrixError(YDTwistError):
    """Matrix inversion was attempted on a singular matrix"""
    def __init__(self, message: str):
        super().__init__(message, EXIT_VERIFICATION)


class NoAntipodeError(VerificationError):
    """The identity has no convolution inverse"""


class DoesNotDescendError(VerificationError):
    """A tensor power map does not pass to the Nichols quotients"""


class InconsistentPairingError(VerificationError):
    """The lifted pairing does not vanish on the Nichols relations"""


class IncompleteNicholsError(VerificationError):
    """A Nichols truncation is not finite at the cap"""


class NotInjectiveOnSupportError(VerificationError):
    """s restricted to the support of lambda is not injective"""


class IncompatibleDatumError(VerificationError):
    """A group datum breaks the compatibility between phi, the characters and the grades"""
    def __init__(self, message: str, index: int, report=None):
        self.index = index
        super().__init__(message, report)


# Resource errors

class DimensionBlowupError(YDTwistError):
    """A truncation exceeds the configured dimension bound"""
    def __init__(self, message: str):
        super().__init__(message, EXIT_RESOURCE)


def handle_cli_exception(exc: BaseException, context: Optional[str] = None) -> int:
    """Log an exception raised under a CLI command and return its exit code"""
    where = context or "command"
    if isinstance(exc, YDTwistError):
        log = logger.warning if exc.exit_code == EXIT_VERIFICATION else logger.error
        log("command_failed", command=where, error=exc.message,
            type=exc.__class__.__name__, exit_code=exc.exit_code)
        return exc.exit_code
    if isinstance(exc, ValidationError):
        logger.error("schema_error", command=where, errors=exc.errors(include_url=False))
        return EXIT_INPUT
    if isinstance(exc, json.JSONDecodeError):
        logger.error("invalid_json", command=where, error=str(exc))
        return EXIT_INPUT
    if isinstance(exc, OSError):
        logger.error("io_error", command=where, error=str(exc))
        return EXIT_INPUT
    logger.error("unexpected_error", command=where, error=str(exc), exc_info=True)
    return EXIT_VERIFICATION
