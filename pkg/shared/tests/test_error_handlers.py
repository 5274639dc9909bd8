"""
Error handler tests for shared app.
Tests for the exception hierarchy and its conversion to command exit codes.
"""

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from shared.error_handlers import (
    convert_exception,
    handle_lab_error,
    handle_unexpected_error,
    handle_validation_error,
)
from shared.exceptions import (
    CapExceeded,
    CheckFailed,
    DomainError,
    LabError,
    PoleAtOne,
    SupportError,
)


class LabErrorTest(SimpleTestCase):
    """Test the exception classes."""

    def test_default_detail(self):
        """Test the class default is used without a message."""
        exc = PoleAtOne()
        self.assertEqual(exc.detail, PoleAtOne.default_detail)
        self.assertEqual(str(exc), PoleAtOne.default_detail)

    def test_context_record(self):
        """Test context keywords end up in the serializable record."""
        record = CapExceeded("too big", D=30).as_record()
        self.assertEqual(
            record, {"detail": "too big", "code": "cap_exceeded", "context": {"D": 30}}
        )

    def test_hierarchy(self):
        """Test subclasses inherit their family's exit code."""
        self.assertTrue(issubclass(SupportError, DomainError))
        self.assertEqual(SupportError.exit_code, 2)
        self.assertEqual(CheckFailed.exit_code, 1)
        self.assertEqual(LabError.exit_code, 1)


class HandlerTest(SimpleTestCase):
    """Test conversion to CommandError."""

    def test_usage_error(self):
        """Test a domain error becomes exit code 2 and is logged at INFO."""
        with self.assertLogs("shared.error_handlers", level="INFO") as logs:
            error = handle_lab_error(DomainError("bad Q", Q=0.7))
        self.assertEqual(error.returncode, 2)
        self.assertEqual(str(error), "domain_error: bad Q")
        self.assertIn("INFO", logs.output[0])

    def test_numeric_failure(self):
        """Test a numeric failure becomes exit code 1 and is logged at ERROR."""
        with self.assertLogs("shared.error_handlers", level="ERROR"):
            error = handle_lab_error(CheckFailed("residual too large"))
        self.assertEqual(error.returncode, 1)

    def test_validation_error(self):
        """Test validation messages are joined."""
        error = handle_validation_error(ValidationError(["first", "second"]))
        self.assertEqual(error.returncode, 2)
        self.assertEqual(str(error), "validation_error: first; second")

    def test_unexpected_error(self):
        """Test unexpected exceptions hide their message and log the traceback."""
        with self.assertLogs("shared.error_handlers", level="ERROR") as logs:
            error = handle_unexpected_error(RuntimeError("secret"), "zeta eval")
        self.assertEqual(error.returncode, 1)
        self.assertNotIn("secret", str(error))
        self.assertIn("zeta eval", logs.output[0])

    def test_dispatch(self):
        """Test convert_exception picks the matching handler."""
        self.assertEqual(convert_exception(SupportError(), "meansquare check").returncode, 2)
        self.assertEqual(convert_exception(ValidationError("x"), "coeff table").returncode, 2)
        with self.assertLogs("shared.error_handlers", level="ERROR"):
            self.assertEqual(convert_exception(KeyError("k"), "verify all").returncode, 1)
