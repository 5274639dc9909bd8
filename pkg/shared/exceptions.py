"""
Exception hierarchy for the lab.

Every failure raised by a library operation derives from LabError. Each class carries a
human-readable default_detail, a stable default_code (used in JSON artifacts) and the exit
code the command line reports when the error escapes a management command.
"""

EXIT_NUMERIC_FAILURE = 1
EXIT_USAGE = 2


class LabError(Exception):
    """Base exception class for lab errors."""

    default_detail = "A lab error occurred."
    default_code = "error"
    exit_code = EXIT_NUMERIC_FAILURE

    def __init__(self, detail=None, **context):
        self.detail = detail or self.default_detail
        self.context = context
        super().__init__(self.detail)

    def as_record(self):
        """Serializable form used in run artifacts."""
        return {"detail": self.detail, "code": self.default_code, "context": self.context}


# Ring arithmetic


class BothZero(LabError):
    default_detail = "gcd is undefined when both arguments are zero."
    default_code = "both_zero"
    exit_code = EXIT_USAGE


class NotInvertible(LabError):
    default_detail = "Element is not invertible modulo the given modulus."
    default_code = "not_invertible"
    exit_code = EXIT_USAGE


class ZeroInput(LabError):
    default_detail = "Operation requires a nonzero Gaussian integer."
    default_code = "zero_input"
    exit_code = EXIT_USAGE


class ZeroModulus(ZeroInput):
    default_detail = "Modulus must be nonzero."
    default_code = "zero_modulus"


# Resource caps


class ResourceCap(LabError):
    default_detail = "Requested size exceeds the configured cap."
    default_code = "resource_cap"
    exit_code = EXIT_USAGE


class CoeffCapError(ResourceCap):
    default_detail = "Coefficient table would exceed the configured table cap."
    default_code = "coeff_cap"


class CapExceeded(ResourceCap):
    default_detail = "Desk-scale cap exceeded."
    default_code = "cap_exceeded"


# Analytic domain


class DomainError(LabError):
    default_detail = "Argument outside the admissible domain."
    default_code = "domain_error"
    exit_code = EXIT_USAGE


class StripError(DomainError):
    default_detail = "Real part of s outside the admissible strip."
    default_code = "strip_error"


class SplitError(DomainError):
    default_detail = "Explicit split (x, y) violates the admissibility window."
    default_code = "split_error"


class HypothesisError(DomainError):
    default_detail = "Hypotheses of the expansion are not satisfied at this point."
    default_code = "hypothesis_error"


class SupportError(DomainError):
    default_detail = "Coefficient map has support outside the declared annulus."
    default_code = "support_error"


class SymmetryError(DomainError):
    default_detail = "Coefficient map is not invariant under multiplication by i."
    default_code = "symmetry_error"


class PoleError(DomainError):
    default_detail = "Evaluation at a pole."
    default_code = "pole"


class PoleAtZero(PoleError):
    default_detail = "Mellin transform has a simple pole at z = 0 (residue 1)."
    default_code = "pole_at_zero"


class PoleAtOne(PoleError):
    default_detail = "zeta(s) L(s, chi_4) has a simple pole at s = 1."
    default_code = "pole_at_one"


class UnsupportedTestFunction(LabError):
    default_detail = "Test function is not one of the shipped Schwartz-class families."
    default_code = "unsupported_test_function"
    exit_code = EXIT_USAGE


# Verification


class CheckFailed(LabError):
    default_detail = "One or more checks failed at their declared tolerance."
    default_code = "check_failed"
