import re

from django.core.exceptions import ValidationError

_INT_PAIR = re.compile(r"^\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*$")
_INT_LIST = re.compile(r"^\s*[+-]?\d+(\s*,\s*[+-]?\d+)*\s*$")


def parse_gauss_pair(value):
    """Parse 'a,b' into the integer pair (a, b)."""
    if value is None or (isinstance(value, str) and value.strip() == ""):
        raise ValidationError("Gaussian integer is required (format: a,b)")
    match = _INT_PAIR.match(value)
    if not match:
        raise ValidationError(f"Invalid Gaussian integer '{value}' (format: a,b)")
    return int(match.group(1)), int(match.group(2))


def parse_int_list(value):
    """Parse '4,6,8' into [4, 6, 8]."""
    if value is None or not _INT_LIST.match(value):
        raise ValidationError(f"Invalid integer list '{value}' (format: 4,6,8)")
    return [int(part) for part in value.split(",")]


def validate_positive(value, name="value"):
    """Validate a strictly positive number."""
    try:
        number = float(value)
    except (ValueError, TypeError):
        raise ValidationError(f"{name} must be numeric")
    if not number > 0:
        raise ValidationError(f"{name} must be positive")


def validate_finite(value, name="value"):
    """Validate a finite real or complex number."""
    try:
        number = complex(value)
    except (ValueError, TypeError):
        raise ValidationError(f"{name} must be numeric")
    if number.real != number.real or number.imag != number.imag:
        raise ValidationError(f"{name} must not be NaN")
    if abs(number) == float("inf"):
        raise ValidationError(f"{name} must be finite")


_FLOAT_PAIR = re.compile(r"^\s*([^,\s]+)\s*,\s*([^,\s]+)\s*$")


def parse_float_pair(value):
    """Parse 'x,y' into two positive floats."""
    match = _FLOAT_PAIR.match(value or "")
    if not match:
        raise ValidationError(f"Invalid pair '{value}' (format: x,y)")
    pair = []
    for part in match.groups():
        validate_positive(part, "pair component")
        pair.append(float(part))
    return tuple(pair)


def parse_float_list(value):
    """Parse '4,6,8.5' into [4.0, 6.0, 8.5]."""
    parts = [part.strip() for part in (value or "").split(",")]
    try:
        return [float(part) for part in parts]
    except ValueError:
        raise ValidationError(f"Invalid number list '{value}' (format: 4,6,8)")
