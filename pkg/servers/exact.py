from typing import Annotated, Any

from pydantic import BeforeValidator, PlainSerializer
from sympy import Rational


def to_rational(value: Any) -> Rational:
    """Exact rational from an int, a sympy number or a string such as "-3/4"."""
    if isinstance(value, float):
        raise ValueError(f"floats are not exact: {value!r}")
    try:
        return Rational(value.strip() if isinstance(value, str) else value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ValueError(f"not an exact rational: {value!r}")


# Stored as sympy Rational, serialized as "p/q" text
Exact = Annotated[Any, BeforeValidator(to_rational), PlainSerializer(str, return_type=str)]
