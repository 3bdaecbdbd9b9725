"""Complex-number field type shared by the models."""

import math
from numbers import Number
from typing import Annotated, Any

from pydantic import BeforeValidator, PlainSerializer


def parse_complex(value: Any) -> complex:
    """Accept a complex, a real number, an ``[re, im]`` pair or an ``"re,im"`` string."""
    if isinstance(value, str):
        parts = [p.strip() for p in value.split(",")]
        if len(parts) != 2:
            raise ValueError(f"complex value must be written 're,im', got {value!r}")
        value = [float(parts[0]), float(parts[1])]
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"complex value must be an [re, im] pair, got {value!r}")
        value = complex(float(value[0]), float(value[1]))
    if isinstance(value, Number) and not isinstance(value, bool):
        value = complex(value)
    else:
        raise ValueError(f"cannot interpret {value!r} as a complex number")
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ValueError(f"complex value must be finite, got {value!r}")
    return value


def dump_complex(value: complex) -> list[float]:
    return [value.real, value.imag]


ComplexValue = Annotated[
    complex,
    BeforeValidator(parse_complex),
    PlainSerializer(dump_complex, return_type=list[float], when_used="json"),
]
