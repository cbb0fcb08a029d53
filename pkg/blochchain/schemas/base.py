from pydantic import BaseModel, ConfigDict
import numpy as np


class BaseSchema(BaseModel):
    """Base schema: immutable, strict about unknown keys"""

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)


class ArraySchema(BaseSchema):
    """Base schema for models carrying numpy arrays"""

    model_config = ConfigDict(
        frozen=True,
        extra="forbid",
        allow_inf_nan=False,
        arbitrary_types_allowed=True,
    )


def readonly_array(value, dtype=float) -> np.ndarray:
    """Copy into a fresh array that cannot be modified in place"""
    array = np.array(value, dtype=dtype, copy=True)
    array.flags.writeable = False
    return array
