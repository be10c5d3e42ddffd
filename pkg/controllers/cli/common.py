from typing import Optional

from constants.dataset_size import parse_size

from errors.bad_input_error import BadInputError


def size_flag(value: str) -> Optional[int]:
    try:
        return parse_size(value)
    except ValueError as err:
        raise BadInputError(
            response_message=f"Invalid --size {value!r}: expected 1000, 10000, 100000 or inf ({err}).",
            response_key="error_invalid_size"
        )
