from typing import Final, Optional, Union

INFINITE: Final[str] = "inf"


def parse_size(value: Union[int, str, None]) -> Optional[int]:
    """Read a dataset size from config or CLI text; ``inf``/``None`` is the infinite size."""
    if value is None or str(value).strip().lower() in (INFINITE, "infinite"):
        return None
    size = int(value)
    if size < 1:
        raise ValueError(f"dataset size must be positive, got {size}")
    return size


def format_size(size: Optional[int]) -> str:
    return INFINITE if size is None else str(size)
