from typing import Dict, Final, List, Tuple

# intervention lists per setup id; the null experiment comes first
EXPERIMENTAL_SETUPS: Final[Dict[int, List[List[int]]]] = {
    0: [[]],
    11: [[], [0]],
    12: [[], [0], [1]],
    13: [[], [0], [1], [2]],
    14: [[], [0], [1], [2], [3]],
    15: [[], [0], [1], [2], [3], [4]],
    21: [[], [0, 1]],
    22: [[], [0, 1], [1, 2]],
    23: [[], [0, 1], [1, 2], [2, 3]],
    24: [[], [0, 1], [1, 2], [2, 3], [3, 4]],
    25: [[], [0, 1], [1, 2], [2, 3], [3, 4], [4, 0]],
    31: [[], [0, 1, 2]],
    32: [[], [0, 1, 2], [1, 2, 3]],
    33: [[], [0, 1, 2], [1, 2, 3], [2, 3, 4]],
    34: [[], [0, 1, 2], [1, 2, 3], [2, 3, 4], [3, 4, 0]],
    35: [[], [0, 1, 2], [1, 2, 3], [2, 3, 4], [3, 4, 0], [4, 0, 1]],
    41: [[], [0, 1, 2, 3]],
    42: [[], [0, 1, 2, 3], [1, 2, 3, 4]],
    43: [[], [0, 1, 2, 3], [1, 2, 3, 4], [2, 3, 4, 0]],
    44: [[], [0, 1, 2, 3], [1, 2, 3, 4], [2, 3, 4, 0], [3, 4, 0, 1]],
    45: [[], [0, 1, 2, 3], [1, 2, 3, 4], [2, 3, 4, 0], [3, 4, 0, 1], [4, 0, 1, 2]],
}

SETUP_NODE_COUNT: Final[int] = 5

# setups whose interventions satisfy the pair condition
PAIR_CONDITION_SETUPS: Final[Tuple[int, ...]] = (15, 25, 35, 45)


def setup_group(setup_id: int) -> int:
    """Intervention size of a setup: the first digit of its id, 0 for the observational setup."""
    return setup_id // 10
