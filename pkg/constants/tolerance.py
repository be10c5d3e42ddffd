from typing import Final


class Tolerance:

    # smallest singular value of I - U B below which an experiment is not weakly stable
    STABILITY: Final[float] = 1e-9
    # |partial correlation| below which an exact covariance counts as independent
    EXACT_INDEPENDENCE: Final[float] = 1e-9
    # lower clamp for p-values before taking logs
    P_VALUE_FLOOR: Final[float] = 1e-300
    STD_FLOOR: Final[float] = 1e-12
    SCORE_CAP: Final[float] = 1e6
    # |estimate| above which an infinite-mode LLC feature counts as present
    INFINITE_SUPPORT: Final[float] = 1e-7
    LOSS: Final[float] = 1e-9
    # 1 - |r| below which residuals count as perfectly correlated
    COLLINEAR_RESIDUALS: Final[float] = 1e-9
