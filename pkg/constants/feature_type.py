from typing import Final


class FeatureType:

    DIRECTED: Final[str] = "dir"
    BIDIRECTED: Final[str] = "bidir"
