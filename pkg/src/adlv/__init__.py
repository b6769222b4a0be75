"""Root data, Satake transforms and component counts for affine
Deligne-Lusztig varieties with basic ``b``."""

from .root_data import FundamentalGroup, RootDatum, build_root_datum
from .twisted import RelativeDatum, restrict

__version__ = "0.1.0"

__all__ = ["FundamentalGroup", "RootDatum", "RelativeDatum", "build_root_datum", "restrict"]
