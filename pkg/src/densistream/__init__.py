"""Order-invariant incremental density-peak clustering for sparse vector streams."""

from .config import Config
from .engine import Engine, IngestReport
from .labeling import NodeCategory

__all__ = ["Config", "Engine", "IngestReport", "NodeCategory"]
__version__ = "0.1.0"
